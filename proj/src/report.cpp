#include "lplab/report.hpp"

#include <cmath>
#include <fstream>

namespace lplab {

std::map<std::string, double> default_tolerances() {
  return {{"bernstein_ratio_max", 2.0},
          {"bernstein_ratio_min", 0.5},
          {"decomposition", 1e-10},
          {"energy_imbalance", 1e-8},
          {"partition", 1e-12},
          {"support_leak", 1e-14},
          {"transport", 1e-10},
          {"vanishing", 1e-12}};
}

RunManifest make_manifest(const std::string& command, const LPProfile& profile,
                          std::vector<std::uint64_t> seeds,
                          std::map<std::string, double> tolerances) {
  RunManifest m;
  m.command = command;
  m.n_per_dim = profile.grid().n();
  m.box_length = profile.grid().box_length();
  m.k_min = profile.k_min();
  m.k_max = profile.k_max();
  m.seeds = std::move(seeds);
  m.tolerances = std::move(tolerances);
  return m;
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

namespace {

Json number_map(const std::map<std::string, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = number(v);
  return out;
}

}  // namespace

Json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"grid", {{"n_per_dim", m.n_per_dim}, {"box_length", number(m.box_length)}}},
          {"profile", {{"psi", kPsiTag}, {"k_min", m.k_min}, {"k_max", m.k_max}}},
          {"seeds", m.seeds},
          {"tolerances", number_map(m.tolerances)},
          {"artifact_version", m.artifact_version}};
}

Json to_json(const TransportReport& r) {
  Json ids = Json::array();
  for (const auto& id : r.identities) {
    ids.push_back({{"name", id.name},
                   {"lhs", number(id.lhs)},
                   {"rhs", number(id.rhs)},
                   {"difference", number(id.difference)}});
  }
  return {{"k", r.k}, {"scale", number(r.scale)}, {"identities", ids}};
}

Json to_json(const ITermReport& r) {
  return {{"k", r.k},
          {"theta", number(r.theta)},
          {"scale", number(r.scale)},
          {"I", number_map(r.I)},
          {"lhs_transport", number_map(r.lhs_transport)}};
}

Json to_json(const IdentityReport& r) {
  return {{"k", r.k},
          {"scale", number(r.scale)},
          {"lhs", number(r.lhs)},
          {"rhs_terms", number_map(r.rhs_terms)},
          {"residual_corrections", number_map(r.residual_corrections)},
          {"rhs_total", number(r.rhs_total)},
          {"imbalance", number(r.imbalance)}};
}

Json to_json(const BoundReport& r) {
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    recs.push_back({{"name", rec.name},
                    {"value", number(rec.value)},
                    {"J_i_lhs", number(rec.lhs)},
                    {"envelope", number(rec.envelope)},
                    {"ratio", rec.ratio ? number(*rec.ratio) : Json(nullptr)}});
  }
  return {{"k", r.k},
          {"flavor", to_string(r.flavor)},
          {"scale", number(r.scale)},
          {"records", recs},
          {"master",
           {{"D", number(r.dirichlet)},
            {"product", number(r.product)},
            {"j_sum", number(r.j_sum)},
            {"high_pass_energy", number(r.high_pass_energy)}}}};
}

Json to_json(const ConditionSeries& s) {
  Json recs = Json::array();
  for (const auto& r : s.records) {
    recs.push_back({{"k", r.k},
                    {"cond_14", number(r.cond_14)},
                    {"cond_15", number(r.cond_15)},
                    {"cond_16", number(r.cond_16)},
                    {"product_linf", number(r.product_linf)},
                    {"product_l3", number(r.product_l3)}});
  }
  return {{"c_geo", number(s.c_geo)}, {"records", recs}};
}

Json to_json(const NormReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); };
  return {{"norm_kind", r.norm_kind}, {"s", opt(r.s)},          {"p", opt(r.p)},
          {"q", opt(r.q)},            {"value", number(r.value)}, {"method", r.method}};
}

Json to_json(const BernsteinReport& r) {
  Json pairs = Json::array();
  for (const auto& [p, q] : bernstein_pairs()) pairs.push_back({number(p), number(q)});
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    Json ratios = Json::array();
    for (double v : rec.lp_lq_ratios) ratios.push_back(number(v));
    recs.push_back({{"k", rec.k}, {"ratio_low", number(rec.ratio_low)}, {"lp_lq_ratios", ratios}});
  }
  return {{"pairs", pairs}, {"records", recs}};
}

Json to_json(const SupportRecord& r) {
  return {{"k", r.k},
          {"l", r.l},
          {"max_inside", number(r.max_inside)},
          {"max_outside", number(r.max_outside)}};
}

Json wrap_report(const RunManifest& manifest, const std::string& key, Json body) {
  Json out = Json::object();
  out["manifest"] = to_json(manifest);
  out[key] = std::move(body);
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<Json>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i].is_string() ? row[i].get<std::string>() : row[i].dump();
    }
    out += "\n";
  }
  return out;
}

}  // namespace lplab
