// lplab: command-line front end of the Littlewood-Paley laboratory.
// Exit status: 0 success, 2 invariant failure, 3 input error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lplab/acceptance.hpp"
#include "lplab/calculus.hpp"
#include "lplab/field_gen.hpp"
#include "lplab/field_io.hpp"
#include "lplab/identity_lab.hpp"
#include "lplab/norms.hpp"
#include "lplab/report.hpp"

using namespace lplab;

namespace {

constexpr int kExitInvariant = 2;
constexpr int kExitInput = 3;

// "12.5", "pi", "4pi", "4*pi", "0.5pi".
double parse_box(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  const auto pos = s.find("pi");
  try {
    if (pos == std::string::npos) {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw InputError("");
      return v;
    }
    if (pos + 2 != s.size()) throw InputError("");
    std::string factor = s.substr(0, pos);
    if (!factor.empty() && factor.back() == '*') factor.pop_back();
    double f = 1.0;
    if (!factor.empty()) {
      std::size_t used = 0;
      f = std::stod(factor, &used);
      if (used != factor.size()) throw InputError("");
    }
    return f * std::numbers::pi;
  } catch (const std::exception&) {
    throw InputError("cannot parse box length '" + text + "'");
  }
}

struct Common {
  int grid = 32;
  std::string box = "4pi";
  std::uint64_t seed = 1;
  std::string u_path;
  std::string b_path;
  std::string out;
  std::string format = "json";
  std::vector<std::string> tolerance_overrides;
  int refine = 1;
};

void add_common(CLI::App* cmd, Common& c, bool fields = true) {
  cmd->add_option("--grid", c.grid, "grid points per dimension (even, >= 4)");
  cmd->add_option("--box", c.box, "box length, e.g. 12.56 or 4pi");
  cmd->add_option("--tolerance", c.tolerance_overrides, "override a tolerance: name=value");
  cmd->add_option("--seed", c.seed, "seed of the generated field");
  if (!fields) return;
  cmd->add_option("--out", c.out, "directory for report files (default: stdout)");
  cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--u", c.u_path, "velocity field (LPF1)");
  cmd->add_option("--b", c.b_path, "magnetic field (LPF1); zero when omitted");
}

std::map<std::string, double> tolerances(const Common& c) {
  auto tol = default_tolerances();
  for (const auto& item : c.tolerance_overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--tolerance expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (!tol.count(name)) throw InputError("unknown tolerance '" + name + "'");
    try {
      tol[name] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("bad tolerance value in '" + item + "'");
    }
  }
  return tol;
}

struct Inputs {
  Grid grid;
  SpectralVectorField u;
  SpectralVectorField b;
  std::vector<std::uint64_t> seeds;
};

Inputs load_inputs(const Common& c) {
  if (c.u_path.empty()) {
    if (!c.b_path.empty()) throw InputError("--b requires --u");
    const Grid g = make_grid(c.grid, parse_box(c.box));
    const LPProfile p(g);
    auto [u, b] = random_pair(g, suite_spectrum(p, c.seed));
    return {g, std::move(u), std::move(b), {c.seed}};
  }
  auto u = read_vector_field(c.u_path);
  SpectralVectorField b = c.b_path.empty() ? SpectralVectorField(u.grid()) : read_vector_field(c.b_path);
  if (!(b.grid() == u.grid())) throw InputError("--u and --b live on different grids");
  const Grid g = u.grid();
  return {g, std::move(u), std::move(b), {}};
}

void emit(const Common& c, const std::string& name, const std::string& text, const char* ext) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) throw InputError("cannot create output directory '" + c.out + "'");
  write_text((std::filesystem::path(c.out) / (name + ext)).string(), text);
}

void emit_json(const Common& c, const std::string& name, const Json& j) {
  emit(c, name, dump_json(j), ".json");
}

// gen ---------------------------------------------------------------------

struct GenOptions {
  std::string kind = "power_law";
  double alpha = 2.0;
  std::vector<int> band;
  std::vector<int> shells;
  std::vector<double> flow_params;
  std::string out_b;
};

int run_gen(const Common& c, const GenOptions& g) {
  const Grid grid = make_grid(c.grid, parse_box(c.box));
  const LPProfile profile(grid);
  SpectralVectorField u(grid);
  std::optional<SpectralVectorField> b;
  if (g.kind == "abc" || g.kind == "taylor_green") {
    FlowParams params;
    if (!g.flow_params.empty()) params.a = g.flow_params[0];
    if (g.flow_params.size() > 1) params.b = g.flow_params[1];
    if (g.flow_params.size() > 2) params.c = g.flow_params[2];
    u = named_flow(grid, g.kind == "abc" ? FlowKind::abc : FlowKind::taylor_green, params);
  } else {
    SpectrumSpec spec;
    spec.seed = c.seed;
    spec.alpha = g.alpha;
    if (g.kind == "power_law") {
      spec.kind = SpectrumKind::power_law;
    } else if (g.kind == "band") {
      spec.kind = SpectrumKind::band;
    } else if (g.kind == "shell_list") {
      spec.kind = SpectrumKind::shell_list;
      spec.shells = g.shells;
    } else {
      throw InputError("gen: unknown kind '" + g.kind + "'");
    }
    if (g.band.empty()) {
      spec.band_min = profile.k_min();
      spec.band_max = profile.k_max();
    } else if (g.band.size() == 2) {
      spec.band_min = g.band[0];
      spec.band_max = g.band[1];
    } else {
      throw InputError("gen: --band takes two integers kmin,kmax");
    }
    if (g.out_b.empty()) {
      u = random_divfree(grid, spec);
    } else {
      auto pair = random_pair(grid, spec);
      u = std::move(pair.first);
      b = std::move(pair.second);
    }
  }
  write_field(c.u_path, u);
  if (b) write_field(g.out_b, *b);

  Json shells = Json::array();
  const auto dec = decompose(profile, u);
  for (const auto& [k, block] : dec.blocks) {
    shells.push_back({{"k", k}, {"l2_energy", number(l2_norm_squared(block))}});
  }
  Json body = {{"kind", g.kind},
               {"path", c.u_path},
               {"bandwidth", u.bandwidth()},
               {"dirichlet", number(dirichlet_energy(u, SpectralVectorField(grid)))},
               {"divergence_defect", number(divergence_defect(u))},
               {"shell_energies", shells}};
  if (b) body["path_b"] = g.out_b;
  emit_json(c, "gen", wrap_report(make_manifest("gen", profile, {c.seed}, tolerances(c)), "field", body));
  return 0;
}

// decompose -----------------------------------------------------------------

int run_decompose(const Common& c, bool write_blocks) {
  const auto in = load_inputs(c);
  const LPProfile profile(in.grid);
  const auto dec = decompose(profile, in.u);
  Json rows = Json::array();
  std::vector<std::vector<Json>> csv;
  for (const auto& [k, block] : dec.blocks) {
    const auto sup = fourier_support(block);
    const Json smin = sup.empty ? Json(nullptr) : number(sup.min);
    const Json smax = sup.empty ? Json(nullptr) : number(sup.max);
    const double e = l2_norm_squared(block);
    const double linf = block.is_zero() ? 0.0 : lebesgue_norm(block, kInfinity, c.refine);
    rows.push_back({{"k", k},
                    {"l2_energy", number(e)},
                    {"linf", number(linf)},
                    {"support_min", smin},
                    {"support_max", smax}});
    csv.push_back({k, number(e), number(linf), smin, smax});
    if (write_blocks && !c.out.empty()) {
      std::filesystem::create_directories(c.out);
      write_field((std::filesystem::path(c.out) / ("block_" + std::to_string(k) + ".lpf")).string(),
                  block);
    }
  }
  if (c.format == "csv") {
    emit(c, "decompose", to_csv({"k", "l2_energy", "linf", "support_min", "support_max"}, csv), ".csv");
  } else {
    emit_json(c, "decompose",
              wrap_report(make_manifest("decompose", profile, in.seeds, tolerances(c)), "blocks",
                          {{"source_mean_zero", dec.source_mean_zero}, {"records", rows}}));
  }
  return 0;
}

// norms ---------------------------------------------------------------------

struct NormOptions {
  std::string kind = "lebesgue";
  double s = 1.0;
  std::string p = "2";
  std::string q = "2";
  std::string method = "integral";
};

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw InputError("cannot parse exponent '" + text + "'");
  }
}

int run_norms(const Common& c, const NormOptions& o) {
  const auto in = load_inputs(c);
  const LPProfile profile(in.grid);
  NormReport r;
  r.norm_kind = o.kind;
  if (o.kind == "lebesgue") {
    r.p = parse_exponent(o.p);
    r.value = lebesgue_norm(in.u, *r.p, c.refine);
    r.method = std::isinf(*r.p) ? "physical_max" : "quadrature";
  } else if (o.kind == "sobolev") {
    r.s = o.s;
    const auto m = o.method == "lp_sum" ? SobolevMethod::lp_sum : SobolevMethod::integral;
    if (o.method != "lp_sum" && o.method != "integral") throw InputError("unknown --method " + o.method);
    r.value = sobolev_norm(profile, in.u, o.s, m);
    r.method = o.method;
  } else if (o.kind == "besov") {
    r.s = o.s;
    r.p = parse_exponent(o.p);
    r.q = parse_exponent(o.q);
    r.value = besov_norm(profile, in.u, o.s, *r.p, *r.q, c.refine);
    r.method = "lp_sum";
  } else if (o.kind == "dirichlet") {
    r.value = dirichlet_energy(in.u, in.b);
    r.method = "integral";
  } else {
    throw InputError("unknown norm kind '" + o.kind + "'");
  }
  emit_json(c, "norms", wrap_report(make_manifest("norms", profile, in.seeds, tolerances(c)), "norm", to_json(r)));
  return 0;
}

// bernstein -----------------------------------------------------------------

int run_bernstein(const Common& c, bool json) {
  const auto in = load_inputs(c);
  const LPProfile profile(in.grid);
  const auto rep = bernstein_check(profile, in.u, c.refine);
  const auto tol = tolerances(c);
  bool ok = true;
  for (const auto& rec : rep.records) {
    ok = ok && rec.ratio_low >= tol.at("bernstein_ratio_min") &&
         rec.ratio_low <= tol.at("bernstein_ratio_max");
    for (double v : rec.lp_lq_ratios) ok = ok && std::isfinite(v);
  }
  if (json) {
    emit_json(c, "bernstein", wrap_report(make_manifest("bernstein", profile, in.seeds, tol), "bernstein", to_json(rep)));
  } else {
    std::vector<std::string> header = {"k", "ratio_low"};
    for (const auto& [p, q] : bernstein_pairs()) {
      auto name = [](double v) { return std::isinf(v) ? std::string("inf") : std::to_string(static_cast<int>(v)); };
      header.push_back("lp_lq_" + name(p) + "_" + name(q));
    }
    std::vector<std::vector<Json>> rows;
    for (const auto& rec : rep.records) {
      std::vector<Json> row = {rec.k, number(rec.ratio_low)};
      for (double v : rec.lp_lq_ratios) row.push_back(number(v));
      rows.push_back(std::move(row));
    }
    emit(c, "bernstein", to_csv(header, rows), ".csv");
  }
  return ok ? 0 : kExitInvariant;
}

// verify-identity -------------------------------------------------------------

int run_verify_identity(const Common& c, std::optional<int> k_opt, bool sweep) {
  if (k_opt.has_value() == sweep) throw InputError("verify-identity: give exactly one of --k or --sweep");
  const auto in = load_inputs(c);
  const LPProfile profile(in.grid);
  const auto tol = tolerances(c);
  IdentityLab lab(profile, in.u, in.b);
  std::vector<int> ks;
  if (sweep) {
    for (int k = profile.k_min(); k <= profile.k_max(); ++k) ks.push_back(k);
  } else {
    ks.push_back(*k_opt);
  }
  bool ok = true;
  Json shells = Json::array();
  std::vector<std::vector<Json>> csv;
  for (int k : ks) {
    const auto tr = lab.transport(k);
    const auto it = lab.i_terms(k);
    const auto en = lab.energy(k);
    const double sc = lab.scale();
    double tr_max = 0.0;
    for (const auto& id : tr.identities) tr_max = std::max(tr_max, id.difference / sc);
    const auto& I = it.I;
    const double vanish = std::max({std::abs(I.at("I11")), std::abs(I.at("I21")), std::abs(I.at("I22"))}) / sc;
    const double split = std::max({std::abs(-I.at("I1") - (I.at("I11") + I.at("I12") + I.at("I13"))),
                                   std::abs(-I.at("I1") - I.at("I1_localized")),
                                   std::abs(-I.at("I2") - (I.at("I21") + I.at("I22") + I.at("I23"))),
                                   std::abs(I.at("I23") - (I.at("I231") + I.at("I232")))}) /
                         sc;
    const bool pass = tr_max <= tol.at("transport") && vanish <= tol.at("vanishing") &&
                      split <= tol.at("decomposition") && en.imbalance <= tol.at("energy_imbalance");
    ok = ok && pass;
    shells.push_back({{"k", k},
                      {"transport", to_json(tr)},
                      {"i_terms", to_json(it)},
                      {"energy", to_json(en)},
                      {"passed", pass}});
    csv.push_back({k, number(en.imbalance), number(tr_max), number(vanish), number(split),
                   number(I.at("I232")), pass});
  }
  if (c.format == "csv") {
    emit(c, "verify_identity",
         to_csv({"k", "imbalance", "transport", "vanishing", "decomposition", "I232", "passed"}, csv), ".csv");
  } else {
    emit_json(c, "verify_identity",
              wrap_report(make_manifest("verify-identity", profile, in.seeds, tol), "identity",
                          {{"shells", shells}, {"passed", ok}}));
  }
  return ok ? 0 : kExitInvariant;
}

// verify-bounds -------------------------------------------------------------

int run_verify_bounds(const Common& c, const std::string& flavor_text, std::optional<int> k_opt) {
  const auto flavor = parse_bound_flavor(flavor_text);
  const auto in = load_inputs(c);
  const LPProfile profile(in.grid);
  IdentityLab lab(profile, in.u, in.b);
  std::vector<int> ks;
  if (k_opt) {
    ks.push_back(*k_opt);
  } else {
    for (int k = profile.k_min(); k <= profile.k_max(); ++k) ks.push_back(k);
  }
  bool ok = true;
  Json shells = Json::array();
  std::vector<std::vector<Json>> csv;
  for (int k : ks) {
    const auto rep = lab.bounds(k, flavor);
    for (const auto& rec : rep.records) {
      if (rec.ratio && !std::isfinite(*rec.ratio)) ok = false;
      csv.push_back({k, rec.name, number(rec.lhs), number(rec.envelope),
                     rec.ratio ? number(*rec.ratio) : Json(nullptr)});
    }
    csv.push_back({k, "master", number(rep.j_sum), number(rep.product), Json(nullptr)});
    shells.push_back(to_json(rep));
  }
  if (c.format == "csv") {
    emit(c, "verify_bounds", to_csv({"k", "term", "lhs", "envelope", "ratio"}, csv), ".csv");
  } else {
    emit_json(c, "verify_bounds",
              wrap_report(make_manifest("verify-bounds", profile, in.seeds, tolerances(c)), "bounds",
                          {{"flavor", to_string(flavor)}, {"shells", shells}, {"passed", ok}}));
  }
  return ok ? 0 : kExitInvariant;
}

// conditions ----------------------------------------------------------------

int run_conditions(const Common& c, std::optional<int> kmin, std::optional<int> kmax) {
  const auto in = load_inputs(c);
  const LPProfile profile(in.grid);
  const int lo = kmin.value_or(profile.k_min());
  const int hi = kmax.value_or(profile.k_max());
  const auto series = liouville_conditions(profile, in.u, in.b, lo, hi);
  if (c.format == "csv") {
    std::vector<std::vector<Json>> rows;
    for (const auto& r : series.records) {
      rows.push_back({r.k, number(r.cond_14), number(r.cond_15), number(r.cond_16),
                      number(r.product_linf), number(r.product_l3)});
    }
    emit(c, "conditions",
         to_csv({"k", "cond_14", "cond_15", "cond_16", "product_linf", "product_l3"}, rows), ".csv");
  } else {
    emit_json(c, "conditions",
              wrap_report(make_manifest("conditions", profile, in.seeds, tolerances(c)), "conditions",
                          to_json(series)));
  }
  return 0;
}

// all-checks ----------------------------------------------------------------

int run_all(const Common& c, const std::vector<std::uint64_t>& seeds, bool zero) {
  AllChecksOptions o;
  o.n_per_dim = c.grid;
  o.box_length = parse_box(c.box);
  o.seeds = seeds.empty() ? std::vector<std::uint64_t>{c.seed} : seeds;
  o.zero_fields = zero;
  o.tolerances = tolerances(c);
  if (!c.u_path.empty()) {
    o.u = read_vector_field(c.u_path);
    o.n_per_dim = o.u->grid().n();
    o.box_length = o.u->grid().box_length();
  }
  if (!c.b_path.empty()) o.b = read_vector_field(c.b_path);
  const auto result = run_all_checks(o);
  emit_json(c, "all_checks", result.report);
  return result.passed ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley laboratory for stationary MHD identities on the periodic box"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress warnings");

  Common common;
  std::function<int()> action;

  auto* gen = app.add_subcommand("gen", "generate a field and write it as LPF1");
  GenOptions gen_opt;
  add_common(gen, common, false);
  gen->add_option("--out", common.u_path, "output LPF1 path")->required();
  gen->add_option("--kind", gen_opt.kind, "power_law, band, shell_list, abc or taylor_green");
  gen->add_option("--alpha", gen_opt.alpha, "power-law exponent");
  gen->add_option("--band", gen_opt.band, "dyadic band kmin,kmax")->delimiter(',');
  gen->add_option("--shells", gen_opt.shells, "shell list for shell_list")->delimiter(',');
  gen->add_option("--flow", gen_opt.flow_params, "named flow parameters A,B,C")->delimiter(',');
  gen->add_option("--out-b", gen_opt.out_b, "also draw a magnetic field and write it here");
  gen->callback([&] { action = [&] { return run_gen(common, gen_opt); }; });

  auto* dec = app.add_subcommand("decompose", "per-shell energies, sup norms and supports");
  add_common(dec, common);
  bool blocks = false;
  dec->add_flag("--blocks", blocks, "write each block as LPF1 into --out");
  dec->add_option("--refine", common.refine, "sampling refinement for sup norms");
  dec->callback([&] { action = [&] { return run_decompose(common, blocks); }; });

  auto* norms = app.add_subcommand("norms", "Lebesgue, Sobolev, Besov or Dirichlet norm of --u");
  add_common(norms, common);
  NormOptions norm_opt;
  norms->add_option("--kind", norm_opt.kind, "lebesgue, sobolev, besov or dirichlet");
  norms->add_option("--s", norm_opt.s, "smoothness index");
  norms->add_option("--p", norm_opt.p, "integrability (number or inf)");
  norms->add_option("--q", norm_opt.q, "summability (number or inf)");
  norms->add_option("--method", norm_opt.method, "integral or lp_sum");
  norms->add_option("--refine", common.refine, "sampling refinement");
  norms->callback([&] { action = [&] { return run_norms(common, norm_opt); }; });

  auto* bern = app.add_subcommand("bernstein", "block Bernstein ratios (CSV unless --format json)");
  add_common(bern, common);
  bern->add_option("--refine", common.refine, "sampling refinement");
  bern->callback([&] {
    const bool json = bern->count("--format") > 0 && common.format == "json";
    action = [&, json] { return run_bernstein(common, json); };
  });

  auto* vid = app.add_subcommand("verify-identity", "transport, I-term and energy identities");
  add_common(vid, common);
  std::optional<int> vid_k;
  bool sweep = false;
  vid->add_option("--k", vid_k, "dyadic index");
  vid->add_flag("--sweep", sweep, "every k of the profile range");
  vid->callback([&] { action = [&] { return run_verify_identity(common, vid_k, sweep); }; });

  auto* vb = app.add_subcommand("verify-bounds", "J-term ratios against their envelopes");
  add_common(vb, common);
  std::string flavor = "linf";
  std::optional<int> vb_k;
  vb->add_option("--flavor", flavor, "linf or l3");
  vb->add_option("--k", vb_k, "single dyadic index (default: all)");
  vb->callback([&] { action = [&] { return run_verify_bounds(common, flavor, vb_k); }; });

  auto* cond = app.add_subcommand("conditions", "low-frequency condition sequences");
  add_common(cond, common);
  std::optional<int> kmin, kmax;
  cond->add_option("--kmin", kmin, "lowest k (default: profile minimum)");
  cond->add_option("--kmax", kmax, "highest k (default: profile maximum)");
  cond->callback([&] { action = [&] { return run_conditions(common, kmin, kmax); }; });

  auto* all = app.add_subcommand("all-checks", "every invariant over seeded pairs");
  add_common(all, common);
  std::vector<std::uint64_t> seeds;
  bool zero = false;
  all->add_option("--seeds", seeds, "comma-separated seeds")->delimiter(',');
  all->add_flag("--zero-fields", zero, "check u = B = 0 instead of seeded pairs");
  all->callback([&] { action = [&] { return run_all(common, seeds, zero); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitInput;
  }
  if (quiet) set_warnings_enabled(false);
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
