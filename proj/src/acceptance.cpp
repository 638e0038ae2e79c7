#include "lplab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "lplab/calculus.hpp"
#include "lplab/identity_lab.hpp"
#include "lplab/norms.hpp"

namespace lplab {

namespace {

constexpr double kPi = std::numbers::pi;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::string sci(double v) { return fmt("%.3g", v); }

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t last) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = first; s <= last; ++s) out.push_back(s);
  return out;
}

// max over modes and k <= K of |psi_k + sum_{l=k..K} phi_l - psi_{K+1}|.
double telescoping_error(const LPProfile& p) {
  double worst = 0.0;
  const std::size_t size = p.grid().size();
  for (int k = p.k_min(); k <= p.k_max(); ++k) {
    const auto start = p.psi(k);
    std::vector<double> acc(start.begin(), start.end());
    for (int K = k; K <= p.k_max(); ++K) {
      const auto phi = p.phi(K);
      const auto target = p.psi(K + 1);
      for (std::size_t i = 0; i < size; ++i) {
        acc[i] += phi[i];
        worst = std::max(worst, std::abs(acc[i] - target[i]));
      }
    }
  }
  return worst;
}

double reconstruction_error(const LPProfile& p, const SpectralVectorField& f) {
  const double norm = l2_norm_squared(f);
  if (norm == 0.0) return 0.0;
  return std::sqrt(l2_norm_squared(decompose(p, f).sum() - f) / norm);
}

SpectrumSpec full_power_law(const LPProfile& p, std::uint64_t seed) {
  SpectrumSpec spec;
  spec.kind = SpectrumKind::power_law;
  spec.alpha = 2.0;
  spec.band_min = p.k_min();
  spec.band_max = p.k_max();
  spec.seed = seed;
  return spec;
}

double ratio_or_zero(double num, double den) {
  if (num == 0.0) return 0.0;
  return den > 0.0 ? num / den : kInfinity;
}

// Worst relative deviations of one (u, B) pair over every in-range k.
struct IdentityWorst {
  double vanishing = 0.0;
  double decomposition = 0.0;
  double transport = 0.0;
  double imbalance = 0.0;
};

struct ShellRecord {
  int k = 0;
  double vanishing = 0.0;
  double decomposition = 0.0;
  double transport = 0.0;
  double imbalance = 0.0;
  double i232 = 0.0;
  double i232_base = 0.0;
};

ShellRecord identity_shell(IdentityLab& lab, int k) {
  ShellRecord rec;
  rec.k = k;
  const auto it = lab.i_terms(k);
  const double sc = lab.scale();
  auto I = [&](const char* name) { return it.I.at(name); };
  rec.vanishing = std::max({std::abs(I("I11")), std::abs(I("I21")), std::abs(I("I22"))}) / sc;
  rec.decomposition =
      std::max({std::abs(-I("I1") - (I("I11") + I("I12") + I("I13"))),
                std::abs(-I("I1") - I("I1_localized")),
                std::abs(-I("I2") - (I("I21") + I("I22") + I("I23"))),
                std::abs(I("I23") - (I("I231") + I("I232")))}) /
      sc;
  for (const auto& id : lab.transport(k).identities) {
    rec.transport = std::max(rec.transport, id.difference / sc);
  }
  rec.imbalance = lab.energy(k).imbalance;
  rec.i232 = I("I232");
  rec.i232_base = I("I232_base");
  return rec;
}

void absorb(IdentityWorst& w, const ShellRecord& r) {
  w.vanishing = std::max(w.vanishing, r.vanishing);
  w.decomposition = std::max(w.decomposition, r.decomposition);
  w.transport = std::max(w.transport, r.transport);
  w.imbalance = std::max(w.imbalance, r.imbalance);
}

bool ratios_finite(const BoundReport& r) {
  for (const auto& rec : r.records) {
    if (rec.ratio && !std::isfinite(*rec.ratio)) return false;
  }
  return true;
}

double max_ratio(const BoundReport& r) {
  double best = 0.0;
  for (const auto& rec : r.records) {
    if (rec.ratio) best = std::max(best, *rec.ratio);
  }
  return best;
}

SpectralVectorField single_mode(const Grid& g) {
  // u = (cos x_2, 0, 0) on a box of length 2 pi.
  std::vector<Complex> c(g.size(), Complex{});
  c[g.flat(0, g.index_of(1), 0)] = 0.5;
  c[g.flat(0, g.index_of(-1), 0)] = 0.5;
  return SpectralVectorField(SpectralField(g, std::move(c)), SpectralField(g), SpectralField(g));
}

}  // namespace

MasterBaseline frozen_master_baseline() {
  // calibrate_master_constants over seeds 1001..1040 on (64, 4 pi).
  return {0.0025596858845195565, 0.00011182952486182157};
}

SpectrumSpec suite_spectrum(const LPProfile& profile, std::uint64_t seed) {
  SpectrumSpec spec;
  spec.kind = SpectrumKind::power_law;
  spec.alpha = 2.0;
  spec.band_min = profile.k_min();
  spec.band_max = std::min(profile.k_min() + 3, profile.k_max());
  spec.seed = seed;
  return spec;
}

MasterBaseline calibrate_master_constants(const std::vector<std::uint64_t>& seeds) {
  const LPProfile p(make_grid(64, 4.0 * kPi));
  MasterBaseline out;
  for (auto seed : seeds) {
    auto [u, b] = random_pair(p.grid(), suite_spectrum(p, seed));
    IdentityLab lab(p, std::move(u), std::move(b));
    for (int k = p.k_min(); k <= p.k_max(); ++k) {
      const auto linf = lab.bounds(k, BoundFlavor::linf);
      const auto l3 = lab.bounds(k, BoundFlavor::l3);
      if (linf.product > 0.0) out.linf = std::max(out.linf, linf.j_sum / linf.product);
      if (l3.product > 0.0) out.l3 = std::max(out.l3, l3.j_sum / l3.product);
    }
  }
  return out;
}

CriterionResult check_partition() {
  Stopwatch clock;
  CriterionResult r{1, "partition and reconstruction", false, "", 0.0};
  double worst = 0.0;
  double telescoping = 0.0;
  const std::vector<std::pair<int, double>> grids = {{32, 2 * kPi}, {32, 8 * kPi}, {64, 4 * kPi}};
  for (const auto& [n, box] : grids) {
    const LPProfile p(make_grid(n, box));
    telescoping = std::max(telescoping, telescoping_error(p));
    for (auto seed : seed_range(1, 20)) {
      worst = std::max(worst, reconstruction_error(p, random_divfree(p.grid(), full_power_law(p, seed))));
    }
  }
  r.seconds = clock.seconds();
  r.passed = worst <= 1e-12 && telescoping == 0.0 && r.seconds <= 30.0;
  r.detail = "max reconstruction " + sci(worst) + ", telescoping " + sci(telescoping) + ", " +
             fmt("%.1f s", r.seconds);
  return r;
}

CriterionResult check_bernstein() {
  Stopwatch clock;
  CriterionResult r{2, "Bernstein ratios", false, "", 0.0};
  const LPProfile p(make_grid(32, 4 * kPi));
  const std::size_t pairs = bernstein_pairs().size();
  std::vector<double> max50(pairs, 0.0), max100(pairs, 0.0);
  double low_min = kInfinity, low_max = 0.0;
  bool finite = true;
  for (auto seed : seed_range(1, 100)) {
    const auto rep = bernstein_check(p, random_divfree(p.grid(), full_power_law(p, seed)));
    for (const auto& rec : rep.records) {
      low_min = std::min(low_min, rec.ratio_low);
      low_max = std::max(low_max, rec.ratio_low);
      for (std::size_t i = 0; i < pairs; ++i) {
        const double v = rec.lp_lq_ratios[i];
        finite = finite && std::isfinite(v);
        max100[i] = std::max(max100[i], v);
        if (seed <= 50) max50[i] = std::max(max50[i], v);
      }
    }
  }
  double drift = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) drift = std::max(drift, max100[i] / max50[i] - 1.0);
  r.seconds = clock.seconds();
  r.passed = low_min >= 0.5 && low_max <= 2.0 && finite && drift <= 0.05 && r.seconds <= 60.0;
  r.detail = "ratio_low in [" + sci(low_min) + ", " + sci(low_max) + "], max drift 50->100 seeds " +
             sci(drift) + ", " + fmt("%.1f s", r.seconds);
  return r;
}

CriterionResult check_support() {
  Stopwatch clock;
  CriterionResult r{3, "product support lemma", false, "", 0.0};
  const LPProfile p(make_grid(64, 4 * kPi));
  double leak = 0.0;
  int products = 0;
  for (auto seed : seed_range(1, 10)) {
    auto [u, b] = random_pair(p.grid(), suite_spectrum(p, seed));
    IdentityLab lab(p, std::move(u), std::move(b));
    for (int k = p.k_min(); k <= p.k_max(); ++k) {
      for (const auto& rec : lab.support_lemma(k)) {
        leak = std::max(leak, ratio_or_zero(rec.max_outside, rec.max_inside));
        ++products;
      }
    }
  }
  r.seconds = clock.seconds();
  r.passed = leak <= 1e-14 && products > 0;
  r.detail = std::to_string(products) + " nonzero products, max outside/inside " + sci(leak) +
             ", " + fmt("%.1f s", r.seconds);
  return r;
}

std::vector<CriterionResult> check_identity_suite() {
  Stopwatch clock;
  const LPProfile p(make_grid(64, 4 * kPi));
  IdentityWorst w;
  int cases = 0;
  auto run = [&](SpectralVectorField u, SpectralVectorField b) {
    IdentityLab lab(p, std::move(u), std::move(b));
    for (int k = p.k_min(); k <= p.k_max(); ++k) absorb(w, identity_shell(lab, k));
    ++cases;
  };
  for (auto seed : seed_range(1, 50)) {
    auto [u, b] = random_pair(p.grid(), suite_spectrum(p, seed));
    run(std::move(u), std::move(b));
  }
  {
    auto [u, b] = random_pair(p.grid(), suite_spectrum(p, 51));
    run(u, SpectralVectorField(p.grid()));  // B = 0
    run(u, u);                              // u = B
  }
  SpectrumSpec shell;
  shell.kind = SpectrumKind::shell_list;
  shell.shells = {0};
  shell.seed = 52;
  {
    auto [u, b] = random_pair(p.grid(), shell);
    run(std::move(u), std::move(b));
  }
  const double seconds = clock.seconds();
  const std::string tail = " over " + std::to_string(cases) + " pairs";
  std::vector<CriterionResult> out;
  out.push_back({4, "vanishing I11, I21, I22", w.vanishing <= 1e-12,
                 "max |I|/scale " + sci(w.vanishing) + tail, seconds});
  out.push_back({5, "transport identities", w.transport <= 1e-10,
                 "max difference/scale " + sci(w.transport) + tail, seconds});
  out.push_back({6, "residual-corrected energy identity",
                 w.imbalance <= 1e-8 && seconds <= 600.0,
                 "max imbalance " + sci(w.imbalance) + tail + ", " + fmt("%.1f s", seconds), seconds});
  out.push_back({7, "decomposition consistency", w.decomposition <= 1e-10,
                 "max split error/scale " + sci(w.decomposition) + tail, seconds});
  return out;
}

CriterionResult check_tail_trend() {
  Stopwatch clock;
  CriterionResult r{8, "I232 tail trend", false, "", 0.0};
  // Amplitude rising with |xi| over every shell, so low-frequency gradients
  // are small and the tail toward the lowest shell is visible.
  const LPProfile p(make_grid(32, 32 * kPi));
  double c_min = kInfinity, c_max = 0.0;
  int shortest_run = 1 << 20;
  int trending = 0;
  for (auto seed : seed_range(1, 20)) {
    SpectrumSpec spec = full_power_law(p, seed);
    spec.alpha = -1.0;
    auto [u, b] = random_pair(p.grid(), spec);
    IdentityLab lab(p, std::move(u), std::move(b));
    std::vector<double> i232;
    double c_emp = 0.0;
    for (int k = p.k_min(); k <= p.k_max(); ++k) {
      const auto it = lab.i_terms(k);
      const double v = std::abs(it.I.at("I232"));
      const double base = it.I.at("I232_base");
      i232.push_back(v);
      if (base > 0.0) c_emp = std::max(c_emp, v / base);
    }
    // From the peak down to the lowest shell each step may grow by at most 10%.
    const auto peak = std::max_element(i232.begin(), i232.end()) - i232.begin();
    int run = 1;
    for (auto i = peak; i > 0 && i232[i - 1] <= 1.1 * i232[i]; --i) ++run;
    if (run != peak + 1) run = 0;  // the trend must reach the lowest shell
    shortest_run = std::min(shortest_run, run);
    if (run >= 4) ++trending;
    c_min = std::min(c_min, c_emp);
    c_max = std::max(c_max, c_emp);
  }
  const double spread = c_min > 0.0 ? c_max / c_min : kInfinity;
  r.seconds = clock.seconds();
  r.passed = shortest_run >= 4 && spread <= 2.0;
  r.detail = std::to_string(trending) + "/20 seeds trend over >= 4 shells (shortest run " +
             std::to_string(shortest_run) + "), C_emp in [" +
             sci(c_min) + ", " + sci(c_max) + "] spread " + sci(spread) + ", " +
             fmt("%.1f s", r.seconds);
  return r;
}

CriterionResult check_j_ladders() {
  Stopwatch clock;
  CriterionResult r{9, "J ladders and master bounds", false, "", 0.0};
  const LPProfile p(make_grid(64, 4 * kPi));
  const MasterBaseline base = frozen_master_baseline();
  auto seed_maxima = [&](std::uint64_t seed, int& cases, int& covered, bool& finite) {
    auto [u, b] = random_pair(p.grid(), suite_spectrum(p, seed));
    IdentityLab lab(p, std::move(u), std::move(b));
    std::vector<double> maxima;
    for (auto flavor : {BoundFlavor::linf, BoundFlavor::l3}) {
      const double c = flavor == BoundFlavor::linf ? base.linf : base.l3;
      double best = 0.0;
      for (int k = p.k_min(); k <= p.k_max(); ++k) {
        const auto rep = lab.bounds(k, flavor);
        finite = finite && ratios_finite(rep);
        best = std::max(best, max_ratio(rep));
        if (rep.product > 0.0 || rep.j_sum > 0.0) {
          ++cases;
          if (rep.j_sum <= c * rep.product) ++covered;
        }
      }
      maxima.push_back(best);
    }
    return maxima;
  };
  int cases = 0, covered = 0;
  bool finite = true;
  std::vector<std::vector<double>> first;
  for (auto seed : seed_range(1, 20)) first.push_back(seed_maxima(seed, cases, covered, finite));
  bool reproducible = true;
  int ignored_cases = 0, ignored_covered = 0;
  bool ignored_finite = true;
  for (auto seed : seed_range(1, 3)) {
    reproducible = reproducible &&
                   seed_maxima(seed, ignored_cases, ignored_covered, ignored_finite) == first[seed - 1];
  }
  const double share = cases > 0 ? static_cast<double>(covered) / cases : 0.0;
  r.seconds = clock.seconds();
  r.passed = finite && reproducible && share >= 0.95;
  r.detail = std::string("ratios finite: ") + (finite ? "yes" : "no") +
             ", maxima reproducible: " + (reproducible ? "yes" : "no") + ", master dominates in " +
             std::to_string(covered) + "/" + std::to_string(cases) + " cases, " +
             fmt("%.1f s", r.seconds);
  return r;
}

CriterionResult check_conditions() {
  Stopwatch clock;
  CriterionResult r{10, "condition sequences", false, "", 0.0};
  bool exact = true;
  {
    const LPProfile p(make_grid(32, 2 * kPi));
    const auto u = single_mode(p.grid());
    const auto series = liouville_conditions(p, u, SpectralVectorField(p.grid()), p.k_min(), p.k_max());
    for (const auto& rec : series.records) {
      const double expected = rec.k <= 0 ? 0.0 : std::ldexp(1.0, -rec.k);
      exact = exact && rec.cond_14 == expected;
    }
  }
  const LPProfile p(make_grid(32, 4 * kPi));
  double worst = 0.0;
  for (auto seed : seed_range(1, 20)) {
    auto [u, b] = random_pair(p.grid(), full_power_law(p, seed));
    const auto series = liouville_conditions(p, u, b, p.k_min(), p.k_max());
    for (const auto& rec : series.records) {
      worst = std::max(worst, ratio_or_zero(rec.cond_14, series.c_geo * rec.cond_15));
    }
  }
  r.seconds = clock.seconds();
  r.passed = exact && worst <= 1.0 + 1e-12;
  r.detail = std::string("single-mode closed form ") + (exact ? "exact" : "MISMATCH") +
             ", max cond_14/(2 cond_15) " + sci(worst) + ", " + fmt("%.1f s", r.seconds);
  return r;
}

CriterionResult check_determinism() {
  Stopwatch clock;
  CriterionResult r{11, "all-checks determinism", false, "", 0.0};
  AllChecksOptions opt;
  opt.n_per_dim = 32;
  opt.box_length = 4 * kPi;
  opt.seeds = {7, 8};
  const auto a = dump_json(run_all_checks(opt).report);
  const auto b = dump_json(run_all_checks(opt).report);
  r.seconds = clock.seconds();
  r.passed = a == b;
  r.detail = std::to_string(a.size()) + "-byte reports " + (r.passed ? "identical" : "differ");
  return r;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  out.push_back(check_partition());
  out.push_back(check_bernstein());
  out.push_back(check_support());
  for (auto& c : check_identity_suite()) out.push_back(std::move(c));
  out.push_back(check_tail_trend());
  out.push_back(check_j_ladders());
  out.push_back(check_conditions());
  out.push_back(check_determinism());
  return out;
}

AllChecksResult run_all_checks(const AllChecksOptions& options) {
  const LPProfile p(make_grid(options.n_per_dim, options.box_length));
  const auto& tol = options.tolerances;
  auto tolerance = [&](const char* name) {
    const auto it = tol.find(name);
    if (it == tol.end()) throw InputError(std::string("all-checks: missing tolerance ") + name);
    return it->second;
  };

  std::map<std::string, double> worst = {
      {"bound_ratio_nonfinite", 0.0}, {"condition_geo", 0.0},  {"decomposition", 0.0},
      {"energy_imbalance", 0.0},      {"partition", 0.0},      {"support_leak", 0.0},
      {"telescoping", telescoping_error(p)}, {"transport", 0.0}, {"vanishing", 0.0}};
  double low_min = kInfinity, low_max = 0.0;

  struct Case {
    std::string label;
    SpectralVectorField u;
    SpectralVectorField b;
  };
  std::vector<Case> cases;
  if (options.u || options.b) {
    const SpectralVectorField u = options.u ? *options.u : SpectralVectorField(p.grid());
    const SpectralVectorField b = options.b ? *options.b : SpectralVectorField(p.grid());
    if (!(u.grid() == p.grid()) || !(b.grid() == p.grid())) {
      throw InputError("all-checks: input fields do not match --grid/--box");
    }
    cases.push_back({"input", u, b});
  } else {
    for (auto seed : options.seeds) {
      if (options.zero_fields) {
        cases.push_back({std::to_string(seed), SpectralVectorField(p.grid()),
                         SpectralVectorField(p.grid())});
      } else {
        auto [u, b] = random_pair(p.grid(), suite_spectrum(p, seed));
        cases.push_back({std::to_string(seed), std::move(u), std::move(b)});
      }
    }
  }

  Json case_reports = Json::array();
  for (auto& c : cases) {
    Json cj;
    cj["case"] = c.label;
    cj["dirichlet"] = number(dirichlet_energy(c.u, c.b));
    const double rec_err = std::max(reconstruction_error(p, c.u), reconstruction_error(p, c.b));
    worst["partition"] = std::max(worst["partition"], rec_err);
    cj["reconstruction_error"] = number(rec_err);
    if (!c.u.is_zero()) {
      for (const auto& rec : bernstein_check(p, c.u).records) {
        low_min = std::min(low_min, rec.ratio_low);
        low_max = std::max(low_max, rec.ratio_low);
      }
    }
    IdentityLab lab(p, c.u, c.b);
    cj["scale"] = number(lab.scale());
    Json shells = Json::array();
    for (int k = p.k_min(); k <= p.k_max(); ++k) {
      const auto s = identity_shell(lab, k);
      worst["vanishing"] = std::max(worst["vanishing"], s.vanishing);
      worst["decomposition"] = std::max(worst["decomposition"], s.decomposition);
      worst["transport"] = std::max(worst["transport"], s.transport);
      worst["energy_imbalance"] = std::max(worst["energy_imbalance"], s.imbalance);
      double leak = 0.0;
      for (const auto& rec : lab.support_lemma(k)) {
        leak = std::max(leak, ratio_or_zero(rec.max_outside, rec.max_inside));
      }
      worst["support_leak"] = std::max(worst["support_leak"], leak);
      Json sj = {{"k", k},
                 {"vanishing", number(s.vanishing)},
                 {"decomposition", number(s.decomposition)},
                 {"transport", number(s.transport)},
                 {"imbalance", number(s.imbalance)},
                 {"support_leak", number(leak)},
                 {"I232", number(s.i232)},
                 {"I232_base", number(s.i232_base)}};
      for (auto flavor : {BoundFlavor::linf, BoundFlavor::l3}) {
        const auto rep = lab.bounds(k, flavor);
        if (!ratios_finite(rep)) worst["bound_ratio_nonfinite"] += 1.0;
        sj[std::string("bounds_") + to_string(flavor)] = {{"max_ratio", number(max_ratio(rep))},
                                                          {"j_sum", number(rep.j_sum)},
                                                          {"product", number(rep.product)}};
      }
      shells.push_back(std::move(sj));
    }
    cj["shells"] = std::move(shells);
    const auto series = lab.conditions(p.k_min(), p.k_max());
    for (const auto& rec : series.records) {
      worst["condition_geo"] =
          std::max(worst["condition_geo"], ratio_or_zero(rec.cond_14, series.c_geo * rec.cond_15));
    }
    cj["conditions"] = to_json(series);
    case_reports.push_back(std::move(cj));
  }

  const std::map<std::string, double> limits = {
      {"bound_ratio_nonfinite", 0.0},
      {"condition_geo", 1.0 + 1e-12},
      {"decomposition", tolerance("decomposition")},
      {"energy_imbalance", tolerance("energy_imbalance")},
      {"partition", tolerance("partition")},
      {"support_leak", tolerance("support_leak")},
      {"telescoping", 0.0},
      {"transport", tolerance("transport")},
      {"vanishing", tolerance("vanishing")}};
  AllChecksResult out;
  Json summary = Json::object();
  for (const auto& [name, value] : worst) {
    const bool ok = value <= limits.at(name);
    out.passed = out.passed && ok;
    summary[name] = {{"value", number(value)}, {"limit", number(limits.at(name))}, {"passed", ok}};
  }
  {
    const bool any = low_max > 0.0;
    const bool ok = !any || (low_min >= tolerance("bernstein_ratio_min") &&
                             low_max <= tolerance("bernstein_ratio_max"));
    out.passed = out.passed && ok;
    summary["bernstein_ratio_low"] = {{"min", any ? number(low_min) : Json(nullptr)},
                                      {"max", any ? number(low_max) : Json(nullptr)},
                                      {"passed", ok}};
  }

  std::vector<std::uint64_t> seeds = options.u || options.b ? std::vector<std::uint64_t>{} : options.seeds;
  RunManifest manifest = make_manifest("all-checks", p, seeds, tol);
  Json body = {{"passed", out.passed},
               {"zero_fields", options.zero_fields},
               {"summary", std::move(summary)},
               {"cases", std::move(case_reports)}};
  out.report = wrap_report(manifest, "all_checks", std::move(body));
  return out;
}

}  // namespace lplab
