#include "lplab/identity_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lplab/calculus.hpp"
#include "quadrature.hpp"

namespace lplab {

namespace {

constexpr double kDivergenceTolerance = 1e-10;
constexpr std::size_t kCacheBudgetBytes = std::size_t{768} << 20;

using Filter = IdentityLab::Filter;

Filter low(char src, int k) { return {src, {{'S', k}}}; }
Filter high(char src, int k) { return {src, {{'H', k}}}; }
Filter chain(char src, std::initializer_list<std::pair<char, int>> steps) {
  return {src, std::vector<std::pair<char, int>>(steps)};
}

void require_admissible(const SpectralVectorField& v, const char* name) {
  if (divergence_defect(v) > kDivergenceTolerance) {
    throw InputError(std::string("identity lab: ") + name + " is not divergence-free");
  }
  const Grid& g = v.grid();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto m = g.modes_at(idx);
    if (!(g.is_nyquist(m[0]) || g.is_nyquist(m[1]) || g.is_nyquist(m[2]))) continue;
    for (int d = 0; d < 3; ++d) {
      if (v[d][idx] != Complex{}) {
        throw InputError(std::string("identity lab: ") + name +
                         " carries Nyquist-plane modes; pairings on those modes are ambiguous");
      }
    }
  }
}

Grid compact_grid(const SpectralVectorField& u, const SpectralVectorField& b) {
  const int bw = std::max(u.bandwidth(), b.bandwidth());
  const int n = std::min(u.grid().n(), std::max(4, 2 * bw + 2));
  return Grid(n, u.grid().box_length());
}

SpectralVectorField move_to(const SpectralVectorField& v, const Grid& target) {
  if (v.grid() == target) return v;
  auto one = [&](int d) { return SpectralField(target, embed_coefficients(v[d], target.n())); };
  return SpectralVectorField(one(0), one(1), one(2));
}

void require_pair(const SpectralVectorField& u, const SpectralVectorField& b) {
  if (!(u.grid() == b.grid())) throw InputError("identity lab: u and B live on different grids");
  require_admissible(u, "u");
  require_admissible(b, "B");
}

}  // namespace

struct SampleCache {
  std::map<std::string, detail::PhysicalVector> vectors;
  std::map<std::string, detail::PhysicalGradient> gradients;
  std::size_t bytes = 0;

  void clear() {
    vectors.clear();
    gradients.clear();
    bytes = 0;
  }
};

double identity_scale(const SpectralVectorField& u, const SpectralVectorField& b) {
  const double s = 1.0 + gradient_norm(u) + gradient_norm(b);
  return s * s * s;
}

MhdResidual mhd_residual(const SpectralVectorField& u, const SpectralVectorField& b) {
  require_pair(u, b);
  warn_if_mean(u, "mhd_residual");
  warn_if_mean(b, "mhd_residual");
  const Grid& g = u.grid();
  const auto nonlinear = advect(u, u) - advect(b, b);
  MhdResidual out{(-1.0) * laplacian(u) + leray_project(nonlinear),
                  (-1.0) * laplacian(b) + advect(u, b) - advect(b, u), SpectralField(g)};
  const auto div = divergence(nonlinear);
  std::vector<Complex> p(g.size());
  for (std::size_t idx = 1; idx < g.size(); ++idx) {
    const double k = g.wavenumber(idx);
    p[idx] = div[idx] / (k * k);
  }
  out.pressure = SpectralField(g, std::move(p));
  return out;
}

std::string IdentityLab::Filter::key() const {
  std::string out(1, src);
  for (const auto& [op, j] : steps) {
    out += op;
    out += std::to_string(j);
  }
  return out;
}

IdentityLab::IdentityLab(const LPProfile& profile, SpectralVectorField u, SpectralVectorField b,
                         int refine)
    : profile_(profile),
      u_(std::move(u)),
      b_(std::move(b)),
      refine_(refine),
      quad_m_(0),
      scale_(0.0),
      residual_(mhd_residual(u_, b_)),
      compact_profile_(compact_grid(u_, b_)),
      uc_(move_to(u_, compact_profile_.grid())),
      bc_(move_to(b_, compact_profile_.grid())),
      ruc_(compact_profile_.grid()),
      rbc_(compact_profile_.grid()),
      cache_(std::make_unique<SampleCache>()) {
  if (!(profile_.grid() == u_.grid())) {
    throw InputError("identity lab: field grid does not match the LP profile");
  }
  // The residual itself is wider than the fields; only its pairing with
  // filtered fields is needed, and those live on the compact lattice.
  const Grid& cg = compact_profile_.grid();
  auto cut = [&](const SpectralVectorField& v) {
    if (v.grid() == cg) return v;
    auto one = [&](int d) {
      return restrict_coefficients(cg, std::vector<Complex>(v[d].coeffs().begin(), v[d].coeffs().end()),
                                   v.grid().n());
    };
    return SpectralVectorField(one(0), one(1), one(2));
  };
  ruc_ = cut(residual_.r_u);
  rbc_ = cut(residual_.r_b);
  const int bw = std::max({uc_.bandwidth(), bc_.bandwidth(), 1});
  quad_m_ = quadrature_size(cg, 3 * bw, bw);
  scale_ = identity_scale(u_, b_);
}

IdentityLab::~IdentityLab() = default;

void IdentityLab::clear_cache() { cache_->clear(); }

SpectralVectorField IdentityLab::build(const Filter& f) const {
  const SpectralVectorField& src = f.src == 'u' ? uc_ : bc_;
  if (f.steps.empty()) return src;
  // All steps are radial multipliers, so the chain collapses to one weight array.
  std::vector<double> w(src.grid().size(), 1.0);
  auto times = [&w](std::span<const double> v) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= v[i];
  };
  for (const auto& [op, j] : f.steps) {
    switch (op) {
      case 'S':
        times(compact_profile_.psi(j));
        break;
      case 'D':
        times(compact_profile_.phi(j));
        break;
      case 'W':
        times(compact_profile_.phi_tilde(j));
        break;
      case 'H': {
        const auto psi = compact_profile_.psi(j);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] *= 1.0 - psi[i];
        break;
      }
      default:
        throw InputError("identity lab: unknown filter step");
    }
  }
  return apply_multiplier(src, w);
}

double IdentityLab::trilinear(const Filter& a, const Filter& b, const Filter& c) {
  if (cache_->bytes > kCacheBudgetBytes) cache_->clear();
  const std::size_t count = static_cast<std::size_t>(quad_m_) * quad_m_ * quad_m_;
  auto vec = [&](const Filter& f) -> const detail::PhysicalVector& {
    const auto key = f.key();
    auto it = cache_->vectors.find(key);
    if (it == cache_->vectors.end()) {
      it = cache_->vectors.emplace(key, detail::sample_vector(build(f), quad_m_)).first;
      if (!it->second.zero) cache_->bytes += 3 * count * sizeof(double);
    }
    return it->second;
  };
  const auto& pa = vec(a);
  if (pa.zero) return 0.0;
  const auto& pc = vec(c);
  if (pc.zero) return 0.0;
  const auto key = b.key();
  auto it = cache_->gradients.find(key);
  if (it == cache_->gradients.end()) {
    it = cache_->gradients.emplace(key, detail::sample_gradient(build(b), quad_m_)).first;
    if (!it->second.zero) cache_->bytes += 9 * count * sizeof(double);
  }
  const double cell = uc_.grid().volume() / static_cast<double>(count);
  return detail::trilinear_sum(pa, it->second, pc, cell);
}

void IdentityLab::require_in_range(int k, const char* what) const {
  if (k < profile_.k_min() || k > profile_.k_max()) {
    throw InputError(std::string(what) + ": k = " + std::to_string(k) + " outside [" +
                     std::to_string(profile_.k_min()) + ", " + std::to_string(profile_.k_max()) +
                     "]");
  }
}

TransportReport IdentityLab::transport(int k) {
  TransportReport out;
  out.k = k;
  out.scale = scale_;
  const Filter U{'u', {}}, B{'b', {}};
  auto add = [&](std::string name, double lhs, double rhs) {
    out.identities.push_back({std::move(name), lhs, rhs, std::abs(lhs - rhs)});
  };
  add("u_u_uk", -trilinear(U, U, high('u', k)),
      -trilinear(low('u', k), low('u', k), high('u', k)) -
          trilinear(high('u', k), low('u', k), high('u', k)));
  add("u_b_bk", -trilinear(U, B, high('b', k)),
      -trilinear(low('u', k), low('b', k), high('b', k)) -
          trilinear(high('u', k), low('b', k), high('b', k)));
  add("b_b_uk+b_u_bk", trilinear(B, B, high('u', k)) + trilinear(B, U, high('b', k)),
      trilinear(low('b', k), low('b', k), high('u', k)) +
          trilinear(high('b', k), low('b', k), high('u', k)) +
          trilinear(low('b', k), low('u', k), high('b', k)) +
          trilinear(high('b', k), low('u', k), high('b', k)));
  return out;
}

namespace {

// Paraproduct pieces of int (f-slot . grad S_k g) . h-slot.
struct OddSplit {
  double x11 = 0.0, x12 = 0.0, x13 = 0.0, loc12 = 0.0, loc13 = 0.0;
};
struct EvenSplit {
  double x21 = 0.0, x22 = 0.0, x23 = 0.0, x231 = 0.0, x232 = 0.0;
};

OddSplit odd_split(IdentityLab& lab, char f, char g, char h, int k, bool full) {
  const auto& p = lab.profile();
  OddSplit out;
  const Filter sg = low(g, k);
  if (full) {
    for (int l = p.k_min(); l <= p.k_max(); ++l) {
      out.x11 += lab.trilinear(chain(f, {{'S', k}, {'D', l}}), sg, chain(h, {{'H', k}, {'S', l - 2}}));
      out.x12 += lab.trilinear(chain(f, {{'S', k}, {'S', l - 2}}), sg, chain(h, {{'H', k}, {'D', l}}));
      out.x13 += lab.trilinear(chain(f, {{'S', k}, {'D', l}}), sg, chain(h, {{'H', k}, {'W', l}}));
    }
  }
  for (int l = k - 1; l <= k + 1; ++l) {
    for (int lp = l - 2; lp <= k - 1; ++lp) {
      out.loc12 += lab.trilinear(chain(f, {{'S', k}, {'S', l - 2}}), chain(g, {{'D', lp}}),
                                 chain(h, {{'H', k}, {'D', l}}));
    }
  }
  for (int l = k - 3; l <= k; ++l) {
    out.loc13 += lab.trilinear(chain(f, {{'S', k}, {'D', l}}), sg, chain(h, {{'H', k}, {'W', l}}));
  }
  return out;
}

EvenSplit even_split(IdentityLab& lab, char f, char g, char h, int k, bool full) {
  const auto& p = lab.profile();
  EvenSplit out;
  const Filter sg = low(g, k);
  const int split = floor_three_quarters(k);
  for (int l = p.k_min(); l <= p.k_max(); ++l) {
    if (full) {
      out.x21 += lab.trilinear(chain(f, {{'H', k}, {'D', l}}), sg, chain(h, {{'H', k}, {'S', l - 2}}));
      out.x22 += lab.trilinear(chain(f, {{'H', k}, {'S', l - 2}}), sg, chain(h, {{'H', k}, {'D', l}}));
    }
    if (!full && (l < k - 1 || l > split)) continue;
    const double t =
        lab.trilinear(chain(f, {{'H', k}, {'W', l}}), sg, chain(h, {{'H', k}, {'D', l}}));
    out.x23 += t;
    if (l >= k - 1 && l <= split) {
      out.x231 += t;
    } else if (l > split) {
      out.x232 += t;
    }
  }
  return out;
}

}  // namespace

ITermReport IdentityLab::i_terms(int k) {
  require_in_range(k, "compute_I_terms");
  ITermReport out;
  out.k = k;
  out.scale = scale_;
  const Filter su = low('u', k), sb = low('b', k), hu = high('u', k), hb = high('b', k);
  auto& I = out.I;
  I["I1"] = -trilinear(su, su, hu);
  I["I2"] = -trilinear(hu, su, hu);
  I["I3"] = -trilinear(su, sb, hb);
  I["I4"] = -trilinear(hu, sb, hb);
  I["I5"] = trilinear(sb, sb, hu);
  I["I6"] = trilinear(hb, sb, hu);
  I["I7"] = trilinear(sb, su, hb);
  I["I8"] = trilinear(hb, su, hb);

  const auto odd = odd_split(*this, 'u', 'u', 'u', k, true);
  I["I11"] = odd.x11;
  I["I12"] = odd.x12;
  I["I13"] = odd.x13;
  I["I1_localized"] = odd.loc12 + odd.loc13;
  const auto even = even_split(*this, 'u', 'u', 'u', k, true);
  I["I21"] = even.x21;
  I["I22"] = even.x22;
  I["I23"] = even.x23;
  I["I231"] = even.x231;
  I["I232"] = even.x232;
  I["I232_base"] = std::sqrt(low_grad_sq('u', k)) * std::pow(gradient_norm(u_), 2);

  const auto tr = transport(k);
  for (const auto& id : tr.identities) out.lhs_transport[id.name] = id.lhs;
  return out;
}

IdentityReport IdentityLab::energy(int k) {
  IdentityReport out;
  out.k = k;
  out.scale = scale_;
  const Filter su = low('u', k), sb = low('b', k), hu = high('u', k), hb = high('b', k);
  auto& t = out.rhs_terms;
  t["I1"] = -trilinear(su, su, hu);
  t["I2"] = -trilinear(hu, su, hu);
  t["I3"] = -trilinear(su, sb, hb);
  t["I4"] = -trilinear(hu, sb, hb);
  t["I5"] = trilinear(sb, sb, hu);
  t["I6"] = trilinear(hb, sb, hu);
  t["I7"] = trilinear(sb, su, hb);
  t["I8"] = trilinear(hb, su, hb);
  const auto uk = build(hu);
  const auto bk = build(hb);
  t["cross_u"] = gradient_pairing(build(su), uk);
  t["cross_b"] = gradient_pairing(build(sb), bk);
  out.residual_corrections["r_u"] = inner_product(ruc_, uk);
  out.residual_corrections["r_b"] = inner_product(rbc_, bk);

  out.lhs = gradient_pairing(uk, uk) + gradient_pairing(bk, bk);
  double total = 0.0;
  for (const char* name : {"I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8"}) total += t[name];
  total += out.residual_corrections["r_u"] + out.residual_corrections["r_b"];
  total -= t["cross_u"] + t["cross_b"];
  out.rhs_total = total;
  out.imbalance = std::abs(out.lhs - out.rhs_total) / scale_;
  return out;
}

double IdentityLab::low_norm(char src, int j, double p) {
  const auto support = fourier_support(src == 'u' ? uc_ : bc_);
  // S_j acts as the identity once the whole spectrum sits inside |xi| <= 2^(j-1).
  const bool whole = !support.empty && support.max <= std::ldexp(1.0, j - 1);
  const std::string key = std::string(1, src) + (whole ? std::string("all") : "S" + std::to_string(j)) +
                          "L" + (std::isinf(p) ? std::string("inf") : std::to_string(p));
  const auto it = norm_cache_.find(key);
  if (it != norm_cache_.end()) return it->second;
  const auto field = build(low(src, j));
  // Sampled on the refined lattice of the original grid, not the compact one.
  const double value =
      field.is_zero() ? 0.0 : lebesgue_norm_on(field, p, refine_ * u_.grid().n());
  norm_cache_.emplace(key, value);
  return value;
}

double IdentityLab::low_grad_sq(char src, int j) {
  const std::string key = std::string(1, src) + "S" + std::to_string(j) + "G";
  const auto it = norm_cache_.find(key);
  if (it != norm_cache_.end()) return it->second;
  const double g = gradient_norm(build(low(src, j)));
  norm_cache_.emplace(key, g * g);
  return g * g;
}

const char* to_string(BoundFlavor flavor) { return flavor == BoundFlavor::linf ? "linf" : "l3"; }

BoundFlavor parse_bound_flavor(const std::string& text) {
  if (text == "linf") return BoundFlavor::linf;
  if (text == "l3") return BoundFlavor::l3;
  throw InputError("unknown bound flavor '" + text + "' (expected linf or l3)");
}

BoundReport IdentityLab::bounds(int k, BoundFlavor flavor) {
  require_in_range(k, "compute_J_bounds");
  BoundReport out;
  out.k = k;
  out.flavor = flavor;
  out.scale = scale_;

  const auto uuu = odd_split(*this, 'u', 'u', 'u', k, false);
  const auto ubb = odd_split(*this, 'u', 'b', 'b', k, false);
  const auto bbu = odd_split(*this, 'b', 'b', 'u', k, false);
  const auto bub = odd_split(*this, 'b', 'u', 'b', k, false);
  const double j[8] = {
      -(uuu.loc12 + uuu.loc13),
      -(ubb.loc12 + ubb.loc13),
      bbu.loc12 + bbu.loc13,
      bub.loc12 + bub.loc13,
      -even_split(*this, 'u', 'u', 'u', k, false).x231,
      -even_split(*this, 'u', 'b', 'b', k, false).x231,
      even_split(*this, 'b', 'b', 'u', k, false).x231,
      even_split(*this, 'b', 'u', 'b', k, false).x231,
  };

  const int m = floor_three_quarters(k);
  auto G = [&](char src, int i) { return low_grad_sq(src, i); };
  double env[8];
  if (flavor == BoundFlavor::linf) {
    const double w = std::ldexp(1.0, -k);
    const double nu = low_norm('u', k, kInfinity);
    const double nb = low_norm('b', k, kInfinity);
    const double high_sum = G('b', k + 3) + G('u', k + 3);
    const double mid_sum = G('u', m + 3) + G('b', m + 3);
    env[0] = w * nu * G('u', k + 3);
    env[1] = w * (nu + nb) * high_sum;
    env[2] = w * nb * high_sum;
    env[3] = env[1];
    env[4] = w * nu * G('u', m + 3);
    env[5] = w * nb * mid_sum;
    env[6] = env[5];
    env[7] = w * nu * G('b', m + 3);
    out.product = w * (nu + nb) * mid_sum;
  } else {
    const double nk = low_norm('u', k, 3.0);
    const double nk3 = low_norm('u', k + 3, 3.0);
    const double nm1 = low_norm('u', m + 1, 3.0);
    const double nm3 = low_norm('u', m + 3, 3.0);
    env[0] = nk * (G('u', k) + G('u', k + 3));
    env[1] = nk * (G('b', k) + G('b', k + 3));
    env[2] = nk3 * (G('b', k) + G('b', k + 3));
    env[3] = env[1];
    env[4] = nk * G('u', m + 3);
    env[5] = nm3 * (G('b', k) + G('b', m + 1));
    env[6] = nm1 * (G('b', k) + G('b', m + 3));
    env[7] = nk * (G('b', m + 1) + G('b', m + 3));
    out.product = (nk + nm1 + nm3) * (G('u', k) + G('u', k + 3) + G('b', k) + G('b', k + 3) +
                                      G('u', m + 1) + G('b', m + 1) + G('b', m + 3));
  }
  const double negligible = 1e-12 * scale_;
  for (int i = 0; i < 8; ++i) {
    BoundRecord rec;
    rec.name = "J" + std::to_string(i + 1);
    rec.value = j[i];
    rec.lhs = std::abs(j[i]);
    rec.envelope = env[i];
    if (env[i] > 0.0) {
      rec.ratio = rec.lhs / env[i];
    } else if (rec.lhs > negligible) {
      rec.ratio = std::numeric_limits<double>::infinity();
    }
    out.j_sum += rec.lhs;
    out.records.push_back(std::move(rec));
  }
  out.dirichlet = dirichlet_energy(u_, b_);
  const auto uk = build(high('u', k));
  const auto bk = build(high('b', k));
  out.high_pass_energy = gradient_pairing(uk, uk) + gradient_pairing(bk, bk);
  return out;
}

ConditionSeries IdentityLab::conditions(int k_lo, int k_hi) {
  if (k_lo > k_hi) throw InputError("liouville_conditions: empty k range");
  ConditionSeries out;
  for (int k = k_hi; k >= k_lo; --k) {
    ConditionRecord rec;
    rec.k = k;
    const double nu = low_norm('u', k, kInfinity);
    const double nb = low_norm('b', k, kInfinity);
    rec.cond_14 = std::ldexp(nu + nb, -k);
    double besov = 0.0;
    for (const auto* f : {&u_, &b_}) {
      const auto s = low_pass(profile_, *f, k);
      if (!s.is_zero()) besov += besov_norm(profile_, s, -1.0, kInfinity, kInfinity, refine_);
    }
    rec.cond_15 = besov;
    rec.cond_16 = low_norm('u', k, 3.0);
    const int m = floor_three_quarters(k);
    rec.product_linf = rec.cond_14 * (low_grad_sq('b', m + 3) + low_grad_sq('u', m + 3));
    rec.product_l3 = (rec.cond_16 + low_norm('u', m + 1, 3.0) + low_norm('u', m + 3, 3.0)) *
                     (low_grad_sq('u', k) + low_grad_sq('u', k + 3) + low_grad_sq('b', k) +
                      low_grad_sq('b', k + 3) + low_grad_sq('u', m + 1) +
                      low_grad_sq('b', m + 1) + low_grad_sq('b', m + 3));
    out.records.push_back(rec);
  }
  return out;
}

std::vector<SupportRecord> IdentityLab::support_lemma(int k) {
  require_in_range(k, "support_lemma");
  std::vector<SupportRecord> out;
  for (int l = profile_.k_min(); l <= profile_.k_max(); ++l) {
    const auto hi = build(chain('u', {{'H', k}, {'D', l}}));
    const auto lo = build(chain('u', {{'S', k}, {'S', l - 2}}));
    if (hi.is_zero() || lo.is_zero()) continue;
    SupportRecord rec;
    rec.k = k;
    rec.l = l;
    const double inner = std::ldexp(1.0, l - 2);
    const double outer = 1.125 * std::ldexp(1.0, l + 1);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const auto spec = product_spectrum(hi[i], lo[j]);
        for (std::size_t idx = 0; idx < spec.coeffs.size(); ++idx) {
          const double a = std::abs(spec.coeffs[idx]);
          const double xi = spec.wavenumber(idx);
          if (xi >= inner && xi < outer) {
            rec.max_inside = std::max(rec.max_inside, a);
          } else {
            rec.max_outside = std::max(rec.max_outside, a);
          }
        }
      }
    }
    out.push_back(rec);
  }
  return out;
}

TransportReport transport_identities(const LPProfile& profile, const SpectralVectorField& u,
                                     const SpectralVectorField& b, int k) {
  return IdentityLab(profile, u, b).transport(k);
}

ITermReport compute_I_terms(const LPProfile& profile, const SpectralVectorField& u,
                            const SpectralVectorField& b, int k) {
  return IdentityLab(profile, u, b).i_terms(k);
}

IdentityReport energy_identity(const LPProfile& profile, const SpectralVectorField& u,
                               const SpectralVectorField& b, int k) {
  return IdentityLab(profile, u, b).energy(k);
}

BoundReport compute_J_bounds(const LPProfile& profile, const SpectralVectorField& u,
                             const SpectralVectorField& b, int k, BoundFlavor flavor) {
  return IdentityLab(profile, u, b).bounds(k, flavor);
}

ConditionSeries liouville_conditions(const LPProfile& profile, const SpectralVectorField& u,
                                     const SpectralVectorField& b, int k_lo, int k_hi) {
  return IdentityLab(profile, u, b).conditions(k_lo, k_hi);
}

}  // namespace lplab
