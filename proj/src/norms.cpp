#include "lplab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "lplab/calculus.hpp"

namespace lplab {

namespace {

void require_p(double p, const char* what) {
  if (!(p >= 1.0)) throw InputError(std::string(what) + ": exponent must lie in [1, inf]");
}

double norm_from_magnitudes(const std::vector<double>& mag2, double p, double cell) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (double v : mag2) best = std::max(best, v);
    return std::sqrt(best);
  }
  double sum = 0.0;
  double comp = 0.0;
  for (double v : mag2) {
    const double term = p == 2.0 ? v : p == 3.0 ? v * std::sqrt(v) : std::pow(v, 0.5 * p);
    const double t = sum + term;
    comp += (sum >= term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return std::pow((sum + comp) * cell, 1.0 / p);
}

int refined_size(const Grid& grid, int refine) {
  if (refine < 1) throw InputError("lebesgue_norm: refinement factor must be >= 1");
  return grid.n() * refine;
}

double weighted_sum(const Grid& g, const SpectralField& f, double s) {
  double total = 0.0;
  for (std::size_t idx = 1; idx < g.size(); ++idx) {
    const double a2 = std::norm(f[idx]);
    if (a2 == 0.0) continue;
    total += std::pow(g.wavenumber(idx), 2.0 * s) * a2;
  }
  return total;
}

template <typename Field>
double sobolev_impl(const LPProfile& profile, const Field& f, double s, SobolevMethod method) {
  const bool has_mean = warn_if_mean(f, "sobolev_norm");
  if (s <= 0.0 && has_mean) {
    throw InputError("sobolev_norm: s <= 0 requires a mean-zero field");
  }
  if (method == SobolevMethod::integral) {
    const Grid& g = f.grid();
    double total = 0.0;
    if constexpr (std::is_same_v<Field, SpectralField>) {
      total = weighted_sum(g, f, s);
    } else {
      for (int d = 0; d < 3; ++d) total += weighted_sum(g, f[d], s);
    }
    return std::sqrt(g.volume() * total);
  }
  double total = 0.0;
  for (int k = profile.k_min(); k <= profile.k_max(); ++k) {
    total += std::exp2(2.0 * k * s) * l2_norm_squared(dyadic_block(profile, f, k));
  }
  return std::sqrt(total);
}

template <typename Field>
double besov_impl(const LPProfile& profile, const Field& f, double s, double p, double q,
                  int refine) {
  require_p(p, "besov_norm");
  require_p(q, "besov_norm");
  warn_if_mean(f, "besov_norm");
  double acc = 0.0;
  for (int k = profile.k_min(); k <= profile.k_max(); ++k) {
    const auto block = dyadic_block(profile, f, k);
    if (block.is_zero()) continue;
    const double term = std::exp2(s * k) * lebesgue_norm(block, p, refine);
    if (std::isinf(q)) {
      acc = std::max(acc, term);
    } else {
      acc += std::pow(term, q);
    }
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

}  // namespace

double lebesgue_norm(const SpectralField& f, double p, int refine) {
  require_p(p, "lebesgue_norm");
  const int m = refined_size(f.grid(), refine);
  auto samples = sample_on(f, m);
  for (auto& v : samples) v = v * v;
  const double cell = f.grid().volume() / (static_cast<double>(m) * m * m);
  return norm_from_magnitudes(samples, p, cell);
}

double lebesgue_norm(const SpectralVectorField& f, double p, int refine) {
  return lebesgue_norm_on(f, p, refined_size(f.grid(), refine));
}

double lebesgue_norm_on(const SpectralVectorField& f, double p, int m) {
  require_p(p, "lebesgue_norm");
  std::vector<double> mag2(static_cast<std::size_t>(m) * m * m, 0.0);
  // Components are real, so x + i y needs a single transform.
  auto pair = embed_coefficients(f[0], m);
  const auto second = embed_coefficients(f[1], m);
  for (std::size_t i = 0; i < pair.size(); ++i) pair[i] += Complex(0.0, 1.0) * second[i];
  detail::fft3d(pair, m, detail::FftDirection::backward);
  for (std::size_t i = 0; i < mag2.size(); ++i) mag2[i] = std::norm(pair[i]);
  const auto third = sample_on(f[2], m);
  for (std::size_t i = 0; i < mag2.size(); ++i) mag2[i] += third[i] * third[i];
  const double cell = f.grid().volume() / (static_cast<double>(m) * m * m);
  return norm_from_magnitudes(mag2, p, cell);
}

double sobolev_norm(const LPProfile& profile, const SpectralField& f, double s,
                    SobolevMethod method) {
  return sobolev_impl(profile, f, s, method);
}

double sobolev_norm(const LPProfile& profile, const SpectralVectorField& f, double s,
                    SobolevMethod method) {
  return sobolev_impl(profile, f, s, method);
}

double besov_norm(const LPProfile& profile, const SpectralField& f, double s, double p, double q,
                  int refine) {
  return besov_impl(profile, f, s, p, q, refine);
}

double besov_norm(const LPProfile& profile, const SpectralVectorField& f, double s, double p,
                  double q, int refine) {
  return besov_impl(profile, f, s, p, q, refine);
}

double gradient_norm(const SpectralVectorField& f) {
  const Grid& g = f.grid();
  double total = 0.0;
  for (int d = 0; d < 3; ++d) total += weighted_sum(g, f[d], 1.0);
  return std::sqrt(g.volume() * total);
}

double dirichlet_energy(const SpectralVectorField& u, const SpectralVectorField& b) {
  if (!(u.grid() == b.grid())) throw InputError("dirichlet_energy: grid mismatch");
  const double gu = gradient_norm(u);
  const double gb = gradient_norm(b);
  return gu * gu + gb * gb;
}

const std::vector<LpLqPair>& bernstein_pairs() {
  static const std::vector<LpLqPair> pairs{{2.0, kInfinity}, {2.0, 3.0}, {3.0, 6.0}, {2.0, 6.0}};
  return pairs;
}

BernsteinReport bernstein_check(const LPProfile& profile, const SpectralVectorField& f,
                                int refine) {
  if (f.is_zero()) throw InputError("bernstein_check: the field is identically zero");
  warn_if_mean(f, "bernstein_check");
  BernsteinReport report;
  for (int k = profile.k_min(); k <= profile.k_max(); ++k) {
    const auto block = dyadic_block(profile, f, k);
    if (block.is_zero()) continue;
    BernsteinRecord rec;
    rec.k = k;
    const double l2 = std::sqrt(l2_norm_squared(block));
    rec.ratio_low = gradient_norm(block) / (std::exp2(k) * l2);
    for (const auto& [p, q] : bernstein_pairs()) {
      const double inv_q = std::isinf(q) ? 0.0 : 3.0 / q;
      const double scale = std::exp2(k * (3.0 / p - inv_q));
      const double np = p == 2.0 ? l2 : lebesgue_norm(block, p, refine);
      rec.lp_lq_ratios.push_back(lebesgue_norm(block, q, refine) / (scale * np));
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace lplab
