#pragma once

/// @file norms.hpp
/// @brief L^p, homogeneous Sobolev and Besov norms, the Dirichlet energy and
/// an empirical Bernstein-inequality report.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lplab/littlewood_paley.hpp"

namespace lplab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class SobolevMethod { integral, lp_sum };

struct NormReport {
  std::string norm_kind;  // "lebesgue" | "sobolev" | "besov" | "dirichlet"
  std::optional<double> s;
  std::optional<double> p;
  std::optional<double> q;
  double value = 0.0;
  std::string method;  // "integral" | "lp_sum" | "physical_max" | "quadrature"
};

/// p < infinity: (sum_x |f(x)|^p (L/(r n))^3)^(1/p) on the r-times refined
/// sample lattice; p = infinity: maximum over those samples, a lower bound on
/// the true supremum. |f| is the Euclidean length for vector fields.
double lebesgue_norm(const SpectralField& f, double p, int refine = 1);
double lebesgue_norm(const SpectralVectorField& f, double p, int refine = 1);
/// Same quantity sampled on an explicit m^3 lattice over the field's box.
double lebesgue_norm_on(const SpectralVectorField& f, double p, int m);

/// integral: (L^3 sum_m |xi_m|^(2s) |fhat_m|^2)^(1/2);
/// lp_sum:   (sum_k 2^(2ks) ||Delta_k f||_2^2)^(1/2) over the profile range.
/// s <= 0 with a nonzero mean is rejected.
double sobolev_norm(const LPProfile& profile, const SpectralField& f, double s,
                    SobolevMethod method);
double sobolev_norm(const LPProfile& profile, const SpectralVectorField& f, double s,
                    SobolevMethod method);

/// l^q over the profile's k range of 2^(sk) ||Delta_k f||_{L^p}.
double besov_norm(const LPProfile& profile, const SpectralField& f, double s, double p,
                  double q, int refine = 1);
double besov_norm(const LPProfile& profile, const SpectralVectorField& f, double s, double p,
                  double q, int refine = 1);

/// ||grad u||_2^2 + ||grad B||_2^2 = L^3 sum_m |xi_m|^2 (|uhat_m|^2 + |Bhat_m|^2).
double dirichlet_energy(const SpectralVectorField& u, const SpectralVectorField& b);

/// ||grad f||_2, i.e. the integral homogeneous H^1 norm.
double gradient_norm(const SpectralVectorField& f);

struct LpLqPair {
  double p;
  double q;
};
/// The (p, q) pairs checked for the L^p -> L^q block inequality.
const std::vector<LpLqPair>& bernstein_pairs();

struct BernsteinRecord {
  int k = 0;
  /// ||grad Delta_k f||_2 / (2^k ||Delta_k f||_2); lies in [1/2, 2].
  double ratio_low = 0.0;
  /// ||Delta_k f||_q / (2^(k(3/p - 3/q)) ||Delta_k f||_p), one per bernstein_pairs() entry.
  std::vector<double> lp_lq_ratios;
};

struct BernsteinReport {
  std::vector<BernsteinRecord> records;  // nonempty shells only, increasing k
};

/// Throws InputError for the all-zero field.
BernsteinReport bernstein_check(const LPProfile& profile, const SpectralVectorField& f,
                                int refine = 1);

}  // namespace lplab
