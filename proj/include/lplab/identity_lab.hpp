#pragma once

/// @file identity_lab.hpp
/// @brief Paraproduct splittings of the MHD trilinear terms, the transport and
/// residual-corrected energy identities, the block bound ladders and the
/// low-frequency condition sequences.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lplab/norms.hpp"

namespace lplab {

inline constexpr double kTheta = 0.75;

/// (1 + ||grad u||_2 + ||grad B||_2)^3; every trilinear term is bounded by it.
double identity_scale(const SpectralVectorField& u, const SpectralVectorField& b);

struct MhdResidual {
  SpectralVectorField r_u;
  SpectralVectorField r_b;
  SpectralField pressure;
};

/// r_u = -lap u + P(u.grad u - B.grad B), r_B = -lap B + u.grad B - B.grad u,
/// with -lap p = div(u.grad u - B.grad B) and mean(p) = 0.
/// Throws InputError for inputs that are not divergence-free, carry Nyquist-plane
/// modes, or live on different grids.
MhdResidual mhd_residual(const SpectralVectorField& u, const SpectralVectorField& b);

/// Each identity compares the two-term (or four-term) transport sum with the
/// full trilinear it came from.
struct TransportIdentity {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double difference = 0.0;  // |lhs - rhs|
};

struct TransportReport {
  int k = 0;
  double scale = 0.0;
  std::vector<TransportIdentity> identities;  // u_u_uk, u_b_bk, b_b_uk+b_u_bk
};

struct ITermReport {
  int k = 0;
  double theta = kTheta;
  double scale = 0.0;
  /// I1..I8 evaluated directly, the splits I11..I13 / I21..I23 / I231, I232
  /// (sign convention: -I1 = I11 + I12 + I13, -I2 = I21 + I22 + I23), the
  /// localized reconstruction I1_localized of -I1, and I232_base =
  /// ||grad S_k u||_2 ||grad u||_2^2.
  std::map<std::string, double> I;
  std::map<std::string, double> lhs_transport;
};

struct IdentityReport {
  int k = 0;
  double scale = 0.0;
  double lhs = 0.0;  // ||grad u^k||^2 + ||grad B^k||^2
  std::map<std::string, double> rhs_terms;             // I1..I8, cross_u, cross_b
  std::map<std::string, double> residual_corrections;  // r_u, r_b
  double rhs_total = 0.0;
  double imbalance = 0.0;
};

enum class BoundFlavor { linf, l3 };
const char* to_string(BoundFlavor flavor);
BoundFlavor parse_bound_flavor(const std::string& text);

struct BoundRecord {
  std::string name;  // J1..J8
  double value = 0.0;
  double lhs = 0.0;  // |value|
  double envelope = 0.0;
  std::optional<double> ratio;  // null when the envelope is 0 and lhs is negligible
};

struct BoundReport {
  int k = 0;
  BoundFlavor flavor = BoundFlavor::linf;
  double scale = 0.0;
  std::vector<BoundRecord> records;
  double dirichlet = 0.0;  // D(u, B)
  double product = 0.0;    // master right side at k
  double j_sum = 0.0;      // sum_i |J_i|
  double high_pass_energy = 0.0;
};

struct ConditionRecord {
  int k = 0;
  double cond_14 = 0.0;  // 2^-k (|S_k u|_inf + |S_k B|_inf)
  double cond_15 = 0.0;  // Besov(-1, inf, inf) of S_k u plus that of S_k B
  double cond_16 = 0.0;  // |S_k u|_3
  double product_linf = 0.0;
  double product_l3 = 0.0;
};

struct ConditionSeries {
  /// cond_14 <= c_geo * cond_15 holds blockwise for every field.
  double c_geo = 2.0;
  std::vector<ConditionRecord> records;  // decreasing k
};

struct SupportRecord {
  int k = 0;
  int l = 0;
  double max_inside = 0.0;
  double max_outside = 0.0;
};

struct SampleCache;

/// Evaluation context for one (u, B) pair. Physical samples of the filtered
/// fields are cached (bounded by a byte budget), so calls for the same k share
/// FFT work.
class IdentityLab {
 public:
  IdentityLab(const LPProfile& profile, SpectralVectorField u, SpectralVectorField b,
              int refine = 2);
  ~IdentityLab();
  IdentityLab(const IdentityLab&) = delete;
  IdentityLab& operator=(const IdentityLab&) = delete;

  const LPProfile& profile() const { return profile_; }
  double scale() const { return scale_; }
  const MhdResidual& residual() const { return residual_; }

  TransportReport transport(int k);
  ITermReport i_terms(int k);
  IdentityReport energy(int k);
  BoundReport bounds(int k, BoundFlavor flavor);
  ConditionSeries conditions(int k_lo, int k_hi);
  /// Fourier support of the products Delta_l u^k_i * S_{l-2} S_k u_j.
  std::vector<SupportRecord> support_lemma(int k);

  void clear_cache();

  /// A filtered copy of u ('u') or B ('b'): operators applied left to right.
  /// 'S' low pass S_j, 'D' block Delta_j, 'W' wide block, 'H' high pass I - S_j.
  struct Filter {
    char src = 'u';
    std::vector<std::pair<char, int>> steps;
    std::string key() const;
  };
  /// int (a . grad) b . c dx with all three slots filtered.
  double trilinear(const Filter& a, const Filter& b, const Filter& c);
  SpectralVectorField build(const Filter& f) const;

 private:
  double low_norm(char src, int j, double p);
  double low_grad_sq(char src, int j);
  void require_in_range(int k, const char* what) const;

  const LPProfile& profile_;
  SpectralVectorField u_;
  SpectralVectorField b_;
  int refine_;
  int quad_m_;
  double scale_;
  MhdResidual residual_;
  // Copies on the smallest lattice that holds the spectra; all filtering and
  // quadrature runs there.
  LPProfile compact_profile_;
  SpectralVectorField uc_;
  SpectralVectorField bc_;
  SpectralVectorField ruc_;
  SpectralVectorField rbc_;
  std::unique_ptr<SampleCache> cache_;
  std::map<std::string, double> norm_cache_;
};

TransportReport transport_identities(const LPProfile& profile, const SpectralVectorField& u,
                                     const SpectralVectorField& b, int k);
ITermReport compute_I_terms(const LPProfile& profile, const SpectralVectorField& u,
                            const SpectralVectorField& b, int k);
IdentityReport energy_identity(const LPProfile& profile, const SpectralVectorField& u,
                               const SpectralVectorField& b, int k);
BoundReport compute_J_bounds(const LPProfile& profile, const SpectralVectorField& u,
                             const SpectralVectorField& b, int k, BoundFlavor flavor);
/// Throws InputError when k_lo > k_hi.
ConditionSeries liouville_conditions(const LPProfile& profile, const SpectralVectorField& u,
                                     const SpectralVectorField& b, int k_lo, int k_hi);

}  // namespace lplab
