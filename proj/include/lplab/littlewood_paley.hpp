#pragma once

/// @file littlewood_paley.hpp
/// @brief Homogeneous Littlewood-Paley machinery on the lattice: the radial
/// cutoff psi, annulus weights phi(xi) = psi(xi/2) - psi(xi), dyadic blocks,
/// widened blocks, low-pass cutoffs and high-pass remainders.

#include <map>
#include <span>
#include <vector>

#include "lplab/field.hpp"

namespace lplab {

/// psi(r): 1 for r <= 1/2, 0 for r >= 1, and s(2(1 - r)) in between with
/// s(t) = h(t) / (h(t) + h(1 - t)), h(t) = exp(-1/t) for t > 0.
double psi_profile(double r);

/// Construction tag recorded in run manifests.
inline constexpr const char* kPsiTag = "smoothstep-exp:psi=s(2(1-r)),h=exp(-1/t)";

enum class BlockWidth { standard, tilde };

class LPProfile {
 public:
  /// Throws InputError when no annulus fits on the lattice.
  explicit LPProfile(Grid grid);

  const Grid& grid() const { return grid_; }
  /// Smallest k whose annulus weight is nonzero on some lattice mode.
  int k_min() const { return k_min_; }
  /// Largest such k; the blocks k_min..k_max partition every nonzero mode.
  int k_max() const { return k_max_; }

  /// psi(2^-k xi_m) per mode, with the mean mode set to zero. Below the range
  /// this is identically zero, above it identically one off the mean.
  std::span<const double> psi(int k) const;
  /// Literal difference psi(2^-(k+1) xi) - psi(2^-k xi).
  std::vector<double> phi(int k) const;
  /// Sum of phi(l) over |l - k| <= 2, accumulated in increasing l.
  std::vector<double> phi_tilde(int k) const;
  std::vector<double> block_weights(int k, BlockWidth width) const;

 private:
  Grid grid_;
  int k_min_ = 0;
  int k_max_ = 0;
  std::vector<std::vector<double>> psi_;  // k_min .. k_max + 1
  std::vector<double> zeros_;
  std::vector<double> ones_;
};

LPProfile build_lp_profile(const Grid& grid);

/// Multiplies every coefficient by a real per-mode weight.
SpectralField apply_multiplier(const SpectralField& f, std::span<const double> weights);
SpectralVectorField apply_multiplier(const SpectralVectorField& f,
                                     std::span<const double> weights);

SpectralField dyadic_block(const LPProfile& profile, const SpectralField& f, int k,
                           BlockWidth width = BlockWidth::standard);
SpectralVectorField dyadic_block(const LPProfile& profile, const SpectralVectorField& f, int k,
                                 BlockWidth width = BlockWidth::standard);

SpectralField low_pass(const LPProfile& profile, const SpectralField& f, int k);
SpectralVectorField low_pass(const LPProfile& profile, const SpectralVectorField& f, int k);

/// f - low_pass(f, k).
SpectralField high_pass(const LPProfile& profile, const SpectralField& f, int k);
SpectralVectorField high_pass(const LPProfile& profile, const SpectralVectorField& f, int k);

struct DyadicDecomposition {
  int k_min = 0;
  int k_max = 0;
  std::map<int, SpectralVectorField> blocks;
  bool source_mean_zero = true;

  SpectralVectorField sum() const;
};

DyadicDecomposition decompose(const LPProfile& profile, const SpectralVectorField& f);

/// Smallest and largest |xi| carrying a nonzero coefficient; {0, 0} for the zero field.
struct SupportRange {
  double min = 0.0;
  double max = 0.0;
  bool empty = true;
};
SupportRange fourier_support(const SpectralField& f);
SupportRange fourier_support(const SpectralVectorField& f);

/// floor(3k/4), rounding toward minus infinity for negative k.
int floor_three_quarters(int k);

}  // namespace lplab
