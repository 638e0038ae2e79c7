#pragma once

/// @file calculus.hpp
/// @brief Spectral differentiation, Leray projection, pairings and exact
/// (alias-free) quadratic and trilinear integrals on the periodic box.

#include <variant>
#include <vector>

#include "lplab/field.hpp"

namespace lplab {

enum class DiffOp { gradient, divergence, curl, laplacian };

using AnyField = std::variant<SpectralField, SpectralVectorField>;

/// Multiplier i*xi_d. Nyquist components of xi are treated as zero so that
/// odd-order derivatives of real fields stay real.
SpectralField partial(const SpectralField& f, int d);
SpectralVectorField gradient(const SpectralField& f);
SpectralField divergence(const SpectralVectorField& v);
SpectralVectorField curl(const SpectralVectorField& v);
/// Multiplier -|xi|^2.
SpectralField laplacian(const SpectralField& f);
SpectralVectorField laplacian(const SpectralVectorField& v);

/// Dispatches on arity; throws InputError when op and field kind do not match.
AnyField apply_differential(const AnyField& field, DiffOp op);

/// Per-mode vhat - xi (xi . vhat)/|xi|^2; the mean mode passes through.
SpectralVectorField leray_project(const SpectralVectorField& v);

/// max_m |xi_m . vhat_m| / max_m |xi_m||vhat_m| (0 for the zero field).
double divergence_defect(const SpectralVectorField& v);

/// int f g dx = L^3 sum_m fhat_m conj(ghat_m).
double inner_product(const SpectralField& f, const SpectralField& g);
double inner_product(const SpectralVectorField& f, const SpectralVectorField& g);
/// int grad f : grad g dx.
double gradient_pairing(const SpectralVectorField& f, const SpectralVectorField& g);
/// int |f|^2 dx.
double l2_norm_squared(const SpectralField& f);
double l2_norm_squared(const SpectralVectorField& f);

/// Size of the quadrature lattice used for a product whose factor bandwidths
/// sum to `bandwidth_sum`; never larger than 2n. Throws InputError when the
/// requested bandwidths do not fit (padding overflow).
int quadrature_size(const Grid& grid, int bandwidth_sum, int max_bandwidth);

/// int (a . grad) b . c dx, evaluated by quadrature on a lattice large enough
/// that the integrand is integrated exactly.
double trilinear(const SpectralVectorField& a, const SpectralVectorField& b,
                 const SpectralVectorField& c);

/// (a . grad) b restricted to the lattice of `a`, computed without aliasing.
SpectralVectorField advect(const SpectralVectorField& a, const SpectralVectorField& b);

/// Fourier coefficients of the pointwise product f g on an m^3 lattice (same
/// freq_spacing as the inputs), by direct convolution of the nonzero modes:
/// modes outside the sum of the two supports are exactly zero.
struct ProductSpectrum {
  int m = 0;
  double freq_spacing = 0.0;
  std::vector<Complex> coeffs;

  double wavenumber(std::size_t idx) const;
};
ProductSpectrum product_spectrum(const SpectralField& f, const SpectralField& g);

}  // namespace lplab
