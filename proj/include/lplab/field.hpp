#pragma once

/// @file field.hpp
/// @brief Fourier-series representation of real periodic scalar and vector fields.
///
/// A field is f(x) = sum_m fhat_m exp(i xi_m . x) with
/// fhat_m = (1/L^3) int f exp(-i xi_m . x) dx, so (1/L^3) int |f|^2 = sum |fhat_m|^2.

#include <array>
#include <span>
#include <vector>

#include "lplab/grid.hpp"

namespace lplab {

class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  /// Takes ownership of coefficients in flat FFT order; the array is symmetrized.
  SpectralField(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  Complex operator[](std::size_t idx) const { return coeffs_[idx]; }
  Complex mean() const { return coeffs_[0]; }

  /// Enforces fhat_{-m} = conj(fhat_m) by averaging each mode with its mirror.
  void symmetrize();
  bool is_zero() const;
  /// Largest |m_d| over modes with a nonzero coefficient (0 for the zero field).
  int bandwidth() const;
  /// Largest deviation from Hermitian symmetry, relative to the largest coefficient.
  double hermitian_defect() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor);

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double factor, SpectralField a);

class SpectralVectorField {
 public:
  explicit SpectralVectorField(Grid grid);
  /// All three components must share one Grid.
  SpectralVectorField(SpectralField x, SpectralField y, SpectralField z);

  const Grid& grid() const { return components_[0].grid(); }
  const SpectralField& operator[](int d) const { return components_[d]; }
  SpectralField& operator[](int d) { return components_[d]; }

  bool is_zero() const;
  int bandwidth() const;
  std::array<Complex, 3> mean() const;

  SpectralVectorField& operator+=(const SpectralVectorField& other);
  SpectralVectorField& operator-=(const SpectralVectorField& other);
  SpectralVectorField& operator*=(double factor);

 private:
  std::array<SpectralField, 3> components_;
};

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator*(double factor, SpectralVectorField a);

/// Coefficients of the largest magnitude among all modes (and components).
double max_abs_coeff(const SpectralField& f);
double max_abs_coeff(const SpectralVectorField& f);

/// True when the mean mode carries a nonzero coefficient; warns under `context`.
bool warn_if_mean(const SpectralField& f, const char* context);
bool warn_if_mean(const SpectralVectorField& f, const char* context);

// Transforms -----------------------------------------------------------------

enum class Direction { forward, inverse };

/// Physical samples f(x_j), x_j = j L / n, row-major, to coefficients.
SpectralField forward_transform(const Grid& grid, std::span<const double> samples);
/// Coefficients to physical samples on the field's own grid.
std::vector<double> inverse_transform(const SpectralField& field);

SpectralVectorField forward_transform(const Grid& grid,
                                      const std::array<std::vector<double>, 3>& samples);
std::array<std::vector<double>, 3> inverse_transform(const SpectralVectorField& field);

/// Samples the trigonometric interpolant on an m^3 grid over the same box.
/// Requires bandwidth < m/2, or m >= n (Nyquist modes are split evenly then).
std::vector<double> sample_on(const SpectralField& field, int m);

/// Places the coefficients on an m^3 lattice; the inverse FFT of the result is
/// the field sampled on that lattice. Nyquist modes are split between +-n/2
/// when m > n. Throws InputError if the bandwidth does not fit.
std::vector<Complex> embed_coefficients(const SpectralField& field, int m);

/// Reads lattice coefficients back from an m^3 array onto `grid`. Modes of
/// the target lattice outside the m-lattice, and Nyquist planes when m != n,
/// are set to zero.
SpectralField restrict_coefficients(const Grid& grid, const std::vector<Complex>& coeffs, int m);

}  // namespace lplab
