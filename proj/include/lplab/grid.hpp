#pragma once

/// @file grid.hpp
/// @brief Periodic box [0,L)^3 with n points per dimension and its frequency lattice.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lplab {

using Complex = std::complex<double>;

/// Bad user input: malformed arguments, mismatched grids, unreadable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant that the inputs were required to satisfy does not hold.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Emits a diagnostic on std::clog unless warnings were silenced.
void warn(const std::string& message);
void set_warnings_enabled(bool enabled);

/// Modes are stored in FFT order along each axis: index j holds m = j for
/// j < n/2 and m = j - n otherwise, so the lattice is -n/2 <= m_d < n/2.
/// Flat storage is row-major, axis 0 slowest.
class Grid {
 public:
  Grid(int n_per_dim, double box_length);

  int n() const { return n_; }
  double box_length() const { return box_length_; }
  double freq_spacing() const { return freq_spacing_; }
  double nyquist() const { return freq_spacing_ * (n_ / 2); }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  double volume() const { return box_length_ * box_length_ * box_length_; }

  int mode_of(int j) const { return j < n_ / 2 ? j : j - n_; }
  int index_of(int m) const { return m >= 0 ? m : m + n_; }
  bool is_nyquist(int m) const { return m == -n_ / 2; }

  std::size_t flat(int j0, int j1, int j2) const {
    return (static_cast<std::size_t>(j0) * n_ + j1) * n_ + j2;
  }
  std::array<int, 3> modes_at(std::size_t idx) const;
  /// Flat index of the mode -m (taken modulo n, so Nyquist planes map to themselves).
  std::size_t mirror(std::size_t idx) const;

  /// Wavevector xi_m = freq_spacing * m.
  std::array<double, 3> wavevector(std::size_t idx) const;
  /// Wavevector with Nyquist components set to zero; used by odd-order multipliers.
  std::array<double, 3> derivative_wavevector(std::size_t idx) const;
  double wavenumber(std::size_t idx) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.box_length_ == b.box_length_;
  }

 private:
  int n_;
  double box_length_;
  double freq_spacing_;
};

/// Validating factory: n even and >= 4, box_length finite and positive.
Grid make_grid(int n_per_dim, double box_length);

}  // namespace lplab
