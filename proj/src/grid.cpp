#include "lplab/grid.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>

namespace lplab {

namespace {
std::atomic<bool> g_warnings_enabled{true};
}

void warn(const std::string& message) {
  if (g_warnings_enabled.load()) std::clog << "lplab warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { g_warnings_enabled.store(enabled); }

Grid::Grid(int n_per_dim, double box_length)
    : n_(n_per_dim), box_length_(box_length), freq_spacing_(0.0) {
  if (n_per_dim < 4 || n_per_dim % 2 != 0) {
    throw InputError("grid: n_per_dim must be an even integer >= 4, got " +
                     std::to_string(n_per_dim));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw InputError("grid: box_length must be positive and finite");
  }
  freq_spacing_ = 2.0 * std::numbers::pi / box_length;
}

std::array<int, 3> Grid::modes_at(std::size_t idx) const {
  const auto n = static_cast<std::size_t>(n_);
  const int j2 = static_cast<int>(idx % n);
  const int j1 = static_cast<int>((idx / n) % n);
  const int j0 = static_cast<int>(idx / (n * n));
  return {mode_of(j0), mode_of(j1), mode_of(j2)};
}

std::size_t Grid::mirror(std::size_t idx) const {
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t j2 = idx % n;
  const std::size_t j1 = (idx / n) % n;
  const std::size_t j0 = idx / (n * n);
  auto neg = [n](std::size_t j) { return j == 0 ? 0 : n - j; };
  return (neg(j0) * n + neg(j1)) * n + neg(j2);
}

std::array<double, 3> Grid::wavevector(std::size_t idx) const {
  const auto m = modes_at(idx);
  return {freq_spacing_ * m[0], freq_spacing_ * m[1], freq_spacing_ * m[2]};
}

std::array<double, 3> Grid::derivative_wavevector(std::size_t idx) const {
  const auto m = modes_at(idx);
  std::array<double, 3> xi{};
  for (int d = 0; d < 3; ++d) xi[d] = is_nyquist(m[d]) ? 0.0 : freq_spacing_ * m[d];
  return xi;
}

double Grid::wavenumber(std::size_t idx) const {
  const auto m = modes_at(idx);
  const double m2 = static_cast<double>(m[0]) * m[0] + static_cast<double>(m[1]) * m[1] +
                    static_cast<double>(m[2]) * m[2];
  return freq_spacing_ * std::sqrt(m2);
}

Grid make_grid(int n_per_dim, double box_length) { return Grid(n_per_dim, box_length); }

}  // namespace lplab
