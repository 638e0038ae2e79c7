#include "lplab/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fft.hpp"

namespace lplab {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": grid mismatch");
}

}  // namespace

SpectralField::SpectralField(Grid grid) : grid_(grid), coeffs_(grid.size(), Complex{}) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw InputError("spectral field: coefficient count does not match grid");
  }
  symmetrize();
}

void SpectralField::symmetrize() {
  const int n = grid_.n();
  for (int j0 = 0; j0 < n; ++j0) {
    const int r0 = (n - j0) % n;
    for (int j1 = 0; j1 < n; ++j1) {
      const int r1 = (n - j1) % n;
      for (int j2 = 0; j2 < n; ++j2) {
        const std::size_t idx = grid_.flat(j0, j1, j2);
        const std::size_t mir = grid_.flat(r0, r1, (n - j2) % n);
        if (mir < idx) continue;
        if (mir == idx) {
          coeffs_[idx] = Complex(coeffs_[idx].real(), 0.0);
          continue;
        }
        const Complex avg = 0.5 * (coeffs_[idx] + std::conj(coeffs_[mir]));
        coeffs_[idx] = avg;
        coeffs_[mir] = std::conj(avg);
      }
    }
  }
}

bool SpectralField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c == Complex{}; });
}

int SpectralField::bandwidth() const {
  const int n = grid_.n();
  int bw = 0;
  std::size_t idx = 0;
  for (int j0 = 0; j0 < n; ++j0) {
    const int a0 = std::abs(grid_.mode_of(j0));
    for (int j1 = 0; j1 < n; ++j1) {
      const int a01 = std::max(a0, std::abs(grid_.mode_of(j1)));
      for (int j2 = 0; j2 < n; ++j2, ++idx) {
        if (coeffs_[idx] == Complex{}) continue;
        bw = std::max({bw, a01, std::abs(grid_.mode_of(j2))});
      }
    }
  }
  return bw;
}

double SpectralField::hermitian_defect() const {
  double defect = 0.0;
  double scale = 0.0;
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    defect = std::max(defect, std::abs(coeffs_[idx] - std::conj(coeffs_[grid_.mirror(idx)])));
    scale = std::max(scale, std::abs(coeffs_[idx]));
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "field addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "field subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double factor) {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double factor, SpectralField a) { return a *= factor; }

SpectralVectorField::SpectralVectorField(Grid grid)
    : components_{SpectralField(grid), SpectralField(grid), SpectralField(grid)} {}

SpectralVectorField::SpectralVectorField(SpectralField x, SpectralField y, SpectralField z)
    : components_{std::move(x), std::move(y), std::move(z)} {
  if (!(components_[0].grid() == components_[1].grid()) ||
      !(components_[0].grid() == components_[2].grid())) {
    throw InputError("vector field: components must share one grid");
  }
}

bool SpectralVectorField::is_zero() const {
  return components_[0].is_zero() && components_[1].is_zero() && components_[2].is_zero();
}

int SpectralVectorField::bandwidth() const {
  return std::max({components_[0].bandwidth(), components_[1].bandwidth(),
                   components_[2].bandwidth()});
}

std::array<Complex, 3> SpectralVectorField::mean() const {
  return {components_[0].mean(), components_[1].mean(), components_[2].mean()};
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& other) {
  for (int d = 0; d < 3; ++d) components_[d] += other.components_[d];
  return *this;
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& other) {
  for (int d = 0; d < 3; ++d) components_[d] -= other.components_[d];
  return *this;
}

SpectralVectorField& SpectralVectorField::operator*=(double factor) {
  for (auto& c : components_) c *= factor;
  return *this;
}

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) {
  return a += b;
}
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) {
  return a -= b;
}
SpectralVectorField operator*(double factor, SpectralVectorField a) { return a *= factor; }

double max_abs_coeff(const SpectralField& f) {
  double best = 0.0;
  for (const auto& c : f.coeffs()) best = std::max(best, std::abs(c));
  return best;
}

double max_abs_coeff(const SpectralVectorField& f) {
  return std::max({max_abs_coeff(f[0]), max_abs_coeff(f[1]), max_abs_coeff(f[2])});
}

bool warn_if_mean(const SpectralField& f, const char* context) {
  if (f.mean() == Complex{}) return false;
  warn(std::string(context) + ": field has a nonzero mean; the mean mode is excluded");
  return true;
}

bool warn_if_mean(const SpectralVectorField& f, const char* context) {
  const auto m = f.mean();
  if (m[0] == Complex{} && m[1] == Complex{} && m[2] == Complex{}) return false;
  warn(std::string(context) + ": field has a nonzero mean; the mean mode is excluded");
  return true;
}

SpectralField forward_transform(const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw InputError("forward transform: sample count does not match grid");
  }
  std::vector<Complex> data(samples.begin(), samples.end());
  detail::fft3d(data, grid.n(), detail::FftDirection::forward);
  const double norm = 1.0 / static_cast<double>(grid.size());
  for (auto& c : data) c *= norm;
  return SpectralField(grid, std::move(data));
}

std::vector<double> inverse_transform(const SpectralField& field) {
  return sample_on(field, field.grid().n());
}

SpectralVectorField forward_transform(const Grid& grid,
                                      const std::array<std::vector<double>, 3>& samples) {
  return SpectralVectorField(forward_transform(grid, samples[0]),
                             forward_transform(grid, samples[1]),
                             forward_transform(grid, samples[2]));
}

std::array<std::vector<double>, 3> inverse_transform(const SpectralVectorField& field) {
  return {inverse_transform(field[0]), inverse_transform(field[1]), inverse_transform(field[2])};
}

std::vector<double> sample_on(const SpectralField& field, int m) {
  auto data = embed_coefficients(field, m);
  detail::fft3d(data, m, detail::FftDirection::backward);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return out;
}

std::vector<Complex> embed_coefficients(const SpectralField& field, int m) {
  const Grid& grid = field.grid();
  const int n = grid.n();
  if (m < 2 || m % 2 != 0) throw InputError("embed: target size must be even");
  const std::size_t count = static_cast<std::size_t>(m) * m * m;
  std::vector<Complex> out(count, Complex{});
  if (m == n) {
    std::copy(field.coeffs().begin(), field.coeffs().end(), out.begin());
    return out;
  }
  auto wrap = [m](int mode) { return mode >= 0 ? mode : mode + m; };
  const auto src = field.coeffs();
  for (std::size_t idx = 0; idx < src.size(); ++idx) {
    const Complex c = src[idx];
    if (c == Complex{}) continue;
    const auto modes = grid.modes_at(idx);
    if (m < n) {
      for (int md : modes) {
        if (std::abs(md) >= m / 2) {
          throw InputError("embed: field bandwidth exceeds the target lattice (size " +
                           std::to_string(m) + ")");
        }
      }
      out[(static_cast<std::size_t>(wrap(modes[0])) * m + wrap(modes[1])) * m +
          wrap(modes[2])] += c;
      continue;
    }
    // m > n: split each Nyquist component evenly between -n/2 and +n/2.
    std::array<std::array<int, 2>, 3> options{};
    std::array<int, 3> counts{};
    double weight = 1.0;
    for (int d = 0; d < 3; ++d) {
      if (grid.is_nyquist(modes[d])) {
        options[d] = {-n / 2, n / 2};
        counts[d] = 2;
        weight *= 0.5;
      } else {
        options[d] = {modes[d], modes[d]};
        counts[d] = 1;
      }
    }
    for (int a = 0; a < counts[0]; ++a)
      for (int b = 0; b < counts[1]; ++b)
        for (int e = 0; e < counts[2]; ++e) {
          const std::size_t pos =
              (static_cast<std::size_t>(wrap(options[0][a])) * m + wrap(options[1][b])) * m +
              wrap(options[2][e]);
          out[pos] += weight * c;
        }
  }
  return out;
}

SpectralField restrict_coefficients(const Grid& grid, const std::vector<Complex>& coeffs, int m) {
  const std::size_t count = static_cast<std::size_t>(m) * m * m;
  if (coeffs.size() != count) throw InputError("restrict: buffer size does not match m^3");
  const int n = grid.n();
  std::vector<Complex> out(grid.size(), Complex{});
  if (m == n) {
    std::copy(coeffs.begin(), coeffs.end(), out.begin());
    return SpectralField(grid, std::move(out));
  }
  auto wrap = [m](int mode) { return mode >= 0 ? mode : mode + m; };
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto modes = grid.modes_at(idx);
    bool keep = true;
    for (int md : modes) {
      if (grid.is_nyquist(md) || std::abs(md) >= m / 2) keep = false;
    }
    if (!keep) continue;
    out[idx] = coeffs[(static_cast<std::size_t>(wrap(modes[0])) * m + wrap(modes[1])) * m +
                      wrap(modes[2])];
  }
  return SpectralField(grid, std::move(out));
}

}  // namespace lplab
