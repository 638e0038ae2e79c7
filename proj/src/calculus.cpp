#include "lplab/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "quadrature.hpp"

namespace lplab {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": grid mismatch");
}

// Neumaier compensated sum; fixed order keeps results bit-reproducible.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

SpectralField partial(const SpectralField& f, int d) {
  const Grid& g = f.grid();
  std::vector<Complex> out(g.size());
  const auto in = f.coeffs();
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out[idx] = kI * g.derivative_wavevector(idx)[d] * in[idx];
  }
  return SpectralField(g, std::move(out));
}

SpectralVectorField gradient(const SpectralField& f) {
  return SpectralVectorField(partial(f, 0), partial(f, 1), partial(f, 2));
}

SpectralField divergence(const SpectralVectorField& v) {
  const Grid& g = v.grid();
  std::vector<Complex> out(g.size());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto xi = g.derivative_wavevector(idx);
    out[idx] = kI * (xi[0] * v[0][idx] + xi[1] * v[1][idx] + xi[2] * v[2][idx]);
  }
  return SpectralField(g, std::move(out));
}

SpectralVectorField curl(const SpectralVectorField& v) {
  const Grid& g = v.grid();
  std::array<std::vector<Complex>, 3> out;
  for (auto& c : out) c.resize(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto xi = g.derivative_wavevector(idx);
    out[0][idx] = kI * (xi[1] * v[2][idx] - xi[2] * v[1][idx]);
    out[1][idx] = kI * (xi[2] * v[0][idx] - xi[0] * v[2][idx]);
    out[2][idx] = kI * (xi[0] * v[1][idx] - xi[1] * v[0][idx]);
  }
  return SpectralVectorField(SpectralField(g, std::move(out[0])),
                             SpectralField(g, std::move(out[1])),
                             SpectralField(g, std::move(out[2])));
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  std::vector<Complex> out(g.size());
  const auto in = f.coeffs();
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const double k = g.wavenumber(idx);
    out[idx] = -(k * k) * in[idx];
  }
  return SpectralField(g, std::move(out));
}

SpectralVectorField laplacian(const SpectralVectorField& v) {
  return SpectralVectorField(laplacian(v[0]), laplacian(v[1]), laplacian(v[2]));
}

AnyField apply_differential(const AnyField& field, DiffOp op) {
  if (const auto* s = std::get_if<SpectralField>(&field)) {
    switch (op) {
      case DiffOp::gradient:
        return gradient(*s);
      case DiffOp::laplacian:
        return laplacian(*s);
      default:
        throw InputError("apply_differential: divergence and curl need a vector field");
    }
  }
  const auto& v = std::get<SpectralVectorField>(field);
  switch (op) {
    case DiffOp::divergence:
      return divergence(v);
    case DiffOp::curl:
      return curl(v);
    case DiffOp::laplacian:
      return laplacian(v);
    default:
      throw InputError("apply_differential: gradient needs a scalar field");
  }
}

SpectralVectorField leray_project(const SpectralVectorField& v) {
  const Grid& g = v.grid();
  std::array<std::vector<Complex>, 3> out;
  for (int d = 0; d < 3; ++d) out[d].assign(v[d].coeffs().begin(), v[d].coeffs().end());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto xi = g.derivative_wavevector(idx);
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (k2 == 0.0) continue;
    const Complex dot = xi[0] * out[0][idx] + xi[1] * out[1][idx] + xi[2] * out[2][idx];
    const Complex s = dot / k2;
    for (int d = 0; d < 3; ++d) out[d][idx] -= xi[d] * s;
  }
  return SpectralVectorField(SpectralField(g, std::move(out[0])),
                             SpectralField(g, std::move(out[1])),
                             SpectralField(g, std::move(out[2])));
}

double divergence_defect(const SpectralVectorField& v) {
  const Grid& g = v.grid();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto xi = g.derivative_wavevector(idx);
    const Complex dot = xi[0] * v[0][idx] + xi[1] * v[1][idx] + xi[2] * v[2][idx];
    const double kmag = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    const double vmag =
        std::sqrt(std::norm(v[0][idx]) + std::norm(v[1][idx]) + std::norm(v[2][idx]));
    num = std::max(num, std::abs(dot));
    den = std::max(den, kmag * vmag);
  }
  return den > 0.0 ? num / den : 0.0;
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  CompensatedSum sum;
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum.add(a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
  }
  return f.grid().volume() * sum.value();
}

double inner_product(const SpectralVectorField& f, const SpectralVectorField& g) {
  return inner_product(f[0], g[0]) + inner_product(f[1], g[1]) + inner_product(f[2], g[2]);
}

double gradient_pairing(const SpectralVectorField& f, const SpectralVectorField& g) {
  require_same_grid(f.grid(), g.grid(), "gradient_pairing");
  const Grid& grid = f.grid();
  CompensatedSum sum;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto xi = grid.derivative_wavevector(idx);
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (k2 == 0.0) continue;
    double acc = 0.0;
    for (int d = 0; d < 3; ++d) {
      acc += f[d][idx].real() * g[d][idx].real() + f[d][idx].imag() * g[d][idx].imag();
    }
    sum.add(k2 * acc);
  }
  return grid.volume() * sum.value();
}

double l2_norm_squared(const SpectralField& f) { return inner_product(f, f); }
double l2_norm_squared(const SpectralVectorField& f) { return inner_product(f, f); }

int quadrature_size(const Grid& grid, int bandwidth_sum, int max_bandwidth) {
  const int cap = 2 * grid.n();
  const int target = std::max({bandwidth_sum + 1, 2 * max_bandwidth + 2, 4});
  if (target > cap) {
    throw InputError("quadrature: combined bandwidth " + std::to_string(bandwidth_sum) +
                     " exceeds the padded lattice (size " + std::to_string(cap) + ")");
  }
  const int friendly = detail::fft_friendly_size(target);
  int m = friendly <= cap ? friendly : cap;
  // Lattices between n and n+1 do not exist; any m < n must still host the bandwidth.
  if (m > grid.n() && m < grid.n() + 2) m = grid.n() + 2;
  return m;
}

double trilinear(const SpectralVectorField& a, const SpectralVectorField& b,
                 const SpectralVectorField& c) {
  require_same_grid(a.grid(), b.grid(), "trilinear");
  require_same_grid(a.grid(), c.grid(), "trilinear");
  if (a.is_zero() || b.is_zero() || c.is_zero()) return 0.0;
  const int bwa = a.bandwidth();
  const int bwb = b.bandwidth();
  const int bwc = c.bandwidth();
  const int m = quadrature_size(a.grid(), bwa + bwb + bwc, std::max({bwa, bwb, bwc}));
  const double cell = a.grid().volume() / (static_cast<double>(m) * m * m);
  return detail::trilinear_sum(detail::sample_vector(a, m), detail::sample_gradient(b, m),
                               detail::sample_vector(c, m), cell);
}

SpectralVectorField advect(const SpectralVectorField& a, const SpectralVectorField& b) {
  require_same_grid(a.grid(), b.grid(), "advect");
  const Grid& grid = a.grid();
  if (a.is_zero() || b.is_zero()) return SpectralVectorField(grid);
  const int bwa = a.bandwidth();
  const int bwb = b.bandwidth();
  const int target_bw = grid.n() / 2;
  const int m = quadrature_size(grid, bwa + bwb + target_bw, std::max(bwa, bwb));
  const auto pa = detail::sample_vector(a, m);
  const auto gb = detail::sample_gradient(b, m);
  const std::size_t count = static_cast<std::size_t>(m) * m * m;
  std::array<SpectralField, 3> out{SpectralField(grid), SpectralField(grid), SpectralField(grid)};
  const double norm = 1.0 / static_cast<double>(count);
  for (int i = 0; i < 3; ++i) {
    std::vector<Complex> data(count);
    for (std::size_t x = 0; x < count; ++x) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) acc += pa.comp[j][x] * gb.comp[3 * i + j][x];
      data[x] = Complex(acc * norm, 0.0);
    }
    detail::fft3d(data, m, detail::FftDirection::forward);
    out[i] = restrict_coefficients(grid, data, m);
  }
  return SpectralVectorField(std::move(out[0]), std::move(out[1]), std::move(out[2]));
}

double ProductSpectrum::wavenumber(std::size_t idx) const {
  const auto mm = static_cast<std::size_t>(m);
  auto mode = [this](std::size_t j) {
    const int jj = static_cast<int>(j);
    return jj < m / 2 ? jj : jj - m;
  };
  const double a = mode(idx / (mm * mm));
  const double b = mode((idx / mm) % mm);
  const double c = mode(idx % mm);
  return freq_spacing * std::sqrt(a * a + b * b + c * c);
}

namespace {

struct SparseMode {
  std::array<int, 3> m;
  Complex c;
};

// Nonzero modes; a Nyquist component is split evenly between -n/2 and +n/2.
std::vector<SparseMode> sparse_modes(const SpectralField& f) {
  const Grid& grid = f.grid();
  const int half = grid.n() / 2;
  std::vector<SparseMode> out;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (f[idx] == Complex{}) continue;
    const auto m = grid.modes_at(idx);
    std::vector<SparseMode> variants = {{m, f[idx]}};
    for (int d = 0; d < 3; ++d) {
      if (!grid.is_nyquist(m[d])) continue;
      const std::size_t count = variants.size();
      for (std::size_t v = 0; v < count; ++v) {
        variants[v].c *= 0.5;
        SparseMode twin = variants[v];
        twin.m[d] = half;
        variants.push_back(twin);
      }
    }
    out.insert(out.end(), variants.begin(), variants.end());
  }
  return out;
}

}  // namespace

ProductSpectrum product_spectrum(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid(), "product_spectrum");
  const Grid& grid = f.grid();
  ProductSpectrum out;
  out.freq_spacing = grid.freq_spacing();
  const auto fm = sparse_modes(f);
  const auto gm = sparse_modes(g);
  auto reach = [](const std::vector<SparseMode>& v) {
    int r = 0;
    for (const auto& s : v) r = std::max({r, std::abs(s.m[0]), std::abs(s.m[1]), std::abs(s.m[2])});
    return r;
  };
  const int bw = reach(fm) + reach(gm);
  out.m = std::max(2 * bw + 2, 4);
  const int m = out.m;
  out.coeffs.assign(static_cast<std::size_t>(m) * m * m, Complex{});
  auto wrap = [m](int mode) { return static_cast<std::size_t>(mode >= 0 ? mode : mode + m); };
  // Direct convolution: modes that no pair reaches stay exactly zero.
  for (const auto& a : fm) {
    for (const auto& b : gm) {
      const std::size_t idx =
          (wrap(a.m[0] + b.m[0]) * m + wrap(a.m[1] + b.m[1])) * m + wrap(a.m[2] + b.m[2]);
      out.coeffs[idx] += a.c * b.c;
    }
  }
  return out;
}

namespace detail {

std::array<std::vector<double>, 2> sample_pair(const SpectralField& f, const SpectralField& g,
                                               int m) {
  auto data = embed_coefficients(f, m);
  const auto second = embed_coefficients(g, m);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += kI * second[i];
  fft3d(data, m, FftDirection::backward);
  std::array<std::vector<double>, 2> out;
  out[0].resize(data.size());
  out[1].resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[0][i] = data[i].real();
    out[1][i] = data[i].imag();
  }
  return out;
}

PhysicalVector sample_vector(const SpectralVectorField& v, int m) {
  PhysicalVector out;
  out.zero = v.is_zero();
  if (out.zero) return out;
  auto xy = sample_pair(v[0], v[1], m);
  out.comp[0] = std::move(xy[0]);
  out.comp[1] = std::move(xy[1]);
  out.comp[2] = sample_on(v[2], m);
  return out;
}

PhysicalGradient sample_gradient(const SpectralVectorField& b, int m) {
  PhysicalGradient out;
  out.zero = b.is_zero();
  if (out.zero) return out;
  std::array<SpectralField, 9> parts{
      partial(b[0], 0), partial(b[0], 1), partial(b[0], 2), partial(b[1], 0), partial(b[1], 1),
      partial(b[1], 2), partial(b[2], 0), partial(b[2], 1), partial(b[2], 2)};
  for (int p = 0; p + 1 < 9; p += 2) {
    auto pair = sample_pair(parts[p], parts[p + 1], m);
    out.comp[p] = std::move(pair[0]);
    out.comp[p + 1] = std::move(pair[1]);
  }
  out.comp[8] = sample_on(parts[8], m);
  return out;
}

double trilinear_sum(const PhysicalVector& a, const PhysicalGradient& grad_b,
                     const PhysicalVector& c, double cell_volume) {
  if (a.zero || grad_b.zero || c.zero) return 0.0;
  const std::size_t count = a.comp[0].size();
  CompensatedSum sum;
  for (std::size_t x = 0; x < count; ++x) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double w = a.comp[0][x] * grad_b.comp[3 * i][x] +
                       a.comp[1][x] * grad_b.comp[3 * i + 1][x] +
                       a.comp[2][x] * grad_b.comp[3 * i + 2][x];
      acc += w * c.comp[i][x];
    }
    sum.add(acc);
  }
  return cell_volume * sum.value();
}

}  // namespace detail

}  // namespace lplab
