#include "lplab/field_gen.hpp"

#include <cmath>
#include <numbers>

#include "lplab/calculus.hpp"

namespace lplab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream * 0xD1B54A32D192ED03ULL));
  return splitmix64(h ^ (counter * 0xA24BAED4963EE407ULL));
}

// Uniform on (0, 1]: 53 random bits, offset so log() never sees zero.
double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

bool in_support(const SpectrumSpec& spec, double xi) {
  auto in_shell = [xi](int j) { return xi > std::exp2(j - 1) && xi < std::exp2(j + 1); };
  if (spec.kind == SpectrumKind::shell_list) {
    for (int j : spec.shells) {
      if (in_shell(j)) return true;
    }
    return false;
  }
  return xi > std::exp2(spec.band_min - 1) && xi < std::exp2(spec.band_max + 1);
}

SpectralVectorField generate(const Grid& grid, const SpectrumSpec& spec, std::uint64_t stream0) {
  if (spec.kind == SpectrumKind::shell_list ? spec.shells.empty()
                                            : spec.band_min > spec.band_max) {
    throw InputError("random_divfree: empty band");
  }
  std::array<std::vector<Complex>, 3> coeffs;
  for (auto& c : coeffs) c.assign(grid.size(), Complex{});
  for (std::size_t idx = 1; idx < grid.size(); ++idx) {
    const auto m = grid.modes_at(idx);
    if (grid.is_nyquist(m[0]) || grid.is_nyquist(m[1]) || grid.is_nyquist(m[2])) continue;
    const double xi = grid.wavenumber(idx);
    if (!in_support(spec, xi)) continue;
    const double amp =
        (spec.kind == SpectrumKind::power_law ? std::pow(xi, -spec.alpha) : 1.0) *
        std::numbers::sqrt2 * 0.5;
    for (int d = 0; d < 3; ++d) {
      const std::uint64_t stream = stream0 + static_cast<std::uint64_t>(d);
      const double re = counter_normal(spec.seed, stream, 2 * idx);
      const double im = counter_normal(spec.seed, stream, 2 * idx + 1);
      coeffs[d][idx] = amp * Complex(re, im);
    }
  }
  SpectralVectorField raw(SpectralField(grid, std::move(coeffs[0])),
                          SpectralField(grid, std::move(coeffs[1])),
                          SpectralField(grid, std::move(coeffs[2])));
  auto out = leray_project(raw);
  if (out.is_zero()) throw InputError("random_divfree: the requested band holds no lattice modes");
  return out;
}

void add_mode(std::vector<Complex>& coeffs, const Grid& grid, int m0, int m1, int m2,
              Complex value) {
  coeffs[grid.flat(grid.index_of(m0), grid.index_of(m1), grid.index_of(m2))] += value;
  coeffs[grid.flat(grid.index_of(-m0), grid.index_of(-m1), grid.index_of(-m2))] +=
      std::conj(value);
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const double u1 = to_unit_open(counter_hash(seed, stream, 2 * counter));
  const double u2 = to_unit_open(counter_hash(seed, stream, 2 * counter + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SpectralVectorField random_divfree(const Grid& grid, const SpectrumSpec& spec) {
  return generate(grid, spec, 0);
}

std::pair<SpectralVectorField, SpectralVectorField> random_pair(const Grid& grid,
                                                                const SpectrumSpec& spec) {
  return {generate(grid, spec, 0), generate(grid, spec, 16)};
}

SpectralVectorField named_flow(const Grid& grid, FlowKind kind, const FlowParams& params) {
  const double ratio = grid.box_length() / (2.0 * std::numbers::pi);
  const double q_real = std::round(ratio);
  if (q_real < 1.0 || std::abs(ratio - q_real) > 1e-12 * ratio) {
    throw InputError("named_flow: box length must be 2*pi times a positive integer");
  }
  const int q = static_cast<int>(q_real);
  if (q >= grid.n() / 2) throw InputError("named_flow: grid too coarse for the flow wavenumber");

  std::array<std::vector<Complex>, 3> c;
  for (auto& v : c) v.assign(grid.size(), Complex{});
  // sin(q' s) -> -i/2 at +q, cos(q' s) -> 1/2 at +q (conjugates added by add_mode).
  const Complex sin_coeff{0.0, -0.5};
  const Complex cos_coeff{0.5, 0.0};
  if (kind == FlowKind::abc) {
    const double A = params.a, B = params.b, C = params.c;
    add_mode(c[0], grid, 0, 0, q, A * sin_coeff);
    add_mode(c[0], grid, 0, q, 0, C * cos_coeff);
    add_mode(c[1], grid, q, 0, 0, B * sin_coeff);
    add_mode(c[1], grid, 0, 0, q, A * cos_coeff);
    add_mode(c[2], grid, 0, q, 0, C * sin_coeff);
    add_mode(c[2], grid, q, 0, 0, B * cos_coeff);
  } else {
    const double amp = params.a;
    // Products of three trigonometric factors: 8 sign combinations, half added
    // explicitly (sx = +1) since add_mode supplies the mirrored mode.
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        // sin x cos y cos z: coefficient at (q, sy q, sz q) is 1/(8i).
        add_mode(c[0], grid, q, sy * q, sz * q, amp * Complex(0.0, -0.125));
        // -cos x sin y cos z: coefficient at (q, sy q, sz q) is -sy/(8i).
        add_mode(c[1], grid, q, sy * q, sz * q, amp * Complex(0.0, 0.125 * sy));
      }
    }
  }
  return SpectralVectorField(SpectralField(grid, std::move(c[0])),
                             SpectralField(grid, std::move(c[1])),
                             SpectralField(grid, std::move(c[2])));
}

}  // namespace lplab
