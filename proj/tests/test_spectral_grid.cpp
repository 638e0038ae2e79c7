#include <cmath>
#include <set>

#include "doctest.h"
#include "lplab/calculus.hpp"
#include "lplab/norms.hpp"
#include "lplab/field_gen.hpp"
#include "lplab/littlewood_paley.hpp"
#include "oracles.hpp"

using namespace lplab;
using oracle::kPi;

TEST_SUITE("spectral_grid") {

TEST_CASE("grid spacing and nyquist") {
  const Grid g = make_grid(64, 2 * kPi);
  CHECK(g.freq_spacing() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.nyquist() == doctest::Approx(32.0).epsilon(1e-15));
  CHECK(g.freq_spacing() * (g.n() / 2) == g.nyquist());
}

TEST_CASE("lattice of an 8-point grid spans -4..3") {
  const Grid g = make_grid(8, 2 * kPi);
  std::set<int> seen;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    for (int m : g.modes_at(idx)) seen.insert(m);
  }
  CHECK(seen == std::set<int>{-4, -3, -2, -1, 0, 1, 2, 3});
}

TEST_CASE("box 4pi reaches shell -1") {
  const Grid g = make_grid(16, 4 * kPi);
  CHECK(g.freq_spacing() == 0.5);
  int inside = 0;
  bool half = false;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const double xi = g.wavenumber(idx);
    if (xi >= 0.25 && xi <= 1.0) {
      ++inside;
      half = half || xi == 0.5;
    }
  }
  CHECK(inside > 0);
  CHECK(half);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(7, 1.0), InputError);
  CHECK_THROWS_AS(make_grid(2, 1.0), InputError);
  CHECK_THROWS_AS(make_grid(8, 0.0), InputError);
  CHECK_THROWS_AS(make_grid(8, -1.0), InputError);
}

TEST_CASE("transform of cos x1 and of a constant") {
  const Grid g = make_grid(8, 2 * kPi);
  const auto f = oracle::from_function(g, [](double x, double, double) { return std::cos(x); });
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto m = g.modes_at(idx);
    const bool pm = (m[0] == 1 || m[0] == -1) && m[1] == 0 && m[2] == 0;
    if (pm) {
      CHECK(std::abs(f[idx] - Complex(0.5)) < 1e-15);
    } else {
      CHECK(std::abs(f[idx]) < 1e-15);
    }
  }
  const auto c = oracle::from_function(g, [](double, double, double) { return 3.0; });
  CHECK(std::abs(c[0] - Complex(3.0)) < 1e-15);
  for (std::size_t idx = 1; idx < g.size(); ++idx) CHECK(std::abs(c[idx]) < 1e-15);
}

TEST_CASE("round trip and Hermitian symmetry of random samples") {
  const Grid g = make_grid(16, 3.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<double> s(g.size());
  for (auto& v : s) v = normal(rng);
  const auto f = forward_transform(g, s);
  CHECK(f.hermitian_defect() == 0.0);
  const auto back = inverse_transform(f);
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    err = std::max(err, std::abs(back[i] - s[i]));
    ref = std::max(ref, std::abs(s[i]));
  }
  CHECK(err / ref <= 1e-13);
}

TEST_CASE("Parseval on 100 random sample sets") {
  const Grid g = make_grid(8, 2.5);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> s(g.size());
    double physical = 0.0;
    for (auto& v : s) {
      v = normal(rng);
      physical += v * v;
    }
    // (1/L^3) sum |f(x_i)|^2 (L/n)^3 against sum |fhat|^2.
    physical /= static_cast<double>(g.size());
    const auto f = forward_transform(g, s);
    double spectral = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) spectral += std::norm(f[i]);
    worst = std::max(worst, std::abs(physical - spectral) / physical);
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("differential operators on cos x1") {
  const Grid g = make_grid(8, 2 * kPi);
  const auto f = oracle::from_function(g, [](double x, double, double) { return std::cos(x); });
  const auto grad = gradient(f);
  const auto minus_sin = oracle::from_function(g, [](double x, double, double) { return -std::sin(x); });
  CHECK(oracle::max_abs_diff(grad[0], minus_sin) < 1e-15);
  CHECK(grad[1].is_zero());
  CHECK(grad[2].is_zero());
  CHECK(oracle::max_abs_diff(laplacian(f), -1.0 * f) < 1e-15);
  const auto any = apply_differential(AnyField(f), DiffOp::laplacian);
  CHECK(oracle::max_abs_diff(std::get<SpectralField>(any), -1.0 * f) < 1e-15);
  CHECK_THROWS_AS(apply_differential(AnyField(f), DiffOp::divergence), InputError);
  CHECK_THROWS_AS(apply_differential(AnyField(grad), DiffOp::gradient), InputError);
}

TEST_CASE("ABC flow is divergence-free") {
  const Grid g = make_grid(16, 2 * kPi);
  const auto u = named_flow(g, FlowKind::abc);
  CHECK(max_abs_coeff(divergence(u)) == 0.0);
}

TEST_CASE("Leray projection") {
  const Grid g = make_grid(16, 4 * kPi);
  SpectrumSpec spec;
  spec.band_min = -1;
  spec.band_max = 2;
  spec.seed = 3;
  const auto u = random_divfree(g, spec);
  const auto pu = leray_project(u);
  CHECK(oracle::max_abs_diff(pu, u) <= 1e-13 * max_abs_coeff(u));

  const auto s = oracle::from_function(g, [](double, double y, double) { return std::sin(y); });
  CHECK(max_abs_coeff(leray_project(gradient(s))) < 1e-15);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto v = oracle::random_vector(g, seed);
    const auto p1 = leray_project(v);
    CHECK(divergence_defect(p1) <= 1e-12);
    CHECK(oracle::max_abs_diff(leray_project(p1), p1) <= 1e-13 * max_abs_coeff(p1));
  }
  // the mean passes through
  auto v = oracle::random_vector(g, 99);
  v[0].coeffs()[0] = 2.0;
  CHECK(leray_project(v)[0][0] == Complex(2.0));
}

TEST_CASE("inner products") {
  const Grid g = make_grid(8, 2 * kPi);
  const auto c = oracle::from_function(g, [](double x, double, double) { return std::cos(x); });
  const auto s = oracle::from_function(g, [](double x, double, double) { return std::sin(x); });
  CHECK(inner_product(c, c) == doctest::Approx(std::pow(2 * kPi, 3) / 2).epsilon(1e-14));
  CHECK(std::abs(inner_product(c, s)) < 1e-12);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = oracle::random_scalar(g, seed);
    const auto h = oracle::random_scalar(g, seed + 50);
    const double ref = oracle::inner(f, h, 16);
    CHECK(std::abs(inner_product(f, h) - ref) <= 1e-12 * std::abs(ref) + 1e-12 * std::sqrt(l2_norm_squared(f) * l2_norm_squared(h)));
  }
  CHECK_THROWS_AS(inner_product(c, SpectralField(make_grid(8, 1.0))), InputError);
}

TEST_CASE("trilinear integrals") {
  const Grid g = make_grid(8, 2 * kPi);
  SpectrumSpec spec;
  spec.kind = SpectrumKind::band;
  spec.band_min = 0;
  spec.band_max = 1;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    spec.seed = seed;
    const auto a = random_divfree(g, spec);
    spec.seed = seed + 10;
    const auto b = random_divfree(g, spec);
    spec.seed = seed + 20;
    const auto c = random_divfree(g, spec);
    const double ref = oracle::trilinear(a, b, c, 16);
    CHECK(std::abs(trilinear(a, b, c) - ref) <= 1e-12 * std::abs(ref));
    const double scale = std::sqrt(l2_norm_squared(a) * l2_norm_squared(b)) * gradient_norm(b);
    CHECK(std::abs(trilinear(a, b, b)) <= 1e-12 * scale);
  }
  // constant advecting field
  std::vector<Complex> one(g.size());
  one[0] = 1.0;
  const SpectralVectorField e1(SpectralField(g, one), SpectralField(g), SpectralField(g));
  const auto b = oracle::random_vector(g, 4);
  CHECK(std::abs(trilinear(e1, b, b)) <= 1e-12 * l2_norm_squared(b) * gradient_norm(b));
  CHECK_THROWS_AS(trilinear(e1, b, SpectralVectorField(make_grid(8, 1.0))), InputError);
}

TEST_CASE("antisymmetry over random divergence-free fields") {
  const Grid g = make_grid(16, 4 * kPi);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = leray_project(oracle::random_vector(g, seed));
    const auto b = oracle::random_vector(g, seed + 500);
    const double scale = std::pow(1.0 + gradient_norm(a) + gradient_norm(b), 3);
    CHECK(std::abs(trilinear(a, b, b)) <= 1e-12 * scale);
  }
}

}  // TEST_SUITE
