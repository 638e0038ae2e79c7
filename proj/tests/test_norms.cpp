#include <cmath>

#include "doctest.h"
#include "lplab/field_gen.hpp"
#include "lplab/norms.hpp"
#include "oracles.hpp"

using namespace lplab;
using oracle::kPi;

namespace {

SpectralVectorField along_x(SpectralField f) {
  const Grid g = f.grid();
  return SpectralVectorField(std::move(f), SpectralField(g), SpectralField(g));
}

SpectralVectorField power_law(const Grid& g, std::uint64_t seed, int band_lo, int band_hi) {
  SpectrumSpec spec;
  spec.band_min = band_lo;
  spec.band_max = band_hi;
  spec.seed = seed;
  return random_divfree(g, spec);
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("lebesgue norms of cos x1") {
  const Grid g = make_grid(16, 2 * kPi);
  const auto f = oracle::wave(g, {1, 0, 0}, 1.0);
  CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(std::pow(2 * kPi, 1.5) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(lebesgue_norm(f, kInfinity) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lebesgue_norm(along_x(f), 2.0) == doctest::Approx(lebesgue_norm(f, 2.0)).epsilon(1e-14));
  CHECK(lebesgue_norm(SpectralField(g), 3.0) == 0.0);
}

TEST_CASE("L3 against a refined lattice") {
  const Grid g = make_grid(32, 4 * kPi);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    // band-limited to |xi| < 4 so the n = 32 lattice resolves |f|^3 well
    const auto f = power_law(g, seed, -1, 1);
    const double coarse = lebesgue_norm(f, 3.0, 2);
    const double fine = lebesgue_norm_on(f, 3.0, 4 * 32);
    CHECK(std::abs(coarse - fine) <= 1e-6 * fine);
    CHECK(lebesgue_norm(f, 3.0, 4) == doctest::Approx(fine).epsilon(1e-12));
  }
}

TEST_CASE("L2 agrees with Parseval") {
  const Grid g = make_grid(16, 3.0);
  const auto f = oracle::random_vector(g, 11);
  CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(std::sqrt(l2_norm_squared(f))).epsilon(1e-13));
}

TEST_CASE("sobolev norms") {
  const Grid g = make_grid(16, 2 * kPi);
  const LPProfile p(g);
  const auto c = oracle::wave(g, {1, 0, 0}, 1.0);
  CHECK(sobolev_norm(p, c, 1.0, SobolevMethod::integral) ==
        doctest::Approx(lebesgue_norm(c, 2.0)).epsilon(1e-14));

  const Grid g2 = make_grid(32, 4 * kPi);
  const LPProfile p2(g2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = power_law(g2, seed, p2.k_min(), p2.k_max());
    const double l2 = std::sqrt(l2_norm_squared(f));
    CHECK(sobolev_norm(p2, f, 0.0, SobolevMethod::integral) == doctest::Approx(l2).epsilon(1e-13));
    const double r0 = sobolev_norm(p2, f, 0.0, SobolevMethod::lp_sum) / l2;
    CHECK(r0 >= 1.0 / std::sqrt(3.0));
    CHECK(r0 <= std::sqrt(3.0));
    const double r1 = sobolev_norm(p2, f, 1.0, SobolevMethod::integral) /
                      sobolev_norm(p2, f, 1.0, SobolevMethod::lp_sum);
    CHECK(r1 >= 0.5);
    CHECK(r1 <= 2.0);
  }
}

TEST_CASE("sobolev rejects a mean for s <= 0") {
  const Grid g = make_grid(8, 2 * kPi);
  const LPProfile p(g);
  const auto f = oracle::random_scalar(g, 3, false);
  CHECK_THROWS_AS(sobolev_norm(p, f, 0.0, SobolevMethod::integral), InputError);
  CHECK_THROWS_AS(sobolev_norm(p, f, -1.0, SobolevMethod::lp_sum), InputError);
  set_warnings_enabled(false);  // s > 0 only warns about the mean
  CHECK_NOTHROW(sobolev_norm(p, f, 1.0, SobolevMethod::integral));
  set_warnings_enabled(true);
}

TEST_CASE("besov norms") {
  const Grid g = make_grid(16, 2 * kPi);
  const LPProfile p(g);
  const auto c = oracle::wave(g, {1, 0, 0}, 1.0);
  CHECK(besov_norm(p, c, -1.0, kInfinity, kInfinity) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(besov_norm(p, SpectralField(g), -1.0, kInfinity, kInfinity) == 0.0);
  CHECK(besov_norm(p, SpectralField(g), 0.5, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(besov_norm(p, c, 0.0, 0.5, 2.0), InputError);
  CHECK_THROWS_AS(besov_norm(p, c, 0.0, 2.0, 0.0), InputError);
}

TEST_CASE("low pass sup against the negative besov norm") {
  const Grid g = make_grid(32, 8 * kPi);
  const LPProfile p(g);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = power_law(g, seed, p.k_min(), p.k_max());
    for (int k = p.k_min() + 1; k <= p.k_max() + 1; ++k) {
      double sup = 0.0;
      for (int l = p.k_min(); l <= k - 1; ++l) {
        sup = std::max(sup, std::exp2(-l) * lebesgue_norm(dyadic_block(p, f, l), kInfinity));
      }
      const double lhs = std::exp2(-k) * lebesgue_norm(low_pass(p, f, k), kInfinity);
      CHECK(lhs <= 2.0 * sup * (1 + 1e-12));
    }
  }
}

TEST_CASE("dirichlet energy") {
  const Grid g = make_grid(16, 2 * kPi);
  const auto u = along_x(oracle::wave(g, {0, 1, 0}, 1.0));
  const SpectralVectorField zero(g);
  const double e = dirichlet_energy(u, zero);
  CHECK(e == doctest::Approx(std::pow(2 * kPi, 3) / 2).epsilon(1e-14));
  CHECK(dirichlet_energy(u, u) == doctest::Approx(2 * e).epsilon(1e-14));
  CHECK(dirichlet_energy(zero, u) == doctest::Approx(e).epsilon(1e-14));
  CHECK(gradient_norm(u) == doctest::Approx(std::sqrt(e)).epsilon(1e-14));
  CHECK_THROWS_AS(dirichlet_energy(u, SpectralVectorField(make_grid(8, 2 * kPi))), InputError);
}

TEST_CASE("dirichlet energy against direct quadrature") {
  const Grid g = make_grid(8, 5.0);
  const auto u = oracle::random_vector(g, 21);
  const auto b = oracle::random_vector(g, 22);
  double expected = 0.0;
  for (const auto* f : {&u, &b}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const auto d = oracle::derivative((*f)[i], j);
        expected += oracle::inner(d, d, 16);
      }
    }
  }
  CHECK(dirichlet_energy(u, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bernstein single mode") {
  const Grid g = make_grid(16, 2 * kPi);
  const LPProfile p(g);
  const auto rep = bernstein_check(p, along_x(oracle::wave(g, {0, 1, 0}, 1.0)));
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].k == 0);
  CHECK(rep.records[0].ratio_low == 1.0);
  CHECK(rep.records[0].lp_lq_ratios.size() == bernstein_pairs().size());
  CHECK_THROWS_AS(bernstein_check(p, SpectralVectorField(g)), InputError);
}

TEST_CASE("bernstein ratios on random fields") {
  const Grid g = make_grid(32, 4 * kPi);
  const LPProfile p(g);
  CHECK(bernstein_pairs().size() == 4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto rep = bernstein_check(p, power_law(g, seed, p.k_min(), p.k_max()));
    CHECK(!rep.records.empty());
    int prev = p.k_min() - 1;
    for (const auto& r : rep.records) {
      CHECK(r.k > prev);
      prev = r.k;
      CHECK(r.ratio_low >= 0.5);
      CHECK(r.ratio_low <= 2.0);
      for (double v : r.lp_lq_ratios) {
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
      }
    }
  }
}

}  // TEST_SUITE
