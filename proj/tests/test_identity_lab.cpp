#include <cmath>

#include "doctest.h"
#include "lplab/field_gen.hpp"
#include "lplab/identity_lab.hpp"
#include "oracles.hpp"

using namespace lplab;
using oracle::kPi;

namespace {

std::pair<SpectralVectorField, SpectralVectorField> pair_on(const Grid& g, std::uint64_t seed,
                                                            int lo, int hi) {
  SpectrumSpec spec;
  spec.band_min = lo;
  spec.band_max = hi;
  spec.seed = seed;
  return random_pair(g, spec);
}

SpectralVectorField divfree_random(const Grid& g, std::uint64_t seed) {
  return leray_project(oracle::random_vector(g, seed));
}

SpectralVectorField along_x(SpectralField f) {
  const Grid g = f.grid();
  return SpectralVectorField(std::move(f), SpectralField(g), SpectralField(g));
}

double value_of(const TransportReport& r, const std::string& name, bool lhs) {
  for (const auto& id : r.identities) {
    if (id.name == name) return lhs ? id.lhs : id.rhs;
  }
  FAIL("missing identity " << name);
  return 0.0;
}

}  // namespace

TEST_SUITE("identity_lab") {

TEST_CASE("residual of an aligned pair") {
  const Grid g = make_grid(8, 2 * kPi);
  const auto u = divfree_random(g, 1);
  const auto res = mhd_residual(u, u);
  const auto expected = -1.0 * laplacian(u);
  CHECK(oracle::max_abs_diff(res.r_b, expected) <= 1e-14 * max_abs_coeff(expected));
  // Lorentz force cancels advection, so only the viscous term survives in r_u too
  CHECK(oracle::max_abs_diff(res.r_u, expected) <= 1e-14 * max_abs_coeff(expected));
}

TEST_CASE("residual of zero fields") {
  const Grid g = make_grid(8, 2 * kPi);
  const SpectralVectorField zero(g);
  const auto res = mhd_residual(zero, zero);
  CHECK(res.r_u.is_zero());
  CHECK(res.r_b.is_zero());
  CHECK(res.pressure.is_zero());
}

TEST_CASE("residual against the weak form") {
  // n = 8 fields have bandwidth 3, so a 16^3 direct sum integrates the
  // triple products exactly.
  const Grid g = make_grid(8, 3.0);
  const auto u = divfree_random(g, 2);
  const auto b = divfree_random(g, 3);
  const auto res = mhd_residual(u, b);
  CHECK(divergence_defect(res.r_u) <= 1e-13);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto phi = divfree_random(g, 100 + s);
    double visc = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        visc += oracle::inner(oracle::derivative(u[i], j), oracle::derivative(phi[i], j), 16);
      }
    }
    const double adv = oracle::trilinear(u, u, phi, 16);
    const double lor = oracle::trilinear(b, b, phi, 16);
    const double expected = visc + adv - lor;
    const double size = std::abs(visc) + std::abs(adv) + std::abs(lor);
    CHECK(std::abs(inner_product(res.r_u, phi) - expected) <= 1e-10 * size);
  }
}

TEST_CASE("inputs are validated") {
  const Grid g = make_grid(8, 2 * kPi);
  const auto u = divfree_random(g, 4);
  auto bad = u;
  bad[0] += oracle::wave(g, {1, 0, 0}, 1.0);  // d/dx1 cos x1 != 0
  CHECK_THROWS_AS(mhd_residual(bad, u), InputError);
  auto nyq = u;
  nyq[1].coeffs()[g.flat(4, 0, 0)] = 1.0;  // m = (-4, 0, 0) on the y component stays divergence-free
  CHECK_THROWS_AS(mhd_residual(nyq, u), InputError);
  CHECK_THROWS_AS(mhd_residual(u, divfree_random(make_grid(8, 3.0), 4)), InputError);
}

TEST_CASE("transport identities") {
  const Grid g = make_grid(16, 4 * kPi);
  const LPProfile p(g);
  SUBCASE("B = 0") {
    const auto [u, b] = pair_on(g, 5, p.k_min(), p.k_max());
    IdentityLab lab(p, u, SpectralVectorField(g));
    for (int k = p.k_min(); k <= p.k_max(); ++k) {
      const auto r = lab.transport(k);
      for (const char* name : {"u_b_bk", "b_b_uk+b_u_bk"}) {
        CHECK(value_of(r, name, true) == 0.0);
        CHECK(value_of(r, name, false) == 0.0);
      }
    }
  }
  SUBCASE("k below the spectrum") {
    const auto [u, b] = pair_on(g, 6, 1, 2);
    IdentityLab lab(p, u, b);
    const auto r = lab.transport(p.k_min());
    CHECK(std::abs(value_of(r, "u_u_uk", true)) <= 1e-12 * r.scale);
    CHECK(std::abs(value_of(r, "u_u_uk", false)) <= 1e-12 * r.scale);
  }
  SUBCASE("random pair") {
    for (std::uint64_t seed = 7; seed <= 9; ++seed) {
      const auto [u, b] = pair_on(g, seed, p.k_min(), p.k_max());
      IdentityLab lab(p, u, b);
      for (int k = p.k_min(); k <= p.k_max(); ++k) {
        const auto r = lab.transport(k);
        CHECK(r.identities.size() == 3);
        for (const auto& id : r.identities) CHECK(id.difference <= 1e-10 * r.scale);
      }
    }
  }
}

TEST_CASE("I terms") {
  const Grid g = make_grid(16, 4 * kPi);
  const LPProfile p(g);
  SUBCASE("spectrum above 2^k") {
    const auto [u, b] = pair_on(g, 10, 2, 3);
    IdentityLab lab(p, u, b);
    for (int k : {-1, 0}) {
      const auto r = lab.i_terms(k);
      for (const char* name : {"I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8"}) {
        CHECK(std::abs(r.I.at(name)) <= 1e-12 * r.scale);
      }
    }
  }
  SUBCASE("vanishing terms and split consistency") {
    for (std::uint64_t seed = 11; seed <= 13; ++seed) {
      const auto [u, b] = pair_on(g, seed, p.k_min(), p.k_max());
      IdentityLab lab(p, u, b);
      for (int k = p.k_min(); k <= p.k_max(); ++k) {
        const auto r = lab.i_terms(k);
        const auto& I = r.I;
        const double tol = 1e-10 * r.scale;
        CHECK(r.theta == 0.75);
        for (const char* name : {"I11", "I21", "I22"}) CHECK(std::abs(I.at(name)) <= 1e-12 * r.scale);
        CHECK(std::abs(I.at("I11") + I.at("I12") + I.at("I13") + I.at("I1")) <= tol);
        CHECK(std::abs(I.at("I21") + I.at("I22") + I.at("I23") + I.at("I2")) <= tol);
        CHECK(std::abs(I.at("I231") + I.at("I232") - I.at("I23")) <= tol);
        CHECK(std::abs(I.at("I1_localized") + I.at("I1")) <= tol);
        CHECK(I.at("I232_base") >= 0.0);
        CHECK(r.lhs_transport.size() == 3);
      }
    }
  }
  SUBCASE("k outside the range") {
    const auto [u, b] = pair_on(g, 14, p.k_min(), p.k_max());
    IdentityLab lab(p, u, b);
    CHECK_THROWS_AS(lab.i_terms(p.k_max() + 1), InputError);
    CHECK_THROWS_AS(lab.i_terms(p.k_min() - 1), InputError);
  }
}

TEST_CASE("energy identity") {
  const Grid g = make_grid(16, 4 * kPi);
  const LPProfile p(g);
  SUBCASE("zero fields") {
    const SpectralVectorField zero(g);
    const auto r = energy_identity(p, zero, zero, 0);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs_total == 0.0);
    CHECK(r.imbalance == 0.0);
    for (const auto& [name, v] : r.rhs_terms) CHECK(v == 0.0);
  }
  SUBCASE("k below the spectrum") {
    const auto [u, b] = pair_on(g, 15, 1, 2);
    const auto r = energy_identity(p, u, b, p.k_min());
    CHECK(r.lhs == doctest::Approx(dirichlet_energy(u, b)).epsilon(1e-13));
    CHECK(r.imbalance <= 1e-8);
  }
  SUBCASE("every k") {
    for (std::uint64_t seed = 16; seed <= 18; ++seed) {
      const auto [u, b] = pair_on(g, seed, p.k_min(), p.k_max());
      IdentityLab lab(p, u, b);
      for (int k = p.k_min(); k <= p.k_max(); ++k) CHECK(lab.energy(k).imbalance <= 1e-8);
    }
  }
}

TEST_CASE("bound ladders") {
  const Grid g = make_grid(16, 4 * kPi);
  const LPProfile p(g);
  SUBCASE("B = 0") {
    const auto [u, b] = pair_on(g, 19, p.k_min(), p.k_max());
    IdentityLab lab(p, u, SpectralVectorField(g));
    for (auto flavor : {BoundFlavor::linf, BoundFlavor::l3}) {
      for (int k = p.k_min(); k <= p.k_max(); ++k) {
        const auto r = lab.bounds(k, flavor);
        REQUIRE(r.records.size() == 8);
        for (int i : {1, 2, 3, 5, 6, 7}) CHECK(r.records[i].value == 0.0);
      }
    }
  }
  SUBCASE("spectrum above 2^k") {
    const auto [u, b] = pair_on(g, 20, 2, 3);
    IdentityLab lab(p, u, b);
    for (auto flavor : {BoundFlavor::linf, BoundFlavor::l3}) {
      for (const auto& rec : lab.bounds(-1, flavor).records) CHECK(rec.value == 0.0);
    }
  }
  SUBCASE("spectrum above every envelope cutoff") {
    // envelopes reach up to S_{k+3}, so at k = -1 the spectrum must clear |xi| = 4
    const auto [u, b] = pair_on(g, 20, 3, 3);
    IdentityLab lab(p, u, b);
    for (auto flavor : {BoundFlavor::linf, BoundFlavor::l3}) {
      const auto r = lab.bounds(-1, flavor);
      for (const auto& rec : r.records) {
        CHECK(rec.value == 0.0);
        CHECK(rec.envelope == 0.0);
        CHECK(!rec.ratio.has_value());
      }
    }
  }
  SUBCASE("random pair ratios are finite") {
    const auto [u, b] = pair_on(g, 21, p.k_min(), p.k_max());
    IdentityLab lab(p, u, b);
    for (auto flavor : {BoundFlavor::linf, BoundFlavor::l3}) {
      for (int k = p.k_min(); k <= p.k_max(); ++k) {
        const auto r = lab.bounds(k, flavor);
        double sum = 0.0;
        for (const auto& rec : r.records) {
          CHECK(rec.lhs == std::abs(rec.value));
          if (rec.ratio) CHECK(std::isfinite(*rec.ratio));
          sum += rec.lhs;
        }
        CHECK(r.j_sum == doctest::Approx(sum).epsilon(1e-14));
        CHECK(r.dirichlet == doctest::Approx(dirichlet_energy(u, b)).epsilon(1e-13));
      }
    }
  }
  CHECK(parse_bound_flavor("l3") == BoundFlavor::l3);
  CHECK(std::string(to_string(BoundFlavor::linf)) == "linf");
  CHECK_THROWS_AS(parse_bound_flavor("l2"), InputError);
}

TEST_CASE("condition sequences") {
  SUBCASE("single mode closed form") {
    const Grid g = make_grid(16, 2 * kPi);
    const LPProfile p(g);
    const auto u = along_x(oracle::wave(g, {0, 1, 0}, 1.0));
    const auto s = liouville_conditions(p, u, SpectralVectorField(g), p.k_min(), p.k_max());
    CHECK(s.c_geo == 2.0);
    REQUIRE(!s.records.empty());
    int prev = p.k_max() + 1;
    for (const auto& r : s.records) {
      CHECK(r.k < prev);
      prev = r.k;
      CHECK(r.cond_14 == (r.k <= 0 ? 0.0 : std::exp2(-r.k)));
      CHECK(r.cond_14 <= s.c_geo * r.cond_15);
    }
  }
  SUBCASE("zero fields") {
    const Grid g = make_grid(16, 4 * kPi);
    const LPProfile p(g);
    const SpectralVectorField zero(g);
    const auto s = liouville_conditions(p, zero, zero, p.k_min(), p.k_max());
    for (const auto& r : s.records) {
      CHECK(r.cond_14 == 0.0);
      CHECK(r.cond_15 == 0.0);
      CHECK(r.cond_16 == 0.0);
      CHECK(r.product_linf == 0.0);
      CHECK(r.product_l3 == 0.0);
    }
  }
  SUBCASE("S_k u in L3 shrinks as k decreases") {
    const Grid g = make_grid(16, 8 * kPi);
    const LPProfile p(g);
    const auto [u, b] = pair_on(g, 22, p.k_min(), p.k_max());
    const auto s = liouville_conditions(p, u, b, p.k_min(), p.k_max());
    for (std::size_t i = 1; i < s.records.size(); ++i) {
      CHECK(s.records[i].cond_16 <= s.records[i - 1].cond_16 * (1 + 1e-12));
      CHECK(s.records[i].cond_14 <= s.c_geo * s.records[i].cond_15 * (1 + 1e-12));
    }
  }
  SUBCASE("empty range") {
    const Grid g = make_grid(8, 2 * kPi);
    const LPProfile p(g);
    const SpectralVectorField zero(g);
    CHECK_THROWS_AS(liouville_conditions(p, zero, zero, 1, 0), InputError);
  }
}

TEST_CASE("filters and identity scale") {
  const Grid g = make_grid(16, 4 * kPi);
  const LPProfile p(g);
  const auto [u, b] = pair_on(g, 23, p.k_min(), p.k_max());
  IdentityLab lab(p, u, b);
  const double expected = std::pow(1 + gradient_norm(u) + gradient_norm(b), 3);
  CHECK(lab.scale() == doctest::Approx(expected).epsilon(1e-14));
  CHECK(identity_scale(u, b) == doctest::Approx(expected).epsilon(1e-14));
  IdentityLab::Filter f{'u', {{'S', 1}, {'D', 0}}};
  const auto built = lab.build(f);
  const auto direct = dyadic_block(p, low_pass(p, u, 1), 0);
  CHECK(oracle::max_abs_diff(built, direct) <= 1e-15 * max_abs_coeff(u));
  // (a . grad) b . b vanishes for divergence-free a
  IdentityLab::Filter hb{'b', {{'H', 0}}};
  CHECK(std::abs(lab.trilinear(f, hb, hb)) <= 1e-12 * lab.scale());
}

}  // TEST_SUITE
