#include <catch2/catch_amalgamated.hpp>

#include "detrep/bidisk.hpp"
#include "detrep/stability.hpp"
#include "support.hpp"

using namespace detrep;
using namespace testsupport;

TEST_CASE("Schur-Cohn on the three one-liner cases") {
  auto stable = schur_cohn(UniPoly({1.0, -0.5}));
  CHECK(stable.cls == StabilityClass::stable);
  CHECK(stable.margin == Catch::Approx(0.75).margin(1e-12));

  auto boundary = schur_cohn(UniPoly({1.0, 1.0}));
  CHECK(boundary.cls == StabilityClass::semi_stable);
  CHECK(std::abs(boundary.margin) < 1e-12);

  auto unstable = schur_cohn(UniPoly({1.0, -2.0}));
  CHECK(unstable.cls == StabilityClass::unstable);
  CHECK(unstable.margin == Catch::Approx(-3.0).margin(1e-12));
  REQUIRE(unstable.witness.has_value());
  CHECK(std::abs((*unstable.witness)[0] - Complex(0.5, 0)) < 1e-12);

  CHECK_THROWS_AS(schur_cohn(UniPoly({0.0, 1.0})), Error);
}

TEST_CASE("Schur-Cohn agrees with the companion-root oracle") {
  Rng rng(101);
  int checked = 0;
  while (checked < 500) {
    int deg = 1 + static_cast<int>(rng.uniform(0, 8));
    std::vector<Complex> c(deg + 1);
    c[0] = Complex(1, 0);
    for (int k = 1; k <= deg; ++k) c[k] = 0.8 * rng.cnormal();
    UniPoly u(std::move(c));
    if (u.degree() == 0) continue;
    double rmin = 1e30;
    for (const auto& r : roots(u)) rmin = std::min(rmin, std::abs(r));
    if (std::abs(rmin - 1.0) < 1e-6) continue;  // stay off the measure-zero boundary
    auto v = schur_cohn(u);
    if (rmin > 1.0) CHECK(v.cls == StabilityClass::stable);
    else CHECK(v.cls == StabilityClass::unstable);
    ++checked;
  }
}

TEST_CASE("bidisk semistability classification") {
  CHECK(semistability(two_term_example()).cls == StabilityClass::stable);

  auto boundary = semistability(bipoly({{1.0, 0.0}, {0.0, -1.0}}));  // 1 - z1 z2
  CHECK(boundary.cls == StabilityClass::semi_stable);

  auto bad = semistability(bipoly({{1.0, 0.0}, {0.0, -2.0}}));  // 1 - 2 z1 z2
  CHECK(bad.cls == StabilityClass::unstable);
  REQUIRE(bad.witness.has_value());
  auto [w1, w2] = std::pair{(*bad.witness)[0], (*bad.witness)[1]};
  CHECK(std::abs(w1) <= 1.0 + 1e-9);
  CHECK(std::abs(w2) <= 1.0 + 1e-9);
  CHECK(std::abs(bipoly({{1.0, 0.0}, {0.0, -2.0}}).eval(w1, w2)) < 1e-6);

  // brute-force grid oracle: the minimum of |p| over the closed bidisk stays
  // positive for the stable example
  double min_abs = 1e30;
  BiPoly p = two_term_example();
  for (int a = 0; a < 40; ++a)
    for (int b = 0; b < 40; ++b)
      for (double r1 : {0.2, 0.6, 1.0})
        for (double r2 : {0.3, 0.8, 1.0})
          min_abs = std::min(min_abs, std::abs(p.eval(r1 * unit_root(40, a), r2 * unit_root(40, b))));
  CHECK(min_abs > 0.19);  // 1 - 0.8 on the torus
}

TEST_CASE("semistability never reports contraction-generated polynomials unstable") {
  Rng rng(202);
  for (int t = 0; t < 10; ++t) {
    int n1 = 1 + static_cast<int>(rng.uniform(0, 3));
    int n2 = 1 + static_cast<int>(rng.uniform(0, 2));
    CMat k = random_contraction(n1 + n2, rng, rng.uniform(0.3, 0.999));
    BiPoly p = det_iminus_kz(k, n1, n2);
    CHECK(semistability(p).cls != StabilityClass::unstable);
  }
}

TEST_CASE("stability radius") {
  auto r1 = stability_radius(two_term_example(), 1e-8);
  CHECK(r1.s == Catch::Approx(1.25).epsilon(1e-6));

  auto r2 = stability_radius(bipoly({{1.0, 0.0}, {0.0, -1.0}}), 1e-8);
  CHECK(r2.s == Catch::Approx(1.0).epsilon(1e-6));

  auto r3 = stability_radius(bipoly({{1.0, -0.25}, {-0.25, 0.0}}), 1e-8);
  CHECK(r3.s == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("stability radius scaling covariance") {
  Rng rng(303);
  CMat k = random_contraction(3, rng, 0.85);
  BiPoly p = det_iminus_kz(k, 2, 1);
  double tol = 1e-7;
  auto base = stability_radius(p, tol);
  for (double beta : {0.5, 2.0}) {
    auto scaled = stability_radius(p.scaled(beta, beta), tol);
    CHECK(std::abs(scaled.s - base.s / beta) <= 2 * tol * base.s / beta + 2 * tol * scaled.s);
  }
}

TEST_CASE("self-reversive detection") {
  auto sr = self_reversive_test(self_reversive_example());
  CHECK(sr.flag);
  CHECK(std::abs(sr.alpha - Complex(1, 0)) < 1e-12);
  CHECK(sr.corner_unimodular);

  auto hyper = self_reversive_test(bipoly({{1.0, 0.0}, {0.0, -1.0}}));
  CHECK(hyper.flag);
  CHECK(std::abs(hyper.alpha + Complex(1, 0)) < 1e-12);

  auto plain = self_reversive_test(two_term_example());
  CHECK_FALSE(plain.flag);
  CHECK_FALSE(plain.corner_unimodular);
}

TEST_CASE("self-reversive implies a unimodular corner coefficient") {
  Rng rng(404);
  for (int t = 0; t < 10; ++t) {
    // products of 1 - beta z1 z2 with |beta| = 1 are semi-stable self-reversive
    BiPoly p = BiPoly::constant(Complex(1, 0));
    int factors = 1 + static_cast<int>(rng.uniform(0, 3));
    for (int f = 0; f < factors; ++f) {
      Complex beta = unit_root(1 << 16, static_cast<int>(rng.uniform(0, 1 << 16)));
      CMat g = CMat::Zero(2, 2);
      g(0, 0) = 1;
      g(1, 1) = -beta;
      p = p * BiPoly(g);
    }
    auto sr = self_reversive_test(p);
    CHECK(sr.flag);
    CHECK(sr.corner_unimodular);
  }
}

TEST_CASE("scattering Schur detection") {
  CHECK(scattering_schur_test(two_term_example()));
  CHECK_FALSE(scattering_schur_test(bipoly({{1.0, 0.0}, {0.0, -1.0}})));

  Rng rng(505);
  for (int t = 0; t < 5; ++t) {
    CMat k = random_contraction(3, rng, 0.8);
    BiPoly p = det_iminus_kz(k, 2, 1);
    CHECK(scattering_schur_test(p));
  }
}

TEST_CASE("intersecting zeros of the self-reversive example") {
  BiPoly p = self_reversive_example();
  auto zeros = intersecting_zeros(p);
  std::vector<std::pair<Complex, Complex>> expect = {
      {Complex(0, 0), Complex(std::sqrt(2.0), 0)},
      {Complex(std::sqrt(2.0), 0), Complex(0, 0)},
      {Complex(0.5, 0), Complex(-1 + 3 / std::sqrt(2.0), 0)},
      {Complex(-1 + 3 / std::sqrt(2.0), 0), Complex(0.5, 0)},
  };
  for (const auto& [a, b] : expect) {
    bool found = false;
    for (const auto& [x, y] : zeros)
      if (std::abs(x - a) + std::abs(y - b) < 1e-7) found = true;
    CHECK(found);
  }
  for (const auto& [x, y] : zeros) {
    CHECK(std::abs(p.eval(x, y)) < 1e-7);
    bool swapped = false;  // the polynomial is symmetric, so the zero set is swap-closed
    for (const auto& [u, v] : zeros)
      if (std::abs(u - y) + std::abs(v - x) < 1e-7) swapped = true;
    CHECK(swapped);
  }
}

TEST_CASE("strictly scattering Schur polynomials have no intersecting zeros") {
  CHECK(intersecting_zeros(two_term_example()).empty());
}

TEST_CASE("Knese inequality") {
  auto k1 = knese_check(two_term_example(), 96);
  CHECK(k1.holds);
  CHECK(k1.c > 0.0);
  double peak = 0.0;
  BiPoly p = two_term_example();
  for (int a = 0; a < 64; ++a)
    for (int b = 0; b < 64; ++b) peak = std::max(peak, std::norm(p.eval(unit_root(64, a), unit_root(64, b))));
  CHECK(k1.c <= 4 * kPi * peak);

  auto k2 = knese_check(bipoly({{1.0, 0.0}, {0.0, -0.9}}), 96);
  CHECK(k2.holds);

  CHECK_THROWS_AS(knese_check(bipoly({{1.0, 0.0}, {0.0, -1.0}}), 64), Error);  // only semi-stable
}
