#include <catch2/catch_amalgamated.hpp>

#include "detrep/structured.hpp"
#include "support.hpp"

using namespace detrep;
using namespace testsupport;

TEST_CASE("bivariate evaluation") {
  BiPoly p = two_term_example();
  CHECK(std::abs(p.eval(0, 0) - Complex(1, 0)) == 0.0);

  // (1,1) is a double zero of the self-reversive example: p(1, z2) = (z2-1)^2 / 2
  BiPoly q = self_reversive_example();
  CHECK(std::abs(q.eval(1, 1)) < 1e-14);
  CHECK(std::abs(q.eval(2, 0.5) - Complex(1 - 1 - 2 - 0.125 + 1, 0)) < 1e-12);

  // 1 + 10y + 4x - y^2 - 2xy - x^2 at (1, 0), with x as the first variable
  BiPoly r = bipoly({{1.0, 10.0, -1.0}, {4.0, -2.0, 0.0}, {-1.0, 0.0, 0.0}});
  CHECK(std::abs(r.eval(1, 0) - Complex(4, 0)) < 1e-14);
}

TEST_CASE("reverse flips and conjugates the grid") {
  BiPoly p = bipoly({{1.0, 0.0}, {0.0, -1.0}});  // 1 - z1 z2
  BiPoly rev = reverse(p);
  CHECK(std::abs(rev.coeff(1, 1) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(rev.coeff(0, 0) + Complex(1, 0)) < 1e-15);

  double a = 0.25, b = 0.375;
  BiPoly q = two_term_example(a, b);
  BiPoly qrev = reverse(q);
  CHECK(std::abs(qrev.coeff(1, 1) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(qrev.coeff(0, 1) - Complex(a, 0)) < 1e-15);
  CHECK(std::abs(qrev.coeff(1, 0) - Complex(b, 0)) < 1e-15);

  BiPoly sr = self_reversive_example();
  CHECK((reverse(sr) - sr).max_abs() < 1e-15);
}

TEST_CASE("reverse is an involution when both corner coefficients are nonzero") {
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    CMat g = random_ginibre(3, 4, rng);
    g(0, 0) += 3.0;
    g(2, 3) += 3.0;
    BiPoly p{g};
    CHECK((reverse(reverse(p)) - p).max_abs() < 1e-12 * p.max_abs());
  }
}

TEST_CASE("expansion in powers of z2") {
  auto pj = coeffs_in_z2(two_term_example());
  REQUIRE(pj.size() == 2);
  CHECK(pj[0].degree() == 1);
  CHECK(std::abs(pj[0].coeff(1) - Complex(0.3, 0)) < 1e-15);
  CHECK(pj[1].degree() == 0);
  CHECK(std::abs(pj[1].coeff(0) - Complex(0.5, 0)) < 1e-15);

  auto qj = coeffs_in_z2(self_reversive_example());
  REQUIRE(qj.size() == 3);
  CHECK(std::abs(qj[0].coeff(2) + Complex(0.5, 0)) < 1e-15);  // 1 - z1^2/2
  CHECK(std::abs(qj[1].coeff(1) + Complex(1, 0)) < 1e-15);    // -z1
  CHECK(std::abs(qj[2].coeff(2) - Complex(1, 0)) < 1e-15);    // z1^2 - 1/2
  CHECK(std::abs(qj[2].coeff(0) + Complex(0.5, 0)) < 1e-15);

  auto cj = coeffs_in_z2(bipoly({{1.0}, {1.0}}));  // 1 + z1
  REQUIRE(cj.size() == 1);
  CHECK(cj[0].degree() == 1);
}

TEST_CASE("companion series by power-series division") {
  double a = 0.3, b = 0.5;
  auto series = companion_series(two_term_example(a, b), 2);
  REQUIRE(series.size() == 3);
  CHECK(std::abs(series[0](0, 0) - Complex(-b, 0)) < 1e-14);
  CHECK(std::abs(series[1](0, 0) - Complex(a * b, 0)) < 1e-14);
  CHECK(std::abs(series[2](0, 0) - Complex(-a * a * b, 0)) < 1e-14);

  // constant companion when p0 = 1 and only the top z2 coefficient is present
  BiPoly mono = bipoly({{1.0, 0.0, 0.25}});  // 1 + 0.25 z2^2
  auto cs = companion_series(mono, 3);
  CHECK(cs[0](0, 0) == Complex(0, 0));
  CHECK(std::abs(cs[0](1, 0) - Complex(-0.25, 0)) < 1e-15);
  CHECK(std::abs(cs[0](0, 1) - Complex(1, 0)) < 1e-15);
  for (int k = 1; k <= 3; ++k) CHECK(cs[k].cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(companion_series(bipoly({{0.0, 1.0}, {1.0, 0.0}}), 2), Error);
}

TEST_CASE("companion series sums to the companion matrix action") {
  Rng rng(7);
  CMat g = random_ginibre(3, 3, rng);
  g *= 0.2;
  g(0, 0) = 1.0;
  BiPoly p{g};
  int order = 30;
  auto series = companion_series(p, order);
  auto pj = coeffs_in_z2(p);
  CVec v = random_ginibre(2, 1, rng);
  for (int t = 0; t < 8; ++t) {
    Complex z1 = 0.5 * unit_root(8, t);
    CMat direct = CMat::Zero(2, 2);
    direct(0, 1) = 1;
    Complex p0 = pj[0].eval(z1);
    direct(0, 0) = -pj[1].eval(z1) / p0;
    direct(1, 0) = -pj[2].eval(z1) / p0;
    CMat summed = CMat::Zero(2, 2);
    for (int k = order; k >= 0; --k) summed = z1 * summed + series[k];
    CHECK(((direct - summed) * v).norm() < 1e-10 * v.norm());
  }
}

TEST_CASE("Toeplitz pair") {
  double a = 0.3, b = 0.5;
  auto [ta, tb] = toeplitz_AB(two_term_example(a, b));
  CHECK(ta.size() == 1);
  CHECK(std::abs(ta.coeff(0)(0, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(ta.coeff(1)(0, 0) - Complex(a, 0)) < 1e-15);
  CHECK(std::abs(tb.coeff(0)(0, 0) - Complex(b, 0)) < 1e-15);
  CHECK(tb.degree() == 0);

  // univariate specialization: constant matrices matching the classical display
  BiPoly uni = bipoly({{1.0, -0.25, 0.125}});  // in z2 only
  auto [ua, ub] = toeplitz_AB(uni);
  CHECK(ua.degree() == 0);
  CHECK(std::abs(ua.coeff(0)(1, 0) - Complex(-0.25, 0)) < 1e-15);
  CHECK(std::abs(ua.coeff(0)(1, 1) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(ub.coeff(0)(0, 1) - Complex(-0.25, 0)) < 1e-15);
  CHECK(std::abs(ub.coeff(0)(0, 0) - Complex(0.125, 0)) < 1e-15);

  // n2 = 2: the (2,1) entry of A is p1(z1)
  Rng rng(3);
  CMat g = random_ginibre(3, 3, rng);
  BiPoly p{g};
  auto [pa, pb] = toeplitz_AB(p);
  auto pj = coeffs_in_z2(p);
  for (int k = 0; k <= p.deg1(); ++k) CHECK(std::abs(pa.coeff(k)(1, 0) - pj[1].coeff(k)) < 1e-14);
}

TEST_CASE("trigonometric Bezoutian") {
  double a = 0.3, b = 0.5;
  TrigMatPoly q = trig_bezoutian(two_term_example(a, b));
  CHECK(q.band() == 1);
  // (1 + a z)(1 + a/z) - b^2
  CHECK(std::abs(q.coeff(0)(0, 0) - Complex(1 + a * a - b * b, 0)) < 1e-14);
  CHECK(std::abs(q.coeff(1)(0, 0) - Complex(a, 0)) < 1e-14);
  CHECK(std::abs(q.coeff(-1)(0, 0) - Complex(a, 0)) < 1e-14);

  // stable univariate slice: constant positive definite Bezoutian
  BiPoly uni = bipoly({{1.0, -0.25, 0.125}});
  TrigMatPoly qu = trig_bezoutian(uni);
  CHECK(qu.band() == 0);
  Eigen::SelfAdjointEigenSolver<CMat> es(qu.coeff(0));
  CHECK(es.eigenvalues()(0) > 0.5);

  // self-reversive example: the Bezoutian vanishes identically
  TrigMatPoly qs = trig_bezoutian(self_reversive_example());
  double peak = 0.0;
  for (int k = -qs.band(); k <= qs.band(); ++k) peak = std::max(peak, qs.coeff(k).cwiseAbs().maxCoeff());
  CHECK(peak < 1e-14);
}

TEST_CASE("Bezoutian is Hermitian and positive definite for stable polynomials") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    CMat k = random_contraction(4, rng, 0.8);
    BiPoly p = det_iminus_kz(k, 2, 2);
    TrigMatPoly q = trig_bezoutian(p);
    for (int j = 0; j < 64; ++j) {
      CMat qv = q.eval_circle(unit_root(64, j));
      CHECK((qv - qv.adjoint()).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, qv.cwiseAbs().maxCoeff()));
      Eigen::SelfAdjointEigenSolver<CMat> es(qv);
      CHECK(es.eigenvalues()(0) > 0.0);
    }
  }
}

TEST_CASE("kernel identity links the Bezoutian to the polynomial") {
  // (p(z) conj(p(1/conj z1, z2)) - rev(z) conj(rev(1/conj z1, z2))) / (1 - |z2|^2)
  //   = v(z2) Q(z1) v(z2)^*
  Rng rng(19);
  std::vector<BiPoly> polys = {two_term_example(), self_reversive_example()};
  {
    CMat k = random_contraction(5, rng, 0.9);
    polys.push_back(det_iminus_kz(k, 3, 2));
  }
  for (const auto& p : polys) {
    BiPoly rev = reverse(p);
    TrigMatPoly q = trig_bezoutian(p);
    int n2 = p.deg2();
    for (int t = 0; t < 200; ++t) {
      Complex z1 = unit_root(1 << 20, static_cast<int>(rng.uniform(0, 1 << 20)));
      Complex z2 = Complex(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4));
      if (std::abs(std::abs(z2) - 1.0) < 0.05) continue;
      Complex lhs = (p.eval(z1, z2) * std::conj(p.eval(z1, z2)) -
                     rev.eval(z1, z2) * std::conj(rev.eval(z1, z2))) /
                    (1.0 - std::norm(z2));
      CVec v(n2);
      for (int j = 0; j < n2; ++j) v(j) = ipow(z2, j);
      Complex rhs = (v.transpose() * q.eval_circle(z1) * v.conjugate())(0, 0);
      double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      CHECK(std::abs(lhs - rhs) < 1e-8 * scale);
    }
  }
}

TEST_CASE("resultant determinant") {
  UniPoly r = resultant_det(two_term_example());
  CHECK(r.max_abs() > 1e-3);
  // explicit 2x2 determinant: A(z)A*(1/z) - B*(1/z)B(z) block determinant
  // equals (1+az)(1+a/z) - b^2 up to the z^{n1 n2} clearing
  double a = 0.3, b = 0.5;
  for (int j = 0; j < 8; ++j) {
    Complex z = unit_root(8, j);
    Complex expect = ((1.0 + a * z) * (1.0 + a / z) - b * b) * z;
    CHECK(std::abs(r.eval(z) - expect) < 1e-12);
  }

  UniPoly rs = resultant_det(self_reversive_example());
  CHECK(rs.max_abs() < 1e-10);

  UniPoly rp = resultant_det(bipoly({{1.0, 0.0}, {0.0, -1.0}}));
  CHECK(rp.max_abs() < 1e-12);
}

TEST_CASE("univariate polynomial basics") {
  UniPoly u({Complex(1, 0), Complex(0, 0), Complex(-2, 0)});
  CHECK(u.degree() == 2);
  // Horner agrees with the power sum on |z| <= 2
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    Complex z = Complex(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (std::abs(z) > 2) continue;
    Complex naive(0, 0);
    for (int k = 0; k <= u.degree(); ++k) naive += u.coeff(k) * ipow(z, k);
    CHECK(std::abs(u.eval(z) - naive) < 1e-12 * std::max(1.0, std::abs(naive)));
  }
  auto rs = roots(u);
  REQUIRE(rs.size() == 2);
  CHECK(std::abs(rs[0] + std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(rs[1] - std::sqrt(0.5)) < 1e-12);
}
