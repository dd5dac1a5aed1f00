#ifndef DETREP_STABILITY_HPP
#define DETREP_STABILITY_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "detrep/structured.hpp"

namespace detrep {

enum class StabilityClass { stable, semi_stable, unstable, inconclusive };

inline const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::semi_stable: return "semi-stable";
    case StabilityClass::unstable: return "unstable";
    case StabilityClass::inconclusive: return "inconclusive";
  }
  return "?";
}

struct StabilityVerdict {
  StabilityClass cls = StabilityClass::inconclusive;
  double margin = 0.0;  // min certificate slack; > 0 for stable, < 0 for unstable
  std::optional<std::array<Complex, 2>> witness;  // point in the closed bidisk with |p| ~ 0
  int grid = 0;
};

struct RadiusResult {
  double s = 0.0;
  double tol = 0.0;  // relative bisection half-width: the bracket is [s(1-tol), s(1+tol)]
};

/// Schur-Cohn test for a univariate polynomial: u has no zeros in the closed
/// unit disk iff Q = AA^* - B^*B > 0. The margin is the minimal eigenvalue of
/// Q; the verdict is cross-checked against companion-root moduli.
inline StabilityVerdict schur_cohn(const UniPoly& u, double tol = kPsdSlack) {
  double scale = std::max(1.0, u.max_abs());
  if (std::abs(u.coeff(0)) <= kTrimTol * scale) fail(Err::ZeroConstantTerm, "schur_cohn needs u(0) != 0");
  int n = u.degree();
  StabilityVerdict v;
  v.grid = 0;
  if (n == 0) {
    v.cls = StabilityClass::stable;
    v.margin = std::norm(u.coeff(0));
    return v;
  }
  CMat a = CMat::Zero(n, n), b = CMat::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (r >= c) a(r, c) = u.coeff(r - c);
      if (c >= r) b(r, c) = u.coeff(n - (c - r));
    }
  CMat q = a * a.adjoint() - b.adjoint() * b;
  Eigen::SelfAdjointEigenSolver<CMat> es(q);
  v.margin = es.eigenvalues()(0);

  double rho_min = 2.0;
  Complex worst(0, 0);
  for (const auto& r : roots(u)) {
    if (std::abs(r) < rho_min) {
      rho_min = std::abs(r);
      worst = r;
    }
  }
  double band = tol * std::max(1.0, q.cwiseAbs().maxCoeff());
  if (v.margin > band && rho_min > 1.0) {
    v.cls = StabilityClass::stable;
  } else if (v.margin < -band || rho_min < 1.0 - 1e-9) {
    v.cls = StabilityClass::unstable;
    v.witness = {{worst, Complex(0, 0)}};
  } else {
    v.cls = StabilityClass::semi_stable;
  }
  return v;
}

namespace detail {

struct CircleSweep {
  double min_eig = 0.0;
  double theta_min = 0.0;
};

inline CircleSweep sweep_min_eig(const TrigMatPoly& q, double lo, double hi, int grid) {
  CircleSweep out;
  out.min_eig = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    double t = lo + (hi - lo) * (static_cast<double>(j) + 0.5) / grid;
    CMat qv = q.eval_circle(Complex(std::cos(t), std::sin(t)));
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (qv + qv.adjoint()));
    if (es.eigenvalues()(0) < out.min_eig) {
      out.min_eig = es.eigenvalues()(0);
      out.theta_min = t;
    }
  }
  return out;
}

}  // namespace detail

/// Grid certification of bidisk stability. Stable means p0 = p(., 0) has no
/// zeros in the closed disk and the Bezoutian Q(z1) stays positive definite on
/// the circle (one refinement pass around the sweep minimizer). A strictly
/// negative slack produces a witness in the closed bidisk.
inline StabilityVerdict semistability(const BiPoly& p, int grid = 512) {
  double scale = std::max(1.0, p.max_abs());
  if (std::abs(p.coeff(0, 0)) <= kTrimTol * scale) fail(Err::ZeroConstantTerm, "semistability needs p(0,0) != 0");

  if (p.deg2() == 0 || p.deg1() == 0) {
    UniPoly u = (p.deg2() == 0) ? slice_z2(p, Complex(0, 0)) : slice_z1(p, Complex(0, 0));
    StabilityVerdict v = schur_cohn(u);
    if (v.witness && p.deg1() == 0) std::swap((*v.witness)[0], (*v.witness)[1]);
    v.grid = grid;
    return v;
  }

  StabilityVerdict v;
  v.grid = grid;

  auto pj = coeffs_in_z2(p);
  StabilityVerdict v0 = schur_cohn(pj[0]);

  TrigMatPoly q = trig_bezoutian(p);
  double band = kPsdSlack * std::max(1.0, q.max_abs());
  auto sweep = detail::sweep_min_eig(q, 0.0, 2.0 * kPi, grid);
  double step = 2.0 * kPi / grid;
  auto refine = detail::sweep_min_eig(q, sweep.theta_min - step, sweep.theta_min + step, grid);
  double qmin = std::min(sweep.min_eig, refine.min_eig);
  double theta = refine.min_eig < sweep.min_eig ? refine.theta_min : sweep.theta_min;

  v.margin = std::min(qmin, v0.margin);

  if (v0.cls == StabilityClass::unstable) {
    v.cls = StabilityClass::unstable;
    v.witness = v0.witness;
    return v;
  }
  if (qmin < -band) {
    v.cls = StabilityClass::unstable;
    Complex z1(std::cos(theta), std::sin(theta));
    UniPoly slice = slice_z1(p, z1);
    Complex z2(0, 0);
    double best = 2.0;
    for (const auto& r : roots(slice)) {
      if (std::abs(r) < best) {
        best = std::abs(r);
        z2 = r;
      }
    }
    if (best <= 1.0 + 1e-7) v.witness = {{z1, z2}};
    return v;
  }
  if (v0.cls == StabilityClass::stable && qmin > band) {
    v.cls = StabilityClass::stable;
  } else {
    v.cls = StabilityClass::semi_stable;
  }
  return v;
}

/// Largest r such that p is zero-free on the open r-bidisk, by bisection on
/// the semistability verdict. tol is the requested relative half-width.
inline RadiusResult stability_radius(const BiPoly& p, double tol = 1e-8, int grid = 512) {
  double scale = std::max(1.0, p.max_abs());
  if (p.is_constant()) fail(Err::InvalidArgument, "stability radius of a constant polynomial");
  if (std::abs(p.coeff(0, 0)) <= kTrimTol * scale) fail(Err::ZeroConstantTerm, "stability_radius needs p(0,0) != 0");

  auto feasible = [&](double r) {
    return semistability(p.scaled(r, r), grid).cls != StabilityClass::unstable;
  };

  double csum = 0.0;
  for (int i = 0; i <= p.deg1(); ++i)
    for (int j = 0; j <= p.deg2(); ++j)
      if (i + j > 0) csum += std::abs(p.coeff(i, j));
  double lo = std::min(1.0, std::abs(p.coeff(0, 0)) / (2.0 * std::max(csum, 1e-30)));
  int shrink = 0;
  while (!feasible(lo)) {  // the coefficient bound makes this a no-op in practice
    lo *= 0.5;
    if (++shrink > 60) fail(Err::InvalidArgument, "no zero-free dilation found");
  }

  double hi = std::max(2.0 * lo, 1.0);
  int guard = 0;
  while (feasible(hi)) {
    hi *= 2.0;
    if (++guard > 60) fail(Err::NoUnstableBracket, "no unstable dilation found");
  }
  if (hi > std::max(2.0 * lo, 1.0)) lo = hi / 2.0;

  while ((hi - lo) > tol * (hi + lo)) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  RadiusResult out;
  out.s = 0.5 * (lo + hi);
  out.tol = (hi - lo) / (hi + lo);
  return out;
}

struct SelfReversive {
  bool flag = false;
  Complex alpha{0, 0};
  bool corner_unimodular = false;  // |coefficient of z1^{n1} z2^{n2}| = 1
};

/// Tests reverse(p) = alpha * p coefficientwise, and reports the unimodularity
/// of the corner coefficient.
inline SelfReversive self_reversive_test(const BiPoly& p, double tol = 1e-9) {
  SelfReversive out;
  double scale = std::max(1.0, p.max_abs());
  Complex corner = p.coeff(p.deg1(), p.deg2());
  out.corner_unimodular = std::abs(std::abs(corner) - 1.0) <= tol;
  BiPoly rev = reverse(p);
  if (rev.bidegree() != p.bidegree()) return out;
  Complex alpha = std::conj(corner) / p.coeff(0, 0);
  if (std::abs(alpha) <= tol) return out;
  out.alpha = alpha;
  BiPoly diff = rev - alpha * p;
  out.flag = diff.max_abs() <= tol * scale;
  if (!out.flag) out.alpha = Complex(0, 0);
  return out;
}

/// Semi-stable p is scattering Schur iff p and its reverse are coprime; tested
/// through the resultant in both variable orders.
inline bool scattering_schur_test(const BiPoly& p, double tol = 1e-9) {
  if (p.deg2() >= 1) {
    double scale = std::pow(std::max(1.0, p.max_abs()), 2.0 * p.deg2());
    if (resultant_det(p).max_abs() <= tol * scale) return false;
  }
  if (p.deg1() >= 1) {
    BiPoly q = p.swapped();
    double scale = std::pow(std::max(1.0, q.max_abs()), 2.0 * q.deg2());
    if (resultant_det(q).max_abs() <= tol * scale) return false;
  }
  return true;
}

namespace detail {

inline void collect_common_zeros(const BiPoly& p, const BiPoly& rev, Complex z1,
                                 double pair_tol, double res_tol,
                                 std::vector<std::pair<Complex, Complex>>& out) {
  UniPoly s1 = slice_z1(p, z1);
  UniPoly s2 = slice_z1(rev, z1);
  if (s1.degree() == 0 || s2.degree() == 0) return;
  auto r1 = roots(s1);
  auto r2 = roots(s2);
  for (const auto& a : r1)
    for (const auto& b : r2)
      if (std::abs(a - b) <= pair_tol * (1.0 + std::abs(a))) {
        Complex z2 = 0.5 * (a + b);
        if (std::abs(p.eval(z1, z2)) <= res_tol && std::abs(rev.eval(z1, z2)) <= res_tol) {
          bool dup = false;
          for (const auto& w : out)
            if (std::abs(w.first - z1) + std::abs(w.second - z2) <= 10 * pair_tol) dup = true;
          if (!dup) out.emplace_back(z1, z2);
        }
      }
}

}  // namespace detail

/// Common zeros of p and its reverse. The z1 coordinates come from the
/// resultant roots; each candidate is re-verified by residuals. When the
/// resultant vanishes identically (p and its reverse share a factor, e.g.
/// self-reversive p) the zero set is sampled on a fixed family of slices in
/// both variables instead.
inline std::vector<std::pair<Complex, Complex>> intersecting_zeros(const BiPoly& p, double tol = 1e-8) {
  double pair_tol = 1e-6;
  double scale = std::max(1.0, p.max_abs());
  double res_tol = 100.0 * tol * scale;
  BiPoly rev = reverse(p);
  std::vector<std::pair<Complex, Complex>> out;

  UniPoly r = p.deg2() >= 1 ? resultant_det(p) : UniPoly::zero();
  double rscale = std::pow(std::max(1.0, p.max_abs()), 2.0 * std::max(1, p.deg2()));
  bool degenerate = r.max_abs() <= 1e-10 * rscale;

  if (!degenerate) {
    for (const auto& a : roots(r)) detail::collect_common_zeros(p, rev, a, pair_tol, res_tol, out);
    return out;
  }

  static const Complex kSlices[] = {Complex(0, 0), Complex(0.5, 0), Complex(-0.5, 0)};
  for (const auto& z1 : kSlices) detail::collect_common_zeros(p, rev, z1, pair_tol, res_tol, out);
  // slices in the other variable, mapped back through the swap
  BiPoly ps = p.swapped(), rs = rev.swapped();
  std::vector<std::pair<Complex, Complex>> swapped;
  for (const auto& z2 : kSlices) detail::collect_common_zeros(ps, rs, z2, pair_tol, res_tol, swapped);
  for (const auto& w : swapped) {
    bool dup = false;
    for (const auto& v : out)
      if (std::abs(v.first - w.second) + std::abs(v.second - w.first) <= 10 * pair_tol) dup = true;
    if (!dup) out.emplace_back(w.second, w.first);
  }
  return out;
}

struct KneseResult {
  double c = 0.0;
  bool holds = false;
};

/// The stability inequality |p|^2 - |reverse p|^2 >= c (1-|z1|^2)(1-|z2|^2) on
/// the bidisk, with c from torus quadrature of 1/|p|^2; checked on 500 random
/// interior points.
inline KneseResult knese_check(const BiPoly& p, int quad = 128, std::uint64_t seed = 12345) {
  if (p.is_constant()) fail(Err::InvalidArgument, "knese_check needs a non-constant polynomial");
  if (semistability(p).cls != StabilityClass::stable) fail(Err::NotStable, "knese_check needs a stable polynomial");
  BiPoly rev = reverse(p);
  double integral = 0.0;
  double h = 2.0 * kPi / quad;
  for (int a = 0; a < quad; ++a)
    for (int b = 0; b < quad; ++b) {
      Complex z1 = unit_root(quad, a), z2 = unit_root(quad, b);
      integral += h * h / std::norm(p.eval(z1, z2));
    }
  KneseResult out;
  out.c = 4.0 * kPi / integral;
  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 500; ++t) {
    double r1 = std::sqrt(rng.uniform()), a1 = rng.uniform(0.0, 2.0 * kPi);
    double r2 = std::sqrt(rng.uniform()), a2 = rng.uniform(0.0, 2.0 * kPi);
    Complex z1 = r1 * Complex(std::cos(a1), std::sin(a1));
    Complex z2 = r2 * Complex(std::cos(a2), std::sin(a2));
    double lhs = std::norm(p.eval(z1, z2)) - std::norm(rev.eval(z1, z2));
    double rhs = out.c * (1.0 - std::norm(z1)) * (1.0 - std::norm(z2));
    worst = std::min(worst, lhs - rhs);
  }
  out.holds = worst >= -1e-9 * std::max(1.0, p.max_abs() * p.max_abs());
  return out;
}

}  // namespace detrep

#endif  // DETREP_STABILITY_HPP
