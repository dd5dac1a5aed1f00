#ifndef DETREP_STRUCTURED_HPP
#define DETREP_STRUCTURED_HPP

#include <utility>
#include <vector>

#include "detrep/bipoly.hpp"
#include "detrep/matpoly.hpp"

namespace detrep {

namespace detail {

/// Taylor coefficients of 1/p0 at 0, order terms beyond the constant.
inline std::vector<Complex> reciprocal_series(const UniPoly& p0, int order) {
  if (std::abs(p0.coeff(0)) <= kTrimTol * std::max(1.0, p0.max_abs()))
    fail(Err::ZeroConstantTerm, "series division needs a nonzero constant term");
  std::vector<Complex> inv(order + 1, Complex(0, 0));
  inv[0] = Complex(1, 0) / p0.coeff(0);
  for (int k = 1; k <= order; ++k) {
    Complex acc(0, 0);
    for (int j = 1; j <= std::min(k, p0.degree()); ++j) acc += p0.coeff(j) * inv[k - j];
    inv[k] = -inv[0] * acc;
  }
  return inv;
}

inline std::vector<Complex> series_mul_scalar(const std::vector<Complex>& a, const UniPoly& b, int order) {
  std::vector<Complex> out(order + 1, Complex(0, 0));
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; j <= b.degree() && i + j <= order; ++j) out[i + j] += a[i] * b.coeff(j);
  return out;
}

}  // namespace detail

/// Taylor coefficients at z1 = 0 of the companion matrix C(z1) of
/// p(z1, .) = p0(z1) + ... + p_{n2}(z1) z2^{n2}: first column -p_j/p0,
/// identity on the superdiagonal.
inline std::vector<CMat> companion_series(const BiPoly& p, int order) {
  int n2 = p.deg2();
  if (n2 < 1) fail(Err::InvalidArgument, "companion_series needs degree >= 1 in z2");
  if (std::abs(p.coeff(0, 0)) <= kTrimTol * std::max(1.0, p.max_abs()))
    fail(Err::ZeroConstantTerm, "companion_series needs p(0,0) != 0");
  auto pj = coeffs_in_z2(p);
  auto inv = detail::reciprocal_series(pj[0], order);
  std::vector<CMat> out(order + 1, CMat::Zero(n2, n2));
  for (int r = 0; r < n2 - 1; ++r) out[0](r, r + 1) = Complex(1, 0);
  for (int j = 1; j <= n2; ++j) {
    auto col = detail::series_mul_scalar(inv, pj[j], order);
    for (int k = 0; k <= order; ++k) out[k](j - 1, 0) = -col[k];
  }
  return out;
}

/// The lower- and upper-triangular Toeplitz matrices with symbols
/// p0..p_{n2-1} and p_{n2}..p1, as n2 x n2 matrix polynomials in z1.
inline std::pair<MatPoly, MatPoly> toeplitz_AB(const BiPoly& p) {
  int n1 = p.deg1(), n2 = p.deg2();
  if (n2 < 1) fail(Err::InvalidArgument, "toeplitz_AB needs degree >= 1 in z2");
  std::vector<CMat> a(n1 + 1, CMat::Zero(n2, n2));
  std::vector<CMat> b(n1 + 1, CMat::Zero(n2, n2));
  for (int k = 0; k <= n1; ++k) {
    for (int r = 0; r < n2; ++r)
      for (int c = 0; c < n2; ++c) {
        if (r >= c) a[k](r, c) = p.coeff(k, r - c);
        if (c >= r) b[k](r, c) = p.coeff(k, n2 - (c - r));
      }
  }
  return {MatPoly(std::move(a)), MatPoly(std::move(b))};
}

/// Bezoutian Q(z1) = A(z1) A(1/conj(z1))^* - B(1/conj(z1))^* B(z1), a Laurent
/// band of width deg1(p) with Hermitian coefficient symmetry.
inline TrigMatPoly trig_bezoutian(const BiPoly& p) {
  auto [a, b] = toeplitz_AB(p);
  int n1 = p.deg1();
  int n2 = p.deg2();
  std::vector<CMat> q(n1 + 1, CMat::Zero(n2, n2));
  for (int k = 0; k <= n1; ++k) {
    CMat acc = CMat::Zero(n2, n2);
    for (int l = 0; l + k <= n1; ++l) acc += a.coeff(k + l) * a.coeff(l).adjoint() - b.coeff(l).adjoint() * b.coeff(l + k);
    q[k] = acc;
  }
  return TrigMatPoly(std::move(q));
}

/// det R(z1) * z1^{n1 n2} with R the 2n2 x 2n2 resultant block matrix of
/// p(z1, .) and the reversed polynomial's slice; identically zero iff the two
/// have a common factor.
inline UniPoly resultant_det(const BiPoly& p) {
  auto [a, b] = toeplitz_AB(p);
  int n1 = p.deg1();
  int n2 = p.deg2();
  int deg = 2 * n1 * n2;
  int n = deg + 1;
  std::vector<Complex> vals(n);
  for (int j = 0; j < n; ++j) {
    Complex z = unit_root(n, j);
    CMat r(2 * n2, 2 * n2);
    r.topLeftCorner(n2, n2) = a.eval(z);
    r.topRightCorner(n2, n2) = b.eval_star(z);
    r.bottomLeftCorner(n2, n2) = b.eval(z);
    r.bottomRightCorner(n2, n2) = a.eval_star(z);
    vals[j] = r.determinant() * ipow(z, n1 * n2);
  }
  return UniPoly(idft(vals));
}

}  // namespace detrep

#endif  // DETREP_STRUCTURED_HPP
