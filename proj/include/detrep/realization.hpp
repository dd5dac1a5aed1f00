#ifndef DETREP_REALIZATION_HPP
#define DETREP_REALIZATION_HPP

#include <vector>

#include "detrep/specfact.hpp"
#include "detrep/structured.hpp"

namespace detrep {

/// Partitioned state-space system matrix of M(z) = D + C z (I - A z)^{-1} B.
struct SysMat {
  CMat A, B, C, D;

  int states() const { return static_cast<int>(A.rows()); }
  int ports() const { return static_cast<int>(D.rows()); }

  CMat eval(Complex z) const {
    if (states() == 0) return D;
    CMat resolvent = (CMat::Identity(states(), states()) - z * A).partialPivLu().solve(B);
    return D + z * (C * resolvent);
  }

  CMat block() const {
    int n = states(), m = ports();
    CMat k(n + m, n + m);
    k.topLeftCorner(n, n) = A;
    k.topRightCorner(n, m) = B;
    k.bottomLeftCorner(m, n) = C;
    k.bottomRightCorner(m, m) = D;
    return k;
  }
};

/// Taylor coefficients of M(z1) = P(z1)^{-1} C(z1) P(z1) at 0.
inline std::vector<CMat> markov_of_M(const BiPoly& p, const MatPoly& pf, int order) {
  if (pf.size() != p.deg2()) fail(Err::SizeMismatch, "factor size does not match deg2");
  auto cser = companion_series(p, order);
  auto pser = std::vector<CMat>(pf.coeffs().begin(), pf.coeffs().end());
  auto pinv = series_inverse(pf, order);  // throws SingularP0
  auto tmp = series_mul(pinv, cser, order);
  return series_mul(tmp, pser, order);
}

/// Ho-Kalman / Kung realization at exact numerical rank n from the Hankel
/// matrix of the Markov parameters.
inline SysMat minimal_realization(const std::vector<CMat>& markov, int n, double svd_tol = 1e-8) {
  int d = static_cast<int>(markov.at(0).rows());
  int h = n + 2;
  if (static_cast<int>(markov.size()) < 2 * h) fail(Err::InvalidArgument, "markov horizon too short");

  SysMat sys;
  sys.D = markov[0];

  CMat h0(h * d, h * d), h1(h * d, h * d);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      h0.block(i * d, j * d, d, d) = markov[1 + i + j];
      h1.block(i * d, j * d, d, d) = markov[2 + i + j];
    }

  Eigen::BDCSVD<CMat> svd(h0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double s1 = sv(0);
  double floor_scale = std::max(s1, 1.0);
  if (n == 0) {
    if (s1 > svd_tol * floor_scale) fail(Err::RankMismatch, "nonzero Hankel at requested rank zero");
    sys.A = CMat::Zero(0, 0);
    sys.B = CMat::Zero(0, d);
    sys.C = CMat::Zero(d, 0);
    return sys;
  }
  if (static_cast<int>(sv.size()) < n || sv(n - 1) <= svd_tol * floor_scale)
    fail(Err::RankMismatch, "numerical rank below requested");
  if (static_cast<int>(sv.size()) > n && sv(n) > svd_tol * floor_scale)
    fail(Err::RankMismatch, "numerical rank above requested");

  CMat un = svd.matrixU().leftCols(n);
  CMat vn = svd.matrixV().leftCols(n);
  RVec sn = sv.head(n);
  CMat sr = sn.cwiseSqrt().asDiagonal();
  CMat sri = sn.cwiseSqrt().cwiseInverse().asDiagonal();

  sys.A = sri * un.adjoint() * h1 * vn * sri;
  sys.B = (sr * vn.adjoint()).leftCols(d);
  sys.C = (un * sr).topRows(d);
  return sys;
}

namespace detail {

/// Stabilizing solution of the discrete Riccati equation
///   X = A*XA + C*C + (A*XB + C*D) (I - D*D - B*XB)^{-1} (B*XA + D*C)
/// by the structure-preserving doubling iteration.
inline CMat bounded_real_dare(const SysMat& s, int max_iter = 120) {
  int n = s.states();
  int m = s.ports();
  if (n == 0) return CMat::Zero(0, 0);

  CMat rd = CMat::Identity(m, m) - s.D.adjoint() * s.D;
  Eigen::LLT<CMat> rd_llt(rd);
  if (rd_llt.info() != Eigen::Success) fail(Err::KYPFailure, "I - D*D is not positive definite");

  CMat ahat = s.A + s.B * rd_llt.solve(s.D.adjoint() * s.C);
  CMat qhat = s.C.adjoint() * (CMat::Identity(m, m) - s.D * s.D.adjoint()).partialPivLu().solve(s.C);
  qhat = 0.5 * (qhat + qhat.adjoint()).eval();
  CMat g = -s.B * rd_llt.solve(s.B.adjoint());
  g = 0.5 * (g + g.adjoint()).eval();

  CMat ak = ahat, gk = g, hk = qhat;
  for (int it = 0; it < max_iter; ++it) {
    CMat w = CMat::Identity(n, n) + gk * hk;
    Eigen::PartialPivLU<CMat> lu(w);
    double det = std::abs(lu.determinant());
    if (!(det > 1e-300) || !std::isfinite(det)) fail(Err::KYPFailure, "doubling pencil became singular");
    CMat v1 = lu.solve(ak);
    CMat v2 = lu.solve(gk);  // (I + G H)^{-1} G is Hermitian when G, H are
    CMat hn = hk + ak.adjoint() * hk * v1;
    CMat gn = gk + ak * v2 * ak.adjoint();
    CMat an = ak * v1;
    hn = 0.5 * (hn + hn.adjoint()).eval();
    gn = 0.5 * (gn + gn.adjoint()).eval();
    double step = (hn - hk).cwiseAbs().maxCoeff();
    hk = hn;
    gk = gn;
    ak = an;
    if (!std::isfinite(hk.cwiseAbs().maxCoeff())) fail(Err::KYPFailure, "doubling iteration diverged");
    if (step <= 1e-14 * std::max(1.0, hk.cwiseAbs().maxCoeff())) return hk;
  }
  fail(Err::KYPFailure, "doubling iteration did not converge");
}

/// The fixed-point iteration on the same Riccati map, kept as a fallback.
inline CMat bounded_real_fixed_point(const SysMat& s, int budget = 500) {
  int n = s.states();
  int m = s.ports();
  CMat x = CMat::Zero(n, n);
  for (int it = 0; it < budget; ++it) {
    CMat slack = CMat::Identity(m, m) - s.D.adjoint() * s.D - s.B.adjoint() * x * s.B;
    Eigen::LLT<CMat> llt(0.5 * (slack + slack.adjoint()));
    if (llt.info() != Eigen::Success) fail(Err::KYPFailure, "Riccati slack lost definiteness");
    CMat cross = s.A.adjoint() * x * s.B + s.C.adjoint() * s.D;
    CMat xn = s.A.adjoint() * x * s.A + s.C.adjoint() * s.C + cross * llt.solve(cross.adjoint());
    xn = 0.5 * (xn + xn.adjoint()).eval();
    double step = (xn - x).cwiseAbs().maxCoeff();
    x = xn;
    if (step <= 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff())) return x;
  }
  fail(Err::KYPFailure, "fixed-point iteration exhausted its budget");
}

}  // namespace detail

/// State-space similarity by T = X^{1/2}, X the bounded-real Riccati solution,
/// after which the full system matrix is a contraction. The transfer function
/// is unchanged.
inline SysMat contractive_balance(const SysMat& sys, double tol = 1e-9) {
  int n = sys.states();
  if (n == 0) {
    if (operator_norm(sys.D) > 1.0 + tol) fail(Err::KYPFailure, "static block exceeds unit norm");
    return sys;
  }

  double sup = 0.0;
  for (int j = 0; j < 256; ++j) sup = std::max(sup, operator_norm(sys.eval(unit_root(256, j))));
  if (sup > 1.0 + 1e-6) fail(Err::KYPFailure, "transfer function is not contractive on the circle");

  CMat x;
  try {
    x = detail::bounded_real_dare(sys);
  } catch (const Error&) {
    x = detail::bounded_real_fixed_point(sys);
  }

  Eigen::SelfAdjointEigenSolver<CMat> es(x);
  double bump = std::max(1e-14 * std::max(1.0, es.eigenvalues().maxCoeff()), 0.0);
  RVec lam = es.eigenvalues().cwiseMax(0.0).array() + bump;
  CMat t = es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  CMat ti = es.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();

  SysMat out;
  out.A = t * sys.A * ti;
  out.B = t * sys.B;
  out.C = sys.C * ti;
  out.D = sys.D;
  if (operator_norm(out.block()) > 1.0 + tol)
    fail(Err::KYPFailure, "balanced system matrix exceeds unit norm");
  return out;
}

/// det(I - K Z) at a point, Z = z1 I_{n1} (+) z2 I_{n2}.
inline Complex det_iminus_kz_at(const CMat& k, int n1, int n2, Complex z1, Complex z2) {
  CVec zdiag(n1 + n2);
  for (int i = 0; i < n1; ++i) zdiag(i) = z1;
  for (int i = 0; i < n2; ++i) zdiag(n1 + i) = z2;
  CMat m = CMat::Identity(n1 + n2, n1 + n2) - k * zdiag.asDiagonal().toDenseMatrix();
  return m.determinant();
}

/// Assembles K = [[A, B], [C, D]] and certifies the determinant identities:
/// det(I - z1 A) = p(., 0) coefficientwise and det(I - K Z) = p on a torus
/// grid.
inline CMat assemble_K(const SysMat& sys, const BiPoly& p, double tol = 1e-8) {
  int n1 = sys.states(), n2 = sys.ports();
  if (p.deg1() != n1 || p.deg2() != n2) fail(Err::SizeMismatch, "system partition does not match bidegree");

  UniPoly p0 = slice_z2(p, Complex(0, 0));
  UniPoly den = UniPoly::one();
  if (n1 > 0) {
    Eigen::ComplexEigenSolver<CMat> es(sys.A, false);
    for (int i = 0; i < n1; ++i) den = den * UniPoly({Complex(1, 0), -es.eigenvalues()(i)});
  }
  double scale0 = std::max(1.0, p0.max_abs());
  for (int k = 0; k <= std::max(den.degree(), p0.degree()); ++k)
    if (std::abs(den.coeff(k) - p0.coeff(k)) > tol * scale0)
      fail(Err::DenominatorMismatch, "det(I - z1 A) does not match p(., 0)");

  CMat k = sys.block();
  double scale = std::max(1.0, p.max_abs());
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      Complex z1 = unit_root(16, a), z2 = unit_root(16, b);
      if (std::abs(det_iminus_kz_at(k, n1, n2, z1, z2) - p.eval(z1, z2)) > tol * scale)
        fail(Err::EvaluationMismatch, "det(I - K Z) does not match p on the verification grid");
    }
  return k;
}

}  // namespace detrep

#endif  // DETREP_REALIZATION_HPP
