#ifndef DETREP_SPECFACT_HPP
#define DETREP_SPECFACT_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include <Eigen/Cholesky>

#include "detrep/matpoly.hpp"
#include "detrep/unipoly.hpp"

namespace detrep {

namespace detail {

inline double eig_min(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (h + h.adjoint()));
  return es.eigenvalues()(0);
}

struct GridCheck {
  double min_eig = 0.0;
  Complex witness{1, 0};
};

inline GridCheck circle_min_eig(const TrigMatPoly& q, int grid = 512) {
  GridCheck out;
  out.min_eig = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    double t = 2.0 * kPi * (j + 0.5) / grid;
    Complex z(std::cos(t), std::sin(t));
    double e = eig_min(q.eval_circle(z));
    if (e < out.min_eig) {
      out.min_eig = e;
      out.witness = z;
    }
  }
  return out;
}

/// Banded block Cholesky of the Toeplitz truncation [Q_{i-j}]_{i,j<rows};
/// the last block row converges to the outer factor coefficients
/// (P_m, ..., P_0) with Q(z) = P(z) P(1/conj z)^* and det P zero-free in the
/// closed unit disk.
inline bool bauer_sweep(const TrigMatPoly& q, int rows, std::vector<CMat>& factor, double& drift) {
  int m = std::max(1, q.band());
  int d = q.size();
  rows = std::max(rows, m + 2);
  std::vector<std::vector<CMat>> L(rows);  // L[i][k] = block (i, i-m+k), k = 0..m
  for (int i = 0; i < rows; ++i) {
    L[i].assign(m + 1, CMat::Zero(d, d));
    for (int j = std::max(0, i - m); j <= i; ++j) {
      CMat acc = q.coeff(i - j);
      for (int k = std::max({0, i - m, j - m}); k < j; ++k)
        acc -= L[i][k - (i - m)] * L[j][k - (j - m)].adjoint();
      if (j < i) {
        const CMat& ljj = L[j][m];
        L[i][j - (i - m)] = ljj.triangularView<Eigen::Lower>().solve(acc.adjoint()).adjoint();
      } else {
        Eigen::LLT<CMat> llt(0.5 * (acc + acc.adjoint()));
        if (llt.info() != Eigen::Success) return false;
        L[i][m] = llt.matrixL();
      }
    }
  }
  factor.assign(m + 1, CMat::Zero(d, d));
  drift = 0.0;
  for (int k = 0; k <= m; ++k) {
    factor[k] = L[rows - 1][m - k];
    if (rows - 2 >= k) drift = std::max(drift, (factor[k] - L[rows - 2][m - k]).cwiseAbs().maxCoeff());
  }
  return true;
}

/// One Gauss-Newton sweep on the coefficient equations
/// sum_l P_{k+l} P_l^* = Q_k, k = 0..m. The system is real-linear in the
/// update; a least-squares solve absorbs the constant-unitary gauge freedom.
inline bool newton_sweep_circle(const TrigMatPoly& q, std::vector<CMat>& p) {
  int m = static_cast<int>(p.size()) - 1;
  int d = static_cast<int>(p[0].rows());
  int nuc = d * d * (m + 1);  // complex unknowns

  auto apply = [&](const std::vector<CMat>& dp, std::vector<CMat>& out) {
    out.assign(m + 1, CMat::Zero(d, d));
    for (int k = 0; k <= m; ++k)
      for (int l = 0; k + l <= m; ++l)
        out[k] += dp[k + l] * p[l].adjoint() + p[k + l] * dp[l].adjoint();
  };

  std::vector<CMat> res(m + 1, CMat::Zero(d, d));
  for (int k = 0; k <= m; ++k) {
    for (int l = 0; k + l <= m; ++l) res[k] += p[k + l] * p[l].adjoint();
    res[k] -= q.coeff(k);
  }

  RVec rhs(2 * nuc);
  for (int k = 0; k <= m; ++k)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        int idx = (k * d + r) * d + c;
        rhs(idx) = -res[k](r, c).real();
        rhs(nuc + idx) = -res[k](r, c).imag();
      }

  RMat jac(2 * nuc, 2 * nuc);
  std::vector<CMat> basis(m + 1, CMat::Zero(d, d)), image;
  for (int j = 0; j <= m; ++j)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        for (int part = 0; part < 2; ++part) {
          basis[j](r, c) = part == 0 ? Complex(1, 0) : Complex(0, 1);
          apply(basis, image);
          basis[j](r, c) = Complex(0, 0);
          int col = part * nuc + (j * d + r) * d + c;
          for (int k = 0; k <= m; ++k)
            for (int rr = 0; rr < d; ++rr)
              for (int cc = 0; cc < d; ++cc) {
                int idx = (k * d + rr) * d + cc;
                jac(idx, col) = image[k](rr, cc).real();
                jac(nuc + idx, col) = image[k](rr, cc).imag();
              }
        }

  RVec x = jac.colPivHouseholderQr().solve(rhs);

  double res0 = 0.0;
  for (const auto& r : res) res0 = std::max(res0, r.cwiseAbs().maxCoeff());
  std::vector<CMat> trial(m + 1);
  for (double damp = 1.0; damp > 1.0 / 32; damp *= 0.5) {
    for (int j = 0; j <= m; ++j) {
      trial[j] = p[j];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          int idx = (j * d + r) * d + c;
          trial[j](r, c) += damp * Complex(x(idx), x(nuc + idx));
        }
    }
    double res1 = 0.0;
    for (int k = 0; k <= m; ++k) {
      CMat acc = CMat::Zero(d, d);
      for (int l = 0; k + l <= m; ++l) acc += trial[k + l] * trial[l].adjoint();
      res1 = std::max(res1, (acc - q.coeff(k)).cwiseAbs().maxCoeff());
    }
    if (res1 < res0) {
      p = trial;
      return true;
    }
  }
  return false;
}

inline double circle_residual(const TrigMatPoly& q, const std::vector<CMat>& p) {
  int m = static_cast<int>(p.size()) - 1;
  double res = 0.0;
  for (int k = 0; k <= m; ++k) {
    CMat acc = CMat::Zero(p[0].rows(), p[0].cols());
    for (int l = 0; k + l <= m; ++l) acc += p[k + l] * p[l].adjoint();
    res = std::max(res, (acc - q.coeff(k)).cwiseAbs().maxCoeff());
  }
  return res;
}

/// Bauer factorization with Gauss-Newton refinement. `allow_boundary` admits
/// symbols that are only semidefinite at isolated circle points (the line
/// backend's image of x = infinity); those are handled by a diagonal-shift
/// continuation ending with Newton on the unshifted equations.
inline std::vector<CMat> factor_trig_psd(const TrigMatPoly& q, double tol, bool allow_boundary,
                                         const MatPoly* warm = nullptr) {
  int m = std::max(1, q.band());
  double scale = std::max(1.0, q.max_abs());
  double target = std::min(1e-13 * scale, 0.1 * tol * scale);

  auto polish = [&](const TrigMatPoly& symbol, std::vector<CMat>& p, int sweeps) {
    for (int it = 0; it < sweeps; ++it) {
      if (circle_residual(symbol, p) <= target) break;
      if (!newton_sweep_circle(symbol, p)) break;
    }
  };

  std::vector<CMat> p;
  if (warm && warm->size() == q.size()) {
    p.assign(m + 1, CMat::Zero(q.size(), q.size()));
    for (int k = 0; k <= m; ++k) p[k] = warm->coeff(k);
    polish(q, p, 40);
    if (circle_residual(q, p) <= tol * scale) return p;
  }

  auto gc = circle_min_eig(q);
  std::vector<double> shifts;
  if (gc.min_eig > 1e-4 * scale) {
    shifts = {0.0};
  } else {
    double base = std::max(0.0, -gc.min_eig);
    shifts = {base + 1e-2 * scale, base + 1e-4 * scale, base + 1e-6 * scale, 0.0};
    if (!allow_boundary && gc.min_eig <= 0.0)
      fail(Err::NotPositiveDefinite, "symbol is not positive definite on the circle");
  }

  bool have = false;
  for (double delta : shifts) {
    TrigMatPoly qs = delta > 0.0 ? q.shifted(delta) : q;
    if (!have) {
      double drift = 0.0;
      int rows = 64 * m;
      for (int attempt = 0; attempt < 4; ++attempt) {
        if (!bauer_sweep(qs, rows, p, drift)) {
          rows *= 2;
          continue;
        }
        if (drift <= 1e-10 * scale) break;
        rows *= 2;
      }
      if (p.empty()) fail(Err::NotPositiveDefinite, "Toeplitz truncation is not positive definite");
      have = true;
    }
    polish(qs, p, 40);
  }
  return p;
}

inline std::vector<Complex> factor_det_roots(const MatPoly& p) {
  return roots(det_poly(p));
}

inline MatPoly gauge_right_polar(const MatPoly& p) {
  // right-multiply by a constant unitary so the constant coefficient becomes
  // Hermitian positive semidefinite
  CMat u = polar_unitary(p.coeff(0));
  std::vector<CMat> c(p.degree() + 1);
  for (int k = 0; k <= p.degree(); ++k) c[k] = p.coeff(k) * u.adjoint();
  return MatPoly(std::move(c));
}

}  // namespace detail

/// Spectral factorization on the circle: Q(z) = P(z) P(1/conj z)^* with P a
/// matrix polynomial of degree <= band(Q) and det P zero-free in the closed
/// unit disk. Requires Q strictly positive definite on the circle.
inline MatPoly specfact_circle(const TrigMatPoly& q, double tol = 1e-10, const MatPoly* warm = nullptr) {
  double scale = std::max(1.0, q.max_abs());
  auto gc = detail::circle_min_eig(q);
  if (gc.min_eig <= tol * scale)
    fail(Err::NotPositiveDefinite,
         "min circle eigenvalue " + std::to_string(gc.min_eig) + " at z = (" +
             std::to_string(gc.witness.real()) + ", " + std::to_string(gc.witness.imag()) + ")");

  auto p = detail::factor_trig_psd(q, tol, /*allow_boundary=*/false, warm);
  double res = detail::circle_residual(q, p);
  if (res > tol * scale) fail(Err::NoConvergence, "factor residual " + std::to_string(res));

  MatPoly factor = detail::gauge_right_polar(MatPoly(p));
  for (const auto& r : detail::factor_det_roots(factor))
    if (std::abs(r) <= 1.0 - 1e-8)
      fail(Err::NoConvergence, "factor determinant has a zero inside the closed disk");
  return factor;
}

namespace detail {

/// One Gauss-Newton sweep on sum_{a+b=k} Q_a^* Q_b = H_k, the line-side
/// coefficient equations.
inline bool newton_sweep_line(const MatPoly& h, std::vector<CMat>& qc) {
  int nu = static_cast<int>(qc.size()) - 1;
  int d = static_cast<int>(qc[0].rows());
  int deg = 2 * nu;
  int nuc = d * d * (nu + 1);

  auto residual = [&](const std::vector<CMat>& v, std::vector<CMat>& out) {
    out.assign(deg + 1, CMat::Zero(d, d));
    for (int a = 0; a <= nu; ++a)
      for (int b = 0; b <= nu; ++b) out[a + b] += v[a].adjoint() * v[b];
    for (int k = 0; k <= deg; ++k) out[k] -= h.coeff(k);
  };

  std::vector<CMat> res;
  residual(qc, res);

  int neq = d * d * (deg + 1);
  RVec rhs(2 * neq);
  for (int k = 0; k <= deg; ++k)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        int idx = (k * d + r) * d + c;
        rhs(idx) = -res[k](r, c).real();
        rhs(neq + idx) = -res[k](r, c).imag();
      }

  RMat jac = RMat::Zero(2 * neq, 2 * nuc);
  std::vector<CMat> basis(nu + 1, CMat::Zero(d, d));
  for (int j = 0; j <= nu; ++j)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        for (int part = 0; part < 2; ++part) {
          basis[j](r, c) = part == 0 ? Complex(1, 0) : Complex(0, 1);
          int col = part * nuc + (j * d + r) * d + c;
          for (int b = 0; b <= nu; ++b) {
            // d(Q_j^* Q_b) and d(Q_b^* Q_j) contributions at power j+b
            CMat t1 = basis[j].adjoint() * qc[b];
            CMat t2 = qc[b].adjoint() * basis[j];
            int k = j + b;
            for (int rr = 0; rr < d; ++rr)
              for (int cc = 0; cc < d; ++cc) {
                int idx = (k * d + rr) * d + cc;
                Complex v = t1(rr, cc) + t2(rr, cc);
                jac(idx, col) += v.real();
                jac(neq + idx, col) += v.imag();
              }
          }
          basis[j](r, c) = Complex(0, 0);
        }

  RVec x = jac.colPivHouseholderQr().solve(rhs);

  double res0 = 0.0;
  for (const auto& r : res) res0 = std::max(res0, r.cwiseAbs().maxCoeff());
  std::vector<CMat> trial(nu + 1), tres;
  for (double damp = 1.0; damp > 1.0 / 32; damp *= 0.5) {
    for (int j = 0; j <= nu; ++j) {
      trial[j] = qc[j];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          int idx = (j * d + r) * d + c;
          trial[j](r, c) += damp * Complex(x(idx), x(nuc + idx));
        }
    }
    residual(trial, tres);
    double res1 = 0.0;
    for (const auto& r : tres) res1 = std::max(res1, r.cwiseAbs().maxCoeff());
    if (res1 < res0) {
      qc = trial;
      return true;
    }
  }
  return false;
}

inline double line_residual(const MatPoly& h, const std::vector<CMat>& qc) {
  int nu = static_cast<int>(qc.size()) - 1;
  int d = static_cast<int>(qc[0].rows());
  std::vector<CMat> acc(2 * nu + 1, CMat::Zero(d, d));
  for (int a = 0; a <= nu; ++a)
    for (int b = 0; b <= nu; ++b) acc[a + b] += qc[a].adjoint() * qc[b];
  double res = 0.0;
  for (int k = 0; k < static_cast<int>(acc.size()); ++k)
    res = std::max(res, (acc[k] - h.coeff(k)).cwiseAbs().maxCoeff());
  return res;
}

}  // namespace detail

/// Spectral factorization on the real line: H(x) = Q(conj x)^* Q(x) as a
/// polynomial identity, deg Q = ceil(deg H / 2), and det Q zero-free in the
/// closed upper half-plane. H must have Hermitian coefficients and be positive
/// definite for real x (its leading coefficient may be singular).
///
/// The symbol is pulled to the unit circle through x = i(1-w)/(1+w), factored
/// there, and mapped back; w = -1 is the image of x = infinity, where inputs
/// with a singular leading coefficient degenerate, so the circle stage runs
/// with the boundary-tolerant continuation.
inline MatPoly specfact_line(const MatPoly& h, double tol = 1e-9) {
  int d = h.size();
  int dh = h.degree();
  double scale = std::max(1.0, h.max_abs());
  for (int k = 0; k <= dh; ++k)
    if ((h.coeff(k) - h.coeff(k).adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      fail(Err::InvalidArgument, "specfact_line needs Hermitian coefficients");
  int nu = (dh + 1) / 2;
  if (dh == 0) {
    Eigen::LLT<CMat> llt(h.coeff(0));
    if (llt.info() != Eigen::Success) fail(Err::NotPositiveDefiniteOnLine, "constant symbol not positive definite");
    return MatPoly::constant(CMat(llt.matrixL().adjoint()));
  }

  MatPoly ht = h.transpose_coeffs();

  // G_k z^k = (1+w)^nu (1+conj w)^nu HT(i(1-w)/(1+w)) on the circle
  std::vector<CMat> ghat(2 * nu + 1, CMat::Zero(d, d));
  for (int k = 0; k <= dh; ++k) {
    UniPoly c = UniPoly({Complex(1, 0)});
    for (int t = 0; t < k; ++t) c = c * UniPoly({Complex(1, 0), Complex(-1, 0)});
    for (int t = 0; t < 2 * nu - k; ++t) c = c * UniPoly({Complex(1, 0), Complex(1, 0)});
    Complex ik = ipow(Complex(0, 1), k);
    for (int t = 0; t <= c.degree(); ++t) ghat[t] += (ik * c.coeff(t)) * ht.coeff(k);
  }
  std::vector<CMat> gpos(nu + 1);
  for (int k = 0; k <= nu; ++k) gpos[k] = ghat[nu + k];
  TrigMatPoly g(std::move(gpos), /*check=*/false);

  // positive definiteness of H on the line, sampled through the circle grid
  {
    double worst = std::numeric_limits<double>::infinity();
    double worst_x = 0.0;
    for (int j = 0; j < 512; ++j) {
      double t = 2.0 * kPi * (j + 0.5) / 512.0;
      double x = std::tan(0.5 * t);
      if (!std::isfinite(x) || std::abs(x) > 1e12) continue;
      CMat hv = h.eval(Complex(x, 0));
      double lo = detail::eig_min(hv);
      double loc = std::max(1.0, hv.cwiseAbs().maxCoeff());
      if (lo / loc < worst) {
        worst = lo / loc;
        worst_x = x;
      }
    }
    if (worst <= 1e-12)
      fail(Err::NotPositiveDefiniteOnLine, "H not positive definite near x = " + std::to_string(worst_x));
  }

  auto pf = detail::factor_trig_psd(g, tol, /*allow_boundary=*/true);

  // map the circle factor back: Qhat(x) = sum_j P_j (i-x)^j (i+x)^{nu-j}
  std::vector<CMat> qhat(nu + 1, CMat::Zero(d, d));
  for (int j = 0; j <= nu && j < static_cast<int>(pf.size()); ++j) {
    UniPoly c = UniPoly({Complex(1, 0)});
    for (int t = 0; t < j; ++t) c = c * UniPoly({Complex(0, 1), Complex(-1, 0)});
    for (int t = 0; t < nu - j; ++t) c = c * UniPoly({Complex(0, 1), Complex(1, 0)});
    for (int t = 0; t <= c.degree() && t <= nu; ++t) qhat[t] += c.coeff(t) * pf[j];
  }
  double half = std::pow(2.0, -nu);
  std::vector<CMat> qc(nu + 1);
  for (int k = 0; k <= nu; ++k) qc[k] = half * qhat[k].transpose();

  for (int it = 0; it < 40; ++it) {
    if (detail::line_residual(h, qc) <= std::min(1e-13 * scale, 0.1 * tol * scale)) break;
    if (!detail::newton_sweep_line(h, qc)) break;
  }

  double res = detail::line_residual(h, qc);
  if (res > tol * scale) fail(Err::NoConvergence, "line factor residual " + std::to_string(res));

  MatPoly q = MatPoly(qc);
  if (q.degree() != nu) fail(Err::NoConvergence, "line factor degree dropped below ceil(deg H / 2)");

  // left constant-unitary gauge: Q(0) Hermitian positive definite
  CMat u = polar_unitary(q.coeff(0));
  std::vector<CMat> qg(q.degree() + 1);
  for (int k = 0; k <= q.degree(); ++k) qg[k] = u.adjoint() * q.coeff(k);
  q = MatPoly(std::move(qg));

  for (const auto& r : detail::factor_det_roots(q))
    if (r.imag() >= 1e-7)
      fail(Err::NoConvergence, "line factor determinant has a zero in the closed upper half-plane");
  return q;
}

}  // namespace detrep

#endif  // DETREP_SPECFACT_HPP
