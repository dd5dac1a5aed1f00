#ifndef DETREP_MATPOLY_HPP
#define DETREP_MATPOLY_HPP

#include <utility>
#include <vector>

#include "detrep/base.hpp"
#include "detrep/unipoly.hpp"

namespace detrep {

/// Matrix-valued polynomial, coeff(k) multiplying z^k; all coefficients d x d.
class MatPoly {
 public:
  MatPoly() : d_(0) {}
  explicit MatPoly(std::vector<CMat> c) : c_(std::move(c)) {
    if (c_.empty()) fail(Err::InvalidArgument, "MatPoly needs at least one coefficient");
    d_ = static_cast<int>(c_[0].rows());
    for (const auto& m : c_)
      if (m.rows() != d_ || m.cols() != d_) fail(Err::InvalidArgument, "MatPoly coefficient sizes differ");
    trim();
  }

  static MatPoly constant(CMat m) { return MatPoly(std::vector<CMat>{std::move(m)}); }
  static MatPoly identity(int d) { return constant(CMat::Identity(d, d)); }

  int size() const { return d_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  CMat coeff(int k) const {
    return (k >= 0 && k <= degree()) ? c_[k] : CMat::Zero(d_, d_);
  }
  const std::vector<CMat>& coeffs() const { return c_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& a : c_) m = std::max(m, a.cwiseAbs().maxCoeff());
    return m;
  }

  CMat eval(Complex z) const {
    CMat acc = CMat::Zero(d_, d_);
    for (int k = degree(); k >= 0; --k) acc = z * acc + c_[k];
    return acc;
  }

  /// Coefficient-wise adjoint with reversed powers: sum_k coeff(k)^* z^{-k},
  /// returned as the coefficient list of the z^{-k} terms (index k).
  MatPoly star_coeffs() const {
    std::vector<CMat> d(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) d[k] = c_[k].adjoint();
    return MatPoly(std::move(d));
  }

  /// Evaluation of sum_k coeff(k)^* z^{-k}.
  CMat eval_star(Complex z) const {
    CMat acc = CMat::Zero(d_, d_);
    Complex zi = Complex(1, 0) / z;
    for (int k = degree(); k >= 0; --k) acc = zi * acc + c_[k].adjoint();
    return acc;
  }

  MatPoly transpose_coeffs() const {
    std::vector<CMat> d(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) d[k] = c_[k].transpose();
    return MatPoly(std::move(d));
  }

  MatPoly scaled_argument(Complex s) const {
    std::vector<CMat> d(c_.size());
    Complex pw(1, 0);
    for (size_t k = 0; k < c_.size(); ++k) {
      d[k] = c_[k] * pw;
      pw *= s;
    }
    return MatPoly(std::move(d));
  }

  friend MatPoly operator*(const MatPoly& a, const MatPoly& b) {
    std::vector<CMat> d(a.degree() + b.degree() + 1, CMat::Zero(a.d_, a.d_));
    for (int i = 0; i <= a.degree(); ++i)
      for (int j = 0; j <= b.degree(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return MatPoly(std::move(d));
  }
  friend MatPoly operator+(const MatPoly& a, const MatPoly& b) {
    std::vector<CMat> d(std::max(a.degree(), b.degree()) + 1, CMat::Zero(a.d_, a.d_));
    for (size_t k = 0; k < d.size(); ++k) d[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return MatPoly(std::move(d));
  }
  friend MatPoly operator-(const MatPoly& a, const MatPoly& b) {
    std::vector<CMat> d(std::max(a.degree(), b.degree()) + 1, CMat::Zero(a.d_, a.d_));
    for (size_t k = 0; k < d.size(); ++k) d[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
    return MatPoly(std::move(d));
  }

 private:
  void trim() {
    double cut = max_abs() * kTrimTol;
    size_t n = c_.size();
    while (n > 1 && c_[n - 1].cwiseAbs().maxCoeff() <= cut) --n;
    c_.resize(n);
  }

  std::vector<CMat> c_;
  int d_;
};

/// det of a matrix polynomial as a scalar polynomial, by sampling on roots of
/// unity and interpolating.
inline UniPoly det_poly(const MatPoly& p) {
  int bound = p.degree() * p.size();
  int n = bound + 1;
  std::vector<Complex> vals(n);
  for (int j = 0; j < n; ++j) vals[j] = p.eval(unit_root(n, j)).determinant();
  return UniPoly(idft(vals));
}

/// Laurent matrix polynomial with Hermitian coefficient symmetry
/// coeff(-k) = coeff(k)^*; values are Hermitian on the unit circle.
class TrigMatPoly {
 public:
  TrigMatPoly() : m_(0), d_(0) {}

  /// nonneg[k] is the coefficient of z^k for k = 0..band; negative powers are
  /// filled in by Hermitian symmetry, and nonneg[0] is Hermitian-projected.
  TrigMatPoly(std::vector<CMat> nonneg, bool check = true) {
    if (nonneg.empty()) fail(Err::InvalidArgument, "TrigMatPoly needs coefficients");
    d_ = static_cast<int>(nonneg[0].rows());
    m_ = static_cast<int>(nonneg.size()) - 1;
    double scale = 0.0;
    for (const auto& a : nonneg) scale = std::max(scale, a.cwiseAbs().maxCoeff());
    double herm = (nonneg[0] - nonneg[0].adjoint()).cwiseAbs().maxCoeff();
    if (check && scale > 0 && herm > 1e-10 * scale)
      fail(Err::InvalidArgument, "constant coefficient is not Hermitian");
    nonneg[0] = 0.5 * (nonneg[0] + nonneg[0].adjoint()).eval();
    c_ = std::move(nonneg);
  }

  int band() const { return m_; }
  int size() const { return d_; }

  CMat coeff(int k) const {
    int a = std::abs(k);
    if (a > m_) return CMat::Zero(d_, d_);
    return k >= 0 ? c_[a] : CMat(c_[a].adjoint());
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& a : c_) m = std::max(m, a.cwiseAbs().maxCoeff());
    return m;
  }

  /// Value at a point of the unit circle (Hermitian up to roundoff).
  CMat eval_circle(Complex z) const {
    CMat acc = c_[0];
    Complex pw(1, 0);
    for (int k = 1; k <= m_; ++k) {
      pw *= z;
      CMat t = c_[k] * pw;
      acc = acc + t + t.adjoint();
    }
    return acc;
  }

  TrigMatPoly shifted(double delta) const {  // Q + delta * I
    std::vector<CMat> c = c_;
    c[0] += delta * CMat::Identity(d_, d_);
    return TrigMatPoly(std::move(c), false);
  }

 private:
  std::vector<CMat> c_;  // k = 0..m_
  int m_, d_;
};

/// Truncated power series helpers (coefficient lists of matrix series).

inline std::vector<CMat> series_mul(const std::vector<CMat>& a, const std::vector<CMat>& b, int order) {
  int d = static_cast<int>(a[0].rows());
  std::vector<CMat> out(order + 1, CMat::Zero(d, d));
  for (int i = 0; i < static_cast<int>(a.size()) && i <= order; ++i)
    for (int j = 0; j < static_cast<int>(b.size()) && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Series inverse of P, requiring P(0) invertible.
inline std::vector<CMat> series_inverse(const MatPoly& p, int order) {
  int d = p.size();
  Eigen::PartialPivLU<CMat> lu(p.coeff(0));
  double rcond = 1.0;
  {
    double det = std::abs(lu.determinant());
    if (!(det > 0) || !std::isfinite(det)) fail(Err::SingularP0, "constant coefficient is singular");
    (void)rcond;
  }
  std::vector<CMat> x(order + 1, CMat::Zero(d, d));
  x[0] = lu.solve(CMat::Identity(d, d));
  for (int k = 1; k <= order; ++k) {
    CMat acc = CMat::Zero(d, d);
    for (int j = 1; j <= std::min(k, p.degree()); ++j) acc += p.coeff(j) * x[k - j];
    x[k] = -x[0] * acc;
  }
  return x;
}

}  // namespace detrep

#endif  // DETREP_MATPOLY_HPP
