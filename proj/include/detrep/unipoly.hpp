#ifndef DETREP_UNIPOLY_HPP
#define DETREP_UNIPOLY_HPP

#include <algorithm>
#include <initializer_list>
#include <vector>

#include <Eigen/Eigenvalues>

#include "detrep/base.hpp"

namespace detrep {

/// Univariate polynomial with complex coefficients, coeff(k) multiplying z^k.
/// Trailing coefficients below kTrimTol (relative to the largest magnitude)
/// are trimmed, which defines the structural degree.
class UniPoly {
 public:
  UniPoly() : c_(1, Complex(0, 0)) {}
  explicit UniPoly(std::vector<Complex> c) : c_(std::move(c)) {
    if (c_.empty()) c_.assign(1, Complex(0, 0));
    trim();
  }
  UniPoly(std::initializer_list<Complex> c) : UniPoly(std::vector<Complex>(c)) {}

  static UniPoly zero() { return UniPoly(); }
  static UniPoly one() { return UniPoly({Complex(1, 0)}); }
  static UniPoly monomial(int k, Complex a = Complex(1, 0)) {
    std::vector<Complex> c(k + 1, Complex(0, 0));
    c[k] = a;
    return UniPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Complex coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex(0, 0);
  }
  const std::vector<Complex>& coeffs() const { return c_; }

  bool is_zero(double tol = 0.0) const {
    return degree() == 0 && std::abs(c_[0]) <= tol;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& a : c_) m = std::max(m, std::abs(a));
    return m;
  }

  Complex eval(Complex z) const {
    Complex acc(0, 0);
    for (int k = degree(); k >= 0; --k) acc = acc * z + c_[k];
    return acc;
  }

  UniPoly derivative() const {
    if (degree() == 0) return zero();
    std::vector<Complex> d(degree());
    for (int k = 1; k <= degree(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return UniPoly(std::move(d));
  }

  UniPoly conj() const {
    std::vector<Complex> d(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) d[k] = std::conj(c_[k]);
    return UniPoly(std::move(d));
  }

  /// z^{deg} * conj-poly evaluated at 1/z: the coefficient sequence reversed
  /// and conjugated.
  UniPoly reversed() const {
    std::vector<Complex> d(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) d[k] = std::conj(c_[c_.size() - 1 - k]);
    return UniPoly(std::move(d));
  }

  UniPoly scaled_argument(Complex s) const {  // p(s*z)
    std::vector<Complex> d(c_.size());
    Complex pw(1, 0);
    for (size_t k = 0; k < c_.size(); ++k) {
      d[k] = c_[k] * pw;
      pw *= s;
    }
    return UniPoly(std::move(d));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Complex> d(std::max(a.c_.size(), b.c_.size()), Complex(0, 0));
    for (size_t k = 0; k < d.size(); ++k) d[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return UniPoly(std::move(d));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Complex> d(std::max(a.c_.size(), b.c_.size()), Complex(0, 0));
    for (size_t k = 0; k < d.size(); ++k) d[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
    return UniPoly(std::move(d));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    std::vector<Complex> d(a.c_.size() + b.c_.size() - 1, Complex(0, 0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(d));
  }
  friend UniPoly operator*(Complex s, const UniPoly& a) {
    std::vector<Complex> d(a.c_.size());
    for (size_t k = 0; k < d.size(); ++k) d[k] = s * a.c_[k];
    return UniPoly(std::move(d));
  }

 private:
  void trim() {
    double m = 0.0;
    for (const auto& a : c_) m = std::max(m, std::abs(a));
    double cut = m * kTrimTol;
    size_t n = c_.size();
    while (n > 1 && std::abs(c_[n - 1]) <= cut) --n;
    c_.resize(n);
  }

  std::vector<Complex> c_;
};

/// Roots via balanced companion-matrix eigenvalues. Degree-0 input has none.
inline std::vector<Complex> roots(const UniPoly& p) {
  int n = p.degree();
  if (n == 0) return {};
  CMat c = CMat::Zero(n, n);
  Complex lead = p.coeff(n);
  for (int k = 0; k < n; ++k) c(k, n - 1) = -p.coeff(k) / lead;
  for (int k = 1; k < n; ++k) c(k, k - 1) = Complex(1, 0);
  Eigen::ComplexEigenSolver<CMat> es(c, /*computeEigenvectors=*/false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

/// Monic polynomial with the given roots, scaled by lead.
inline UniPoly from_roots(const std::vector<Complex>& rs, Complex lead = Complex(1, 0)) {
  UniPoly p({lead});
  for (const auto& r : rs) p = p * UniPoly({-r, Complex(1, 0)});
  return p;
}

}  // namespace detrep

#endif  // DETREP_UNIPOLY_HPP
