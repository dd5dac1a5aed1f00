#ifndef DETREP_BIPOLY_HPP
#define DETREP_BIPOLY_HPP

#include <utility>
#include <vector>

#include "detrep/base.hpp"
#include "detrep/unipoly.hpp"

namespace detrep {

/// Bivariate polynomial stored as a coefficient grid, entry (i, j) multiplying
/// z1^i z2^j. The bidegree is the structural one: rows/columns whose largest
/// entry falls below kTrimTol relative to the grid maximum are trimmed.
class BiPoly {
 public:
  BiPoly() : g_(CMat::Zero(1, 1)) {}
  explicit BiPoly(CMat grid) : g_(std::move(grid)) {
    if (g_.rows() == 0 || g_.cols() == 0) g_ = CMat::Zero(1, 1);
    trim();
  }

  static BiPoly constant(Complex a) {
    CMat g(1, 1);
    g(0, 0) = a;
    return BiPoly(g);
  }

  int deg1() const { return static_cast<int>(g_.rows()) - 1; }
  int deg2() const { return static_cast<int>(g_.cols()) - 1; }
  std::pair<int, int> bidegree() const { return {deg1(), deg2()}; }
  bool is_constant() const { return deg1() == 0 && deg2() == 0; }

  Complex coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > deg1() || j > deg2()) return Complex(0, 0);
    return g_(i, j);
  }
  const CMat& grid() const { return g_; }

  double max_abs() const { return g_.cwiseAbs().maxCoeff(); }

  /// Nested Horner: inner in z2 along each row, outer in z1.
  Complex eval(Complex z1, Complex z2) const {
    Complex acc(0, 0);
    for (int i = deg1(); i >= 0; --i) {
      Complex row(0, 0);
      for (int j = deg2(); j >= 0; --j) row = row * z2 + g_(i, j);
      acc = acc * z1 + row;
    }
    return acc;
  }

  BiPoly scaled(Complex s1, Complex s2) const {  // p(s1*z1, s2*z2)
    CMat g = g_;
    Complex p1(1, 0);
    for (int i = 0; i <= deg1(); ++i) {
      Complex p2(1, 0);
      for (int j = 0; j <= deg2(); ++j) {
        g(i, j) *= p1 * p2;
        p2 *= s2;
      }
      p1 *= s1;
    }
    return BiPoly(g);
  }

  BiPoly swapped() const { return BiPoly(g_.transpose()); }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    CMat g = CMat::Zero(std::max(a.g_.rows(), b.g_.rows()), std::max(a.g_.cols(), b.g_.cols()));
    g.topLeftCorner(a.g_.rows(), a.g_.cols()) = a.g_;
    g.topLeftCorner(b.g_.rows(), b.g_.cols()) += b.g_;
    return BiPoly(g);
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    CMat g = CMat::Zero(std::max(a.g_.rows(), b.g_.rows()), std::max(a.g_.cols(), b.g_.cols()));
    g.topLeftCorner(a.g_.rows(), a.g_.cols()) = a.g_;
    g.topLeftCorner(b.g_.rows(), b.g_.cols()) -= b.g_;
    return BiPoly(g);
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    CMat g = CMat::Zero(a.g_.rows() + b.g_.rows() - 1, a.g_.cols() + b.g_.cols() - 1);
    for (int i = 0; i <= a.deg1(); ++i)
      for (int j = 0; j <= a.deg2(); ++j)
        if (std::abs(a.g_(i, j)) != 0.0) g.block(i, j, b.g_.rows(), b.g_.cols()) += a.g_(i, j) * b.g_;
    return BiPoly(g);
  }
  friend BiPoly operator*(Complex s, const BiPoly& a) { return BiPoly(CMat(s * a.g_)); }

 private:
  void trim() {
    double cut = g_.cwiseAbs().maxCoeff() * kTrimTol;
    int r = static_cast<int>(g_.rows());
    int c = static_cast<int>(g_.cols());
    while (r > 1 && g_.row(r - 1).cwiseAbs().maxCoeff() <= cut) --r;
    while (c > 1 && g_.block(0, c - 1, r, 1).cwiseAbs().maxCoeff() <= cut) --c;
    if (r != g_.rows() || c != g_.cols()) g_ = CMat(g_.topLeftCorner(r, c));
  }

  CMat g_;
};

inline Complex eval_bi(const BiPoly& p, Complex z1, Complex z2) { return p.eval(z1, z2); }

/// z^{deg p} * conj(p)(1/z): the grid conjugated and flipped in both indices.
inline BiPoly reverse(const BiPoly& p) {
  int n1 = p.deg1(), n2 = p.deg2();
  CMat g(n1 + 1, n2 + 1);
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j <= n2; ++j) g(i, j) = std::conj(p.coeff(n1 - i, n2 - j));
  return BiPoly(g);
}

/// Expansion p(z1, z2) = sum_j p_j(z1) z2^j.
inline std::vector<UniPoly> coeffs_in_z2(const BiPoly& p) {
  std::vector<UniPoly> out;
  out.reserve(p.deg2() + 1);
  for (int j = 0; j <= p.deg2(); ++j) {
    std::vector<Complex> c(p.deg1() + 1);
    for (int i = 0; i <= p.deg1(); ++i) c[i] = p.coeff(i, j);
    out.emplace_back(std::move(c));
  }
  return out;
}

/// Build a bivariate polynomial from its z2-expansion.
inline BiPoly from_coeffs_in_z2(const std::vector<UniPoly>& pj) {
  int n2 = static_cast<int>(pj.size()) - 1;
  int n1 = 0;
  for (const auto& q : pj) n1 = std::max(n1, q.degree());
  CMat g = CMat::Zero(n1 + 1, n2 + 1);
  for (int j = 0; j <= n2; ++j)
    for (int i = 0; i <= pj[j].degree(); ++i) g(i, j) = pj[j].coeff(i);
  return BiPoly(g);
}

inline UniPoly slice_z1(const BiPoly& p, Complex z1) {  // z2 -> p(z1, z2)
  std::vector<Complex> c(p.deg2() + 1);
  for (int j = 0; j <= p.deg2(); ++j) {
    Complex acc(0, 0);
    for (int i = p.deg1(); i >= 0; --i) acc = acc * z1 + p.coeff(i, j);
    c[j] = acc;
  }
  return UniPoly(std::move(c));
}

inline UniPoly slice_z2(const BiPoly& p, Complex z2) {  // z1 -> p(z1, z2)
  std::vector<Complex> c(p.deg1() + 1);
  for (int i = 0; i <= p.deg1(); ++i) {
    Complex acc(0, 0);
    for (int j = p.deg2(); j >= 0; --j) acc = acc * z2 + p.coeff(i, j);
    c[i] = acc;
  }
  return UniPoly(std::move(c));
}

}  // namespace detrep

#endif  // DETREP_BIPOLY_HPP
