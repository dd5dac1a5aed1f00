#ifndef DETREP_TESTS_SUPPORT_HPP
#define DETREP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <vector>

#include "detrep/bidisk.hpp"
#include "detrep/realzero.hpp"

namespace testsupport {

using detrep::BiPoly;
using detrep::CMat;
using detrep::Complex;
using detrep::RMat;
using detrep::Rng;
using detrep::UniPoly;

inline BiPoly bipoly(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMat g(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const auto& v : row) g(i, j++) = v;
    ++i;
  }
  return BiPoly(g);
}

inline detrep::RealBiPoly realbipoly(std::initializer_list<std::initializer_list<double>> rows) {
  RMat g(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const auto& v : row) g(i, j++) = v;
    ++i;
  }
  return detrep::RealBiPoly(g);
}

// 1 + 0.3 z1 + 0.5 z2 (the two-term running example)
inline BiPoly two_term_example(double a = 0.3, double b = 0.5) {
  return bipoly({{1.0, b}, {a, 0.0}});
}

// 1 - z1 z2 - z1^2/2 - z2^2/2 + z1^2 z2^2 (the self-reversive example)
inline BiPoly self_reversive_example() {
  return bipoly({{1.0, 0.0, -0.5}, {0.0, -1.0, 0.0}, {-0.5, 0.0, 1.0}});
}

// 1 + 4x + 10y - x^2 - 2xy - y^2 (the real-zero example)
inline detrep::RealBiPoly real_zero_example() {
  return realbipoly({{1, 10, -1}, {4, -2, 0}, {-1, 0, 0}});
}

inline CMat random_ginibre(int rows, int cols, Rng& rng) {
  CMat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cnormal();
  return g;
}

inline CMat random_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<CMat> qr(random_ginibre(n, n, rng));
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline CMat random_contraction(int n, Rng& rng, double norm_cap) {
  CMat g = random_ginibre(n, n, rng);
  return g * (norm_cap / detrep::operator_norm(g));
}

inline CMat random_hermitian(int n, Rng& rng, double scale = 1.0) {
  CMat g = random_ginibre(n, n, rng);
  CMat h = 0.5 * (g + g.adjoint());
  return h * (scale / std::max(1.0, detrep::operator_norm(h)));
}

// random matrix polynomial of the given degree whose determinant has all its
// zeros outside the closed unit disk (spectral shift of a random draw)
inline detrep::MatPoly random_outer_circle(int d, int deg, Rng& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<CMat> c(deg + 1);
    for (int k = 0; k <= deg; ++k) c[k] = random_ginibre(d, d, rng);
    c[0] += 2.0 * CMat::Identity(d, d);  // keep the constant coefficient well-conditioned
    detrep::MatPoly p(std::move(c));
    auto rs = detrep::roots(detrep::det_poly(p));
    double rmin = 1e30;
    for (const auto& r : rs) rmin = std::min(rmin, std::abs(r));
    if (rs.empty() || rmin > 1.2) return p;
    double shrink = 0.7 * rmin;
    std::vector<CMat> sc(deg + 1);
    Complex pw(1, 0);
    for (int k = 0; k <= deg; ++k) {
      sc[k] = p.coeff(k) * pw;
      pw *= Complex(shrink, 0);
    }
    detrep::MatPoly q(std::move(sc));
    rs = detrep::roots(detrep::det_poly(q));
    rmin = 1e30;
    for (const auto& r : rs) rmin = std::min(rmin, std::abs(r));
    if (rs.empty() || rmin > 1.05) return q;
  }
  return detrep::MatPoly::identity(d);
}

// random matrix polynomial with det zeros in the open lower half-plane
inline detrep::MatPoly random_outer_line(int d, int deg, Rng& rng) {
  for (int attempt = 0; attempt < 80; ++attempt) {
    std::vector<CMat> c(deg + 1);
    for (int k = 0; k <= deg; ++k) c[k] = random_ginibre(d, d, rng);
    c[0] += 2.0 * CMat::Identity(d, d);
    detrep::MatPoly p(std::move(c));
    auto rs = detrep::roots(detrep::det_poly(p));
    bool ok = true;
    for (const auto& r : rs) ok = ok && r.imag() < -1e-3;
    if (ok) return p;
    // reflect offending zeros by a diagonal shift downward
    std::vector<CMat> sc(deg + 1);
    for (int k = 0; k <= deg; ++k) {
      sc[k] = CMat::Zero(d, d);
      // substitute x -> x - 2i: shifts all roots down by 2
      for (int j = k; j <= deg; ++j) {
        double binom = 1.0;
        for (int t = 0; t < j - k; ++t) binom = binom * (j - t) / (t + 1.0);
        sc[k] += p.coeff(j) * binom * detrep::ipow(Complex(0, -2), j - k);
      }
    }
    detrep::MatPoly q(std::move(sc));
    rs = detrep::roots(detrep::det_poly(q));
    ok = true;
    for (const auto& r : rs) ok = ok && r.imag() < -1e-3;
    if (ok) return q;
  }
  return detrep::MatPoly::identity(d);
}

inline bool multiset_close(std::vector<double> a, std::vector<double> b, double tol) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

inline bool cmultiset_close(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    double best = 1e300;
    size_t arg = 0;
    for (size_t i = 0; i < b.size(); ++i)
      if (std::abs(b[i] - x) < best) {
        best = std::abs(b[i] - x);
        arg = i;
      }
    if (best > tol) return false;
    b.erase(b.begin() + arg);
  }
  return true;
}

inline std::vector<Complex> eigenvalues_of(const CMat& k) {
  Eigen::ComplexEigenSolver<CMat> es(k, false);
  return std::vector<Complex>(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
}

}  // namespace testsupport

#endif  // DETREP_TESTS_SUPPORT_HPP
