#ifndef DETREP_REALZERO_HPP
#define DETREP_REALZERO_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "detrep/specfact.hpp"

namespace detrep {

/// Bivariate polynomial with real coefficients, graded by total degree.
class RealBiPoly {
 public:
  RealBiPoly() : g_(RMat::Zero(1, 1)) { recompute(); }
  explicit RealBiPoly(RMat grid) : g_(std::move(grid)) {
    if (g_.rows() == 0 || g_.cols() == 0) g_ = RMat::Zero(1, 1);
    trim();
    recompute();
  }

  int total_degree() const { return d_; }
  int deg1() const { return static_cast<int>(g_.rows()) - 1; }
  int deg2() const { return static_cast<int>(g_.cols()) - 1; }
  const RMat& grid() const { return g_; }
  double coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > deg1() || j > deg2()) return 0.0;
    return g_(i, j);
  }
  double max_abs() const { return g_.cwiseAbs().maxCoeff(); }

  double eval(double x1, double x2) const {
    double acc = 0.0;
    for (int i = deg1(); i >= 0; --i) {
      double row = 0.0;
      for (int j = deg2(); j >= 0; --j) row = row * x2 + g_(i, j);
      acc = acc * x1 + row;
    }
    return acc;
  }

  /// Univariate restriction t -> p(t c, t s), monic-free coefficient list by
  /// total-degree layer.
  UniPoly direction(double c, double s) const {
    std::vector<Complex> a(d_ + 1, Complex(0, 0));
    for (int i = 0; i <= deg1(); ++i)
      for (int j = 0; j <= deg2(); ++j)
        if (i + j <= d_) a[i + j] += g_(i, j) * std::pow(c, i) * std::pow(s, j);
    return UniPoly(std::move(a));
  }

  friend RealBiPoly operator+(const RealBiPoly& a, const RealBiPoly& b) {
    RMat g = RMat::Zero(std::max(a.g_.rows(), b.g_.rows()), std::max(a.g_.cols(), b.g_.cols()));
    g.topLeftCorner(a.g_.rows(), a.g_.cols()) = a.g_;
    g.topLeftCorner(b.g_.rows(), b.g_.cols()) += b.g_;
    return RealBiPoly(g);
  }

 private:
  void trim() {
    double cut = g_.cwiseAbs().maxCoeff() * kTrimTol;
    int r = static_cast<int>(g_.rows());
    int c = static_cast<int>(g_.cols());
    while (r > 1 && g_.row(r - 1).cwiseAbs().maxCoeff() <= cut) --r;
    while (c > 1 && g_.block(0, c - 1, r, 1).cwiseAbs().maxCoeff() <= cut) --c;
    if (r != g_.rows() || c != g_.cols()) g_ = RMat(g_.topLeftCorner(r, c));
  }
  void recompute() {
    double cut = g_.cwiseAbs().maxCoeff() * kTrimTol;
    d_ = 0;
    for (int i = 0; i <= deg1(); ++i)
      for (int j = 0; j <= deg2(); ++j)
        if (std::abs(g_(i, j)) > cut) d_ = std::max(d_, i + j);
  }

  RMat g_;
  int d_ = 0;
};

enum class RzBackend { hermite, bezoutian };

inline const char* to_string(RzBackend b) { return b == RzBackend::hermite ? "hermite" : "bezoutian"; }

/// Hermitian pencil representation p = det(I + x1 A1 + x2 A2).
struct RZRep {
  int d = 0;
  CMat A1, A2;
  double max_eval_error = 0.0;
  RzBackend backend = RzBackend::hermite;
};

struct RzOptions {
  double tol = 1e-6;
  std::uint64_t seed = 12345;
  double strictify_eps = 1e-7;
};

struct RealZeroCheck {
  bool flag = false;
  std::optional<std::array<double, 2>> witness;  // failing direction
};

inline Complex rz_pencil_eval(const CMat& a1, const CMat& a2, double x, double y) {
  CMat m = CMat::Identity(a1.rows(), a1.cols()) + x * a1 + y * a2;
  return m.determinant();
}

/// Samples random directions and checks that every zero of t -> p(t x1, t x2)
/// is real.
inline RealZeroCheck is_real_zero(const RealBiPoly& p, int trials = 64, std::uint64_t seed = 12345) {
  RealZeroCheck out;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    double phi = rng.uniform(0.0, kPi);
    double c = std::cos(phi), s = std::sin(phi);
    for (const auto& r : roots(p.direction(c, s))) {
      if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r.real()))) {
        out.flag = false;
        out.witness = {{c, s}};
        return out;
      }
    }
  }
  out.flag = true;
  return out;
}

/// p_1(x2), ..., p_d(x2) with t^d p(1/t, x2/t) = t^d + p_1 t^{d-1} + ... + p_d.
inline std::vector<UniPoly> pcheck_coeffs(const RealBiPoly& p) {
  int d = p.total_degree();
  if (d < 1) fail(Err::InvalidArgument, "pcheck_coeffs needs total degree >= 1");
  std::vector<UniPoly> out;
  out.reserve(d);
  for (int k = 1; k <= d; ++k) {
    std::vector<Complex> c(k + 1, Complex(0, 0));
    for (int j = 0; j <= k; ++j) c[j] = p.coeff(k - j, j);
    UniPoly pk(std::move(c));
    if (pk.degree() > k) fail(Err::DegreeViolation, "pcheck coefficient degree exceeds its index");
    out.push_back(std::move(pk));
  }
  return out;
}

/// Newton power sums from the coefficient polynomials, s_0 = d and
/// s_j = -j p_j - sum_{k<j} p_k s_{j-k} (p_k = 0 beyond d).
inline std::vector<UniPoly> newton_sums(const std::vector<UniPoly>& pj, int count) {
  int d = static_cast<int>(pj.size());
  std::vector<UniPoly> s(count + 1);
  s[0] = UniPoly({Complex(static_cast<double>(d), 0)});
  for (int j = 1; j <= count; ++j) {
    UniPoly acc = UniPoly::zero();
    if (j <= d) acc = Complex(-static_cast<double>(j), 0) * pj[j - 1];
    for (int k = 1; k < j; ++k)
      if (k <= d) acc = acc - pj[k - 1] * s[j - k];
    s[j] = acc;
  }
  return s;
}

namespace detail {

/// Companion matrix of t^d + p_1 t^{d-1} + ... + p_d as a matrix polynomial in
/// x2 (ones on the subdiagonal, negated coefficients in the last column).
inline MatPoly companion_pcheck(const std::vector<UniPoly>& pj) {
  int d = static_cast<int>(pj.size());
  int deg = 0;
  for (const auto& q : pj) deg = std::max(deg, q.degree());
  std::vector<CMat> c(deg + 1, CMat::Zero(d, d));
  for (int r = 1; r < d; ++r) c[0](r, r - 1) = Complex(1, 0);
  for (int r = 0; r < d; ++r) {
    const UniPoly& q = pj[d - 1 - r];  // row r gets -p_{d-r}
    for (int k = 0; k <= q.degree(); ++k) c[k](r, d - 1) = -q.coeff(k);
  }
  return MatPoly(std::move(c));
}

}  // namespace detail

/// Hankel matrix of Newton sums H(x2) = [s_{i+j}(x2)], positive definite on
/// the real line when the roots are real and simple; satisfies
/// C(x2)^T H(x2) = H(x2) C(x2) as a polynomial identity.
inline MatPoly hermite_matrix(const RealBiPoly& p) {
  int d = p.total_degree();
  auto pj = pcheck_coeffs(p);
  auto s = newton_sums(pj, 2 * d - 2);
  int deg = 0;
  for (const auto& q : s) deg = std::max(deg, q.degree());
  std::vector<CMat> h(deg + 1, CMat::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const UniPoly& q = s[i + j];
      for (int k = 0; k <= q.degree(); ++k) h[k](i, j) = q.coeff(k);
    }
  MatPoly hm(std::move(h));

  MatPoly c = detail::companion_pcheck(pj);
  MatPoly resid = c.transpose_coeffs() * hm - hm * c;
  if (resid.max_abs() > 1e-8 * std::max(1.0, hm.max_abs()))
    fail(Err::VerificationFailed, "Hermite matrix intertwining residual too large");
  return hm;
}

/// Directional derivative of the homogenization at (1, x0); interlaces p on
/// the component of the origin.
inline RealBiPoly renegar_derivative(const RealBiPoly& p, std::array<double, 2> x0 = {0.0, 0.0}) {
  int d = p.total_degree();
  for (int t = 0; t <= 64; ++t) {
    double u = static_cast<double>(t) / 64.0;
    if (p.eval(u * x0[0], u * x0[1]) <= 0.0)
      fail(Err::NotInComponent, "base point leaves the positivity component of the origin");
  }
  RMat g = RMat::Zero(std::max(p.deg1() + 1, 1), std::max(p.deg2() + 1, 1));
  for (int i = 0; i <= p.deg1(); ++i)
    for (int j = 0; j <= p.deg2(); ++j) {
      double a = p.coeff(i, j);
      if (a == 0.0) continue;
      g(i, j) += a * static_cast<double>(d - i - j);
      if (i >= 1) g(i - 1, j) += a * static_cast<double>(i) * x0[0];
      if (j >= 1) g(i, j - 1) += a * static_cast<double>(j) * x0[1];
    }
  return RealBiPoly(g);
}

namespace detail {

struct GapReport {
  bool real_ok = true;
  double min_gap = std::numeric_limits<double>::infinity();
};

inline void gap_of(const UniPoly& u, GapReport& rep) {
  auto rs = roots(u);
  std::vector<double> re;
  for (const auto& r : rs) {
    if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r.real()))) rep.real_ok = false;
    re.push_back(r.real());
  }
  std::sort(re.begin(), re.end());
  for (size_t i = 1; i < re.size(); ++i) {
    double gap = (re[i] - re[i - 1]) / (1.0 + std::abs(re[i]) + std::abs(re[i - 1]));
    rep.min_gap = std::min(rep.min_gap, gap);
  }
}

/// Minimal relative root gap over a direction sweep and a sweep of x2 charts.
inline GapReport strictness_gaps(const RealBiPoly& p) {
  GapReport rep;
  for (int t = 0; t < 64; ++t) {
    double phi = kPi * (t + 0.5) / 64.0;
    gap_of(p.direction(std::cos(phi), std::sin(phi)), rep);
  }
  auto pj = pcheck_coeffs(p);
  int d = p.total_degree();
  for (int t = 0; t < 64; ++t) {
    double x2 = std::tan(kPi * (t + 0.5) / 64.0 - kPi / 2.0);
    std::vector<Complex> c(d + 1);
    c[d] = Complex(1, 0);
    for (int k = 1; k <= d; ++k) c[d - k] = pj[k - 1].eval(Complex(x2, 0));
    gap_of(UniPoly(std::move(c)), rep);
  }
  return rep;
}

}  // namespace detail

/// Perturbs p within eps until every swept restriction has simple real roots;
/// already-strict inputs are returned unchanged.
inline RealBiPoly strictify(const RealBiPoly& p, double eps, std::uint64_t seed = 12345) {
  constexpr double kGapFloor = 1e-6;
  auto rep = detail::strictness_gaps(p);
  if (rep.real_ok && rep.min_gap > kGapFloor) return p;
  if (eps <= 0.0) fail(Err::StrictificationFailed, "no perturbation budget and input is not strict");

  Rng rng(seed);
  int d = p.total_degree();
  double mag = eps;
  for (int attempt = 0; attempt < 80; ++attempt) {
    RMat delta = RMat::Zero(p.deg1() + 1, p.deg2() + 1);
    double peak = 0.0;
    for (int i = 0; i <= p.deg1(); ++i)
      for (int j = 0; j <= p.deg2(); ++j)
        if (i + j > 0 && i + j <= d) {
          delta(i, j) = rng.normal();
          peak = std::max(peak, std::abs(delta(i, j)));
        }
    if (peak > 0) delta *= mag / peak;
    RealBiPoly q(RMat(p.grid() + delta.topLeftCorner(p.grid().rows(), p.grid().cols())));
    if (!is_real_zero(q, 32, seed + attempt + 1).flag) {
      mag *= 0.5;
      continue;
    }
    auto qrep = detail::strictness_gaps(q);
    if (qrep.real_ok && qrep.min_gap > kGapFloor) return q;
  }
  fail(Err::StrictificationFailed, "perturbation budget exhausted");
}

/// Bezoutian of t^d p(1/t, x2/t) and t^{d-1} q(1/t, x2/t) in the orientation
/// that is positive definite under strict interlacing:
/// (pcheck(t) qcheck(s) - pcheck(s) qcheck(t)) / (t - s) = sum b_ij t^i s^j.
inline MatPoly bezoutian_line(const RealBiPoly& p, const RealBiPoly& q) {
  int d = p.total_degree();
  if (q.total_degree() >= d) fail(Err::DegreeMismatch, "interlacer degree must be below deg p");
  // coefficient of t^k in pcheck / qcheck, as polynomials in x2
  std::vector<UniPoly> a(d + 1), c(d + 1);
  for (int k = 0; k <= d; ++k) {
    std::vector<Complex> av(d - k + 1, Complex(0, 0));
    for (int j = 0; j <= d - k; ++j) av[j] = p.coeff(d - k - j, j);
    a[k] = UniPoly(std::move(av));
    std::vector<Complex> cv(std::max(d - 1 - k, 0) + 1, Complex(0, 0));
    if (k <= d - 1)
      for (int j = 0; j <= d - 1 - k; ++j) cv[j] = q.coeff(d - 1 - k - j, j);
    c[k] = UniPoly(std::move(cv));
  }

  std::vector<std::vector<UniPoly>> b(d, std::vector<UniPoly>(d));
  int deg = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      UniPoly acc = UniPoly::zero();
      for (int w = 0; w <= std::min(i, j); ++w) {
        int v = i + j + 1 - w;
        if (v <= d) acc = acc + a[v] * c[w];
        if (v <= d - 1) acc = acc - a[w] * c[v];
      }
      b[i][j] = acc;
      deg = std::max(deg, acc.degree());
    }
  std::vector<CMat> bm(deg + 1, CMat::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k <= b[i][j].degree(); ++k) bm[k](i, j) = b[i][j].coeff(k);
  MatPoly out(std::move(bm));

  MatPoly comp = detail::companion_pcheck(pcheck_coeffs(p));
  MatPoly resid = comp * out - out * comp.transpose_coeffs();
  if (resid.max_abs() > 1e-8 * std::max(1.0, out.max_abs()))
    fail(Err::VerificationFailed, "Bezoutian intertwining residual too large");
  return out;
}

namespace detail {

inline CMat eval_m_hermite(const MatPoly& qf, const MatPoly& comp, double x) {
  CMat qv = qf.eval(Complex(x, 0));
  CMat cv = comp.eval(Complex(x, 0));
  return qv * cv * qv.partialPivLu().solve(CMat::Identity(qv.rows(), qv.cols()));
}

inline CMat eval_m_bezout(const MatPoly& pf, const MatPoly& comp, double x) {
  CMat pv = pf.eval(Complex(x, 0));
  CMat cv = comp.eval(Complex(x, 0));
  return pv.partialPivLu().solve(cv * pv);
}

}  // namespace detail

/// Hermitian pencil construction for a real-zero polynomial with p(0,0) = 1:
/// strictify, build H (Hermite route) or the Bezoutian with the Renegar
/// interlacer, spectral-factor on the line, conjugate the companion matrix,
/// and fit the resulting Hermitian-valued polynomial as -A1 - A2 x2.
inline RZRep represent_hermitian(const RealBiPoly& p, RzBackend backend = RzBackend::hermite,
                                 const RzOptions& opts = {}) {
  double scale = std::max(1.0, p.max_abs());
  if (std::abs(p.coeff(0, 0) - 1.0) > 1e-12 * scale)
    fail(Err::InvalidArgument, "represent_hermitian needs p(0,0) = 1");
  int d = p.total_degree();
  if (d < 1) fail(Err::InvalidArgument, "represent_hermitian needs total degree >= 1");
  auto rz = is_real_zero(p, 64, opts.seed);
  if (!rz.flag)
    fail(Err::NotRealZero, "p has nonreal zeros along direction (" +
                               std::to_string((*rz.witness)[0]) + ", " + std::to_string((*rz.witness)[1]) + ")");

  auto verify = [&](RZRep& rep) {
    double err = 0.0;
    for (int a = 0; a < 32; ++a)
      for (int b = 0; b < 32; ++b) {
        double x = -1.0 + 2.0 * (a + 0.5) / 32.0;
        double y = -1.0 + 2.0 * (b + 0.5) / 32.0;
        err = std::max(err, std::abs(rz_pencil_eval(rep.A1, rep.A2, x, y) - p.eval(x, y)));
      }
    rep.max_eval_error = err;
    if (err > opts.tol * scale) fail(Err::VerificationFailed, "pencil determinant error " + std::to_string(err));
  };

  if (d == 1) {
    RZRep rep;
    rep.d = 1;
    rep.A1 = CMat::Constant(1, 1, Complex(p.coeff(1, 0), 0));
    rep.A2 = CMat::Constant(1, 1, Complex(p.coeff(0, 1), 0));
    rep.backend = backend;
    verify(rep);
    return rep;
  }

  Error last(Err::NonLinearM, "unset");
  double eps = opts.strictify_eps;
  for (int attempt = 0; attempt < 3; ++attempt, eps *= 8.0) {
    RealBiPoly q = strictify(p, eps, opts.seed + 13 * attempt);
    try {
      auto pj = pcheck_coeffs(q);
      MatPoly comp = detail::companion_pcheck(pj);

      std::vector<double> samples;
      int m = 2 * d + 2;
      for (int t = 0; t < 2 * m; ++t) samples.push_back(std::cos(kPi * (t + 0.5) / (2 * m)));

      std::vector<CMat> mvals(samples.size());
      if (backend == RzBackend::hermite) {
        MatPoly h = hermite_matrix(q);
        MatPoly qf = specfact_line(h, 1e-9);
        for (size_t t = 0; t < samples.size(); ++t) mvals[t] = detail::eval_m_hermite(qf, comp, samples[t]);
      } else {
        RealBiPoly interlacer = renegar_derivative(q, {0.0, 0.0});
        MatPoly bz = bezoutian_line(q, interlacer);
        MatPoly qt = specfact_line(bz.transpose_coeffs(), 1e-9);
        MatPoly pf = qt.transpose_coeffs();
        for (size_t t = 0; t < samples.size(); ++t) mvals[t] = detail::eval_m_bezout(pf, comp, samples[t]);
      }

      double mscale = 1.0;
      for (const auto& mv : mvals) mscale = std::max(mscale, mv.cwiseAbs().maxCoeff());
      double herm = 0.0;
      for (const auto& mv : mvals) herm = std::max(herm, (mv - mv.adjoint()).cwiseAbs().maxCoeff());
      if (herm > 1e-7 * mscale)
        throw Error(Err::NonLinearM, "companion conjugation is not Hermitian on the line");

      // least-squares linear fit M(x) = -A1 - A2 x
      double sx = 0, sxx = 0;
      for (double x : samples) {
        sx += x;
        sxx += x * x;
      }
      double n = static_cast<double>(samples.size());
      double det = n * sxx - sx * sx;
      CMat m0 = CMat::Zero(d, d), m1 = CMat::Zero(d, d);
      for (size_t t = 0; t < samples.size(); ++t) {
        m0 += (sxx - sx * samples[t]) / det * mvals[t];
        m1 += (n * samples[t] - sx) / det * mvals[t];
      }
      double nonlin = 0.0;
      for (size_t t = 0; t < samples.size(); ++t)
        nonlin = std::max(nonlin, (mvals[t] - m0 - samples[t] * m1).cwiseAbs().maxCoeff());
      if (nonlin > 1e-6 * mscale) throw Error(Err::NonLinearM, "conjugated companion is not linear in x2");

      RZRep rep;
      rep.d = d;
      rep.backend = backend;
      rep.A1 = -0.5 * (m0 + m0.adjoint());
      rep.A2 = -0.5 * (m1 + m1.adjoint());
      if ((rep.A1 + m0).cwiseAbs().maxCoeff() + (rep.A2 + m1).cwiseAbs().maxCoeff() > 2e-7 * mscale)
        throw Error(Err::NonLinearM, "Hermitian projection moved the pencil too far");
      verify(rep);
      return rep;
    } catch (const Error& e) {
      if (e.code() != Err::NonLinearM && e.code() != Err::NoConvergence && e.code() != Err::VerificationFailed)
        throw;
      last = e;
    }
  }
  throw last;
}

/// Remark-style conversion of a 2x2 Hermitian pencil to a real symmetric one.
inline RZRep realsym_2x2(const RZRep& rep) {
  if (rep.d != 2) fail(Err::NotSize2, "real symmetric conversion is for d = 2");
  Eigen::SelfAdjointEigenSolver<CMat> es(rep.A1);
  CMat u = es.eigenvectors();
  CMat a2 = u.adjoint() * rep.A2 * u;
  double theta = std::arg(a2(0, 1));
  CMat v = CMat::Identity(2, 2);
  v(1, 1) = std::polar(1.0, theta);
  CMat w = v * u.adjoint();
  RZRep out;
  out.d = 2;
  out.backend = rep.backend;
  out.A1 = w * rep.A1 * w.adjoint();
  out.A2 = w * rep.A2 * w.adjoint();
  double scale = std::max(1.0, std::max(out.A1.cwiseAbs().maxCoeff(), out.A2.cwiseAbs().maxCoeff()));
  if (out.A1.imag().cwiseAbs().maxCoeff() > 1e-10 * scale || out.A2.imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(Err::VerificationFailed, "conversion left imaginary parts behind");
  out.A1 = out.A1.real().cast<Complex>();
  out.A2 = out.A2.real().cast<Complex>();
  out.max_eval_error = rep.max_eval_error;
  return out;
}

struct Doubled {
  RMat alpha1, alpha2;
  double max_eval_error = 0.0;
};

/// Real symmetric 2d x 2d pencil for p^2 from the real/imaginary split of the
/// Hermitian pencil.
inline Doubled square_double(const RZRep& rep) {
  int d = rep.d;
  RMat a1r = rep.A1.real(), a1i = rep.A1.imag();
  RMat a2r = rep.A2.real(), a2i = rep.A2.imag();
  double scale = std::max(1.0, std::max(rep.A1.cwiseAbs().maxCoeff(), rep.A2.cwiseAbs().maxCoeff()));
  if ((a1r - a1r.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale ||
      (a2r - a2r.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale ||
      (a1i + a1i.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale ||
      (a2i + a2i.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(Err::InvalidArgument, "pencil matrices are not Hermitian");

  Doubled out;
  out.alpha1 = RMat::Zero(2 * d, 2 * d);
  out.alpha2 = RMat::Zero(2 * d, 2 * d);
  out.alpha1.topLeftCorner(d, d) = a1r;
  out.alpha1.topRightCorner(d, d) = a1i;
  out.alpha1.bottomLeftCorner(d, d) = -a1i;
  out.alpha1.bottomRightCorner(d, d) = a1r;
  out.alpha2.topLeftCorner(d, d) = a2r;
  out.alpha2.topRightCorner(d, d) = a2i;
  out.alpha2.bottomLeftCorner(d, d) = -a2i;
  out.alpha2.bottomRightCorner(d, d) = a2r;

  double err = 0.0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      double x = -1.0 + 2.0 * (a + 0.5) / 16.0;
      double y = -1.0 + 2.0 * (b + 0.5) / 16.0;
      Complex small = rz_pencil_eval(rep.A1, rep.A2, x, y);
      Complex big = rz_pencil_eval(out.alpha1.cast<Complex>(), out.alpha2.cast<Complex>(), x, y);
      err = std::max(err, std::abs(big - small * small));
    }
  out.max_eval_error = err;
  return out;
}

}  // namespace detrep

#endif  // DETREP_REALZERO_HPP
