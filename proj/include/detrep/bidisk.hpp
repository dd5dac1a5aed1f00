#ifndef DETREP_BIDISK_HPP
#define DETREP_BIDISK_HPP

#include <optional>
#include <vector>

#include "detrep/realization.hpp"
#include "detrep/stability.hpp"

namespace detrep {

enum class Route { pipeline, product, unitary_limit, unitary_sos, univariate };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::pipeline: return "pipeline";
    case Route::product: return "product";
    case Route::unitary_limit: return "unitary_limit";
    case Route::unitary_sos: return "unitary_sos";
    case Route::univariate: return "univariate";
  }
  return "?";
}

/// A determinantal representation p = det(I - K Z_n), Z_n = z1 I_{n1} (+) z2 I_{n2}.
struct DetRep {
  int n1 = 0, n2 = 0;
  CMat K;
  double norm = 0.0;
  double max_eval_error = 0.0;
  Route route = Route::pipeline;
};

struct VerifyReport {
  double max_err = 0.0;
  double norm = 0.0;
  std::vector<double> sv;
  double unitarity_dist = 0.0;
};

struct RepresentOptions {
  double tol = 1e-6;
  std::uint64_t seed = 12345;
  double radius_tol = 1e-9;
  bool normalize_radius = true;
};

/// det(I - K Z) as a bivariate polynomial, recovered exactly from a
/// (n1+1) x (n2+1) tensor grid of unit roots.
inline BiPoly det_iminus_kz(const CMat& k, int n1, int n2) {
  int m1 = n1 + 1, m2 = n2 + 1;
  CMat vals(m1, m2);
  for (int a = 0; a < m1; ++a)
    for (int b = 0; b < m2; ++b)
      vals(a, b) = det_iminus_kz_at(k, n1, n2, unit_root(m1, a), unit_root(m2, b));
  CMat g = CMat::Zero(m1, m2);
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) {
      Complex acc(0, 0);
      for (int a = 0; a < m1; ++a)
        for (int b = 0; b < m2; ++b)
          acc += vals(a, b) * unit_root(m1, ((-a * i) % m1 + m1) % m1) * unit_root(m2, ((-b * j) % m2 + m2) % m2);
      g(i, j) = acc / static_cast<double>(m1 * m2);
    }
  return BiPoly(g);
}

/// Evaluation sweep of |p - det(I - K Z)| over a torus mesh plus random
/// closed-bidisk points, with norm and singular-value diagnostics.
inline VerifyReport verify_detrep(const BiPoly& p, const DetRep& rep, int grid = 32,
                                  std::uint64_t seed = 777) {
  if (rep.K.rows() != rep.K.cols() || rep.K.rows() != rep.n1 + rep.n2)
    fail(Err::SizeMismatch, "K size does not match the declared partition");
  VerifyReport out;
  auto check = [&](Complex z1, Complex z2) {
    double e = std::abs(p.eval(z1, z2) - det_iminus_kz_at(rep.K, rep.n1, rep.n2, z1, z2));
    out.max_err = std::max(out.max_err, e);
  };
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) check(unit_root(grid, a), unit_root(grid, b));
  Rng rng(seed);
  for (int t = 0; t < 1000; ++t) {
    double r1 = (t % 4 == 0) ? 1.0 : std::sqrt(rng.uniform());
    double r2 = (t % 8 == 4) ? 1.0 : std::sqrt(rng.uniform());
    check(r1 * unit_root(4096, static_cast<int>(rng.uniform(0, 4096))),
          r2 * unit_root(4096, static_cast<int>(rng.uniform(0, 4096))));
  }
  out.norm = operator_norm(rep.K);
  out.sv = singular_values(rep.K);
  out.unitarity_dist = unitarity_distance(rep.K);
  return out;
}

/// Norm-minimal representation of a univariate polynomial with u(0) = 1: the
/// diagonal of inverse roots.
inline DetRep represent_univariate(const UniPoly& u) {
  double scale = std::max(1.0, u.max_abs());
  if (std::abs(u.coeff(0) - Complex(1, 0)) > 1e-9 * scale)
    fail(Err::InvalidArgument, "represent_univariate needs u(0) = 1");
  if (u.degree() == 0) fail(Err::InvalidArgument, "constant polynomial");
  auto rs = roots(u);
  int n = static_cast<int>(rs.size());
  DetRep rep;
  rep.n1 = n;
  rep.n2 = 0;
  rep.K = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) rep.K(i, i) = Complex(1, 0) / rs[i];
  rep.route = Route::univariate;
  rep.norm = operator_norm(rep.K);
  double err = 0.0;
  for (int j = 0; j < 256; ++j) {
    Complex z = unit_root(256, j);
    err = std::max(err, std::abs(u.eval(z) - det_iminus_kz_at(rep.K, n, 0, z, Complex(0, 0))));
  }
  rep.max_eval_error = err;
  return rep;
}

namespace detail {

inline CMat pipeline_once(const BiPoly& q, int n1, int n2, MatPoly* warm_factor) {
  TrigMatPoly qb = trig_bezoutian(q);
  MatPoly pf = specfact_circle(qb, 1e-9, warm_factor && warm_factor->size() == n2 ? warm_factor : nullptr);
  if (warm_factor) *warm_factor = pf;
  int order = 2 * (n1 + n2) + 4;
  auto markov = markov_of_M(q, pf, order);
  SysMat sys = minimal_realization(markov, n1, 1e-8);
  SysMat bal = contractive_balance(sys, 1e-9);
  return assemble_K(bal, q, 1e-7);
}

inline BiPoly perturbed(const BiPoly& p, double eps, Rng& rng) {
  CMat g = p.grid();
  for (int i = 0; i <= p.deg1(); ++i)
    for (int j = 0; j <= p.deg2(); ++j)
      if (i + j > 0) g(i, j) += eps * rng.cnormal();
  return BiPoly(g);
}

}  // namespace detail

/// Contractive determinantal representation of a non-constant bivariate
/// polynomial with p(0,0) = 1. The polynomial is normalized by its stability
/// radius, the dilation schedule 1 - 2^{-k} makes the normalized polynomial
/// strictly stable, and the spectral-factorization/realization pipeline runs
/// with warm starts along the schedule. Candidates are always re-verified
/// against the original p.
inline DetRep represent_contractive(const BiPoly& p, const RepresentOptions& opts = {}) {
  double scale = std::max(1.0, p.max_abs());
  if (std::abs(p.coeff(0, 0) - Complex(1, 0)) > 1e-12 * scale)
    fail(Err::InvalidArgument, "represent_contractive needs p(0,0) = 1");
  if (p.is_constant()) fail(Err::InvalidArgument, "constant polynomial");

  int n1 = p.deg1(), n2 = p.deg2();
  if (n2 == 0 || n1 == 0) {
    UniPoly u = n2 == 0 ? slice_z2(p, Complex(0, 0)) : slice_z1(p, Complex(0, 0));
    DetRep rep = represent_univariate(u);
    if (n1 == 0) {
      rep.n2 = rep.n1;
      rep.n1 = 0;
    }
    VerifyReport vr = verify_detrep(p, rep);
    rep.max_eval_error = vr.max_err;
    return rep;
  }

  double s = opts.normalize_radius ? stability_radius(p, opts.radius_tol).s : 1.0;
  BiPoly q = p.scaled(s, s);

  Rng rng(opts.seed);
  MatPoly warm;
  std::optional<DetRep> best;
  static const int kSchedule[] = {8, 12, 16, 20};
  for (int k : kSchedule) {
    double rho = 1.0 - std::pow(2.0, -k);
    BiPoly qk = q.scaled(rho, rho);
    double eps = 1e-4 * std::pow(2.0, -k);
    for (int attempt = 0; attempt < 3; ++attempt) {
      try {
        CMat kk = detail::pipeline_once(qk, n1, n2, &warm);
        DetRep rep;
        rep.n1 = n1;
        rep.n2 = n2;
        rep.K = kk / (s * rho);
        rep.route = Route::pipeline;
        rep.norm = operator_norm(rep.K);
        VerifyReport vr = verify_detrep(p, rep, 32, opts.seed);
        rep.max_eval_error = vr.max_err;
        if (rep.max_eval_error <= opts.tol * scale) best = rep;
        break;
      } catch (const Error& e) {
        if (e.code() != Err::RankMismatch) break;
        qk = detail::perturbed(q.scaled(rho, rho), eps, rng);
      }
    }
  }
  if (!best) fail(Err::PipelineDiverged, "no dilation stage met the tolerance");
  return *best;
}

/// Product rule: block-diagonal join conjugated by the variable-sorting
/// permutation.
inline DetRep compose_product(const DetRep& r1, const DetRep& r2) {
  int n1 = r1.n1 + r2.n1, n2 = r1.n2 + r2.n2;
  int total = n1 + n2;
  std::vector<int> old_index;
  old_index.reserve(total);
  int off2 = r1.n1 + r1.n2;
  for (int i = 0; i < r1.n1; ++i) old_index.push_back(i);
  for (int i = 0; i < r2.n1; ++i) old_index.push_back(off2 + i);
  for (int i = 0; i < r1.n2; ++i) old_index.push_back(r1.n1 + i);
  for (int i = 0; i < r2.n2; ++i) old_index.push_back(off2 + r2.n1 + i);

  CMat tilde = CMat::Zero(total, total);
  tilde.topLeftCorner(off2, off2) = r1.K;
  tilde.bottomRightCorner(r2.n1 + r2.n2, r2.n1 + r2.n2) = r2.K;

  DetRep rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.K = CMat(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) rep.K(i, j) = tilde(old_index[i], old_index[j]);
  rep.norm = std::max(r1.norm, r2.norm);
  rep.route = Route::product;

  BiPoly lhs = det_iminus_kz(rep.K, n1, n2);
  BiPoly rhs = det_iminus_kz(r1.K, r1.n1, r1.n2) * det_iminus_kz(r2.K, r2.n1, r2.n2);
  rep.max_eval_error = (lhs - rhs).max_abs();
  return rep;
}

/// The sum-of-squares data of the kernel identity behind the unitary
/// construction: polynomials A_1..A_{n1} of bidegree <= (n1-1, n2) and
/// B_1..B_{n2} of bidegree <= (n1, n2-1).
struct SosDecomp {
  std::vector<BiPoly> A_polys;
  std::vector<BiPoly> B_polys;
  double residual = 0.0;
  int n1 = 0, n2 = 0;
};

namespace detail {

struct GramIndex {
  int rows, cols;        // monomial box: exponents (i, j), i < rows, j < cols
  int count() const { return rows * cols; }
  int flat(int i, int j) const { return i * cols + j; }
};

/// Hermitian-matrix real parametrization: diag entries, then (re, im) per
/// upper off-diagonal entry.
inline int herm_dim(int n) { return n * n; }

inline void herm_to_mat(const RVec& u, int offset, int n, CMat& out) {
  out = CMat::Zero(n, n);
  int pos = offset;
  for (int i = 0; i < n; ++i) out(i, i) = Complex(u(pos++), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double re = u(pos++), im = u(pos++);
      out(i, j) = Complex(re, im);
      out(j, i) = Complex(re, -im);
    }
}

inline void mat_to_herm(const CMat& m, int offset, RVec& u) {
  int n = static_cast<int>(m.rows());
  int pos = offset;
  for (int i = 0; i < n; ++i) u(pos++) = m(i, i).real();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      u(pos++) = m(i, j).real();
      u(pos++) = m(i, j).imag();
    }
}

inline CMat psd_clip(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()));
  RVec lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// Numerical Agler-type decomposition for a semi-stable self-reversive p: with
/// f = dp/dz2 and g its reverse at bidegree (n1, n2-1), solves
///   g(z) conj(g(w)) - z2 conj(w2) f(z) conj(f(w))
///     = (1 - z1 conj(w1)) sum_i A_i(z) conj(A_i(w))
///     + (1 - z2 conj(w2)) sum_j B_j(z) conj(B_j(w))
/// by Dykstra alternating projections on the Gram-matrix formulation, followed
/// by rank truncation to (n1, n2) squares.
inline SosDecomp sos_decompose(const BiPoly& p, double tol = 1e-9) {
  int n1 = p.deg1(), n2 = p.deg2();
  if (n2 < 1) fail(Err::InvalidArgument, "sos_decompose needs deg2 >= 1");
  if (!self_reversive_test(p).flag) fail(Err::NotSelfReversive, "sos_decompose needs a self-reversive polynomial");

  // f = dp/dz2 on the (n1, n2-1) box; g = its reverse on the same box
  CMat f = CMat::Zero(n1 + 1, n2);
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j < n2; ++j) f(i, j) = static_cast<double>(j + 1) * p.coeff(i, j + 1);
  CMat g = CMat::Zero(n1 + 1, n2);
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j < n2; ++j) g(i, j) = std::conj(f(n1 - i, n2 - 1 - j));

  detail::GramIndex ia{n1, n2 + 1};      // A monomials: z1^i z2^j, i <= n1-1, j <= n2
  detail::GramIndex ib{n1 + 1, n2};      // B monomials: i <= n1, j <= n2-1
  int na = ia.count(), nb = ib.count();
  int dim = detail::herm_dim(na) + detail::herm_dim(nb);

  // constraint rows: coefficient match at monomial pairs (mu, nu), mu <= nu
  struct Pair {
    int i1, j1, i2, j2;
  };
  std::vector<Pair> pairs;
  int box1 = n1 + 1, box2 = n2 + 1;
  for (int a = 0; a < box1 * box2; ++a)
    for (int b = a; b < box1 * box2; ++b)
      pairs.push_back({a / box2, a % box2, b / box2, b % box2});

  auto gram_entry_index = [&](const detail::GramIndex& ix, int offset, int r, int c, bool& conjugate) -> std::pair<int, int> {
    // returns (real_index, imag_index) of entry (r, c); imag_index = -1 on the diagonal
    conjugate = false;
    if (r == c) return {offset + r, -1};
    if (r > c) {
      std::swap(r, c);
      conjugate = true;
    }
    int base = offset + ix.count();
    int pos = 0;
    // upper-triangle enumeration in row-major order
    pos = r * ix.count() - r * (r + 1) / 2 + (c - r - 1);
    return {base + 2 * pos, base + 2 * pos + 1};
  };

  struct Entry {
    int row, col;
    double value;
  };
  std::vector<Entry> trips;
  auto add_entry = [&](int row_re, int row_im, const detail::GramIndex& ix, int offset, int r, int c,
                       double sign) {
    bool conj = false;
    auto [pre, pim] = gram_entry_index(ix, offset, r, c, conj);
    trips.push_back({row_re, pre, sign});
    if (pim >= 0) trips.push_back({row_im, pim, conj ? -sign : sign});
  };

  int rows = 2 * static_cast<int>(pairs.size());
  RVec rhs = RVec::Zero(rows);
  for (size_t t = 0; t < pairs.size(); ++t) {
    const auto& pr = pairs[t];
    int row_re = 2 * static_cast<int>(t), row_im = row_re + 1;
    Complex gz = (pr.i1 <= n1 && pr.j1 <= n2 - 1) ? g(pr.i1, pr.j1) : Complex(0, 0);
    Complex gw = (pr.i2 <= n1 && pr.j2 <= n2 - 1) ? g(pr.i2, pr.j2) : Complex(0, 0);
    Complex fz = (pr.j1 >= 1 && pr.i1 <= n1) ? f(pr.i1, pr.j1 - 1) : Complex(0, 0);
    Complex fw = (pr.j2 >= 1 && pr.i2 <= n1) ? f(pr.i2, pr.j2 - 1) : Complex(0, 0);
    Complex lhs = gz * std::conj(gw) - fz * std::conj(fw);
    rhs(row_re) = lhs.real();
    rhs(row_im) = lhs.imag();

    // [G_A]_{mu nu} - [G_A]_{mu-e1, nu-e1} + [G_B]_{mu nu} - [G_B]_{mu-e2, nu-e2}
    if (pr.i1 < ia.rows && pr.j1 < ia.cols && pr.i2 < ia.rows && pr.j2 < ia.cols)
      add_entry(row_re, row_im, ia, 0, ia.flat(pr.i1, pr.j1), ia.flat(pr.i2, pr.j2), 1.0);
    if (pr.i1 >= 1 && pr.i2 >= 1 && pr.i1 - 1 < ia.rows && pr.j1 < ia.cols && pr.i2 - 1 < ia.rows && pr.j2 < ia.cols)
      add_entry(row_re, row_im, ia, 0, ia.flat(pr.i1 - 1, pr.j1), ia.flat(pr.i2 - 1, pr.j2), -1.0);
    int boff = detail::herm_dim(na);
    if (pr.i1 < ib.rows && pr.j1 < ib.cols && pr.i2 < ib.rows && pr.j2 < ib.cols)
      add_entry(row_re, row_im, ib, boff, ib.flat(pr.i1, pr.j1), ib.flat(pr.i2, pr.j2), 1.0);
    if (pr.j1 >= 1 && pr.j2 >= 1 && pr.i1 < ib.rows && pr.j1 - 1 < ib.cols && pr.i2 < ib.rows && pr.j2 - 1 < ib.cols)
      add_entry(row_re, row_im, ib, boff, ib.flat(pr.i1, pr.j1 - 1), ib.flat(pr.i2, pr.j2 - 1), -1.0);
  }

  RMat m = RMat::Zero(rows, dim);
  for (const auto& tr : trips) m(tr.row, tr.col) += tr.value;
  Eigen::CompleteOrthogonalDecomposition<RMat> cod(m);

  auto project_affine = [&](RVec& u) {
    RVec r = m * u - rhs;
    u -= cod.pseudoInverse() * r;
  };

  // Dykstra between the affine constraint set and the PSD cone
  RVec x = RVec::Zero(dim);
  project_affine(x);
  RVec corr = RVec::Zero(dim);
  CMat ga, gb;
  double gap = 0.0;
  for (int it = 0; it < 20000; ++it) {
    RVec y = x + corr;
    detail::herm_to_mat(y, 0, na, ga);
    detail::herm_to_mat(y, detail::herm_dim(na), nb, gb);
    CMat pa = detail::psd_clip(ga), pb = detail::psd_clip(gb);
    RVec z = RVec::Zero(dim);
    detail::mat_to_herm(pa, 0, z);
    detail::mat_to_herm(pb, detail::herm_dim(na), z);
    corr = y - z;
    RVec xn = z;
    project_affine(xn);
    gap = (xn - z).norm();
    double step = (xn - x).norm();
    x = xn;
    if (gap <= 1e-12 && step <= 1e-13) break;
  }

  detail::herm_to_mat(x, 0, na, ga);
  detail::herm_to_mat(x, detail::herm_dim(na), nb, gb);

  auto extract = [&](const CMat& gram, const detail::GramIndex& ix, int count) {
    std::vector<BiPoly> polys;
    if (gram.rows() == 0) return polys;
    Eigen::SelfAdjointEigenSolver<CMat> es(gram);
    for (int t = 0; t < count && t < gram.rows(); ++t) {
      int idx = static_cast<int>(gram.rows()) - 1 - t;  // largest first
      double lam = std::max(0.0, es.eigenvalues()(idx));
      if (lam <= 0.0) continue;
      CMat grid = CMat::Zero(ix.rows, ix.cols);
      for (int i = 0; i < ix.rows; ++i)
        for (int j = 0; j < ix.cols; ++j) grid(i, j) = std::sqrt(lam) * es.eigenvectors()(ix.flat(i, j), idx);
      polys.emplace_back(grid);
    }
    return polys;
  };

  SosDecomp dec;
  dec.n1 = n1;
  dec.n2 = n2;
  dec.A_polys = extract(ga, ia, n1);
  dec.B_polys = extract(gb, ib, n2);

  // residual of the kernel identity over a 12 x 12 point-pair grid
  auto kernel_lhs = [&](Complex z1, Complex z2, Complex w1, Complex w2) {
    Complex gz(0, 0), gw(0, 0), fz(0, 0), fw(0, 0);
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j < n2; ++j) {
        gz += g(i, j) * ipow(z1, i) * ipow(z2, j);
        gw += g(i, j) * ipow(w1, i) * ipow(w2, j);
        fz += f(i, j) * ipow(z1, i) * ipow(z2, j);
        fw += f(i, j) * ipow(w1, i) * ipow(w2, j);
      }
    return gz * std::conj(gw) - z2 * std::conj(w2) * fz * std::conj(fw);
  };
  std::vector<std::pair<Complex, Complex>> pts;
  Rng prng(2024);
  for (int t = 0; t < 12; ++t) {
    double r1 = 0.3 + 0.7 * prng.uniform(), r2 = 0.3 + 0.7 * prng.uniform();
    pts.emplace_back(r1 * unit_root(97, static_cast<int>(prng.uniform(0, 97))),
                     r2 * unit_root(89, static_cast<int>(prng.uniform(0, 89))));
  }
  double res = 0.0;
  for (const auto& [z1, z2] : pts)
    for (const auto& [w1, w2] : pts) {
      Complex rhs_v(0, 0);
      for (const auto& a : dec.A_polys) rhs_v += (1.0 - z1 * std::conj(w1)) * a.eval(z1, z2) * std::conj(a.eval(w1, w2));
      for (const auto& b : dec.B_polys) rhs_v += (1.0 - z2 * std::conj(w2)) * b.eval(z1, z2) * std::conj(b.eval(w1, w2));
      res = std::max(res, std::abs(kernel_lhs(z1, z2, w1, w2) - rhs_v));
    }
  dec.residual = res;
  double scale = std::max(1.0, p.max_abs());
  if (res > std::max(tol, 1e-7) * scale * scale)
    fail(Err::NoConvergence, "sum-of-squares residual " + std::to_string(res));
  return dec;
}

/// Unitary K with K [z1 A(z); z2 B(z)] = [A(z); B(z)] on the supplied zeros of
/// p, in least squares, extended to a unitary on the orthogonal complement.
inline CMat lurking_isometry(const SosDecomp& dec, const std::vector<std::pair<Complex, Complex>>& zeros,
                             double tol = 1e-7, int* rank_out = nullptr) {
  int n = dec.n1 + dec.n2;
  if (zeros.empty()) fail(Err::SpanDeficient, "no zero samples supplied");
  int cols = static_cast<int>(zeros.size());
  CMat x(n, cols), y(n, cols);
  for (int s = 0; s < cols; ++s) {
    auto [z1, z2] = zeros[s];
    for (int i = 0; i < dec.n1; ++i) {
      Complex v = i < static_cast<int>(dec.A_polys.size()) ? dec.A_polys[i].eval(z1, z2) : Complex(0, 0);
      y(i, s) = v;
      x(i, s) = z1 * v;
    }
    for (int j = 0; j < dec.n2; ++j) {
      Complex v = j < static_cast<int>(dec.B_polys.size()) ? dec.B_polys[j].eval(z1, z2) : Complex(0, 0);
      y(dec.n1 + j, s) = v;
      x(dec.n1 + j, s) = z2 * v;
    }
  }

  Eigen::JacobiSVD<CMat> svd(x, Eigen::ComputeFullU | Eigen::ComputeThinV);
  double s1 = svd.singularValues()(0);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > std::max(1e-10, tol) * s1) ++r;
  if (rank_out) *rank_out = r;
  if (r == 0) fail(Err::SpanDeficient, "zero samples span nothing");

  CMat w = y * svd.matrixV().leftCols(r) * svd.singularValues().head(r).cwiseInverse().asDiagonal();
  CMat k;
  if (r == n) {
    k = w * svd.matrixU().adjoint();
  } else {
    // complete both orthonormal families and map complement to complement
    Eigen::HouseholderQR<CMat> qr(w);
    CMat wq = qr.householderQ();
    CMat wfull(n, n);
    wfull.leftCols(r) = w;
    wfull.rightCols(n - r) = wq.rightCols(n - r);
    k = wfull * svd.matrixU().adjoint();
  }
  k = polar_unitary(k);
  double res = (k * x - y).norm() / std::max(1.0, y.norm());
  if (res > std::max(tol, 1e-7) * 100)
    fail(Err::NoConvergence, "lurking isometry residual " + std::to_string(res));
  return k;
}

namespace detail {

/// Gauss-Newton refinement of det(I - K Z) = p over the unitary group, with
/// polar retraction and central-difference tangent derivatives.
inline void unitary_polish(CMat& k, const BiPoly& p, int n1, int n2, int iters = 15) {
  int n = n1 + n2;
  double scale = std::max(1.0, p.max_abs());
  auto resid = [&](const CMat& kk) {
    BiPoly d = det_iminus_kz(kk, n1, n2);
    BiPoly diff = d - p;
    int rows = (n1 + 1) * (n2 + 1);
    RVec f(2 * rows);
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        Complex v = diff.coeff(i, j);
        f(2 * (i * (n2 + 1) + j)) = v.real();
        f(2 * (i * (n2 + 1) + j) + 1) = v.imag();
      }
    return f;
  };

  std::vector<CMat> tangents;
  for (int i = 0; i < n; ++i) {
    CMat t = CMat::Zero(n, n);
    t(i, i) = Complex(0, 1);
    tangents.push_back(t);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat t = CMat::Zero(n, n);
      t(i, j) = Complex(1, 0);
      t(j, i) = Complex(-1, 0);
      tangents.push_back(t);
      t.setZero();
      t(i, j) = Complex(0, 1);
      t(j, i) = Complex(0, 1);
      tangents.push_back(t);
    }

  RVec f = resid(k);
  for (int it = 0; it < iters; ++it) {
    if (f.norm() <= 1e-13 * scale) break;
    double h = 1e-5;
    RMat jac(f.size(), tangents.size());
    for (size_t t = 0; t < tangents.size(); ++t) {
      CMat kp = polar_unitary(k + h * k * tangents[t]);
      CMat km = polar_unitary(k - h * k * tangents[t]);
      jac.col(t) = (resid(kp) - resid(km)) / (2 * h);
    }
    RVec step = jac.colPivHouseholderQr().solve(-f);
    bool improved = false;
    for (double damp = 1.0; damp > 1.0 / 64; damp *= 0.5) {
      CMat om = CMat::Zero(n, n);
      for (size_t t = 0; t < tangents.size(); ++t) om += damp * step(t) * tangents[t];
      CMat kn = polar_unitary(k + k * om);
      RVec fn = resid(kn);
      if (fn.norm() < f.norm()) {
        k = kn;
        f = fn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
}

inline bool diagonal_support(const BiPoly& p, UniPoly* diag) {
  if (p.deg1() != p.deg2()) return false;
  double cut = p.max_abs() * 1e-12;
  std::vector<Complex> c(p.deg1() + 1);
  for (int i = 0; i <= p.deg1(); ++i)
    for (int j = 0; j <= p.deg2(); ++j) {
      if (i != j && std::abs(p.coeff(i, j)) > cut) return false;
      if (i == j) c[i] = p.coeff(i, j);
    }
  if (diag) *diag = UniPoly(c);
  return true;
}

}  // namespace detail

/// Unitary determinantal representation of a semi-stable polynomial that is
/// self-reversive up to a unimodular constant. The sum-of-squares route is
/// tried first; polynomials supported on powers of z1 z2 factor into 2x2
/// blocks; otherwise the contractive representation of the dilated polynomial
/// is projected onto the unitary group and refined.
inline DetRep represent_unitary(const BiPoly& p, const RepresentOptions& opts = {}) {
  double scale = std::max(1.0, p.max_abs());
  if (std::abs(p.coeff(0, 0) - Complex(1, 0)) > 1e-12 * scale)
    fail(Err::InvalidArgument, "represent_unitary needs p(0,0) = 1");
  if (p.is_constant()) fail(Err::InvalidArgument, "constant polynomial");
  if (semistability(p).cls == StabilityClass::unstable)
    fail(Err::InvalidArgument, "represent_unitary needs a semi-stable polynomial");
  SelfReversive sr = self_reversive_test(p);
  if (!sr.flag) fail(Err::NotSelfReversive, "polynomial is not self-reversive up to a unimodular constant");

  int n1 = p.deg1(), n2 = p.deg2();

  if (n1 == 0 || n2 == 0) {
    DetRep rep = represent_contractive(p, opts);
    rep.route = Route::univariate;
    return rep;
  }

  UniPoly diag;
  if (detail::diagonal_support(p, &diag)) {
    // p is a polynomial in z1 z2 with unimodular roots; each linear factor
    // 1 - beta z1 z2 carries the 2x2 unitary [[0, beta], [1, 0]]
    std::optional<DetRep> acc;
    for (const auto& root : roots(diag)) {
      Complex beta = Complex(1, 0) / root;
      DetRep f;
      f.n1 = 1;
      f.n2 = 1;
      f.K = CMat::Zero(2, 2);
      f.K(0, 1) = beta;
      f.K(1, 0) = Complex(1, 0);
      f.norm = std::max(1.0, std::abs(beta));
      f.route = Route::product;
      acc = acc ? compose_product(*acc, f) : f;
    }
    if (acc) {
      detail::unitary_polish(acc->K, p, n1, n2);
      VerifyReport vr = verify_detrep(p, *acc, 32, opts.seed);
      acc->max_eval_error = vr.max_err;
      acc->norm = vr.norm;
      acc->route = Route::product;
      if (vr.max_err <= opts.tol * scale && std::abs(vr.sv.front() - 1.0) <= 1e-6 &&
          std::abs(vr.sv.back() - 1.0) <= 1e-6)
        return *acc;
    }
  }

  try {
    SosDecomp dec = sos_decompose(p, 1e-9);
    std::vector<std::pair<Complex, Complex>> zeros = intersecting_zeros(p);
    Rng rng(opts.seed);
    int want = n1 + n2;
    int rank = 0;
    CMat k;
    for (int round = 0; round < 8; ++round) {
      if (!zeros.empty()) {
        try {
          k = lurking_isometry(dec, zeros, 1e-7, &rank);
        } catch (const Error& e) {
          if (e.code() != Err::SpanDeficient) throw;
          rank = 0;
        }
        if (rank >= want) break;
      }
      // more samples: all z2-roots of random unimodular-z1 slices
      for (int extra = 0; extra < want; ++extra) {
        Complex z1 = unit_root(1 << 20, static_cast<int>(rng.uniform(0, 1 << 20)));
        for (const auto& r : roots(slice_z1(p, z1)))
          if (std::abs(p.eval(z1, r)) <= 1e-8 * scale) zeros.emplace_back(z1, r);
      }
    }
    if (rank < want) fail(Err::SpanDeficient, "zero samples do not span the full space");
    detail::unitary_polish(k, p, n1, n2);
    DetRep rep;
    rep.n1 = n1;
    rep.n2 = n2;
    rep.K = k;
    rep.route = Route::unitary_sos;
    VerifyReport vr = verify_detrep(p, rep, 32, opts.seed);
    rep.max_eval_error = vr.max_err;
    rep.norm = vr.norm;
    if (vr.max_err <= opts.tol * scale && std::abs(vr.sv.front() - 1.0) <= 1e-6 &&
        std::abs(vr.sv.back() - 1.0) <= 1e-6)
      return rep;
  } catch (const Error&) {
    // fall through to the limit route
  }

  // limit route: contractive representation of the interior dilation, snapped
  // to the unitary group
  double r = 1.0 - std::pow(2.0, -20);
  BiPoly pr = p.scaled(r, r);
  RepresentOptions inner = opts;
  inner.tol = 1e-5;
  DetRep base = represent_contractive(pr, inner);
  CMat cand = base.K / r;
  CMat snapped = polar_unitary(cand);
  if (operator_norm(snapped - cand) > 1e-5)
    fail(Err::PipelineDiverged, "limit of contractive representations is not close to unitary");
  detail::unitary_polish(snapped, p, n1, n2);
  DetRep rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.K = snapped;
  rep.route = Route::unitary_limit;
  VerifyReport vr = verify_detrep(p, rep, 32, opts.seed);
  rep.max_eval_error = vr.max_err;
  rep.norm = vr.norm;
  if (vr.max_err > opts.tol * scale || std::abs(vr.sv.front() - 1.0) > 1e-6 ||
      std::abs(vr.sv.back() - 1.0) > 1e-6)
    fail(Err::PipelineDiverged, "unitary refinement did not reach the tolerance");
  return rep;
}

}  // namespace detrep

#endif  // DETREP_BIDISK_HPP
