#ifndef DETREP_BASE_HPP
#define DETREP_BASE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace detrep {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kTrimTol = 1e-12;   // structural-degree cutoff, relative
inline constexpr double kPsdSlack = 1e-9;   // slack band separating semi-stable from unstable

enum class Err {
  InvalidArgument,
  ZeroConstantTerm,
  NoUnstableBracket,
  NotStable,
  NotPositiveDefinite,
  NotPositiveDefiniteOnLine,
  NoConvergence,
  SingularP0,
  RankMismatch,
  KYPFailure,
  DenominatorMismatch,
  EvaluationMismatch,
  DegenerateResultant,
  DegreeMismatch,
  PipelineDiverged,
  NotSelfReversive,
  SpanDeficient,
  SizeMismatch,
  StrictificationFailed,
  DegreeViolation,
  NotInComponent,
  NonLinearM,
  VerificationFailed,
  NotRealZero,
  NotSize2,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::ZeroConstantTerm: return "ZeroConstantTerm";
    case Err::NoUnstableBracket: return "NoUnstableBracket";
    case Err::NotStable: return "NotStable";
    case Err::NotPositiveDefinite: return "NotPositiveDefinite";
    case Err::NotPositiveDefiniteOnLine: return "NotPositiveDefiniteOnLine";
    case Err::NoConvergence: return "NoConvergence";
    case Err::SingularP0: return "SingularP0";
    case Err::RankMismatch: return "RankMismatch";
    case Err::KYPFailure: return "KYPFailure";
    case Err::DenominatorMismatch: return "DenominatorMismatch";
    case Err::EvaluationMismatch: return "EvaluationMismatch";
    case Err::DegenerateResultant: return "DegenerateResultant";
    case Err::DegreeMismatch: return "DegreeMismatch";
    case Err::PipelineDiverged: return "PipelineDiverged";
    case Err::NotSelfReversive: return "NotSelfReversive";
    case Err::SpanDeficient: return "SpanDeficient";
    case Err::SizeMismatch: return "SizeMismatch";
    case Err::StrictificationFailed: return "StrictificationFailed";
    case Err::DegreeViolation: return "DegreeViolation";
    case Err::NotInComponent: return "NotInComponent";
    case Err::NonLinearM: return "NonLinearM";
    case Err::VerificationFailed: return "VerificationFailed";
    case Err::NotRealZero: return "NotRealZero";
    case Err::NotSize2: return "NotSize2";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw Error(code, std::string(err_name(code)) + ": " + what);
}

constexpr double kPi = 3.14159265358979323846;

inline Complex ipow(Complex z, int k) {
  if (k < 0) return Complex(1, 0) / ipow(z, -k);
  Complex acc(1, 0);
  while (k > 0) {
    if (k & 1) acc *= z;
    z *= z;
    k >>= 1;
  }
  return acc;
}

inline Complex unit_root(int n, int j) {
  double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
  return Complex(std::cos(t), std::sin(t));
}

/// Coefficients of the degree < n polynomial interpolating f on the n-th
/// roots of unity, values[j] = f(unit_root(n, j)).
inline std::vector<Complex> idft(const std::vector<Complex>& values) {
  int n = static_cast<int>(values.size());
  std::vector<Complex> coeff(n, Complex(0, 0));
  for (int k = 0; k < n; ++k) {
    Complex acc(0, 0);
    for (int j = 0; j < n; ++j) acc += values[j] * unit_root(n, (-j * k) % n + (((-j * k) % n) < 0 ? n : 0));
    coeff[k] = acc / static_cast<double>(n);
  }
  return coeff;
}

inline double operator_norm(const CMat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

inline std::vector<double> singular_values(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a);
  std::vector<double> out(svd.singularValues().data(),
                          svd.singularValues().data() + svd.singularValues().size());
  return out;
}

/// Unitary factor of the polar decomposition a = U * H, H = (a* a)^{1/2}.
inline CMat polar_unitary(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

inline double unitarity_distance(const CMat& k) {
  if (k.rows() == 0) return 0.0;
  return (k.adjoint() * k - CMat::Identity(k.rows(), k.cols())).norm();
}

/// Deterministic RNG. std::mt19937_64 with an explicit Box-Muller transform so
/// streams do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform() {  // in [0, 1)
    return static_cast<double>(state_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 1e-300);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Complex cnormal() {
    double re = normal();
    double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
  }

  std::uint64_t raw() { return state_(); }

 private:
  std::mt19937_64 state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace detrep

#endif  // DETREP_BASE_HPP
