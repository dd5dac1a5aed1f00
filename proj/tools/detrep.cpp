// Command-line front end: analyze | represent | realzero | verify | selftest.
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 numeric
// failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "detrep/io.hpp"

namespace {

using detrep::BiPoly;
using detrep::CMat;
using detrep::Complex;
using detrep::Err;
using detrep::Error;
using detrep::RealBiPoly;
using detrep::RMat;
using detrep::UniPoly;
using Json = detrep::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Err::InvalidArgument:
    case Err::SizeMismatch:
    case Err::NotSize2:
    case Err::ZeroConstantTerm:
      return kExitInput;
    default:
      return kExitNumeric;
  }
}

void print_error(const std::string& stage, const std::string& message) {
  Json j;
  j["error"]["stage"] = stage;
  j["error"]["message"] = message;
  std::cout << j.dump(2) << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) detrep::fail(Err::InvalidArgument, "cannot open " + path);
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) detrep::fail(Err::InvalidArgument, "malformed JSON in " + path);
  return j;
}

std::uint64_t pick_seed(std::int64_t flag_seed) {
  if (flag_seed >= 0) return static_cast<std::uint64_t>(flag_seed);
  if (const char* env = std::getenv("DETREP_SEED")) return std::strtoull(env, nullptr, 10);
  return 12345;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) detrep::fail(Err::InvalidArgument, "cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

int cmd_analyze(const std::string& input, bool want_radius, double radius_tol, bool want_knese,
                int knese_quad, int grid) {
  auto poly = detrep::io::parse_polynomial(load_json(input));
  Json out;
  if (poly.kind == detrep::io::PolynomialFile::Kind::univariate_complex) {
    const UniPoly& u = poly.uni;
    out["degree"] = u.degree();
    auto v = detrep::schur_cohn(u);
    out["stability"]["class"] = detrep::to_string(v.cls);
    out["stability"]["margin"] = v.margin;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  if (poly.kind == detrep::io::PolynomialFile::Kind::bivariate_real) {
    const RealBiPoly& p = poly.real;
    out["total_degree"] = p.total_degree();
    auto rz = detrep::is_real_zero(p);
    out["real_zero"] = rz.flag;
    if (!rz.flag) out["witness_direction"] = Json::array({(*rz.witness)[0], (*rz.witness)[1]});
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  const BiPoly& p = poly.bi;
  out["bidegree"] = Json::array({p.deg1(), p.deg2()});
  auto verdict = detrep::semistability(p, grid);
  out["stability"]["class"] = detrep::to_string(verdict.cls);
  out["stability"]["margin"] = verdict.margin;
  if (verdict.witness)
    out["stability"]["witness"] = Json::array({detrep::io::complex_to_json((*verdict.witness)[0]),
                                               detrep::io::complex_to_json((*verdict.witness)[1])});
  auto sr = detrep::self_reversive_test(p);
  out["self_reversive"]["flag"] = sr.flag;
  out["self_reversive"]["alpha"] = detrep::io::complex_to_json(sr.alpha);
  out["self_reversive"]["corner_unimodular"] = sr.corner_unimodular;
  if (verdict.cls != detrep::StabilityClass::unstable) out["scattering_schur"] = detrep::scattering_schur_test(p);
  if (want_radius) {
    auto rr = detrep::stability_radius(p, radius_tol);
    out["radius"]["s"] = rr.s;
    out["radius"]["tol"] = rr.tol;
  }
  if (want_knese) {
    auto kn = detrep::knese_check(p, knese_quad);
    out["knese"]["c"] = kn.c;
    out["knese"]["holds"] = kn.holds;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_represent(const std::string& input, bool unitary, double tol, std::uint64_t seed,
                  const std::string& out_path) {
  auto poly = detrep::io::parse_polynomial(load_json(input));
  if (poly.kind != detrep::io::PolynomialFile::Kind::bivariate_complex)
    detrep::fail(Err::InvalidArgument, "represent needs a bivariate_complex polynomial");
  const BiPoly& p = poly.bi;
  if (std::abs(p.coeff(0, 0) - Complex(1, 0)) > 1e-12 * std::max(1.0, p.max_abs()))
    detrep::fail(Err::InvalidArgument, "represent needs constant term 1");

  detrep::RepresentOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  detrep::DetRep rep = unitary ? detrep::represent_unitary(p, opts) : detrep::represent_contractive(p, opts);

  auto report = detrep::verify_detrep(p, rep, 32, seed);
  rep.max_eval_error = report.max_err;
  emit(detrep::io::serialize_detrep(rep, seed, tol), out_path);
  return report.max_err <= tol * std::max(1.0, p.max_abs()) ? kExitOk : kExitVerify;
}

int cmd_realzero(const std::string& input, const std::string& backend, bool realsym2, bool square,
                 double tol, std::uint64_t seed, const std::string& out_path) {
  auto poly = detrep::io::parse_polynomial(load_json(input));
  if (poly.kind != detrep::io::PolynomialFile::Kind::bivariate_real)
    detrep::fail(Err::InvalidArgument, "realzero needs a bivariate_real polynomial");
  const RealBiPoly& p = poly.real;
  if (std::abs(p.coeff(0, 0) - 1.0) > 1e-12 * std::max(1.0, p.max_abs()))
    detrep::fail(Err::InvalidArgument, "realzero needs constant term 1");

  detrep::RzBackend be;
  if (backend == "hermite")
    be = detrep::RzBackend::hermite;
  else if (backend == "bezoutian")
    be = detrep::RzBackend::bezoutian;
  else
    detrep::fail(Err::InvalidArgument, "unknown backend: " + backend);
  if (realsym2 && p.total_degree() != 2)
    detrep::fail(Err::NotSize2, "--realsym2 needs total degree 2");

  detrep::RzOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  detrep::RZRep rep = detrep::represent_hermitian(p, be, opts);
  if (realsym2) rep = detrep::realsym_2x2(rep);

  if (square) {
    auto dd = detrep::square_double(rep);
    emit(detrep::io::serialize_doubled(dd, be, seed, tol), out_path);
    return dd.max_eval_error <= tol * std::max(1.0, p.max_abs() * p.max_abs()) ? kExitOk : kExitVerify;
  }
  emit(detrep::io::serialize_rzrep(rep, seed, tol), out_path);
  return rep.max_eval_error <= tol * std::max(1.0, p.max_abs()) ? kExitOk : kExitVerify;
}

int cmd_verify(const std::string& poly_path, const std::string& rep_path, int grid) {
  auto poly = detrep::io::parse_polynomial(load_json(poly_path));
  Json rj = load_json(rep_path);
  if (!rj.is_object() || !rj.contains("kind")) detrep::fail(Err::InvalidArgument, "not a representation file");
  std::string kind = rj["kind"].get<std::string>();
  double tol = 1e-6;
  if (rj.contains("diagnostics") && rj["diagnostics"].contains("tol"))
    tol = rj["diagnostics"]["tol"].get<double>();

  Json out;
  if (kind == "detrep") {
    BiPoly p;
    if (poly.kind == detrep::io::PolynomialFile::Kind::bivariate_complex)
      p = poly.bi;
    else if (poly.kind == detrep::io::PolynomialFile::Kind::univariate_complex) {
      CMat g(poly.uni.degree() + 1, 1);
      for (int i = 0; i <= poly.uni.degree(); ++i) g(i, 0) = poly.uni.coeff(i);
      p = BiPoly(g);
    } else {
      detrep::fail(Err::InvalidArgument, "detrep verification needs a complex polynomial");
    }
    detrep::DetRep rep;
    rep.n1 = rj["n"][0].get<int>();
    rep.n2 = rj["n"][1].get<int>();
    rep.K = detrep::io::cmat_from_json(rj["K"]);
    auto report = detrep::verify_detrep(p, rep, grid);
    out["max_eval_error"] = report.max_err;
    out["norm"] = report.norm;
    out["unitarity_distance"] = report.unitarity_dist;
    out["tol"] = tol;
    bool ok = report.max_err <= tol * std::max(1.0, p.max_abs());
    out["pass"] = ok;
    std::cout << out.dump(2) << "\n";
    return ok ? kExitOk : kExitVerify;
  }
  if (kind == "rzrep" || kind == "doubled") {
    if (poly.kind != detrep::io::PolynomialFile::Kind::bivariate_real)
      detrep::fail(Err::InvalidArgument, "pencil verification needs a bivariate_real polynomial");
    const RealBiPoly& p = poly.real;
    CMat a1, a2;
    bool squared = kind == "doubled";
    if (squared) {
      a1 = detrep::io::rmat_from_json(rj["alpha1"]).cast<Complex>();
      a2 = detrep::io::rmat_from_json(rj["alpha2"]).cast<Complex>();
    } else {
      a1 = detrep::io::cmat_from_json(rj["A1"]);
      a2 = detrep::io::cmat_from_json(rj["A2"]);
    }
    if (a1.rows() != a1.cols() || a2.rows() != a2.cols() || a1.rows() != a2.rows())
      detrep::fail(Err::SizeMismatch, "pencil matrices must be square and equal-sized");
    double err = 0.0;
    for (int a = 0; a < grid; ++a)
      for (int b = 0; b < grid; ++b) {
        double x = -1.0 + 2.0 * (a + 0.5) / grid;
        double y = -1.0 + 2.0 * (b + 0.5) / grid;
        double target = p.eval(x, y);
        if (squared) target *= target;
        err = std::max(err, std::abs(detrep::rz_pencil_eval(a1, a2, x, y) - Complex(target, 0)));
      }
    out["max_eval_error"] = err;
    out["tol"] = tol;
    double scale = std::max(1.0, squared ? p.max_abs() * p.max_abs() : p.max_abs());
    bool ok = err <= tol * scale;
    out["pass"] = ok;
    std::cout << out.dump(2) << "\n";
    return ok ? kExitOk : kExitVerify;
  }
  detrep::fail(Err::InvalidArgument, "unknown representation kind: " + kind);
}

int cmd_selftest() {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name << "\n";
    if (!ok) ++failures;
  };

  {  // contractive representation of 1 + 0.3 z1 + 0.5 z2
    CMat g = CMat::Zero(2, 2);
    g(0, 0) = 1;
    g(1, 0) = 0.3;
    g(0, 1) = 0.5;
    BiPoly p(g);
    bool ok = false;
    try {
      auto rep = detrep::represent_contractive(p);
      ok = rep.max_eval_error <= 1e-7 && std::abs(rep.norm - 0.8) <= 1e-4;
    } catch (const Error&) {
    }
    report("contractive representation (two-term example)", ok);
  }
  {  // unitary representation of 1 - z1 z2 - z1^2/2 - z2^2/2 + z1^2 z2^2
    CMat g = CMat::Zero(3, 3);
    g(0, 0) = 1;
    g(1, 1) = -1;
    g(2, 0) = -0.5;
    g(0, 2) = -0.5;
    g(2, 2) = 1;
    BiPoly p(g);
    bool ok = false;
    try {
      auto rep = detrep::represent_unitary(p);
      ok = rep.max_eval_error <= 1e-6 && detrep::unitarity_distance(rep.K) <= 1e-6;
    } catch (const Error&) {
    }
    report("unitary representation (self-reversive example)", ok);
  }
  {  // Hermitian pencil for 1 + 4x + 10y - x^2 - 2xy - y^2
    RMat g = RMat::Zero(3, 3);
    g(0, 0) = 1;
    g(1, 0) = 4;
    g(0, 1) = 10;
    g(2, 0) = -1;
    g(1, 1) = -2;
    g(0, 2) = -1;
    RealBiPoly p(g);
    bool ok = false;
    try {
      auto rep = detrep::represent_hermitian(p);
      ok = rep.max_eval_error <= 1e-8;
    } catch (const Error&) {
    }
    report("Hermitian pencil (real-zero example)", ok);
  }
  return failures == 0 ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"determinantal representations of bivariate polynomials"};
  app.require_subcommand(1);

  std::string input, rep_path, out_path;
  std::int64_t seed_flag = -1;
  double tol = 1e-6, radius_tol = 1e-8;
  int grid = 32, analyze_grid = 512, knese_quad = 128;
  bool unitary = false, want_radius = false, want_knese = false, realsym2 = false, square = false;
  std::string backend = "hermite";

  auto* analyze = app.add_subcommand("analyze", "stability and symmetry report");
  analyze->add_option("input", input)->required();
  analyze->add_flag("--radius", want_radius);
  analyze->add_option("--tol", radius_tol);
  analyze->add_flag("--knese", want_knese);
  analyze->add_option("--quad", knese_quad);
  analyze->add_option("--grid", analyze_grid);

  auto* represent = app.add_subcommand("represent", "contractive or unitary determinantal representation");
  represent->add_option("input", input)->required();
  represent->add_flag("--unitary", unitary);
  represent->add_option("--tol", tol);
  represent->add_option("--seed", seed_flag);
  represent->add_option("-o,--output", out_path);

  auto* realzero = app.add_subcommand("realzero", "Hermitian pencil for a real-zero polynomial");
  realzero->add_option("input", input)->required();
  realzero->add_option("--backend", backend)->check(CLI::IsMember({"hermite", "bezoutian"}));
  realzero->add_flag("--realsym2", realsym2);
  realzero->add_flag("--square", square);
  realzero->add_option("--tol", tol);
  realzero->add_option("--seed", seed_flag);
  realzero->add_option("-o,--output", out_path);

  auto* verify = app.add_subcommand("verify", "re-check a stored representation");
  verify->add_option("poly", input)->required();
  verify->add_option("rep", rep_path)->required();
  verify->add_option("--grid", grid);

  app.add_subcommand("selftest", "run the built-in example regressions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("analyze"))
      return cmd_analyze(input, want_radius, radius_tol, want_knese, knese_quad, analyze_grid);
    if (app.got_subcommand("represent"))
      return cmd_represent(input, unitary, tol, pick_seed(seed_flag), out_path);
    if (app.got_subcommand("realzero"))
      return cmd_realzero(input, backend, realsym2, square, tol, pick_seed(seed_flag), out_path);
    if (app.got_subcommand("verify")) return cmd_verify(input, rep_path, grid);
    return cmd_selftest();
  } catch (const Error& e) {
    print_error(app.get_subcommands().front()->get_name(), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitNumeric;
  }
}
