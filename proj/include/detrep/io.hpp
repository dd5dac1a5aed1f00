#ifndef DETREP_IO_HPP
#define DETREP_IO_HPP

#include <string>

#include <json.hpp>

#include "detrep/bidisk.hpp"
#include "detrep/realzero.hpp"

namespace detrep::io {

using Json = nlohmann::ordered_json;

struct PolynomialFile {
  enum class Kind { bivariate_complex, bivariate_real, univariate_complex };
  Kind kind = Kind::bivariate_complex;
  BiPoly bi;
  RealBiPoly real;
  UniPoly uni;
};

inline Json complex_to_json(Complex v) { return Json::array({v.real(), v.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(Err::InvalidArgument, "expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json cmat_to_json(const CMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMat cmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(Err::InvalidArgument, "expected a matrix");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) fail(Err::InvalidArgument, "ragged matrix");
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

inline Json rmat_to_json(const RMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RMat rmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(Err::InvalidArgument, "expected a matrix");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  RMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) fail(Err::InvalidArgument, "ragged matrix");
    for (int c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) fail(Err::InvalidArgument, "expected a real entry");
      m(i, c) = j[i][c].get<double>();
    }
  }
  return m;
}

inline PolynomialFile parse_polynomial(const Json& j) {
  PolynomialFile out;
  if (!j.is_object() || !j.contains("kind") || !j.contains("coeffs"))
    fail(Err::InvalidArgument, "polynomial file needs kind and coeffs");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "bivariate_complex") {
    out.kind = PolynomialFile::Kind::bivariate_complex;
    CMat g = cmat_from_json(j["coeffs"]);
    out.bi = BiPoly(g);
    if (j.contains("bidegree")) {
      auto bd = j["bidegree"];
      if (!bd.is_array() || bd.size() != 2 || bd[0].get<int>() != static_cast<int>(g.rows()) - 1 ||
          bd[1].get<int>() != static_cast<int>(g.cols()) - 1)
        fail(Err::InvalidArgument, "declared bidegree does not match the coefficient grid");
    }
  } else if (kind == "bivariate_real") {
    out.kind = PolynomialFile::Kind::bivariate_real;
    RMat g = rmat_from_json(j["coeffs"]);
    out.real = RealBiPoly(g);
    if (j.contains("bidegree")) {
      auto bd = j["bidegree"];
      if (!bd.is_array() || bd.size() != 2 || bd[0].get<int>() != static_cast<int>(g.rows()) - 1 ||
          bd[1].get<int>() != static_cast<int>(g.cols()) - 1)
        fail(Err::InvalidArgument, "declared bidegree does not match the coefficient grid");
    }
  } else if (kind == "univariate_complex") {
    out.kind = PolynomialFile::Kind::univariate_complex;
    const Json& c = j["coeffs"];
    if (!c.is_array() || c.empty()) fail(Err::InvalidArgument, "expected coefficient list");
    std::vector<Complex> coeffs;
    for (const auto& e : c) coeffs.push_back(complex_from_json(e));
    out.uni = UniPoly(std::move(coeffs));
    if (j.contains("degree") && j["degree"].get<int>() != static_cast<int>(c.size()) - 1)
      fail(Err::InvalidArgument, "declared degree does not match the coefficient list");
  } else {
    fail(Err::InvalidArgument, "unknown polynomial kind: " + kind);
  }
  return out;
}

inline Json serialize_polynomial_bi(const BiPoly& p) {
  Json j;
  j["kind"] = "bivariate_complex";
  j["bidegree"] = Json::array({p.deg1(), p.deg2()});
  Json rows = Json::array();
  for (int i = 0; i <= p.deg1(); ++i) {
    Json row = Json::array();
    for (int c = 0; c <= p.deg2(); ++c) row.push_back(complex_to_json(p.coeff(i, c)));
    rows.push_back(std::move(row));
  }
  j["coeffs"] = std::move(rows);
  return j;
}

inline Json serialize_detrep(const DetRep& rep, std::uint64_t seed, double tol) {
  Json j;
  j["kind"] = "detrep";
  j["n"] = Json::array({rep.n1, rep.n2});
  j["K"] = cmat_to_json(rep.K);
  Json diag;
  diag["norm"] = rep.norm;
  diag["max_eval_error"] = rep.max_eval_error;
  diag["singular_values"] = singular_values(rep.K);
  diag["route"] = to_string(rep.route);
  diag["seed"] = seed;
  diag["tol"] = tol;
  j["diagnostics"] = std::move(diag);
  return j;
}

inline Json serialize_rzrep(const RZRep& rep, std::uint64_t seed, double tol) {
  Json j;
  j["kind"] = "rzrep";
  j["d"] = rep.d;
  j["A1"] = cmat_to_json(rep.A1);
  j["A2"] = cmat_to_json(rep.A2);
  Json diag;
  diag["max_eval_error"] = rep.max_eval_error;
  diag["backend"] = to_string(rep.backend);
  diag["seed"] = seed;
  diag["tol"] = tol;
  j["diagnostics"] = std::move(diag);
  return j;
}

inline Json serialize_doubled(const Doubled& dd, RzBackend backend, std::uint64_t seed, double tol) {
  Json j;
  j["kind"] = "doubled";
  j["d"] = static_cast<int>(dd.alpha1.rows());
  j["alpha1"] = rmat_to_json(dd.alpha1);
  j["alpha2"] = rmat_to_json(dd.alpha2);
  Json diag;
  diag["max_eval_error"] = dd.max_eval_error;
  diag["backend"] = to_string(backend);
  diag["seed"] = seed;
  diag["tol"] = tol;
  j["diagnostics"] = std::move(diag);
  return j;
}

}  // namespace detrep::io

#endif  // DETREP_IO_HPP
