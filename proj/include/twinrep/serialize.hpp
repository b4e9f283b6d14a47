#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "twinrep/linalg.hpp"
#include "twinrep/matrix.hpp"
#include "twinrep/scalar.hpp"

// JSON forms:
//   exact scalar  {"re": ["p", "q"], "im": ["r", "s"]}   (decimal strings)
//   float scalar  {"re": x, "im": y}
//   matrix        {"rows": r, "cols": c, "backend": "exact"|"float",
//                  "data": [[scalar, ...], ...]}         (row-major)

namespace twinrep {

using json = nlohmann::json;

inline json to_json(const GaussianRational& x) {
  return {{"re", {x.re().get_num().get_str(), x.re().get_den().get_str()}},
          {"im", {x.im().get_num().get_str(), x.im().get_den().get_str()}}};
}

inline json to_json(const ComplexFloat& x) { return {{"re", x.re()}, {"im", x.im()}}; }

namespace detail {

inline mpq_class rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ParseError("exact component must be [\"p\", \"q\"]");
  }
  mpz_class num, den;
  if (num.set_str(j[0].get<std::string>(), 10) != 0 || den.set_str(j[1].get<std::string>(), 10) != 0) {
    throw ParseError("malformed big integer in exact scalar");
  }
  if (den == 0) throw ParseError("zero denominator in exact scalar");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace detail

template <Scalar F>
F scalar_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    throw ParseError("scalar JSON needs \"re\" and \"im\"");
  }
  if constexpr (F::is_exact) {
    return GaussianRational(detail::rational_from_json(j.at("re")), detail::rational_from_json(j.at("im")));
  } else {
    if (!j.at("re").is_number() || !j.at("im").is_number()) throw ParseError("float scalar needs numbers");
    return ComplexFloat(j.at("re").get<double>(), j.at("im").get<double>());
  }
}

inline AnyScalar any_scalar_from_json(const json& j) {
  if (j.is_object() && j.contains("re") && j.at("re").is_array()) return scalar_from_json<GaussianRational>(j);
  return scalar_from_json<ComplexFloat>(j);
}

template <Scalar F>
json to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"backend", std::string(F::backend_name)}, {"data", rows}};
}

template <Scalar F>
Matrix<F> matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object");
  const std::string backend = j.at("backend").get<std::string>();
  if (backend != F::backend_name) {
    throw ParseError("matrix backend is '" + backend + "', expected '" + std::string(F::backend_name) + "'");
  }
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows) throw ParseError("matrix data has wrong row count");
  Matrix<F> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!data[i].is_array() || data[i].size() != cols) throw ParseError("matrix data has wrong column count");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json<F>(data[i][c]);
  }
  return m;
}

/// Bit-level equality: exact values compare exactly, floats compare bitwise.
template <Scalar F>
bool identical(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if constexpr (F::is_exact) {
      if (!(a.data()[k] == b.data()[k])) return false;
    } else {
      if (!a.data()[k].identical(b.data()[k])) return false;
    }
  }
  return true;
}

template <Scalar F>
json to_json(const Subspace<F>& s) {
  json basis = json::array();
  for (const auto& v : s.basis()) basis.push_back(to_json(v));
  return {{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", basis}};
}

}  // namespace twinrep
