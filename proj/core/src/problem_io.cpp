#include "sdlq/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "sdlq/errors.hpp"

namespace sdlq {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidInput, "field '" + field + "': " + why);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) {
    bad(field, "expected a number");
  }
  return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& field) {
  if (j.is_number()) {
    return {j.get<double>()};
  }
  if (!j.is_array()) {
    bad(field, "expected a list of numbers");
  }
  std::vector<double> out;
  for (const auto& v : j) {
    out.push_back(number(v, field));
  }
  return out;
}

Matrix constant_matrix(const json& j, const std::string& field) {
  if (j.is_number()) {
    return Matrix::Constant(1, 1, j.get<double>());
  }
  if (!j.is_array() || j.empty()) {
    bad(field, "expected a nested array");
  }
  if (!j.front().is_array()) {
    // Flat list: a column vector.
    const auto values = number_list(j, field);
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto row = number_list(j[static_cast<std::size_t>(r)], field);
    if (static_cast<Index>(row.size()) != cols) {
      bad(field, "ragged matrix rows");
    }
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = row[static_cast<std::size_t>(c)];
    }
  }
  return m;
}

CoefficientFunction coefficient(const json& j, const std::string& field) {
  if (j.is_object()) {
    if (j.contains("builtin")) {
      if (!j["builtin"].is_string()) {
        bad(field, "builtin must name a function");
      }
      return CoefficientFunction::builtin(j["builtin"].get<std::string>());
    }
    if (!j.contains("poly")) {
      bad(field, "object must contain 'poly' or 'builtin'");
    }
    const json& poly = j["poly"];
    if (!poly.is_array() || poly.empty()) {
      bad(field, "'poly' must be a non-empty array");
    }
    std::vector<std::vector<std::vector<double>>> entries;
    // [[c0, c1], ...] is a column of entries; [[[c0, c1], ...], ...] a matrix.
    if (poly.front().is_array() && !poly.front().empty() && poly.front().front().is_number()) {
      for (const auto& entry : poly) {
        entries.push_back({number_list(entry, field)});
      }
    } else {
      for (const auto& row : poly) {
        if (!row.is_array()) {
          bad(field, "'poly' rows must be arrays");
        }
        std::vector<std::vector<double>> out_row;
        for (const auto& entry : row) {
          out_row.push_back(number_list(entry, field));
        }
        entries.push_back(std::move(out_row));
      }
    }
    return CoefficientFunction::from_entry_polynomials(entries);
  }
  return CoefficientFunction::constant(constant_matrix(j, field));
}

Vector fixed_vector(const json& j, const std::string& field) {
  const auto values = number_list(j, field);
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) {
    out.push_back(v(k));
  }
  return out;
}

json coefficient_json(const CoefficientFunction& f, bool vector_shape) {
  switch (f.kind()) {
    case CoefficientFunction::Kind::Builtin:
      return json{{"builtin", f.builtin_name()}};
    case CoefficientFunction::Kind::Constant:
      return vector_shape ? vector_json(f.terms().front().col(0)) : matrix_json(f.terms().front());
    case CoefficientFunction::Kind::Polynomial: {
      json poly = json::array();
      for (Index r = 0; r < f.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < f.cols(); ++c) {
          json coeffs = json::array();
          for (const auto& term : f.terms()) {
            coeffs.push_back(term(r, c));
          }
          row.push_back(std::move(coeffs));
        }
        if (vector_shape) {
          poly.push_back(row.front());
        } else {
          poly.push_back(std::move(row));
        }
      }
      return json{{"poly", std::move(poly)}};
    }
  }
  return nullptr;
}

}  // namespace

LQProblem problem_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::InvalidInput, "problem file must be a JSON object");
  }
  for (const char* key : {"a", "b", "n", "m", "A", "B", "W", "R", "S", "qa"}) {
    if (!doc.contains(key)) {
      bad(key, "missing");
    }
  }
  if (!doc["n"].is_number_integer() || !doc["m"].is_number_integer()) {
    throw Error(ErrorCode::InvalidInput, "n and m must be integers");
  }
  LQProblem p = make_problem(doc["n"].get<Index>(), doc["m"].get<Index>(), number(doc["a"], "a"),
                             number(doc["b"], "b"));
  if (p.n < 1 || p.m < 1) {
    throw Error(ErrorCode::DimensionMismatch, "n and m must be positive");
  }
  p.A = coefficient(doc["A"], "A");
  p.B = coefficient(doc["B"], "B");
  p.W = coefficient(doc["W"], "W");
  p.R = coefficient(doc["R"], "R");
  p.S = constant_matrix(doc["S"], "S");
  if (doc.contains("omega")) {
    p.omega = coefficient(doc["omega"], "omega");
  }
  if (doc.contains("x")) {
    p.x_ref = coefficient(doc["x"], "x");
  }
  if (doc.contains("v")) {
    p.v_ref = coefficient(doc["v"], "v");
  }
  p.q_a = fixed_vector(doc["qa"], "qa");
  if (doc.contains("qb")) {
    p.q_b = fixed_vector(doc["qb"], "qb");
  }
  return validate_problem(std::move(p));
}

LQProblem load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::InvalidInput, "cannot open problem file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, "malformed problem file " + path.string() + ": " + e.what());
  }
  return problem_from_json(doc);
}

json problem_to_json(const LQProblem& p) {
  return json{{"a", p.a},
              {"b", p.b},
              {"n", p.n},
              {"m", p.m},
              {"A", coefficient_json(p.A, false)},
              {"B", coefficient_json(p.B, false)},
              {"W", coefficient_json(p.W, false)},
              {"R", coefficient_json(p.R, false)},
              {"S", matrix_json(p.S)},
              {"omega", coefficient_json(p.omega, true)},
              {"x", coefficient_json(p.x_ref, true)},
              {"v", coefficient_json(p.v_ref, true)},
              {"qa", vector_json(p.q_a)},
              {"qb", vector_json(p.q_b)}};
}

}  // namespace sdlq
