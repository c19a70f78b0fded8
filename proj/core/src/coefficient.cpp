#include "sdlq/coefficient.hpp"

#include <cmath>
#include <map>

#include "sdlq/errors.hpp"

namespace sdlq {
namespace {

struct BuiltinEntry {
  Index rows;
  Index cols;
  CoefficientFunction::Generator fn;
};

const std::map<std::string, BuiltinEntry, std::less<>>& builtin_table() {
  static const std::map<std::string, BuiltinEntry, std::less<>> table = {
      {"sin", {1, 1, [](double t) { return Matrix::Constant(1, 1, std::sin(t)); }}},
      {"cos", {1, 1, [](double t) { return Matrix::Constant(1, 1, std::cos(t)); }}},
      {"exp", {1, 1, [](double t) { return Matrix::Constant(1, 1, std::exp(t)); }}},
      // Undamped oscillator with periodically modulated stiffness.
      {"oscillator-A",
       {2, 2,
        [](double t) {
          Matrix a(2, 2);
          a << 0.0, 1.0, -(1.0 + 0.5 * std::sin(t)), 0.0;
          return a;
        }}},
      {"rotating-B",
       {2, 1,
        [](double t) {
          Matrix b(2, 1);
          b << std::cos(t), std::sin(t);
          return b;
        }}},
  };
  return table;
}

}  // namespace

CoefficientFunction::CoefficientFunction() : terms_{Matrix(0, 0)} {}

CoefficientFunction CoefficientFunction::constant(Matrix value) {
  CoefficientFunction f;
  f.kind_ = Kind::Constant;
  f.rows_ = value.rows();
  f.cols_ = value.cols();
  f.terms_ = {std::move(value)};
  return f;
}

CoefficientFunction CoefficientFunction::zero(Index rows, Index cols) {
  return constant(Matrix::Zero(rows, cols));
}

CoefficientFunction CoefficientFunction::polynomial(std::vector<Matrix> terms) {
  if (terms.empty()) {
    throw Error(ErrorCode::InvalidInput, "polynomial coefficient with no terms");
  }
  const Index r = terms.front().rows();
  const Index c = terms.front().cols();
  for (const auto& term : terms) {
    if (term.rows() != r || term.cols() != c) {
      throw Error(ErrorCode::DimensionMismatch, "polynomial terms of differing shapes");
    }
  }
  if (terms.size() == 1) {
    return constant(std::move(terms.front()));
  }
  CoefficientFunction f;
  f.kind_ = Kind::Polynomial;
  f.rows_ = r;
  f.cols_ = c;
  f.terms_ = std::move(terms);
  return f;
}

CoefficientFunction CoefficientFunction::from_entry_polynomials(
    const std::vector<std::vector<std::vector<double>>>& entries) {
  if (entries.empty() || entries.front().empty()) {
    throw Error(ErrorCode::InvalidInput, "empty polynomial matrix");
  }
  const auto rows = static_cast<Index>(entries.size());
  const auto cols = static_cast<Index>(entries.front().size());
  std::size_t degree_count = 1;
  for (const auto& row : entries) {
    if (static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorCode::DimensionMismatch, "ragged polynomial matrix");
    }
    for (const auto& coeffs : row) {
      degree_count = std::max(degree_count, coeffs.size());
    }
  }
  std::vector<Matrix> terms(degree_count, Matrix::Zero(rows, cols));
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const auto& coeffs = entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      for (std::size_t d = 0; d < coeffs.size(); ++d) {
        terms[d](r, c) = coeffs[d];
      }
    }
  }
  return polynomial(std::move(terms));
}

CoefficientFunction CoefficientFunction::builtin(std::string_view name) {
  const auto& table = builtin_table();
  auto it = table.find(name);
  if (it == table.end()) {
    throw Error(ErrorCode::InvalidInput, "unknown builtin coefficient '" + std::string(name) + "'");
  }
  CoefficientFunction f;
  f.kind_ = Kind::Builtin;
  f.rows_ = it->second.rows;
  f.cols_ = it->second.cols;
  f.terms_.clear();
  f.name_ = it->first;
  f.generator_ = std::make_shared<const Generator>(it->second.fn);
  return f;
}

std::vector<std::string> CoefficientFunction::builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : builtin_table()) {
    names.push_back(name);
  }
  return names;
}

Matrix CoefficientFunction::operator()(double t) const {
  Matrix out;
  evaluate_into(t, out);
  return out;
}

void CoefficientFunction::evaluate_into(double t, Matrix& out) const {
  switch (kind_) {
    case Kind::Constant:
      out = terms_.front();
      return;
    case Kind::Polynomial: {
      // Horner from the highest degree down.
      out = terms_.back();
      for (auto it = terms_.rbegin() + 1; it != terms_.rend(); ++it) {
        out *= t;
        out += *it;
      }
      return;
    }
    case Kind::Builtin:
      out = (*generator_)(t);
      return;
  }
}

Vector CoefficientFunction::vector_at(double t) const {
  if (cols_ != 1) {
    throw Error(ErrorCode::DimensionMismatch, "vector_at on a matrix-valued coefficient");
  }
  Matrix m;
  evaluate_into(t, m);
  return m.col(0);
}

bool CoefficientFunction::is_zero() const {
  if (kind_ == Kind::Builtin) {
    return false;
  }
  for (const auto& term : terms_) {
    if ((term.array() != 0.0).any()) {
      return false;
    }
  }
  return true;
}

CoefficientFunction CoefficientFunction::symmetrized() const {
  if (rows_ != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "symmetrizing a non-square coefficient");
  }
  if (kind_ == Kind::Builtin) {
    if (name_.ends_with("+sym")) {
      return *this;
    }
    CoefficientFunction f = *this;
    auto inner = generator_;
    f.generator_ = std::make_shared<const Generator>([inner](double t) {
      Matrix m = (*inner)(t);
      return Matrix(0.5 * (m + m.transpose()));
    });
    f.name_ = name_ + "+sym";
    return f;
  }
  std::vector<Matrix> terms;
  terms.reserve(terms_.size());
  for (const auto& term : terms_) {
    terms.emplace_back(0.5 * (term + term.transpose()));
  }
  return kind_ == Kind::Constant ? constant(std::move(terms.front())) : polynomial(std::move(terms));
}

CoefficientFunction CoefficientFunction::transposed() const {
  if (kind_ == Kind::Builtin) {
    if (name_.ends_with("+sym")) {
      return *this;
    }
    CoefficientFunction f = *this;
    auto inner = generator_;
    f.generator_ = std::make_shared<const Generator>([inner](double t) { return Matrix((*inner)(t).transpose()); });
    f.rows_ = cols_;
    f.cols_ = rows_;
    f.name_ = name_ + "+T";
    return f;
  }
  std::vector<Matrix> terms;
  terms.reserve(terms_.size());
  for (const auto& term : terms_) {
    terms.emplace_back(term.transpose());
  }
  return kind_ == Kind::Constant ? constant(std::move(terms.front())) : polynomial(std::move(terms));
}

CoefficientFunction CoefficientFunction::times(const CoefficientFunction& rhs) const {
  if (kind_ == Kind::Builtin || rhs.kind_ == Kind::Builtin) {
    throw Error(ErrorCode::InvalidInput, "product of builtin coefficients is not representable");
  }
  if (cols_ != rhs.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient product shape mismatch");
  }
  std::vector<Matrix> terms(terms_.size() + rhs.terms_.size() - 1, Matrix::Zero(rows_, rhs.cols_));
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.terms_.size(); ++j) {
      terms[i + j].noalias() += terms_[i] * rhs.terms_[j];
    }
  }
  return polynomial(std::move(terms));
}

}  // namespace sdlq
