#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sdlq/types.hpp"

namespace sdlq {

/// Time-dependent matrix (or column vector) data of an LQ problem.
///
/// Three representations are supported: a constant matrix, a matrix
/// polynomial sum_d C_d t^d (built from per-entry coefficient lists), and a
/// named builtin function from a fixed table. Evaluation is pure: the same
/// t always produces bitwise identical output.
class CoefficientFunction {
 public:
  enum class Kind { Constant, Polynomial, Builtin };

  using Generator = std::function<Matrix(double)>;

  /// Zero 0x0 constant; mostly useful as a placeholder before assignment.
  CoefficientFunction();

  static CoefficientFunction constant(Matrix value);
  static CoefficientFunction zero(Index rows, Index cols);

  /// Matrix polynomial, `terms[d]` is the coefficient of t^d.
  static CoefficientFunction polynomial(std::vector<Matrix> terms);

  /// Per-entry polynomial, `entries[r][c]` lists coefficients lowest degree first.
  static CoefficientFunction from_entry_polynomials(
      const std::vector<std::vector<std::vector<double>>>& entries);

  /// Looks a name up in the builtin table; throws Error(InvalidInput) if absent.
  static CoefficientFunction builtin(std::string_view name);

  static std::vector<std::string> builtin_names();

  Kind kind() const noexcept { return kind_; }
  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  const std::string& builtin_name() const noexcept { return name_; }

  /// Polynomial terms (a single term for constants); empty for builtins.
  const std::vector<Matrix>& terms() const noexcept { return terms_; }

  Matrix operator()(double t) const;
  void evaluate_into(double t, Matrix& out) const;

  /// Column-vector convenience; requires cols() == 1.
  Vector vector_at(double t) const;

  /// Constant or polynomial with every coefficient exactly zero.
  bool is_zero() const;
  bool is_constant() const noexcept { return kind_ == Kind::Constant; }

  /// (M + M^T) / 2 in the same representation where possible.
  CoefficientFunction symmetrized() const;

  CoefficientFunction transposed() const;

  /// this(t) * rhs(t); only for constant/polynomial operands.
  CoefficientFunction times(const CoefficientFunction& rhs) const;

 private:
  Kind kind_ = Kind::Constant;
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Matrix> terms_;
  std::string name_;
  std::shared_ptr<const Generator> generator_;
};

}  // namespace sdlq
