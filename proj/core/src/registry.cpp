#include "sdlq/registry.hpp"

#include <cmath>
#include <random>

namespace sdlq {
namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double v : row) {
      m(r, c++) = v;
    }
    ++r;
  }
  return m;
}

ProblemRegistryEntry double_integrator() {
  LQProblem p = make_problem(2, 1, 0.0, 1.0);
  p.A = CoefficientFunction::constant(mat({{0.0, 1.0}, {0.0, 0.0}}));
  p.B = CoefficientFunction::constant(mat({{0.0}, {1.0}}));
  p.W = CoefficientFunction::constant(Matrix::Identity(2, 2));
  p.R = CoefficientFunction::constant(Matrix::Identity(1, 1));
  p.S = Matrix::Identity(2, 2);
  p.q_a = (Vector(2) << 1.0, 0.0).finished();
  return {"double-integrator", "n=2, m=1 double integrator, homogeneous, unit weights", validate_problem(p),
          std::nullopt, ""};
}

ProblemRegistryEntry timevarying_demo() {
  LQProblem p = make_problem(2, 1, 0.0, 1.0);
  // A(t) = [[0, 1], [-1 - t, -0.2 t^2]]
  p.A = CoefficientFunction::polynomial({mat({{0.0, 1.0}, {-1.0, 0.0}}), mat({{0.0, 0.0}, {-1.0, 0.0}}),
                                         mat({{0.0, 0.0}, {0.0, -0.2}})});
  p.B = CoefficientFunction::polynomial({mat({{0.0}, {1.0}}), mat({{0.1}, {0.0}})});
  p.W = CoefficientFunction::constant(Matrix::Identity(2, 2));
  p.R = CoefficientFunction::polynomial({mat({{1.0}}), mat({{1.0}})});
  p.S = Matrix::Identity(2, 2);
  p.omega = CoefficientFunction::polynomial({mat({{0.0}, {0.0}}), mat({{0.0}, {0.5}})});
  p.x_ref = CoefficientFunction::polynomial({mat({{1.0}, {0.0}}), mat({{-1.0}, {0.0}})});
  p.v_ref = CoefficientFunction::zero(1, 1);
  p.q_a = (Vector(2) << 1.0, 0.0).finished();
  p.q_b = (Vector(2) << 0.2, 0.0).finished();
  return {"timevarying-demo", "n=2, m=1 nonautonomous, nonhomogeneous polynomial-coefficient problem",
          validate_problem(p), std::nullopt, ""};
}

Matrix uniform_matrix(std::mt19937_64& rng, Index rows, Index cols, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  // Fill column by column in a fixed order so the draw sequence is defined.
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      m(r, c) = dist(rng);
    }
  }
  return m;
}

CoefficientFunction random_polynomial(std::mt19937_64& rng, Index rows, Index cols, int degree, double lo,
                                      double hi) {
  std::vector<Matrix> terms;
  for (int d = 0; d <= degree; ++d) {
    terms.push_back(uniform_matrix(rng, rows, cols, lo, hi));
  }
  return CoefficientFunction::polynomial(std::move(terms));
}

}  // namespace

double dontchev_optimal_control(double t) {
  const double e3 = std::exp(3.0);
  return 2.0 * (std::exp(3.0 * t) - e3) / (std::exp(1.5 * t) * (2.0 + e3));
}

ProblemRegistryEntry dontchev_problem() {
  LQProblem p = make_problem(1, 1, 0.0, 1.0);
  // int q^2 + u^2/2 = 1/2 int 2 q^2 + 1 u^2
  p.A = CoefficientFunction::constant(Matrix::Constant(1, 1, 0.5));
  p.B = CoefficientFunction::constant(Matrix::Constant(1, 1, 1.0));
  p.W = CoefficientFunction::constant(Matrix::Constant(1, 1, 2.0));
  p.R = CoefficientFunction::constant(Matrix::Constant(1, 1, 1.0));
  p.S = Matrix::Zero(1, 1);
  p.q_a = Vector::Constant(1, 1.0);
  ControlFunction reference = [](double t) { return Vector::Constant(1, dontchev_optimal_control(t)); };
  return {"dontchev", "scalar q' = q/2 + u, q(0) = 1, minimize int_0^1 q^2 + u^2/2", validate_problem(p),
          std::move(reference), "closed-form optimal permanent control of the scalar benchmark"};
}

std::vector<std::string> registry_names() { return {"dontchev", "double-integrator", "timevarying-demo"}; }

std::optional<ProblemRegistryEntry> find_problem(std::string_view name) {
  if (name == "dontchev") {
    return dontchev_problem();
  }
  if (name == "double-integrator") {
    return double_integrator();
  }
  if (name == "timevarying-demo") {
    return timevarying_demo();
  }
  return std::nullopt;
}

std::string_view to_string(RandomVariant variant) {
  switch (variant) {
    case RandomVariant::Homogeneous: return "homogeneous";
    case RandomVariant::Nonhomogeneous: return "nonhomogeneous";
    case RandomVariant::Nonautonomous: return "nonautonomous";
  }
  return "unknown";
}

RandomCase random_case(std::uint64_t seed, const RandomProblemOptions& options) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> n_dist(1, options.max_n);
  std::uniform_int_distribution<Index> m_dist(1, options.max_m);
  std::uniform_int_distribution<Index> N_dist(1, options.max_intervals);

  RandomCase rc;
  rc.seed = seed;
  rc.variant = options.variant.value_or(static_cast<RandomVariant>(seed % 3));
  const Index n = n_dist(rng);
  const Index m = m_dist(rng);
  rc.intervals = N_dist(rng);

  LQProblem p = make_problem(n, m, 0.0, 1.0);
  const Matrix eye_m = options.c_R * Matrix::Identity(m, m);
  const Matrix S_root = uniform_matrix(rng, n, n, -1.0, 1.0);
  p.S = S_root.transpose() * S_root;
  p.q_a = uniform_matrix(rng, n, 1, -1.0, 1.0).col(0);

  if (rc.variant == RandomVariant::Nonautonomous) {
    p.A = random_polynomial(rng, n, n, 2, -2.0, 2.0);
    p.B = random_polynomial(rng, n, m, 1, -2.0, 2.0);
    const auto w_root = random_polynomial(rng, n, n, 1, -1.0, 1.0);
    p.W = w_root.transposed().times(w_root);
    const auto r_root = random_polynomial(rng, m, m, 1, -1.0, 1.0);
    auto r_terms = r_root.transposed().times(r_root).terms();
    r_terms.front() += eye_m;
    p.R = CoefficientFunction::polynomial(std::move(r_terms));
    p.omega = random_polynomial(rng, n, 1, 2, -1.0, 1.0);
    p.x_ref = random_polynomial(rng, n, 1, 2, -1.0, 1.0);
    p.v_ref = random_polynomial(rng, m, 1, 2, -1.0, 1.0);
    p.q_b = uniform_matrix(rng, n, 1, -1.0, 1.0).col(0);
  } else {
    p.A = CoefficientFunction::constant(uniform_matrix(rng, n, n, -2.0, 2.0));
    p.B = CoefficientFunction::constant(uniform_matrix(rng, n, m, -2.0, 2.0));
    const Matrix w_root = uniform_matrix(rng, n, n, -1.0, 1.0);
    p.W = CoefficientFunction::constant(w_root.transpose() * w_root);
    const Matrix r_root = uniform_matrix(rng, m, m, -1.0, 1.0);
    p.R = CoefficientFunction::constant(eye_m + r_root.transpose() * r_root);
    if (rc.variant == RandomVariant::Nonhomogeneous) {
      p.omega = CoefficientFunction::constant(uniform_matrix(rng, n, 1, -1.0, 1.0));
      p.x_ref = CoefficientFunction::constant(uniform_matrix(rng, n, 1, -1.0, 1.0));
      p.v_ref = CoefficientFunction::constant(uniform_matrix(rng, m, 1, -1.0, 1.0));
      p.q_b = uniform_matrix(rng, n, 1, -1.0, 1.0).col(0);
    }
  }
  rc.problem = validate_problem(std::move(p));
  return rc;
}

}  // namespace sdlq
