#include "sdlq/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sdlq/errors.hpp"

namespace sdlq {
namespace {

void require_shape(const CoefficientFunction& f, Index rows, Index cols, const char* what) {
  if (f.rows() != rows || f.cols() != cols) {
    std::ostringstream os;
    os << what << " is " << f.rows() << "x" << f.cols() << ", expected " << rows << "x" << cols;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

void require_size(const Vector& v, Index size, const char* what) {
  if (v.size() != size) {
    std::ostringstream os;
    os << what << " has length " << v.size() << ", expected " << size;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// Relative slack for semidefinite checks so exact-zero forms built from
// M^T M pass despite rounding.
double psd_slack(const Matrix& m) { return 1e-12 * (1.0 + m.norm()); }

[[noreturn]] void fail_eigen(ErrorCode code, const char* what, double t, double eig) {
  std::ostringstream os;
  os.precision(17);
  os << what << " fails at t=" << t << " (min eigenvalue " << eig << ")";
  throw Error(code, os.str());
}

}  // namespace

bool LQProblem::is_homogeneous() const {
  return omega.is_zero() && x_ref.is_zero() && v_ref.is_zero() && (q_b.array() == 0.0).all();
}

LQProblem LQProblem::homogenized() const {
  LQProblem p = *this;
  p.omega = CoefficientFunction::zero(n, 1);
  p.x_ref = CoefficientFunction::zero(n, 1);
  p.v_ref = CoefficientFunction::zero(m, 1);
  p.q_b = Vector::Zero(n);
  return p;
}

LQProblem LQProblem::restarted(double start, Vector state) const {
  if (!(start < b)) {
    throw Error(ErrorCode::InvalidInterval, "restart time must precede b");
  }
  LQProblem p = *this;
  p.a = start;
  p.q_a = std::move(state);
  return p;
}

LQProblem make_problem(Index n, Index m, double a, double b) {
  LQProblem p;
  p.a = a;
  p.b = b;
  p.n = n;
  p.m = m;
  p.A = CoefficientFunction::zero(n, n);
  p.B = CoefficientFunction::zero(n, m);
  p.W = CoefficientFunction::zero(n, n);
  p.R = CoefficientFunction::constant(Matrix::Identity(m, m));
  p.S = Matrix::Zero(n, n);
  p.omega = CoefficientFunction::zero(n, 1);
  p.x_ref = CoefficientFunction::zero(n, 1);
  p.v_ref = CoefficientFunction::zero(m, 1);
  p.q_a = Vector::Zero(n);
  p.q_b = Vector::Zero(n);
  return p;
}

LQProblem validate_problem(LQProblem p, int probes) {
  if (!(p.a < p.b)) {
    throw Error(ErrorCode::InvalidInterval, "problem horizon requires a < b");
  }
  if (p.n < 1 || p.m < 1) {
    throw Error(ErrorCode::DimensionMismatch, "state and control dimensions must be positive");
  }
  if (probes < 2) {
    throw Error(ErrorCode::InvalidInput, "at least two probe times are required");
  }
  require_shape(p.A, p.n, p.n, "A");
  require_shape(p.B, p.n, p.m, "B");
  require_shape(p.W, p.n, p.n, "W");
  require_shape(p.R, p.m, p.m, "R");
  require_shape(p.omega, p.n, 1, "omega");
  require_shape(p.x_ref, p.n, 1, "x");
  require_shape(p.v_ref, p.m, 1, "v");
  if (p.S.rows() != p.n || p.S.cols() != p.n) {
    throw Error(ErrorCode::DimensionMismatch, "S must be n x n");
  }
  require_size(p.q_a, p.n, "q_a");
  require_size(p.q_b, p.n, "q_b");

  p.S = 0.5 * (p.S + p.S.transpose()).eval();
  p.W = p.W.symmetrized();
  p.R = p.R.symmetrized();

  if (!p.S.allFinite()) {
    throw Error(ErrorCode::NonFinite, "S has non-finite entries");
  }
  const double s_eig = min_eigenvalue(p.S);
  if (s_eig < -psd_slack(p.S)) {
    fail_eigen(ErrorCode::NotPSD, "S positive-semidefinite", p.b, s_eig);
  }

  double c_r = std::numeric_limits<double>::infinity();
  for (int k = 0; k < probes; ++k) {
    const double t = k == probes - 1 ? p.b : p.a + (p.b - p.a) * k / (probes - 1);
    for (const auto* f : {&p.A, &p.B, &p.W, &p.R, &p.omega, &p.x_ref, &p.v_ref}) {
      if (!(*f)(t).allFinite()) {
        throw Error(ErrorCode::NonFinite, "coefficient not finite at t=" + std::to_string(t));
      }
    }
    const Matrix w = p.W(t);
    const double w_eig = min_eigenvalue(w);
    if (w_eig < -psd_slack(w)) {
      fail_eigen(ErrorCode::NotPSD, "W positive-semidefinite", t, w_eig);
    }
    const double r_eig = min_eigenvalue(p.R(t));
    if (!(r_eig > kTolPD)) {
      fail_eigen(ErrorCode::NotPD, "R positive-definite", t, r_eig);
    }
    c_r = std::min(c_r, r_eig);
  }
  p.c_R = c_r;
  p.validated = true;
  return p;
}

}  // namespace sdlq
