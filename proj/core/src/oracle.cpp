#include "sdlq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdlq/errors.hpp"
#include "sdlq/riccati.hpp"
#include "sdlq/simulate.hpp"

namespace sdlq {
namespace {

class StackedCost {
 public:
  StackedCost(const LQProblem& p, const SamplingGrid& grid, int substeps)
      : p_(p), grid_(grid), substeps_(substeps) {}

  double operator()(const Vector& stacked) const {
    std::vector<Vector> U;
    U.reserve(static_cast<std::size_t>(grid_.intervals()));
    for (Index i = 0; i < grid_.intervals(); ++i) {
      U.emplace_back(stacked.segment(i * p_.m, p_.m));
    }
    const double c = control_cost(p_, PiecewiseConstantControl{grid_, std::move(U)}, substeps_);
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::NonFinite, "oracle cost evaluation is not finite");
    }
    return c;
  }

 private:
  const LQProblem& p_;
  const SamplingGrid& grid_;
  int substeps_;
};

}  // namespace

DenseQP assemble_qp(const LQProblem& p, const SamplingGrid& grid, int substeps) {
  const Index dim = p.m * grid.intervals();
  if (dim > kOracleGuard) {
    throw Error(ErrorCode::TooLarge, "oracle guard exceeded: m*N = " + std::to_string(dim) + " > " +
                                         std::to_string(kOracleGuard));
  }
  const StackedCost cost(p, grid, substeps);
  DenseQP qp;
  qp.Hq = Matrix::Zero(dim, dim);
  qp.g = Vector::Zero(dim);

  Vector e = Vector::Zero(dim);
  qp.c = cost(e);
  Vector plus(dim);
  for (Index j = 0; j < dim; ++j) {
    e.setZero();
    e(j) = 1.0;
    plus(j) = cost(e);
    const double minus = cost(-e);
    qp.g(j) = 0.5 * (plus(j) - minus);
    qp.Hq(j, j) = plus(j) + minus - 2.0 * qp.c;
  }
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      e.setZero();
      e(j) = 1.0;
      e(k) = 1.0;
      const double value = cost(e) - plus(j) - plus(k) + qp.c;
      qp.Hq(j, k) = value;
      qp.Hq(k, j) = value;
    }
  }
  return qp;
}

Vector solve_qp(const DenseQP& qp) {
  if (qp.Hq.rows() != qp.g.size() || qp.Hq.cols() != qp.g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "QP Hessian and gradient disagree in size");
  }
  const Eigen::LLT<Matrix> llt(qp.Hq);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::QpNotPD, "QP Hessian is not positive-definite");
  }
  return -llt.solve(qp.g);
}

OracleReport cross_check(const LQProblem& p, const SamplingGrid& grid, int substeps) {
  const auto solved = solve_sampled(p, grid, substeps);
  const DenseQP qp = assemble_qp(p, grid, substeps);
  const Vector stacked = solve_qp(qp);

  OracleReport report;
  report.n = p.n;
  report.m = p.m;
  report.intervals = grid.intervals();
  report.sweep_cost = solved.solution.predicted_cost;
  report.qp_cost = qp.value(stacked);
  report.cost_diff = std::abs(report.sweep_cost - report.qp_cost);
  report.certificate_norm = (qp.Hq * stacked + qp.g).norm();
  report.g_norm = qp.g.norm();
  report.sweep_U = solved.solution.U;
  for (Index i = 0; i < grid.intervals(); ++i) {
    Vector qp_u = stacked.segment(i * p.m, p.m);
    const double diff = (solved.solution.U[static_cast<std::size_t>(i)] - qp_u).cwiseAbs().maxCoeff();
    report.abs_diffs.push_back(diff);
    report.max_abs_diff = std::max(report.max_abs_diff, diff);
    report.qp_U.push_back(std::move(qp_u));
  }
  const double scale = stacked.size() > 0 ? stacked.cwiseAbs().maxCoeff() : 0.0;
  report.max_rel_diff = report.max_abs_diff / std::max(scale, 1e-9);
  return report;
}

}  // namespace sdlq
