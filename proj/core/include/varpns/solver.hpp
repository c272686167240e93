#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "varpns/assembly.hpp"

namespace varpns {

struct TimeGrid {
  double T = 0.1;
  int K = 1;
  double tau() const { return T / K; }
  double t(int k) const { return k * T / K; }
};

struct NewtonOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1e-10;
  int max_iter = 50;
};

struct StepTrace {
  int iterations = 0;
  std::vector<double> residual_norms;
  bool converged = false;
};

struct EnergySample {
  double kinetic;        // 1/2 ||v^k||_{L2}^2
  double dissipation;    // tau (S(Dv^k), Dv^k)
  double work;           // tau [(f_k, v^k) + (F_k, Dv^k)]
};

struct SolveTrace {
  std::vector<StepTrace> steps;
  std::vector<EnergySample> energy;
  bool ok = true;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse direct solve (LU with pivoting); checks the residual
/// ||Ax-b|| <= 1e-10 (1 + ||b||) and throws SolverError otherwise.
Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double>& matrix,
                             const Eigen::VectorXd& rhs);

/// Undamped Newton on the constrained step system, warm-started from
/// `initial`.  Boundary values must already be imposed on `initial`.
StepState newton_solve(const StepState& prev, const StepState& initial,
                       const StepContext& ctx,
                       const Eigen::VectorXd& boundary_values,
                       const NewtonOptions& options, StepTrace& trace);

/// One unsteady problem on a fixed mesh/space: per-step data, boundary
/// values, and exponent snapshots are supplied as closures over the step
/// index (t_k = k tau).
struct UnsteadyProblem {
  const Triangulation* mesh = nullptr;
  const DofMap* dofmap = nullptr;
  const QuadratureRule* rule = nullptr;
  StressModel model;
  ModelVariant variant = ModelVariant::NavierStokes;
  TimeGrid grid;
  std::function<std::vector<double>(double t_k)> exponent_snapshot;
  std::function<StepData(double t_k)> step_data;
  std::function<Eigen::VectorXd(double t_k)> boundary_values;  // full size
  Eigen::VectorXd initial_velocity;  // full-size coefficient vector (v^0)
  NewtonOptions newton;
  int threads = 1;
};

/// Implicit Euler march k = 1..K; all iterates retained for error analysis.
/// Throws SolverError on step failure (trace carries the partial history).
std::vector<StepState> time_march(const UnsteadyProblem& problem,
                                  SolveTrace& trace);

}  // namespace varpns
