#include "varpns/solver.hpp"

#include <Eigen/SparseLU>

namespace varpns {

Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double>& matrix,
                             const Eigen::VectorXd& rhs) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>
      solver;
  solver.analyzePattern(matrix);
  solver.factorize(matrix);
  if (solver.info() != Eigen::Success)
    throw SolverError("linear_solve: factorization failed: " +
                      solver.lastErrorMessage());
  Eigen::VectorXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw SolverError("linear_solve: back substitution failed");
  const double res = (matrix * x - rhs).norm();
  if (!(res <= 1e-10 * (1.0 + rhs.norm())))
    throw SolverError("linear_solve: residual check failed, ||Ax-b|| = " +
                      std::to_string(res));
  return x;
}

StepState newton_solve(const StepState& prev, const StepState& initial,
                       const StepContext& ctx,
                       const Eigen::VectorXd& boundary_values,
                       const NewtonOptions& options, StepTrace& trace) {
  StepState cur = initial;
  impose_boundary_values(cur.coeffs, boundary_values, *ctx.dofmap);

  double res0 = -1.0;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    SparseSystem system = assemble_system(prev, cur, ctx);
    apply_constraints(system, cur.coeffs, boundary_values, *ctx.dofmap);
    const double res = system.residual.norm();
    trace.residual_norms.push_back(res);
    if (res0 < 0.0) res0 = res;
    if (res <= options.abs_tol || res <= options.rel_tol * res0) {
      trace.converged = true;
      trace.iterations = iter;
      return cur;
    }
    const Eigen::VectorXd delta = linear_solve(system.matrix, -system.residual);
    cur.coeffs += delta;
  }
  trace.converged = false;
  trace.iterations = options.max_iter;
  throw SolverError("newton_solve: no convergence in " +
                    std::to_string(options.max_iter) + " iterations");
}

namespace {

EnergySample energy_sample(const StepState& state, const StepContext& ctx) {
  const Triangulation& mesh = *ctx.mesh;
  const DofMap& dofmap = *ctx.dofmap;
  const QuadratureRule& rule = *ctx.rule;
  const int nq = rule.size();
  const int nloc = dofmap.velocity_local_size();

  EnergySample sample{0.0, 0.0, 0.0};
  Eigen::VectorXd vals;
  Eigen::MatrixXd grads_ref;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    const Mat2 jinv = geo.jacobian.inverse();
    const double detj = 2.0 * geo.area;
    const auto& vdofs = dofmap.cell_velocity_dofs[c];
    const double p_cell = (*ctx.p_cells)[c];
    for (int q = 0; q < nq; ++q) {
      Eigen::Vector2d v = Eigen::Vector2d::Zero();
      Mat2 grad_v = Mat2::Zero();
      if (dofmap.pair == ElementPair::MINI) {
        Eigen::VectorXd v1;
        Eigen::MatrixXd g1;
        reference_basis(ElementKind::P1, rule.points[q], v1, g1);
        Eigen::VectorXd vb;
        Eigen::MatrixXd gb;
        reference_basis(ElementKind::Bubble, rule.points[q], vb, gb);
        vals.resize(4);
        vals << v1, vb;
        grads_ref.resize(4, 2);
        grads_ref << g1, gb;
      } else {
        reference_basis(ElementKind::P2, rule.points[q], vals, grads_ref);
      }
      const Eigen::MatrixXd gphi = grads_ref * jinv;
      for (int d = 0; d < 2; ++d)
        for (int i = 0; i < nloc; ++i) {
          const double coeff =
              state.coeffs(dofmap.global_velocity(vdofs[i], d));
          v(d) += coeff * vals(i);
          grad_v.row(d) += coeff * gphi.row(i);
        }
      const Mat2 strain = 0.5 * (grad_v + grad_v.transpose());
      const Mat2 S = stress(p_cell, strain, ctx.model);
      const double w = detj * rule.weights[q];
      sample.kinetic += 0.5 * w * v.squaredNorm();
      sample.dissipation += ctx.tau * w * S.cwiseProduct(strain).sum();
      sample.work +=
          ctx.tau * w *
          (ctx.data->f[c * nq + q].dot(v) +
           ctx.data->F[c * nq + q].cwiseProduct(strain).sum());
    }
  }
  return sample;
}

}  // namespace

std::vector<StepState> time_march(const UnsteadyProblem& problem,
                                  SolveTrace& trace) {
  std::vector<StepState> states;
  StepState state;
  state.k = 0;
  state.t = 0.0;
  state.coeffs = problem.initial_velocity;
  states.push_back(state);

  for (int k = 1; k <= problem.grid.K; ++k) {
    const double t_k = problem.grid.t(k);
    const std::vector<double> p_cells = problem.exponent_snapshot(t_k);
    const StepData data = problem.step_data(t_k);
    StepContext ctx;
    ctx.mesh = problem.mesh;
    ctx.dofmap = problem.dofmap;
    ctx.rule = problem.rule;
    ctx.model = problem.model;
    ctx.variant = problem.variant;
    ctx.tau = problem.grid.tau();
    ctx.t_k = t_k;
    ctx.p_cells = &p_cells;
    ctx.data = &data;
    ctx.threads = problem.threads;

    const Eigen::VectorXd bc = problem.boundary_values(t_k);
    StepState guess = states.back();  // warm start
    guess.k = k;
    guess.t = t_k;

    StepTrace step_trace;
    try {
      StepState next =
          newton_solve(states.back(), guess, ctx, bc, problem.newton,
                       step_trace);
      next.k = k;
      next.t = t_k;
      trace.steps.push_back(step_trace);
      trace.energy.push_back(energy_sample(next, ctx));
      states.push_back(std::move(next));
    } catch (const SolverError&) {
      trace.steps.push_back(step_trace);
      trace.ok = false;
      throw;
    }
  }
  return states;
}

}  // namespace varpns
