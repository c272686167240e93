#include <benchmark/benchmark.h>

#include "varpns/analysis.hpp"
#include "varpns/solver.hpp"

namespace {

using namespace varpns;

Triangulation mesh_at_level(int level) {
  Triangulation mesh = unit_square_initial();
  for (int i = 0; i < level; ++i) mesh = refine(mesh);
  return mesh;
}

void BM_StressEval(benchmark::State& state) {
  const StressModel model;
  Mat2 A;
  A << 0.3, 0.1, 0.1, -0.3;
  double p = 2.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stress(p, A, model));
    p = 2.25 + 1e-9 * (p < 3.0);
  }
}
BENCHMARK(BM_StressEval);

void BM_AssembleSystem(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const Triangulation mesh = mesh_at_level(level);
  const DofMap dofmap = build_dof_map(mesh, ElementPair::TaylorHood);
  const QuadratureRule rule = quadrature_rule(8);
  const ManufacturedCase mcase;
  const StressModel model;
  const std::vector<double> p_cells =
      discretize_exponent(exponent_field(mcase), 0.05, mesh);
  const double mean = pressure_mean(mcase, 0.05, mesh, rule);
  const StepData data = sample_step_data(mesh, rule, [&](const Vec2& x) {
    return rhs_data(mcase, 0.05, x, model, ModelVariant::NavierStokes, mean);
  });

  StepContext ctx;
  ctx.mesh = &mesh;
  ctx.dofmap = &dofmap;
  ctx.rule = &rule;
  ctx.model = model;
  ctx.variant = ModelVariant::NavierStokes;
  ctx.tau = 0.1 / 16;
  ctx.t_k = 0.05;
  ctx.p_cells = &p_cells;
  ctx.data = &data;

  StepState prev, cur;
  prev.coeffs = Eigen::VectorXd::Zero(dofmap.n_total);
  cur.coeffs = Eigen::VectorXd::Constant(dofmap.n_total, 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_system(prev, cur, ctx));
}
BENCHMARK(BM_AssembleSystem)->Arg(2)->Arg(3);

void BM_SparseSolve(benchmark::State& state) {
  const Triangulation mesh = mesh_at_level(static_cast<int>(state.range(0)));
  const DofMap dofmap = build_dof_map(mesh, ElementPair::TaylorHood);
  const QuadratureRule rule = quadrature_rule(8);
  const std::vector<double> p_cells(mesh.num_cells(), 2.0);
  const StepData data{std::vector<Eigen::Vector2d>(
                          mesh.num_cells() * rule.size(),
                          Eigen::Vector2d::Zero()),
                      std::vector<Mat2>(mesh.num_cells() * rule.size(),
                                        Mat2::Zero())};
  StepContext ctx;
  ctx.mesh = &mesh;
  ctx.dofmap = &dofmap;
  ctx.rule = &rule;
  ctx.variant = ModelVariant::Stokes;
  ctx.tau = 0.1 / 16;
  ctx.p_cells = &p_cells;
  ctx.data = &data;
  StepState prev, cur;
  prev.coeffs = Eigen::VectorXd::Zero(dofmap.n_total);
  cur.coeffs = prev.coeffs;
  SparseSystem system = assemble_system(prev, cur, ctx);
  apply_constraints(system, cur.coeffs,
                    Eigen::VectorXd::Zero(dofmap.n_total), dofmap);
  Eigen::VectorXd rhs = Eigen::VectorXd::Random(dofmap.n_total);
  for (int dof : dofmap.boundary_velocity_dofs) {
    rhs(dofmap.global_velocity(dof, 0)) = 0.0;
    rhs(dofmap.global_velocity(dof, 1)) = 0.0;
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(linear_solve(system.matrix, rhs));
}
BENCHMARK(BM_SparseSolve)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
