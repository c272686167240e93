#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "varpns/dofmap.hpp"
#include "varpns/manufactured.hpp"
#include "varpns/quadrature.hpp"
#include "varpns/stress.hpp"

namespace varpns {

/// Coefficients of one time-step iterate: velocity (blocked x/y), pressure,
/// zero-mean multiplier, in DofMap order.
struct StepState {
  Eigen::VectorXd coeffs;
  int k = 0;
  double t = 0.0;
};

/// Right-hand-side samples (f, F) at every quadrature point, cell-major:
/// index = cell * rule.size() + qp.
struct StepData {
  std::vector<Eigen::Vector2d> f;
  std::vector<Mat2> F;
};

/// Everything a single implicit-Euler step needs, shared by residual and
/// Jacobian assembly.
struct StepContext {
  const Triangulation* mesh = nullptr;
  const DofMap* dofmap = nullptr;
  const QuadratureRule* rule = nullptr;
  StressModel model;
  ModelVariant variant = ModelVariant::NavierStokes;
  double tau = 0.0;
  double t_k = 0.0;
  const std::vector<double>* p_cells = nullptr;  // P0 exponent snapshot
  const StepData* data = nullptr;
  int threads = 1;  // cell-kernel parallelism; insertion stays deterministic
};

struct SparseSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd residual;
  std::vector<bool> dirichlet_mask;
};

/// Residual of the saddle-point step equations at `cur` (no constraints):
///   (d_tau v, z) + (S_n(p_k, Dv), Dz) [+ Temam convective terms]
///   - (pi, div z) - (f, z) - (F, Dz) ;  (div v, q) + lambda (q,1) ;  (pi, 1).
Eigen::VectorXd assemble_residual(const StepState& prev, const StepState& cur,
                                  const StepContext& ctx);

/// Residual plus exact analytic Jacobian with respect to (v, pi, lambda).
SparseSystem assemble_system(const StepState& prev, const StepState& cur,
                             const StepContext& ctx);

/// Pin Dirichlet velocity DOFs to `boundary_values` (identity rows/columns,
/// residual = current - boundary value).  The zero-mean constraint is already
/// carried by the multiplier row/column.
void apply_constraints(SparseSystem& system, const Eigen::VectorXd& cur,
                       const Eigen::VectorXd& boundary_values,
                       const DofMap& dofmap);

/// Interpolate boundary values into the velocity blocks of a full-size
/// coefficient vector (non-boundary entries untouched).
void impose_boundary_values(Eigen::VectorXd& coeffs,
                            const Eigen::VectorXd& boundary_values,
                            const DofMap& dofmap);

/// Sample (f, F) at every quadrature point of the mesh.
StepData sample_step_data(
    const Triangulation& mesh, const QuadratureRule& rule,
    const std::function<RhsData(const Vec2&)>& eval);

}  // namespace varpns
