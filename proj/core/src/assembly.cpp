#include "varpns/assembly.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace varpns {

namespace {

// Reference basis tables at the quadrature points, one row block per point.
struct BasisTable {
  Eigen::MatrixXd vel_values;                // nq x nloc
  std::vector<Eigen::MatrixXd> vel_grads;    // per qp: nloc x 2 (reference)
  Eigen::MatrixXd press_values;              // nq x 3
};

BasisTable tabulate(ElementPair pair, const QuadratureRule& rule) {
  BasisTable table;
  const int nq = rule.size();
  const int nloc = pair == ElementPair::MINI ? 4 : 6;
  table.vel_values.resize(nq, nloc);
  table.vel_grads.resize(nq);
  table.press_values.resize(nq, 3);
  Eigen::VectorXd vals;
  Eigen::MatrixXd grads;
  for (int q = 0; q < nq; ++q) {
    table.vel_grads[q].resize(nloc, 2);
    if (pair == ElementPair::MINI) {
      reference_basis(ElementKind::P1, rule.points[q], vals, grads);
      table.vel_values.block(q, 0, 1, 3) = vals.transpose();
      table.vel_grads[q].topRows(3) = grads;
      reference_basis(ElementKind::Bubble, rule.points[q], vals, grads);
      table.vel_values(q, 3) = vals(0);
      table.vel_grads[q].row(3) = grads.row(0);
    } else {
      reference_basis(ElementKind::P2, rule.points[q], vals, grads);
      table.vel_values.row(q) = vals.transpose();
      table.vel_grads[q] = grads;
    }
    reference_basis(ElementKind::P1, rule.points[q], vals, grads);
    table.press_values.row(q) = vals.transpose();
  }
  return table;
}

struct CellWork {
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd local_residual;  // stacked: 2*nloc velocity, 3 pressure, 1 mult
  std::vector<int> global_rows;
};

void cell_kernel(int c, const StepState& prev, const StepState& cur,
                 const StepContext& ctx, const BasisTable& table,
                 bool want_jacobian, CellWork& work) {
  const Triangulation& mesh = *ctx.mesh;
  const DofMap& dofmap = *ctx.dofmap;
  const QuadratureRule& rule = *ctx.rule;
  const int nq = rule.size();
  const int nloc = dofmap.velocity_local_size();
  const int nrows = 2 * nloc + 3 + 1;
  const bool convective = ctx.variant == ModelVariant::NavierStokes;

  const CellGeometry geo = cell_geometry(mesh, c);
  const Mat2 jinv_t = geo.jacobian.inverse().transpose();
  const double detj = 2.0 * geo.area;
  const double p_cell = (*ctx.p_cells)[c];

  const auto& vdofs = dofmap.cell_velocity_dofs[c];
  const auto& pdofs = dofmap.cell_pressure_dofs[c];

  work.global_rows.resize(nrows);
  for (int d = 0; d < 2; ++d)
    for (int i = 0; i < nloc; ++i)
      work.global_rows[d * nloc + i] = dofmap.global_velocity(vdofs[i], d);
  for (int j = 0; j < 3; ++j)
    work.global_rows[2 * nloc + j] = dofmap.global_pressure(pdofs[j]);
  work.global_rows[nrows - 1] = dofmap.multiplier_index();

  work.local_residual.setZero(nrows);
  Eigen::MatrixXd local_matrix;
  if (want_jacobian) local_matrix.setZero(nrows, nrows);

  Eigen::MatrixXd gphi(nloc, 2);  // physical gradients
  std::vector<Mat2> dstress(2 * nloc);

  for (int q = 0; q < nq; ++q) {
    const double w = detj * rule.weights[q];
    gphi.noalias() = table.vel_grads[q] * jinv_t.transpose();

    // Field values at the quadrature point.
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    Eigen::Vector2d v_prev = Eigen::Vector2d::Zero();
    Mat2 grad_v = Mat2::Zero();
    for (int d = 0; d < 2; ++d)
      for (int i = 0; i < nloc; ++i) {
        const int g = dofmap.global_velocity(vdofs[i], d);
        const double phi = table.vel_values(q, i);
        v(d) += cur.coeffs(g) * phi;
        v_prev(d) += prev.coeffs(g) * phi;
        grad_v.row(d) += cur.coeffs(g) * gphi.row(i);
      }
    double pi = 0.0;
    for (int j = 0; j < 3; ++j)
      pi += cur.coeffs(dofmap.global_pressure(pdofs[j])) *
            table.press_values(q, j);
    const double lambda = cur.coeffs(dofmap.multiplier_index());

    const Mat2 strain = 0.5 * (grad_v + grad_v.transpose());
    const Mat2 S = stress(p_cell, strain, ctx.model);
    const double div_v = grad_v.trace();
    const Eigen::Vector2d& f = ctx.data->f[c * nq + q];
    const Mat2& F = ctx.data->F[c * nq + q];
    const Eigen::Vector2d conv_v = grad_v * v;  // (v . grad) v

    // Velocity residual rows.
    for (int d = 0; d < 2; ++d)
      for (int i = 0; i < nloc; ++i) {
        const double phi = table.vel_values(q, i);
        const Eigen::Vector2d g = gphi.row(i).transpose();
        double r = (v(d) - v_prev(d)) / ctx.tau * phi;
        r += S.row(d).dot(g);       // (S, Dz), S symmetric
        r -= pi * g(d);             // -(pi, div z)
        r -= f(d) * phi + F.row(d).dot(g);
        if (convective)
          r += 0.5 * phi * conv_v(d) - 0.5 * v(d) * v.dot(g);
        work.local_residual(d * nloc + i) += w * r;
      }
    // Pressure rows: (lambda - div v, psi), signed so the p = 2 Stokes
    // Jacobian is symmetric; multiplier row: (pi, 1).
    for (int j = 0; j < 3; ++j)
      work.local_residual(2 * nloc + j) +=
          w * (lambda - div_v) * table.press_values(q, j);
    work.local_residual(nrows - 1) += w * pi;

    if (!want_jacobian) continue;

    // Stress linearization in each trial direction sym(e_e gphi_j^T).
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j < nloc; ++j) {
        Mat2 dir = Mat2::Zero();
        dir.row(e) = gphi.row(j);
        const Mat2 sym_dir = 0.5 * (dir + dir.transpose());
        dstress[e * nloc + j] =
            stress_jacobian_apply(p_cell, strain, sym_dir, ctx.model);
      }

    for (int d = 0; d < 2; ++d)
      for (int i = 0; i < nloc; ++i) {
        const int row = d * nloc + i;
        const double phi_i = table.vel_values(q, i);
        const Eigen::Vector2d gi = gphi.row(i).transpose();
        for (int e = 0; e < 2; ++e)
          for (int j = 0; j < nloc; ++j) {
            const double phi_j = table.vel_values(q, j);
            double a = dstress[e * nloc + j].row(d).dot(gi);
            if (d == e) a += phi_i * phi_j / ctx.tau;
            if (convective) {
              // d/dv of 1/2 phi_i ((v.grad)v)_d
              a += 0.5 * phi_i *
                   (phi_j * grad_v(d, e) +
                    (d == e ? v.dot(gphi.row(j).transpose()) : 0.0));
              // d/dv of -1/2 v_d (v . gi)
              a -= 0.5 * ((d == e ? phi_j * v.dot(gi) : 0.0) +
                          v(d) * phi_j * gi(e));
            }
            local_matrix(row, e * nloc + j) += w * a;
          }
        // velocity-pressure coupling
        for (int j = 0; j < 3; ++j) {
          local_matrix(row, 2 * nloc + j) -= w * table.press_values(q, j) * gi(d);
          local_matrix(2 * nloc + j, row) -= w * table.press_values(q, j) * gi(d);
        }
      }
    for (int j = 0; j < 3; ++j) {
      local_matrix(2 * nloc + j, nrows - 1) += w * table.press_values(q, j);
      local_matrix(nrows - 1, 2 * nloc + j) += w * table.press_values(q, j);
    }
  }

  if (want_jacobian) {
    work.triplets.clear();
    work.triplets.reserve(nrows * nrows);
    for (int r = 0; r < nrows; ++r)
      for (int col = 0; col < nrows; ++col)
        if (local_matrix(r, col) != 0.0)
          work.triplets.emplace_back(work.global_rows[r], work.global_rows[col],
                                     local_matrix(r, col));
  }
}

void run_cells(const StepState& prev, const StepState& cur,
               const StepContext& ctx, const BasisTable& table,
               bool want_jacobian, std::vector<CellWork>& works) {
  const int nc = ctx.mesh->num_cells();
  works.resize(nc);
  const int nthreads = std::max(1, ctx.threads);
  if (nthreads == 1) {
    for (int c = 0; c < nc; ++c)
      cell_kernel(c, prev, cur, ctx, table, want_jacobian, works[c]);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&]() {
      int c;
      while ((c = next.fetch_add(1)) < nc)
        cell_kernel(c, prev, cur, ctx, table, want_jacobian, works[c]);
    });
  for (auto& th : pool) th.join();
}

void check_dimensions(const StepState& prev, const StepState& cur,
                      const StepContext& ctx) {
  const int n = ctx.dofmap->n_total;
  if (prev.coeffs.size() != n || cur.coeffs.size() != n)
    throw std::invalid_argument("assembly: state dimension mismatch");
  if (static_cast<int>(ctx.p_cells->size()) != ctx.mesh->num_cells())
    throw std::invalid_argument("assembly: exponent field dimension mismatch");
}

}  // namespace

Eigen::VectorXd assemble_residual(const StepState& prev, const StepState& cur,
                                  const StepContext& ctx) {
  check_dimensions(prev, cur, ctx);
  const BasisTable table = tabulate(ctx.dofmap->pair, *ctx.rule);
  std::vector<CellWork> works;
  run_cells(prev, cur, ctx, table, false, works);
  Eigen::VectorXd residual = Eigen::VectorXd::Zero(ctx.dofmap->n_total);
  for (const auto& work : works)
    for (std::size_t i = 0; i < work.global_rows.size(); ++i)
      residual(work.global_rows[i]) += work.local_residual(i);
  return residual;
}

SparseSystem assemble_system(const StepState& prev, const StepState& cur,
                             const StepContext& ctx) {
  check_dimensions(prev, cur, ctx);
  const BasisTable table = tabulate(ctx.dofmap->pair, *ctx.rule);
  std::vector<CellWork> works;
  run_cells(prev, cur, ctx, table, true, works);

  SparseSystem system;
  const int n = ctx.dofmap->n_total;
  system.residual = Eigen::VectorXd::Zero(n);
  std::size_t nnz = 0;
  for (const auto& work : works) nnz += work.triplets.size();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(nnz);
  for (const auto& work : works) {
    for (std::size_t i = 0; i < work.global_rows.size(); ++i)
      system.residual(work.global_rows[i]) += work.local_residual(i);
    triplets.insert(triplets.end(), work.triplets.begin(), work.triplets.end());
  }
  system.matrix.resize(n, n);
  system.matrix.setFromTriplets(triplets.begin(), triplets.end());
  system.dirichlet_mask.assign(n, false);
  return system;
}

void apply_constraints(SparseSystem& system, const Eigen::VectorXd& cur,
                       const Eigen::VectorXd& boundary_values,
                       const DofMap& dofmap) {
  const int n = dofmap.n_total;
  system.dirichlet_mask.assign(n, false);
  for (int d = 0; d < 2; ++d)
    for (int sdof : dofmap.boundary_velocity_dofs)
      system.dirichlet_mask[dofmap.global_velocity(sdof, d)] = true;

  for (int col = 0; col < system.matrix.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.matrix, col); it;
         ++it) {
      if (system.dirichlet_mask[it.row()] || system.dirichlet_mask[it.col()])
        it.valueRef() = (it.row() == it.col()) ? 1.0 : 0.0;
    }
  for (int i = 0; i < n; ++i)
    if (system.dirichlet_mask[i])
      system.residual(i) = cur(i) - boundary_values(i);
}

void impose_boundary_values(Eigen::VectorXd& coeffs,
                            const Eigen::VectorXd& boundary_values,
                            const DofMap& dofmap) {
  for (int d = 0; d < 2; ++d)
    for (int sdof : dofmap.boundary_velocity_dofs) {
      const int g = dofmap.global_velocity(sdof, d);
      coeffs(g) = boundary_values(g);
    }
}

StepData sample_step_data(
    const Triangulation& mesh, const QuadratureRule& rule,
    const std::function<RhsData(const Vec2&)>& eval) {
  StepData data;
  const int nq = rule.size();
  data.f.resize(mesh.num_cells() * nq);
  data.F.resize(mesh.num_cells() * nq);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    for (int q = 0; q < nq; ++q) {
      const Vec2 x = geo.jacobian * rule.points[q] + geo.offset;
      const RhsData rhs = eval(x);
      data.f[c * nq + q] = rhs.f;
      data.F[c * nq + q] = rhs.F;
    }
  }
  return data;
}

}  // namespace varpns
