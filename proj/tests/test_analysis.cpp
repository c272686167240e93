#include <doctest.h>

#include <cmath>
#include <random>

#include "varpns/analysis.hpp"

using namespace varpns;

TEST_CASE("EOC: exact power sequences and scale invariance") {
  // e_n = C (h_n + tau_n): EOC = 1.
  const double h0 = 1.0, tau0 = 0.025, h1 = 0.5, tau1 = 0.0125;
  const double c = 3.7;
  auto e = [&](double h, double tau, double rate) {
    return c * std::pow(h + tau, rate);
  };
  CHECK(*eoc(e(h0, tau0, 1.0), e(h1, tau1, 1.0), h0, tau0, h1, tau1) ==
        doctest::Approx(1.0));
  CHECK(*eoc(e(h0, tau0, 0.722), e(h1, tau1, 0.722), h0, tau0, h1, tau1) ==
        doctest::Approx(0.722));
  // Scaling both errors by a constant leaves the EOC unchanged.
  CHECK(*eoc(17.0 * e(h0, tau0, 0.5), 17.0 * e(h1, tau1, 0.5), h0, tau0, h1,
             tau1) == doctest::Approx(0.5));
  CHECK_FALSE(eoc(0.0, 1.0, h0, tau0, h1, tau1).has_value());
  CHECK_FALSE(eoc(1.0, 0.0, h0, tau0, h1, tau1).has_value());
}

TEST_CASE("expected rate alpha (p+)'/2 reproduces the table baselines") {
  ManufacturedCase mcase;
  mcase.p_minus = 2.25;
  mcase.alpha = 1.0;
  CHECK(expected_rate(mcase) == doctest::Approx(0.722).epsilon(5e-4));
  mcase.p_minus = 2.5;
  CHECK(expected_rate(mcase) == doctest::Approx(0.700).epsilon(5e-4));
  mcase.p_minus = 2.75;
  CHECK(expected_rate(mcase) == doctest::Approx(0.682).epsilon(5e-4));
  mcase.alpha = 0.25;
  CHECK(expected_rate(mcase) == doctest::Approx(0.1705).epsilon(5e-3));
  mcase.alpha = 0.125;
  mcase.p_minus = 2.25;
  CHECK(expected_rate(mcase) == doctest::Approx(0.091).epsilon(5e-3));
}

namespace {

std::vector<StepState> random_states(const DofMap& dofmap, int K,
                                     const TimeGrid& grid, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd(0.0, 0.3);
  std::vector<StepState> states(K + 1);
  for (int k = 0; k <= K; ++k) {
    states[k].k = k;
    states[k].t = grid.t(k);
    states[k].coeffs.resize(dofmap.n_total);
    for (int i = 0; i < dofmap.n_total; ++i) states[k].coeffs(i) = nd(gen);
  }
  return states;
}

}  // namespace

TEST_CASE("p == 2 strain error reduces to the plain L2(L2) strain distance") {
  const Triangulation mesh = refine(unit_square_initial());
  const DofMap dofmap = build_dof_map(mesh, ElementPair::TaylorHood);
  const QuadratureRule rule = quadrature_rule(6);
  const TimeGrid grid{0.1, 4};
  const std::vector<StepState> states = random_states(dofmap, 4, grid, 139);
  const StressModel model;

  ExactSolution zero;
  zero.velocity = [](double, const Vec2&) { return Eigen::Vector2d::Zero(); };
  zero.strain = [](double, const Vec2&) { return Mat2::Zero(); };
  zero.stress = [](double, const Vec2&) { return Mat2::Zero(); };
  zero.pressure = [](double, const Vec2&) { return 0.0; };

  const ErrorQuadruple errors =
      error_quantities(states, grid, mesh, dofmap, rule, model,
                       constant_exponent(2.0), zero);
  CHECK(errors.e_strain >= 0.0);
  CHECK(errors.e_stress >= 0.0);
  CHECK(errors.e_pressure >= 0.0);

  // Direct L2(L2) strain norm of the discrete solution.
  double acc = 0.0;
  double max_v = 0.0;
  Eigen::VectorXd vals;
  Eigen::MatrixXd grads;
  for (int k = 1; k <= grid.K; ++k) {
    double v2 = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const CellGeometry geo = cell_geometry(mesh, c);
      const Mat2 jinv = geo.jacobian.inverse();
      for (int q = 0; q < rule.size(); ++q) {
        reference_basis(ElementKind::P2, rule.points[q], vals, grads);
        const Eigen::MatrixXd gphi = grads * jinv;
        Mat2 grad_v = Mat2::Zero();
        Eigen::Vector2d v = Eigen::Vector2d::Zero();
        for (int d = 0; d < 2; ++d)
          for (int i = 0; i < 6; ++i) {
            const double coeff = states[k].coeffs(dofmap.global_velocity(
                dofmap.cell_velocity_dofs[c][i], d));
            grad_v.row(d) += coeff * gphi.row(i);
            v(d) += coeff * vals(i);
          }
        const Mat2 sym = 0.5 * (grad_v + grad_v.transpose());
        const double w = 2.0 * geo.area * rule.weights[q];
        acc += grid.tau() * w * sym.squaredNorm();
        v2 += w * v.squaredNorm();
      }
    }
    max_v = std::max(max_v, std::sqrt(v2));
  }
  CHECK(errors.e_strain == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
  CHECK(errors.e_velocity == doctest::Approx(max_v).epsilon(1e-12));
}

TEST_CASE("error quantities vanish when discrete equals exact") {
  // Interpolate a linear-in-space velocity (exactly representable) and a
  // linear pressure; all four errors must vanish.
  const Triangulation mesh = refine(unit_square_initial());
  const DofMap dofmap = build_dof_map(mesh, ElementPair::TaylorHood);
  const QuadratureRule rule = quadrature_rule(6);
  const TimeGrid grid{0.1, 3};

  ExactSolution exact;
  exact.velocity = [](double t, const Vec2& x) {
    return Eigen::Vector2d(t * x.y(), -t * x.x());
  };
  exact.strain = [](double, const Vec2&) { return Mat2::Zero(); };
  const StressModel model;
  exact.stress = [model](double, const Vec2&) {
    return stress(2.3, Mat2::Zero(), model);
  };
  exact.pressure = [](double t, const Vec2& x) {
    return t * (x.x() - 0.5);
  };

  std::vector<StepState> states(grid.K + 1);
  for (int k = 0; k <= grid.K; ++k) {
    const double t = grid.t(k);
    states[k].coeffs = Eigen::VectorXd::Zero(dofmap.n_total);
    for (int i = 0; i < dofmap.n_velocity_scalar; ++i) {
      const Vec2 node = dofmap.velocity_dof_node[i];
      states[k].coeffs(dofmap.global_velocity(i, 0)) = t * node.y();
      states[k].coeffs(dofmap.global_velocity(i, 1)) = -t * node.x();
    }
    for (int j = 0; j < dofmap.n_pressure; ++j)
      states[k].coeffs(dofmap.global_pressure(j)) =
          t * (mesh.vertices[j].x() - 0.5);
  }

  const ErrorQuadruple errors =
      error_quantities(states, grid, mesh, dofmap, rule, model,
                       constant_exponent(2.3), exact);
  CHECK(errors.e_strain < 1e-13);
  CHECK(errors.e_stress < 1e-13);
  CHECK(errors.e_velocity < 1e-13);
  CHECK(errors.e_pressure < 1e-13);
}
