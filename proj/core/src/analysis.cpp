#include "varpns/analysis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

namespace varpns {

ExactSolution manufactured_solution(const ManufacturedCase& c,
                                    const StressModel& model,
                                    const Triangulation& mesh,
                                    const QuadratureRule& rule) {
  auto means = std::make_shared<std::map<double, double>>();
  const Triangulation* mesh_ptr = &mesh;
  const QuadratureRule* rule_ptr = &rule;
  auto mean_at = [c, means, mesh_ptr, rule_ptr](double t) {
    auto it = means->find(t);
    if (it != means->end()) return it->second;
    const double m = pressure_mean(c, t, *mesh_ptr, *rule_ptr);
    means->emplace(t, m);
    return m;
  };

  ExactSolution exact;
  exact.velocity = [c](double t, const Vec2& x) {
    return exact_fields(c, t, x).v;
  };
  exact.strain = [c](double t, const Vec2& x) {
    return exact_fields(c, t, x).strain;
  };
  exact.stress = [c, model](double t, const Vec2& x) {
    const ExactFields f = exact_fields(c, t, x);
    return stress(index_p(c, t, x).p, f.strain, model);
  };
  exact.pressure = [c, mean_at](double t, const Vec2& x) {
    return exact_fields(c, t, x).pi_raw - 25.0 * t * mean_at(t);
  };
  return exact;
}

namespace {

struct BasisAtPoint {
  Eigen::VectorXd vel_vals;       // velocity scalar basis
  Eigen::MatrixXd vel_grads_ref;  // reference gradients
  Eigen::VectorXd p_vals;         // P1 pressure basis
};

std::vector<BasisAtPoint> tabulate(const DofMap& dofmap,
                                   const QuadratureRule& rule) {
  std::vector<BasisAtPoint> table(rule.size());
  for (int q = 0; q < rule.size(); ++q) {
    BasisAtPoint& b = table[q];
    if (dofmap.pair == ElementPair::MINI) {
      Eigen::VectorXd v1, vb;
      Eigen::MatrixXd g1, gb;
      reference_basis(ElementKind::P1, rule.points[q], v1, g1);
      reference_basis(ElementKind::Bubble, rule.points[q], vb, gb);
      b.vel_vals.resize(4);
      b.vel_vals << v1, vb;
      b.vel_grads_ref.resize(4, 2);
      b.vel_grads_ref << g1, gb;
    } else {
      reference_basis(ElementKind::P2, rule.points[q], b.vel_vals,
                      b.vel_grads_ref);
    }
    Eigen::MatrixXd gp;
    reference_basis(ElementKind::P1, rule.points[q], b.p_vals, gp);
  }
  return table;
}

}  // namespace

ErrorQuadruple error_quantities(const std::vector<StepState>& states,
                                const TimeGrid& grid,
                                const Triangulation& mesh,
                                const DofMap& dofmap,
                                const QuadratureRule& rule,
                                const StressModel& model,
                                const ExponentField& exponent,
                                const ExactSolution& exact) {
  if (static_cast<int>(states.size()) != grid.K + 1)
    throw std::invalid_argument("error_quantities: state count != K + 1");

  const double tau = grid.tau();
  const int nq = rule.size();
  const int nloc = dofmap.velocity_local_size();
  const std::vector<BasisAtPoint> table = tabulate(dofmap, rule);

  std::vector<CellGeometry> geo(mesh.num_cells());
  std::vector<Mat2> jinv(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    geo[c] = cell_geometry(mesh, c);
    jinv[c] = geo[c].jacobian.inverse();
  }

  ErrorQuadruple errors;
  double acc_strain = 0.0, acc_stress = 0.0, acc_pressure = 0.0;
  double max_vel2 = 0.0;

  for (int k = 1; k <= grid.K; ++k) {
    const double t_k = grid.t(k);
    const Eigen::VectorXd& u = states[k].coeffs;
    const std::vector<double> p_cells = discretize_exponent(exponent, t_k, mesh);
    double vel2 = 0.0;

    for (int c = 0; c < mesh.num_cells(); ++c) {
      const double detj = 2.0 * geo[c].area;
      const auto& vdofs = dofmap.cell_velocity_dofs[c];
      const auto& pdofs = dofmap.cell_pressure_dofs[c];
      const double p_n = p_cells[c];
      const double p_n_conj = conjugate_exponent(p_n);

      for (int q = 0; q < nq; ++q) {
        const BasisAtPoint& b = table[q];
        const Eigen::MatrixXd gphi = b.vel_grads_ref * jinv[c];
        const Vec2 x = geo[c].jacobian * rule.points[q] + geo[c].offset;
        const double w = detj * rule.weights[q];

        Eigen::Vector2d v_h = Eigen::Vector2d::Zero();
        Mat2 grad_v = Mat2::Zero();
        for (int d = 0; d < 2; ++d)
          for (int i = 0; i < nloc; ++i) {
            const double coeff = u(dofmap.global_velocity(vdofs[i], d));
            v_h(d) += coeff * b.vel_vals(i);
            grad_v.row(d) += coeff * gphi.row(i);
          }
        const Mat2 strain_h = 0.5 * (grad_v + grad_v.transpose());
        double pi_h = 0.0;
        for (int j = 0; j < 3; ++j)
          pi_h += u(dofmap.global_pressure(pdofs[j])) * b.p_vals(j);

        const Mat2 strain_ex = exact.strain(t_k, x);
        const Mat2 d_strain = natural_transform(p_n, strain_h, model) -
                              natural_transform(p_n, strain_ex, model);
        acc_strain += tau * w * d_strain.squaredNorm();

        const Mat2 d_stress =
            natural_transform_conjugate(p_n, stress(p_n, strain_h, model),
                                        model) -
            natural_transform_conjugate(p_n, exact.stress(t_k, x), model);
        acc_stress += tau * w * d_stress.squaredNorm();

        vel2 += w * (v_h - exact.velocity(t_k, x)).squaredNorm();

        const double d_pi = pi_h - exact.pressure(t_k, x);
        const double weight =
            std::pow(std::pow(model.delta + strain_ex.norm(), p_n - 1.0) +
                         std::abs(d_pi),
                     0.5 * (p_n_conj - 2.0));
        acc_pressure += tau * w * weight * weight * d_pi * d_pi;
      }
    }
    if (vel2 > max_vel2) max_vel2 = vel2;
  }

  errors.e_strain = std::sqrt(acc_strain);
  errors.e_stress = std::sqrt(acc_stress);
  errors.e_velocity = std::sqrt(max_vel2);
  errors.e_pressure = std::sqrt(acc_pressure);
  return errors;
}

std::optional<double> eoc(double e_prev, double e_cur, double h_prev,
                          double tau_prev, double h_cur, double tau_cur) {
  if (!(e_prev > 0.0) || !(e_cur > 0.0)) return std::nullopt;
  return std::log(e_cur / e_prev) /
         std::log((h_cur + tau_cur) / (h_prev + tau_prev));
}

double expected_rate(const ManufacturedCase& c) {
  return c.alpha * conjugate_exponent(c.p_plus()) / 2.0;
}

}  // namespace varpns
