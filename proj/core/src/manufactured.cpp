#include "varpns/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace varpns {

IndexValue index_p(const ManufacturedCase& c, double t, const Vec2& x) {
  const double r = x.norm();
  const double scale = std::pow(2.0, 0.5 * c.alpha);
  const double s = std::pow(r, c.alpha) / scale;  // |x|^a / 2^{a/2}
  IndexValue out;
  out.p = (1.0 - s) * c.p_plus() + s * (c.p_minus + t);
  out.dt_p = s;
  if (r > 0.0) {
    const Vec2 grad_s = c.alpha * std::pow(r, c.alpha - 2.0) / scale * x;
    out.grad_p = grad_s * (c.p_minus + t - c.p_plus());
  } else {
    out.grad_p.setZero();
  }
  return out;
}

ExponentField exponent_field(const ManufacturedCase& c) {
  ExponentField f;
  f.p = [c](double t, const Vec2& x) { return index_p(c, t, x).p; };
  f.p_minus = c.p_minus;
  f.p_plus = c.p_plus();
  return f;
}

namespace {

struct PowerExponent {
  double rho;
  Vec2 grad_rho;
  double dt_rho;
};

// rho_v = 2(beta-1)/p + delta_reg
PowerExponent rho_velocity(const ManufacturedCase& c, double t, const Vec2& x) {
  const IndexValue idx = index_p(c, t, x);
  const double coeff = 2.0 * (c.beta() - 1.0);
  PowerExponent out;
  out.rho = coeff / idx.p + c.delta_reg;
  out.grad_rho = -coeff / (idx.p * idx.p) * idx.grad_p;
  out.dt_rho = -coeff / (idx.p * idx.p) * idx.dt_p;
  return out;
}

// rho_pi = gamma - 2/p' + delta_reg = gamma - 2 + 2/p + delta_reg
PowerExponent rho_pressure(const ManufacturedCase& c, double t, const Vec2& x) {
  const IndexValue idx = index_p(c, t, x);
  PowerExponent out;
  out.rho = c.gamma() - 2.0 + 2.0 / idx.p + c.delta_reg;
  out.grad_rho = -2.0 / (idx.p * idx.p) * idx.grad_p;
  out.dt_rho = -2.0 / (idx.p * idx.p) * idx.dt_p;
  return out;
}

}  // namespace

ExactFields exact_fields(const ManufacturedCase& c, double t, const Vec2& x) {
  const double r = x.norm();
  if (r == 0.0)
    throw std::domain_error("exact_fields: singular at x = 0");
  const PowerExponent rv = rho_velocity(c, t, x);
  const double log_r = std::log(r);
  const double g = std::pow(r, rv.rho);
  // grad g = g (grad_rho ln r + rho x / r^2), dt g = g ln r dt_rho
  const Vec2 grad_g = g * (rv.grad_rho * log_r + rv.rho / (r * r) * x);
  const double dt_g = g * log_r * rv.dt_rho;

  const Eigen::Vector2d w(x.y(), -x.x());
  Mat2 grad_w;
  grad_w << 0, 1, -1, 0;

  ExactFields out;
  out.v = t * g * w;
  out.grad_v = t * (w * grad_g.transpose() + g * grad_w);
  out.strain = 0.5 * (out.grad_v + out.grad_v.transpose());
  out.dt_v = (g + t * dt_g) * w;

  const PowerExponent rp = rho_pressure(c, t, x);
  out.pi_raw = 25.0 * t * std::pow(r, rp.rho);
  return out;
}

double pressure_mean(const ManufacturedCase& c, double t,
                     const Triangulation& mesh, const QuadratureRule& rule) {
  double sum = 0.0;
  const int nq = rule.size();
  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const CellGeometry geo = cell_geometry(mesh, cell);
    const double scale = 2.0 * geo.area;
    for (int q = 0; q < nq; ++q) {
      const Vec2 x = geo.jacobian * rule.points[q] + geo.offset;
      sum += scale * rule.weights[q] *
             std::pow(x.norm(), rho_pressure(c, t, x).rho);
    }
  }
  return sum;  // |Omega| = 1
}

RhsData rhs_data(const ManufacturedCase& c, double t, const Vec2& x,
                 const StressModel& model, ModelVariant variant,
                 double pi_mean) {
  const ExactFields ex = exact_fields(c, t, x);
  const double p = index_p(c, t, x).p;
  const double pi = 25.0 * t * (std::pow(x.norm(), rho_pressure(c, t, x).rho) -
                                pi_mean);
  RhsData out;
  out.f = ex.dt_v;
  out.F = stress(p, ex.strain, model) - pi * Mat2::Identity();
  if (variant == ModelVariant::NavierStokes)
    out.F -= ex.v * ex.v.transpose();
  return out;
}

Eigen::Vector2d dirichlet_value(const ManufacturedCase& c, double t,
                                const Vec2& x) {
  if (x.norm() == 0.0) return Eigen::Vector2d::Zero();  // limit, rho_v > -1
  return exact_fields(c, t, x).v;
}

Eigen::Vector2d PolynomialCase::velocity(double t, const Vec2& x) {
  return t * Eigen::Vector2d(x.x() * x.x(), -2.0 * x.x() * x.y());
}

Mat2 PolynomialCase::grad_velocity(double t, const Vec2& x) {
  Mat2 g;
  g << 2.0 * x.x(), 0.0, -2.0 * x.y(), -2.0 * x.x();
  return t * g;
}

Eigen::Vector2d PolynomialCase::dt_velocity(const Vec2& x) {
  return Eigen::Vector2d(x.x() * x.x(), -2.0 * x.x() * x.y());
}

double PolynomialCase::pressure(double t, const Vec2& x) {
  return t * (x.x() + x.y() - 1.0);
}

RhsData PolynomialCase::rhs(double t, const Vec2& x, const StressModel& model,
                            double p, ModelVariant variant) {
  const Mat2 grad = grad_velocity(t, x);
  const Mat2 strain = 0.5 * (grad + grad.transpose());
  RhsData out;
  out.f = dt_velocity(x);
  out.F = stress(p, strain, model) - pressure(t, x) * Mat2::Identity();
  if (variant == ModelVariant::NavierStokes) {
    const Eigen::Vector2d v = velocity(t, x);
    out.F -= v * v.transpose();
  }
  return out;
}

}  // namespace varpns
