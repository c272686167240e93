#pragma once

#include <Eigen/Dense>

#include "varpns/exponent.hpp"
#include "varpns/mesh.hpp"
#include "varpns/quadrature.hpp"
#include "varpns/stress.hpp"

namespace varpns {

enum class ModelVariant { Stokes, NavierStokes };

/// Fractional-regularity benchmark on (0,1)^2 x (0, 0.1]:
///   v(t,x)  = t |x|^{rho_v} (x2, -x1),   rho_v  = 2(beta-1)/p + delta_reg
///   pi(t,x) = 25 t (|x|^{rho_pi} - <|.|^{rho_pi}>),
///                                        rho_pi = gamma - 2/p' + delta_reg
/// with the power-law index
///   p(t,x) = (1 - |x|^a/2^{a/2}) p+ + (|x|^a/2^{a/2}) (p- + t),
/// alpha = beta = gamma and p+ = p- + 1.
struct ManufacturedCase {
  double p_minus = 2.5;  // > 2
  double alpha = 1.0;    // in (0,1]
  double delta_reg = 1e-5;
  double T = 0.1;

  double p_plus() const { return p_minus + 1.0; }
  double beta() const { return alpha; }
  double gamma() const { return alpha; }
};

struct IndexValue {
  double p;
  Vec2 grad_p;
  double dt_p;
};

IndexValue index_p(const ManufacturedCase& c, double t, const Vec2& x);

ExponentField exponent_field(const ManufacturedCase& c);

struct ExactFields {
  Eigen::Vector2d v;
  Mat2 grad_v;
  Mat2 strain;  // symmetric part of grad_v
  Eigen::Vector2d dt_v;
  double pi_raw;  // 25 t |x|^{rho_pi}, mean not yet subtracted
};

/// Requires x != 0 (singular corner); quadrature points are interior.
ExactFields exact_fields(const ManufacturedCase& c, double t, const Vec2& x);

/// <|x|^{rho_pi(t,x)}>_Omega with the given rule on the given mesh; the exact
/// pressure is pi = 25 t (|x|^{rho_pi} - mean).
double pressure_mean(const ManufacturedCase& c, double t,
                     const Triangulation& mesh, const QuadratureRule& rule);

struct RhsData {
  Eigen::Vector2d f;  // = dt_v
  Mat2 F;             // S(p, Dv) [- v (x) v for Navier-Stokes] - pi * I
};

RhsData rhs_data(const ManufacturedCase& c, double t, const Vec2& x,
                 const StressModel& model, ModelVariant variant,
                 double pi_mean);

/// Boundary velocity value at a node (0 at the singular corner by the
/// continuity convention); initial velocity is identically zero.
Eigen::Vector2d dirichlet_value(const ManufacturedCase& c, double t,
                                const Vec2& x);

/// Exactness oracle for the p == 2 debug override: quadratic velocity
///   v = t (x^2, -2xy),  pi = t (x + y - 1)   (zero mean, div v = 0).
struct PolynomialCase {
  static Eigen::Vector2d velocity(double t, const Vec2& x);
  static Mat2 grad_velocity(double t, const Vec2& x);
  static Eigen::Vector2d dt_velocity(const Vec2& x);
  static double pressure(double t, const Vec2& x);
  static RhsData rhs(double t, const Vec2& x, const StressModel& model,
                     double p, ModelVariant variant);
};

}  // namespace varpns
