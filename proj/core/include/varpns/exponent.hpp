#pragma once

#include <functional>
#include <vector>

#include "varpns/mesh.hpp"
#include "varpns/quadrature.hpp"

namespace varpns {

/// Variable power-law index p(t,x) with cached bounds 1 < p- <= p <= p+.
struct ExponentField {
  std::function<double(double t, const Vec2& x)> p;
  double p_minus = 2.0;
  double p_plus = 2.0;

  double operator()(double t, const Vec2& x) const { return p(t, x); }
};

ExponentField constant_exponent(double value);

/// Piecewise-constant snapshot at time t_k: value on cell T is p(t_k, x_T)
/// with x_T the barycenter (one-point quadrature in time and space).
std::vector<double> discretize_exponent(const ExponentField& p, double t_k,
                                        const Triangulation& mesh);

/// Conjugate exponent r' = r/(r-1); requires r > 1.
double conjugate_exponent(double r);
/// Parabolic Sobolev conjugate r_* = r(d+2)/d with d = 2.
double sobolev_conjugate(double r);

std::vector<double> conjugate_exponent(const std::vector<double>& r);
std::vector<double> sobolev_conjugate(const std::vector<double>& r);

/// Samples of a scalar field at the quadrature points of every cell,
/// row-major: sample(cell, qp) = values[cell * rule.size() + qp].
using QuadSamples = std::vector<double>;

/// Modular rho_p(u) = sum_cells sum_qp w |u|^p.
double modular(const QuadSamples& u, const QuadSamples& p,
               const Triangulation& mesh, const QuadratureRule& rule);

/// Luxembourg norm inf{lambda > 0 : rho(u/lambda) <= 1} by monotone
/// bisection to relative tolerance 1e-10; 0 for u == 0.
double luxembourg_norm(const QuadSamples& u, const QuadSamples& p,
                       const Triangulation& mesh, const QuadratureRule& rule);

}  // namespace varpns
