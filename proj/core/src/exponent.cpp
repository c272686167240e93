#include "varpns/exponent.hpp"

#include <cmath>
#include <stdexcept>

namespace varpns {

ExponentField constant_exponent(double value) {
  ExponentField f;
  f.p = [value](double, const Vec2&) { return value; };
  f.p_minus = f.p_plus = value;
  return f;
}

std::vector<double> discretize_exponent(const ExponentField& p, double t_k,
                                        const Triangulation& mesh) {
  std::vector<double> values(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c)
    values[c] = p(t_k, cell_geometry(mesh, c).barycenter);
  return values;
}

double conjugate_exponent(double r) {
  if (r <= 1.0)
    throw std::domain_error("conjugate_exponent: requires r > 1");
  return r / (r - 1.0);
}

double sobolev_conjugate(double r) { return 2.0 * r; }

std::vector<double> conjugate_exponent(const std::vector<double>& r) {
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = conjugate_exponent(r[i]);
  return out;
}

std::vector<double> sobolev_conjugate(const std::vector<double>& r) {
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = sobolev_conjugate(r[i]);
  return out;
}

namespace {
double modular_scaled(const QuadSamples& u, const QuadSamples& p,
                      const Triangulation& mesh, const QuadratureRule& rule,
                      double inv_lambda) {
  double sum = 0.0;
  const int nq = rule.size();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const double scale = 2.0 * cell_geometry(mesh, c).area;
    for (int q = 0; q < nq; ++q) {
      const double val = std::abs(u[c * nq + q]) * inv_lambda;
      sum += scale * rule.weights[q] * std::pow(val, p[c * nq + q]);
    }
  }
  return sum;
}
}  // namespace

double modular(const QuadSamples& u, const QuadSamples& p,
               const Triangulation& mesh, const QuadratureRule& rule) {
  return modular_scaled(u, p, mesh, rule, 1.0);
}

double luxembourg_norm(const QuadSamples& u, const QuadSamples& p,
                       const Triangulation& mesh, const QuadratureRule& rule) {
  const double rho = modular(u, p, mesh, rule);
  if (rho == 0.0) return 0.0;
  double p_min = p[0], p_max = p[0];
  for (double v : p) {
    p_min = std::min(p_min, v);
    p_max = std::max(p_max, v);
  }
  // rho(u/l) is squeezed between l^{-p-} rho and l^{-p+} rho (for l >= 1,
  // reversed below), so these powers bracket the unit-modular level set.
  double lo = std::min(std::pow(rho, 1.0 / p_min), std::pow(rho, 1.0 / p_max));
  double hi = std::max(std::pow(rho, 1.0 / p_min), std::pow(rho, 1.0 / p_max));
  lo = std::min(lo, hi) * 0.5;
  hi = hi * 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (modular_scaled(u, p, mesh, rule, 1.0 / mid) > 1.0)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo) <= 1e-10 * hi) break;
  }
  return hi;  // hi side keeps the unit-ball property rho(u/norm) <= 1
}

}  // namespace varpns
