#include "varpns/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace varpns {

void gauss_legendre_01(int n, std::vector<double>& points,
                       std::vector<double>& weights) {
  points.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Nodes on [-1,1] by Newton on the Legendre polynomial, then mapped.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    points[i] = 0.5 * (1.0 - x);  // descending x -> ascending point
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule quadrature_rule(int degree) {
  if (degree < 1 || degree > 10)
    throw std::invalid_argument("quadrature_rule: degree must be in 1..10");
  QuadratureRule rule;
  rule.degree = degree;
  if (degree == 1) {
    rule.points = {Vec2(1.0 / 3.0, 1.0 / 3.0)};
    rule.weights = {0.5};
    return rule;
  }
  if (degree == 2) {
    rule.points = {Vec2(1.0 / 6.0, 1.0 / 6.0), Vec2(2.0 / 3.0, 1.0 / 6.0),
                   Vec2(1.0 / 6.0, 2.0 / 3.0)};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
  }
  // Collapsed square-to-triangle map xi = u, eta = v(1-u) with Jacobian
  // (1-u): the u-direction integrand degree rises by one, so take one
  // extra point there.
  const int nu = (degree + 3) / 2;  // 2*nu-1 >= degree+1
  const int nv = (degree + 2) / 2;  // 2*nv-1 >= degree
  std::vector<double> pu, wu, pv, wv;
  gauss_legendre_01(nu, pu, wu);
  gauss_legendre_01(nv, pv, wv);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      rule.points.emplace_back(pu[i], pv[j] * (1.0 - pu[i]));
      rule.weights.push_back(wu[i] * wv[j] * (1.0 - pu[i]));
    }
  return rule;
}

}  // namespace varpns
