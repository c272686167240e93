#pragma once

#include <vector>

#include "varpns/mesh.hpp"

namespace varpns {

/// Quadrature rule on the reference triangle {(0,0),(1,0),(0,1)}.
/// Weights are positive and sum to the reference area 1/2; the rule
/// integrates polynomials up to `degree` exactly.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;
  int size() const { return static_cast<int>(points.size()); }
};

/// Rule exact to the requested degree, degree in {1,...,10}.  Degree 1 is the
/// one-point barycenter rule, degree 2 the symmetric three-point rule; higher
/// degrees use a collapsed tensor Gauss-Legendre construction (positive
/// weights, exact by construction).
QuadratureRule quadrature_rule(int degree);

/// Gauss-Legendre nodes/weights on [0,1] (helper, exposed for tests).
void gauss_legendre_01(int n, std::vector<double>& points,
                       std::vector<double>& weights);

}  // namespace varpns
