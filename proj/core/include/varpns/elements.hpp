#pragma once

#include <Eigen/Dense>
#include <vector>

#include "varpns/mesh.hpp"

namespace varpns {

enum class ElementKind { P0, P1, P2, Bubble };

/// Scalar reference element on the triangle {(0,0),(1,0),(0,1)}.
/// P1/P2 are nodal Lagrange elements; Bubble is the cubic cell bubble
/// 27*l0*l1*l2 (1 at the barycenter, 0 on the boundary).
struct ReferenceElement {
  ElementKind kind;
  int node_count;
  std::vector<Vec2> nodes;  // empty for P0/Bubble interior convention
};

ReferenceElement reference_element(ElementKind kind);

/// Basis values and reference-coordinate gradients at `point`, which must lie
/// in the closed reference triangle.
void reference_basis(ElementKind kind, const Vec2& point,
                     Eigen::VectorXd& values, Eigen::MatrixXd& gradients);

}  // namespace varpns
