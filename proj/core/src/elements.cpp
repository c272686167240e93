#include "varpns/elements.hpp"

#include <stdexcept>

namespace varpns {

ReferenceElement reference_element(ElementKind kind) {
  switch (kind) {
    case ElementKind::P0:
      return {kind, 1, {}};
    case ElementKind::P1:
      return {kind, 3, {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}};
    case ElementKind::P2:
      return {kind, 6,
              {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(0.5, 0),
               Vec2(0.5, 0.5), Vec2(0, 0.5)}};
    case ElementKind::Bubble:
      return {kind, 1, {}};
  }
  throw std::logic_error("reference_element: unknown kind");
}

void reference_basis(ElementKind kind, const Vec2& point,
                     Eigen::VectorXd& values, Eigen::MatrixXd& gradients) {
  const double x = point.x(), y = point.y();
  if (x < -1e-12 || y < -1e-12 || x + y > 1.0 + 1e-12)
    throw std::domain_error("reference_basis: point outside reference triangle");
  const double l0 = 1.0 - x - y, l1 = x, l2 = y;
  switch (kind) {
    case ElementKind::P0:
      values.resize(1);
      gradients.resize(1, 2);
      values << 1.0;
      gradients.setZero();
      return;
    case ElementKind::P1:
      values.resize(3);
      gradients.resize(3, 2);
      values << l0, l1, l2;
      gradients << -1, -1, 1, 0, 0, 1;
      return;
    case ElementKind::P2: {
      values.resize(6);
      gradients.resize(6, 2);
      values << l0 * (2 * l0 - 1), l1 * (2 * l1 - 1), l2 * (2 * l2 - 1),
          4 * l0 * l1, 4 * l1 * l2, 4 * l2 * l0;
      // d l0 = (-1,-1), d l1 = (1,0), d l2 = (0,1)
      gradients.row(0) << -(4 * l0 - 1), -(4 * l0 - 1);
      gradients.row(1) << 4 * l1 - 1, 0;
      gradients.row(2) << 0, 4 * l2 - 1;
      gradients.row(3) << 4 * (l0 - l1), -4 * l1;
      gradients.row(4) << 4 * l2, 4 * l1;
      gradients.row(5) << -4 * l2, 4 * (l0 - l2);
      return;
    }
    case ElementKind::Bubble:
      values.resize(1);
      gradients.resize(1, 2);
      values << 27.0 * l0 * l1 * l2;
      gradients.row(0) << 27.0 * (l0 * l2 - l1 * l2),
          27.0 * (l0 * l1 - l1 * l2);
      return;
  }
  throw std::logic_error("reference_basis: unknown kind");
}

}  // namespace varpns
