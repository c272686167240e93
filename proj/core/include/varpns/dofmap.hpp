#pragma once

#include <vector>

#include "varpns/elements.hpp"
#include "varpns/mesh.hpp"

namespace varpns {

enum class ElementPair { MINI, TaylorHood };

/// Global DOF numbering for the mixed velocity-pressure pair.
///
/// Layout (blocked): x-velocity scalar DOFs [0, nv), y-velocity [nv, 2*nv),
/// pressure [2*nv, 2*nv+np), one Lagrange-multiplier slot for the zero-mean
/// pressure constraint last.
///
/// Velocity scalar numbering: vertex DOFs first (vertex id), then for MINI
/// one bubble per cell (V + cell id), for Taylor-Hood one midpoint per edge
/// (V + edge id).  Pressure is continuous P1 (vertex id).
struct DofMap {
  ElementPair pair;
  int n_velocity_scalar = 0;  // per component
  int n_pressure = 0;
  int n_total = 0;  // 2*n_velocity_scalar + n_pressure + 1

  std::vector<std::vector<int>> cell_velocity_dofs;  // scalar, local order
  std::vector<std::array<int, 3>> cell_pressure_dofs;
  std::vector<int> boundary_velocity_dofs;  // scalar ids, sorted
  std::vector<bool> is_boundary_velocity_dof;
  std::vector<Vec2> velocity_dof_node;  // node coordinate per scalar DOF

  int velocity_local_size() const {
    return pair == ElementPair::MINI ? 4 : 6;
  }
  int global_velocity(int scalar_dof, int component) const {
    return scalar_dof + component * n_velocity_scalar;
  }
  int global_pressure(int pressure_dof) const {
    return 2 * n_velocity_scalar + pressure_dof;
  }
  int multiplier_index() const { return n_total - 1; }
};

DofMap build_dof_map(const Triangulation& mesh, ElementPair pair);

}  // namespace varpns
