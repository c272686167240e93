#include "varpns/dofmap.hpp"

namespace varpns {

namespace {
bool on_unit_square_boundary(const Vec2& x) {
  const double eps = 1e-12;
  return x.x() < eps || x.x() > 1.0 - eps || x.y() < eps || x.y() > 1.0 - eps;
}
}  // namespace

DofMap build_dof_map(const Triangulation& mesh, ElementPair pair) {
  DofMap map;
  map.pair = pair;
  const int nv = mesh.num_vertices();
  const int nc = mesh.num_cells();
  const int ne = mesh.num_edges();

  map.n_velocity_scalar = pair == ElementPair::MINI ? nv + nc : nv + ne;
  map.n_pressure = nv;
  map.n_total = 2 * map.n_velocity_scalar + map.n_pressure + 1;

  map.velocity_dof_node.resize(map.n_velocity_scalar);
  for (int v = 0; v < nv; ++v) map.velocity_dof_node[v] = mesh.vertices[v];
  if (pair == ElementPair::MINI) {
    for (int c = 0; c < nc; ++c)
      map.velocity_dof_node[nv + c] = cell_geometry(mesh, c).barycenter;
  } else {
    for (int e = 0; e < ne; ++e)
      map.velocity_dof_node[nv + e] =
          0.5 * (mesh.vertices[mesh.edges[e].v[0]] +
                 mesh.vertices[mesh.edges[e].v[1]]);
  }

  map.cell_velocity_dofs.resize(nc);
  map.cell_pressure_dofs.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const auto& cell = mesh.cells[c];
    auto& vd = map.cell_velocity_dofs[c];
    if (pair == ElementPair::MINI) {
      vd = {cell[0], cell[1], cell[2], nv + c};
    } else {
      vd = {cell[0],
            cell[1],
            cell[2],
            nv + mesh.cell_edges[c][0],
            nv + mesh.cell_edges[c][1],
            nv + mesh.cell_edges[c][2]};
    }
    map.cell_pressure_dofs[c] = cell;
  }

  // Boundary velocity DOFs: vertex DOFs on the boundary, plus boundary-edge
  // midpoints for Taylor-Hood.  Bubbles are never boundary DOFs.
  map.is_boundary_velocity_dof.assign(map.n_velocity_scalar, false);
  for (int v = 0; v < nv; ++v)
    if (on_unit_square_boundary(mesh.vertices[v]))
      map.is_boundary_velocity_dof[v] = true;
  if (pair == ElementPair::TaylorHood) {
    for (int e = 0; e < ne; ++e)
      if (mesh.edges[e].on_boundary)
        map.is_boundary_velocity_dof[nv + e] = true;
  }
  for (int d = 0; d < map.n_velocity_scalar; ++d)
    if (map.is_boundary_velocity_dof[d]) map.boundary_velocity_dofs.push_back(d);
  return map;
}

}  // namespace varpns
