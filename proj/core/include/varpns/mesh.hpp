#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace varpns {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct Edge {
  std::array<int, 2> v;  // vertex ids, v[0] < v[1]
  bool on_boundary = false;
};

/// Conforming triangulation of (0,1)^2.  Cells are counterclockwise vertex
/// triples; edges are stored explicitly (Taylor-Hood needs edge DOFs).
/// Immutable after construction.
struct Triangulation {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> cells;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> cell_edges;  // edge ids, local order (01)(12)(20)
  std::vector<int> parent;                     // parent cell id, -1 on level 0
  int level = 0;
  double h = 0.0;  // maximal cell diameter

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

struct CellGeometry {
  Vec2 barycenter;
  double area;
  Mat2 jacobian;  // affine map: x = jacobian * xi + offset
  Vec2 offset;
  double diameter;
};

/// The 4-cell mesh obtained by splitting the unit square along its diagonals;
/// vertices are the four corners plus the center, h = 1.
Triangulation unit_square_initial();

/// Red refinement: each triangle is split into 4 congruent children by
/// connecting edge midpoints.  New vertices are appended in parent-edge
/// order; children are enumerated corner-corner-corner-center.
Triangulation refine(const Triangulation& mesh);

CellGeometry cell_geometry(const Triangulation& mesh, int cell_id);

/// Debug export as legacy ASCII VTK (UNSTRUCTURED_GRID, triangle cells).
void write_vtk(const Triangulation& mesh, const std::string& path);

}  // namespace varpns
