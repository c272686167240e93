#include "varpns/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace varpns {

namespace {

// Rebuild the edge table by scanning cells in order; edge ids are assigned in
// order of first encounter, which keeps the numbering deterministic.
void build_edges(Triangulation& mesh) {
  mesh.edges.clear();
  mesh.cell_edges.assign(mesh.cells.size(), {-1, -1, -1});
  std::map<std::pair<int, int>, int> edge_of;
  std::vector<int> adjacency;
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    const auto& cell = mesh.cells[c];
    for (int e = 0; e < 3; ++e) {
      int a = cell[e];
      int b = cell[(e + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      int id;
      if (it == edge_of.end()) {
        id = static_cast<int>(mesh.edges.size());
        edge_of.emplace(key, id);
        mesh.edges.push_back(Edge{{key.first, key.second}, false});
        adjacency.push_back(1);
      } else {
        id = it->second;
        ++adjacency[id];
      }
      mesh.cell_edges[c][e] = id;
    }
  }
  for (std::size_t i = 0; i < mesh.edges.size(); ++i)
    mesh.edges[i].on_boundary = (adjacency[i] == 1);
}

double max_diameter(const Triangulation& mesh) {
  double h = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c)
    h = std::max(h, cell_geometry(mesh, c).diameter);
  return h;
}

}  // namespace

Triangulation unit_square_initial() {
  Triangulation mesh;
  mesh.vertices = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1),
                   Vec2(0.5, 0.5)};
  mesh.cells = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  mesh.parent.assign(4, -1);
  mesh.level = 0;
  build_edges(mesh);
  mesh.h = max_diameter(mesh);
  return mesh;
}

Triangulation refine(const Triangulation& mesh) {
  Triangulation fine;
  fine.level = mesh.level + 1;
  fine.vertices = mesh.vertices;
  // Midpoint vertex of edge e gets id V_old + e.
  const int v_old = mesh.num_vertices();
  fine.vertices.reserve(v_old + mesh.num_edges());
  for (const auto& edge : mesh.edges)
    fine.vertices.push_back(
        0.5 * (mesh.vertices[edge.v[0]] + mesh.vertices[edge.v[1]]));

  fine.cells.reserve(4 * mesh.cells.size());
  fine.parent.reserve(4 * mesh.cells.size());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells[c];
    const int m01 = v_old + mesh.cell_edges[c][0];
    const int m12 = v_old + mesh.cell_edges[c][1];
    const int m20 = v_old + mesh.cell_edges[c][2];
    fine.cells.push_back({cell[0], m01, m20});
    fine.cells.push_back({cell[1], m12, m01});
    fine.cells.push_back({cell[2], m20, m12});
    fine.cells.push_back({m01, m12, m20});
    for (int i = 0; i < 4; ++i) fine.parent.push_back(c);
  }
  build_edges(fine);
  fine.h = max_diameter(fine);
  return fine;
}

CellGeometry cell_geometry(const Triangulation& mesh, int cell_id) {
  if (cell_id < 0 || cell_id >= mesh.num_cells())
    throw std::out_of_range("cell_geometry: invalid cell index");
  const auto& cell = mesh.cells[cell_id];
  const Vec2& a = mesh.vertices[cell[0]];
  const Vec2& b = mesh.vertices[cell[1]];
  const Vec2& c = mesh.vertices[cell[2]];
  CellGeometry geo;
  geo.barycenter = (a + b + c) / 3.0;
  geo.jacobian.col(0) = b - a;
  geo.jacobian.col(1) = c - a;
  geo.offset = a;
  geo.area = 0.5 * geo.jacobian.determinant();
  geo.diameter =
      std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  return geo;
}

void write_vtk(const Triangulation& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_vtk: cannot open " + path);
  out << "# vtk DataFile Version 2.0\n";
  out << "triangulation level " << mesh.level << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& v : mesh.vertices)
    out << v.x() << " " << v.y() << " 0\n";
  out << "CELLS " << mesh.num_cells() << " " << 4 * mesh.num_cells() << "\n";
  for (const auto& c : mesh.cells)
    out << "3 " << c[0] << " " << c[1] << " " << c[2] << "\n";
  out << "CELL_TYPES " << mesh.num_cells() << "\n";
  for (int c = 0; c < mesh.num_cells(); ++c) out << "5\n";
}

}  // namespace varpns
