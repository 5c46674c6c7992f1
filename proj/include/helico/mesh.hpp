#pragma once

// Triangle meshes of swept helicoidal surfaces, written as Wavefront v/f text.

#include "helico/planner.hpp"

#include <array>
#include <string>
#include <vector>

namespace helico {

struct Mesh {
  Curvature kappa = Curvature::Flat;
  std::vector<Vec4> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based vertex indices
};

// Samples helicoid_point(f, s, t) on ns x nt points over s in [-s_extent,
// s_extent] and t in [0, duration]. Vertex (i, j) sits at index i * nt + j.
// Each grid cell becomes two triangles ordered so that their normal is
// d/ds x d/dt.
Mesh sweep_mesh(const HelicoidalPiece& piece, int ns, int nt, double s_extent = 1.0);

// kappa = 0 meshes carry the three spatial coordinates; curved meshes keep
// all four embedded coordinates on each "v" line.
std::string to_obj(const Mesh& m);

}  // namespace helico
