#pragma once

#include <array>
#include <utility>
#include <vector>

#include "hudg/hgeom.hpp"

namespace hudg {

struct VoronoiVertex {
  std::array<int, 3> triple;  // sorted
  HPoint position;
};

struct IdealVoronoiVertex {
  std::pair<int, int> pair;  // u < v
  int end = 1;               // +1: the `to` end of bisector(u, v), -1: the `from` end
  IdealPoint point;
};

// Dual of a Delaunay edge {u, v}: the part [lo, hi] of bisector(u, v)
// (arclength parameter, possibly infinite) where u and v are closest.
struct DelaunayEdge {
  int u = 0, v = 0;  // u < v
  Geodesic bisector;
  double lo = 0.0, hi = 0.0;
  int lo_site = -1, hi_site = -1;      // third site fixing a finite end
  int lo_vertex = -1, hi_vertex = -1;  // finite Voronoi vertex indices
  int lo_ideal = -1, hi_ideal = -1;    // ideal Voronoi vertex indices
  HPoint anchor;                       // chosen point on the dual edge
};

struct DelaunayComplex {
  std::vector<HPoint> sites;  // after the symbolic perturbation
  std::vector<DelaunayEdge> edges;
  std::vector<VoronoiVertex> voronoi_vertices;
  std::vector<IdealVoronoiVertex> ideal_voronoi_vertices;
  std::vector<std::vector<int>> rotation;   // neighbours counter-clockwise
  std::vector<std::vector<int>> edge_of;    // parallel to rotation: edge index
  std::vector<std::vector<int>> left_face;  // parallel to rotation: face left of u -> rotation[u][k]
  std::vector<std::vector<int>> faces;      // vertex cycles, counter-clockwise
  int outer_face = -1;
  std::vector<char> outer_flags;

  int size() const { return static_cast<int>(sites.size()); }
  int degree(int u) const { return static_cast<int>(rotation[u].size()); }
  int slot(int u, int v) const;  // index of v in rotation[u], -1 if absent
  bool has_edge(int u, int v) const { return slot(u, v) >= 0; }
  const DelaunayEdge& edge(int u, int v) const;
  int face_left_of(int u, int v) const;
  const std::vector<int>& neighbors(int u) const { return rotation[u]; }
};

DelaunayComplex build_delaunay(const std::vector<HPoint>& sites);

std::vector<int> outer_vertices(const DelaunayComplex& c);
// vertices incident to the outer face of the embedding
std::vector<char> outer_by_face(const DelaunayComplex& c);
int outerplanarity(const DelaunayComplex& c);
// number of peeling rounds and the vertices removed in each
std::vector<std::vector<int>> peeling_layers(const DelaunayComplex& c);

struct DegreeAudit {
  int required = 0;          // ceil(e^r)
  int min_inner_degree = -1; // -1 when there are no inner vertices
  int inner_count = 0;
  std::vector<int> violations;
  bool ok() const { return violations.empty(); }
};
DegreeAudit inner_degree_audit(const DelaunayComplex& c, double r);

struct LayerCorner {
  int site = -1;  // -1 for a point on a dual edge
  HPoint point;
};

struct LayerDecomposition {
  int center = 0;
  std::vector<std::vector<int>> layers;           // layers[l] = V_l
  std::vector<std::vector<LayerCorner>> polygons; // polygons[l] = P_l (index 0 unused)
  std::vector<double> areas;                      // areas[l] = area(P_l), areas[0] = 0
  double required_ratio = 0.0;                    // 10 / (10 - r)
  bool growth_checked = false;                    // r <= 1.8
  bool growth_ok = true;
  double min_ratio = 0.0;  // smallest area(P_l) / area(P_{l-1}) over l >= 2 (0 if none)
};
LayerDecomposition layer_areas(const DelaunayComplex& c, int s, double r);

// number of pairs of drawn Delaunay edges (u - anchor - v) crossing in the Klein model
std::size_t drawn_edge_crossings(const DelaunayComplex& c);

}  // namespace hudg
