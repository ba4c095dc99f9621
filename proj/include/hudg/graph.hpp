#pragma once

#include <cstdint>
#include <vector>

#include "hudg/hgeom.hpp"

namespace hudg {

struct DiskGraph {
  std::vector<HPoint> centers;
  double radius = 1.0;
  std::vector<std::vector<int>> adj;  // sorted neighbour lists
  int duplicate_count = 0;            // pairs of coincident centers

  int size() const { return static_cast<int>(centers.size()); }
  bool adjacent(int i, int j) const;
  std::size_t edge_count() const;
};

using IndependentSet = std::vector<int>;

DiskGraph build_graph(const std::vector<HPoint>& centers, double r);

// graph induced on `vertices` (adjacency copied, not recomputed); vertex i of the
// result is vertices[i] of g
DiskGraph induced_subgraph(const DiskGraph& g, const std::vector<int>& vertices);

bool is_independent(const DiskGraph& g, const std::vector<int>& set);
bool is_clique(const DiskGraph& g, const std::vector<int>& set);

// connected components of g restricted to `alive` (all vertices when empty)
std::vector<std::vector<int>> components(const DiskGraph& g, const std::vector<char>& alive = {});

// candidate points where the ply can be attained: centers and circle crossings
std::vector<HPoint> ply_candidates(const DiskGraph& g);
int ply(const DiskGraph& g);

inline constexpr int kBruteForceLimit = 40;
IndependentSet brute_force_mis(const DiskGraph& g);

}  // namespace hudg
