#pragma once

#include <cstddef>
#include <vector>

#include "hudg/graph.hpp"
#include "hudg/hgeom.hpp"
#include "hudg/noose.hpp"

namespace hudg {

// vertex of maximum radial coordinate among `alive` (all when empty), lowest index on ties; -1 if none
int farthest_vertex(const DiskGraph& g, const std::vector<char>& alive = {});

struct FarthestCover {
  int vertex = -1;
  std::vector<std::vector<int>> cliques;  // non-empty wedge classes of N(v)
  std::vector<HPoint> stab_points;        // at most four
  std::vector<int> stabbed_by;            // parallel to `closed`: index into stab_points
  std::vector<int> closed;                // v followed by its alive neighbours
};

// Throws std::logic_error when a wedge class is not a clique or a disk is left unstabbed.
FarthestCover farthest_vertex_cover(const DiskGraph& g, int v, const std::vector<char>& alive = {});

IndependentSet greedy_3approx(const DiskGraph& g);

struct DegeneracyAudit {
  std::vector<int> order;
  int max_back_degree = 0;
  int ply = 0;
  int clique_number_bound = 0;  // largest wedge clique + 1 seen during the elimination
  bool ok = true;               // max_back_degree <= 4 ply - 1
};

// Repeated farthest-vertex removal; the cover of every step is verified.
DegeneracyAudit degeneracy_audit(const DiskGraph& g);

struct RDivision {
  std::vector<std::vector<int>> patches;
  std::vector<std::vector<int>> cliques;
  int t = 1;
  int fallback_steps = 0;  // separator made no progress and a single vertex was removed instead
};

RDivision r_division(const DiskGraph& g, int t);
// partition of V, patch sizes <= t, cliques verified, no edge between patches
bool check_r_division(const DiskGraph& g, const RDivision& d);

struct PtasResult {
  IndependentSet set;
  int ply = 0;
  int t = 0;
  std::vector<int> patch_sizes;
  std::size_t clique_count = 0;
  int brute_force_patches = 0, noose_patches = 0, separator_patches = 0;
};

inline constexpr int kPatchBruteForceLimit = 40;

PtasResult ptas(const DiskGraph& g, double eps, std::size_t noose_budget = kDefaultNooseBudget);

}  // namespace hudg
