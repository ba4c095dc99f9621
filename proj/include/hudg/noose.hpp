#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hudg/graph.hpp"
#include "hudg/hgeom.hpp"

namespace hudg {

struct Corner {
  enum class Kind : std::uint8_t { Site, Voronoi, Ideal };
  Kind kind = Kind::Site;
  // Site: {v, -1, -1}; Voronoi: sorted triple; Ideal: sorted pair {u, v, -1}
  std::array<int, 3> ids{-1, -1, -1};
  int end = 0;         // Ideal only: +1 the `to` end of bisector(u, v), -1 the `from` end
  int owner_site = -1; // Ideal only: the site whose ray ends here
  HPoint point;        // Site and Voronoi
  double angle = 0;    // Ideal
  double kx = 0, ky = 0;  // Klein coordinates

  static Corner site(const DiskGraph& g, int v);
  // circumcenter of three vertices, absent if the bisectors do not meet
  static bool voronoi(const DiskGraph& g, int a, int b, int c, Corner& out);
  // ideal endpoint of bisector(s, x) bounding the half-plane of s clockwise,
  // i.e. bisector(s, x).from
  static Corner ideal(const DiskGraph& g, int s, int x);

  std::uint32_t code() const;

  bool same(const Corner& o) const { return kind == o.kind && ids == o.ids && end == o.end; }
};

// Closed generalized polygon, interior to the right of the traversal.
// Edge i joins corners[i] and corners[i + 1]; arc_dir[i] is +1 / -1 for a
// counter-clockwise / clockwise ideal arc and 0 for a segment or ray.
struct CandidateNoose {
  std::vector<Corner> corners;
  std::vector<int> arc_dir;

  std::vector<int> visited;     // sorted site indices
  std::uint64_t visited_mask = 0;
  std::uint64_t support_mask = 0;  // visited sites plus the sites defining its corners
  double signed_area = 0.0;        // Klein model, counter-clockwise positive
  double area_key = 0.0;           // Euclidean Klein area of the interior
  int enclosed = -1;               // one-site nooses: a far site inside, if any
  std::string key;
  std::string region_key;  // equal for representations bounding the same region
  std::vector<std::uint64_t> edge_keys;  // directed corner pair per edge, 0 for arcs

  std::size_t size() const { return corners.size(); }
};

// Builds derived fields; false if the corner sequence is malformed.
bool finalize_noose(CandidateNoose& p);
CandidateNoose reverse(const CandidateNoose& p);

bool is_simple(const CandidateNoose& p);
bool point_in_interior(const CandidateNoose& p, const HPoint& x);
double interior_area_key(const CandidateNoose& p);
// winding number of the curve around x (Klein model)
int winding_number(const CandidateNoose& p, const HPoint& x);
double polygon_site_distance(const CandidateNoose& p, const DiskGraph& g, int v);

// Attempts to glue L and R along a path they traverse in opposite directions.
bool combine_nooses(const CandidateNoose& l, const CandidateNoose& r, CandidateNoose& out);
bool valid_combination(const CandidateNoose& p, const CandidateNoose& l, const CandidateNoose& r);
bool well_spaced(const CandidateNoose& p, const CandidateNoose& l, const CandidateNoose& r, const DiskGraph& g);

struct NooseCombination {
  int parent, left, right;
};

struct NooseEnumeration {
  std::vector<CandidateNoose> candidates;
  std::vector<NooseCombination> combinations;
  int leaf_count = 0;
};

inline constexpr std::size_t kDefaultNooseBudget = 2'000'000;

// Leaf nooses around single Delaunay edges of hypothetical independent sets,
// closed under valid combination, each visiting at most W sites.
// Throws BudgetExceeded when more than `max_candidates` would be produced.
NooseEnumeration enumerate_candidates(const DiskGraph& g, int W, std::size_t max_candidates = kDefaultNooseBudget);

struct DpResult {
  int size = 0;
  IndependentSet witness;
  int width = 0;
  std::size_t candidates = 0;
  std::size_t combinations = 0;
};

DpResult dp_max_is(const DiskGraph& g, int W, std::size_t max_candidates = kDefaultNooseBudget);

int default_width(int n, double r, double c = 4.0);

struct RampResult {
  DpResult best;
  std::vector<int> sizes;  // sizes[i] for width first_width + i
  int first_width = 2;
  bool stabilized = false;
};

// Runs W = first, first + 1, ... until two consecutive widths agree or max_width is reached.
RampResult dp_max_is_ramp(const DiskGraph& g, int first_width, int max_width,
                          std::size_t max_candidates = kDefaultNooseBudget);

}  // namespace hudg
