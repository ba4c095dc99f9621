#include "hudg/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace hudg {

bool DiskGraph::adjacent(int i, int j) const {
  const auto& a = adj[i];
  return std::binary_search(a.begin(), a.end(), j);
}

std::size_t DiskGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& a : adj) m += a.size();
  return m / 2;
}

DiskGraph build_graph(const std::vector<HPoint>& centers, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive");
  DiskGraph g;
  g.centers = centers;
  g.radius = r;
  const int n = g.size();
  g.adj.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = dist(centers[i], centers[j]);
      if (d == 0.0) ++g.duplicate_count;
      if (d <= 2.0 * r) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
    }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

DiskGraph induced_subgraph(const DiskGraph& g, const std::vector<int>& vertices) {
  DiskGraph h;
  h.radius = g.radius;
  std::vector<int> pos(g.size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    pos[vertices[i]] = static_cast<int>(i);
    h.centers.push_back(g.centers[vertices[i]]);
  }
  h.adj.assign(vertices.size(), {});
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (int w : g.adj[vertices[i]])
      if (pos[w] >= 0) h.adj[i].push_back(pos[w]);
    std::sort(h.adj[i].begin(), h.adj[i].end());
  }
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (h.centers[i] == h.centers[j]) ++h.duplicate_count;
  return h;
}

bool is_independent(const DiskGraph& g, const std::vector<int>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || g.adjacent(set[i], set[j])) return false;
  return true;
}

bool is_clique(const DiskGraph& g, const std::vector<int>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || !g.adjacent(set[i], set[j])) return false;
  return true;
}

std::vector<std::vector<int>> components(const DiskGraph& g, const std::vector<char>& alive) {
  const int n = g.size();
  auto ok = [&](int v) { return alive.empty() || alive[v]; };
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (seen[s] || !ok(s)) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (int w : g.adj[comp[k]])
        if (!seen[w] && ok(w)) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<HPoint> ply_candidates(const DiskGraph& g) {
  std::vector<HPoint> cand = g.centers;
  const double r = g.radius;
  const int n = g.size();
  for (int i = 0; i < n; ++i)
    for (int j : g.adj[i]) {
      if (j <= i) continue;
      double d = dist(g.centers[i], g.centers[j]);
      if (d == 0.0) continue;
      // right triangle centre / chord midpoint / crossing: cos(beta) = tanh(d/2) / tanh(r)
      double c = std::min(1.0, std::tanh(0.5 * d) / std::tanh(r));
      double beta = std::acos(c);
      double h = direction(g.centers[i], g.centers[j]);
      cand.push_back(move(g.centers[i], h + beta, r));
      cand.push_back(move(g.centers[i], h - beta, r));
    }
  return cand;
}

int ply(const DiskGraph& g) {
  if (g.size() == 0) throw std::invalid_argument("ply of an empty graph");
  const double r = g.radius;
  int best = 1;
  for (const HPoint& x : ply_candidates(g)) {
    int c = 0;
    for (const HPoint& p : g.centers)
      if (dist(x, p) <= r * (1.0 + 1e-9) + 1e-12) ++c;
    best = std::max(best, c);
  }
  return best;
}

namespace {

using Mask = std::uint64_t;

struct MisSolver {
  std::vector<Mask> nbr;  // open neighbourhoods

  Mask component_of(Mask mask) const {
    Mask comp = mask & (~mask + 1);
    Mask frontier = comp;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= nbr[std::countr_zero(f)];
      next &= mask & ~comp;
      comp |= next;
      frontier = next;
    }
    return comp;
  }

  Mask solve(Mask mask) const {
    if (!mask) return 0;
    Mask comp = component_of(mask);
    if (comp != mask) return solve(comp) | solve(mask & ~comp);
    int v = -1, deg = -1;
    for (Mask m = mask; m; m &= m - 1) {
      int u = std::countr_zero(m);
      int d = std::popcount(nbr[u] & mask);
      if (d > deg) deg = d, v = u;
    }
    Mask bit = Mask{1} << v;
    if (deg == 0) return bit;
    // a vertex of degree <= 1 belongs to some maximum independent set
    for (Mask m = mask; m; m &= m - 1) {
      int u = std::countr_zero(m);
      if (std::popcount(nbr[u] & mask) <= 1) {
        Mask ub = Mask{1} << u;
        return ub | solve(mask & ~(nbr[u] | ub));
      }
    }
    Mask take = bit | solve(mask & ~(nbr[v] | bit));
    Mask rest = mask & ~bit;
    if (std::popcount(rest) <= std::popcount(take)) return take;
    Mask skip = solve(rest);
    return std::popcount(skip) > std::popcount(take) ? skip : take;
  }
};

}  // namespace

IndependentSet brute_force_mis(const DiskGraph& g) {
  const int n = g.size();
  if (n > kBruteForceLimit) throw std::invalid_argument("brute_force_mis is limited to 40 vertices");
  MisSolver s;
  s.nbr.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : g.adj[i]) s.nbr[i] |= Mask{1} << j;
  Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
  Mask best = s.solve(all);
  IndependentSet out;
  for (Mask m = best; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

}  // namespace hudg
