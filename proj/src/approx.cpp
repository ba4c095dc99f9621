#include "hudg/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "hudg/separator.hpp"

namespace hudg {

namespace {

using LD = long double;

bool is_alive(const std::vector<char>& alive, int v) { return alive.empty() || alive[v]; }

struct EDisk {
  LD x, y, rho;
};

// Euclidean image of the disk of radius r around p in the Poincare model, in a frame rotated by `turn`
EDisk euclidean_disk(const HPoint& p, double r, double turn) {
  LD t = std::tanh(static_cast<LD>(r) / 2);
  LD a = std::tanh(static_cast<LD>(p.radial) / 2);
  LD den = 1 - a * a * t * t;
  LD c = a * (1 - t * t) / den;
  LD rho = t * (1 - a * a) / den;
  LD ang = static_cast<LD>(p.angle) + turn;
  return {c * std::cos(ang), c * std::sin(ang), rho};
}

HPoint from_frame(LD x, LD y, double turn) {
  LD m = std::hypot(x, y);
  if (m <= 0) return HPoint{};
  LD radial = std::log((1 + m) / (1 - m));
  return HPoint(static_cast<double>(radial), static_cast<double>(std::atan2(y, x) - turn));
}

}  // namespace

int farthest_vertex(const DiskGraph& g, const std::vector<char>& alive) {
  int best = -1;
  for (int v = 0; v < g.size(); ++v)
    if (is_alive(alive, v) && (best < 0 || g.centers[v].radial > g.centers[best].radial)) best = v;
  return best;
}

FarthestCover farthest_vertex_cover(const DiskGraph& g, int v, const std::vector<char>& alive) {
  if (v < 0 || v >= g.size() || !is_alive(alive, v)) throw std::invalid_argument("farthest_vertex_cover: bad vertex");
  for (int u = 0; u < g.size(); ++u)
    if (is_alive(alive, u) && g.centers[u].radial > g.centers[v].radial)
      throw std::invalid_argument("farthest_vertex_cover: vertex is not farthest from the origin");
  FarthestCover out;
  out.vertex = v;
  out.closed.push_back(v);
  for (int u : g.adj[v])
    if (is_alive(alive, u)) out.closed.push_back(u);

  // v on the negative y-axis; directions measured from the horizontal line through its Euclidean center
  const double turn = -kPi / 2 - g.centers[v].angle;
  const EDisk c = euclidean_disk(g.centers[v], g.radius, turn);
  std::vector<std::vector<int>> wedge(3);
  for (std::size_t k = 1; k < out.closed.size(); ++k) {
    int u = out.closed[k];
    EDisk e = euclidean_disk(g.centers[u], g.radius, turn);
    LD dx = e.x - c.x, dy = e.y - c.y;
    int w = 0;
    if (std::hypot(dx, dy) > 1e-15L * c.rho) {
      LD phi = std::atan2(dy, dx);
      if (phi < 0) phi = phi < -static_cast<LD>(kPi) / 2 ? static_cast<LD>(kPi) : 0;
      w = std::min(2, static_cast<int>(phi / (static_cast<LD>(kPi) / 3)));
    }
    wedge[w].push_back(u);
  }
  for (auto& cl : wedge) {
    if (cl.empty()) continue;
    if (!is_clique(g, cl)) throw std::logic_error("farthest_vertex_cover: wedge class is not a clique");
    out.cliques.push_back(cl);
  }

  const LD s3 = std::sqrt(static_cast<LD>(3));
  std::vector<std::pair<LD, LD>> cand{{c.x, c.y}};
  for (LD th : {static_cast<LD>(kPi) / 6, static_cast<LD>(kPi) / 2, 5 * static_cast<LD>(kPi) / 6})
    cand.push_back({c.x + s3 * c.rho * std::cos(th), c.y + s3 * c.rho * std::sin(th)});
  for (auto [x, y] : cand)
    if (std::hypot(x, y) < 1) out.stab_points.push_back(from_frame(x, y, turn));

  const double tol = 1e-9 * std::max(1.0, g.radius);
  for (int u : out.closed) {
    int best = -1;
    double bd = INFINITY;
    for (std::size_t k = 0; k < out.stab_points.size(); ++k) {
      double d = dist(out.stab_points[k], g.centers[u]);
      if (d < bd) bd = d, best = static_cast<int>(k);
    }
    if (!(bd <= g.radius + tol)) throw std::logic_error("farthest_vertex_cover: disk " + std::to_string(u) + " not stabbed");
    out.stabbed_by.push_back(best);
  }
  return out;
}

IndependentSet greedy_3approx(const DiskGraph& g) {
  std::vector<char> alive(g.size(), 1);
  IndependentSet out;
  for (int v = farthest_vertex(g, alive); v >= 0; v = farthest_vertex(g, alive)) {
    out.push_back(v);
    alive[v] = 0;
    for (int u : g.adj[v]) alive[u] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

DegeneracyAudit degeneracy_audit(const DiskGraph& g) {
  DegeneracyAudit a;
  a.ply = g.size() ? ply(g) : 0;
  std::vector<char> alive(g.size(), 1);
  for (int v = farthest_vertex(g, alive); v >= 0; v = farthest_vertex(g, alive)) {
    FarthestCover c = farthest_vertex_cover(g, v, alive);
    a.order.push_back(v);
    a.max_back_degree = std::max(a.max_back_degree, static_cast<int>(c.closed.size()) - 1);
    for (const auto& cl : c.cliques) a.clique_number_bound = std::max(a.clique_number_bound, static_cast<int>(cl.size()) + 1);
    alive[v] = 0;
  }
  a.clique_number_bound = std::max(a.clique_number_bound, g.size() ? 1 : 0);
  a.ok = a.max_back_degree <= 4 * a.ply - 1 || g.size() == 0;
  return a;
}

RDivision r_division(const DiskGraph& g, int t) {
  if (t < 1) throw std::invalid_argument("r_division: t must be positive");
  RDivision d;
  d.t = t;
  std::function<void(std::vector<int>)> split = [&](std::vector<int> verts) {
    if (verts.empty()) return;
    if (static_cast<int>(verts.size()) <= t) {
      d.patches.push_back(std::move(verts));
      return;
    }
    DiskGraph sub = induced_subgraph(g, verts);
    CliqueSeparator s = balanced_separator(sub);
    std::size_t removed = 0;
    for (const auto& cl : s.cliques) {
      std::vector<int> mapped;
      for (int i : cl) mapped.push_back(verts[i]);
      std::sort(mapped.begin(), mapped.end());
      removed += mapped.size();
      if (!mapped.empty()) d.cliques.push_back(std::move(mapped));
    }
    std::vector<int> a, b;
    for (int i : s.side_a) a.push_back(verts[i]);
    for (int i : s.side_b) b.push_back(verts[i]);
    if (std::max(a.size(), b.size()) >= verts.size()) {
      // no progress: peel off the farthest vertex as a one-vertex clique
      ++d.fallback_steps;
      int far = farthest_vertex(sub);
      d.cliques.push_back({verts[far]});
      verts.erase(verts.begin() + far);
      split(std::move(verts));
      return;
    }
    if (removed + a.size() + b.size() != verts.size()) throw std::logic_error("r_division: separator is not a partition");
    split(std::move(a));
    split(std::move(b));
  };
  std::vector<int> all(g.size());
  for (int v = 0; v < g.size(); ++v) all[v] = v;
  split(std::move(all));
  return d;
}

bool check_r_division(const DiskGraph& g, const RDivision& d) {
  std::vector<int> owner(g.size(), -2);
  for (std::size_t p = 0; p < d.patches.size(); ++p) {
    if (static_cast<int>(d.patches[p].size()) > d.t) return false;
    for (int v : d.patches[p]) {
      if (v < 0 || v >= g.size() || owner[v] != -2) return false;
      owner[v] = static_cast<int>(p);
    }
  }
  for (const auto& cl : d.cliques) {
    if (!is_clique(g, cl)) return false;
    for (int v : cl) {
      if (v < 0 || v >= g.size() || owner[v] != -2) return false;
      owner[v] = -1;
    }
  }
  for (int v = 0; v < g.size(); ++v) {
    if (owner[v] == -2) return false;
    if (owner[v] < 0) continue;
    for (int u : g.adj[v])
      if (owner[u] >= 0 && owner[u] != owner[v]) return false;
  }
  return true;
}

PtasResult ptas(const DiskGraph& g, double eps, std::size_t noose_budget) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ptas: eps must lie in (0, 1)");
  PtasResult res;
  if (g.size() == 0) return res;
  res.ply = ply(g);
  double tt = std::ceil(static_cast<double>(res.ply) * res.ply / (eps * eps));
  res.t = static_cast<int>(std::min<double>(tt, g.size()));
  RDivision d = r_division(g, res.t);
  res.clique_count = d.cliques.size();
  for (const auto& patch : d.patches) {
    res.patch_sizes.push_back(static_cast<int>(patch.size()));
    DiskGraph sub = induced_subgraph(g, patch);
    IndependentSet local;
    if (sub.size() <= kPatchBruteForceLimit) {
      local = brute_force_mis(sub);
      ++res.brute_force_patches;
    } else if (sub.size() <= 64) {
      local = dp_max_is_ramp(sub, 2, std::max(2, default_width(sub.size(), sub.radius)), noose_budget).best.witness;
      ++res.noose_patches;
    } else {
      local = separator_exact_is(sub);
      ++res.separator_patches;
    }
    for (int i : local) res.set.push_back(patch[i]);
  }
  std::sort(res.set.begin(), res.set.end());
  if (!is_independent(g, res.set)) throw std::logic_error("ptas: patch solutions are not independent");
  return res;
}

}  // namespace hudg
