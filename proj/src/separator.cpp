#include "hudg/separator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace hudg {

Wedge max_gap_wedge(const std::vector<HPoint>& points, const HPoint& apex) {
  if (points.size() < 2) throw std::invalid_argument("max_gap_wedge needs at least two points");
  std::vector<double> lines;
  for (const HPoint& p : points) {
    if (dist(p, apex) == 0.0) throw std::invalid_argument("max_gap_wedge: point coincides with apex");
    lines.push_back(std::fmod(direction(apex, p), kPi));
  }
  std::sort(lines.begin(), lines.end());
  double best = -1.0, start = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    double next = i + 1 < lines.size() ? lines[i + 1] : lines[0] + kPi;
    double gap = next - lines[i];
    if (gap > best) best = gap, start = lines[i];
  }
  double h = normalize_angle(start + 0.5 * best);
  Geodesic axis{ideal_end(apex, h + kPi), ideal_end(apex, h), apex, h};
  return Wedge{axis, 0.5 * best};
}

std::vector<int> strip_members(const DiskGraph& g, const Geodesic& axis) {
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v)
    if (dist_point_geodesic(g.centers[v], axis) <= g.radius) out.push_back(v);
  return out;
}

BoxCover box_cover(const DiskGraph& g, const Geodesic& axis, double phi, const std::vector<int>& members) {
  const double r = g.radius;
  const double w = std::tanh(r);
  std::map<std::pair<int, long>, std::vector<int>> keyed;
  for (int v : members) {
    AxisCoords c = axis_coords(g.centers[v], axis);
    long idx = static_cast<long>(std::ceil(c.foot / w)) - 1;
    int side = c.signed_dist >= 0.0 ? 1 : -1;
    keyed[{side, idx}].push_back(v);
  }
  BoxCover out;
  for (auto& [key, vs] : keyed) {
    Box b;
    b.side = key.first;
    b.index = key.second;
    b.members = vs;
    double t0 = static_cast<double>(b.index) * w, t1 = t0 + w;
    b.b_lo = axis.point_at(t0);
    b.b_hi = axis.point_at(t1);
    double up = 0.5 * kPi * b.side;
    b.a_lo = move(b.b_lo, direction(b.b_lo, axis.point_at(t0 + 1.0)) + up, r);
    b.a_hi = move(b.b_hi, direction(b.b_hi, axis.point_at(t1 + 1.0)) + up, r);
    if (!is_clique(g, vs)) throw std::logic_error("box_cover: box members do not form a clique");
    out.cliques.push_back(vs);
    out.boxes.push_back(std::move(b));
  }
  double scale = (1.0 + 1.0 / r) * (1.0 + std::log(1.0 / std::max(phi, 1e-300)));
  out.fitted_constant = out.boxes.empty() ? 0.0 : static_cast<double>(out.boxes.size()) / scale;
  return out;
}

namespace {

HPoint klein_barycenter(const std::vector<HPoint>& pts) {
  double x = 0.0, y = 0.0;
  for (const HPoint& p : pts) {
    DiskPoint k = to_klein(p);
    x += k.x;
    y += k.y;
  }
  x /= static_cast<double>(pts.size());
  y /= static_cast<double>(pts.size());
  return from_klein(disk_point(x, y));
}

}  // namespace

CliqueSeparator balanced_separator(const DiskGraph& g) {
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("balanced_separator needs at least two vertices");
  HPoint apex = centerpoint(g.centers);
  bool hit = std::any_of(g.centers.begin(), g.centers.end(),
                         [&](const HPoint& p) { return dist(p, apex) < 1e-12; });
  if (hit) {
    HPoint bary = klein_barycenter(g.centers);
    double h = dist(apex, bary) > 1e-12 ? direction(apex, bary) : 0.0;
    for (double step = 1e-9; hit; step *= 2.0) {
      HPoint cand = move(apex, h, step);
      hit = std::any_of(g.centers.begin(), g.centers.end(),
                        [&](const HPoint& p) { return dist(p, cand) < 1e-12; });
      if (!hit) apex = cand;
    }
  }
  Wedge wedge = max_gap_wedge(g.centers, apex);
  CliqueSeparator sep;
  sep.axis = wedge.axis;
  sep.wedge_half_angle = wedge.phi;
  sep.apex = apex;
  std::vector<int> members = strip_members(g, wedge.axis);
  BoxCover cover = box_cover(g, wedge.axis, wedge.phi, members);
  sep.cliques = cover.cliques;
  sep.box_count = static_cast<int>(cover.boxes.size());
  std::vector<char> in_strip(n, 0);
  for (int v : members) in_strip[v] = 1;
  for (int v = 0; v < n; ++v) {
    if (in_strip[v]) continue;
    double sd = axis_coords(g.centers[v], wedge.axis).signed_dist;
    (sd > 0.0 ? sep.side_a : sep.side_b).push_back(v);
  }
  sep.fitted_constant = n > 1 ? sep.box_count / ((1.0 + 1.0 / g.radius) * std::log(static_cast<double>(n))) : 0.0;
  std::vector<char> alive(n, 1);
  for (int v : members) alive[v] = 0;
  auto comps = components(g, alive);
  std::vector<int> sizes;
  for (const auto& c : comps) sizes.push_back(static_cast<int>(c.size()));
  std::sort(sizes.rbegin(), sizes.rend());
  for (int s : sizes) (sep.greedy_a <= sep.greedy_b ? sep.greedy_a : sep.greedy_b) += s;
  sep.max_component = sizes.empty() ? 0 : sizes.front();
  return sep;
}

SeparatorCheck check_separator(const DiskGraph& g, const CliqueSeparator& s) {
  const int n = g.size();
  SeparatorCheck out;
  out.balance_bound = (2 * n + 2) / 3;
  std::vector<int> where(n, 0);
  auto mark = [&](int v, int tag) {
    if (v < 0 || v >= n || where[v] != 0) out.partition_ok = false;
    else where[v] = tag;
  };
  for (const auto& c : s.cliques) {
    if (!is_clique(g, c)) out.cliques_ok = false;
    for (int v : c) mark(v, 3);
  }
  for (int v : s.side_a) mark(v, 1);
  for (int v : s.side_b) mark(v, 2);
  if (std::count(where.begin(), where.end(), 0) != 0) out.partition_ok = false;
  for (int v : s.side_a)
    for (int w : g.adj[v])
      if (where[w] == 2) ++out.crossing_edges;
  std::vector<char> alive(n);
  for (int v = 0; v < n; ++v) alive[v] = where[v] != 3;
  for (const auto& c : components(g, alive))
    out.max_component = std::max(out.max_component, static_cast<int>(c.size()));
  return out;
}

namespace {

struct ExactSolver {
  const DiskGraph& g;
  std::uint64_t budget;
  std::uint64_t work = 0;
  std::map<std::vector<int>, std::vector<int>> memo;

  void spend(std::uint64_t units) {
    work += units;
    if (work > budget) throw BudgetExceeded("separator_exact_is: work budget exceeded", {});
  }

  std::vector<int> solve(const std::vector<int>& vs) {
    spend(1);
    if (vs.empty()) return {};
    if (vs.size() <= 3) {
      DiskGraph h = induced_subgraph(g, vs);
      std::vector<int> out;
      for (int i : brute_force_mis(h)) out.push_back(vs[i]);
      return out;
    }
    if (auto it = memo.find(vs); it != memo.end()) return it->second;
    DiskGraph h = induced_subgraph(g, vs);
    auto comps = components(h);
    std::vector<int> best;
    if (comps.size() > 1) {
      for (const auto& c : comps) {
        std::vector<int> sub;
        for (int i : c) sub.push_back(vs[i]);
        auto part = solve(sub);
        best.insert(best.end(), part.begin(), part.end());
      }
    } else {
      best = split(vs, h);
    }
    std::sort(best.begin(), best.end());
    memo.emplace(vs, best);
    return best;
  }

  std::vector<int> branch_on_vertex(const std::vector<int>& vs, const DiskGraph& h) {
    int v = 0;
    for (int i = 1; i < h.size(); ++i)
      if (h.adj[i].size() > h.adj[v].size()) v = i;
    std::vector<int> with, without;
    for (int i = 0; i < h.size(); ++i) {
      if (i != v) without.push_back(vs[i]);
      if (i != v && !h.adjacent(i, v)) with.push_back(vs[i]);
    }
    auto a = solve(with);
    a.push_back(vs[v]);
    auto b = solve(without);
    return b.size() > a.size() ? b : a;
  }

  std::vector<int> split(const std::vector<int>& vs, const DiskGraph& h) {
    CliqueSeparator sep = balanced_separator(h);
    const int m = h.size();
    if (static_cast<int>(std::max(sep.side_a.size(), sep.side_b.size())) >= m)
      return branch_on_vertex(vs, h);
    std::vector<int> chosen;
    std::vector<int> best;
    std::vector<int> blocked(m, 0);
    auto finish = [&]() {
      spend(1);
      std::vector<int> a, b;
      for (int i : sep.side_a)
        if (!blocked[i]) a.push_back(vs[i]);
      for (int i : sep.side_b)
        if (!blocked[i]) b.push_back(vs[i]);
      std::vector<int> cand;
      for (int i : chosen) cand.push_back(vs[i]);
      if (cand.size() + a.size() + b.size() <= best.size()) return;
      auto sa = solve(a);
      auto sb = solve(b);
      cand.insert(cand.end(), sa.begin(), sa.end());
      cand.insert(cand.end(), sb.begin(), sb.end());
      if (cand.size() > best.size()) best = cand;
    };
    auto rec = [&](auto&& self, std::size_t ci) -> void {
      if (ci == sep.cliques.size()) {
        finish();
        return;
      }
      self(self, ci + 1);
      for (int v : sep.cliques[ci]) {
        if (blocked[v]) continue;
        chosen.push_back(v);
        ++blocked[v];
        for (int w : h.adj[v]) ++blocked[w];
        self(self, ci + 1);
        for (int w : h.adj[v]) --blocked[w];
        --blocked[v];
        chosen.pop_back();
      }
    };
    rec(rec, 0);
    return best;
  }
};

}  // namespace

IndependentSet separator_exact_is(const DiskGraph& g, std::uint64_t budget) {
  ExactSolver s{g, budget, 0, {}};
  std::vector<int> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  try {
    return s.solve(all);
  } catch (const BudgetExceeded&) {
    std::vector<int> partial;
    std::vector<char> blocked(g.size(), 0);
    for (int v = 0; v < g.size(); ++v) {
      if (blocked[v]) continue;
      partial.push_back(v);
      for (int w : g.adj[v]) blocked[w] = 1;
    }
    for (const auto& [key, val] : s.memo)
      if (key.size() == all.size() && val.size() > partial.size()) partial = val;
    throw BudgetExceeded("separator_exact_is: work budget exceeded", partial);
  }
}

}  // namespace hudg
