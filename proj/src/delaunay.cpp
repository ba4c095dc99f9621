#include "hudg/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace hudg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kJitter = 1e-9;

struct Interval {
  double lo = -kInf, hi = kInf;
  int lo_site = -1, hi_site = -1;
};

// Sites as seen from the bisector base: distance and angle relative to the heading.
struct Local {
  double half_sinh2;  // sinh^2(d / 2)
  double d;
  double sinh_d_cos;  // sinh(d) * cos(angle - heading)
};

Local local_of(const Geodesic& b, const HPoint& w) {
  double d = dist(b.base, w);
  double c = d == 0.0 ? 0.0 : std::cos(direction(b.base, w) - b.heading);
  double s = std::sinh(0.5 * d);
  return {s * s, d, std::sinh(d) * c};
}

// Restrict `iv` to where u is at most as far as w along the bisector:
// a cosh t + b sinh t >= 0.
bool restrict_interval(Interval& iv, const Local& lu, const Local& lw, int w) {
  double a = 2.0 * std::sinh(0.5 * (lw.d - lu.d)) * std::sinh(0.5 * (lw.d + lu.d));
  double b = -lw.sinh_d_cos;
  if (std::fabs(a) >= std::fabs(b)) {
    if (a > 0.0) return true;
    iv.lo = kInf;
    iv.hi = -kInf;
    return false;
  }
  double t0 = std::atanh(-a / b);
  if (b > 0.0) {
    if (t0 > iv.lo) iv.lo = t0, iv.lo_site = w;
  } else {
    if (t0 < iv.hi) iv.hi = t0, iv.hi_site = w;
  }
  return iv.lo < iv.hi;
}

// Newton steps on dist(X, u) - dist(X, w) along the bisector
HPoint refine_on_bisector(const Geodesic& b, double t, const HPoint& u, const HPoint& w) {
  auto h = [&](double x) {
    HPoint p = b.point_at(x);
    return dist(p, u) - dist(p, w);
  };
  double best_t = t, best = std::fabs(h(t));
  for (int it = 0; it < 4 && best > 0.0; ++it) {
    double d = 1e-7 * std::max(1.0, std::fabs(best_t));
    double slope = (h(best_t + d) - h(best_t - d)) / (2.0 * d);
    if (!(std::fabs(slope) > 0.0)) break;
    double cand = best_t - h(best_t) / slope;
    double val = std::fabs(h(cand));
    if (!(val < best)) break;
    best = val;
    best_t = cand;
  }
  return b.point_at(best_t);
}

double anchor_param(double lo, double hi) {
  if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
  if (std::isfinite(lo)) return lo + 1.0;
  if (std::isfinite(hi)) return hi - 1.0;
  return 0.0;
}

double signed_turn(double from, double to) {
  double d = normalize_angle(to - from);
  return d > kPi ? d - kTwoPi : d;
}

double signed_area(const HPoint& s, const HPoint& p, const HPoint& q) {
  double t = signed_turn(direction(s, p), direction(s, q));
  if (t == 0.0) return 0.0;
  double a = triangle_area(s, p, q);
  return t > 0.0 ? a : -a;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

using Span = std::pair<double, double>;

std::vector<Span> intersect_spans(const std::vector<Span>& a, const std::vector<Span>& b, double min_len) {
  std::vector<Span> out;
  for (const Span& x : a)
    for (const Span& y : b) {
      double lo = std::max(x.first, y.first), hi = std::min(x.second, y.second);
      if (hi - lo > min_len) out.push_back({lo, hi});
    }
  return out;
}

std::vector<Span> arc_spans(const IdealArc& arc) {
  double start = arc.to.angle, len = arc.span();
  if (start + len <= kTwoPi) return {{start, start + len}};
  return {{start, kTwoPi}, {0.0, start + len - kTwoPi}};
}

}  // namespace

int DelaunayComplex::slot(int u, int v) const {
  const auto& rot = rotation[u];
  for (std::size_t k = 0; k < rot.size(); ++k)
    if (rot[k] == v) return static_cast<int>(k);
  return -1;
}

const DelaunayEdge& DelaunayComplex::edge(int u, int v) const {
  int k = slot(u, v);
  if (k < 0) throw std::out_of_range("not a Delaunay edge");
  return edges[edge_of[u][k]];
}

int DelaunayComplex::face_left_of(int u, int v) const {
  int k = slot(u, v);
  if (k < 0) throw std::out_of_range("not a Delaunay edge");
  return left_face[u][k];
}

DelaunayComplex build_delaunay(const std::vector<HPoint>& input) {
  const int n = static_cast<int>(input.size());
  if (n < 1) throw std::invalid_argument("build_delaunay needs at least one site");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(input[i], input[j]) == 0.0) throw std::invalid_argument("build_delaunay: duplicate sites");

  DelaunayComplex c;
  c.sites = input;
  for (int i = 0; i < n; ++i)
    c.sites[i] = move(c.sites[i], c.sites[i].angle + 0.5 * kPi, kJitter * (i + 1) / n);
  const auto& S = c.sites;

  std::vector<std::vector<int>> order(n);
  for (int u = 0; u < n; ++u) {
    std::vector<double> d(n);
    for (int w = 0; w < n; ++w) d[w] = dist(S[u], S[w]);
    order[u].resize(n);
    std::iota(order[u].begin(), order[u].end(), 0);
    std::sort(order[u].begin(), order[u].end(), [&](int a, int b) { return d[a] < d[b] || (d[a] == d[b] && a < b); });
  }

  std::map<std::array<int, 3>, int> vertex_index;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      Geodesic B = perpendicular_bisector(S[u], S[v]);
      Local lu = local_of(B, S[u]);
      lu.sinh_d_cos = 0.0;
      Interval iv;
      bool alive = true;
      for (int w : order[u]) {
        if (w == u || w == v) continue;
        if (!restrict_interval(iv, lu, local_of(B, S[w]), w)) {
          alive = false;
          break;
        }
      }
      if (!alive) continue;
      double tol = 1e-15 * std::max({1.0, std::isfinite(iv.lo) ? std::fabs(iv.lo) : 0.0,
                                     std::isfinite(iv.hi) ? std::fabs(iv.hi) : 0.0});
      if (!(iv.hi - iv.lo > tol)) continue;
      DelaunayEdge e;
      e.u = u;
      e.v = v;
      e.bisector = B;
      e.lo = iv.lo;
      e.hi = iv.hi;
      e.lo_site = iv.lo_site;
      e.hi_site = iv.hi_site;
      e.anchor = B.point_at(anchor_param(iv.lo, iv.hi));
      auto finite_end = [&](double t, int w) {
        std::array<int, 3> key{u, v, w};
        std::sort(key.begin(), key.end());
        auto it = vertex_index.find(key);
        if (it != vertex_index.end()) return it->second;
        int id = static_cast<int>(c.voronoi_vertices.size());
        c.voronoi_vertices.push_back({key, refine_on_bisector(B, t, S[u], S[w])});
        vertex_index.emplace(key, id);
        return id;
      };
      auto ideal_end_of = [&](int end) {
        int id = static_cast<int>(c.ideal_voronoi_vertices.size());
        c.ideal_voronoi_vertices.push_back({{u, v}, end, end > 0 ? B.to : B.from});
        return id;
      };
      if (std::isfinite(iv.lo)) e.lo_vertex = finite_end(iv.lo, iv.lo_site);
      else e.lo_ideal = ideal_end_of(-1);
      if (std::isfinite(iv.hi)) e.hi_vertex = finite_end(iv.hi, iv.hi_site);
      else e.hi_ideal = ideal_end_of(1);
      c.edges.push_back(e);
    }
  }

  c.rotation.assign(n, {});
  c.edge_of.assign(n, {});
  {
    std::vector<std::vector<std::pair<double, int>>> around(n);
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
      const DelaunayEdge& e = c.edges[i];
      around[e.u].push_back({direction(S[e.u], e.anchor), i});
      around[e.v].push_back({direction(S[e.v], e.anchor), i});
    }
    for (int u = 0; u < n; ++u) {
      std::sort(around[u].begin(), around[u].end());
      for (auto [ang, i] : around[u]) {
        const DelaunayEdge& e = c.edges[i];
        c.rotation[u].push_back(e.u == u ? e.v : e.u);
        c.edge_of[u].push_back(i);
      }
    }
  }

  c.left_face.assign(n, {});
  for (int u = 0; u < n; ++u) c.left_face[u].assign(c.rotation[u].size(), -1);
  for (int u = 0; u < n; ++u) {
    for (std::size_t k = 0; k < c.rotation[u].size(); ++k) {
      if (c.left_face[u][k] >= 0) continue;
      int id = static_cast<int>(c.faces.size());
      std::vector<int> cycle;
      int a = u, ka = static_cast<int>(k);
      while (c.left_face[a][ka] < 0) {
        c.left_face[a][ka] = id;
        cycle.push_back(a);
        int b = c.rotation[a][ka];
        int kb = c.slot(b, a);
        int deg = c.degree(b);
        ka = (kb + deg - 1) % deg;
        a = b;
      }
      c.faces.push_back(std::move(cycle));
    }
  }

  for (const DelaunayEdge& e : c.edges) {
    if (e.hi_ideal >= 0) {
      int f = c.face_left_of(e.u, e.v);
      if (c.outer_face >= 0 && c.outer_face != f) throw std::logic_error("build_delaunay: several unbounded faces");
      c.outer_face = f;
    }
    if (e.lo_ideal >= 0) {
      int f = c.face_left_of(e.v, e.u);
      if (c.outer_face >= 0 && c.outer_face != f) throw std::logic_error("build_delaunay: several unbounded faces");
      c.outer_face = f;
    }
  }
  if (!c.edges.empty() && c.outer_face < 0) throw std::logic_error("build_delaunay: no unbounded face");

  c.outer_flags.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    std::vector<Span> set{{0.0, kTwoPi}};
    for (int w = 0; w < n && !set.empty(); ++w)
      if (w != s) set = intersect_spans(set, arc_spans(halfplane_ideal_arc(S[s], S[w])), 1e-12);
    c.outer_flags[s] = !set.empty();
  }
  return c;
}

std::vector<int> outer_vertices(const DelaunayComplex& c) {
  std::vector<int> out;
  for (int s = 0; s < c.size(); ++s)
    if (c.outer_flags[s]) out.push_back(s);
  return out;
}

std::vector<char> outer_by_face(const DelaunayComplex& c) {
  std::vector<char> out(c.size(), 0);
  for (int u = 0; u < c.size(); ++u) {
    if (c.rotation[u].empty()) out[u] = 1;
    for (int f : c.left_face[u])
      if (f == c.outer_face) out[u] = 1;
  }
  return out;
}

std::vector<std::vector<int>> peeling_layers(const DelaunayComplex& c) {
  const int n = c.size();
  Dsu faces(std::max<int>(1, static_cast<int>(c.faces.size())));
  std::vector<char> alive(n, 1);
  int remaining = n;
  std::vector<std::vector<int>> rounds;
  while (remaining > 0) {
    int outer = c.outer_face >= 0 ? faces.find(c.outer_face) : -1;
    std::vector<int> removed;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      bool on_outer = c.rotation[v].empty();
      for (int f : c.left_face[v])
        if (faces.find(f) == outer) on_outer = true;
      if (on_outer) removed.push_back(v);
    }
    if (removed.empty()) throw std::logic_error("peeling made no progress");
    for (int v : removed) {
      alive[v] = 0;
      for (int f : c.left_face[v]) faces.unite(f, c.outer_face);
    }
    remaining -= static_cast<int>(removed.size());
    rounds.push_back(std::move(removed));
  }
  return rounds;
}

int outerplanarity(const DelaunayComplex& c) { return static_cast<int>(peeling_layers(c).size()); }

DegreeAudit inner_degree_audit(const DelaunayComplex& c, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("inner_degree_audit needs r > 0");
  DegreeAudit a;
  a.required = static_cast<int>(std::ceil(std::exp(r)));
  for (int v = 0; v < c.size(); ++v) {
    if (c.outer_flags[v]) continue;
    ++a.inner_count;
    int d = c.degree(v);
    a.min_inner_degree = a.min_inner_degree < 0 ? d : std::min(a.min_inner_degree, d);
    if (d < a.required) a.violations.push_back(v);
  }
  return a;
}

LayerDecomposition layer_areas(const DelaunayComplex& c, int s, double r) {
  const int n = c.size();
  if (s < 0 || s >= n) throw std::out_of_range("layer_areas: site out of range");
  if (c.outer_flags[s]) throw std::invalid_argument("layer_areas: center site is an outer vertex");
  LayerDecomposition out;
  out.center = s;
  out.required_ratio = 10.0 / (10.0 - r);
  out.growth_checked = r <= 1.8;

  std::vector<int> hop(n, -1);
  hop[s] = 0;
  std::queue<int> q;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (hop[v] == static_cast<int>(out.layers.size())) out.layers.emplace_back();
    out.layers[hop[v]].push_back(v);
    for (int w : c.rotation[v])
      if (hop[w] < 0) hop[w] = hop[v] + 1, q.push(w);
  }

  out.polygons.emplace_back();
  out.areas.push_back(0.0);
  std::vector<char> in_region(c.faces.size(), 0);
  for (std::size_t l = 1; l < out.layers.size(); ++l) {
    bool inner_below = true;
    for (int v : out.layers[l - 1]) {
      if (c.outer_flags[v]) inner_below = false;
      for (int f : c.left_face[v]) {
        if (f == c.outer_face) inner_below = false;
        in_region[f] = 1;
      }
    }
    if (!inner_below) break;

    std::map<int, std::vector<int>> boundary;  // tail -> heads
    double area = 0.0;
    for (int x : out.layers[l]) {
      for (std::size_t k = 0; k < c.rotation[x].size(); ++k) {
        int y = c.rotation[x][k];
        if (!in_region[c.left_face[x][k]] || in_region[c.face_left_of(y, x)]) continue;
        const HPoint& m = c.edges[c.edge_of[x][k]].anchor;
        area += signed_area(c.sites[s], c.sites[x], m) + signed_area(c.sites[s], m, c.sites[y]);
        boundary[x].push_back(y);
      }
    }
    std::vector<LayerCorner> corners;
    if (!boundary.empty()) {
      int start = boundary.begin()->first, x = start;
      std::size_t total = 0;
      for (const auto& [k, hs] : boundary) total += hs.size();
      for (std::size_t step = 0; step < total; ++step) {
        auto it = boundary.find(x);
        if (it == boundary.end() || it->second.empty()) break;
        int y = it->second.back();
        it->second.pop_back();
        corners.push_back({x, c.sites[x]});
        corners.push_back({-1, c.edge(x, y).anchor});
        x = y;
      }
    }
    out.polygons.push_back(std::move(corners));
    out.areas.push_back(area);
  }

  for (std::size_t l = 2; l < out.areas.size(); ++l) {
    double ratio = out.areas[l] / out.areas[l - 1];
    out.min_ratio = l == 2 ? ratio : std::min(out.min_ratio, ratio);
    if (out.growth_checked && ratio < out.required_ratio * (1.0 - 1e-12)) out.growth_ok = false;
  }
  return out;
}

std::size_t drawn_edge_crossings(const DelaunayComplex& c) {
  struct Seg {
    double x0, y0, x1, y1;
    int edge, a, b;  // site endpoints (-1 for the anchor)
  };
  std::vector<Seg> segs;
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    const DelaunayEdge& e = c.edges[i];
    DiskPoint m = to_klein(e.anchor), p = to_klein(c.sites[e.u]), q = to_klein(c.sites[e.v]);
    segs.push_back({p.x, p.y, m.x, m.y, i, e.u, -1});
    segs.push_back({m.x, m.y, q.x, q.y, i, -1, e.v});
  }
  auto orient = [](double ax, double ay, double bx, double by, double cx, double cy) {
    double v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return (v > 0.0) - (v < 0.0);
  };
  std::vector<std::pair<int, int>> crossing;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const Seg &s = segs[i], &t = segs[j];
      if (s.edge == t.edge) continue;
      if (std::max(s.x0, s.x1) < std::min(t.x0, t.x1) || std::max(t.x0, t.x1) < std::min(s.x0, s.x1) ||
          std::max(s.y0, s.y1) < std::min(t.y0, t.y1) || std::max(t.y0, t.y1) < std::min(s.y0, s.y1))
        continue;
      bool shared = (s.a >= 0 && (s.a == t.a || s.a == t.b)) || (s.b >= 0 && (s.b == t.a || s.b == t.b));
      if (shared) continue;
      int o1 = orient(s.x0, s.y0, s.x1, s.y1, t.x0, t.y0), o2 = orient(s.x0, s.y0, s.x1, s.y1, t.x1, t.y1);
      int o3 = orient(t.x0, t.y0, t.x1, t.y1, s.x0, s.y0), o4 = orient(t.x0, t.y0, t.x1, t.y1, s.x1, s.y1);
      if (o1 * o2 < 0 && o3 * o4 < 0) crossing.push_back(std::minmax(s.edge, t.edge));
    }
  }
  std::sort(crossing.begin(), crossing.end());
  return static_cast<std::size_t>(std::unique(crossing.begin(), crossing.end()) - crossing.begin());
}

}  // namespace hudg
