#include "hudg/noose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hudg/separator.hpp"

namespace hudg {

namespace {

constexpr double kAngEps = 1e-12;
constexpr double kVoronoiRadialCap = 14.0;
constexpr double kAcceptSlack = 1e-9;
constexpr double kRejectSlack = 1e-9;

struct KP {
  double x, y;
};

KP kp(const Corner& c) { return {c.kx, c.ky}; }

double ccw_len(double from, double to) { return normalize_angle(to - from); }

struct ArcSpan {
  double lo, len;
};

ArcSpan arc_span(double a, double b, int dir) {
  return dir > 0 ? ArcSpan{a, ccw_len(a, b)} : ArcSpan{b, ccw_len(b, a)};
}

bool arc_contains_open(const ArcSpan& s, double t) {
  double d = ccw_len(s.lo, t);
  return d > kAngEps && d < s.len - kAngEps;
}

bool arcs_overlap(const ArcSpan& a, const ArcSpan& b) {
  if (a.len <= kAngEps || b.len <= kAngEps) return false;
  return ccw_len(a.lo, b.lo) < a.len - kAngEps || ccw_len(b.lo, a.lo) < b.len - kAngEps;
}

double orient(KP a, KP b, KP c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

bool within_box(KP a, KP b, KP p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(KP a, KP b, KP c, KP d) {
  double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && within_box(a, b, c)) return true;
  if (o2 == 0 && within_box(a, b, d)) return true;
  if (o3 == 0 && within_box(c, d, a)) return true;
  if (o4 == 0 && within_box(c, d, b)) return true;
  return false;
}

int popcount(std::uint64_t m) { return std::popcount(m); }

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

HPoint refine_vertex(const Geodesic& b, double t, const HPoint& u, const HPoint& w) {
  auto h = [&](double x) {
    HPoint p = b.point_at(x);
    return dist(p, u) - dist(p, w);
  };
  double best_t = t, best = std::fabs(h(t));
  for (int it = 0; it < 6 && best > 0.0; ++it) {
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

int edge_count(const CandidateNoose& p) { return static_cast<int>(p.corners.size()); }

const Corner& at(const CandidateNoose& p, int i) {
  int k = edge_count(p);
  return p.corners[((i % k) + k) % k];
}

bool finite_edge(const Corner& a, const Corner& b) {
  return a.kind != Corner::Kind::Ideal || b.kind != Corner::Kind::Ideal;
}

std::uint64_t directed_key(const Corner& a, const Corner& b) {
  return (static_cast<std::uint64_t>(a.code()) << 32) | b.code();
}

// site owning a finite edge (segment or ray)
int edge_site(const Corner& a, const Corner& b) { return a.kind == Corner::Kind::Site ? a.ids[0] : b.ids[0]; }

double dist_to_edge(const HPoint& z, const Corner& a, const Corner& b) {
  const Corner& s = a.kind == Corner::Kind::Site ? a : b;
  const Corner& o = a.kind == Corner::Kind::Site ? b : a;
  if (o.kind == Corner::Kind::Ideal) return dist_point_ray(z, Ray{s.point, IdealPoint(o.angle)});
  return dist_point_segment(z, GeodesicSegment{s.point, o.point});
}

bool closed_arc_contains(const IdealArc& arc, double t) {
  if (arc.contains(t)) return true;
  auto near = [&](double a) {
    double d = std::fabs(normalize_angle(t - a));
    return std::min(d, kTwoPi - d) < 1e-9;
  };
  return near(arc.from.angle) || near(arc.to.angle);
}

bool independent_mask(const std::vector<std::uint64_t>& adjm, std::uint64_t m) {
  for (std::uint64_t rest = m; rest; rest &= rest - 1) {
    int v = std::countr_zero(rest);
    if (adjm[v] & m) return false;
  }
  return true;
}

// Distances and half-plane arcs reused across many consistency checks.
class Tables {
 public:
  explicit Tables(const DiskGraph& g) : g_(g), n_(g.size()), arcs_(static_cast<std::size_t>(n_) * n_) {
    for (int s = 0; s < n_; ++s)
      for (int z = 0; z < n_; ++z)
        if (s != z) arcs_[s * n_ + z] = halfplane_ideal_arc(g.centers[s], g.centers[z]);
  }

  const IdealArc& arc(int s, int z) const { return arcs_[s * n_ + z]; }

  const std::vector<double>& edge_dists(const Corner& a, const Corner& b) {
    std::uint64_t key = a.code() < b.code() ? directed_key(a, b) : directed_key(b, a);
    auto it = edge_.find(key);
    if (it != edge_.end()) return it->second;
    std::vector<double> d(n_);
    for (int z = 0; z < n_; ++z) d[z] = dist_to_edge(g_.centers[z], a, b);
    return edge_.emplace(key, std::move(d)).first->second;
  }

  const std::vector<double>& corner_dists(const Corner& c) {
    auto it = corner_.find(c.code());
    if (it != corner_.end()) return it->second;
    std::vector<double> d(n_);
    for (int z = 0; z < n_; ++z) d[z] = dist(c.point, g_.centers[z]);
    return corner_.emplace(c.code(), std::move(d)).first->second;
  }

 private:
  const DiskGraph& g_;
  int n_;
  std::vector<IdealArc> arcs_;
  std::unordered_map<std::uint64_t, std::vector<double>> edge_;
  std::unordered_map<std::uint32_t, std::vector<double>> corner_;
};

// Necessary conditions for the corners and edges of a path to belong to the
// Voronoi diagram of an independent set containing every site of `mask`.
bool consistent(const std::vector<Corner>& cs, bool closed, std::uint64_t mask, const DiskGraph& g, Tables& t) {
  const double r = g.radius;
  const int k = static_cast<int>(cs.size());
  for (const Corner& c : cs) {
    if (c.kind == Corner::Kind::Voronoi) {
      const std::vector<double>& d = t.corner_dists(c);
      double rad = d[c.ids[0]];
      for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
        int z = std::countr_zero(rest);
        if (z == c.ids[0] || z == c.ids[1] || z == c.ids[2]) continue;
        if (d[z] < rad - kAcceptSlack * (1.0 + rad)) return false;
      }
    } else if (c.kind == Corner::Kind::Ideal) {
      int s = c.owner_site, x = c.ids[0] == s ? c.ids[1] : c.ids[0];
      for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
        int z = std::countr_zero(rest);
        if (z == s || z == x) continue;
        if (!closed_arc_contains(t.arc(s, z), c.angle)) return false;
      }
    }
  }
  int edges = closed ? k : k - 1;
  for (int i = 0; i < edges; ++i) {
    const Corner& a = cs[i];
    const Corner& b = cs[(i + 1) % k];
    if (!finite_edge(a, b)) continue;
    int s = edge_site(a, b);
    const std::vector<double>& d = t.edge_dists(a, b);
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      int z = std::countr_zero(rest);
      if (z != s && d[z] < r - kAcceptSlack) return false;
    }
  }
  return true;
}

}  // namespace

std::uint32_t Corner::code() const {
  auto b = [](int v) { return static_cast<std::uint32_t>(v + 1) & 0x7f; };
  return (static_cast<std::uint32_t>(kind) << 23) | (b(ids[0]) << 16) | (b(ids[1]) << 9) | (b(ids[2]) << 2) |
         static_cast<std::uint32_t>(end + 1);
}

Corner Corner::site(const DiskGraph& g, int v) {
  Corner c;
  c.kind = Kind::Site;
  c.ids = {v, -1, -1};
  c.point = g.centers[v];
  DiskPoint k = to_klein(c.point);
  c.kx = k.x;
  c.ky = k.y;
  return c;
}

bool Corner::voronoi(const DiskGraph& g, int a, int b, int c, Corner& out) {
  std::array<int, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) return false;
  const HPoint& A = g.centers[t[0]];
  const HPoint& B = g.centers[t[1]];
  const HPoint& C = g.centers[t[2]];
  auto cc = circumcenter_uncapped(A, B, C);
  if (!cc || !(cc->radial < kVoronoiRadialCap)) return false;
  Geodesic bis = perpendicular_bisector(A, B);
  HPoint p = refine_vertex(bis, axis_coords(*cc, bis).foot, A, C);
  double da = dist(p, A), db = dist(p, B), dc = dist(p, C);
  double tol = 1e-7 * (1.0 + da);
  if (std::fabs(da - db) > tol || std::fabs(da - dc) > tol || !(p.radial < kVoronoiRadialCap)) return false;
  out = Corner{};
  out.kind = Kind::Voronoi;
  out.ids = t;
  out.point = p;
  DiskPoint k = to_klein(p);
  out.kx = k.x;
  out.ky = k.y;
  return true;
}

Corner Corner::ideal(const DiskGraph& g, int s, int x) {
  int u = std::min(s, x), v = std::max(s, x);
  Geodesic b = perpendicular_bisector(g.centers[u], g.centers[v]);
  Corner c;
  c.kind = Kind::Ideal;
  c.ids = {u, v, -1};
  c.end = s == u ? -1 : 1;
  c.owner_site = s;
  c.angle = (s == u ? b.from : b.to).angle;
  c.kx = std::cos(c.angle);
  c.ky = std::sin(c.angle);
  return c;
}

namespace {

void compute_key(CandidateNoose& p);
bool finalize_geometry(CandidateNoose& p);

}  // namespace

bool finalize_noose(CandidateNoose& p) {
  if (!finalize_geometry(p)) return false;
  compute_key(p);
  return true;
}

namespace {

bool finalize_geometry(CandidateNoose& p) {
  const int k = edge_count(p);
  if (k < 3 || static_cast<int>(p.arc_dir.size()) != k) return false;
  p.visited.clear();
  p.visited_mask = p.support_mask = 0;
  double twice = 0.0;
  for (int i = 0; i < k; ++i) {
    const Corner& a = p.corners[i];
    const Corner& b = at(p, i + 1);
    using K = Corner::Kind;
    if (a.kind == K::Site) {
      p.visited.push_back(a.ids[0]);
      if (p.visited_mask & bit(a.ids[0])) return false;
      p.visited_mask |= bit(a.ids[0]);
    }
    for (int id : a.ids)
      if (id >= 0) p.support_mask |= bit(id);
    bool ok;
    if (a.kind == K::Site && b.kind == K::Site) ok = false;
    else if (a.kind == K::Ideal && b.kind == K::Ideal) ok = p.arc_dir[i] != 0;
    else if (a.kind == K::Site || b.kind == K::Site) {
      const Corner& o = a.kind == K::Site ? b : a;
      const Corner& s = a.kind == K::Site ? a : b;
      ok = p.arc_dir[i] == 0 && (o.kind == K::Voronoi ? (o.ids[0] == s.ids[0] || o.ids[1] == s.ids[0] ||
                                                         o.ids[2] == s.ids[0])
                                                      : o.owner_site == s.ids[0]);
    } else {
      ok = false;
    }
    if (!ok) return false;
    if (p.arc_dir[i] > 0) twice += ccw_len(a.angle, b.angle);
    else if (p.arc_dir[i] < 0) twice -= ccw_len(b.angle, a.angle);
    else twice += a.kx * b.ky - b.kx * a.ky;
  }
  std::sort(p.visited.begin(), p.visited.end());
  p.edge_keys.assign(k, 0);
  for (int i = 0; i < k; ++i)
    if (p.arc_dir[i] == 0) p.edge_keys[i] = directed_key(p.corners[i], at(p, i + 1));
  p.signed_area = 0.5 * twice;
  p.area_key = p.signed_area < 0.0 ? -p.signed_area : kPi - p.signed_area;
  return p.area_key > 1e-14 && p.area_key < kPi - 1e-14;
}

std::string sequence_key(const CandidateNoose& p, int flip_arc) {
  const int k = edge_count(p);
  std::vector<std::uint32_t> seq(2 * k);
  for (int i = 0; i < k; ++i) {
    seq[2 * i] = p.corners[i].code();
    seq[2 * i + 1] = static_cast<std::uint32_t>((i == flip_arc ? -p.arc_dir[i] : p.arc_dir[i]) + 1);
  }
  int best = 0;
  for (int s = 1; s < k; ++s) {
    for (int j = 0; j < 2 * k; ++j) {
      std::uint32_t x = seq[(2 * s + j) % (2 * k)], y = seq[(2 * best + j) % (2 * k)];
      if (x != y) {
        if (x < y) best = s;
        break;
      }
    }
  }
  std::string key(8 * k, '\0');
  for (int j = 0; j < 2 * k; ++j) {
    std::uint32_t x = seq[(2 * best + j) % (2 * k)];
    for (int b = 0; b < 4; ++b) key[4 * j + b] = static_cast<char>((x >> (8 * b)) & 0xff);
  }
  return key;
}

void compute_key(CandidateNoose& p) {
  p.key = sequence_key(p, -1);
  // with a single ideal arc, the long way round the other direction bounds the same region
  int arc = -1, arcs = 0;
  for (int i = 0; i < edge_count(p); ++i)
    if (p.arc_dir[i] != 0) arc = i, ++arcs;
  p.region_key = (arcs == 1 && p.signed_area > 0.0) ? sequence_key(p, arc) : p.key;
}

}  // namespace

CandidateNoose reverse(const CandidateNoose& p) {
  const int k = edge_count(p);
  CandidateNoose q;
  q.corners.assign(p.corners.rbegin(), p.corners.rend());
  q.arc_dir.resize(k);
  for (int i = 0; i < k; ++i) q.arc_dir[i] = -p.arc_dir[((k - 2 - i) % k + k) % k];
  finalize_noose(q);
  return q;
}

bool is_simple(const CandidateNoose& p) {
  const int k = edge_count(p);
  if (k < 3) return false;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (p.corners[i].same(p.corners[j])) return false;
      if (p.corners[i].kind == Corner::Kind::Ideal && p.corners[j].kind == Corner::Kind::Ideal) {
        bool adjacent = j == i + 1 || (i == 0 && j == k - 1);
        double d = std::fabs(normalize_angle(p.corners[i].angle - p.corners[j].angle));
        if (!adjacent && std::min(d, kTwoPi - d) < kAngEps) return false;
      }
    }
  for (int i = 0; i < k; ++i) {
    const Corner& a = p.corners[i];
    const Corner& b = at(p, i + 1);
    bool arc_i = p.arc_dir[i] != 0;
    for (int j = i + 1; j < k; ++j) {
      const Corner& c = p.corners[j];
      const Corner& d = at(p, j + 1);
      bool arc_j = p.arc_dir[j] != 0;
      bool adjacent = j == i + 1 || (i == 0 && j == k - 1);
      if (arc_i && arc_j) {
        if (arcs_overlap(arc_span(a.angle, b.angle, p.arc_dir[i]), arc_span(c.angle, d.angle, p.arc_dir[j])))
          return false;
        continue;
      }
      if (arc_i || arc_j) {
        if (adjacent) continue;
        const ArcSpan s = arc_i ? arc_span(a.angle, b.angle, p.arc_dir[i]) : arc_span(c.angle, d.angle, p.arc_dir[j]);
        const Corner& e0 = arc_i ? c : a;
        const Corner& e1 = arc_i ? d : b;
        for (const Corner* e : {&e0, &e1})
          if (e->kind == Corner::Kind::Ideal && arc_contains_open(s, e->angle)) return false;
        continue;
      }
      if (adjacent) {
        const Corner& shared = (j == i + 1) ? b : a;
        const Corner& oi = (j == i + 1) ? a : b;
        const Corner& oj = (j == i + 1) ? d : c;
        KP s = kp(shared), u = kp(oi), v = kp(oj);
        double cr = orient(s, u, v);
        double dot = (u.x - s.x) * (v.x - s.x) + (u.y - s.y) * (v.y - s.y);
        double lu = std::hypot(u.x - s.x, u.y - s.y), lv = std::hypot(v.x - s.x, v.y - s.y);
        if (std::fabs(cr) <= 1e-14 * lu * lv && dot > 0.0) return false;
        continue;
      }
      if (segments_touch(kp(a), kp(b), kp(c), kp(d))) return false;
    }
  }
  return true;
}

int winding_number(const CandidateNoose& p, const HPoint& x) {
  DiskPoint z = to_klein(x);
  const int k = edge_count(p);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const Corner& a = p.corners[i];
    const Corner& b = at(p, i + 1);
    if (p.arc_dir[i] == 0) {
      double ax = a.kx - z.x, ay = a.ky - z.y, bx = b.kx - z.x, by = b.ky - z.y;
      total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
      continue;
    }
    double aa = std::atan2(a.ky - z.y, a.kx - z.x), ab = std::atan2(b.ky - z.y, b.kx - z.x);
    if (p.arc_dir[i] > 0) {
      if (ccw_len(a.angle, b.angle) > kAngEps) total += ccw_len(aa, ab);
    } else {
      if (ccw_len(b.angle, a.angle) > kAngEps) total -= ccw_len(ab, aa);
    }
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

bool point_in_interior(const CandidateNoose& p, const HPoint& x) {
  int w = winding_number(p, x);
  return p.signed_area < 0.0 ? w == -1 : w == 0;
}

double interior_area_key(const CandidateNoose& p) { return p.area_key; }

double polygon_site_distance(const CandidateNoose& p, const DiskGraph& g, int v) {
  double best = INFINITY;
  const int k = edge_count(p);
  for (int i = 0; i < k; ++i) {
    if (p.arc_dir[i] != 0) continue;
    best = std::min(best, dist_to_edge(g.centers[v], p.corners[i], at(p, i + 1)));
  }
  return best;
}

namespace {

// Glues L and R along the maximal run of edges around L's edge i, which R
// traverses backwards as its edge j. False if P would visit more than
// max_visited sites or the gluing is not along a single path.
bool combine_at(const CandidateNoose& l, const CandidateNoose& r, int i, int j, int max_visited,
                CandidateNoose& out) {
  const int kl = edge_count(l), kr = edge_count(r);
  auto reversed = [](std::uint64_t key) { return (key << 32) | (key >> 32); };
  int back = 0, fwd = 0;
  while (back + fwd + 1 < std::min(kl, kr)) {
    int li = (i - back - 1 + kl) % kl, rj = (j + back + 1) % kr;
    if (l.edge_keys[li] == 0 || r.edge_keys[rj] != reversed(l.edge_keys[li])) break;
    ++back;
  }
  while (back + fwd + 1 < std::min(kl, kr)) {
    int li = (i + fwd + 1) % kl, rj = (j - fwd - 1 + kr) % kr;
    if (l.edge_keys[li] == 0 || r.edge_keys[rj] != reversed(l.edge_keys[li])) break;
    ++fwd;
  }
  const int count = back + fwd + 1;
  if (count >= kl || count >= kr) return false;
  const int start = (i - back + kl) % kl;
  const int jb = (j - fwd + kr) % kr;
  const int ja = (jb + count) % kr;
  int inner_sites = 0;
  for (int t = 1; t < count; ++t)
    if (at(l, start + t).kind == Corner::Kind::Site) ++inner_sites;
  if (popcount(l.visited_mask | r.visited_mask) - inner_sites > max_visited) return false;
  // L's run goes from corner A = l[start] to corner B = l[start + count]
  const Corner& A = l.corners[start];
  const Corner& B = at(l, start + count);
  std::vector<Corner> cs;
  std::vector<int> dirs;
  for (int t = 0; t < kl - count; ++t) {
    int i = (start + count + t) % kl;
    cs.push_back(l.corners[i]);
    dirs.push_back(l.arc_dir[i]);
  }
  for (int t = 0; t < kr - count; ++t) {
    int j = (ja + t) % kr;
    cs.push_back(r.corners[j]);
    dirs.push_back(r.arc_dir[j]);
  }
  // merge consecutive arcs through the gluing points
  for (bool changed = true; changed && cs.size() > 3;) {
    changed = false;
    const int k = static_cast<int>(cs.size());
    for (int i = 0; i < k; ++i) {
      int prev = (i + k - 1) % k;
      if (dirs[prev] != 0 && dirs[i] != 0 && (cs[i].same(A) || cs[i].same(B))) {
        if (dirs[prev] != dirs[i]) return false;
        cs.erase(cs.begin() + i);
        dirs.erase(dirs.begin() + i);
        changed = true;
        break;
      }
    }
  }
  for (std::size_t x = 0; x < cs.size(); ++x)
    for (std::size_t y = x + 1; y < cs.size(); ++y)
      if (cs[x].same(cs[y])) return false;
  out = CandidateNoose{};
  out.corners = std::move(cs);
  out.arc_dir = std::move(dirs);
  return finalize_geometry(out);
}

}  // namespace

bool combine_nooses(const CandidateNoose& l, const CandidateNoose& r, CandidateNoose& out) {
  const int kl = edge_count(l), kr = edge_count(r);
  std::vector<char> shared(kl, 0);
  int count = 0, first = -1, first_j = -1;
  for (int i = 0; i < kl; ++i) {
    if (l.edge_keys[i] == 0) continue;
    std::uint64_t want = (l.edge_keys[i] << 32) | (l.edge_keys[i] >> 32);
    for (int j = 0; j < kr; ++j)
      if (r.edge_keys[j] == want) {
        shared[i] = 1, ++count;
        if (first < 0) first = i, first_j = j;
      }
  }
  if (count == 0) return false;
  int runs = 0;
  for (int i = 0; i < kl; ++i)
    if (shared[i] && !shared[(i + kl - 1) % kl]) ++runs;
  if (runs != 1) return false;
  if (!combine_at(l, r, first, first_j, 1 << 30, out)) return false;
  compute_key(out);
  return true;
}

namespace {

bool areas_add_up(const CandidateNoose& p, const CandidateNoose& l, const CandidateNoose& r) {
  return std::fabs(p.area_key - l.area_key - r.area_key) <= 1e-9 * std::max(1.0, p.area_key);
}

}  // namespace

bool valid_combination(const CandidateNoose& p, const CandidateNoose& l, const CandidateNoose& r) {
  CandidateNoose q;
  if (!combine_nooses(l, r, q) || q.key != p.key) return false;
  return is_simple(p) && is_simple(l) && is_simple(r) && areas_add_up(p, l, r);
}

bool well_spaced(const CandidateNoose& p, const CandidateNoose& l, const CandidateNoose& r, const DiskGraph& g) {
  std::uint64_t u = p.visited_mask | l.visited_mask | r.visited_mask;
  for (std::uint64_t rest = u; rest; rest &= rest - 1) {
    int v = std::countr_zero(rest);
    for (std::uint64_t other = rest & (rest - 1); other; other &= other - 1)
      if (g.adjacent(v, std::countr_zero(other))) return false;
  }
  for (const CandidateNoose* o : {&p, &l, &r})
    for (std::uint64_t rest = u & ~o->visited_mask; rest; rest &= rest - 1)
      if (!(polygon_site_distance(*o, g, std::countr_zero(rest)) >= g.radius + kRejectSlack)) return false;
  return true;
}

namespace {

struct Enumerator {
  const DiskGraph& g;
  int W;
  std::size_t cap;
  int n;
  std::vector<std::uint64_t> adjm;
  std::vector<Corner> ideal;  // ideal[s * n + x]
  NooseEnumeration out;
  std::unordered_map<std::string, int> by_key;
  struct Entry {
    int id;
    int edge;
    std::uint64_t support;
    std::uint64_t visited;
    double signed_area;
  };
  std::unordered_map<std::uint64_t, std::vector<Entry>> by_edge;
  std::deque<int> queue;
  Tables tables;

  Enumerator(const DiskGraph& graph, int width, std::size_t max_candidates)
      : g(graph), W(width), cap(max_candidates), n(graph.size()), adjm(n, 0), ideal(static_cast<std::size_t>(n) * n),
        tables(graph) {
    for (int v = 0; v < n; ++v)
      for (int w : g.adj[v]) adjm[v] |= bit(w);
    for (int s = 0; s < n; ++s)
      for (int x = 0; x < n; ++x)
        if (s != x && !g.adjacent(s, x)) ideal[s * n + x] = Corner::ideal(g, s, x);
  }

  bool indep(std::uint64_t m) const { return independent_mask(adjm, m); }

  void set_enclosed(CandidateNoose& p) {
    p.enclosed = -1;
    if (p.visited.size() != 1) return;
    int v = p.visited[0];
    for (int z = 0; z < n; ++z) {
      if (z == v || g.adjacent(v, z)) continue;
      if (point_in_interior(p, g.centers[z]) && polygon_site_distance(p, g, z) >= g.radius + kRejectSlack) {
        p.enclosed = z;
        return;
      }
    }
  }

  int add(CandidateNoose&& p) {
    if (p.key.empty()) compute_key(p);
    auto it = by_key.find(p.key);
    if (it != by_key.end()) return it->second;
    if (out.candidates.size() >= cap) throw BudgetExceeded("enumerate_candidates: candidate budget exceeded", {});
    set_enclosed(p);
    int id = static_cast<int>(out.candidates.size());
    by_key.emplace(p.key, id);
    out.candidates.push_back(std::move(p));
    queue.push_back(id);
    return id;
  }

  void add_both(CandidateNoose& p) {
    if (!finalize_noose(p) || static_cast<int>(p.visited.size()) > W || !is_simple(p)) return;
    if (!consistent(p.corners, true, p.support_mask, g, tables)) return;
    CandidateNoose q = reverse(p);
    add(std::move(p));
    add(std::move(q));
  }

  struct Connector {
    std::vector<Corner> mid;
    int dir = 0;
    std::uint64_t mask = 0;
  };

  std::vector<Connector> connectors(int a, int b) {
    std::vector<Connector> cs;
    auto keep = [&](Connector c) {
      c.mask |= bit(a) | bit(b);
      for (const Corner& m : c.mid)
        for (int id : m.ids)
          if (id >= 0) c.mask |= bit(id);
      if (!indep(c.mask)) return;
      std::vector<Corner> path{Corner::site(g, a)};
      path.insert(path.end(), c.mid.begin(), c.mid.end());
      path.push_back(Corner::site(g, b));
      if (!consistent(path, false, c.mask, g, tables)) return;
      cs.push_back(std::move(c));
    };
    for (int w = 0; w < n; ++w) {
      if (w == a || w == b) continue;
      Corner v;
      if (Corner::voronoi(g, a, b, w, v)) keep(Connector{{v}, 0, 0});
    }
    for (int x = 0; x < n; ++x) {
      if (x != a && !g.adjacent(a, x)) keep(Connector{{ideal[a * n + x], ideal[b * n + a]}, -1, 0});
      if (x != b && !g.adjacent(b, x)) keep(Connector{{ideal[a * n + b], ideal[b * n + x]}, 1, 0});
    }
    return cs;
  }

  void leaves() {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n && W >= 2; ++v) {
        if (g.adjacent(u, v)) continue;
        auto there = connectors(u, v);
        auto back = connectors(v, u);
        for (const Connector& c1 : there)
          for (const Connector& c2 : back) {
            if (!indep(c1.mask | c2.mask)) continue;
            CandidateNoose p;
            p.corners.push_back(Corner::site(g, u));
            p.arc_dir.push_back(0);
            for (std::size_t i = 0; i < c1.mid.size(); ++i) {
              p.corners.push_back(c1.mid[i]);
              p.arc_dir.push_back(i + 1 < c1.mid.size() ? c1.dir : 0);
            }
            p.corners.push_back(Corner::site(g, v));
            p.arc_dir.push_back(0);
            for (std::size_t i = 0; i < c2.mid.size(); ++i) {
              p.corners.push_back(c2.mid[i]);
              p.arc_dir.push_back(i + 1 < c2.mid.size() ? c2.dir : 0);
            }
            add_both(p);
          }
      }
    for (int v = 0; v < n; ++v)
      for (int u = 0; u < n; ++u) {
        if (u == v || g.adjacent(u, v)) continue;
        for (int x = 0; x < n; ++x) {
          if (x == v || x == u || g.adjacent(x, v) || g.adjacent(x, u)) continue;
          CandidateNoose p;
          p.corners = {Corner::site(g, v), ideal[v * n + x], ideal[v * n + u]};
          p.arc_dir = {0, -1, 0};
          add_both(p);
        }
      }
    out.leaf_count = static_cast<int>(out.candidates.size());
  }

  double site_distance(const CandidateNoose& p, int z) {
    double best = INFINITY;
    for (int i = 0; i < edge_count(p); ++i)
      if (p.arc_dir[i] == 0) best = std::min(best, tables.edge_dists(p.corners[i], at(p, i + 1))[z]);
    return best;
  }

  // well_spaced with cached distances; visited sites are already known to be independent
  bool spaced(const CandidateNoose& p, const CandidateNoose& l, const CandidateNoose& r) {
    std::uint64_t u = l.visited_mask | r.visited_mask;
    for (const CandidateNoose* o : {&p, &l, &r})
      for (std::uint64_t rest = u & ~o->visited_mask; rest; rest &= rest - 1)
        if (!(site_distance(*o, std::countr_zero(rest)) >= g.radius + kRejectSlack)) return false;
    return true;
  }

  void try_combine(int a, int b, int i, int j) {
    const CandidateNoose& l = out.candidates[a];
    const CandidateNoose& r = out.candidates[b];
    CandidateNoose p;
    if (!combine_at(l, r, i, j, W, p)) return;
    if (!areas_add_up(p, l, r) || !is_simple(p)) return;
    if (!consistent(l.corners, true, r.support_mask, g, tables) || !consistent(r.corners, true, l.support_mask, g, tables)) return;
    if (!spaced(p, l, r)) return;
    int id = add(std::move(p));
    out.combinations.push_back({id, a, b});
  }

  void closure() {
    std::vector<int> stamp;
    int round = 0;
    while (!queue.empty()) {
      int id = queue.front();
      queue.pop_front();
      ++round;
      std::vector<std::uint64_t> keys = out.candidates[id].edge_keys;
      const std::uint64_t support = out.candidates[id].support_mask;
      const double area = out.candidates[id].signed_area;
      const std::uint64_t visited = out.candidates[id].visited_mask;
      std::uint64_t blocked = 0;
      for (std::uint64_t rest = support; rest; rest &= rest - 1) blocked |= adjm[std::countr_zero(rest)];
      for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
        if (keys[i] == 0) continue;
        auto it = by_edge.find((keys[i] << 32) | (keys[i] >> 32));
        if (it == by_edge.end()) continue;
        const std::vector<Entry>& partners = it->second;
        for (std::size_t pi = 0; pi < partners.size(); ++pi) {
          const Entry& m = partners[pi];
          if ((m.support & blocked) || popcount(m.visited ^ visited) > W) continue;
          // the glued curve has signed area sL + sR; its interior is the union only in these cases
          if (area > 0.0 && m.signed_area > 0.0) continue;
          if ((area > 0.0 || m.signed_area > 0.0) && !(area + m.signed_area > 0.0)) continue;
          if (stamp.size() < out.candidates.size()) stamp.resize(out.candidates.size() * 2, 0);
          if (stamp[m.id] == round) continue;
          stamp[m.id] = round;
          try_combine(id, m.id, i, m.edge);
        }
      }
      for (int i = 0; i < static_cast<int>(keys.size()); ++i)
        if (keys[i] != 0) by_edge[keys[i]].push_back({id, i, support, visited, area});
    }
  }
};

std::vector<int> collect(const NooseEnumeration& e, const std::vector<int>& choice, int id) {
  std::vector<int> outv;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    const CandidateNoose& p = e.candidates[c];
    if (choice[c] >= 0) {
      stack.push_back(e.combinations[choice[c]].left);
      stack.push_back(e.combinations[choice[c]].right);
      continue;
    }
    outv.insert(outv.end(), p.visited.begin(), p.visited.end());
    if (p.enclosed >= 0) outv.push_back(p.enclosed);
  }
  std::sort(outv.begin(), outv.end());
  outv.erase(std::unique(outv.begin(), outv.end()), outv.end());
  return outv;
}

}  // namespace

NooseEnumeration enumerate_candidates(const DiskGraph& g, int W, std::size_t max_candidates) {
  if (g.size() > 64) throw std::invalid_argument("enumerate_candidates: at most 64 vertices");
  if (W < 1) throw std::invalid_argument("enumerate_candidates: width must be positive");
  Enumerator en(g, W, max_candidates);
  en.leaves();
  en.closure();
  return std::move(en.out);
}

DpResult dp_max_is(const DiskGraph& g, int W, std::size_t max_candidates) {
  DpResult res;
  res.width = W;
  const int n = g.size();
  if (n == 0) return res;
  NooseEnumeration e = enumerate_candidates(g, W, max_candidates);
  res.candidates = e.candidates.size();
  res.combinations = e.combinations.size();
  const int c = static_cast<int>(e.candidates.size());
  std::vector<int> value(c), choice(c, -1);
  for (int i = 0; i < c; ++i)
    value[i] = static_cast<int>(e.candidates[i].visited.size()) + (e.candidates[i].enclosed >= 0 ? 1 : 0);
  std::vector<std::vector<int>> combos_of(c);
  for (int k = 0; k < static_cast<int>(e.combinations.size()); ++k) combos_of[e.combinations[k].parent].push_back(k);
  std::vector<int> order(c);
  for (int i = 0; i < c; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return e.candidates[a].area_key < e.candidates[b].area_key; });
  std::unordered_map<std::string, int> region_of;
  std::vector<int> region(c);
  std::vector<std::vector<int>> members;
  for (int i = 0; i < c; ++i) {
    auto [it, fresh] = region_of.emplace(e.candidates[i].region_key, static_cast<int>(members.size()));
    if (fresh) members.emplace_back();
    region[i] = it->second;
    members[it->second].push_back(i);
  }
  std::vector<char> done(members.size(), 0);
  for (int first : order) {
    if (done[region[first]]) continue;
    done[region[first]] = 1;
    const std::vector<int>& group = members[region[first]];
    int best = group[0];
    for (int id : group) {
      for (int k : combos_of[id]) {
        const NooseCombination& cb = e.combinations[k];
        int v = value[cb.left] + value[cb.right] -
                popcount(e.candidates[cb.left].visited_mask & e.candidates[cb.right].visited_mask);
        if (v > value[id]) value[id] = v, choice[id] = k;
      }
      if (value[id] > value[best]) best = id;
    }
    for (int id : group) value[id] = value[best], choice[id] = choice[best];
  }

  res.size = 1;
  res.witness = {0};
  // a pair has no face to route a noose through
  for (int u = 0; u < n && res.size < 2; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) {
        res.size = 2;
        res.witness = {u, v};
        break;
      }
  for (int i = 0; i < c; ++i) {
    if (value[i] > res.size) {
      res.size = value[i];
      res.witness = collect(e, choice, i);
    }
    auto it = region_of.find(reverse(e.candidates[i]).region_key);
    if (it == region_of.end()) continue;
    int j = members[it->second][0];
    int v = value[i] + value[j] - static_cast<int>(e.candidates[i].visited.size());
    if (v > res.size) {
      res.size = v;
      auto a = collect(e, choice, i), b = collect(e, choice, j);
      a.insert(a.end(), b.begin(), b.end());
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      res.witness = a;
    }
  }
  return res;
}

int default_width(int n, double r, double c) {
  double logn = std::log(std::max(2, n));
  return static_cast<int>(std::ceil(c * (1.0 + logn / std::max(r, 1e-9))));
}

RampResult dp_max_is_ramp(const DiskGraph& g, int first_width, int max_width, std::size_t max_candidates) {
  RampResult out;
  out.first_width = first_width;
  for (int w = first_width; w <= max_width; ++w) {
    DpResult r = dp_max_is(g, w, max_candidates);
    out.sizes.push_back(r.size);
    out.best = std::move(r);
    std::size_t s = out.sizes.size();
    if (s >= 2 && out.sizes[s - 1] == out.sizes[s - 2]) {
      out.stabilized = true;
      break;
    }
  }
  return out;
}

}  // namespace hudg
