#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "hudg/delaunay.hpp"
#include "hudg/graph.hpp"
#include "hudg/instance.hpp"
#include "hudg/noose.hpp"
#include "hudg/separator.hpp"
#include "test_util.hpp"

using namespace hudg;
using testutil::Rng;

namespace {

struct K {
  double x, y;
};

K klein_of(const Corner& c) {
  if (c.kind == Corner::Kind::Ideal) return {std::cos(c.angle), std::sin(c.angle)};
  DiskPoint d = to_klein(c.point);
  return {d.x, d.y};
}

// Klein polyline of the curve, ideal arcs sampled densely
std::vector<K> polyline(const CandidateNoose& p, int arc_samples = 4000) {
  std::vector<K> out;
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Corner& a = p.corners[i];
    const Corner& b = p.corners[(i + 1) % m];
    out.push_back(klein_of(a));
    if (p.arc_dir[i] != 0) {
      double span = p.arc_dir[i] > 0 ? normalize_angle(b.angle - a.angle) : -normalize_angle(a.angle - b.angle);
      for (int k = 1; k < arc_samples; ++k) {
        double t = a.angle + span * k / arc_samples;
        out.push_back({std::cos(t), std::sin(t)});
      }
    }
  }
  return out;
}

double shoelace(const std::vector<K>& poly) {
  double s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const K& a = poly[i];
    const K& b = poly[(i + 1) % poly.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return 0.5 * s;
}

int crossing_winding(const std::vector<K>& poly, K q) {
  int w = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const K& a = poly[i];
    const K& b = poly[(i + 1) % poly.size()];
    double c = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
    if (a.y <= q.y && b.y > q.y && c > 0) ++w;
    if (a.y > q.y && b.y <= q.y && c < 0) --w;
  }
  return w;
}

double klein_gap(const std::vector<K>& poly, K q) {
  double best = INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const K& a = poly[i];
    const K& b = poly[(i + 1) % poly.size()];
    double dx = b.x - a.x, dy = b.y - a.y, len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? std::clamp(((q.x - a.x) * dx + (q.y - a.y) * dy) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::hypot(a.x + t * dx - q.x, a.y + t * dy - q.y));
  }
  return best;
}

// hyperbolic samples along each element
std::vector<HPoint> element_samples(const CandidateNoose& p) {
  std::vector<HPoint> out;
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Corner& a = p.corners[i];
    const Corner& b = p.corners[(i + 1) % m];
    bool fa = a.kind != Corner::Kind::Ideal, fb = b.kind != Corner::Kind::Ideal;
    if (fa && fb) {
      double d = dist(a.point, b.point), dir = direction(a.point, b.point);
      for (int k = 0; k <= 2000; ++k) out.push_back(move(a.point, dir, d * k / 2000.0));
    } else if (fa != fb) {
      const Corner& f = fa ? a : b;
      const Corner& id = fa ? b : a;
      double dir = direction_to_ideal(f.point, id.angle);
      for (int k = 0; k <= 4000; ++k) out.push_back(move(f.point, dir, 0.01 * k));
    }
  }
  return out;
}

bool seg_cross(K a, K b, K c, K d) {
  auto orient = [](K p, K q, K r) { return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x); };
  double d1 = orient(c, d, a), d2 = orient(c, d, b), d3 = orient(a, b, c), d4 = orient(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// proper crossings between straight elements that share no corner
bool straight_elements_cross(const CandidateNoose& p) {
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (p.arc_dir[i] != 0) continue;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (p.arc_dir[j] != 0) continue;
      if (j == i + 1 || (i == 0 && j == m - 1)) continue;
      if (seg_cross(klein_of(p.corners[i]), klein_of(p.corners[(i + 1) % m]), klein_of(p.corners[j]),
                    klein_of(p.corners[(j + 1) % m])))
        return true;
    }
  }
  return false;
}

CandidateNoose make(std::vector<Corner> cs, std::vector<int> dirs) {
  CandidateNoose p;
  p.corners = std::move(cs);
  p.arc_dir = std::move(dirs);
  REQUIRE(finalize_noose(p));
  return p;
}

Corner vor(const DiskGraph& g, int a, int b, int c) {
  Corner out;
  REQUIRE(Corner::voronoi(g, a, b, c, out));
  return out;
}

std::vector<HPoint> wheel(int m, double rho) {
  std::vector<HPoint> pts{HPoint(0.0, 0.0)};
  for (int i = 0; i < m; ++i) pts.push_back(HPoint(rho, kTwoPi * i / m + 0.01 * i * i / (m * m)));
  return pts;
}

// a clockwise leaf noose around the Delaunay edge {u, v} of the complex
CandidateNoose delaunay_leaf(const DelaunayComplex& c, const DiskGraph& g, int u, int v) {
  std::vector<Corner> cs;
  std::vector<int> dirs;
  auto side = [&](int a, int b) {
    cs.push_back(Corner::site(g, a));
    int f = c.face_left_of(a, b);
    if (f == c.outer_face) {
      int k = c.slot(a, b);
      int pred = c.rotation[a][(k + 1) % c.degree(a)];
      cs.push_back(Corner::ideal(g, a, pred));
      cs.push_back(Corner::ideal(g, b, a));
      dirs.insert(dirs.end(), {0, -1, 0});
    } else {
      int w = -1;
      for (int x : c.faces[f])
        if (x != a && x != b) w = x;
      cs.push_back(vor(g, a, b, w));
      dirs.insert(dirs.end(), {0, 0});
    }
  };
  side(u, v);
  side(v, u);
  return make(cs, dirs);
}

std::set<std::string> keys_of(const NooseEnumeration& e) {
  std::set<std::string> ks;
  for (const auto& c : e.candidates) ks.insert(c.key);
  return ks;
}

}  // namespace

TEST_CASE("corner codes distinguish kinds, ids and ends") {
  DiskGraph g = build_graph(wheel(4, 2.2), 0.3);
  std::set<std::uint32_t> codes;
  for (int v = 0; v < 5; ++v) codes.insert(Corner::site(g, v).code());
  for (int s = 0; s < 5; ++s)
    for (int x = 0; x < 5; ++x)
      if (s != x) codes.insert(Corner::ideal(g, s, x).code());
  CHECK(codes.size() == 5 + 20);
  Corner a = Corner::ideal(g, 1, 3), b = Corner::ideal(g, 3, 1);
  CHECK(a.owner_site == 1);
  CHECK(b.owner_site == 3);
  CHECK(a.ids == b.ids);
  CHECK(a.end == -b.end);
}

TEST_CASE("ideal corners bound the half-plane of their owner") {
  Rng rng(31);
  for (int it = 0; it < 200; ++it) {
    std::vector<HPoint> pts{rng.point(3.0), rng.point(3.0)};
    DiskGraph g = build_graph(pts, 0.1);
    Corner c = Corner::ideal(g, 0, 1);
    Geodesic b = perpendicular_bisector(pts[0], pts[1]);
    double d = normalize_angle(c.angle - b.from.angle);
    CHECK(std::min(d, kTwoPi - d) < 1e-9);
    // just clockwise of the corner lies the ideal boundary of the half-plane of site 0
    HPoint probe = from_poincare(disk_point(0.999999 * std::cos(c.angle - 1e-3), 0.999999 * std::sin(c.angle - 1e-3)));
    CHECK(dist(probe, pts[0]) < dist(probe, pts[1]));
  }
}

TEST_CASE("a ring of Voronoi corners around a center") {
  DiskGraph g = build_graph(wheel(6, 2.2), 1.0);
  CandidateNoose p = make({Corner::site(g, 1), vor(g, 0, 1, 2), Corner::site(g, 2), vor(g, 0, 2, 3), Corner::site(g, 3),
                           vor(g, 0, 3, 4), Corner::site(g, 4), vor(g, 0, 4, 5), Corner::site(g, 5), vor(g, 0, 5, 6),
                           Corner::site(g, 6), vor(g, 0, 6, 1)},
                          std::vector<int>(12, 0));
  CHECK(is_simple(p));
  CHECK(p.visited == std::vector<int>{1, 2, 3, 4, 5, 6});
  CandidateNoose q = p.signed_area > 0 ? reverse(p) : p;  // clockwise: the center is inside
  CHECK(point_in_interior(q, g.centers[0]));
  CHECK(!point_in_interior(q, HPoint(5.0, 0.3)));
  CHECK(winding_number(q, g.centers[0]) == -1);
  CHECK(winding_number(q, HPoint(5.0, 0.3)) == 0);
  CHECK(std::fabs(q.area_key - std::fabs(shoelace(polyline(q)))) < 1e-9);
  CHECK(std::fabs(reverse(q).area_key - (kPi - q.area_key)) < 1e-9);

  // reordering the sites makes straight elements cross
  DiskGraph h = build_graph({HPoint(0.6, 0.0), HPoint(1.0, 1.6), HPoint(0.7, 3.1), HPoint(1.2, 4.7)}, 0.1);
  CandidateNoose bow = make({Corner::site(h, 0), vor(h, 0, 1, 2), Corner::site(h, 2), vor(h, 1, 2, 3), Corner::site(h, 1),
                             vor(h, 0, 1, 3), Corner::site(h, 3), vor(h, 0, 2, 3)},
                            std::vector<int>(8, 0));
  CHECK(straight_elements_cross(bow));
  CHECK(!is_simple(bow));
}

TEST_CASE("reversal swaps interior and exterior") {
  Rng rng(7);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = gen_random(9, 4.0, 0.6, seed);
    DiskGraph g = build_graph(inst.points, inst.r);
    NooseEnumeration e = enumerate_candidates(g, 2);
    for (std::size_t i = 0; i < e.candidates.size(); i += 5) {
      const CandidateNoose& p = e.candidates[i];
      CandidateNoose q = reverse(p);
      CHECK(reverse(q).key == p.key);
      CHECK(reverse(q).region_key == p.region_key);
      CHECK(q.visited == p.visited);
      CHECK(std::fabs(p.area_key + q.area_key - kPi) < 1e-9);
      CHECK(std::fabs(p.signed_area + q.signed_area) < 1e-12);
      auto poly = polyline(p);
      CHECK(std::fabs(p.area_key - (p.signed_area < 0 ? -shoelace(poly) : kPi - shoelace(poly))) < 1e-5);
      for (int k = 0; k < 5; ++k) {
        HPoint x = rng.point(4.5);
        DiskPoint kx = to_klein(x);
        if (klein_gap(poly, {kx.x, kx.y}) < 1e-4) continue;
        bool inside_oracle = crossing_winding(poly, {kx.x, kx.y}) != 0;
        bool inside = point_in_interior(p, x);
        // interior lies right of the traversal: a clockwise curve holds what it winds around
        CHECK(inside == (p.signed_area < 0 ? inside_oracle : !inside_oracle));
        CHECK(point_in_interior(q, x) != inside);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("distance from a site to the curve agrees with sampling") {
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    Instance inst = gen_random(8, 3.5, 0.5, seed);
    DiskGraph g = build_graph(inst.points, inst.r);
    NooseEnumeration e = enumerate_candidates(g, 2);
    for (std::size_t i = 0; i < e.candidates.size(); i += 23) {
      const CandidateNoose& p = e.candidates[i];
      auto samples = element_samples(p);
      for (int v = 0; v < g.size(); ++v) {
        double best = INFINITY;
        for (const HPoint& y : samples) best = std::min(best, dist(g.centers[v], y));
        double d = polygon_site_distance(p, g, v);
        CHECK(d <= best + 1e-9);
        CHECK(d >= best - 0.02);
      }
    }
  }
}

TEST_CASE("candidates are simple and visit independent sites only") {
  for (std::uint64_t seed = 40; seed < 46; ++seed) {
    Instance inst = gen_random(12, 1.2 * 2.0, 1.0, seed);
    DiskGraph g = build_graph(inst.points, inst.r);
    NooseEnumeration e = enumerate_candidates(g, 3);
    CHECK(e.leaf_count > 0);
    for (const auto& p : e.candidates) {
      CHECK(is_independent(g, p.visited));
      CHECK(static_cast<int>(p.visited.size()) <= 3);
      CHECK(is_simple(p));
      CHECK(p.area_key > 0.0);
      CHECK(p.area_key < kPi);
      // visited sites lie on the curve, every other site is clear of it
      for (int v = 0; v < g.size(); ++v) {
        bool on = std::binary_search(p.visited.begin(), p.visited.end(), v);
        if (on) CHECK(polygon_site_distance(p, g, v) < 1e-9);
      }
    }
    for (const auto& c : e.combinations) {
      const auto& P = e.candidates[c.parent];
      const auto& L = e.candidates[c.left];
      const auto& R = e.candidates[c.right];
      CHECK(valid_combination(P, L, R));
      CHECK(well_spaced(P, L, R, g));
      CHECK(std::fabs(P.area_key - L.area_key - R.area_key) < 1e-9);
    }
    if (e.combinations.size() >= 2) {
      const auto& c0 = e.combinations[0];
      for (const auto& c1 : e.combinations)
        if (e.candidates[c1.parent].key != e.candidates[c0.parent].key &&
            e.candidates[c1.left].key != e.candidates[c0.left].key) {
          CHECK(!valid_combination(e.candidates[c0.parent], e.candidates[c1.left], e.candidates[c0.right]));
          break;
        }
    }
  }
}

TEST_CASE("both orientations of every candidate are present") {
  Instance inst = gen_random(10, 3.0, 0.8, 3);
  DiskGraph g = build_graph(inst.points, inst.r);
  NooseEnumeration e = enumerate_candidates(g, 2);
  auto ks = keys_of(e);
  std::size_t leaves_paired = 0;
  for (int i = 0; i < e.leaf_count; ++i)
    if (ks.count(reverse(e.candidates[i]).key)) ++leaves_paired;
  CHECK(leaves_paired == static_cast<std::size_t>(e.leaf_count));
}

TEST_CASE("planted decomposition of four sites") {
  std::vector<HPoint> pts{HPoint(1.8, 0.1), HPoint(2.1, 1.7), HPoint(1.9, 3.2), HPoint(2.3, 4.6)};
  DelaunayComplex c = build_delaunay(pts);
  DiskGraph g = build_graph(pts, 0.3);
  REQUIRE(g.edge_count() == 0);
  REQUIRE(c.edges.size() == 5);
  int ia = -1, ic = -1;
  for (const auto& ed : c.edges)
    if (c.face_left_of(ed.u, ed.v) != c.outer_face && c.face_left_of(ed.v, ed.u) != c.outer_face) {
      ia = ed.u;
      ic = ed.v;
    }
  REQUIRE(ia >= 0);
  auto third = [&](int f) {
    for (int x : c.faces[f])
      if (x != ia && x != ic) return x;
    return -1;
  };
  int ib = third(c.face_left_of(ia, ic)), id = third(c.face_left_of(ic, ia));

  NooseEnumeration e = enumerate_candidates(g, 2);
  auto ks = keys_of(e);
  std::map<std::pair<int, int>, CandidateNoose> leaf;
  for (auto [u, v] : std::vector<std::pair<int, int>>{{ia, ib}, {ib, ic}, {ia, ic}, {ic, id}, {id, ia}}) {
    CandidateNoose l = delaunay_leaf(c, g, u, v);
    CHECK(l.signed_area < 0);
    CHECK(ks.count(l.key) == 1);
    CHECK(ks.count(reverse(l).key) == 1);
    leaf[{u, v}] = l;
  }
  CandidateNoose n1, n2, n3;
  REQUIRE(combine_nooses(leaf[{ia, ib}], leaf[{ib, ic}], n1));
  CHECK(n1.visited == std::vector<int>{std::min(ia, ic), std::max(ia, ic)});
  REQUIRE(combine_nooses(n1, leaf[{ia, ic}], n2));
  REQUIRE(combine_nooses(n2, leaf[{ic, id}], n3));
  CHECK(ks.count(n1.key) == 1);
  CHECK(ks.count(n2.key) == 1);
  CHECK(ks.count(n3.key) == 1);
  CHECK(n3.region_key == reverse(leaf[{id, ia}]).region_key);
  CHECK(dp_max_is(g, 2).size == 4);
}

TEST_CASE("degenerate inputs") {
  DiskGraph empty = build_graph({}, 1.0);
  CHECK(dp_max_is(empty, 2).size == 0);
  DiskGraph one = build_graph({HPoint(0.3, 1.0)}, 1.0);
  auto r1 = dp_max_is(one, 2);
  CHECK(r1.size == 1);
  CHECK(r1.witness == IndependentSet{0});
  std::vector<HPoint> close;
  for (int i = 0; i < 7; ++i) close.push_back(HPoint(0.2, 0.9 * i));
  DiskGraph clique = build_graph(close, 1.0);
  CHECK(dp_max_is(clique, 3).size == 1);
  DiskGraph two = build_graph({HPoint(2.0, 0.0), HPoint(2.0, kPi)}, 0.5);
  CHECK(dp_max_is(two, 2).size == 2);
}

TEST_CASE("wheel needs a third site per noose") {
  for (int m : {5, 6}) {
    DiskGraph g = build_graph(wheel(m, 2.2), 1.0);
    REQUIRE(g.edge_count() == 0);
    auto w2 = dp_max_is(g, 2);
    auto w3 = dp_max_is(g, 3);
    CHECK(w2.size == m);
    CHECK(w3.size == m + 1);
    CHECK(is_independent(g, w3.witness));
    CHECK(static_cast<int>(w3.witness.size()) == w3.size);
    auto ramp = dp_max_is_ramp(g, 2, 6);
    CHECK(ramp.stabilized);
    CHECK(ramp.best.size == m + 1);
    CHECK(ramp.sizes == std::vector<int>{m, m + 1, m + 1});
  }
}

TEST_CASE("never exceeds the optimum and matches it once widths agree") {
  for (std::uint64_t s = 0; s < 16; ++s) {
    int n = 6 + static_cast<int>(s % 9);
    double r = (s % 3 == 0) ? 1.0 : (s % 3 == 1 ? 2.0 : std::log(n));
    Instance inst = gen_random(n, 1.2 * (r + 1.0), r, 900 + s);
    DiskGraph g = build_graph(inst.points, inst.r);
    int opt = static_cast<int>(brute_force_mis(g).size());
    auto ramp = dp_max_is_ramp(g, 2, 8);
    for (std::size_t i = 0; i < ramp.sizes.size(); ++i) CHECK(ramp.sizes[i] <= opt);
    CHECK(is_independent(g, ramp.best.witness));
    CHECK(static_cast<int>(ramp.best.witness.size()) == ramp.best.size);
    CHECK(ramp.stabilized);
    CHECK(ramp.best.size == opt);
  }
}

TEST_CASE("width bound") {
  CHECK(default_width(100, 1.0, 4.0) == static_cast<int>(std::ceil(4.0 * (1.0 + std::log(100.0)))));
  CHECK(default_width(100, 4.0, 4.0) == static_cast<int>(std::ceil(4.0 * (1.0 + std::log(100.0) / 4.0))));
}

TEST_CASE("candidate budget") {
  Instance inst = gen_random(14, 3.0, 0.5, 77);
  DiskGraph g = build_graph(inst.points, inst.r);
  CHECK_THROWS_AS(enumerate_candidates(g, 3, 10), BudgetExceeded);
  CHECK_THROWS_AS(dp_max_is(g, 3, 10), BudgetExceeded);
}
