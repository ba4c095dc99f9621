#include "hudg/hgeom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hudg {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double sq(double x) { return x * x; }

// log(sinh x) for x > 0
double log_sinh(double x) {
  if (x > 20.0) return x + std::log1p(-std::exp(-2.0 * x)) - kLn2;
  return std::log(std::sinh(x));
}

double log_add_exp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// sinh(x) * exp(-s) without overflow, for s >= x >= 0
double sinh_scaled(double x, double s) {
  return 0.5 * (std::exp(x - s) - std::exp(-x - s));
}

double cosh_scaled(double x, double s) {
  return 0.5 * (std::exp(x - s) + std::exp(-x - s));
}

}  // namespace

double normalize_angle(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("non-finite angle");
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

HPoint::HPoint(double r, double a) : radial(r), angle(normalize_angle(a)) {
  if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("radial must be finite and >= 0");
  if (radial == 0.0) angle = 0.0;
}

IdealPoint::IdealPoint(double a) : angle(normalize_angle(a)) {}

DiskPoint disk_point(double x, double y) {
  return DiskPoint{x, y, 1.0 - std::hypot(x, y)};
}

double acosh1p(double x) {
  if (x <= 0.0) return 0.0;
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double law_of_cosines(double a, double b, double gamma) {
  double s = std::sin(0.5 * gamma);
  if (a + b <= 30.0) {
    double x = 2.0 * sq(std::sinh(0.5 * (a - b))) + 2.0 * sq(s) * std::sinh(a) * std::sinh(b);
    return acosh1p(x);
  }
  double t1 = -INFINITY;
  if (a != b) t1 = kLn2 + 2.0 * log_sinh(0.5 * std::fabs(a - b));
  double t2 = -INFINITY;
  if (s != 0.0 && a > 0.0 && b > 0.0)
    t2 = kLn2 + 2.0 * std::log(std::fabs(s)) + log_sinh(a) + log_sinh(b);
  double lx = log_add_exp(t1, t2);
  if (lx == -INFINITY) return 0.0;
  if (lx < 30.0) return acosh1p(std::exp(lx));
  return kLn2 + lx + std::log1p(std::exp(-lx));
}

double dist(const HPoint& p, const HPoint& q) {
  if (q.radial < p.radial || (q.radial == p.radial && q.angle < p.angle)) return dist(q, p);
  if (p.radial == 0.0) return q.radial;
  return law_of_cosines(p.radial, q.radial, q.angle - p.angle);
}

double direction(const HPoint& p, const HPoint& q) {
  double rp = p.radial, rq = q.radial;
  double delta = q.angle - p.angle;
  double y = sinh_scaled(rq, rq) * std::exp(-rp) * std::sin(delta);
  double x = 0.5 * std::exp(-2.0 * rp) * (-std::expm1(-2.0 * (rq - rp)));
  if (rq < rp) x = -0.5 * std::exp(-2.0 * rq) * (-std::expm1(-2.0 * (rp - rq)));
  x -= 2.0 * sq(std::sin(0.5 * delta)) * sinh_scaled(rq, rq) * cosh_scaled(rp, rp);
  return normalize_angle(p.angle + std::atan2(y, x));
}

double direction_to_ideal(const HPoint& p, double theta) {
  double r = p.radial;
  double delta = theta - p.angle;
  double y = std::sin(delta) * std::exp(-r);
  double x = std::exp(-2.0 * r) - 2.0 * sq(std::sin(0.5 * delta)) * cosh_scaled(r, r);
  return normalize_angle(p.angle + std::atan2(y, x));
}

HPoint move(const HPoint& p, double dir, double t) {
  if (t == 0.0) return p;
  if (t < 0.0) return move(p, dir + kPi, -t);
  double r = p.radial;
  double psi = dir - p.angle;
  double nr = law_of_cosines(r, t, kPi - psi);
  if (nr == 0.0) return HPoint{};
  double y = sinh_scaled(t, t) * std::exp(-r) * std::sin(psi);
  double x;
  if (r >= t)
    x = 0.5 * std::exp(-2.0 * t) * (-std::expm1(-2.0 * (r - t)));
  else
    x = -0.5 * std::exp(-2.0 * r) * (-std::expm1(-2.0 * (t - r)));
  x += 2.0 * sq(std::cos(0.5 * psi)) * sinh_scaled(t, t) * cosh_scaled(r, r);
  return HPoint(nr, p.angle + std::atan2(y, x));
}

IdealPoint ideal_end(const HPoint& p, double dir) {
  double r = p.radial;
  double psi = dir - p.angle;
  double y = std::sin(psi) * std::exp(-r);
  double x = 2.0 * sq(std::cos(0.5 * psi)) * cosh_scaled(r, r) - std::exp(-2.0 * r);
  return IdealPoint(p.angle + std::atan2(y, x));
}

HPoint from_halfplane(double x, double y) {
  if (!(y > 0.0)) throw std::invalid_argument("half-plane point needs y > 0");
  double radial = acosh1p((x * x + sq(y - 1.0)) / (2.0 * y));
  if (radial == 0.0) return HPoint{};
  return HPoint(radial, std::atan2(-2.0 * x, x * x + y * y - 1.0));
}

HalfPlanePoint to_halfplane(const HPoint& p) {
  DiskPoint w = to_poincare(p);
  double rho = 1.0 - w.gap;
  // 1 - |w|^2 = gap * (1 + rho)
  double one_minus = w.gap * (1.0 + rho);
  double den = sq(1.0 - w.x) + sq(w.y);
  return HalfPlanePoint{-2.0 * w.y / den, one_minus / den};
}

DiskPoint to_poincare(const HPoint& p) {
  double rho = std::tanh(0.5 * p.radial);
  double gap = 2.0 / (std::exp(p.radial) + 1.0);
  return DiskPoint{rho * std::cos(p.angle), rho * std::sin(p.angle), gap};
}

DiskPoint to_klein(const HPoint& p) {
  double k = std::tanh(p.radial);
  double gap = 2.0 / (std::exp(2.0 * p.radial) + 1.0);
  return DiskPoint{k * std::cos(p.angle), k * std::sin(p.angle), gap};
}

HPoint from_poincare(const DiskPoint& z) {
  if (!(z.gap > 0.0) || !(z.gap <= 1.0)) throw std::invalid_argument("point not inside the unit disk");
  double d = std::log((2.0 - z.gap) / z.gap);
  if (d <= 0.0) return HPoint{};
  return HPoint(d, std::atan2(z.y, z.x));
}

HPoint from_klein(const DiskPoint& z) {
  if (!(z.gap > 0.0) || !(z.gap <= 1.0)) throw std::invalid_argument("point not inside the unit disk");
  double d = 0.5 * std::log((2.0 - z.gap) / z.gap);
  if (d <= 0.0) return HPoint{};
  return HPoint(d, std::atan2(z.y, z.x));
}

double angle_of_parallelism(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("angle_of_parallelism needs x > 0");
  // asin(1/cosh x) == atan(1/sinh x), which stays accurate near pi/2
  return std::atan2(1.0, std::sinh(x));
}

double disk_area(double r) {
  if (r < 0.0) throw std::invalid_argument("negative radius");
  return 4.0 * kPi * sq(std::sinh(0.5 * r));
}

double right_triangle_area(double a, double b) {
  return 2.0 * std::atan(std::tanh(0.5 * a) * std::tanh(0.5 * b));
}

double saccheri_summit(double base, double leg) {
  return 2.0 * std::asinh(std::cosh(leg) * std::sinh(0.5 * base));
}

double triangle_area(const HPoint& a, const HPoint& b, const HPoint& c) {
  auto corner = [](const HPoint& p, const HPoint& q, const HPoint& r) {
    double d = std::fabs(normalize_angle(direction(p, q) - direction(p, r)));
    return std::min(d, kTwoPi - d);
  };
  double s = corner(a, b, c) + corner(b, c, a) + corner(c, a, b);
  return std::max(0.0, kPi - s);
}

HPoint Geodesic::point_at(double t) const { return move(base, heading, t); }

double IdealArc::span() const { return normalize_angle(from.angle - to.angle); }

bool IdealArc::contains(double theta) const {
  return normalize_angle(from.angle - theta) < span();
}

Geodesic geodesic_through(const HPoint& p, const HPoint& q) {
  if (dist(p, q) == 0.0) throw std::invalid_argument("geodesic needs two distinct points");
  double h = direction(p, q);
  return Geodesic{ideal_end(p, h + kPi), ideal_end(p, h), p, h};
}

Geodesic geodesic_between(IdealPoint from, IdealPoint to) {
  double gap = normalize_angle(to.angle - from.angle);
  if (gap == 0.0) throw std::invalid_argument("geodesic needs distinct ideal endpoints");
  double mid, w;
  if (gap <= kPi) {
    mid = from.angle + 0.5 * gap;
    w = 0.5 * gap;
  } else {
    mid = to.angle + 0.5 * (kTwoPi - gap);
    w = 0.5 * (kTwoPi - gap);
  }
  double d = std::max(0.0, -std::log(std::tan(0.5 * w)));
  HPoint base = d == 0.0 ? HPoint{} : HPoint(d, mid);
  return Geodesic{from, to, base, direction_to_ideal(base, to.angle)};
}

Geodesic perpendicular_bisector(const HPoint& p, const HPoint& q) {
  double d = dist(p, q);
  if (d == 0.0) throw std::invalid_argument("bisector of coincident points");
  HPoint m = move(p, direction(p, q), 0.5 * d);
  double h = direction(m, q) + 0.5 * kPi;
  return Geodesic{ideal_end(m, h + kPi), ideal_end(m, h), m, normalize_angle(h)};
}

namespace {

double asinh_of_exp(double l) {
  if (l > 20.0) return l + kLn2 + 0.25 * std::exp(-2.0 * l);
  return std::asinh(std::exp(l));
}

double log_cosh(double x) {
  x = std::fabs(x);
  return x + std::log1p(std::exp(-2.0 * x)) - kLn2;
}

}  // namespace

AxisCoords axis_coords(const HPoint& p, const Geodesic& g) {
  double d = dist(g.base, p);
  if (d == 0.0) return {0.0, 0.0};
  double alpha = direction(g.base, p) - g.heading;
  double sa = std::sin(alpha), ca = std::cos(alpha);
  if (d < 300.0) {
    double sd = std::asinh(std::sinh(d) * sa);
    double foot = std::asinh(std::sinh(d) * ca / std::cosh(sd));
    return {sd, foot};
  }
  double ls = log_sinh(d);
  double sd = sa == 0.0 ? 0.0 : std::copysign(asinh_of_exp(ls + std::log(std::fabs(sa))), sa);
  double foot = ca == 0.0 ? 0.0
                          : std::copysign(asinh_of_exp(ls + std::log(std::fabs(ca)) - log_cosh(sd)), ca);
  return {sd, foot};
}

double dist_point_geodesic(const HPoint& p, const Geodesic& g) {
  return std::fabs(axis_coords(p, g).signed_dist);
}

double dist_point_segment(const HPoint& p, const GeodesicSegment& s) {
  double len = dist(s.a, s.b);
  if (len == 0.0) return dist(p, s.a);
  Geodesic g = geodesic_through(s.a, s.b);
  AxisCoords c = axis_coords(p, g);
  if (c.foot >= 0.0 && c.foot <= len) return std::fabs(c.signed_dist);
  return std::min(dist(p, s.a), dist(p, s.b));
}

double dist_point_ray(const HPoint& p, const Ray& r) {
  double h = direction_to_ideal(r.origin, r.end.angle);
  Geodesic g{ideal_end(r.origin, h + kPi), r.end, r.origin, h};
  AxisCoords c = axis_coords(p, g);
  if (c.foot >= 0.0) return std::fabs(c.signed_dist);
  return dist(p, r.origin);
}

IdealArc halfplane_ideal_arc(const HPoint& s, const HPoint& w) {
  Geodesic b = perpendicular_bisector(s, w);
  return IdealArc{b.from, b.to};
}

namespace {

struct Vec3 {
  double t, x, y;
};

Vec3 hyperboloid(double radial, double angle) {
  double sh = std::sinh(radial);
  return {std::cosh(radial), sh * std::cos(angle), sh * std::sin(angle)};
}

}  // namespace

namespace {

// circumcenter of a, b, c as (direction at a, distance from a)
std::optional<std::pair<double, double>> circum_offset(const HPoint& a, const HPoint& b,
                                                      const HPoint& c) {
  double dab = dist(a, b), dac = dist(a, c);
  if (dab == 0.0 || dac == 0.0 || dist(b, c) == 0.0)
    throw std::invalid_argument("circumcenter needs pairwise distinct points");
  Vec3 B = hyperboloid(dab, direction(a, b));
  Vec3 C = hyperboloid(dac, direction(a, c));
  // X must satisfy <X, A - B> = <X, A - C> = 0 for the form -t t' + x x' + y y', A = (1, 0, 0)
  Vec3 u{B.t - 1.0, -B.x, -B.y};
  Vec3 v{C.t - 1.0, -C.x, -C.y};
  Vec3 X{u.x * v.y - u.y * v.x, u.y * v.t - u.t * v.y, u.t * v.x - u.x * v.t};
  if (X.t < 0.0) X = {-X.t, -X.x, -X.y};
  double h = std::hypot(X.x, X.y);
  double q = (X.t - h) * (X.t + h);
  if (!(q > 0.0) || !std::isfinite(q)) return std::nullopt;
  double radial = std::asinh(h / std::sqrt(q));
  if (!std::isfinite(radial)) return std::nullopt;
  return std::make_pair(std::atan2(X.y, X.x), radial);
}

}  // namespace

std::optional<HPoint> circumcenter_uncapped(const HPoint& a, const HPoint& b,
                                            const HPoint& c) {
  auto o = circum_offset(a, b, c);
  if (!o) return std::nullopt;
  return move(a, o->first, o->second);
}

std::optional<HPoint> circumcenter(const HPoint& a, const HPoint& b, const HPoint& c) {
  auto o = circum_offset(a, b, c);
  if (!o || o->second > 1e4) return std::nullopt;
  return move(a, o->first, o->second);
}

namespace {

struct P2 {
  double x, y;
};

P2 operator-(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }
P2 operator+(P2 a, P2 b) { return {a.x + b.x, a.y + b.y}; }
P2 operator*(double s, P2 a) { return {s * a.x, s * a.y}; }
double cross(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }

constexpr double kSame = 1e-15;

int depth_at(const std::vector<P2>& pts, P2 x) {
  int coincident = 0;
  std::vector<double> ang;
  ang.reserve(pts.size());
  for (P2 p : pts) {
    P2 d = p - x;
    if (std::hypot(d.x, d.y) <= kSame) {
      ++coincident;
      continue;
    }
    ang.push_back(normalize_angle(std::atan2(d.y, d.x)));
  }
  if (ang.empty()) return coincident;
  std::sort(ang.begin(), ang.end());
  std::vector<double> crit;
  for (double a : ang) {
    crit.push_back(a);
    crit.push_back(normalize_angle(a + kPi));
  }
  std::sort(crit.begin(), crit.end());
  const int m = static_cast<int>(ang.size());
  auto count_open = [&](double lo) {
    // angles strictly inside (lo, lo + pi), lo generic
    double hi = lo + kPi;
    int c = 0;
    auto cnt = [&](double a, double b) {
      return static_cast<int>(std::lower_bound(ang.begin(), ang.end(), b) -
                              std::upper_bound(ang.begin(), ang.end(), a));
    };
    if (hi < kTwoPi) {
      c = cnt(lo, hi);
    } else {
      c = cnt(lo, kTwoPi) + cnt(-1.0, hi - kTwoPi);
    }
    return c;
  };
  int best = m;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    double a = crit[i];
    double b = i + 1 < crit.size() ? crit[i + 1] : crit[0] + kTwoPi;
    if (b - a <= 1e-12) continue;
    double mid = normalize_angle(0.5 * (a + b));
    best = std::min(best, count_open(mid));
  }
  return best + coincident;
}

struct HalfPlane {
  P2 p, d;  // keep the left side of direction d through p
  double ang;
};

bool outside(const HalfPlane& h, P2 x) { return cross(h.d, x - h.p) < -1e-14; }

P2 line_meet(const HalfPlane& a, const HalfPlane& b) {
  double t = cross(b.d, b.p - a.p) / cross(b.d, a.d);
  return a.p + t * a.d;
}

// intersection of closed halfplanes; empty result means infeasible or degenerate
std::vector<P2> intersect_halfplanes(std::vector<HalfPlane> hs) {
  for (auto& h : hs) h.ang = std::atan2(h.d.y, h.d.x);
  std::sort(hs.begin(), hs.end(), [](const HalfPlane& a, const HalfPlane& b) {
    if (a.ang != b.ang) return a.ang < b.ang;
    return cross(a.d, b.p - a.p) > 0.0;
  });
  std::vector<HalfPlane> uniq;
  for (const auto& h : hs) {
    if (!uniq.empty() && std::fabs(uniq.back().ang - h.ang) < 1e-15) continue;
    uniq.push_back(h);
  }
  std::vector<HalfPlane> dq(uniq.size() + 2);
  std::vector<P2> pt(uniq.size() + 2);
  int first = 0, last = -1;
  for (const auto& h : uniq) {
    while (last - first >= 1 && outside(h, pt[last - 1])) --last;
    while (last - first >= 1 && outside(h, pt[first])) ++first;
    dq[++last] = h;
    if (last - first >= 1) {
      double c = cross(dq[last - 1].d, dq[last].d);
      if (std::fabs(c) < 1e-18) {
        if (cross(dq[last - 1].d, h.p - dq[last - 1].p) < 0.0) return {};
        --last;
        continue;
      }
      pt[last - 1] = line_meet(dq[last - 1], dq[last]);
    }
  }
  while (last - first >= 2 && outside(dq[first], pt[last - 1])) --last;
  if (last - first < 2) return {};
  pt[last] = line_meet(dq[last], dq[first]);
  return std::vector<P2>(pt.begin() + first, pt.begin() + last + 1);
}

P2 polygon_centroid(const std::vector<P2>& poly) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  P2 avg{0.0, 0.0};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 p = poly[i], q = poly[(i + 1) % poly.size()];
    double c = cross(p, q);
    a += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
    avg = avg + p;
  }
  avg = (1.0 / static_cast<double>(poly.size())) * avg;
  if (std::fabs(a) < 1e-24) return avg;
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

// halfplanes whose boundary passes through two input points and whose open
// complement holds `want` points (or at most `want` when `loose`)
std::vector<HalfPlane> depth_constraints(const std::vector<P2>& pts, int want, bool loose) {
  std::vector<HalfPlane> out;
  const int n = static_cast<int>(pts.size());
  std::vector<double> ang;
  for (int i = 0; i < n; ++i) {
    ang.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      P2 d = pts[j] - pts[i];
      if (std::hypot(d.x, d.y) <= kSame) continue;
      ang.push_back(normalize_angle(std::atan2(d.y, d.x)));
    }
    std::sort(ang.begin(), ang.end());
    std::vector<double> twice(ang);
    for (double a : ang) twice.push_back(a + kTwoPi);
    auto cnt = [&](double lo, double hi) {
      return static_cast<int>(std::lower_bound(twice.begin(), twice.end(), hi - 1e-12) -
                              std::upper_bound(twice.begin(), twice.end(), lo + 1e-12));
    };
    for (std::size_t k = 0; k < ang.size(); ++k) {
      if (k > 0 && ang[k] == ang[k - 1]) continue;
      double a = ang[k];
      int left = cnt(a, a + kPi);
      int right = cnt(a + kPi, a + kTwoPi);
      P2 d{std::cos(a), std::sin(a)};
      auto match = [&](int c) { return loose ? c <= want : c == want; };
      if (match(left)) out.push_back({pts[i], -1.0 * d, 0.0});
      if (match(right)) out.push_back({pts[i], d, 0.0});
    }
  }
  return out;
}

std::vector<HalfPlane> box() {
  return {{{-1.0, -1.0}, {1.0, 0.0}, 0.0},
          {{1.0, -1.0}, {0.0, 1.0}, 0.0},
          {{1.0, 1.0}, {-1.0, 0.0}, 0.0},
          {{-1.0, 1.0}, {0.0, -1.0}, 0.0}};
}

HPoint klein_to_h(P2 p) { return from_klein(disk_point(p.x, p.y)); }

}  // namespace

int tukey_depth(const std::vector<HPoint>& points, const HPoint& x) {
  std::vector<P2> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    DiskPoint k = to_klein(p);
    pts.push_back({k.x, k.y});
  }
  DiskPoint kx = to_klein(x);
  return depth_at(pts, {kx.x, kx.y});
}

HPoint centerpoint(const std::vector<HPoint>& points) {
  if (points.empty()) throw std::invalid_argument("centerpoint of an empty set");
  const int n = static_cast<int>(points.size());
  const int k = n / 3;
  if (k == 0) return points.front();
  std::vector<P2> pts;
  for (const auto& p : points) {
    DiskPoint z = to_klein(p);
    pts.push_back({z.x, z.y});
  }
  auto try_region = [&](bool loose) -> std::optional<P2> {
    auto hs = depth_constraints(pts, k - 1, loose);
    for (const auto& b : box()) hs.push_back(b);
    auto poly = intersect_halfplanes(hs);
    if (poly.empty()) return std::nullopt;
    P2 c = polygon_centroid(poly);
    if (std::hypot(c.x, c.y) >= 1.0) return std::nullopt;
    if (depth_at(pts, c) >= k) return c;
    return std::nullopt;
  };
  if (auto c = try_region(false)) return klein_to_h(*c);
  if (auto c = try_region(true)) return klein_to_h(*c);
  for (const auto& p : pts)
    if (depth_at(pts, p) >= k) return klein_to_h(p);
  std::size_t budget = 200000;
  for (int a = 0; a < n && budget; ++a)
    for (int b = a + 1; b < n && budget; ++b)
      for (int c = 0; c < n && budget; ++c)
        for (int d = c + 1; d < n && budget; ++d) {
          --budget;
          HalfPlane l1{pts[a], pts[b] - pts[a], 0.0}, l2{pts[c], pts[d] - pts[c], 0.0};
          if (std::fabs(cross(l1.d, l2.d)) < 1e-18) continue;
          P2 x = line_meet(l1, l2);
          if (std::hypot(x.x, x.y) < 1.0 && depth_at(pts, x) >= k) return klein_to_h(x);
        }
  throw std::runtime_error("centerpoint search failed");
}

}  // namespace hudg
