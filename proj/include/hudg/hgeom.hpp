#pragma once

#include <optional>
#include <vector>

namespace hudg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

double normalize_angle(double a);

struct HPoint {
  double radial = 0.0;
  double angle = 0.0;

  HPoint() = default;
  HPoint(double r, double a);

  bool operator==(const HPoint&) const = default;
};

struct IdealPoint {
  double angle = 0.0;

  IdealPoint() = default;
  explicit IdealPoint(double a);

  bool operator==(const IdealPoint&) const = default;
};

// Point of a Euclidean disk model. `gap` = 1 - |(x, y)| is kept separately so
// that points very close to the boundary survive a round trip.
struct DiskPoint {
  double x = 0.0;
  double y = 0.0;
  double gap = 1.0;
};

DiskPoint disk_point(double x, double y);

struct HalfPlanePoint {
  double x = 0.0;
  double y = 1.0;
};

// Oriented geodesic. `base` is a point on it and `heading` the direction of
// travel at `base` (as an angle in the Poincare chart, which is conformal).
// Travelling towards `to`, the left side is the side of heading + pi/2.
struct Geodesic {
  IdealPoint from;
  IdealPoint to;
  HPoint base;
  double heading = 0.0;

  HPoint point_at(double t) const;
};

struct GeodesicSegment {
  HPoint a;
  HPoint b;
};

struct Ray {
  HPoint origin;
  IdealPoint end;
};

// Ideal arc from `from` to `to`, clockwise. Contains `from`, excludes `to`.
struct IdealArc {
  IdealPoint from;
  IdealPoint to;

  double span() const;
  bool contains(double theta) const;
};

// stable hyperbolic law of cosines: side opposite the angle gamma
double law_of_cosines(double a, double b, double gamma);
double acosh1p(double x);

double dist(const HPoint& p, const HPoint& q);

// direction (Poincare chart angle) of the geodesic from p towards q / towards an ideal point
double direction(const HPoint& p, const HPoint& q);
double direction_to_ideal(const HPoint& p, double theta);
HPoint move(const HPoint& p, double dir, double t);
IdealPoint ideal_end(const HPoint& p, double dir);

HPoint from_halfplane(double x, double y);
HalfPlanePoint to_halfplane(const HPoint& p);
DiskPoint to_poincare(const HPoint& p);
DiskPoint to_klein(const HPoint& p);
HPoint from_poincare(const DiskPoint& z);
HPoint from_klein(const DiskPoint& z);

double angle_of_parallelism(double x);
double disk_area(double r);
double right_triangle_area(double a, double b);
double saccheri_summit(double base, double leg);
double triangle_area(const HPoint& a, const HPoint& b, const HPoint& c);

Geodesic geodesic_through(const HPoint& p, const HPoint& q);
Geodesic geodesic_between(IdealPoint from, IdealPoint to);
Geodesic perpendicular_bisector(const HPoint& p, const HPoint& q);

struct AxisCoords {
  double signed_dist;  // positive on the left
  double foot;         // arclength of the foot of the perpendicular from base
};
AxisCoords axis_coords(const HPoint& p, const Geodesic& g);

double dist_point_geodesic(const HPoint& p, const Geodesic& g);
double dist_point_segment(const HPoint& p, const GeodesicSegment& s);
double dist_point_ray(const HPoint& p, const Ray& r);

IdealArc halfplane_ideal_arc(const HPoint& s, const HPoint& w);

std::optional<HPoint> circumcenter(const HPoint& a, const HPoint& b, const HPoint& c);
// same construction without the escape cap; absent only if not timelike
std::optional<HPoint> circumcenter_uncapped(const HPoint& a, const HPoint& b,
                                            const HPoint& c);

HPoint centerpoint(const std::vector<HPoint>& points);
// minimum number of points on a closed side over all lines through x (Klein model)
int tukey_depth(const std::vector<HPoint>& points, const HPoint& x);

}  // namespace hudg
