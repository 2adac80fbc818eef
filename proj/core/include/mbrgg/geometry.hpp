#pragma once

#include <cstdint>
#include <functional>

#include "mbrgg/common.hpp"
#include "mbrgg/small_graph.hpp"

namespace mbrgg {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double dist(Point p, Point q);
double dist2(Point p, Point q);

// area(B(x;r) \ B(y;r)) for |x-y| = d.
double disk_diff_area(double d, double r);

// area(B(x;r) ∩ [0,1]^2) for a centre at distance h < r from one side and far
// from the others.
double disk_square_area(double h, double r);

// Two disks of radius r near the left side of the unit square: the first
// centre sits at horizontal distance h from the side, the second is displaced
// by d in direction alpha (alpha in [-pi/2, pi/2], pointing into the square).
struct DiskPairFrame {
  double d = 0.0;
  double h = 0.0;
  double alpha = 0.0;
  double r = 0.0;
};

struct NearBoundaryAreas {
  double union_exact = 0.0;  // area of (B(x)∪B(y)) inside the square
  double diff_exact = 0.0;   // area of B(y)\B(x) inside the square
  double union_approx = 0.0; // pi r^2/2 + 2hr + (1+cos a) d r
  double diff_approx = 0.0;  // (1+cos a) d r
  double achieved_tol = 0.0; // summed quadrature error estimates
};

NearBoundaryAreas union_near_boundary_areas(const DiskPairFrame& frame, double tol = 1e-12);

struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  double area() const { return (x1 - x0) * (y1 - y0); }
};

// Hit-or-miss estimate of area(region ∩ box).
Estimate mc_area(const std::function<bool(Point)>& region, Box box, std::uint64_t samples,
                 Seed seed);

struct SegmentRelation {
  bool cross = false;       // open segments intersect in a single interior point
  bool degenerate = false;  // shared endpoint or collinear contact
};

SegmentRelation classify_segments(Point a, Point b, Point c, Point d);
inline bool segments_cross(Point a, Point b, Point c, Point d) {
  return classify_segments(a, b, c, d).cross;
}

// H(x) = x ln x - x + 1 with 0 ln 0 = 0.
double chernoff_rate(double x);

enum class Tail { upper, lower };
// exp(-mu H(k/mu)); upper requires k >= mu, lower requires k <= mu.
double chernoff_tail(double mu, double k, Tail tail);

// (1/k!) ∫ 1{G(0,x_1..x_{k-1};1) ≅ H} dx, by hit-or-miss over [-(k-1),k-1]^2 per point.
Estimate mu_H(const SmallGraph& H, std::uint64_t samples, Seed seed);

}  // namespace mbrgg
