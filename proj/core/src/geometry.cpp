#include "mbrgg/geometry.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace mbrgg {

namespace {
constexpr double kPi = std::numbers::pi;

double orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Half-length of the vertical chord of a disk at horizontal offset dx.
double half_chord(double r, double dx) {
  double t = r * r - dx * dx;
  return t > 0 ? std::sqrt(t) : 0.0;
}
}  // namespace

double dist2(Point p, Point q) {
  double dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}

double dist(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

double disk_diff_area(double d, double r) {
  if (!(r > 0)) throw PreconditionError("disk_diff_area: r must be positive");
  if (d < 0 || d > 2 * r) throw PreconditionError("disk_diff_area: need 0 <= d <= 2r");
  double q = d / (2 * r);
  return kPi * r * r - 2 * r * r * std::acos(q) + d * r * std::sqrt(1 - q * q);
}

double disk_square_area(double h, double r) {
  if (!(r > 0) || r >= 0.5) throw PreconditionError("disk_square_area: need 0 < r < 1/2");
  if (h < 0 || h >= r) throw PreconditionError("disk_square_area: need 0 <= h < r");
  double q = h / r;
  return kPi * r * r - std::acos(q) * r * r + h * r * std::sqrt(1 - q * q);
}

NearBoundaryAreas union_near_boundary_areas(const DiskPairFrame& f, double tol) {
  if (!(f.r > 0) || f.d < 0 || f.h < 0 || f.h > f.r || f.alpha < -kPi / 2 - 1e-12 ||
      f.alpha > kPi / 2 + 1e-12)
    throw PreconditionError("union_near_boundary_areas: invalid frame");
  const double r = f.r;
  const double x1 = f.h, y1 = 0.0;
  const double x2 = f.h + f.d * std::cos(f.alpha), y2 = f.d * std::sin(f.alpha);

  auto union_len = [&](double X) {
    double a = half_chord(r, X - x1), b = half_chord(r, X - x2);
    double lo1 = y1 - a, hi1 = y1 + a, lo2 = y2 - b, hi2 = y2 + b;
    double overlap = std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
    return 2 * a + 2 * b - overlap;
  };
  auto diff_len = [&](double X) {
    double a = half_chord(r, X - x1), b = half_chord(r, X - x2);
    double overlap = std::max(0.0, std::min(y1 + a, y2 + b) - std::max(y1 - a, y2 - b));
    return 2 * b - overlap;
  };

  std::vector<double> cuts = {0.0, x1 - r, x1 + r, x2 - r, x2 + r};
  for (auto& c : cuts) c = std::max(c, 0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  boost::math::quadrature::tanh_sinh<double> integrator;
  NearBoundaryAreas out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 0) continue;
    double err = 0.0;
    out.union_exact += integrator.integrate(union_len, a, b, tol, &err);
    out.achieved_tol += err;
    out.diff_exact += integrator.integrate(diff_len, a, b, tol, &err);
    out.achieved_tol += err;
  }
  double lead = (1 + std::cos(f.alpha)) * f.d * r;
  out.diff_approx = lead;
  out.union_approx = kPi * r * r / 2 + 2 * f.h * r + lead;
  return out;
}

Estimate mc_area(const std::function<bool(Point)>& region, Box box, std::uint64_t samples,
                 Seed seed) {
  if (samples == 0) throw PreconditionError("mc_area: need at least one sample");
  if (!(box.area() > 0)) throw PreconditionError("mc_area: box must have positive area");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.x0, box.x1), uy(box.y0, box.y1);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Point p{ux(rng), uy(rng)};
    if (region(p)) ++hits;
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box.area() * p, box.area() * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

SegmentRelation classify_segments(Point a, Point b, Point c, Point d) {
  SegmentRelation rel;
  if (a == c || a == d || b == c || b == d) {
    rel.degenerate = true;
    return rel;
  }
  double o1 = orient(a, b, c), o2 = orient(a, b, d);
  double o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
    rel.degenerate = true;
    return rel;
  }
  rel.cross = (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0);
  return rel;
}

double chernoff_rate(double x) {
  if (x < 0) throw PreconditionError("chernoff_rate: x must be nonnegative");
  if (x == 0) return 1.0;
  return x * std::log(x) - x + 1;
}

double chernoff_tail(double mu, double k, Tail tail) {
  if (!(mu > 0)) throw PreconditionError("chernoff_tail: mu must be positive");
  if (tail == Tail::upper && k < mu) throw PreconditionError("chernoff_tail: upper tail needs k >= mu");
  if (tail == Tail::lower && (k > mu || k < 0))
    throw PreconditionError("chernoff_tail: lower tail needs 0 <= k <= mu");
  return std::exp(-mu * chernoff_rate(k / mu));
}

Estimate mu_H(const SmallGraph& H, std::uint64_t samples, Seed seed) {
  const int k = H.order();
  if (k < 1 || k > 5) throw PreconditionError("mu_H: need 1 <= |V(H)| <= 5");
  if (!H.connected()) throw PreconditionError("mu_H: H must be connected");
  if (k == 1) return {1.0, 0.0};
  if (samples == 0) throw PreconditionError("mu_H: need at least one sample");
  const double half = k - 1;
  const double volume = std::pow(2 * half, 2 * (k - 1));
  double fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  const std::uint32_t target = H.canonical_mask();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half, half);
  std::array<Point, 5> pts{};
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 1; i < k; ++i) pts[i] = {u(rng), u(rng)};
    SmallGraph g(k);
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i)
        if (dist2(pts[i], pts[j]) <= 1.0) g.add_edge(i, j);
    if (g.size() == H.size() && g.canonical_mask() == target) ++hits;
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  double scale = volume / fact;
  return {scale * p, scale * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

}  // namespace mbrgg
