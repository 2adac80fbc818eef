#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mbrgg/grand_strategy.hpp"

namespace mbrgg {

namespace {

struct Cell {
  long x, y;
  friend bool operator==(const Cell&, const Cell&) = default;
};

}  // namespace

SyntheticInstance synthetic_instance(const SyntheticOptions& o, Seed seed) {
  if (o.side <= 0 || o.side > 0.25 || o.cells_min < 1 || o.cells_min > o.cells_max ||
      o.points_min < o.T || o.points_min > o.points_max)
    throw PreconditionError("synthetic instance: inconsistent options");
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&](std::size_t a, std::size_t b) {
    return std::uniform_int_distribution<std::size_t>(a, b)(rng);
  };
  const long m = std::lround(1.0 / o.side);
  const double side = 1.0 / static_cast<double>(m);
  const double r = o.radius_factor * side;
  // Obstruction vertices sit this far from every cluster centre.
  const double D = r + o.cluster_radius + 0.007;
  const double crucial_reach = r - 0.003;
  if (D - crucial_reach + 0.002 >= side / 2)
    throw PreconditionError("synthetic instance: crucial vertices would leave their cell");

  // Connected block of good cells grown from a random start near the middle.
  std::vector<Cell> cells{{m / 2 + static_cast<long>(pick(0, 2)) - 1,
                           m / 2 + static_cast<long>(pick(0, 2)) - 1}};
  const std::size_t K = pick(o.cells_min, o.cells_max);
  const Cell dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (cells.size() < K) {
    Cell base = cells[pick(0, cells.size() - 1)];
    Cell d = dirs[pick(0, 3)];
    Cell c{base.x + d.x, base.y + d.y};
    if (c.x < 2 || c.y < 2 || c.x >= m - 2 || c.y >= m - 2) continue;
    if (std::find(cells.begin(), cells.end(), c) == cells.end()) cells.push_back(c);
  }
  auto centre = [&](const Cell& c) {
    return Point{(static_cast<double>(c.x) + 0.5) * side, (static_cast<double>(c.y) + 0.5) * side};
  };
  auto cell_of = [&](Point p) {
    return Cell{static_cast<long>(std::floor(p.x / side)), static_cast<long>(std::floor(p.y / side))};
  };
  auto is_good = [&](Point p) {
    return std::find(cells.begin(), cells.end(), cell_of(p)) != cells.end();
  };
  auto inside = [](Point p) { return p.x > 0.01 && p.x < 0.99 && p.y > 0.01 && p.y < 0.99; };
  auto far_from_clusters = [&](Point p, double min) {
    for (const Cell& c : cells)
      if (dist(p, centre(c)) < min) return false;
    return true;
  };

  auto ps = std::make_shared<PointSet>();
  ps->seed = seed;
  std::vector<std::size_t> load(cells.size(), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::size_t N = pick(o.points_min, o.points_max);
    const Point z = centre(cells[i]);
    for (std::size_t k = 0; k < N; ++k) {
      double rad = o.cluster_radius * std::sqrt(uni(0, 1)), th = uni(0, 2 * std::numbers::pi);
      ps->points.push_back({z.x + rad * std::cos(th), z.y + rad * std::sin(th)});
    }
    load[i] = N;
  }

  SyntheticInstance out;
  out.r = r;
  out.good_cells = cells.size();
  std::vector<Point> placed;  // obstruction positions
  const std::size_t want = pick(o.obstructions_min, o.obstructions_max);
  for (int attempt = 0; attempt < 400 && placed.size() < want; ++attempt) {
    std::vector<Point> targets;  // cluster centres the crucial vertices lean towards
    Point p;
    if (o.bridge_obstructions && cells.size() >= 2 && (rng() & 1)) {
      const std::size_t i = pick(0, cells.size() - 1);
      std::vector<std::size_t> adj;
      for (std::size_t j = 0; j < cells.size(); ++j)
        if (std::abs(cells[i].x - cells[j].x) + std::abs(cells[i].y - cells[j].y) == 1)
          adj.push_back(j);
      if (adj.empty()) continue;
      const std::size_t j = adj[pick(0, adj.size() - 1)];
      Point a = centre(cells[i]), b = centre(cells[j]);
      Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
      double wx = -(b.y - a.y) / side, wy = (b.x - a.x) / side;
      if (rng() & 1) wx = -wx, wy = -wy;
      const double h = std::sqrt(D * D - side * side / 4);
      p = {mid.x + h * wx, mid.y + h * wy};
      targets = {a, b};
    } else {
      Point a = centre(cells[pick(0, cells.size() - 1)]);
      double th = uni(0, 2 * std::numbers::pi);
      p = {a.x + D * std::cos(th), a.y + D * std::sin(th)};
      targets = {a};
    }
    if (!inside(p) || is_good(p) || !far_from_clusters(p, D - 1e-9)) continue;
    bool clear = true;
    for (Point q : placed) clear = clear && dist(p, q) > 2 * r + 0.01;
    if (!clear) continue;
    placed.push_back(p);
    const std::size_t s = pick(1, o.obstruction_size_max);
    const std::size_t b = std::min<std::size_t>(6, std::max<std::size_t>(s + 2, 4) + pick(0, 1));
    for (std::size_t k = 0; k < s; ++k)
      ps->points.push_back({p.x + uni(-3e-4, 3e-4), p.y + uni(-3e-4, 3e-4)});
    for (std::size_t k = 0; k < b; ++k) {
      const Point t = targets[k % targets.size()];
      const double len = dist(p, t);
      const double ux = (t.x - p.x) / len, uy = (t.y - p.y) / len;
      const double jit = uni(-0.002, 0.002);
      ps->points.push_back(
          {p.x + crucial_reach * ux - jit * uy, p.y + crucial_reach * uy + jit * ux});
    }
  }
  out.obstructions = placed.size();

  const std::size_t safe = pick(0, o.safe_singletons_max);
  for (int attempt = 0; attempt < 400 && out.safe_vertices < safe; ++attempt) {
    Point a = centre(cells[pick(0, cells.size() - 1)]);
    double th = uni(0, 2 * std::numbers::pi);
    Point q{a.x + 0.8 * side * std::cos(th), a.y + 0.8 * side * std::sin(th)};
    if (!inside(q) || is_good(q)) continue;
    bool clear = true;
    for (Point p : placed) clear = clear && dist(p, q) > r + 0.01;
    if (!clear) continue;
    ps->points.push_back(q);
    ++out.safe_vertices;
  }

  if (o.even && ps->points.size() % 2) {
    const Point z = centre(cells[0]);
    ps->points.push_back({z.x + uni(-1e-3, 1e-3), z.y + uni(-1e-3, 1e-3)});
  }
  ps->intensity = static_cast<double>(ps->points.size());
  out.points = ps;

  DissectionParams dp;
  dp.T = o.T;
  dp.m = static_cast<std::size_t>(m);
  dp.r = r;
  dp.str1_fraction = 0.0;  // the block occupies a small window of the square
  dp.separation = 1.0;
  out.dissection = dp;
  return out;
}

}  // namespace mbrgg
