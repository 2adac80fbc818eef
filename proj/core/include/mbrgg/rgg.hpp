#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbrgg/geometry.hpp"
#include "mbrgg/graph.hpp"
#include "mbrgg/small_graph.hpp"

namespace mbrgg {

enum class SamplingModel { binomial, poisson };

std::string to_string(SamplingModel m);
SamplingModel sampling_model_from_string(const std::string& s);

struct PointSet {
  std::vector<Point> points;
  SamplingModel model = SamplingModel::binomial;
  double intensity = 0.0;
  Seed seed = 0;
  std::size_t size() const { return points.size(); }
};

PointSet sample(SamplingModel model, double n, Seed seed);

// Uniform bucket grid over [0,1]^2. The side is never below the requested
// radius unless the grid would exceed `max_cells_per_side`.
class SpatialGrid {
 public:
  SpatialGrid(std::span<const Point> points, double side_hint, std::size_t max_cells_per_side);

  double side() const { return side_; }
  std::size_t cells_per_side() const { return g_; }

  // Calls fn(j) for every point j with dist(p, points[j]) <= radius.
  template <typename Fn>
  void for_each_within(Point p, double radius, Fn&& fn) const {
    const double r2 = radius * radius;
    const long reach = static_cast<long>(std::ceil(radius / side_));
    const long cx = cell_coord(p.x), cy = cell_coord(p.y);
    const long g = static_cast<long>(g_);
    for (long y = std::max(0L, cy - reach); y <= std::min(g - 1, cy + reach); ++y)
      for (long x = std::max(0L, cx - reach); x <= std::min(g - 1, cx + reach); ++x) {
        std::size_t c = static_cast<std::size_t>(y) * g_ + static_cast<std::size_t>(x);
        for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
          Vertex j = order_[k];
          if (dist2(p, points_[j]) <= r2) fn(j);
        }
      }
  }

 private:
  long cell_coord(double t) const {
    long c = static_cast<long>(t / side_);
    return std::clamp(c, 0L, static_cast<long>(g_) - 1);
  }
  std::span<const Point> points_;
  double side_ = 1.0;
  std::size_t g_ = 1;
  std::vector<std::size_t> start_;
  std::vector<Vertex> order_;
};

class GeometricGraph {
 public:
  GeometricGraph(std::shared_ptr<const PointSet> ps, double r, Graph g)
      : ps_(std::move(ps)), r_(r), g_(std::move(g)) {}
  const PointSet& pointset() const { return *ps_; }
  std::shared_ptr<const PointSet> pointset_ptr() const { return ps_; }
  const Point& point(Vertex v) const { return ps_->points[v]; }
  double radius() const { return r_; }
  const Graph& graph() const { return g_; }
  std::size_t order() const { return g_.order(); }
  std::size_t size() const { return g_.size(); }

 private:
  std::shared_ptr<const PointSet> ps_;
  double r_;
  Graph g_;
};

GeometricGraph build_graph(std::shared_ptr<const PointSet> ps, double r);
GeometricGraph build_graph(const PointSet& ps, double r);
// O(n^2) reference construction.
Graph build_graph_brute(const PointSet& ps, double r);

struct ProcessEdge {
  Vertex u = 0;
  Vertex v = 0;
  double length = 0.0;
};

double default_r_cap(std::size_t n);

class EdgeProcess {
 public:
  EdgeProcess(std::shared_ptr<const PointSet> ps, double r_cap);

  const PointSet& pointset() const { return *ps_; }
  std::size_t order() const { return ps_->size(); }
  double r_cap() const { return r_cap_; }
  std::span<const ProcessEdge> edges() const { return edges_; }
  // Number of edges with length <= r.
  std::size_t prefix_count(double r) const;
  // Rebuilds with a doubled cap; returns false once the escalation budget is spent.
  bool escalate();
  int escalations() const { return escalations_; }
  static constexpr int kMaxEscalations = 3;

  Graph prefix_graph(std::size_t count) const;

 private:
  void rebuild();
  std::shared_ptr<const PointSet> ps_;
  double r_cap_;
  int escalations_ = 0;
  std::vector<ProcessEdge> edges_;
};

// Property observed along the edge process.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::string name() const = 0;
  virtual bool monotone() const { return true; }
  virtual void reset(std::size_t n) = 0;
  virtual void insert(const ProcessEdge& e) = 0;
  virtual bool holds() = 0;
};

struct HittingRadiusResult {
  bool attained = false;
  double rho = 0.0;
  std::optional<std::size_t> witness_edge;  // index into the process
  std::string property_name;
  std::optional<double> monotone_violation;  // later radius where the property failed
};

HittingRadiusResult hitting_radius(EdgeProcess& proc, Detector& prop);

std::unique_ptr<Detector> min_deg_at_least(std::size_t k);
std::unique_ptr<Detector> pm_necessary();
std::unique_ptr<Detector> two_disjoint_spanning_trees();
std::unique_ptr<Detector> graph_nonempty();
// Whole-graph predicate re-evaluated on each prefix (small inputs only).
std::unique_ptr<Detector> whole_graph_detector(std::string name,
                                               std::function<bool(const Graph&)> pred);

std::vector<std::size_t> degrees(const Graph& g);
// Aligned with g.edges(): |N(u) ∪ N(v)| - 2.
std::vector<std::size_t> edge_degrees(const Graph& g);
std::size_t min_degree(const Graph& g);
bool pm_necessary_holds(const Graph& g);

// Vertices of degree <= 1 plus edges of edge-degree <= 2.
std::size_t count_low_structures(const Graph& g);

// Calls fn(vertices) for each connected vertex set of size k (ESU enumeration).
void for_each_connected_subset(const Graph& g, std::size_t k,
                               const std::function<void(std::span<const Vertex>)>& fn);

SmallGraph induced_small(const Graph& g, std::span<const Vertex> vertices);

// Exact count of induced copies of a connected H with |V(H)| <= 4.
std::size_t count_induced(const Graph& g, const SmallGraph& H, std::size_t component_guard = 0);

class ComponentTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// True when some connected k-subset spans a member of `family` (as a subgraph).
// Throws ComponentTooLarge when a component exceeds `component_guard`
// (0 selects the default 3k).
bool contains_family_member(const Graph& g, std::span<const SmallGraph> family,
                            std::size_t component_guard = 0);

// Text formats: "# n=<n> seed=<seed> model=<m>" then one "x y" per line;
// edge lists as "u v length".
void write_points(std::ostream& os, const PointSet& ps);
PointSet read_points(std::istream& is);
void write_edges(std::ostream& os, const GeometricGraph& g);

}  // namespace mbrgg
