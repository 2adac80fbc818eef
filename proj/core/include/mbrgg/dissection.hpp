#pragma once

// Cell dissection of the unit square, the graph of good cells and its
// components, vertex classes, obstructions and the structural checks.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbrgg/rgg.hpp"

namespace mbrgg {

struct DissectionParams {
  double eta = 0.05;
  std::size_t T = 10;
  double r = 0.0;
  std::size_t m = 0;  // 0 derives m from eta and n
  // Structural constants, all in units of r except the cell fraction and cutoff.
  double str1_fraction = 0.99;
  double small_factor = 0.01;
  double separation = 1e10;
  double str6_range = 10.0;
  std::size_t str6_cutoff = 100000;
};

// ceil(sqrt(n / (eta^2 ln n))).
std::size_t cells_per_side(double n, double eta);

using CellId = std::size_t;

class Dissection {
 public:
  Dissection(std::shared_ptr<const PointSet> ps, DissectionParams params);

  const DissectionParams& params() const { return params_; }
  const PointSet& pointset() const { return *ps_; }
  std::size_t m() const { return m_; }
  double side() const { return side_; }
  std::size_t num_cells() const { return m_ * m_; }
  CellId cell_of(Vertex v) const { return cell_of_[v]; }
  CellId cell_at(std::size_t x, std::size_t y) const { return y * m_ + x; }
  std::size_t cell_x(CellId c) const { return c % m_; }
  std::size_t cell_y(CellId c) const { return c / m_; }
  Point corner(CellId c) const { return {cell_x(c) * side_, cell_y(c) * side_}; }
  std::size_t count(CellId c) const { return start_[c + 1] - start_[c]; }
  std::span<const Vertex> members(CellId c) const {
    return {members_.data() + start_[c], members_.data() + start_[c + 1]};
  }
  bool good(CellId c) const { return count(c) >= params_.T; }
  std::size_t good_count() const { return good_count_; }
  double good_fraction() const { return static_cast<double>(good_count_) / num_cells(); }
  // Euclidean distance between two cells as closed squares.
  double cell_distance(CellId a, CellId b) const;

 private:
  std::shared_ptr<const PointSet> ps_;
  DissectionParams params_;
  std::size_t m_ = 1;
  double side_ = 1.0;
  std::vector<CellId> cell_of_;
  std::vector<std::size_t> start_;
  std::vector<Vertex> members_;
  std::size_t good_count_ = 0;
};

// Good cells joined when their lower-left corners are within r - side*sqrt(2).
struct GammaGraph {
  std::vector<CellId> cells;         // good cells, increasing
  std::vector<int> index_of;         // per cell: position in `cells` or -1
  Graph adjacency;                   // over positions in `cells`
  std::vector<int> component_of;     // per cell: 0-based component (0 = max) or -1
  std::vector<std::vector<CellId>> components;  // by size, ties by smallest cell

  std::size_t count() const { return components.size(); }
  bool in_max(CellId c) const { return component_of[c] == 0; }
};

GammaGraph gamma(const Dissection& d);

enum class VertexClass : std::uint8_t { safe, risky, dangerous };
std::string to_string(VertexClass c);

struct Classification {
  std::vector<VertexClass> cls;
  // Cell of the largest component holding the most neighbours (>= T) of v, or -1.
  std::vector<std::int64_t> anchor;
  // For risky vertices: components (index >= 1) with a cell holding >= T neighbours.
  std::vector<std::vector<int>> risky_components;
};

// Neighbourhoods include v itself, so every vertex of a good cell counts its cell.
Classification classify_vertices(const Dissection& d, const GammaGraph& g,
                                 const GeometricGraph& graph);

// Points of cells of component `i` (1-based, i >= 2) plus the risky points
// attached to it.
std::vector<Vertex> gamma_plus(const Dissection& d, const GammaGraph& g,
                               const Classification& cls, std::size_t i);

struct Obstruction {
  enum class Kind { dangerous_cluster, gamma_plus };
  Kind kind = Kind::dangerous_cluster;
  int component = -1;  // 1-based component index for gamma_plus
  std::vector<Vertex> members;
  std::vector<Vertex> crucial;
  std::size_t size() const { return members.size(); }
};
std::string to_string(Obstruction::Kind k);

// Vertices v with A inside B(v;r) and v safe.
std::vector<Vertex> crucial_vertices(const Dissection& d, const Classification& cls,
                                     const GeometricGraph& graph,
                                     const std::vector<Vertex>& members);

// Dangerous clusters (single linkage at separation * r) and the sets
// gamma_plus(i) for i >= 2, with their crucial vertices.
std::vector<Obstruction> obstructions(const Dissection& d, const GammaGraph& g,
                                      const Classification& cls, const GeometricGraph& graph);

struct ImportantAssignment {
  std::vector<Vertex> crucial;
  std::vector<CellId> cell;
  std::vector<std::vector<Vertex>> important;
  std::vector<Vertex> unassigned;  // crucial vertices left without a full set
};

// Picks `per` distinct vertices for each crucial vertex inside one largest-
// component cell where it has >= T neighbours. `used` marks vertices taken by
// earlier assignments and is updated. A preferred cell is tried first.
ImportantAssignment assign_important(const Dissection& d, const GammaGraph& g,
                                     const GeometricGraph& graph,
                                     const std::vector<Vertex>& crucial, std::size_t per,
                                     std::vector<char>& used,
                                     std::optional<CellId> preferred = std::nullopt);

struct StrReport {
  std::array<bool, 6> holds{};
  std::vector<std::string> diagnostics;
  bool all() const {
    for (bool b : holds)
      if (!b) return false;
    return true;
  }
};

StrReport check_str(const Dissection& d, const GammaGraph& g, const Classification& cls);

struct PairABC {
  Vertex u = 0, v = 0;
  std::size_t a = 0, b = 0, c = 0;
  double z = 0.0;
};
struct AbcCaps {
  std::size_t a_max = 0, b_max = 0, c_max = 0;
};
// Ordered pairs at distance < r/100 with counts within caps.
std::vector<PairABC> scan_abc_pairs(const PointSet& ps, double r, AbcCaps caps);
// Counts for one pair, from raw geometry.
PairABC abc_counts(const PointSet& ps, double r, Vertex u, Vertex v);

struct BoundedTree {
  std::vector<Edge> edges;
  double length = 0.0;
  double mst_length = 0.0;
  std::size_t exchanges = 0;
  std::size_t max_degree = 0;
};
// Minimum spanning tree on Euclidean lengths followed by degree-6 exchanges.
// Throws PreconditionError when the graph is disconnected.
BoundedTree bounded_degree_spanning_tree(std::span<const Point> points, const Graph& g);
// Tree over the cells of the largest component (vertices are positions in
// g.components[0]).
BoundedTree gamma_max_tree(const Dissection& d, const GammaGraph& g);

// (T-1) * floor(pi (r + sqrt2/m)^2 / (1/m)^2): a degree bound for dangerous vertices.
double obstruction_degree_bound(std::size_t T, double r, std::size_t m);

struct DissectionAnalysis {
  std::shared_ptr<const Dissection> dissection;
  GammaGraph gamma;
  Classification classes;
  std::vector<Obstruction> obstructions;
  StrReport str;
};
DissectionAnalysis analyze(const GeometricGraph& graph, DissectionParams params);

// {m, good_fraction, components, obstructions, str}.
std::string dissection_report_json(const DissectionAnalysis& a);

}  // namespace mbrgg
