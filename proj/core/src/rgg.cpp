#include "mbrgg/rgg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "mbrgg/packing.hpp"

namespace mbrgg {

std::string to_string(SamplingModel m) { return m == SamplingModel::binomial ? "binomial" : "poisson"; }

SamplingModel sampling_model_from_string(const std::string& s) {
  if (s == "binomial") return SamplingModel::binomial;
  if (s == "poisson") return SamplingModel::poisson;
  throw PreconditionError("unknown sampling model: " + s);
}

PointSet sample(SamplingModel model, double n, Seed seed) {
  if (!(n >= 1)) throw PreconditionError("sample: intensity must be >= 1");
  PointSet ps;
  ps.model = model;
  ps.intensity = n;
  ps.seed = seed;
  std::mt19937_64 rng(seed);
  std::size_t count = static_cast<std::size_t>(std::llround(n));
  if (model == SamplingModel::poisson) {
    std::poisson_distribution<long long> po(n);
    count = static_cast<std::size_t>(po(rng));
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ps.points.resize(count);
  for (auto& p : ps.points) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return ps;
}

SpatialGrid::SpatialGrid(std::span<const Point> points, double side_hint,
                         std::size_t max_cells_per_side)
    : points_(points) {
  std::size_t g = 1;
  if (side_hint > 0 && side_hint < 1) g = static_cast<std::size_t>(std::floor(1.0 / side_hint));
  g_ = std::clamp<std::size_t>(g, 1, std::max<std::size_t>(1, max_cells_per_side));
  side_ = 1.0 / static_cast<double>(g_);
  start_.assign(g_ * g_ + 1, 0);
  std::vector<std::size_t> cell(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    cell[i] = static_cast<std::size_t>(cell_coord(points[i].y)) * g_ +
              static_cast<std::size_t>(cell_coord(points[i].x));
    ++start_[cell[i] + 1];
  }
  for (std::size_t c = 0; c < g_ * g_; ++c) start_[c + 1] += start_[c];
  order_.resize(points.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) order_[fill[cell[i]]++] = static_cast<Vertex>(i);
}

namespace {
std::size_t grid_limit(std::size_t n) {
  return std::max<std::size_t>(1, 2 * static_cast<std::size_t>(std::ceil(std::sqrt(double(n)))));
}
}  // namespace

GeometricGraph build_graph(std::shared_ptr<const PointSet> ps, double r) {
  if (!(r > 0)) throw PreconditionError("build_graph: r must be positive");
  const auto& pts = ps->points;
  SpatialGrid grid(pts, r, grid_limit(pts.size()));
  std::vector<Edge> edges;
  for (Vertex i = 0; i < pts.size(); ++i)
    grid.for_each_within(pts[i], r, [&](Vertex j) {
      if (j > i) edges.push_back({i, j});
    });
  Graph g(pts.size(), std::move(edges));
  return GeometricGraph(std::move(ps), r, std::move(g));
}

GeometricGraph build_graph(const PointSet& ps, double r) {
  return build_graph(std::make_shared<const PointSet>(ps), r);
}

Graph build_graph_brute(const PointSet& ps, double r) {
  std::vector<Edge> edges;
  const auto& pts = ps.points;
  for (Vertex i = 0; i < pts.size(); ++i)
    for (Vertex j = i + 1; j < pts.size(); ++j)
      if (dist(pts[i], pts[j]) <= r) edges.push_back({i, j});
  return Graph(pts.size(), std::move(edges));
}

double default_r_cap(std::size_t n) {
  double nn = std::max<double>(1.0, static_cast<double>(n));
  return 2.0 * std::sqrt((std::log(nn) + 10.0) / (std::numbers::pi * nn));
}

EdgeProcess::EdgeProcess(std::shared_ptr<const PointSet> ps, double r_cap)
    : ps_(std::move(ps)), r_cap_(r_cap) {
  if (r_cap_ < 0) throw PreconditionError("edge_process: r_cap must be nonnegative");
  rebuild();
}

void EdgeProcess::rebuild() {
  edges_.clear();
  if (r_cap_ <= 0) return;
  const auto& pts = ps_->points;
  SpatialGrid grid(pts, r_cap_, grid_limit(pts.size()));
  for (Vertex i = 0; i < pts.size(); ++i)
    grid.for_each_within(pts[i], r_cap_, [&](Vertex j) {
      if (j > i) edges_.push_back({i, j, dist(pts[i], pts[j])});
    });
  std::sort(edges_.begin(), edges_.end(), [](const ProcessEdge& a, const ProcessEdge& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
}

bool EdgeProcess::escalate() {
  if (escalations_ >= kMaxEscalations || r_cap_ >= std::sqrt(2.0)) return false;
  ++escalations_;
  r_cap_ = r_cap_ > 0 ? 2 * r_cap_ : default_r_cap(order());
  rebuild();
  return true;
}

std::size_t EdgeProcess::prefix_count(double r) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), r,
                             [](double value, const ProcessEdge& e) { return value < e.length; });
  return static_cast<std::size_t>(it - edges_.begin());
}

Graph EdgeProcess::prefix_graph(std::size_t count) const {
  count = std::min(count, edges_.size());
  std::vector<Edge> es;
  es.reserve(count);
  for (std::size_t i = 0; i < count; ++i) es.push_back({edges_[i].u, edges_[i].v});
  return Graph(order(), std::move(es));
}

namespace {

class MinDegreeDetector : public Detector {
 public:
  explicit MinDegreeDetector(std::size_t k) : k_(k) {}
  std::string name() const override { return "min_deg>=" + std::to_string(k_); }
  void reset(std::size_t n) override {
    deg_.assign(n, 0);
    below_ = k_ > 0 ? n : 0;
  }
  void insert(const ProcessEdge& e) override {
    for (Vertex v : {e.u, e.v})
      if (++deg_[v] == k_) --below_;
  }
  bool holds() override { return below_ == 0; }

 private:
  std::size_t k_;
  std::vector<std::size_t> deg_;
  std::size_t below_ = 0;
};

// Tracks vertices of degree < 2 and edges of edge-degree < 3 under insertion.
class PmNecessaryDetector : public Detector {
 public:
  std::string name() const override { return "pm_necessary"; }
  bool monotone() const override { return false; }
  void reset(std::size_t n) override {
    adj_.assign(n, {});
    low_vertices_ = n;
    low_edges_ = 0;
    edge_degree_.clear();
  }
  void insert(const ProcessEdge& pe) override {
    const Vertex u = pe.u, v = pe.v;
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}})
      for (Vertex w : adj_[x])
        if (!adjacent(w, y)) bump(key(x, w));
    std::size_t common = 0;
    for (Vertex w : adj_[u])
      if (adjacent(w, v)) ++common;
    std::size_t ed = adj_[u].size() + adj_[v].size() - common;
    edge_degree_[key(u, v)] = ed;
    if (ed < 3) ++low_edges_;
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      auto& list = adj_[x];
      list.insert(std::lower_bound(list.begin(), list.end(), y), y);
      if (list.size() == 2) --low_vertices_;
    }
  }
  bool holds() override { return low_vertices_ == 0 && low_edges_ == 0; }

 private:
  static std::uint64_t key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
  }
  bool adjacent(Vertex a, Vertex b) const {
    const auto& l = adj_[a];
    return std::binary_search(l.begin(), l.end(), b);
  }
  void bump(std::uint64_t k) {
    auto& ed = edge_degree_[k];
    if (++ed == 3) --low_edges_;
  }
  std::vector<std::vector<Vertex>> adj_;
  std::unordered_map<std::uint64_t, std::size_t> edge_degree_;
  std::size_t low_vertices_ = 0;
  std::size_t low_edges_ = 0;
};

// Cheap necessary conditions first; the packer is only started once they hold.
class TwoTreeDetector : public Detector {
 public:
  std::string name() const override { return "two_disjoint_spanning_trees"; }
  void reset(std::size_t n) override {
    n_ = n;
    edges_.clear();
    deg_.assign(n, 0);
    low_ = n;
    packer_.reset();
  }
  void insert(const ProcessEdge& e) override {
    edges_.push_back({e.u, e.v});
    for (Vertex v : {e.u, e.v})
      if (++deg_[v] == 2) --low_;
    if (packer_) packer_->add_edge(edges_.back());
  }
  bool holds() override {
    if (n_ <= 1) return true;
    if (low_ > 0 || edges_.size() < 2 * (n_ - 1)) return false;
    if (!packer_) {
      packer_ = std::make_unique<TreePacker>(n_);
      packer_->add_edges(edges_);
    }
    return packer_->complete();
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> deg_;
  std::size_t low_ = 0;
  std::unique_ptr<TreePacker> packer_;
};

class NonemptyDetector : public Detector {
 public:
  std::string name() const override { return "nonempty"; }
  void reset(std::size_t) override { count_ = 0; }
  void insert(const ProcessEdge&) override { ++count_; }
  bool holds() override { return count_ > 0; }

 private:
  std::size_t count_ = 0;
};

class WholeGraphDetector : public Detector {
 public:
  WholeGraphDetector(std::string name, std::function<bool(const Graph&)> pred)
      : name_(std::move(name)), pred_(std::move(pred)) {}
  std::string name() const override { return name_; }
  void reset(std::size_t n) override {
    n_ = n;
    edges_.clear();
  }
  void insert(const ProcessEdge& e) override { edges_.push_back({e.u, e.v}); }
  bool holds() override { return pred_(Graph(n_, edges_)); }

 private:
  std::string name_;
  std::function<bool(const Graph&)> pred_;
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace

HittingRadiusResult hitting_radius(EdgeProcess& proc, Detector& prop) {
  HittingRadiusResult res;
  res.property_name = prop.name();
  for (;;) {
    prop.reset(proc.order());
    auto edges = proc.edges();
    if (prop.holds()) {
      res.attained = true;
      res.rho = 0.0;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      prop.insert(edges[i]);
      bool h = prop.holds();
      if (!res.attained && h) {
        res.attained = true;
        res.rho = edges[i].length;
        res.witness_edge = i;
        if (prop.monotone()) break;
      } else if (res.attained && !h) {
        res.monotone_violation = edges[i].length;
        break;
      }
    }
    if (res.attained || !proc.escalate()) return res;
  }
}

std::unique_ptr<Detector> min_deg_at_least(std::size_t k) {
  return std::make_unique<MinDegreeDetector>(k);
}
std::unique_ptr<Detector> pm_necessary() { return std::make_unique<PmNecessaryDetector>(); }
std::unique_ptr<Detector> two_disjoint_spanning_trees() {
  return std::make_unique<TwoTreeDetector>();
}
std::unique_ptr<Detector> graph_nonempty() { return std::make_unique<NonemptyDetector>(); }
std::unique_ptr<Detector> whole_graph_detector(std::string name,
                                               std::function<bool(const Graph&)> pred) {
  return std::make_unique<WholeGraphDetector>(std::move(name), std::move(pred));
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> d(g.order());
  for (Vertex v = 0; v < g.order(); ++v) d[v] = g.degree(v);
  return d;
}

namespace {
std::size_t common_neighbors(const Graph& g, Vertex u, Vertex v) {
  auto a = g.neighbors(u), b = g.neighbors(v);
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}
}  // namespace

std::vector<std::size_t> edge_degrees(const Graph& g) {
  std::vector<std::size_t> out;
  out.reserve(g.size());
  for (const Edge& e : g.edges())
    out.push_back(g.degree(e.u) + g.degree(e.v) - common_neighbors(g, e.u, e.v) - 2);
  return out;
}

std::size_t min_degree(const Graph& g) {
  std::size_t m = g.order() ? g.degree(0) : 0;
  for (Vertex v = 1; v < g.order(); ++v) m = std::min(m, g.degree(v));
  return m;
}

bool pm_necessary_holds(const Graph& g) {
  if (min_degree(g) < 2) return false;
  for (std::size_t ed : edge_degrees(g))
    if (ed < 3) return false;
  return true;
}

std::size_t count_low_structures(const Graph& g) {
  std::size_t count = 0;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) <= 1) ++count;
  // edge-degree >= max(deg u, deg v) - 1, so only low-degree endpoints matter
  for (const Edge& e : g.edges()) {
    if (g.degree(e.u) > 3 || g.degree(e.v) > 3) continue;
    std::size_t ed = g.degree(e.u) + g.degree(e.v) - common_neighbors(g, e.u, e.v) - 2;
    if (ed <= 2) ++count;
  }
  return count;
}

void for_each_connected_subset(const Graph& g, std::size_t k,
                               const std::function<void(std::span<const Vertex>)>& fn) {
  if (k == 0) return;
  std::vector<Vertex> sub;
  std::vector<char> in_sub(g.order(), 0);
  // number of subset members adjacent to each vertex
  std::vector<int> near_count(g.order(), 0);

  std::function<void(std::vector<Vertex>&, Vertex)> extend = [&](std::vector<Vertex>& ext,
                                                                  Vertex root) {
    if (sub.size() == k) {
      fn(sub);
      return;
    }
    while (!ext.empty()) {
      Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : g.neighbors(w))
        if (u > root && !in_sub[u] && near_count[u] == 0) next.push_back(u);
      sub.push_back(w);
      in_sub[w] = 1;
      for (Vertex u : g.neighbors(w)) ++near_count[u];
      extend(next, root);
      for (Vertex u : g.neighbors(w)) --near_count[u];
      in_sub[w] = 0;
      sub.pop_back();
    }
  };

  for (Vertex v = 0; v < g.order(); ++v) {
    sub.assign(1, v);
    in_sub[v] = 1;
    for (Vertex u : g.neighbors(v)) ++near_count[u];
    std::vector<Vertex> ext;
    for (Vertex u : g.neighbors(v))
      if (u > v) ext.push_back(u);
    extend(ext, v);
    for (Vertex u : g.neighbors(v)) --near_count[u];
    in_sub[v] = 0;
  }
}

SmallGraph induced_small(const Graph& g, std::span<const Vertex> vertices) {
  SmallGraph h(static_cast<int>(vertices.size()));
  for (std::size_t j = 1; j < vertices.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (g.has_edge(vertices[i], vertices[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

namespace {
void guard_components(const Graph& g, std::size_t guard) {
  if (guard == 0) return;
  for (const auto& comp : connected_components(g))
    if (comp.size() > guard)
      throw ComponentTooLarge("component of order " + std::to_string(comp.size()) +
                              " exceeds guard " + std::to_string(guard));
}
}  // namespace

std::size_t count_induced(const Graph& g, const SmallGraph& H, std::size_t component_guard) {
  if (H.order() < 1 || H.order() > 4) throw PreconditionError("count_induced: need |V(H)| <= 4");
  if (!H.connected()) throw PreconditionError("count_induced: H must be connected");
  guard_components(g, component_guard);
  if (H.order() == 1) return g.order();
  if (H.order() == 2) return g.size();
  const std::uint32_t target = H.canonical_mask();
  std::size_t count = 0;
  for_each_connected_subset(g, static_cast<std::size_t>(H.order()), [&](std::span<const Vertex> s) {
    SmallGraph h = induced_small(g, s);
    if (h.size() == H.size() && h.canonical_mask() == target) ++count;
  });
  return count;
}

bool contains_family_member(const Graph& g, std::span<const SmallGraph> family,
                            std::size_t component_guard) {
  if (family.empty()) return false;
  const int k = family.front().order();
  for (const auto& f : family)
    if (f.order() != k) throw PreconditionError("contains_family_member: members differ in order");
  guard_components(g, component_guard ? component_guard : 3 * static_cast<std::size_t>(k));
  bool found = false;
  for_each_connected_subset(g, static_cast<std::size_t>(k), [&](std::span<const Vertex> s) {
    if (found) return;
    SmallGraph h = induced_small(g, s);
    for (const auto& f : family)
      if (h.contains_spanning(f)) {
        found = true;
        return;
      }
  });
  return found;
}

void write_points(std::ostream& os, const PointSet& ps) {
  os << "# n=" << ps.size() << " seed=" << ps.seed << " model=" << to_string(ps.model) << "\n";
  os << std::setprecision(17);
  for (const auto& p : ps.points) os << p.x << " " << p.y << "\n";
}

PointSet read_points(std::istream& is) {
  PointSet ps;
  std::string line;
  std::size_t declared = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "n") declared = std::stoull(val);
        if (key == "seed") ps.seed = std::stoull(val);
        if (key == "model") ps.model = sampling_model_from_string(val);
      }
      have_header = true;
      continue;
    }
    std::istringstream ls(line);
    Point p;
    if (!(ls >> p.x >> p.y)) throw PreconditionError("read_points: malformed line: " + line);
    ps.points.push_back(p);
  }
  if (have_header && declared != ps.size())
    throw PreconditionError("read_points: header count does not match body");
  ps.intensity = static_cast<double>(ps.size());
  return ps;
}

void write_edges(std::ostream& os, const GeometricGraph& g) {
  os << std::setprecision(17);
  for (const Edge& e : g.graph().edges())
    os << e.u << " " << e.v << " " << dist(g.point(e.u), g.point(e.v)) << "\n";
}

}  // namespace mbrgg
