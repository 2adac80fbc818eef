#include "mbrgg/dissection.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace mbrgg {

std::size_t cells_per_side(double n, double eta) {
  if (n < 2 || eta <= 0) throw PreconditionError("cells_per_side: need n >= 2 and eta > 0");
  return static_cast<std::size_t>(std::ceil(std::sqrt(n / (eta * eta * std::log(n)))));
}

Dissection::Dissection(std::shared_ptr<const PointSet> ps, DissectionParams params)
    : ps_(std::move(ps)), params_(params) {
  if (params_.T < 1) throw PreconditionError("dissection: T must be at least 1");
  const std::size_t n = ps_->size();
  m_ = params_.m ? params_.m : cells_per_side(static_cast<double>(n), params_.eta);
  side_ = 1.0 / static_cast<double>(m_);
  cell_of_.resize(n);
  start_.assign(m_ * m_ + 1, 0);
  auto coord = [&](double t) {
    auto c = static_cast<std::size_t>(std::max(0.0, t) * static_cast<double>(m_));
    return std::min(c, m_ - 1);
  };
  for (Vertex v = 0; v < n; ++v) {
    const Point& p = ps_->points[v];
    cell_of_[v] = cell_at(coord(p.x), coord(p.y));
    ++start_[cell_of_[v] + 1];
  }
  std::partial_sum(start_.begin(), start_.end(), start_.begin());
  members_.resize(n);
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (Vertex v = 0; v < n; ++v) members_[fill[cell_of_[v]]++] = v;
  for (CellId c = 0; c < num_cells(); ++c) good_count_ += good(c);
}

double Dissection::cell_distance(CellId a, CellId b) const {
  auto gap = [](std::size_t p, std::size_t q) {
    std::size_t d = p > q ? p - q : q - p;
    return d > 0 ? static_cast<double>(d - 1) : 0.0;
  };
  return std::hypot(gap(cell_x(a), cell_x(b)), gap(cell_y(a), cell_y(b))) * side_;
}

GammaGraph gamma(const Dissection& d) {
  GammaGraph g;
  const std::size_t m = d.m();
  g.index_of.assign(d.num_cells(), -1);
  g.component_of.assign(d.num_cells(), -1);
  for (CellId c = 0; c < d.num_cells(); ++c)
    if (d.good(c)) {
      g.index_of[c] = static_cast<int>(g.cells.size());
      g.cells.push_back(c);
    }
  const double thr = d.params().r - d.side() * std::numbers::sqrt2;
  std::vector<std::pair<long, long>> offsets;
  if (thr >= 0) {
    const long reach = static_cast<long>(std::floor(thr / d.side() + 1e-9));
    for (long dy = 0; dy <= reach; ++dy)
      for (long dx = -reach; dx <= reach; ++dx) {
        if (dy == 0 && dx <= 0) continue;
        if (std::hypot(static_cast<double>(dx), static_cast<double>(dy)) * d.side() <= thr + 1e-12)
          offsets.push_back({dx, dy});
      }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    const long x = static_cast<long>(d.cell_x(g.cells[i])), y = static_cast<long>(d.cell_y(g.cells[i]));
    for (auto [dx, dy] : offsets) {
      long nx = x + dx, ny = y + dy;
      if (nx < 0 || ny < 0 || nx >= static_cast<long>(m) || ny >= static_cast<long>(m)) continue;
      int j = g.index_of[d.cell_at(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny))];
      if (j >= 0) edges.push_back(make_edge(static_cast<Vertex>(i), static_cast<Vertex>(j)));
    }
  }
  g.adjacency = Graph(g.cells.size(), std::move(edges));
  // Components in order of discovery from the smallest cell, then sorted.
  std::vector<int> comp(g.cells.size(), -1);
  std::vector<std::vector<CellId>> comps;
  for (std::size_t s = 0; s < g.cells.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<Vertex> stack{static_cast<Vertex>(s)};
    comp[s] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comps[id].push_back(g.cells[v]);
      for (Vertex w : g.adjacency.neighbors(v))
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }
  std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (CellId c : comps[i]) g.component_of[c] = static_cast<int>(i);
  g.components = std::move(comps);
  return g;
}

std::string to_string(VertexClass c) {
  switch (c) {
    case VertexClass::safe: return "safe";
    case VertexClass::risky: return "risky";
    case VertexClass::dangerous: return "dangerous";
  }
  return "?";
}

std::string to_string(Obstruction::Kind k) {
  return k == Obstruction::Kind::dangerous_cluster ? "dangerous_cluster" : "gamma_plus";
}

namespace {

// (cell, count) for good cells around v, counting v itself.
std::vector<std::pair<CellId, std::size_t>> good_cell_counts(const Dissection& d,
                                                             const Graph& graph, Vertex v) {
  std::vector<CellId> cells;
  if (d.good(d.cell_of(v))) cells.push_back(d.cell_of(v));
  for (Vertex w : graph.neighbors(v))
    if (d.good(d.cell_of(w))) cells.push_back(d.cell_of(w));
  std::sort(cells.begin(), cells.end());
  std::vector<std::pair<CellId, std::size_t>> out;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j < cells.size() && cells[j] == cells[i]) ++j;
    out.push_back({cells[i], j - i});
    i = j;
  }
  return out;
}

double min_distance(const PointSet& ps, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                    double stop_below) {
  double best = std::numeric_limits<double>::infinity();
  for (Vertex u : a)
    for (Vertex v : b) {
      best = std::min(best, dist(ps.points[u], ps.points[v]));
      if (best < stop_below) return best;
    }
  return best;
}

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double diameter(const PointSet& ps, const std::vector<Vertex>& vs) {
  std::vector<Point> pts;
  for (Vertex v : vs) pts.push_back(ps.points[v]);
  if (pts.size() < 2) return 0.0;
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, dist(hull[i], hull[j]));
  return best;
}

}  // namespace

Classification classify_vertices(const Dissection& d, const GammaGraph& g,
                                 const GeometricGraph& graph) {
  const std::size_t n = graph.order();
  const std::size_t T = d.params().T;
  Classification out;
  out.cls.assign(n, VertexClass::dangerous);
  out.anchor.assign(n, -1);
  out.risky_components.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t best = 0;
    std::vector<int> risky;
    for (auto [c, k] : good_cell_counts(d, graph.graph(), v)) {
      if (k < T) continue;
      const int comp = g.component_of[c];
      if (comp == 0) {
        if (k > best) {
          best = k;
          out.anchor[v] = static_cast<std::int64_t>(c);
        }
      } else if (comp > 0 && std::find(risky.begin(), risky.end(), comp) == risky.end()) {
        risky.push_back(comp);
      }
    }
    if (out.anchor[v] >= 0) {
      out.cls[v] = VertexClass::safe;
    } else if (!risky.empty()) {
      out.cls[v] = VertexClass::risky;
      std::sort(risky.begin(), risky.end());
      out.risky_components[v] = std::move(risky);
    }
  }
  return out;
}

std::vector<Vertex> gamma_plus(const Dissection& d, const GammaGraph& g, const Classification& cls,
                               std::size_t i) {
  if (i < 2 || i > g.count()) throw std::out_of_range("gamma_plus: component index out of range");
  const int comp = static_cast<int>(i - 1);
  std::vector<Vertex> out;
  for (CellId c : g.components[comp])
    for (Vertex v : d.members(c)) out.push_back(v);
  for (Vertex v = 0; v < cls.cls.size(); ++v) {
    if (cls.cls[v] != VertexClass::risky) continue;
    const auto& rc = cls.risky_components[v];
    if (std::find(rc.begin(), rc.end(), comp) != rc.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vertex> crucial_vertices(const Dissection& d, const Classification& cls,
                                     const GeometricGraph& graph,
                                     const std::vector<Vertex>& members) {
  (void)d;
  if (members.empty()) return {};
  const PointSet& ps = graph.pointset();
  const double r = graph.radius();
  std::vector<Vertex> cand(graph.graph().neighbors(members[0]).begin(),
                           graph.graph().neighbors(members[0]).end());
  cand.push_back(members[0]);
  std::vector<Vertex> out;
  for (Vertex v : cand) {
    if (cls.cls[v] != VertexClass::safe) continue;
    bool covers = true;
    for (Vertex a : members)
      if (dist(ps.points[v], ps.points[a]) > r) {
        covers = false;
        break;
      }
    if (covers) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Obstruction> obstructions(const Dissection& d, const GammaGraph& g,
                                      const Classification& cls, const GeometricGraph& graph) {
  const PointSet& ps = graph.pointset();
  const double r = graph.radius();
  std::vector<Vertex> danger;
  for (Vertex v = 0; v < cls.cls.size(); ++v)
    if (cls.cls[v] == VertexClass::dangerous) danger.push_back(v);
  std::vector<Obstruction> out;
  if (!danger.empty()) {
    const double thr = d.params().separation * r;
    UnionFind uf(danger.size());
    if (thr >= std::numbers::sqrt2) {
      for (std::size_t i = 1; i < danger.size(); ++i) uf.unite(0, i);
    } else {
      std::vector<Point> pts;
      for (Vertex v : danger) pts.push_back(ps.points[v]);
      SpatialGrid grid(pts, thr, 2048);
      for (std::size_t i = 0; i < pts.size(); ++i)
        grid.for_each_within(pts[i], thr, [&](Vertex j) {
          if (dist(pts[i], pts[j]) < thr) uf.unite(i, j);
        });
    }
    std::unordered_map<std::size_t, std::size_t> slot;
    std::vector<std::vector<Vertex>> clusters;
    for (std::size_t i = 0; i < danger.size(); ++i) {
      auto [it, fresh] = slot.emplace(uf.find(i), clusters.size());
      if (fresh) clusters.emplace_back();
      clusters[it->second].push_back(danger[i]);
    }
    for (auto& c : clusters) {
      Obstruction o;
      o.kind = Obstruction::Kind::dangerous_cluster;
      o.members = std::move(c);
      out.push_back(std::move(o));
    }
  }
  for (std::size_t i = 2; i <= g.count(); ++i) {
    Obstruction o;
    o.kind = Obstruction::Kind::gamma_plus;
    o.component = static_cast<int>(i);
    o.members = gamma_plus(d, g, cls, i);
    out.push_back(std::move(o));
  }
  for (auto& o : out) o.crucial = crucial_vertices(d, cls, graph, o.members);
  return out;
}

ImportantAssignment assign_important(const Dissection& d, const GammaGraph& g,
                                     const GeometricGraph& graph,
                                     const std::vector<Vertex>& crucial, std::size_t per,
                                     std::vector<char>& used, std::optional<CellId> preferred) {
  ImportantAssignment out;
  const std::size_t T = d.params().T;
  std::optional<CellId> first_cell = preferred;
  auto is_crucial = [&](Vertex w) {
    return std::find(crucial.begin(), crucial.end(), w) != crucial.end();
  };
  for (Vertex v : crucial) {
    // Candidate cells of the largest component with >= T neighbours of v.
    std::vector<std::pair<CellId, std::vector<Vertex>>> cells;
    for (auto [c, k] : good_cell_counts(d, graph.graph(), v)) {
      if (k < T || !g.in_max(c)) continue;
      std::vector<Vertex> avail;
      if (d.cell_of(v) == c) {
        // v itself is not a candidate
      }
      for (Vertex w : graph.graph().neighbors(v))
        if (d.cell_of(w) == c && !used[w] && !is_crucial(w)) avail.push_back(w);
      cells.push_back({c, std::move(avail)});
    }
    std::stable_sort(cells.begin(), cells.end(), [&](const auto& a, const auto& b) {
      bool pa = first_cell && a.first == *first_cell, pb = first_cell && b.first == *first_cell;
      if (pa != pb) return pa;
      return a.second.size() > b.second.size();
    });
    bool done = false;
    for (auto& [c, avail] : cells) {
      if (avail.size() < per) continue;
      std::vector<Vertex> pick(avail.begin(), avail.begin() + per);
      for (Vertex w : pick) used[w] = 1;
      used[v] = 1;
      out.crucial.push_back(v);
      out.cell.push_back(c);
      out.important.push_back(std::move(pick));
      if (!first_cell) first_cell = c;
      done = true;
      break;
    }
    if (!done) out.unassigned.push_back(v);
  }
  return out;
}

StrReport check_str(const Dissection& d, const GammaGraph& g, const Classification& cls) {
  StrReport rep;
  const PointSet& ps = d.pointset();
  const auto& P = d.params();
  const double r = P.r;
  const double small = P.small_factor * r, far = P.separation * r;
  auto note = [&](std::string s) { rep.diagnostics.push_back(std::move(s)); };

  const std::size_t max_cells = g.count() ? g.components[0].size() : 0;
  rep.holds[0] = static_cast<double>(max_cells) > P.str1_fraction * static_cast<double>(d.num_cells());
  if (!rep.holds[0])
    note("STR1: largest component has " + std::to_string(max_cells) + " of " +
         std::to_string(d.num_cells()) + " cells");

  std::vector<std::vector<Vertex>> plus;
  for (std::size_t i = 2; i <= g.count(); ++i) plus.push_back(gamma_plus(d, g, cls, i));

  rep.holds[1] = true;
  for (std::size_t i = 0; i < plus.size(); ++i) {
    double diam = diameter(ps, plus[i]);
    if (diam >= small) {
      rep.holds[1] = false;
      note("STR2: component " + std::to_string(i + 2) + " has diameter " + std::to_string(diam));
      break;
    }
  }

  std::vector<Vertex> danger;
  for (Vertex v = 0; v < cls.cls.size(); ++v)
    if (cls.cls[v] == VertexClass::dangerous) danger.push_back(v);
  rep.holds[2] = true;
  for (std::size_t i = 0; i < danger.size() && rep.holds[2]; ++i)
    for (std::size_t j = i + 1; j < danger.size(); ++j) {
      double z = dist(ps.points[danger[i]], ps.points[danger[j]]);
      if (z >= small && z <= far) {
        rep.holds[2] = false;
        note("STR3: dangerous vertices " + std::to_string(danger[i]) + " and " +
             std::to_string(danger[j]) + " at distance " + std::to_string(z));
        break;
      }
    }

  rep.holds[3] = true;
  for (std::size_t i = 0; i < plus.size() && rep.holds[3]; ++i)
    for (std::size_t j = i + 1; j < plus.size(); ++j)
      if (double z = min_distance(ps, plus[i], plus[j], far); z < far) {
        rep.holds[3] = false;
        note("STR4: components " + std::to_string(i + 2) + " and " + std::to_string(j + 2) +
             " at distance " + std::to_string(z));
        break;
      }

  rep.holds[4] = true;
  for (std::size_t i = 0; i < plus.size() && rep.holds[4]; ++i)
    if (double z = min_distance(ps, danger, plus[i], far); z < far) {
      rep.holds[4] = false;
      note("STR5: a dangerous vertex lies at distance " + std::to_string(z) + " from component " +
           std::to_string(i + 2));
    }

  // STR6: graph distance within the largest component for nearby cells. A
  // shortest path never exceeds the component size, which settles small
  // components outright.
  rep.holds[5] = true;
  if (max_cells > 0 && max_cells - 1 > P.str6_cutoff) {
    const auto& cells = g.components[0];
    const double range = P.str6_range * r;
    const long reach = static_cast<long>(std::ceil(range / d.side())) + 1;
    std::vector<int> depth(g.cells.size(), -1);
    for (CellId src : cells) {
      std::vector<int> targets;
      const long x = static_cast<long>(d.cell_x(src)), y = static_cast<long>(d.cell_y(src));
      for (long dy = -reach; dy <= reach; ++dy)
        for (long dx = -reach; dx <= reach; ++dx) {
          long nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= static_cast<long>(d.m()) || ny >= static_cast<long>(d.m()))
            continue;
          CellId c = d.cell_at(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
          if (g.in_max(c) && d.cell_distance(src, c) <= range) targets.push_back(g.index_of[c]);
        }
      std::vector<int> touched;
      std::deque<int> q{g.index_of[src]};
      depth[g.index_of[src]] = 0;
      touched.push_back(g.index_of[src]);
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (static_cast<std::size_t>(depth[v]) >= P.str6_cutoff) continue;
        for (Vertex w : g.adjacency.neighbors(v))
          if (depth[w] < 0) {
            depth[w] = depth[v] + 1;
            touched.push_back(static_cast<int>(w));
            q.push_back(static_cast<int>(w));
          }
      }
      for (int t : targets)
        if (depth[t] < 0) {
          rep.holds[5] = false;
          note("STR6: cells " + std::to_string(src) + " and " + std::to_string(g.cells[t]) +
               " are farther apart than the cutoff in the graph");
          break;
        }
      for (int t : touched) depth[t] = -1;
      if (!rep.holds[5]) break;
    }
  }
  return rep;
}

namespace {
template <typename Visit>
PairABC abc_from(const PointSet& ps, double r, Vertex u, Vertex v, Visit&& visit_near_u) {
  PairABC p{u, v, 0, 0, 0, dist(ps.points[u], ps.points[v])};
  const Point pu = ps.points[u], pv = ps.points[v];
  visit_near_u(r + p.z, [&](Vertex w) {
    if (w == u || w == v) return;
    const double du = dist(pu, ps.points[w]), dv = dist(pv, ps.points[w]);
    if (du <= p.z) ++p.c;
    else if (du <= r - p.z) ++p.a;
    else if (du <= r || dv <= r) ++p.b;
  });
  return p;
}
}  // namespace

PairABC abc_counts(const PointSet& ps, double r, Vertex u, Vertex v) {
  return abc_from(ps, r, u, v, [&](double, auto&& fn) {
    for (Vertex w = 0; w < ps.size(); ++w) fn(w);
  });
}

std::vector<PairABC> scan_abc_pairs(const PointSet& ps, double r, AbcCaps caps) {
  std::vector<PairABC> out;
  SpatialGrid grid(ps.points, r, 4096);
  const double close = r / 100.0;
  for (Vertex u = 0; u < ps.size(); ++u) {
    std::vector<Vertex> near;
    grid.for_each_within(ps.points[u], close, [&](Vertex v) {
      if (v != u && dist(ps.points[u], ps.points[v]) < close) near.push_back(v);
    });
    for (Vertex v : near) {
      auto p = abc_from(ps, r, u, v, [&](double rad, auto&& fn) {
        grid.for_each_within(ps.points[u], rad, fn);
      });
      if (p.a <= caps.a_max && p.b <= caps.b_max && p.c <= caps.c_max) out.push_back(p);
    }
  }
  return out;
}

BoundedTree bounded_degree_spanning_tree(std::span<const Point> points, const Graph& g) {
  const std::size_t n = g.order();
  BoundedTree out;
  if (n <= 1) return out;
  std::vector<std::pair<double, Edge>> es;
  for (const Edge& e : g.edges()) es.push_back({dist(points[e.u], points[e.v]), e});
  std::sort(es.begin(), es.end(), [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  });
  UnionFind uf(n);
  std::vector<std::vector<Vertex>> adj(n);
  for (auto& [len, e] : es)
    if (uf.unite(e.u, e.v)) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
      out.mst_length += len;
    }
  std::size_t tree_edges = 0;
  for (const auto& a : adj) tree_edges += a.size();
  if (tree_edges / 2 != n - 1) throw PreconditionError("bounded tree: graph is disconnected");

  auto len = [&](Vertex a, Vertex b) { return dist(points[a], points[b]); };
  const double eps = 1e-12;
  for (std::size_t iter = 0; iter < 10 * n + 100; ++iter) {
    Vertex v = static_cast<Vertex>(n);
    for (Vertex x = 0; x < n; ++x)
      if (adj[x].size() >= 6) {
        v = x;
        break;
      }
    if (v == n) break;
    auto angle = [&](Vertex w) {
      return std::atan2(points[w].y - points[v].y, points[w].x - points[v].x);
    };
    auto nb = adj[v];
    std::sort(nb.begin(), nb.end(), [&](Vertex a, Vertex b) { return angle(a) < angle(b); });
    bool changed = false;
    for (std::size_t i = 0; i < nb.size() && !changed; ++i) {
      Vertex a = nb[i], b = nb[(i + 1) % nb.size()];
      double gap = angle(b) - angle(a);
      if (gap < 0) gap += 2 * std::numbers::pi;
      if (gap > std::numbers::pi / 3 + 1e-9) continue;
      // Drop the longer spoke; the shorter-spoke endpoint gains the edge.
      Vertex keep = len(v, a) <= len(v, b) ? a : b, drop = keep == a ? b : a;
      if (len(v, keep) == len(v, drop) && adj[b].size() < adj[a].size()) std::swap(keep, drop);
      if (!g.has_edge(keep, drop) || len(keep, drop) > len(v, drop) + eps) continue;
      adj[v].erase(std::find(adj[v].begin(), adj[v].end(), drop));
      adj[drop].erase(std::find(adj[drop].begin(), adj[drop].end(), v));
      adj[keep].push_back(drop);
      adj[drop].push_back(keep);
      ++out.exchanges;
      changed = true;
    }
    if (!changed) break;
  }
  for (Vertex x = 0; x < n; ++x) {
    out.max_degree = std::max(out.max_degree, adj[x].size());
    for (Vertex y : adj[x])
      if (x < y) {
        out.edges.push_back({x, y});
        out.length += len(x, y);
      }
  }
  return out;
}

BoundedTree gamma_max_tree(const Dissection& d, const GammaGraph& g) {
  if (g.count() == 0) return {};
  const auto& cells = g.components[0];
  std::vector<Point> pts;
  std::vector<int> local(g.cells.size(), -1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    pts.push_back(d.corner(cells[i]));
    local[g.index_of[cells[i]]] = static_cast<int>(i);
  }
  std::vector<Edge> es;
  for (const Edge& e : g.adjacency.edges())
    if (local[e.u] >= 0 && local[e.v] >= 0)
      es.push_back(make_edge(static_cast<Vertex>(local[e.u]), static_cast<Vertex>(local[e.v])));
  return bounded_degree_spanning_tree(pts, Graph(cells.size(), std::move(es)));
}

double obstruction_degree_bound(std::size_t T, double r, std::size_t m) {
  const double side = 1.0 / static_cast<double>(m);
  const double q = std::numbers::pi * std::pow(r + std::numbers::sqrt2 * side, 2) / (side * side);
  return static_cast<double>(T - 1) * std::floor(q);
}

DissectionAnalysis analyze(const GeometricGraph& graph, DissectionParams params) {
  if (params.r <= 0) params.r = graph.radius();
  DissectionAnalysis a;
  a.dissection = std::make_shared<Dissection>(graph.pointset_ptr(), params);
  a.gamma = gamma(*a.dissection);
  a.classes = classify_vertices(*a.dissection, a.gamma, graph);
  a.obstructions = obstructions(*a.dissection, a.gamma, a.classes, graph);
  a.str = check_str(*a.dissection, a.gamma, a.classes);
  return a;
}

std::string dissection_report_json(const DissectionAnalysis& a) {
  nlohmann::json j;
  const auto& d = *a.dissection;
  j["m"] = d.m();
  j["good_fraction"] = d.good_fraction();
  j["components"] = nlohmann::json::array();
  for (const auto& c : a.gamma.components) j["components"].push_back(c.size());
  j["obstructions"] = nlohmann::json::array();
  for (const auto& o : a.obstructions)
    j["obstructions"].push_back(
        {{"kind", to_string(o.kind)}, {"size", o.size()}, {"crucial_count", o.crucial.size()}});
  j["str"] = a.str.holds;
  j["diagnostics"] = a.str.diagnostics;
  j["params"] = {{"eta", d.params().eta}, {"T", d.params().T}, {"r", d.params().r},
                 {"separation", d.params().separation}};
  return j.dump(2);
}

}  // namespace mbrgg
