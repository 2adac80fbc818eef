#include "mbrgg/graph.hpp"

#include <algorithm>

namespace mbrgg {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), offsets_(n + 1, 0) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw PreconditionError("Graph: vertex out of range");
    e = make_edge(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  adj_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adj_[fill[e.u]++] = e.v;
    adj_[fill[e.v]++] = e.u;
  }
  // Sorted edge order already leaves every list ascending.
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_ || u == v) return false;
  auto nb = neighbors(degree(u) <= degree(v) ? u : v);
  Vertex target = degree(u) <= degree(v) ? v : u;
  return std::binary_search(nb.begin(), nb.end(), target);
}

std::size_t Graph::edge_index(Vertex u, Vertex v) const {
  Edge e = make_edge(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) return edges_.size();
  return static_cast<std::size_t>(it - edges_.begin());
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> local(n_, static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : neighbors(vertices[i]))
      if (local[w] != static_cast<Vertex>(-1) && local[w] > i)
        es.push_back({static_cast<Vertex>(i), local[w]});
  return Graph(vertices.size(), std::move(es));
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    comps.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comps.back().push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_hamilton_cycle(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.order();
  if (n < 3 || order.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!g.has_edge(order[i], order[(i + 1) % n])) return false;
  return true;
}

bool is_perfect_matching(const Graph& g, std::span<const Edge> matching) {
  const std::size_t n = g.order();
  if (n % 2 != 0 || matching.size() * 2 != n) return false;
  std::vector<char> seen(n, 0);
  for (const auto& e : matching) {
    if (e.u >= n || e.v >= n || seen[e.u] || seen[e.v] || !g.has_edge(e.u, e.v)) return false;
    seen[e.u] = seen[e.v] = 1;
  }
  return true;
}

}  // namespace mbrgg
