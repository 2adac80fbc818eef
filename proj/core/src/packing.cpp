#include "mbrgg/packing.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace mbrgg {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

TreePacker::TreePacker(std::size_t n) : n_(n) {
  rebuild(0);
  rebuild(1);
}

void TreePacker::rebuild(int k) {
  Forest& f = forest_[k];
  f.root.assign(n_, kNone);
  f.parent.assign(n_, 0);
  f.parent_edge.assign(n_, kNone);
  f.depth.assign(n_, 0);
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n_);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (color_[i] == k) {
      adj[edges_[i].u].emplace_back(edges_[i].v, i);
      adj[edges_[i].v].emplace_back(edges_[i].u, i);
    }
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (f.root[s] != kNone) continue;
    f.root[s] = s;
    f.parent[s] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[v])
        if (f.root[w] == kNone) {
          f.root[w] = s;
          f.parent[w] = v;
          f.parent_edge[w] = e;
          f.depth[w] = f.depth[v] + 1;
          stack.push_back(w);
        }
    }
  }
}

void TreePacker::path_edges(int k, Vertex a, Vertex b, std::vector<std::size_t>& out) const {
  const Forest& f = forest_[k];
  out.clear();
  while (a != b) {
    if (f.depth[a] >= f.depth[b]) {
      out.push_back(f.parent_edge[a]);
      a = f.parent[a];
    } else {
      out.push_back(f.parent_edge[b]);
      b = f.parent[b];
    }
  }
}

bool TreePacker::augment(std::span<const std::size_t> sources) {
  const std::size_t m = edges_.size();
  std::vector<std::size_t> par(m, kNone);
  std::vector<char> seen(m, 0);
  std::deque<std::size_t> queue;
  for (std::size_t s : sources)
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  std::vector<std::size_t> path;
  while (!queue.empty()) {
    std::size_t f = queue.front();
    queue.pop_front();
    const Vertex a = edges_[f].u, b = edges_[f].v;
    for (int k = 0; k < 2; ++k) {
      if (color_[f] == k) continue;
      if (forest_[k].root[a] != forest_[k].root[b]) {
        // Walk back: each predecessor takes over the forest its successor leaves.
        std::vector<std::pair<std::size_t, int>> changes{{f, k}};
        for (std::size_t cur = f; par[cur] != kNone; cur = par[cur])
          changes.emplace_back(par[cur], color_[cur]);
        for (auto [e, c] : changes) color_[e] = c;
        ++rank_;
        rebuild(0);
        rebuild(1);
        return true;
      }
      path_edges(k, a, b, path);
      for (std::size_t g : path)
        if (!seen[g]) {
          seen[g] = 1;
          par[g] = f;
          queue.push_back(g);
        }
    }
  }
  return false;
}

void TreePacker::add_edges(std::span<const Edge> batch) {
  if (batch.empty()) return;
  UnionFind uf[2] = {UnionFind(n_), UnionFind(n_)};
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (color_[i] >= 0) uf[color_[i]].unite(edges_[i].u, edges_[i].v);
  for (const Edge& e : batch) {
    if (e.u >= n_ || e.v >= n_) throw PreconditionError("TreePacker: vertex out of range");
    edges_.push_back(e);
    color_.push_back(-1);
    if (e.u == e.v || complete()) continue;
    for (int k = 0; k < 2; ++k)
      if (uf[k].unite(e.u, e.v)) {
        color_.back() = k;
        ++rank_;
        break;
      }
  }
  rebuild(0);
  rebuild(1);
  std::vector<std::size_t> sources;
  while (!complete()) {
    sources.clear();
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (color_[i] < 0 && edges_[i].u != edges_[i].v) sources.push_back(i);
    if (sources.empty() || !augment(sources)) break;
  }
}

bool TreePacker::add_edge(Edge e) {
  if (e.u >= n_ || e.v >= n_) throw PreconditionError("TreePacker: vertex out of range");
  edges_.push_back(e);
  color_.push_back(-1);
  if (e.u == e.v || complete()) return false;
  for (int k = 0; k < 2; ++k)
    if (forest_[k].root[e.u] != forest_[k].root[e.v]) {
      color_.back() = k;
      ++rank_;
      rebuild(k);
      return true;
    }
  std::size_t idx = edges_.size() - 1;
  return augment(std::span<const std::size_t>(&idx, 1));
}

std::optional<TreePair> TreePacker::pair() const {
  if (!complete()) return std::nullopt;
  TreePair p;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (color_[i] == 0) p.t1.push_back(i);
    if (color_[i] == 1) p.t2.push_back(i);
  }
  return p;
}

std::optional<TreePair> two_tree_packing(std::size_t n, std::span<const Edge> edges) {
  if (n >= 2 && edges.size() < 2 * (n - 1)) return std::nullopt;
  TreePacker packer(n);
  packer.add_edges(edges);
  return packer.pair();
}

std::optional<TreePair> two_tree_packing(const Graph& g) {
  return two_tree_packing(g.order(), g.edges());
}

bool verify_tree_pair(std::size_t n, std::span<const Edge> edges, const TreePair& pair) {
  if (n == 0) return pair.t1.empty() && pair.t2.empty();
  std::vector<char> used(edges.size(), 0);
  for (const auto* tree : {&pair.t1, &pair.t2}) {
    if (tree->size() != n - 1) return false;
    UnionFind uf(n);
    for (std::size_t i : *tree) {
      if (i >= edges.size() || used[i]) return false;
      used[i] = 1;
      if (!uf.unite(edges[i].u, edges[i].v)) return false;
    }
  }
  return true;
}

}  // namespace mbrgg
