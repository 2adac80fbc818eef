#pragma once

// Labeled graphs on at most 8 vertices stored as a bitmask over vertex pairs.
// Used for pattern graphs H, exact-solver boards and isomorphism tests.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mbrgg {

class SmallGraph {
 public:
  static constexpr int kMaxVertices = 8;

  SmallGraph() = default;
  explicit SmallGraph(int k);
  SmallGraph(int k, const std::vector<std::pair<int, int>>& edges);

  static SmallGraph complete(int k);
  static SmallGraph path(int k);
  static SmallGraph cycle(int k);
  static SmallGraph from_mask(int k, std::uint32_t mask);

  int order() const { return k_; }
  int size() const;
  std::uint32_t mask() const { return mask_; }

  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  int degree(int v) const;
  std::uint8_t neighbors(int v) const;  // bitset of neighbours
  bool connected() const;
  std::vector<std::pair<int, int>> edges() const;

  // Image of this graph under the vertex map v -> perm[v].
  SmallGraph relabeled(const std::array<int, kMaxVertices>& perm) const;

  // Minimum mask over all relabelings; equal iff isomorphic.
  std::uint32_t canonical_mask() const;

  // True when some relabeling of `sub` is a (spanning) subgraph of this graph.
  bool contains_spanning(const SmallGraph& sub) const;

  std::string to_string() const;

  friend bool operator==(const SmallGraph& a, const SmallGraph& b) {
    return a.k_ == b.k_ && a.mask_ == b.mask_;
  }

 private:
  int k_ = 0;
  std::uint32_t mask_ = 0;
};

// Bit index of the unordered pair {i,j}, i != j, in a k <= 8 vertex mask.
int pair_index(int i, int j);
inline constexpr int pair_count(int k) { return k * (k - 1) / 2; }

bool isomorphic(const SmallGraph& a, const SmallGraph& b);

// One representative per isomorphism class of graphs on k vertices (k <= 6).
std::vector<SmallGraph> enumerate_graphs(int k, bool connected_only = false);

// Named patterns accepted by the CLI and configs: "edge", "triangle", "p3",
// "k4", "c4", "k5-e", or "k<n>"/"p<n>"/"c<n>".
SmallGraph named_graph(const std::string& name);

}  // namespace mbrgg
