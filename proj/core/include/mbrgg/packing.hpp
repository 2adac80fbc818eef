#pragma once

// Two edge-disjoint spanning trees via matroid union of two graphic matroids.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mbrgg/graph.hpp"

namespace mbrgg {

// Indices into the edge list that was packed.
struct TreePair {
  std::vector<std::size_t> t1;
  std::vector<std::size_t> t2;
};

// Maintains a maximum independent set of the union of two graphic matroids
// over a growing multigraph edge list. Loops are accepted and never used.
class TreePacker {
 public:
  explicit TreePacker(std::size_t n);

  // Greedy insertion of a batch followed by augmentation from every
  // uncoloured edge; cheaper than repeated add_edge for large batches.
  void add_edges(std::span<const Edge> edges);
  // Returns true when the union rank grew.
  bool add_edge(Edge e);

  std::size_t order() const { return n_; }
  std::size_t rank() const { return rank_; }
  bool complete() const { return n_ <= 1 || rank_ == 2 * (n_ - 1); }
  std::optional<TreePair> pair() const;
  std::span<const Edge> edges() const { return edges_; }
  // -1 for unused edges, otherwise 0 or 1.
  int color(std::size_t edge) const { return color_[edge]; }

 private:
  struct Forest {
    std::vector<std::size_t> root, parent_edge, depth;
    std::vector<Vertex> parent;
  };
  void rebuild(int k);
  bool augment(std::span<const std::size_t> sources);
  void path_edges(int k, Vertex a, Vertex b, std::vector<std::size_t>& out) const;

  std::size_t n_;
  std::size_t rank_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> color_;
  Forest forest_[2];
};

std::optional<TreePair> two_tree_packing(std::size_t n, std::span<const Edge> edges);
std::optional<TreePair> two_tree_packing(const Graph& g);

// Structural re-check: both index lists are spanning trees and disjoint.
bool verify_tree_pair(std::size_t n, std::span<const Edge> edges, const TreePair& pair);

}  // namespace mbrgg
