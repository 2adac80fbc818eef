#pragma once

// Blob cycles (a cycle plus a clique on s consecutive vertices), the surgery
// operations that grow them, and the Maker game that builds one in a clique.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbrgg/local_games.hpp"

namespace mbrgg {

struct BlobCycle {
  std::vector<Vertex> order;  // cyclic; order[0..s) is the blob
  std::size_t s = 0;

  std::size_t size() const { return order.size(); }
  std::vector<Vertex> blob() const { return {order.begin(), order.begin() + s}; }
};

struct BlobCheck {
  bool ok = true;
  std::string reason;
};

// Independent check of the invariants against a carrier graph: distinct
// vertices, 3 <= s <= m, consecutive adjacency (cyclic), blob clique.
BlobCheck verify_blob_cycle(const BlobCycle& c, const Graph& carrier);
bool blob_subset(const BlobCycle& inner, const BlobCycle& outer);

// Minimum blob size required by vertex insertion and merging for a given
// neighbour deficit `ell`.
enum class BlobMode { tight, strict };
std::size_t blob_threshold(std::size_t ell, BlobMode mode);
// s(ell1, ell2) of the conglomeration step.
std::size_t conglomerate_threshold(std::size_t ell1, std::size_t ell2, BlobMode mode);

// Splices the path p (p.front() .. p.back(), vertices not on c) into c
// between two consecutive cycle vertices adjacent to its ends. Positions
// outside the blob are preferred (blob kept), then ones at the blob ends
// (s-1), then blob interior positions after relabelling (s-2). Edges in
// `keep` are never opened. Returns nullopt if no position works.
std::optional<BlobCycle> blob_splice_path(const BlobCycle& c, const std::vector<Vertex>& p,
                                          const Graph& carrier,
                                          const std::vector<Edge>& keep = {});

// Adds the edge uv to the cycle (u, v off the cycle).
BlobCycle blob_insert_edge_pair(const BlobCycle& c, Vertex u, Vertex v, const Graph& carrier,
                                const std::vector<Edge>& keep = {});
// Adds a single vertex with at least |V(C)|/2 - ell neighbours on c.
BlobCycle blob_insert_vertex(const BlobCycle& c, Vertex v, const Graph& carrier, std::size_t ell,
                             BlobMode mode = BlobMode::tight, const std::vector<Edge>& keep = {});
// Merges a disjoint blob cycle c2 (s >= 5) into c1 by opening c2 between two
// of its blob vertices.
BlobCycle blob_merge(const BlobCycle& c1, const BlobCycle& c2, const Graph& carrier,
                     std::size_t ell, BlobMode mode = BlobMode::tight,
                     const std::vector<Edge>& keep = {});
// Best-effort merge without precondition checks.
std::optional<BlobCycle> try_blob_merge(const BlobCycle& c1, const BlobCycle& c2,
                                        const Graph& carrier, const std::vector<Edge>& keep = {});

struct MarkedTriple {
  Vertex u = 0, v = 0;
  BlobCycle cycle;
};

// Absorbs every triple (edge uv threaded through its cycle) and every single
// vertex w into c. Preconditions are checked one bullet at a time; a
// violation throws PreconditionError naming the bullet.
BlobCycle blob_conglomerate(const BlobCycle& c, const std::vector<MarkedTriple>& triples,
                            const std::vector<Vertex>& singles, const Graph& carrier,
                            BlobMode mode = BlobMode::tight);

// Hamilton cycle of the subgraph of g induced by vs, by extension-rotation
// with restarts; exact search when |vs| <= 12.
std::optional<std::vector<Vertex>> posa_hamilton_cycle(const Graph& g,
                                                       const std::vector<Vertex>& vs, Seed seed,
                                                       std::size_t restarts = 64);

// k-blob Hamilton cycle on vs whose blob is the clique `clique`.
std::optional<BlobCycle> find_blob_hamilton_cycle(const Graph& g, const std::vector<Vertex>& vs,
                                                  const std::vector<Vertex>& clique, Seed seed);

// Smallest clique size for which the builder is configured by default.
std::size_t blob_builder_min_size(std::size_t k);

struct BlobBuilderOptions {
  std::size_t min_size = 0;  // 0 selects blob_builder_min_size(k)
  std::size_t block = 0;     // reserved block for the clique; 0 = default
  Seed seed = 1;
};

// Builds a k-clique on a reserved block, then a Hamilton cycle on the rest
// while keeping every outside vertex attached to the clique.
class BlobBuilderGame : public LocalGame {
 public:
  BlobBuilderGame(const Board& board, std::vector<Vertex> vertices, std::size_t k,
                  BlobBuilderOptions opts = {});
  std::string name() const override { return "blob_builder"; }
  const std::vector<EdgeId>& board() const override { return edges_; }
  EdgeId respond(const GameState& state, EdgeId e) override;
  EdgeId free_move(const GameState& state) override;
  std::unique_ptr<LocalGame> clone() const override {
    return std::make_unique<BlobBuilderGame>(*this);
  }
  std::uint64_t fingerprint() const override;

  const std::vector<Vertex>& vertices() const { return vs_; }
  std::size_t k() const { return k_; }
  // Maker's k-clique once phase one is over.
  const std::optional<std::vector<Vertex>>& clique() const { return clique_; }
  // Blob Hamilton cycle in Maker's final graph, if one is found.
  std::optional<BlobCycle> extract(const Graph& maker) const;

 private:
  EdgeId clique_move(const GameState& state);
  EdgeId cycle_move(const GameState& state, std::optional<Vertex> hint);
  void check_clique(const GameState& state);
  Vertex local_lower(const GameState& state, Vertex a, Vertex b) const;
  EdgeId first_free_in(const GameState& state) const;
  EdgeId id(Vertex u, Vertex v) const { return board_->id(u, v); }

  const Board* board_;
  std::vector<Vertex> vs_;
  std::vector<Vertex> block_;
  std::size_t k_;
  Seed seed_;
  std::vector<EdgeId> edges_;
  std::vector<std::vector<int>> subsets_;  // k-subsets of the block, as positions
  std::optional<std::vector<Vertex>> clique_;
};

}  // namespace mbrgg
