#pragma once

// Exact Maker-Breaker solver for boards on at most 7 vertices, bias 1.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mbrgg/game.hpp"
#include "mbrgg/small_graph.hpp"

namespace mbrgg {

// Colours per vertex pair: absent, free, Maker, Breaker.
struct SolverPosition {
  int k = 0;
  std::uint32_t host = 0;
  std::uint32_t maker = 0;
  std::uint32_t breaker = 0;
  Side to_move = Side::breaker;

  std::uint32_t free_mask() const { return host & ~maker & ~breaker; }
};

class ExactSolver {
 public:
  static constexpr int kMaxVertices = 7;
  // The predicate must be monotone and invariant under relabeling.
  using Predicate = std::function<bool(const SmallGraph& maker_graph)>;

  ExactSolver(std::string name, Predicate maker_wins);

  const std::string& name() const { return name_; }
  // Value of the empty position with Breaker to move.
  Side solve(const SmallGraph& host);
  Side solve(const SolverPosition& pos);
  // A Maker move (pair index) that keeps a won position won, if any.
  std::optional<int> winning_maker_move(const SolverPosition& pos);

  std::size_t memo_size() const;
  std::uint64_t canonical_key(const SolverPosition& pos) const;

  // Binary cache: "MBSC", version, name, entries (key, value).
  void save(const std::string& path) const;
  bool load(const std::string& path);

 private:
  bool maker_wins(const SolverPosition& pos);

  std::string name_;
  Predicate pred_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

std::unique_ptr<ExactSolver> connectivity_solver();
std::unique_ptr<ExactSolver> h_game_solver(const SmallGraph& H);
// Maker needs a path with `length` edges.
std::unique_ptr<ExactSolver> path_solver(int length);

// Does `g` contain a (not necessarily induced) copy of H?
bool contains_subgraph(const SmallGraph& g, const SmallGraph& H);
bool has_path_of_length(const SmallGraph& g, int length);

struct KHResult {
  int k_H = 0;
  std::vector<SmallGraph> family;      // all Maker-win graphs on k_H vertices
  std::vector<bool> realizable;        // found as a unit-disk graph by random embedding
};

// Maker playing a move that keeps the position won (Breaker-first value),
// else the first free edge. Boards of at most kMaxVertices vertices.
class SolverMaker : public Strategy {
 public:
  SolverMaker(const Board& board, ExactSolver& solver);
  std::string name() const override { return "exact"; }
  EdgeId next_move(const GameState& state) override;

 private:
  ExactSolver* solver_;
  std::vector<int> bit_;          // per edge id: pair index
  std::vector<EdgeId> edge_of_;   // per pair index: edge id or kNoEdge
  std::uint32_t host_ = 0;
};

KHResult compute_kH(const SmallGraph& H, int k_max, Seed seed = 1,
                    std::uint64_t embedding_trials = 200000);

// Searches random planar placements for one whose radius-1 graph is isomorphic to g.
bool geometric_realizable(const SmallGraph& g, std::uint64_t trials, Seed seed);

}  // namespace mbrgg
