#pragma once

// Connectivity Maker from two edge-disjoint spanning trees.
//
// Invariant kept between rounds: T1, T2 are spanning trees inside
// Maker ∪ unclaimed and T1 ∩ T2 is Maker's. A Breaker claim of e ∈ Ti is
// repaired by claiming an edge of T(3-i) that reconnects Ti - e.

#include <cstddef>
#include <vector>

#include "mbrgg/game.hpp"
#include "mbrgg/packing.hpp"

namespace mbrgg {

struct LehmanOptions {
  // Recompute the packing on the contracted board after every Maker move
  // instead of only repairing the broken tree.
  bool repack_each_move = true;
};

class LehmanMaker : public Strategy {
 public:
  explicit LehmanMaker(const Board& board, LehmanOptions opts = {});

  std::string name() const override { return "lehman"; }
  EdgeId next_move(const GameState& state) override;
  void on_opponent_move(const GameState& state, EdgeId e) override;
  std::optional<Certificate> certificate(const GameState& state) override;

  // Times the post-move board (Maker contracted, Breaker removed) failed to
  // pack two spanning trees. Always 0 when the precondition held.
  std::size_t invariant_violations() const { return violations_; }
  std::size_t invariant_checks() const { return checks_; }

 private:
  void repair(const GameState& state, EdgeId broken);
  EdgeId free_tree_edge(const GameState& state) const;
  void repack(const GameState& state, EdgeId just_claimed);
  void set_tree(int k, std::vector<EdgeId> edges);

  const Board* board_;
  LehmanOptions opts_;
  std::vector<char> in_tree_[2];
  std::vector<EdgeId> pending_;  // Breaker claims since the last Maker move
  EdgeId forced_ = kNoEdge;
  std::size_t violations_ = 0, checks_ = 0;
};

// Which side of T - e each vertex lies on, for tree edge list `tree`.
std::vector<char> tree_cut_side(std::size_t n, const Board& board, const std::vector<char>& tree,
                                EdgeId removed);

}  // namespace mbrgg
