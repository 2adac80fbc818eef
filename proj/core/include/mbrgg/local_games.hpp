#pragma once

// Local Maker games played on a subset of a global board: the clique path
// game, the (a,b) path and matching games, pairings and half-star games.
// All vertex ids are global board vertices.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbrgg/game.hpp"
#include "mbrgg/solver.hpp"

namespace mbrgg {

class LocalGame {
 public:
  virtual ~LocalGame() = default;
  virtual std::string name() const = 0;
  // Global edge ids owned by this game.
  virtual const std::vector<EdgeId>& board() const = 0;
  // Maker's answer to a Breaker claim inside board(); kNoEdge if nothing is free.
  virtual EdgeId respond(const GameState& state, EdgeId breaker_edge) = 0;
  // An extra Maker move inside board(); kNoEdge if nothing is free.
  virtual EdgeId free_move(const GameState& state) = 0;
  virtual std::unique_ptr<LocalGame> clone() const = 0;
  // Summary of internal state beyond edge ownership (for search memoisation).
  virtual std::uint64_t fingerprint() const { return 0; }
};

// Edges of the board between the listed vertices (pairs absent from the board are skipped).
std::vector<EdgeId> edges_among(const Board& board, const std::vector<Vertex>& vs);
std::vector<EdgeId> edges_between(const Board& board, const std::vector<Vertex>& a,
                                  const std::vector<Vertex>& b);

// Maker answers a claim in a pair with its partner.
class PairingGame : public LocalGame {
 public:
  PairingGame(std::string label, std::vector<std::pair<EdgeId, EdgeId>> pairs);
  std::string name() const override { return label_; }
  const std::vector<EdgeId>& board() const override { return edges_; }
  EdgeId respond(const GameState& state, EdgeId e) override;
  EdgeId free_move(const GameState& state) override;
  std::unique_ptr<LocalGame> clone() const override { return std::make_unique<PairingGame>(*this); }
  const std::vector<std::pair<EdgeId, EdgeId>>& pairs() const { return pairs_; }

 private:
  std::string label_;
  std::vector<std::pair<EdgeId, EdgeId>> pairs_;
  std::vector<EdgeId> edges_;
};

// Edges from `center` to a leaf set: a Breaker claim is answered by another
// edge of the same star, so Maker ends with at least half of them.
class StarGame : public LocalGame {
 public:
  StarGame(const Board& board, Vertex center, const std::vector<Vertex>& leaves);
  std::string name() const override { return "star"; }
  const std::vector<EdgeId>& board() const override { return edges_; }
  EdgeId respond(const GameState& state, EdgeId e) override;
  EdgeId free_move(const GameState& state) override;
  std::unique_ptr<LocalGame> clone() const override { return std::make_unique<StarGame>(*this); }
  Vertex center() const { return center_; }

 private:
  Vertex center_;
  std::vector<EdgeId> edges_;
};

// Maker aims for a path of length s-2 in the clique on `vertices` (s >= 3).
// Level i answers Breaker claims at vertices[i] with another edge at
// vertices[i]; the last four (or three) vertices are played by exact search.
class CliquePathGame : public LocalGame {
 public:
  CliquePathGame(const Board& board, std::vector<Vertex> vertices);
  std::string name() const override { return "clique_path"; }
  const std::vector<EdgeId>& board() const override { return edges_; }
  EdgeId respond(const GameState& state, EdgeId e) override;
  EdgeId free_move(const GameState& state) override;
  std::unique_ptr<LocalGame> clone() const override {
    return std::make_unique<CliquePathGame>(*this);
  }
  const std::vector<Vertex>& vertices() const { return vs_; }

 private:
  EdgeId base_move(const GameState& state) const;
  EdgeId any_free(const GameState& state) const;

  const Board* board_;
  std::vector<Vertex> vs_;
  std::vector<EdgeId> edges_;
  std::vector<int> level_of_;  // per board() entry; -1 marks the base clique
  int base_start_ = 0;
};

// Path of length |vs|-2 inside Maker's graph on vs, built from the clique
// path insertion argument, with exhaustive search as fallback for |vs| <= 9.
std::optional<std::vector<Vertex>> clique_path_extract(const Graph& maker,
                                                       const std::vector<Vertex>& vs);

// Rule set of an (a,b) game: which (a,b) pairs have a strategy.
bool ab_path_supported(std::size_t a, std::size_t b);
bool ab_matching_supported(std::size_t a, std::size_t b);

// A and B as in G_{a,b}: A a clique, every A-B pair an edge, B independent.
class ABPathGame : public LocalGame {
 public:
  ABPathGame(const Board& board, std::vector<Vertex> A, std::vector<Vertex> B);
  std::string name() const override { return "ab_path"; }
  const std::vector<EdgeId>& board() const override { return edges_; }
  EdgeId respond(const GameState& state, EdgeId e) override;
  EdgeId free_move(const GameState& state) override;
  std::unique_ptr<LocalGame> clone() const override;
  std::uint64_t fingerprint() const override;

 private:
  friend class ABMatchingGame;
  EdgeId id(Vertex u, Vertex v) const { return board_->id(u, v); }
  EdgeId pair_reply(const GameState& state, EdgeId e) const;
  EdgeId pair_free_move(const GameState& state) const;
  EdgeId star_reply(const GameState& state, EdgeId e) const;
  EdgeId respond_two(const GameState& state, EdgeId e);
  EdgeId free_two(const GameState& state);
  void add_pair(Vertex a1, Vertex b1, Vertex a2, Vertex b2);
  Vertex other_b(std::initializer_list<Vertex> used, std::size_t skip = 0) const;

  enum class Mode { one, two, three, many };
  const Board* board_;
  std::vector<Vertex> A_, B_;
  std::vector<EdgeId> edges_;
  Mode mode_;
  std::vector<std::int64_t> partner_;  // flat pair list: e0, f0, e1, f1, ...
  std::unique_ptr<CliquePathGame> clique_;
  int phase_ = 0;  // a = 2 case analysis
};

// Saturating matching of A in G_{a,b}.
class ABMatchingGame : public LocalGame {
 public:
  ABMatchingGame(const Board& board, std::vector<Vertex> A, std::vector<Vertex> B);
  std::string name() const override { return "ab_matching"; }
  const std::vector<EdgeId>& board() const override { return edges_; }
  EdgeId respond(const GameState& state, EdgeId e) override;
  EdgeId free_move(const GameState& state) override;
  std::unique_ptr<LocalGame> clone() const override;
  std::uint64_t fingerprint() const override { return phase_; }

 private:
  EdgeId star_reply(const GameState& state, EdgeId e) const;
  EdgeId any_free(const GameState& state) const;

  enum class Mode { single, two, many };
  const Board* board_;
  std::vector<Vertex> A_, B_;
  std::vector<EdgeId> edges_;
  Mode mode_;
  std::unique_ptr<CliquePathGame> clique_;
  EdgeId pair_a_ = kNoEdge, pair_b_ = kNoEdge;
  int phase_ = 0;
};

// One B-to-B path covering A, or two vertex-disjoint ones, in Maker's graph.
using PathSet = std::vector<std::vector<Vertex>>;
std::optional<PathSet> ab_path_verify(const Graph& maker, const std::vector<Vertex>& A,
                                      const std::vector<Vertex>& B);
// Matching edges saturating A using only A-A and A-B Maker edges.
std::optional<std::vector<Edge>> ab_matching_verify(const Graph& maker,
                                                    const std::vector<Vertex>& A,
                                                    const std::vector<Vertex>& B);

// Presents a LocalGame as a full-board Maker strategy.
class LocalGameStrategy : public Strategy {
 public:
  explicit LocalGameStrategy(std::unique_ptr<LocalGame> game) : game_(std::move(game)) {}
  std::string name() const override { return game_->name(); }
  EdgeId next_move(const GameState& state) override;
  void on_opponent_move(const GameState&, EdgeId e) override { last_ = e; }
  std::unique_ptr<LocalGameStrategy> clone() const {
    auto s = std::make_unique<LocalGameStrategy>(game_->clone());
    s->last_ = last_;
    return s;
  }
  std::uint64_t fingerprint() const { return game_->fingerprint(); }

 private:
  std::unique_ptr<LocalGame> game_;
  EdgeId last_ = kNoEdge;
};

struct ExhaustiveReport {
  bool maker_always_wins = false;
  std::size_t lines = 0;        // distinct positions explored
  std::vector<Move> counterexample;
};

// Walks every Breaker line against a fixed Maker strategy; `win` is
// evaluated on Maker's final graph. Positions are memoised on
// (ownership, strategy fingerprint).
ExhaustiveReport exhaustive_breaker(const Board& board, const LocalGameStrategy& maker,
                                    const std::function<bool(const Graph&)>& win);

}  // namespace mbrgg
