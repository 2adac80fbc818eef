#pragma once

// Maker-Breaker engine: boards, (1:b) alternation with Breaker first,
// strategies, win conditions and certificates.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbrgg/graph.hpp"
#include "mbrgg/small_graph.hpp"

namespace mbrgg {

using EdgeId = std::uint32_t;
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

enum class Side : std::uint8_t { none = 0, maker = 1, breaker = 2 };
std::string to_string(Side s);
inline Side opponent(Side s) { return s == Side::maker ? Side::breaker : Side::maker; }

// Edge universe of a game; ids are positions in the sorted edge list.
class Board {
 public:
  Board() = default;
  Board(std::size_t n, std::vector<Edge> edges);
  explicit Board(const Graph& g);
  static Board complete(std::size_t n);

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const Edge& edge(EdgeId id) const { return edges_[id]; }
  std::span<const Edge> edges() const { return edges_; }
  EdgeId id(Vertex u, Vertex v) const;
  std::span<const EdgeId> incident(Vertex v) const {
    return {inc_.data() + off_[v], inc_.data() + off_[v + 1]};
  }
  Vertex other(EdgeId id, Vertex v) const {
    return edges_[id].u == v ? edges_[id].v : edges_[id].u;
  }
  Graph graph() const { return Graph(n_, edges_); }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> off_;
  std::vector<EdgeId> inc_;
};

struct Move {
  std::size_t turn = 0;
  Side side = Side::none;
  EdgeId edge = kNoEdge;
};

class GameState {
 public:
  GameState(const Board& board, int bias = 1);

  const Board& board() const { return *board_; }
  int bias() const { return bias_; }
  Side owner(EdgeId e) const { return owner_[e]; }
  bool unclaimed(EdgeId e) const { return owner_[e] == Side::none; }
  Side to_move() const { return to_move_; }
  bool finished() const { return free_.empty(); }
  std::size_t turn() const { return turn_; }
  std::span<const EdgeId> free_edges() const { return free_; }
  std::size_t free_count() const { return free_.size(); }
  std::span<const Move> transcript() const { return transcript_; }
  std::optional<EdgeId> last_move(Side s) const;

  std::size_t maker_degree(Vertex v) const { return maker_deg_[v]; }
  std::size_t breaker_degree(Vertex v) const { return breaker_deg_[v]; }
  std::size_t free_degree(Vertex v) const { return free_deg_[v]; }

  // Claims for the side to move and advances the turn structure.
  void claim(EdgeId e);
  std::vector<Edge> edges_of(Side s) const;
  Graph graph_of(Side s) const;

 private:
  const Board* board_;
  int bias_;
  std::vector<Side> owner_;
  std::vector<EdgeId> free_;
  std::vector<std::size_t> free_pos_;
  std::vector<std::size_t> maker_deg_, breaker_deg_, free_deg_;
  Side to_move_ = Side::breaker;
  int breaker_left_;
  std::size_t turn_ = 0;
  std::vector<Move> transcript_;
};

struct Certificate {
  enum class Kind { none, spanning_tree, hamilton_cycle, matching, h_copy };
  Kind kind = Kind::none;
  std::vector<Vertex> cycle;   // hamilton_cycle: vertex order
  std::vector<Edge> edges;     // spanning_tree / matching / h_copy edges
  std::vector<Vertex> mapping; // h_copy: image of each H vertex
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // Must return an unclaimed edge of state.board().
  virtual EdgeId next_move(const GameState& state) = 0;
  virtual void on_opponent_move(const GameState& /*state*/, EdgeId /*e*/) {}
  virtual std::optional<Certificate> certificate(const GameState& /*state*/) { return std::nullopt; }
};

class WinCondition {
 public:
  virtual ~WinCondition() = default;
  virtual std::string name() const = 0;
  // Checks Maker's final graph; uses the certificate when given. On failure
  // the reason is written to `report`.
  virtual bool check(const Graph& maker, const Certificate* cert, std::string* report) const = 0;
};

std::unique_ptr<WinCondition> connectivity_win();
std::unique_ptr<WinCondition> hamilton_win();
std::unique_ptr<WinCondition> perfect_matching_win();
std::unique_ptr<WinCondition> h_subgraph_win(const SmallGraph& H);

// Certificate-free fallbacks (exhaustive; small graphs only).
std::optional<std::vector<Vertex>> find_hamilton_cycle(const Graph& g);  // n <= 20
std::optional<std::vector<Edge>> find_perfect_matching(const Graph& g);  // n <= 24
std::optional<std::vector<Vertex>> find_subgraph(const Graph& g, const SmallGraph& H);

struct GameOutcome {
  Side winner = Side::none;
  Graph maker_graph;
  std::vector<Move> transcript;
  std::optional<Certificate> certificate;
  bool certificate_checked = false;
  std::optional<Side> forfeit;  // side that returned an illegal move
  std::string report;
  double max_move_seconds = 0.0;
};

struct PlayOptions {
  double move_budget_seconds = 0.0;  // 0 disables the budget check
};

GameOutcome play(const Board& board, Strategy& maker, Strategy& breaker, int bias,
                 const WinCondition& win, const PlayOptions& opts = {});

// Re-applies a transcript and re-evaluates the win condition.
GameOutcome replay(const Board& board, std::span<const Move> transcript, int bias,
                   const WinCondition& win, const Certificate* cert = nullptr);

// JSON lines {turn, side, edge:[u,v]}.
void write_transcript(std::ostream& os, const Board& board, std::span<const Move> transcript);
std::vector<Move> read_transcript(std::istream& is, const Board& board);

// Claims the lexicographically first free edge.
class FirstFreeStrategy : public Strategy {
 public:
  std::string name() const override { return "first_free"; }
  EdgeId next_move(const GameState& state) override;
};

// Uniformly random free edge; deterministic per seed.
class RandomStrategy : public Strategy {
 public:
  explicit RandomStrategy(Seed seed) : state_(seed ? seed : 1) {}
  std::string name() const override { return "random"; }
  EdgeId next_move(const GameState& state) override;

 private:
  std::uint64_t state_;
};

// Answers a claim inside a live pair with its partner, else defers to fallback.
class PairingStrategy : public Strategy {
 public:
  PairingStrategy(const Board& board, std::vector<std::pair<EdgeId, EdgeId>> pairs,
                  std::unique_ptr<Strategy> fallback);
  std::string name() const override { return "pairing"; }
  EdgeId next_move(const GameState& state) override;
  void on_opponent_move(const GameState& state, EdgeId e) override;
  std::span<const std::pair<EdgeId, EdgeId>> pairs() const { return pairs_; }

 private:
  std::vector<std::pair<EdgeId, EdgeId>> pairs_;
  std::vector<std::int64_t> partner_;
  std::unique_ptr<Strategy> fallback_;
  EdgeId pending_ = kNoEdge;
};

std::unique_ptr<Strategy> pairing_strategy(const Board& board,
                                           std::vector<std::pair<EdgeId, EdgeId>> pairs,
                                           std::unique_ptr<Strategy> fallback);

}  // namespace mbrgg
