#include "mbrgg/game.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace mbrgg {

std::string to_string(Side s) {
  switch (s) {
    case Side::maker: return "maker";
    case Side::breaker: return "breaker";
    default: return "none";
  }
}

Board::Board(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw PreconditionError("Board: vertex out of range");
    e = make_edge(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  off_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++off_[e.u + 1];
    ++off_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) off_[i + 1] += off_[i];
  inc_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(off_.begin(), off_.end() - 1);
  for (EdgeId i = 0; i < edges_.size(); ++i) {
    inc_[fill[edges_[i].u]++] = i;
    inc_[fill[edges_[i].v]++] = i;
  }
}

Board::Board(const Graph& g) : Board(g.order(), std::vector<Edge>(g.edges().begin(), g.edges().end())) {}

Board Board::complete(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) es.push_back({i, j});
  return Board(n, std::move(es));
}

EdgeId Board::id(Vertex u, Vertex v) const {
  Edge e = make_edge(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) return kNoEdge;
  return static_cast<EdgeId>(it - edges_.begin());
}

GameState::GameState(const Board& board, int bias)
    : board_(&board), bias_(bias), breaker_left_(bias) {
  if (bias < 1) throw PreconditionError("GameState: bias must be >= 1");
  owner_.assign(board.size(), Side::none);
  free_.resize(board.size());
  free_pos_.resize(board.size());
  for (EdgeId i = 0; i < board.size(); ++i) {
    free_[i] = i;
    free_pos_[i] = i;
  }
  maker_deg_.assign(board.order(), 0);
  breaker_deg_.assign(board.order(), 0);
  free_deg_.assign(board.order(), 0);
  for (Vertex v = 0; v < board.order(); ++v) free_deg_[v] = board.incident(v).size();
}

std::optional<EdgeId> GameState::last_move(Side s) const {
  for (auto it = transcript_.rbegin(); it != transcript_.rend(); ++it)
    if (it->side == s) return it->edge;
  return std::nullopt;
}

void GameState::claim(EdgeId e) {
  if (e >= owner_.size() || owner_[e] != Side::none)
    throw PreconditionError("GameState::claim: edge not available");
  const Side side = to_move_;
  owner_[e] = side;
  std::size_t pos = free_pos_[e];
  free_[pos] = free_.back();
  free_pos_[free_[pos]] = pos;
  free_.pop_back();
  const Edge& ed = board_->edge(e);
  for (Vertex v : {ed.u, ed.v}) {
    --free_deg_[v];
    ++(side == Side::maker ? maker_deg_ : breaker_deg_)[v];
  }
  transcript_.push_back({turn_, side, e});
  if (side == Side::breaker) {
    if (--breaker_left_ == 0) to_move_ = Side::maker;
  } else {
    to_move_ = Side::breaker;
    breaker_left_ = bias_;
    ++turn_;
  }
}

std::vector<Edge> GameState::edges_of(Side s) const {
  std::vector<Edge> out;
  for (EdgeId i = 0; i < owner_.size(); ++i)
    if (owner_[i] == s) out.push_back(board_->edge(i));
  return out;
}

Graph GameState::graph_of(Side s) const { return Graph(board_->order(), edges_of(s)); }

namespace {

bool spanning_tree_in(const Graph& g, std::span<const Edge> edges) {
  const std::size_t n = g.order();
  if (n == 0) return edges.empty();
  if (edges.size() != n - 1) return false;
  UnionFind uf(n);
  for (const auto& e : edges)
    if (!g.has_edge(e.u, e.v) || !uf.unite(e.u, e.v)) return false;
  return true;
}

class ConnectivityWin : public WinCondition {
 public:
  std::string name() const override { return "connectivity"; }
  bool check(const Graph& maker, const Certificate* cert, std::string* report) const override {
    if (cert && cert->kind == Certificate::Kind::spanning_tree) {
      bool ok = spanning_tree_in(maker, cert->edges);
      if (!ok && report) *report = "spanning-tree certificate does not verify";
      return ok;
    }
    bool ok = is_connected(maker);
    if (!ok && report) *report = "maker graph is disconnected";
    return ok;
  }
};

class HamiltonWin : public WinCondition {
 public:
  std::string name() const override { return "hamilton"; }
  bool check(const Graph& maker, const Certificate* cert, std::string* report) const override {
    if (cert && cert->kind == Certificate::Kind::hamilton_cycle) {
      bool ok = is_hamilton_cycle(maker, cert->cycle);
      if (!ok && report) *report = "hamilton certificate does not verify";
      return ok;
    }
    if (maker.order() > 20) {
      if (report) *report = "no certificate and board too large for exhaustive search";
      return false;
    }
    bool ok = find_hamilton_cycle(maker).has_value();
    if (!ok && report) *report = "maker graph has no hamilton cycle";
    return ok;
  }
};

class MatchingWin : public WinCondition {
 public:
  std::string name() const override { return "perfect_matching"; }
  bool check(const Graph& maker, const Certificate* cert, std::string* report) const override {
    if (cert && cert->kind == Certificate::Kind::matching) {
      bool ok = is_perfect_matching(maker, cert->edges);
      if (!ok && report) *report = "matching certificate does not verify";
      return ok;
    }
    if (maker.order() > 24) {
      if (report) *report = "no certificate and board too large for exhaustive search";
      return false;
    }
    bool ok = find_perfect_matching(maker).has_value();
    if (!ok && report) *report = "maker graph has no perfect matching";
    return ok;
  }
};

class HSubgraphWin : public WinCondition {
 public:
  explicit HSubgraphWin(SmallGraph H) : H_(H) {}
  std::string name() const override { return "h_subgraph"; }
  bool check(const Graph& maker, const Certificate* cert, std::string* report) const override {
    if (cert && cert->kind == Certificate::Kind::h_copy) {
      bool ok = cert->mapping.size() == static_cast<std::size_t>(H_.order());
      for (auto [i, j] : H_.edges())
        ok = ok && maker.has_edge(cert->mapping[i], cert->mapping[j]);
      if (!ok && report) *report = "H-copy certificate does not verify";
      return ok;
    }
    bool ok = find_subgraph(maker, H_).has_value();
    if (!ok && report) *report = "maker graph has no copy of H";
    return ok;
  }

 private:
  SmallGraph H_;
};

}  // namespace

std::unique_ptr<WinCondition> connectivity_win() { return std::make_unique<ConnectivityWin>(); }
std::unique_ptr<WinCondition> hamilton_win() { return std::make_unique<HamiltonWin>(); }
std::unique_ptr<WinCondition> perfect_matching_win() { return std::make_unique<MatchingWin>(); }
std::unique_ptr<WinCondition> h_subgraph_win(const SmallGraph& H) {
  return std::make_unique<HSubgraphWin>(H);
}

std::optional<std::vector<Vertex>> find_hamilton_cycle(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 3 || n > 20) return std::nullopt;
  std::vector<std::uint32_t> nb(n, 0);
  for (const auto& e : g.edges()) {
    nb[e.u] |= 1u << e.v;
    nb[e.v] |= 1u << e.u;
  }
  // ends[mask]: vertices v such that a path from 0 through exactly `mask` ends at v
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  ends[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1) || !ends[mask]) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(ends[mask] >> v & 1)) continue;
      std::uint32_t out = nb[v] & ~mask;
      for (std::size_t w = 0; w < n; ++w)
        if (out >> w & 1) ends[mask | (1u << w)] |= 1u << w;
    }
  }
  std::uint32_t last = ends[full] & nb[0];
  if (!last) return std::nullopt;
  std::vector<Vertex> order;
  std::uint32_t mask = full;
  std::size_t v = static_cast<std::size_t>(std::countr_zero(last));
  while (true) {
    order.push_back(static_cast<Vertex>(v));
    if (mask == 1) break;
    std::uint32_t prev_mask = mask & ~(1u << v);
    std::uint32_t cand = ends[prev_mask] & nb[v];
    v = static_cast<std::size_t>(std::countr_zero(cand));
    mask = prev_mask;
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::optional<std::vector<Edge>> find_perfect_matching(const Graph& g) {
  const std::size_t n = g.order();
  if (n % 2 != 0 || n > 24) return std::nullopt;
  std::unordered_set<std::uint32_t> dead;
  std::vector<Edge> chosen;
  std::function<bool(std::uint32_t)> rec = [&](std::uint32_t used) -> bool {
    if (used == (1u << n) - 1) return true;
    if (dead.count(used)) return false;
    Vertex v = static_cast<Vertex>(std::countr_one(used));
    for (Vertex w : g.neighbors(v)) {
      if (used >> w & 1) continue;
      chosen.push_back(make_edge(v, w));
      if (rec(used | (1u << v) | (1u << w))) return true;
      chosen.pop_back();
    }
    dead.insert(used);
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return chosen;
}

std::optional<std::vector<Vertex>> find_subgraph(const Graph& g, const SmallGraph& H) {
  const int h = H.order();
  if (h == 0) return std::vector<Vertex>{};
  if (static_cast<std::size_t>(h) > g.order()) return std::nullopt;
  std::vector<Vertex> map(h);
  std::vector<char> used(g.order(), 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == h) return true;
    for (Vertex c = 0; c < g.order(); ++c) {
      if (used[c] || g.degree(c) < static_cast<std::size_t>(H.degree(i))) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (H.has_edge(i, j) && !g.has_edge(c, map[j])) ok = false;
      if (!ok) continue;
      used[c] = 1;
      map[i] = c;
      if (rec(i + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map;
}

GameOutcome play(const Board& board, Strategy& maker, Strategy& breaker, int bias,
                 const WinCondition& win, const PlayOptions& opts) {
  GameState state(board, bias);
  GameOutcome out;
  using clock = std::chrono::steady_clock;
  while (!state.finished()) {
    const Side side = state.to_move();
    Strategy& s = side == Side::maker ? maker : breaker;
    Strategy& other = side == Side::maker ? breaker : maker;
    auto t0 = clock::now();
    EdgeId e = s.next_move(state);
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    out.max_move_seconds = std::max(out.max_move_seconds, secs);
    if (e >= board.size() || !state.unclaimed(e)) {
      out.forfeit = side;
      out.report = s.name() + " returned an illegal move";
      break;
    }
    state.claim(e);
    other.on_opponent_move(state, e);
  }
  if (opts.move_budget_seconds > 0 && out.max_move_seconds > opts.move_budget_seconds)
    out.report += (out.report.empty() ? "" : "; ") + std::string("move budget exceeded");
  out.transcript.assign(state.transcript().begin(), state.transcript().end());
  out.maker_graph = state.graph_of(Side::maker);
  if (out.forfeit) {
    out.winner = opponent(*out.forfeit);
    return out;
  }
  out.certificate = maker.certificate(state);
  std::string why;
  bool ok = win.check(out.maker_graph, out.certificate ? &*out.certificate : nullptr, &why);
  out.certificate_checked = out.certificate.has_value();
  out.winner = ok ? Side::maker : Side::breaker;
  if (!ok) out.report += (out.report.empty() ? "" : "; ") + why;
  return out;
}

GameOutcome replay(const Board& board, std::span<const Move> transcript, int bias,
                   const WinCondition& win, const Certificate* cert) {
  GameState state(board, bias);
  GameOutcome out;
  for (const Move& m : transcript) {
    if (m.side != state.to_move() || m.edge >= board.size() || !state.unclaimed(m.edge)) {
      out.forfeit = m.side;
      out.report = "transcript inconsistent at turn " + std::to_string(m.turn);
      out.winner = opponent(m.side);
      return out;
    }
    state.claim(m.edge);
  }
  out.transcript.assign(state.transcript().begin(), state.transcript().end());
  out.maker_graph = state.graph_of(Side::maker);
  std::string why;
  bool ok = win.check(out.maker_graph, cert, &why);
  out.winner = ok ? Side::maker : Side::breaker;
  out.report = why;
  return out;
}

void write_transcript(std::ostream& os, const Board& board, std::span<const Move> transcript) {
  for (const Move& m : transcript) {
    const Edge& e = board.edge(m.edge);
    nlohmann::json j = {{"turn", m.turn}, {"side", to_string(m.side)}, {"edge", {e.u, e.v}}};
    os << j.dump() << "\n";
  }
}

std::vector<Move> read_transcript(std::istream& is, const Board& board) {
  std::vector<Move> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    Move m;
    m.turn = j.at("turn").get<std::size_t>();
    std::string side = j.at("side").get<std::string>();
    m.side = side == "maker" ? Side::maker : Side::breaker;
    m.edge = board.id(j.at("edge").at(0).get<Vertex>(), j.at("edge").at(1).get<Vertex>());
    if (m.edge == kNoEdge) throw PreconditionError("read_transcript: edge not on board");
    out.push_back(m);
  }
  return out;
}

EdgeId FirstFreeStrategy::next_move(const GameState& state) {
  EdgeId best = kNoEdge;
  for (EdgeId e : state.free_edges()) best = std::min(best, e);
  return best;
}

EdgeId RandomStrategy::next_move(const GameState& state) {
  auto free = state.free_edges();
  if (free.empty()) return kNoEdge;
  state_ = mix64(state_);
  return free[state_ % free.size()];
}

PairingStrategy::PairingStrategy(const Board& board, std::vector<std::pair<EdgeId, EdgeId>> pairs,
                                 std::unique_ptr<Strategy> fallback)
    : pairs_(std::move(pairs)), partner_(board.size(), -1), fallback_(std::move(fallback)) {
  for (auto [a, b] : pairs_) {
    if (a >= board.size() || b >= board.size() || a == b || partner_[a] >= 0 || partner_[b] >= 0)
      throw PreconditionError("pairing_strategy: pairs must be disjoint edges of the board");
    partner_[a] = b;
    partner_[b] = a;
  }
}

void PairingStrategy::on_opponent_move(const GameState& state, EdgeId e) {
  if (partner_[e] >= 0) {
    EdgeId p = static_cast<EdgeId>(partner_[e]);
    if (state.unclaimed(p)) pending_ = p;
  }
  if (fallback_) fallback_->on_opponent_move(state, e);
}

EdgeId PairingStrategy::next_move(const GameState& state) {
  if (pending_ != kNoEdge && state.unclaimed(pending_)) {
    EdgeId e = pending_;
    pending_ = kNoEdge;
    return e;
  }
  pending_ = kNoEdge;
  if (fallback_) return fallback_->next_move(state);
  for (EdgeId e : state.free_edges()) return e;
  return kNoEdge;
}

std::unique_ptr<Strategy> pairing_strategy(const Board& board,
                                           std::vector<std::pair<EdgeId, EdgeId>> pairs,
                                           std::unique_ptr<Strategy> fallback) {
  return std::make_unique<PairingStrategy>(board, std::move(pairs), std::move(fallback));
}

}  // namespace mbrgg
