#include "mbrgg/local_games.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mbrgg {

namespace {

EdgeId first_free(const GameState& state, const std::vector<EdgeId>& edges) {
  for (EdgeId e : edges)
    if (state.unclaimed(e)) return e;
  return kNoEdge;
}

bool maker_has(const Graph& g, Vertex u, Vertex v) { return g.has_edge(u, v); }

}  // namespace

std::vector<EdgeId> edges_among(const Board& board, const std::vector<Vertex>& vs) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      EdgeId e = board.id(vs[i], vs[j]);
      if (e != kNoEdge) out.push_back(e);
    }
  return out;
}

std::vector<EdgeId> edges_between(const Board& board, const std::vector<Vertex>& a,
                                  const std::vector<Vertex>& b) {
  std::vector<EdgeId> out;
  for (Vertex u : a)
    for (Vertex v : b) {
      EdgeId e = board.id(u, v);
      if (e != kNoEdge) out.push_back(e);
    }
  return out;
}

// ---------------------------------------------------------------- pairings

PairingGame::PairingGame(std::string label, std::vector<std::pair<EdgeId, EdgeId>> pairs)
    : label_(std::move(label)), pairs_(std::move(pairs)) {
  for (auto [a, b] : pairs_) {
    if (a == kNoEdge || b == kNoEdge || a == b)
      throw PreconditionError("pairing: pair members must be two distinct board edges");
    edges_.push_back(a);
    edges_.push_back(b);
  }
  auto sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError("pairing: pairs overlap");
}

EdgeId PairingGame::respond(const GameState& state, EdgeId e) {
  for (auto [a, b] : pairs_) {
    if (a == e && state.unclaimed(b)) return b;
    if (b == e && state.unclaimed(a)) return a;
  }
  return free_move(state);
}

EdgeId PairingGame::free_move(const GameState& state) {
  for (auto [a, b] : pairs_) {
    if (state.owner(a) == Side::maker || state.owner(b) == Side::maker) continue;
    if (state.unclaimed(a)) return a;
    if (state.unclaimed(b)) return b;
  }
  return first_free(state, edges_);
}

// ---------------------------------------------------------------- stars

StarGame::StarGame(const Board& board, Vertex center, const std::vector<Vertex>& leaves)
    : center_(center), edges_(edges_between(board, {center}, leaves)) {}

EdgeId StarGame::respond(const GameState& state, EdgeId) { return first_free(state, edges_); }
EdgeId StarGame::free_move(const GameState& state) { return first_free(state, edges_); }

// ---------------------------------------------------------------- clique path

namespace {
const std::unique_ptr<ExactSolver>& base_solver(int k) {
  static const std::unique_ptr<ExactSolver> s3 = path_solver(1);
  static const std::unique_ptr<ExactSolver> s4 = path_solver(2);
  return k == 3 ? s3 : s4;
}
}  // namespace

CliquePathGame::CliquePathGame(const Board& board, std::vector<Vertex> vertices)
    : board_(&board), vs_(std::move(vertices)) {
  const int s = static_cast<int>(vs_.size());
  if (s < 3) throw PreconditionError("clique_path: needs at least 3 vertices");
  base_start_ = s >= 4 ? s - 4 : 0;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      EdgeId e = board.id(vs_[i], vs_[j]);
      if (e == kNoEdge) throw PreconditionError("clique_path: vertices must span a clique");
      edges_.push_back(e);
      level_of_.push_back(i < base_start_ ? i : -1);
    }
}

EdgeId CliquePathGame::any_free(const GameState& state) const {
  return first_free(state, edges_);
}

EdgeId CliquePathGame::base_move(const GameState& state) const {
  const int k = static_cast<int>(vs_.size()) - base_start_;
  SolverPosition pos{k, 0, 0, 0, Side::maker};
  std::vector<EdgeId> by_pair(pair_count(k), kNoEdge);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      EdgeId e = board_->id(vs_[base_start_ + i], vs_[base_start_ + j]);
      int p = pair_index(i, j);
      by_pair[p] = e;
      pos.host |= 1u << p;
      if (state.owner(e) == Side::maker) pos.maker |= 1u << p;
      if (state.owner(e) == Side::breaker) pos.breaker |= 1u << p;
    }
  if (!pos.free_mask()) return kNoEdge;
  if (auto p = base_solver(k)->winning_maker_move(pos)) return by_pair[*p];
  for (int p = 0; p < pair_count(k); ++p)
    if (pos.free_mask() >> p & 1) return by_pair[p];
  return kNoEdge;
}

EdgeId CliquePathGame::respond(const GameState& state, EdgeId e) {
  auto it = std::find(edges_.begin(), edges_.end(), e);
  if (it == edges_.end()) return free_move(state);
  const int level = level_of_[it - edges_.begin()];
  if (level < 0) {
    EdgeId m = base_move(state);
    return m != kNoEdge ? m : any_free(state);
  }
  for (std::size_t j = level + 1; j < vs_.size(); ++j) {
    EdgeId f = board_->id(vs_[level], vs_[j]);
    if (state.unclaimed(f)) return f;
  }
  return free_move(state);  // claimed arbitrarily and forgotten
}

EdgeId CliquePathGame::free_move(const GameState& state) {
  EdgeId m = base_move(state);
  return m != kNoEdge ? m : any_free(state);
}

namespace {

// Longest-path search restricted to `vs`: a path with at least `need` vertices.
std::optional<std::vector<Vertex>> search_path(const Graph& g, const std::vector<Vertex>& vs,
                                               std::size_t need) {
  const std::size_t k = vs.size();
  std::vector<std::vector<int>> adj(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && g.has_edge(vs[i], vs[j])) adj[i].push_back(static_cast<int>(j));
  std::vector<int> path;
  std::vector<char> used(k, 0);
  auto rec = [&](auto&& self, int v) -> bool {
    if (path.size() >= need) return true;
    for (int w : adj[v])
      if (!used[w]) {
        used[w] = 1;
        path.push_back(w);
        if (self(self, w)) return true;
        path.pop_back();
        used[w] = 0;
      }
    return false;
  };
  for (std::size_t s = 0; s < k; ++s) {
    path = {static_cast<int>(s)};
    std::fill(used.begin(), used.end(), 0);
    used[s] = 1;
    if (rec(rec, static_cast<int>(s))) {
      std::vector<Vertex> out;
      for (int i : path) out.push_back(vs[i]);
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Vertex>> clique_path_extract(const Graph& maker,
                                                       const std::vector<Vertex>& vs) {
  const std::size_t s = vs.size();
  if (s <= 1) return std::vector<Vertex>(vs.begin(), vs.end());
  if (s <= 9) return search_path(maker, vs, s - 1);
  const std::size_t base = s - 4;
  std::vector<Vertex> tail(vs.begin() + base, vs.end());
  auto P = search_path(maker, tail, 3);
  if (!P) return std::nullopt;
  std::vector<Vertex> path = *P;
  for (std::size_t lvl = base; lvl-- > 0;) {
    const Vertex u = vs[lvl];
    const std::size_t W = s - lvl - 1;
    auto adj = [&](Vertex x) { return maker_has(maker, u, x); };
    if (path.size() == W) continue;  // already covers all of W
    if (adj(path.front())) {
      path.insert(path.begin(), u);
      continue;
    }
    if (adj(path.back())) {
      path.push_back(u);
      continue;
    }
    bool done = false;
    for (std::size_t i = 0; i + 1 < path.size() && !done; ++i)
      if (adj(path[i]) && adj(path[i + 1])) {
        path.insert(path.begin() + i + 1, u);
        done = true;
      }
    if (done) continue;
    // The single vertex of W missed by the path.
    std::vector<char> on(maker.order(), 0);
    for (Vertex x : path) on[x] = 1;
    Vertex w = u;
    for (std::size_t j = lvl + 1; j < s; ++j)
      if (!on[vs[j]]) w = vs[j];
    if (w != u && adj(w) && path.size() >= 2 && adj(path[path.size() - 2])) {
      path.back() = u;
      path.push_back(w);
      continue;
    }
    if (w != u && adj(w) && path.size() >= 2 && adj(path[1])) {
      path.front() = u;
      path.insert(path.begin(), w);
      continue;
    }
    return std::nullopt;
  }
  return path;
}

// ---------------------------------------------------------------- (a,b) path

bool ab_path_supported(std::size_t a, std::size_t b) {
  return a >= 1 && (b >= 6 || (a == 3 && b >= 5) || (a <= 2 && b >= 4));
}

bool ab_matching_supported(std::size_t a, std::size_t b) {
  return a >= 1 && (b >= 4 || ((a == 2 || a == 3) && b >= 3) || (a == 1 && b >= 2));
}

namespace {
void require_gab(const Board& board, const std::vector<Vertex>& A, const std::vector<Vertex>& B) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = i + 1; j < A.size(); ++j)
      if (board.id(A[i], A[j]) == kNoEdge) throw PreconditionError("(a,b) game: A is not a clique");
    for (Vertex b : B)
      if (board.id(A[i], b) == kNoEdge) throw PreconditionError("(a,b) game: missing A-B edge");
  }
}
}  // namespace

ABPathGame::ABPathGame(const Board& board, std::vector<Vertex> A, std::vector<Vertex> B)
    : board_(&board), A_(std::move(A)), B_(std::move(B)) {
  const std::size_t a = A_.size(), b = B_.size();
  if (!ab_path_supported(a, b))
    throw PreconditionError("ab_path: unsupported (a,b) = (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
  require_gab(board, A_, B_);
  edges_ = edges_among(board, A_);
  auto ab = edges_between(board, A_, B_);
  edges_.insert(edges_.end(), ab.begin(), ab.end());
  if (a == 1) {
    mode_ = Mode::one;
    add_pair(A_[0], B_[0], A_[0], B_[1]);
    add_pair(A_[0], B_[2], A_[0], B_[3]);
  } else if (a == 2) {
    mode_ = Mode::two;
  } else if (a == 3) {
    mode_ = Mode::three;
    for (int i = 0; i < 3; ++i) {
      add_pair(A_[i], B_[0], A_[i], B_[1]);
      add_pair(A_[i], B_[2], A_[i], B_[3]);
    }
    add_pair(A_[0], B_[4], A_[1], B_[4]);
    add_pair(A_[0], A_[1], A_[0], A_[2]);
    add_pair(A_[1], A_[2], A_[2], B_[4]);
  } else {
    mode_ = Mode::many;
    clique_ = std::make_unique<CliquePathGame>(board, A_);
  }
}

std::unique_ptr<LocalGame> ABPathGame::clone() const {
  auto g = std::unique_ptr<ABPathGame>(new ABPathGame(*board_, A_, B_));
  g->partner_ = partner_;
  g->phase_ = phase_;
  return g;
}

std::uint64_t ABPathGame::fingerprint() const {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(phase_));
  for (std::size_t i = 0; i + 1 < partner_.size(); i += 2)
    h = mix64(h ^ (static_cast<std::uint64_t>(partner_[i]) << 32 ^
                   static_cast<std::uint64_t>(partner_[i + 1])));
  return h;
}

// partner_ stores pairs flat: [e0, f0, e1, f1, ...].
void ABPathGame::add_pair(Vertex a1, Vertex b1, Vertex a2, Vertex b2) {
  partner_.push_back(id(a1, b1));
  partner_.push_back(id(a2, b2));
}

EdgeId ABPathGame::pair_reply(const GameState& state, EdgeId e) const {
  for (std::size_t i = 0; i + 1 < partner_.size(); i += 2) {
    EdgeId x = static_cast<EdgeId>(partner_[i]), y = static_cast<EdgeId>(partner_[i + 1]);
    if (x == e && state.unclaimed(y)) return y;
    if (y == e && state.unclaimed(x)) return x;
  }
  return kNoEdge;
}

EdgeId ABPathGame::pair_free_move(const GameState& state) const {
  for (std::size_t i = 0; i + 1 < partner_.size(); i += 2) {
    EdgeId x = static_cast<EdgeId>(partner_[i]), y = static_cast<EdgeId>(partner_[i + 1]);
    if (state.owner(x) == Side::maker || state.owner(y) == Side::maker) continue;
    if (state.unclaimed(x)) return x;
    if (state.unclaimed(y)) return y;
  }
  return first_free(state, edges_);
}

EdgeId ABPathGame::star_reply(const GameState& state, EdgeId e) const {
  const Edge& ed = board_->edge(e);
  Vertex u = std::find(A_.begin(), A_.end(), ed.u) != A_.end() ? ed.u : ed.v;
  for (Vertex b : B_) {
    EdgeId f = id(u, b);
    if (state.unclaimed(f)) return f;
  }
  return kNoEdge;
}

Vertex ABPathGame::other_b(std::initializer_list<Vertex> used, std::size_t skip) const {
  for (Vertex b : B_) {
    if (std::find(used.begin(), used.end(), b) != used.end()) continue;
    if (skip-- == 0) return b;
  }
  throw std::logic_error("ab_path: B exhausted");
}

EdgeId ABPathGame::respond_two(const GameState& state, EdgeId e) {
  const Vertex a1 = A_[0], a2 = A_[1];
  const Edge& ed = board_->edge(e);
  auto a_of = [&](const Edge& x) { return x.u == a1 || x.u == a2 ? x.u : x.v; };
  auto b_of = [&](const Edge& x) { return x.u == a1 || x.u == a2 ? x.v : x.u; };
  const EdgeId a12 = id(a1, a2);
  switch (phase_) {
    case 0:
      if (e == a12) {
        phase_ = 2;  // Maker holds a1-B[0] from now on
        return id(a1, B_[0]);
      } else {
        Vertex x1 = a_of(ed), x2 = x1 == a1 ? a2 : a1, y1 = b_of(ed);
        Vertex b2 = other_b({y1}), b3 = other_b({y1}, 1), b4 = other_b({y1}, 2);
        add_pair(x1, b3, x1, b4);
        add_pair(x2, y1, x2, b2);
        phase_ = 9;
        return a12;
      }
    case 1: {  // Maker already holds a1a2 from a free move
      Vertex x1 = a_of(ed), x2 = x1 == a1 ? a2 : a1, y1 = b_of(ed);
      Vertex b2 = other_b({y1}), b3 = other_b({y1}, 1), b4 = other_b({y1}, 2);
      add_pair(x1, b3, x1, b4);
      add_pair(x2, y1, x2, b2);
      phase_ = 9;
      return pair_free_move(state);
    }
    case 2: {
      const Vertex b1 = B_[0];
      Vertex x = a_of(ed), bi = b_of(ed);
      phase_ = 9;
      if (x == a1) {  // (2-a)
        Vertex b3 = other_b({b1, bi}), b4 = other_b({b1, bi}, 1);
        add_pair(a1, b3, a1, b4);
        add_pair(a2, b3, a2, b4);
        return id(a2, bi);
      }
      if (bi == b1) {  // (2-b)
        Vertex b2 = other_b({b1}), b3 = other_b({b1, b2}), b4 = other_b({b1, b2}, 1);
        add_pair(a1, b3, a1, b4);
        add_pair(a2, b3, a2, b4);
        return id(a2, b2);
      }
      // (2-c)
      Vertex b2 = bi, b3 = other_b({b1, b2}), b4 = other_b({b1, b2}, 1);
      add_pair(a1, b2, a1, b4);
      add_pair(a2, b1, a2, b4);
      return id(a2, b3);
    }
    default: {
      EdgeId r = pair_reply(state, e);
      return r != kNoEdge ? r : pair_free_move(state);
    }
  }
}

EdgeId ABPathGame::free_two(const GameState& state) {
  const Vertex a1 = A_[0], a2 = A_[1];
  switch (phase_) {
    case 0:
      if (state.unclaimed(id(a1, a2))) {
        phase_ = 1;
        return id(a1, a2);
      }
      break;
    case 1:
      phase_ = 9;
      add_pair(a2, B_[1], a2, B_[2]);
      return id(a1, B_[0]);
    case 2: {
      const Vertex b1 = B_[0], b2 = other_b({b1}), b3 = other_b({b1, b2}),
                   b4 = other_b({b1, b2}, 1);
      phase_ = 9;
      add_pair(a1, b3, a1, b4);
      add_pair(a2, b3, a2, b4);
      return id(a2, b2);
    }
    default:
      break;
  }
  return pair_free_move(state);
}

EdgeId ABPathGame::respond(const GameState& state, EdgeId e) {
  EdgeId r = kNoEdge;
  switch (mode_) {
    case Mode::one:
    case Mode::three:
      r = pair_reply(state, e);
      break;
    case Mode::two:
      r = respond_two(state, e);
      break;
    case Mode::many: {
      const Edge& ed = board_->edge(e);
      bool in_a = std::find(A_.begin(), A_.end(), ed.u) != A_.end() &&
                  std::find(A_.begin(), A_.end(), ed.v) != A_.end();
      r = in_a ? clique_->respond(state, e) : star_reply(state, e);
      break;
    }
  }
  if (r == kNoEdge || !state.unclaimed(r)) r = free_move(state);
  return r;
}

EdgeId ABPathGame::free_move(const GameState& state) {
  EdgeId r = kNoEdge;
  switch (mode_) {
    case Mode::one:
    case Mode::three:
      r = pair_free_move(state);
      break;
    case Mode::two:
      r = free_two(state);
      break;
    case Mode::many:
      r = clique_->free_move(state);
      break;
  }
  if (r == kNoEdge || !state.unclaimed(r)) r = first_free(state, edges_);
  return r;
}

// ---------------------------------------------------------------- (a,b) matching

ABMatchingGame::ABMatchingGame(const Board& board, std::vector<Vertex> A, std::vector<Vertex> B)
    : board_(&board), A_(std::move(A)), B_(std::move(B)) {
  const std::size_t a = A_.size(), b = B_.size();
  if (!ab_matching_supported(a, b))
    throw PreconditionError("ab_matching: unsupported (a,b) = (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
  require_gab(board, A_, B_);
  edges_ = edges_among(board, A_);
  auto ab = edges_between(board, A_, B_);
  edges_.insert(edges_.end(), ab.begin(), ab.end());
  if (a == 1) {
    mode_ = Mode::single;
    pair_a_ = board.id(A_[0], B_[0]);
    pair_b_ = board.id(A_[0], B_[1]);
  } else if (a == 2) {
    mode_ = Mode::two;
  } else {
    mode_ = Mode::many;
    clique_ = std::make_unique<CliquePathGame>(board, A_);
  }
}

std::unique_ptr<LocalGame> ABMatchingGame::clone() const {
  auto g = std::unique_ptr<ABMatchingGame>(new ABMatchingGame(*board_, A_, B_));
  g->pair_a_ = pair_a_;
  g->pair_b_ = pair_b_;
  g->phase_ = phase_;
  return g;
}

EdgeId ABMatchingGame::any_free(const GameState& state) const { return first_free(state, edges_); }

EdgeId ABMatchingGame::star_reply(const GameState& state, EdgeId e) const {
  const Edge& ed = board_->edge(e);
  Vertex u = std::find(A_.begin(), A_.end(), ed.u) != A_.end() ? ed.u : ed.v;
  for (Vertex b : B_) {
    EdgeId f = board_->id(u, b);
    if (state.unclaimed(f)) return f;
  }
  return kNoEdge;
}

EdgeId ABMatchingGame::respond(const GameState& state, EdgeId e) {
  EdgeId r = kNoEdge;
  switch (mode_) {
    case Mode::single:
      if (e == pair_a_) r = pair_b_;
      if (e == pair_b_) r = pair_a_;
      break;
    case Mode::two: {
      const EdgeId a12 = board_->id(A_[0], A_[1]);
      if (phase_ == 0) {
        phase_ = 9;
        if (e != a12) {
          r = a12;
        } else {
          pair_a_ = board_->id(A_[1], B_[1]);
          pair_b_ = board_->id(A_[1], B_[2]);
          r = board_->id(A_[0], B_[0]);
        }
      } else if (pair_a_ != kNoEdge) {
        if (e == pair_a_) r = pair_b_;
        if (e == pair_b_) r = pair_a_;
      }
      break;
    }
    case Mode::many: {
      const Edge& ed = board_->edge(e);
      bool in_a = std::find(A_.begin(), A_.end(), ed.u) != A_.end() &&
                  std::find(A_.begin(), A_.end(), ed.v) != A_.end();
      r = in_a ? clique_->respond(state, e) : star_reply(state, e);
      break;
    }
  }
  if (r == kNoEdge || !state.unclaimed(r)) r = free_move(state);
  return r;
}

EdgeId ABMatchingGame::free_move(const GameState& state) {
  EdgeId r = kNoEdge;
  switch (mode_) {
    case Mode::single:
      if (state.owner(pair_a_) != Side::maker && state.owner(pair_b_) != Side::maker)
        r = state.unclaimed(pair_a_) ? pair_a_ : pair_b_;
      break;
    case Mode::two:
      if (phase_ == 0) {
        phase_ = 9;  // holding a1a2 wins outright
        r = board_->id(A_[0], A_[1]);
      } else if (pair_a_ != kNoEdge && state.owner(pair_a_) != Side::maker &&
                 state.owner(pair_b_) != Side::maker) {
        r = state.unclaimed(pair_a_) ? pair_a_ : pair_b_;
      }
      break;
    case Mode::many:
      r = clique_->free_move(state);
      break;
  }
  if (r == kNoEdge || !state.unclaimed(r)) r = any_free(state);
  return r;
}

// ---------------------------------------------------------------- verifiers

namespace {

// All simple B-to-B paths inside A ∪ B (at least one interior vertex).
struct PathRecord {
  std::uint32_t amask = 0;
  std::uint32_t vmask = 0;
  std::vector<int> path;
};

std::optional<PathSet> brute_paths(const Graph& g, const std::vector<Vertex>& A,
                                   const std::vector<Vertex>& B, std::size_t cap) {
  std::vector<Vertex> vs(A);
  vs.insert(vs.end(), B.begin(), B.end());
  const int a = static_cast<int>(A.size()), k = static_cast<int>(vs.size());
  const std::uint32_t full = (1u << a) - 1;
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && !(i >= a && j >= a) && g.has_edge(vs[i], vs[j])) adj[i].push_back(j);
  std::map<std::uint32_t, std::vector<PathRecord>> by_amask;
  std::size_t count = 0;
  std::vector<int> path;
  std::optional<PathSet> found;
  auto to_vertices = [&](const std::vector<int>& p) {
    std::vector<Vertex> out;
    for (int i : p) out.push_back(vs[i]);
    return out;
  };
  auto rec = [&](auto&& self, int v, std::uint32_t vmask, std::uint32_t amask) -> void {
    if (found || count > cap) return;
    for (int w : adj[v]) {
      if (vmask >> w & 1) continue;
      path.push_back(w);
      if (w >= a) {
        if (path.size() >= 3 && path.front() < w) {
          ++count;
          if (amask == full) {
            found = PathSet{to_vertices(path)};
          } else if (amask) {
            by_amask[amask].push_back({amask, vmask | (1u << w), path});
          }
        }
        // B vertices may also be interior.
        self(self, w, vmask | (1u << w), amask);
      } else {
        self(self, w, vmask | (1u << w), amask | (1u << w));
      }
      path.pop_back();
      if (found) return;
    }
  };
  for (int s = a; s < k && !found; ++s) {
    path = {s};
    rec(rec, s, 1u << s, 0);
  }
  if (found) return found;
  for (auto& [m1, l1] : by_amask)
    for (auto& [m2, l2] : by_amask) {
      if ((m1 | m2) != full || m1 > m2) continue;
      for (const auto& p1 : l1)
        for (const auto& p2 : l2)
          if (!(p1.vmask & p2.vmask)) return PathSet{to_vertices(p1.path), to_vertices(p2.path)};
    }
  return std::nullopt;
}

std::optional<PathSet> constructive_paths(const Graph& g, const std::vector<Vertex>& A,
                                          const std::vector<Vertex>& B) {
  auto P = clique_path_extract(g, A);
  if (!P) return std::nullopt;
  std::vector<char> on(g.order(), 0);
  for (Vertex x : *P) on[x] = 1;
  std::optional<Vertex> missing;
  for (Vertex x : A)
    if (!on[x]) missing = x;
  auto bnb = [&](Vertex x) {
    std::vector<Vertex> out;
    for (Vertex b : B)
      if (g.has_edge(x, b)) out.push_back(b);
    return out;
  };
  const auto n1 = bnb(P->front()), n2 = bnb(P->back());
  for (Vertex b1 : n1)
    for (Vertex b2 : n2) {
      if (b1 == b2) continue;
      std::vector<Vertex> main{b1};
      main.insert(main.end(), P->begin(), P->end());
      main.push_back(b2);
      if (!missing) return PathSet{main};
      std::vector<Vertex> rest;
      for (Vertex b : bnb(*missing))
        if (b != b1 && b != b2) rest.push_back(b);
      if (rest.size() >= 2) return PathSet{main, {rest[0], *missing, rest[1]}};
      if (rest.size() == 1 && g.has_edge(b2, *missing)) {
        main.push_back(*missing);
        main.push_back(rest[0]);
        return PathSet{main};
      }
    }
  return std::nullopt;
}

}  // namespace

std::optional<PathSet> ab_path_verify(const Graph& maker, const std::vector<Vertex>& A,
                                      const std::vector<Vertex>& B) {
  if (A.size() >= 4) {
    if (auto c = constructive_paths(maker, A, B)) return c;
  }
  if (A.size() + B.size() <= 16 && A.size() <= 12) return brute_paths(maker, A, B, 2'000'000);
  return std::nullopt;
}

std::optional<std::vector<Edge>> ab_matching_verify(const Graph& maker,
                                                    const std::vector<Vertex>& A,
                                                    const std::vector<Vertex>& B) {
  std::unordered_map<Vertex, int> role;  // 0 = A, 1 = B
  for (Vertex a : A) role[a] = 0;
  for (Vertex b : B) role.emplace(b, 1);
  std::unordered_map<Vertex, bool> used;
  std::vector<Edge> out;
  std::size_t budget = 5'000'000;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (budget-- == 0) return false;
    while (i < A.size() && used[A[i]]) ++i;
    if (i == A.size()) return true;
    const Vertex u = A[i];
    used[u] = true;
    for (Vertex w : maker.neighbors(u)) {
      if (!role.count(w) || used[w]) continue;
      used[w] = true;
      out.push_back(make_edge(u, w));
      if (self(self, i + 1)) return true;
      out.pop_back();
      used[w] = false;
    }
    used[u] = false;
    return false;
  };
  if (rec(rec, 0)) return out;
  return std::nullopt;
}

// ---------------------------------------------------------------- adapters

EdgeId LocalGameStrategy::next_move(const GameState& state) {
  const auto& board = game_->board();
  EdgeId r = kNoEdge;
  if (last_ != kNoEdge && std::find(board.begin(), board.end(), last_) != board.end())
    r = game_->respond(state, last_);
  else
    r = game_->free_move(state);
  last_ = kNoEdge;
  if (r == kNoEdge || !state.unclaimed(r)) {
    auto free = state.free_edges();
    r = free.empty() ? kNoEdge : *std::min_element(free.begin(), free.end());
  }
  return r;
}

ExhaustiveReport exhaustive_breaker(const Board& board, const LocalGameStrategy& maker,
                                    const std::function<bool(const Graph&)>& win) {
  ExhaustiveReport report;
  std::unordered_map<std::string, bool> memo;
  std::vector<Move> line;
  auto key_of = [&](const GameState& s, const LocalGameStrategy& m) {
    std::string key(board.size() + 8, '\0');
    for (EdgeId e = 0; e < board.size(); ++e) key[e] = static_cast<char>(s.owner(e));
    std::uint64_t f = m.fingerprint();
    for (int i = 0; i < 8; ++i) key[board.size() + i] = static_cast<char>(f >> (8 * i));
    return key;
  };
  // Breaker to move in `s`; returns whether Maker wins every continuation.
  auto rec = [&](auto&& self, const GameState& s, const LocalGameStrategy& m) -> bool {
    if (s.finished()) return win(s.graph_of(Side::maker));
    std::string key = key_of(s, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = true;
    std::vector<EdgeId> options(s.free_edges().begin(), s.free_edges().end());
    std::sort(options.begin(), options.end());
    for (EdgeId e : options) {
      GameState next = s;
      auto strat = m.clone();
      next.claim(e);
      line.push_back({next.turn(), Side::breaker, e});
      strat->on_opponent_move(next, e);
      if (!next.finished()) {
        EdgeId reply = strat->next_move(next);
        if (reply == kNoEdge || !next.unclaimed(reply)) {
          ok = false;
        } else {
          next.claim(reply);
          line.push_back({next.turn(), Side::maker, reply});
          ok = self(self, next, *strat);
          line.pop_back();
        }
      } else {
        ok = win(next.graph_of(Side::maker));
      }
      if (!ok) {
        if (report.counterexample.empty()) report.counterexample = line;
        line.pop_back();
        break;
      }
      line.pop_back();
    }
    memo.emplace(std::move(key), ok);
    return ok;
  };
  GameState start(board, 1);
  report.maker_always_wins = rec(rec, start, maker);
  report.lines = memo.size();
  return report;
}

}  // namespace mbrgg
