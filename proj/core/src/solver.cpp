#include "mbrgg/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <mutex>
#include <random>

#include "mbrgg/geometry.hpp"

namespace mbrgg {

namespace {
constexpr std::uint32_t kCacheVersion = 1;

std::uint32_t color_of(const SolverPosition& p, int bit) {
  std::uint32_t b = 1u << bit;
  if (!(p.host & b)) return 0;
  if (p.maker & b) return 2;
  if (p.breaker & b) return 3;
  return 1;
}
}  // namespace

ExactSolver::ExactSolver(std::string name, Predicate maker_wins)
    : name_(std::move(name)), pred_(std::move(maker_wins)) {}

std::uint64_t ExactSolver::canonical_key(const SolverPosition& pos) const {
  const int k = pos.k;
  std::array<int, 8> inv{};
  std::array<std::uint32_t, 28> color{};
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i) {
      int p = pair_index(i, j);
      color[p] = color_of(pos, p);
      if (!color[p]) continue;
      pairs.emplace_back(i, j);
      int w = color[p] == 2 ? 64 : color[p] == 3 ? 8 : 1;
      inv[i] += w;
      inv[j] += w;
    }
  // Vertices are placed in invariant order; only same-invariant vertices permute.
  std::array<int, 8> order{};
  for (int v = 0; v < k; ++v) order[v] = v;
  std::sort(order.begin(), order.begin() + k, [&](int a, int b) { return inv[a] < inv[b]; });
  std::vector<std::pair<int, int>> blocks;  // [start, end) in `order`
  for (int s = 0; s < k;) {
    int e = s + 1;
    while (e < k && inv[order[e]] == inv[order[s]]) ++e;
    blocks.emplace_back(s, e);
    s = e;
  }
  for (auto [s, e] : blocks) std::sort(order.begin() + s, order.begin() + e);

  std::uint64_t best = ~0ULL;
  std::array<int, 8> pos_of{};
  auto evaluate = [&]() {
    for (int t = 0; t < k; ++t) pos_of[order[t]] = t;
    std::uint64_t code = 0;
    for (auto [i, j] : pairs)
      code |= std::uint64_t{color[pair_index(i, j)]} << (2 * pair_index(pos_of[i], pos_of[j]));
    best = std::min(best, code);
  };
  // Odometer over the per-block permutations.
  for (;;) {
    evaluate();
    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      auto [s, e] = blocks[b];
      if (std::next_permutation(order.begin() + s, order.begin() + e)) break;
    }
    if (b == blocks.size()) break;
  }
  return best | (std::uint64_t(k) << 56) | (std::uint64_t(pos.to_move == Side::maker) << 60);
}

bool ExactSolver::maker_wins(const SolverPosition& pos) {
  if (pred_(SmallGraph::from_mask(pos.k, pos.maker))) return true;
  const std::uint32_t free = pos.free_mask();
  if (!free || !pred_(SmallGraph::from_mask(pos.k, pos.maker | free))) return false;
  const std::uint64_t key = canonical_key(pos);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  bool value;
  if (pos.to_move == Side::maker) {
    value = false;
    for (std::uint32_t rest = free; rest && !value; rest &= rest - 1) {
      SolverPosition child = pos;
      child.maker |= rest & -rest;
      child.to_move = Side::breaker;
      value = maker_wins(child);
    }
  } else {
    value = true;
    for (std::uint32_t rest = free; rest && value; rest &= rest - 1) {
      SolverPosition child = pos;
      child.breaker |= rest & -rest;
      child.to_move = Side::maker;
      value = maker_wins(child);
    }
  }
  std::unique_lock lock(mutex_);
  memo_.emplace(key, value);
  return value;
}

Side ExactSolver::solve(const SolverPosition& pos) {
  if (pos.k < 0 || pos.k > kMaxVertices) throw PreconditionError("solve_exact: board too large");
  return maker_wins(pos) ? Side::maker : Side::breaker;
}

Side ExactSolver::solve(const SmallGraph& host) {
  return solve(SolverPosition{host.order(), host.mask(), 0, 0, Side::breaker});
}

std::optional<int> ExactSolver::winning_maker_move(const SolverPosition& pos) {
  if (pos.k > kMaxVertices) throw PreconditionError("solve_exact: board too large");
  for (std::uint32_t rest = pos.free_mask(); rest; rest &= rest - 1) {
    SolverPosition child = pos;
    child.maker |= rest & -rest;
    child.to_move = Side::breaker;
    if (maker_wins(child)) return std::countr_zero(rest);
  }
  return std::nullopt;
}

SolverMaker::SolverMaker(const Board& board, ExactSolver& solver) : solver_(&solver) {
  if (board.order() > static_cast<std::size_t>(ExactSolver::kMaxVertices))
    throw PreconditionError("exact maker: board too large");
  edge_of_.assign(pair_count(ExactSolver::kMaxVertices), kNoEdge);
  for (EdgeId e = 0; e < board.size(); ++e) {
    const Edge& ed = board.edge(e);
    const int b = pair_index(static_cast<int>(ed.u), static_cast<int>(ed.v));
    bit_.push_back(b);
    edge_of_[b] = e;
    host_ |= 1u << b;
  }
}

EdgeId SolverMaker::next_move(const GameState& state) {
  SolverPosition pos{static_cast<int>(state.board().order()), host_, 0, 0, Side::maker};
  for (EdgeId e = 0; e < bit_.size(); ++e) {
    if (state.owner(e) == Side::maker) pos.maker |= 1u << bit_[e];
    if (state.owner(e) == Side::breaker) pos.breaker |= 1u << bit_[e];
  }
  if (auto b = solver_->winning_maker_move(pos)) return edge_of_[*b];
  return state.free_edges().front();
}

std::size_t ExactSolver::memo_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

void ExactSolver::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write solver cache: " + path);
  std::shared_lock lock(mutex_);
  os.write("MBSC", 4);
  os.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof kCacheVersion);
  std::uint32_t len = static_cast<std::uint32_t>(name_.size());
  os.write(reinterpret_cast<const char*>(&len), sizeof len);
  os.write(name_.data(), len);
  std::uint64_t count = memo_.size();
  os.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (const auto& [key, value] : memo_) {
    os.write(reinterpret_cast<const char*>(&key), sizeof key);
    char v = value ? 1 : 0;
    os.write(&v, 1);
  }
}

bool ExactSolver::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[4];
  std::uint32_t version = 0, len = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  if (!is || std::memcmp(magic, "MBSC", 4) != 0 || version != kCacheVersion) return false;
  is.read(reinterpret_cast<char*>(&len), sizeof len);
  std::string name(len, '\0');
  is.read(name.data(), len);
  if (!is || name != name_) return false;
  std::uint64_t count = 0;
  is.read(reinterpret_cast<char*>(&count), sizeof count);
  std::unique_lock lock(mutex_);
  for (std::uint64_t i = 0; i < count && is; ++i) {
    std::uint64_t key = 0;
    char v = 0;
    is.read(reinterpret_cast<char*>(&key), sizeof key);
    is.read(&v, 1);
    if (is) memo_[key] = v != 0;
  }
  return static_cast<bool>(is);
}

bool contains_subgraph(const SmallGraph& g, const SmallGraph& H) {
  const int h = H.order(), k = g.order();
  if (h > k || H.size() > g.size()) return false;
  std::array<int, 8> map{};
  std::uint32_t used = 0;
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == h) return true;
    for (int c = 0; c < k; ++c) {
      if (used >> c & 1) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (H.has_edge(i, j) && !g.has_edge(c, map[j])) ok = false;
      if (!ok) continue;
      used |= 1u << c;
      map[i] = c;
      if (self(self, i + 1)) return true;
      used &= ~(1u << c);
    }
    return false;
  };
  return rec(rec, 0);
}

bool has_path_of_length(const SmallGraph& g, int length) {
  const int k = g.order();
  if (length <= 0) return true;
  if (length >= k || g.size() < length) return false;
  auto rec = [&](auto&& self, int v, std::uint32_t seen, int left) -> bool {
    if (left == 0) return true;
    for (int w = 0; w < k; ++w)
      if (!(seen >> w & 1) && g.has_edge(v, w) && self(self, w, seen | (1u << w), left - 1))
        return true;
    return false;
  };
  for (int v = 0; v < k; ++v)
    if (rec(rec, v, 1u << v, length)) return true;
  return false;
}

std::unique_ptr<ExactSolver> connectivity_solver() {
  return std::make_unique<ExactSolver>("connectivity",
                                       [](const SmallGraph& g) { return g.connected(); });
}

std::unique_ptr<ExactSolver> h_game_solver(const SmallGraph& H) {
  return std::make_unique<ExactSolver>("h_game:" + std::to_string(H.order()) + ":" +
                                           std::to_string(H.canonical_mask()),
                                       [H](const SmallGraph& g) { return contains_subgraph(g, H); });
}

std::unique_ptr<ExactSolver> path_solver(int length) {
  return std::make_unique<ExactSolver>(
      "path:" + std::to_string(length),
      [length](const SmallGraph& g) { return has_path_of_length(g, length); });
}

bool geometric_realizable(const SmallGraph& g, std::uint64_t trials, Seed seed) {
  const int k = g.order();
  if (k <= 1) return true;
  if (!g.connected()) return false;
  const std::uint32_t target = g.canonical_mask();
  std::mt19937_64 rng(seed);
  static constexpr std::array<double, 5> kBoxes = {0.8, 1.2, 1.6, 2.2, 3.0};
  std::array<Point, 8> pts{};
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uniform_real_distribution<double> u(0.0, kBoxes[t % kBoxes.size()]);
    for (int i = 0; i < k; ++i) pts[i] = {u(rng), u(rng)};
    SmallGraph h(k);
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i)
        if (dist2(pts[i], pts[j]) <= 1.0) h.add_edge(i, j);
    if (h.size() == g.size() && h.canonical_mask() == target) return true;
  }
  return false;
}

KHResult compute_kH(const SmallGraph& H, int k_max, Seed seed, std::uint64_t embedding_trials) {
  if (k_max > 6) throw PreconditionError("compute_kH: k_max must be <= 6");
  auto solver = h_game_solver(H);
  KHResult res;
  for (int k = std::max(1, H.order()); k <= k_max; ++k)
    if (solver->solve(SmallGraph::complete(k)) == Side::maker) {
      res.k_H = k;
      break;
    }
  if (res.k_H == 0) throw PreconditionError("compute_kH: k_max exhausted without a Maker win");
  for (const auto& g : enumerate_graphs(res.k_H))
    if (solver->solve(g) == Side::maker) {
      res.family.push_back(g);
      res.realizable.push_back(
          geometric_realizable(g, embedding_trials, derive_seed(seed, g.canonical_mask())));
    }
  return res;
}

}  // namespace mbrgg
