#include "mbrgg/adversaries.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mbrgg {

std::pair<double, std::vector<char>> stoer_wagner(std::vector<std::vector<double>> w) {
  const std::size_t n = w.size();
  if (n < 2) return {0.0, std::vector<char>(n, 1)};
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<std::size_t> alive(n);
  for (std::size_t i = 0; i < n; ++i) alive[i] = i;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_side;
  while (alive.size() > 1) {
    std::vector<double> key(n, 0.0);
    std::vector<char> added(n, 0);
    std::size_t prev = alive[0], last = alive[0];
    for (std::size_t step = 0; step < alive.size(); ++step) {
      std::size_t sel = n;
      for (std::size_t v : alive)
        if (!added[v] && (sel == n || key[v] > key[sel])) sel = v;
      added[sel] = 1;
      prev = last;
      last = sel;
      if (step + 1 == alive.size()) {
        if (key[sel] < best) {
          best = key[sel];
          best_side = members[sel];
        }
        break;
      }
      for (std::size_t v : alive)
        if (!added[v]) key[v] += w[sel][v];
    }
    // Merge `last` into `prev`.
    for (std::size_t v : alive) {
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    alive.erase(std::find(alive.begin(), alive.end(), last));
  }
  std::vector<char> side(n, 0);
  for (std::size_t v : best_side) side[v] = 1;
  return {best, side};
}

namespace {

class RngMixin {
 protected:
  explicit RngMixin(Seed seed) : rng_(seed ? seed : 1) {}
  std::uint64_t next() { return rng_ = mix64(rng_); }
  EdgeId random_free(const GameState& state) {
    auto free = state.free_edges();
    return free.empty() ? kNoEdge : free[next() % free.size()];
  }
  std::uint64_t rng_;
};

class RandomBreaker : public Strategy, RngMixin {
 public:
  explicit RandomBreaker(Seed seed) : RngMixin(seed) {}
  std::string name() const override { return "random"; }
  EdgeId next_move(const GameState& state) override { return random_free(state); }
};

class CutAttacker : public Strategy, RngMixin {
 public:
  CutAttacker(Seed seed, CutAttackerOptions opts) : RngMixin(seed), opts_(opts) {}
  std::string name() const override { return "cut"; }

  EdgeId next_move(const GameState& state) override {
    const Board& b = state.board();
    const std::size_t n = b.order();
    UnionFind uf(n);
    for (EdgeId e = 0; e < b.size(); ++e)
      if (state.owner(e) == Side::maker) uf.unite(b.edge(e).u, b.edge(e).v);
    std::vector<std::size_t> comp(n), label(n, n);
    std::size_t c = 0;
    for (Vertex v = 0; v < n; ++v) {
      std::size_t r = uf.find(v);
      if (label[r] == n) label[r] = c++;
      comp[v] = label[r];
    }
    std::vector<EdgeId> crossing;
    for (EdgeId e : state.free_edges())
      if (comp[b.edge(e).u] != comp[b.edge(e).v]) crossing.push_back(e);
    if (c <= 1 || crossing.empty()) return random_free(state);

    std::vector<char> side;
    if (c <= opts_.exact_cut_limit) {
      std::vector<std::vector<double>> w(c, std::vector<double>(c, 0.0));
      for (EdgeId e : crossing) {
        std::size_t a = comp[b.edge(e).u], z = comp[b.edge(e).v];
        w[a][z] += 1.0;
        w[z][a] += 1.0;
      }
      side = stoer_wagner(std::move(w)).second;
    } else {
      std::vector<std::size_t> deg(c, 0);
      for (EdgeId e : crossing) {
        ++deg[comp[b.edge(e).u]];
        ++deg[comp[b.edge(e).v]];
      }
      std::size_t target = 0;
      for (std::size_t i = 1; i < c; ++i)
        if (deg[i] < deg[target]) target = i;
      side.assign(c, 0);
      side[target] = 1;
    }
    std::vector<EdgeId> cut;
    for (EdgeId e : crossing)
      if (side[comp[b.edge(e).u]] != side[comp[b.edge(e).v]]) cut.push_back(e);
    // A disconnected contracted board yields an empty cut: Breaker has already won.
    if (cut.empty()) return random_free(state);
    return cut[next() % cut.size()];
  }

 private:
  CutAttackerOptions opts_;
};

class LowDegreeAttacker : public Strategy, RngMixin {
 public:
  LowDegreeAttacker(Seed seed, std::size_t target) : RngMixin(seed), target_(target) {}
  std::string name() const override { return "low_degree"; }

  EdgeId next_move(const GameState& state) override {
    const Board& b = state.board();
    auto avail = [&](Vertex v) { return state.maker_degree(v) + state.free_degree(v); };
    Vertex best = static_cast<Vertex>(b.order());
    for (Vertex v = 0; v < b.order(); ++v) {
      if (state.free_degree(v) == 0 || state.maker_degree(v) >= target_) continue;
      if (best == b.order() || avail(v) < avail(best) ||
          (avail(v) == avail(best) && state.free_degree(v) < state.free_degree(best)))
        best = v;
    }
    if (best == b.order()) return random_free(state);
    EdgeId pick = kNoEdge;
    std::size_t pick_avail = 0;
    for (EdgeId e : b.incident(best)) {
      if (!state.unclaimed(e)) continue;
      std::size_t a = avail(b.other(e, best));
      if (pick == kNoEdge || a < pick_avail) {
        pick = e;
        pick_avail = a;
      }
    }
    return pick;
  }

 private:
  std::size_t target_;
};

class ClusterSpoiler : public Strategy, RngMixin {
 public:
  ClusterSpoiler(Seed seed, std::vector<EdgeId> focus) : RngMixin(seed), focus_(std::move(focus)) {}
  std::string name() const override { return "cluster"; }

  EdgeId next_move(const GameState& state) override {
    const Board& b = state.board();
    if (!initialised_) {
      initialised_ = true;
      if (focus_.empty()) focus_ = lowest_decile_edges(b);
    }
    auto avail = [&](Vertex v) { return state.maker_degree(v) + state.free_degree(v); };
    EdgeId pick = kNoEdge;
    std::size_t pick_key = 0;
    std::size_t keep = 0;
    for (EdgeId e : focus_) {
      if (!state.unclaimed(e)) continue;
      focus_[keep++] = e;
      std::size_t key = std::min(avail(b.edge(e).u), avail(b.edge(e).v));
      if (pick == kNoEdge || key < pick_key || (key == pick_key && (next() & 1))) {
        pick = e;
        pick_key = key;
      }
    }
    focus_.resize(keep);
    return pick != kNoEdge ? pick : random_free(state);
  }

 private:
  static std::vector<EdgeId> lowest_decile_edges(const Board& b) {
    std::vector<std::size_t> deg(b.order());
    for (Vertex v = 0; v < b.order(); ++v) deg[v] = b.incident(v).size();
    if (deg.empty()) return {};
    auto sorted = deg;
    std::size_t idx = sorted.size() / 10;
    std::nth_element(sorted.begin(), sorted.begin() + idx, sorted.end());
    const std::size_t cutoff = sorted[idx];
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < b.size(); ++e)
      if (deg[b.edge(e).u] <= cutoff || deg[b.edge(e).v] <= cutoff) out.push_back(e);
    return out;
  }

  std::vector<EdgeId> focus_;
  bool initialised_ = false;
};

}  // namespace

std::unique_ptr<Strategy> random_breaker(Seed seed) { return std::make_unique<RandomBreaker>(seed); }
std::unique_ptr<Strategy> cut_attacker(Seed seed, CutAttackerOptions opts) {
  return std::make_unique<CutAttacker>(seed, opts);
}
std::unique_ptr<Strategy> low_degree_attacker(Seed seed, std::size_t target_degree) {
  return std::make_unique<LowDegreeAttacker>(seed, target_degree);
}
std::unique_ptr<Strategy> cluster_spoiler(Seed seed, std::vector<EdgeId> focus) {
  return std::make_unique<ClusterSpoiler>(seed, std::move(focus));
}

const std::vector<std::string>& adversary_names() {
  static const std::vector<std::string> names = {"random", "cut", "low_degree", "cluster"};
  return names;
}

std::unique_ptr<Strategy> make_adversary(const std::string& name, Seed seed,
                                         std::vector<EdgeId> focus) {
  if (name == "random") return random_breaker(seed);
  if (name == "cut") return cut_attacker(seed);
  if (name == "low_degree") return low_degree_attacker(seed);
  if (name == "cluster") return cluster_spoiler(seed, std::move(focus));
  throw std::invalid_argument("unknown adversary: " + name);
}

}  // namespace mbrgg
