#include "mbrgg/blob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace mbrgg {

BlobCheck verify_blob_cycle(const BlobCycle& c, const Graph& g) {
  const std::size_t m = c.order.size();
  auto fail = [](std::string r) { return BlobCheck{false, std::move(r)}; };
  if (m < 3) return fail("fewer than 3 vertices");
  if (c.s < 3 || c.s > m) return fail("blob size outside [3, m]");
  std::unordered_set<Vertex> seen;
  for (Vertex v : c.order) {
    if (v >= g.order()) return fail("vertex outside carrier");
    if (!seen.insert(v).second) return fail("repeated vertex " + std::to_string(v));
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!g.has_edge(c.order[i], c.order[(i + 1) % m]))
      return fail("cycle edge missing at position " + std::to_string(i));
  for (std::size_t i = 0; i < c.s; ++i)
    for (std::size_t j = i + 1; j < c.s; ++j)
      if (!g.has_edge(c.order[i], c.order[j]))
        return fail("blob pair missing: positions " + std::to_string(i) + "," + std::to_string(j));
  return {};
}

bool blob_subset(const BlobCycle& inner, const BlobCycle& outer) {
  std::unordered_set<Vertex> ob(outer.order.begin(), outer.order.begin() + outer.s);
  for (std::size_t i = 0; i < inner.s; ++i)
    if (!ob.count(inner.order[i])) return false;
  return true;
}

std::size_t blob_threshold(std::size_t ell, BlobMode mode) {
  return mode == BlobMode::strict ? 100 * (ell + 1) : 2 * ell + 5;
}

std::size_t conglomerate_threshold(std::size_t ell1, std::size_t ell2, BlobMode mode) {
  return std::max(blob_threshold(2 * ell2, mode), blob_threshold(2 * ell1 + 3 * ell2, mode)) +
         2 * ell1 + 2 * ell2;
}

namespace {

std::size_t neighbours_on(const Graph& g, Vertex v, const std::vector<Vertex>& on) {
  std::size_t k = 0;
  for (Vertex u : on) k += g.has_edge(u, v);
  return k;
}

bool kept(const std::vector<Edge>& keep, Vertex a, Vertex b) {
  return std::find(keep.begin(), keep.end(), make_edge(a, b)) != keep.end();
}

std::optional<BlobCycle> splice_oriented(const BlobCycle& c, const std::vector<Vertex>& p,
                                         const Graph& g, const std::vector<Edge>& keep,
                                         int min_loss) {
  const auto& o = c.order;
  const std::size_t m = o.size(), s = c.s;
  const Vertex a = p.front(), b = p.back();
  auto adj = [&](Vertex x, Vertex y) { return g.has_edge(x, y); };

  if (min_loss == 0) {
    for (std::size_t i = s - 1; i < m; ++i) {
      Vertex x = o[i], y = o[(i + 1) % m];
      if (kept(keep, x, y) || !adj(x, a) || !adj(y, b)) continue;
      BlobCycle r{{}, s};
      r.order.reserve(m + p.size());
      r.order.insert(r.order.end(), o.begin(), o.begin() + i + 1);
      r.order.insert(r.order.end(), p.begin(), p.end());
      r.order.insert(r.order.end(), o.begin() + i + 1, o.end());
      return r;
    }
    return std::nullopt;
  }
  // Blob surgery reorders blob-internal cycle edges.
  for (const Edge& e : keep) {
    bool in_u = std::find(o.begin(), o.begin() + s, e.u) != o.begin() + s;
    bool in_v = std::find(o.begin(), o.begin() + s, e.v) != o.begin() + s;
    if (in_u && in_v) return std::nullopt;
  }
  std::vector<Vertex> inner(o.begin() + 1, o.begin() + s - 1);
  const Vertex first = o[0], last = o[s - 1];
  if (min_loss == 1 && s >= 4) {
    // first, p, y, (inner - y), last, ...: rotated so the blob leads.
    if (adj(first, a))
      for (Vertex y : inner)
        if (adj(y, b)) {
          BlobCycle r{{y}, s - 1};
          for (Vertex z : inner)
            if (z != y) r.order.push_back(z);
          r.order.insert(r.order.end(), o.begin() + s - 1, o.end());
          r.order.push_back(first);
          r.order.insert(r.order.end(), p.begin(), p.end());
          return r;
        }
    // first, (inner - x), x, p, last, ...
    if (adj(last, b))
      for (Vertex x : inner)
        if (adj(x, a)) {
          BlobCycle r{{first}, s - 1};
          for (Vertex z : inner)
            if (z != x) r.order.push_back(z);
          r.order.push_back(x);
          r.order.insert(r.order.end(), p.begin(), p.end());
          r.order.insert(r.order.end(), o.begin() + s - 1, o.end());
          return r;
        }
    return std::nullopt;
  }
  if (min_loss == 2 && s >= 5) {
    for (Vertex x : inner) {
      if (!adj(x, a)) continue;
      for (Vertex y : inner) {
        if (y == x || !adj(y, b)) continue;
        BlobCycle r{{first}, s - 2};
        for (Vertex z : inner)
          if (z != x && z != y) r.order.push_back(z);
        r.order.push_back(x);
        r.order.insert(r.order.end(), p.begin(), p.end());
        r.order.push_back(y);
        r.order.insert(r.order.end(), o.begin() + s - 1, o.end());
        return r;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<BlobCycle> blob_splice_path(const BlobCycle& c, const std::vector<Vertex>& p,
                                          const Graph& g, const std::vector<Edge>& keep) {
  if (p.empty() || c.order.size() < 3 || c.s < 3) return std::nullopt;
  std::vector<Vertex> rev(p.rbegin(), p.rend());
  for (int loss = 0; loss <= 2; ++loss) {
    if (auto r = splice_oriented(c, p, g, keep, loss)) return r;
    if (p.size() > 1)
      if (auto r = splice_oriented(c, rev, g, keep, loss)) return r;
  }
  return std::nullopt;
}

namespace {
void require_off_cycle(const BlobCycle& c, std::initializer_list<Vertex> vs) {
  for (Vertex v : vs)
    if (std::find(c.order.begin(), c.order.end(), v) != c.order.end())
      throw PreconditionError("blob surgery: vertex " + std::to_string(v) + " already on the cycle");
}
}  // namespace

BlobCycle blob_insert_edge_pair(const BlobCycle& c, Vertex u, Vertex v, const Graph& g,
                                const std::vector<Edge>& keep) {
  require_off_cycle(c, {u, v});
  if (u == v || !g.has_edge(u, v)) throw PreconditionError("edge pair: uv is not an edge");
  const std::size_t need = (c.size() + 1) / 2;
  if (neighbours_on(g, u, c.order) < need || neighbours_on(g, v, c.order) < need)
    throw PreconditionError("edge pair: endpoint with fewer than ceil(m/2) neighbours on the cycle");
  auto r = blob_splice_path(c, {u, v}, g, keep);
  if (!r) throw PreconditionError("edge pair: no admissible splice position");
  return *r;
}

BlobCycle blob_insert_vertex(const BlobCycle& c, Vertex v, const Graph& g, std::size_t ell,
                             BlobMode mode, const std::vector<Edge>& keep) {
  require_off_cycle(c, {v});
  if (c.s < blob_threshold(ell, mode))
    throw PreconditionError("insert vertex: blob smaller than s(ell)");
  if (2 * (neighbours_on(g, v, c.order) + ell) < c.size())
    throw PreconditionError("insert vertex: fewer than m/2 - ell neighbours on the cycle");
  auto r = blob_splice_path(c, {v}, g, keep);
  if (!r) throw PreconditionError("insert vertex: no admissible splice position");
  return *r;
}

namespace {

// Hamilton paths of c2 between two of its blob vertices: every pair except
// the two blob ends when the cycle has vertices outside the blob.
std::vector<std::vector<Vertex>> blob_openings(const BlobCycle& c2) {
  const auto& o = c2.order;
  const std::size_t n = o.size(), s = c2.s;
  std::vector<std::vector<Vertex>> out;
  const Vertex v0 = o[0], vl = o[s - 1];
  // q: v0, o[n-1], ..., o[s], vl  (the part outside the blob, with its ends)
  std::vector<Vertex> q{v0};
  for (std::size_t i = n; i-- > s;) q.push_back(o[i]);
  q.push_back(vl);
  std::vector<Vertex> inner(o.begin() + 1, o.begin() + s - 1);
  for (std::size_t xi = 0; xi < s; ++xi)
    for (std::size_t yi = xi + 1; yi < s; ++yi) {
      Vertex x = o[xi], y = o[yi];
      std::vector<Vertex> path;
      if (n == s) {
        path.push_back(x);
        for (Vertex z : o)
          if (z != x && z != y) path.push_back(z);
        path.push_back(y);
      } else if (x == v0 && y == vl) {
        if (!inner.empty()) continue;
        path = q;
      } else if (x == v0) {
        path = q;  // v0 .. vl, then the inner vertices ending at y
        for (Vertex z : inner)
          if (z != y) path.push_back(z);
        path.push_back(y);
      } else if (y == vl) {
        path.push_back(x);
        for (Vertex z : inner)
          if (z != x) path.push_back(z);
        path.insert(path.end(), q.begin(), q.end());
      } else {
        path.push_back(x);
        path.insert(path.end(), q.begin(), q.end());
        for (Vertex z : inner)
          if (z != x && z != y) path.push_back(z);
        path.push_back(y);
      }
      out.push_back(std::move(path));
    }
  return out;
}

}  // namespace

std::optional<BlobCycle> try_blob_merge(const BlobCycle& c1, const BlobCycle& c2, const Graph& g,
                                        const std::vector<Edge>& keep) {
  std::optional<BlobCycle> best;
  for (const auto& path : blob_openings(c2)) {
    auto r = blob_splice_path(c1, path, g, keep);
    if (r && (!best || r->s > best->s)) best = std::move(r);
    if (best && best->s == c1.s) break;
  }
  return best;
}

BlobCycle blob_merge(const BlobCycle& c1, const BlobCycle& c2, const Graph& g, std::size_t ell,
                     BlobMode mode, const std::vector<Edge>& keep) {
  if (c2.s < 5) throw PreconditionError("merge: second cycle needs a blob of size >= 5");
  for (Vertex v : c2.order)
    if (std::find(c1.order.begin(), c1.order.end(), v) != c1.order.end())
      throw PreconditionError("merge: cycles are not vertex disjoint");
  if (c1.s < blob_threshold(ell, mode)) throw PreconditionError("merge: blob smaller than s(ell)");
  const std::size_t need = c1.size() / 2;
  for (std::size_t i = 0; i < c2.s; ++i)
    if (neighbours_on(g, c2.order[i], c1.order) + ell < need)
      throw PreconditionError("merge: blob vertex of the second cycle has too few neighbours");
  auto r = try_blob_merge(c1, c2, g, keep);
  if (!r) throw PreconditionError("merge: no admissible splice position");
  return *r;
}

BlobCycle blob_conglomerate(const BlobCycle& c, const std::vector<MarkedTriple>& triples,
                            const std::vector<Vertex>& singles, const Graph& g, BlobMode mode) {
  const std::size_t l1 = triples.size(), l2 = singles.size();
  auto bullet = [](int k, const std::string& what) {
    throw PreconditionError("conglomerate bullet " + std::to_string(k) + ": " + what);
  };
  std::vector<Vertex> marked;
  for (const auto& t : triples) {
    marked.push_back(t.u);
    marked.push_back(t.v);
  }
  marked.insert(marked.end(), singles.begin(), singles.end());
  {
    auto sorted = marked;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      bullet(1, "marked vertices are not distinct");
  }
  for (const auto& t : triples)
    if (!g.has_edge(t.u, t.v)) bullet(2, "u_i v_i is not an edge");
  for (const auto& t : triples)
    if (t.cycle.s < 10 || !verify_blob_cycle(t.cycle, g).ok) bullet(3, "C_i is not a 10-blob cycle");
  if (!verify_blob_cycle(c, g).ok) bullet(3, "C is not a blob cycle");
  if (c.s < conglomerate_threshold(l1, l2, mode)) bullet(3, "blob of C smaller than s(l1, l2)");
  {
    std::unordered_set<Vertex> seen(c.order.begin(), c.order.end());
    for (const auto& t : triples)
      for (Vertex v : t.cycle.order)
        if (!seen.insert(v).second) bullet(4, "cycles are not vertex disjoint");
    for (Vertex v : marked)
      if (seen.count(v)) bullet(4, "a marked vertex lies on a cycle");
  }
  for (const auto& t : triples) {
    const std::size_t need = t.cycle.size() / 2;
    if (neighbours_on(g, t.u, t.cycle.order) < need || neighbours_on(g, t.v, t.cycle.order) < need)
      bullet(5, "u_i or v_i has fewer than floor(|C_i|/2) neighbours on C_i");
  }
  const std::size_t half = c.size() / 2;
  for (Vertex w : singles)
    if (neighbours_on(g, w, c.order) < half) bullet(6, "w_j has fewer than floor(|C|/2) neighbours on C");
  for (const auto& t : triples)
    for (std::size_t i = 0; i < t.cycle.s; ++i)
      if (neighbours_on(g, t.cycle.order[i], c.order) < half)
        bullet(7, "blob vertex of C_i has fewer than floor(|C|/2) neighbours on C");
  if (l1 == 0 && l2 == 0) return c;

  std::vector<BlobCycle> threaded;
  std::vector<Edge> keep;
  for (const auto& t : triples) {
    auto r = blob_splice_path(t.cycle, {t.u, t.v}, g);
    if (!r) bullet(5, "no consecutive attachment for u_i v_i on C_i");
    threaded.push_back(std::move(*r));
    keep.push_back(make_edge(t.u, t.v));
  }
  BlobCycle cur = c;
  for (Vertex w : singles) {
    auto r = blob_splice_path(cur, {w}, g);
    if (!r) bullet(6, "no splice position left for w_j");
    cur = std::move(*r);
  }
  for (const auto& ci : threaded) {
    auto r = try_blob_merge(cur, ci, g, keep);
    if (!r) bullet(7, "no splice position left for C_i");
    cur = std::move(*r);
  }
  return cur;
}

// ---------------------------------------------------------------- Hamilton search

std::optional<std::vector<Vertex>> posa_hamilton_cycle(const Graph& g, const std::vector<Vertex>& vs,
                                                       Seed seed, std::size_t restarts) {
  const std::size_t k = vs.size();
  if (k < 3) return std::nullopt;
  if (k <= 12) {
    Graph sub = g.induced(vs);
    auto cyc = find_hamilton_cycle(sub);
    if (!cyc) return std::nullopt;
    std::vector<Vertex> out;
    for (Vertex i : *cyc) out.push_back(vs[i]);
    return out;
  }
  std::vector<std::vector<int>> adj(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g.has_edge(vs[i], vs[j])) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  for (const auto& a : adj)
    if (a.size() < 2) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::vector<int> path, pos(k);
  const std::size_t step_limit = 60 * k + 4000;
  for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
    std::fill(pos.begin(), pos.end(), -1);
    path.assign(1, static_cast<int>(rng() % k));
    pos[path[0]] = 0;
    auto reindex = [&](std::size_t from) {
      for (std::size_t i = from; i < path.size(); ++i) pos[path[i]] = static_cast<int>(i);
    };
    for (std::size_t step = 0; step < step_limit; ++step) {
      const int end = path.back();
      std::vector<int> fresh;
      for (int w : adj[end])
        if (pos[w] < 0) fresh.push_back(w);
      if (!fresh.empty()) {
        int w = fresh[rng() % fresh.size()];
        pos[w] = static_cast<int>(path.size());
        path.push_back(w);
        continue;
      }
      const bool closes =
          path.size() >= 3 && std::find(adj[end].begin(), adj[end].end(), path[0]) != adj[end].end();
      if (closes && path.size() == k) {
        std::vector<Vertex> out;
        for (int i : path) out.push_back(vs[i]);
        return out;
      }
      if (closes) {
        // Reopen the cycle next to a vertex that still has an unvisited neighbour.
        bool grown = false;
        for (std::size_t j = 0; j < path.size() && !grown; ++j)
          for (int w : adj[path[j]])
            if (pos[w] < 0) {
              std::rotate(path.begin(), path.begin() + j + 1, path.end());
              pos[w] = static_cast<int>(path.size());
              path.push_back(w);
              reindex(0);
              grown = true;
              break;
            }
        if (grown) continue;
      }
      // Rotation: end ~ path[j], reverse path[j+1 ..].
      std::vector<std::size_t> pivots;
      for (int w : adj[end])
        if (pos[w] >= 0 && static_cast<std::size_t>(pos[w]) + 2 < path.size())
          pivots.push_back(static_cast<std::size_t>(pos[w]));
      if (pivots.empty() || rng() % 8 == 0) {
        std::reverse(path.begin(), path.end());
        reindex(0);
        continue;
      }
      std::size_t j = pivots[rng() % pivots.size()];
      std::reverse(path.begin() + j + 1, path.end());
      reindex(j + 1);
    }
  }
  return std::nullopt;
}

std::optional<BlobCycle> find_blob_hamilton_cycle(const Graph& g, const std::vector<Vertex>& vs,
                                                  const std::vector<Vertex>& clique, Seed seed) {
  if (clique.size() < 3) return std::nullopt;
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j)
      if (!g.has_edge(clique[i], clique[j])) return std::nullopt;
  std::vector<Vertex> rest;
  for (Vertex v : vs)
    if (std::find(clique.begin(), clique.end(), v) == clique.end()) rest.push_back(v);
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto cyc = posa_hamilton_cycle(g, rest, derive_seed(seed, attempt));
    if (!cyc) return std::nullopt;
    const std::size_t r = cyc->size();
    for (std::size_t i = 0; i < r; ++i) {
      Vertex u = (*cyc)[i], v = (*cyc)[(i + 1) % r];
      for (Vertex x : clique) {
        if (!g.has_edge(u, x)) continue;
        for (Vertex y : clique) {
          if (y == x || !g.has_edge(v, y)) continue;
          BlobCycle out{{x}, clique.size()};
          for (Vertex z : clique)
            if (z != x && z != y) out.order.push_back(z);
          out.order.push_back(y);
          for (std::size_t t = 1; t <= r; ++t) out.order.push_back((*cyc)[(i + t) % r]);
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- blob builder

std::size_t blob_builder_min_size(std::size_t k) {
  switch (k) {
    case 3: return 12;
    case 4: return 40;
    default: return 10 * k;
  }
}

namespace {
const std::unique_ptr<ExactSolver>& triangle_solver() {
  static const std::unique_ptr<ExactSolver> s = h_game_solver(SmallGraph::complete(3));
  return s;
}
}  // namespace

BlobBuilderGame::BlobBuilderGame(const Board& board, std::vector<Vertex> vertices, std::size_t k,
                                 BlobBuilderOptions opts)
    : board_(&board), vs_(std::move(vertices)), k_(k), seed_(opts.seed) {
  if (k_ < 3) throw PreconditionError("blob builder: k must be at least 3");
  const std::size_t need = opts.min_size ? opts.min_size : blob_builder_min_size(k_);
  if (vs_.size() < need)
    throw PreconditionError("blob builder: " + std::to_string(vs_.size()) +
                            " vertices, below N(k) = " + std::to_string(need));
  edges_ = edges_among(board, vs_);
  if (edges_.size() != vs_.size() * (vs_.size() - 1) / 2)
    throw PreconditionError("blob builder: vertex set does not span a clique of the board");
  std::size_t block = opts.block ? opts.block : (k_ == 3 ? 5 : 3 * k_ + 2);
  block = std::min(std::max(block, k_), vs_.size());
  block_.assign(vs_.begin(), vs_.begin() + block);
  std::vector<int> pick(k_);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    subsets_.push_back(pick);
    int i = static_cast<int>(k_) - 1;
    while (i >= 0 && pick[i] == static_cast<int>(block - k_ + i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < k_; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::uint64_t BlobBuilderGame::fingerprint() const {
  if (!clique_) return 0;
  std::uint64_t h = 1;
  for (Vertex v : *clique_) h = mix64(h ^ v);
  return h;
}

void BlobBuilderGame::check_clique(const GameState& state) {
  if (clique_) return;
  for (const auto& sub : subsets_) {
    bool ok = true;
    for (std::size_t i = 0; i < sub.size() && ok; ++i)
      for (std::size_t j = i + 1; j < sub.size() && ok; ++j)
        ok = state.owner(id(block_[sub[i]], block_[sub[j]])) == Side::maker;
    if (ok) {
      std::vector<Vertex> c;
      for (int i : sub) c.push_back(block_[i]);
      clique_ = std::move(c);
      return;
    }
  }
}

EdgeId BlobBuilderGame::clique_move(const GameState& state) {
  if (k_ == 3 && block_.size() == 5) {
    SolverPosition pos{5, 0, 0, 0, Side::maker};
    std::vector<EdgeId> by_pair(pair_count(5));
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        EdgeId e = id(block_[i], block_[j]);
        int p = pair_index(i, j);
        by_pair[p] = e;
        pos.host |= 1u << p;
        if (state.owner(e) == Side::maker) pos.maker |= 1u << p;
        if (state.owner(e) == Side::breaker) pos.breaker |= 1u << p;
      }
    if (pos.free_mask())
      if (auto p = triangle_solver()->winning_maker_move(pos)) return by_pair[*p];
  }
  // Potential greedy: live k-sets weighted by 2^(Maker edges).
  std::vector<double> score(block_.size() * block_.size(), 0.0);
  EdgeId best = kNoEdge;
  double best_score = -1;
  for (const auto& sub : subsets_) {
    int mk = 0;
    bool live = true;
    for (std::size_t i = 0; i < sub.size() && live; ++i)
      for (std::size_t j = i + 1; j < sub.size(); ++j) {
        Side o = state.owner(id(block_[sub[i]], block_[sub[j]]));
        if (o == Side::breaker) live = false;
        mk += o == Side::maker;
      }
    if (!live) continue;
    const double w = std::ldexp(1.0, mk);
    for (std::size_t i = 0; i < sub.size(); ++i)
      for (std::size_t j = i + 1; j < sub.size(); ++j)
        score[sub[i] * block_.size() + sub[j]] += w;
  }
  for (std::size_t i = 0; i < block_.size(); ++i)
    for (std::size_t j = i + 1; j < block_.size(); ++j) {
      EdgeId e = id(block_[i], block_[j]);
      if (state.unclaimed(e) && score[i * block_.size() + j] > best_score) {
        best = e;
        best_score = score[i * block_.size() + j];
      }
    }
  return best;
}

EdgeId BlobBuilderGame::cycle_move(const GameState& state, std::optional<Vertex> hint) {
  const std::vector<Vertex>& core = clique_ ? *clique_ : block_;
  auto in_core = [&](Vertex v) { return std::find(core.begin(), core.end(), v) != core.end(); };
  std::vector<Vertex> outside;
  for (Vertex v : vs_)
    if (!in_core(v)) outside.push_back(v);
  auto local_deg = [&](Vertex v) {
    std::size_t d = 0;
    for (Vertex w : outside)
      if (w != v) d += state.owner(id(v, w)) == Side::maker;
    return d;
  };
  auto best_partner = [&](Vertex x) {
    EdgeId pick = kNoEdge;
    std::size_t pick_deg = 0;
    for (Vertex y : outside) {
      if (y == x) continue;
      EdgeId e = id(x, y);
      if (!state.unclaimed(e)) continue;
      std::size_t d = local_deg(y);
      if (pick == kNoEdge || d < pick_deg) {
        pick = e;
        pick_deg = d;
      }
    }
    return pick;
  };
  if (hint && !in_core(*hint))
    if (EdgeId e = best_partner(*hint); e != kNoEdge) return e;
  // Lowest-degree outside vertex that can still grow.
  std::vector<std::pair<std::size_t, Vertex>> order;
  for (Vertex v : outside) order.push_back({local_deg(v), v});
  std::sort(order.begin(), order.end());
  for (auto [d, v] : order) {
    if (d >= 4) break;
    if (EdgeId e = best_partner(v); e != kNoEdge) return e;
  }
  // Attachments to the clique for poorly attached vertices.
  std::vector<std::pair<std::size_t, Vertex>> att;
  for (Vertex v : outside) {
    std::size_t a = 0;
    for (Vertex c : core) a += state.owner(id(v, c)) == Side::maker;
    att.push_back({a, v});
  }
  std::sort(att.begin(), att.end());
  for (auto [a, v] : att)
    for (Vertex c : core)
      if (state.unclaimed(id(v, c))) return id(v, c);
  for (auto [d, v] : order)
    if (EdgeId e = best_partner(v); e != kNoEdge) return e;
  return first_free_in(state);
}

EdgeId BlobBuilderGame::respond(const GameState& state, EdgeId e) {
  check_clique(state);
  if (!clique_) {
    EdgeId m = clique_move(state);
    return m != kNoEdge ? m : cycle_move(state, std::nullopt);
  }
  const Edge& ed = board_->edge(e);
  const auto& c = *clique_;
  bool cu = std::find(c.begin(), c.end(), ed.u) != c.end();
  bool cv = std::find(c.begin(), c.end(), ed.v) != c.end();
  if (cu != cv) {
    Vertex out = cu ? ed.v : ed.u;
    for (Vertex x : c)
      if (state.unclaimed(id(out, x))) return id(out, x);
    return cycle_move(state, out);
  }
  if (!cu) {
    Vertex lo = local_lower(state, ed.u, ed.v);
    return cycle_move(state, lo);
  }
  return cycle_move(state, std::nullopt);
}

EdgeId BlobBuilderGame::free_move(const GameState& state) {
  check_clique(state);
  if (!clique_) {
    EdgeId m = clique_move(state);
    if (m != kNoEdge) return m;
  }
  return cycle_move(state, std::nullopt);
}

Vertex BlobBuilderGame::local_lower(const GameState& state, Vertex a, Vertex b) const {
  std::size_t da = 0, db = 0;
  for (Vertex w : vs_) {
    if (w != a) da += state.owner(id(a, w)) == Side::maker;
    if (w != b) db += state.owner(id(b, w)) == Side::maker;
  }
  return da <= db ? a : b;
}

EdgeId BlobBuilderGame::first_free_in(const GameState& state) const {
  for (EdgeId e : edges_)
    if (state.unclaimed(e)) return e;
  return kNoEdge;
}

std::optional<BlobCycle> BlobBuilderGame::extract(const Graph& maker) const {
  std::optional<std::vector<Vertex>> c = clique_;
  if (!c) {
    for (const auto& sub : subsets_) {
      bool ok = true;
      for (std::size_t i = 0; i < sub.size() && ok; ++i)
        for (std::size_t j = i + 1; j < sub.size() && ok; ++j)
          ok = maker.has_edge(block_[sub[i]], block_[sub[j]]);
      if (ok) {
        c.emplace();
        for (int i : sub) c->push_back(block_[i]);
        break;
      }
    }
  }
  if (!c) return std::nullopt;
  return find_blob_hamilton_cycle(maker, vs_, *c, seed_);
}

}  // namespace mbrgg
