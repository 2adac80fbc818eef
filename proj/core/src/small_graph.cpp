#include "mbrgg/small_graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mbrgg/common.hpp"

namespace mbrgg {

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

SmallGraph::SmallGraph(int k) : k_(k) {
  if (k < 0 || k > kMaxVertices) throw PreconditionError("SmallGraph: order must be in [0,8]");
}

SmallGraph::SmallGraph(int k, const std::vector<std::pair<int, int>>& edges) : SmallGraph(k) {
  for (auto [i, j] : edges) add_edge(i, j);
}

SmallGraph SmallGraph::complete(int k) {
  SmallGraph g(k);
  g.mask_ = pair_count(k) == 32 ? ~0u : ((1u << pair_count(k)) - 1);
  return g;
}

SmallGraph SmallGraph::path(int k) {
  SmallGraph g(k);
  for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
  return g;
}

SmallGraph SmallGraph::cycle(int k) {
  SmallGraph g = path(k);
  if (k >= 3) g.add_edge(0, k - 1);
  return g;
}

SmallGraph SmallGraph::from_mask(int k, std::uint32_t mask) {
  SmallGraph g(k);
  g.mask_ = mask & complete(k).mask_;
  return g;
}

int SmallGraph::size() const { return std::popcount(mask_); }

bool SmallGraph::has_edge(int i, int j) const {
  return i != j && (mask_ >> pair_index(i, j)) & 1u;
}

void SmallGraph::add_edge(int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= k_ || j >= k_)
    throw PreconditionError("SmallGraph: bad edge");
  mask_ |= 1u << pair_index(i, j);
}

void SmallGraph::remove_edge(int i, int j) {
  if (i != j) mask_ &= ~(1u << pair_index(i, j));
}

std::uint8_t SmallGraph::neighbors(int v) const {
  std::uint8_t nb = 0;
  for (int u = 0; u < k_; ++u)
    if (has_edge(u, v)) nb |= static_cast<std::uint8_t>(1u << u);
  return nb;
}

int SmallGraph::degree(int v) const { return std::popcount(neighbors(v)); }

bool SmallGraph::connected() const {
  if (k_ <= 1) return true;
  std::uint8_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint8_t next = 0;
    for (int v = 0; v < k_; ++v)
      if (frontier >> v & 1) next |= neighbors(v);
    frontier = next & ~seen;
    seen |= next;
  }
  return std::popcount(seen) == k_;
}

std::vector<std::pair<int, int>> SmallGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < k_; ++j)
    for (int i = 0; i < j; ++i)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

SmallGraph SmallGraph::relabeled(const std::array<int, kMaxVertices>& perm) const {
  SmallGraph g(k_);
  for (auto [i, j] : edges()) g.mask_ |= 1u << pair_index(perm[i], perm[j]);
  return g;
}

std::uint32_t SmallGraph::canonical_mask() const {
  std::array<int, kMaxVertices> perm{};
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = ~0u;
  auto es = edges();
  do {
    std::uint32_t m = 0;
    for (auto [i, j] : es) m |= 1u << pair_index(perm[i], perm[j]);
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.begin() + k_));
  return best;
}

bool SmallGraph::contains_spanning(const SmallGraph& sub) const {
  if (sub.k_ != k_ || sub.size() > size()) return false;
  std::array<int, kMaxVertices> perm{};
  std::iota(perm.begin(), perm.end(), 0);
  auto es = sub.edges();
  do {
    bool ok = true;
    for (auto [i, j] : es)
      if (!has_edge(perm[i], perm[j])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.begin() + k_));
  return false;
}

std::string SmallGraph::to_string() const {
  std::ostringstream os;
  os << "k=" << k_ << " [";
  bool first = true;
  for (auto [i, j] : edges()) {
    os << (first ? "" : " ") << i << "-" << j;
    first = false;
  }
  os << "]";
  return os.str();
}

bool isomorphic(const SmallGraph& a, const SmallGraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return a.canonical_mask() == b.canonical_mask();
}

std::vector<SmallGraph> enumerate_graphs(int k, bool connected_only) {
  if (k < 0 || k > 6) throw PreconditionError("enumerate_graphs: k must be in [0,6]");
  std::set<std::uint32_t> seen;
  std::vector<SmallGraph> out;
  const std::uint32_t limit = 1u << pair_count(k);
  for (std::uint32_t m = 0; m < limit; ++m) {
    SmallGraph g = SmallGraph::from_mask(k, m);
    if (connected_only && !g.connected()) continue;
    std::uint32_t c = g.canonical_mask();
    if (seen.insert(c).second) out.push_back(SmallGraph::from_mask(k, c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SmallGraph& a, const SmallGraph& b) { return a.size() < b.size(); });
  return out;
}

SmallGraph named_graph(const std::string& name) {
  if (name == "edge" || name == "k2") return SmallGraph::complete(2);
  if (name == "triangle" || name == "k3") return SmallGraph::complete(3);
  if (name == "vertex" || name == "k1") return SmallGraph(1);
  if (name == "k5-e") {
    SmallGraph g = SmallGraph::complete(5);
    g.remove_edge(3, 4);
    return g;
  }
  if (name.size() >= 2) {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (const std::exception&) {
      throw PreconditionError("unknown graph name: " + name);
    }
    if (n >= 1 && n <= SmallGraph::kMaxVertices) {
      if (name[0] == 'k') return SmallGraph::complete(n);
      if (name[0] == 'p') return SmallGraph::path(n);
      if (name[0] == 'c' && n >= 3) return SmallGraph::cycle(n);
    }
  }
  throw PreconditionError("unknown graph name: " + name);
}

}  // namespace mbrgg
