#pragma once

// Random valid inputs for the blob surgeries, shared by the unit tests and
// the acceptance run. Each check returns an empty string on success and a
// reason otherwise; exceptions from the operation count as failures.

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "mbrgg/blob.hpp"

namespace blob_cases {

using namespace mbrgg;

struct EdgeSet {
  std::vector<Edge> edges;
  void cycle(const BlobCycle& c) {
    const std::size_t m = c.order.size();
    for (std::size_t i = 0; i < m; ++i) edges.push_back(make_edge(c.order[i], c.order[(i + 1) % m]));
    for (std::size_t i = 0; i < c.s; ++i)
      for (std::size_t j = i + 1; j < c.s; ++j) edges.push_back(make_edge(c.order[i], c.order[j]));
  }
  // `count` random neighbours of v on `on`.
  void attach(Vertex v, std::vector<Vertex> on, std::size_t count, std::mt19937_64& rng) {
    std::shuffle(on.begin(), on.end(), rng);
    for (std::size_t k = 0; k < std::min(count, on.size()); ++k) edges.push_back(make_edge(v, on[k]));
  }
};

inline std::vector<Vertex> shuffled(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Vertex>(i);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool cycle_has_edge(const BlobCycle& c, Edge e) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (make_edge(c.order[i], c.order[(i + 1) % c.size()]) == e) return true;
  return false;
}

// Shared postconditions: a valid blob cycle on exactly `vertices`, keeping
// the old blob as a subset, with the blob shrinking by at most `loss`.
inline std::string common(const BlobCycle& before, const BlobCycle& after, const Graph& g,
                          std::vector<Vertex> vertices, std::size_t loss) {
  if (auto ck = verify_blob_cycle(after, g); !ck.ok) return "invalid cycle: " + ck.reason;
  if (after.s + loss < before.s) return "blob below floor";
  if (!blob_subset(after, before)) return "new blob not inside the old one";
  auto got = after.order;
  std::sort(got.begin(), got.end());
  std::sort(vertices.begin(), vertices.end());
  if (got != vertices) return "wrong vertex set";
  return {};
}

inline std::string edge_pair(std::mt19937_64& rng) {
  const std::size_t m = pick(rng, 8, 47), s = std::min(m, pick(rng, 5, m));
  auto p = shuffled(m + 2, rng);
  BlobCycle c{{p.begin(), p.begin() + static_cast<long>(m)}, s};
  EdgeSet f;
  f.cycle(c);
  const Vertex u = p[m], v = p[m + 1];
  f.edges.push_back(make_edge(u, v));
  f.attach(u, c.order, (m + 1) / 2, rng);
  f.attach(v, c.order, (m + 1) / 2, rng);
  Graph g(m + 2, f.edges);
  try {
    auto r = blob_insert_edge_pair(c, u, v, g);
    if (!cycle_has_edge(r, make_edge(u, v))) return "uv not on the cycle";
    return common(c, r, g, p, 2);
  } catch (const std::exception& e) {
    return e.what();
  }
}

inline std::string vertex(std::mt19937_64& rng) {
  const std::size_t ell = pick(rng, 0, 3), m = pick(rng, 2 * ell + 5, 2 * ell + 45);
  const std::size_t s = std::min(m, pick(rng, blob_threshold(ell, BlobMode::tight), m));
  auto p = shuffled(m + 1, rng);
  BlobCycle c{{p.begin(), p.begin() + static_cast<long>(m)}, s};
  EdgeSet f;
  f.cycle(c);
  const Vertex v = p[m];
  f.attach(v, c.order, (m + 1) / 2 > ell ? (m + 1) / 2 - ell : 0, rng);
  Graph g(m + 1, f.edges);
  try {
    return common(c, blob_insert_vertex(c, v, g, ell), g, p, 2);
  } catch (const std::exception& e) {
    return e.what();
  }
}

inline std::string merge(std::mt19937_64& rng) {
  const std::size_t ell = pick(rng, 0, 2), m = pick(rng, 2 * ell + 8, 2 * ell + 50);
  const std::size_t s = std::min(m, pick(rng, blob_threshold(ell, BlobMode::tight), m));
  const std::size_t n2 = pick(rng, 5, 14), s2 = pick(rng, 5, n2);
  auto p = shuffled(m + n2, rng);
  BlobCycle c1{{p.begin(), p.begin() + static_cast<long>(m)}, s};
  BlobCycle c2{{p.begin() + static_cast<long>(m), p.end()}, s2};
  EdgeSet f;
  f.cycle(c1);
  f.cycle(c2);
  for (std::size_t i = 0; i < s2; ++i) f.attach(c2.order[i], c1.order, m / 2 - ell, rng);
  Graph g(m + n2, f.edges);
  try {
    return common(c1, blob_merge(c1, c2, g, ell), g, p, 2);
  } catch (const std::exception& e) {
    return e.what();
  }
}

// l1 threaded 10-blob cycles and l2 single vertices absorbed into a cycle
// of size m whose blob meets s(l1, l2).
inline std::string conglomerate(std::mt19937_64& rng, std::size_t m_lo = 60, std::size_t m_hi = 79) {
  const std::size_t l1 = pick(rng, 0, 2), l2 = pick(rng, 0, 2), m = pick(rng, m_lo, m_hi);
  const std::size_t floor_s = conglomerate_threshold(l1, l2, BlobMode::tight);
  const std::size_t s = std::min(m, pick(rng, floor_s, floor_s + 9));
  std::vector<std::size_t> sizes;
  std::size_t n = m + l2;
  for (std::size_t i = 0; i < l1; ++i) {
    sizes.push_back(pick(rng, 12, 19));
    n += sizes.back() + 2;
  }
  auto p = shuffled(n, rng);
  std::size_t at = 0;
  auto take = [&](std::size_t k) {
    std::vector<Vertex> out(p.begin() + static_cast<long>(at), p.begin() + static_cast<long>(at + k));
    at += k;
    return out;
  };
  BlobCycle big{take(m), s};
  EdgeSet f;
  f.cycle(big);
  std::vector<MarkedTriple> triples;
  for (std::size_t i = 0; i < l1; ++i) {
    BlobCycle ci{take(sizes[i]), 10};
    f.cycle(ci);
    auto uv = take(2);
    f.edges.push_back(make_edge(uv[0], uv[1]));
    f.attach(uv[0], ci.order, (ci.size() + 1) / 2, rng);
    f.attach(uv[1], ci.order, (ci.size() + 1) / 2, rng);
    for (std::size_t j = 0; j < ci.s; ++j) f.attach(ci.order[j], big.order, (m + 1) / 2, rng);
    triples.push_back({uv[0], uv[1], ci});
  }
  auto singles = take(l2);
  for (Vertex w : singles) f.attach(w, big.order, (m + 1) / 2, rng);
  Graph g(n, f.edges);
  try {
    auto r = blob_conglomerate(big, triples, singles, g);
    for (const auto& t : triples)
      if (!cycle_has_edge(r, make_edge(t.u, t.v))) return "u_i v_i not on the cycle";
    return common(big, r, g, p, 2 * l1 + 2 * l2);
  } catch (const std::exception& e) {
    return e.what();
  }
}

}  // namespace blob_cases
