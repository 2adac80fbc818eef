#include <random>

#include "doctest.h"
#include "mbrgg/packing.hpp"

using namespace mbrgg;

namespace {

bool is_spanning_tree(std::size_t n, const std::vector<Edge>& es) {
  if (es.size() + 1 != n) return false;
  UnionFind uf(n);
  for (auto e : es)
    if (!uf.unite(e.u, e.v)) return false;
  return true;
}

// Exhaustive search for two edge-disjoint spanning trees.
bool brute_two_trees(const Graph& g) {
  const std::size_t n = g.order(), m = g.size();
  if (n <= 1) return true;
  if (m < 2 * (n - 1)) return false;
  std::vector<std::uint32_t> trees;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n - 1) continue;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) es.push_back(g.edges()[i]);
    if (is_spanning_tree(n, es)) trees.push_back(mask);
  }
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = i + 1; j < trees.size(); ++j)
      if (!(trees[i] & trees[j])) return true;
  return false;
}

Graph complete(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) es.push_back({i, j});
  return Graph(n, es);
}

}  // namespace

TEST_SUITE("packing") {

TEST_CASE("small fixtures") {
  auto k4 = two_tree_packing(complete(4));
  REQUIRE(k4);
  CHECK(k4->t1.size() + k4->t2.size() == 6);
  CHECK(verify_tree_pair(4, complete(4).edges(), *k4));
  CHECK_FALSE(two_tree_packing(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})));
  CHECK_FALSE(two_tree_packing(complete(3)));
  for (std::size_t n = 4; n <= 8; ++n) CHECK(two_tree_packing(complete(n)).has_value());
}

TEST_CASE("matches exhaustive search") {
  std::mt19937_64 rng(123);
  int yes = 0;
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 3 + rng() % 4;  // up to 6 vertices, at most 15 edges
    std::vector<Edge> es;
    const double p = 0.5 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if (std::uniform_real_distribution<double>(0, 1)(rng) < p) es.push_back({i, j});
    Graph g(n, es);
    auto got = two_tree_packing(g);
    CHECK(got.has_value() == brute_two_trees(g));
    if (got) {
      ++yes;
      CHECK(verify_tree_pair(n, g.edges(), *got));
    }
  }
  CHECK(yes > 20);
}

TEST_CASE("incremental packer agrees with batch") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 5 + rng() % 20;
    std::vector<Edge> es;
    for (std::size_t k = 0; k < 3 * n; ++k) {
      Vertex a = rng() % n, b = rng() % n;
      if (a != b) es.push_back(make_edge(a, b));
    }
    TreePacker one(n), batch(n);
    for (auto e : es) one.add_edge(e);
    batch.add_edges(es);
    CHECK(one.rank() == batch.rank());
    CHECK(one.complete() == two_tree_packing(n, es).has_value());
  }
}

}
