#include <algorithm>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "mbrgg/adversaries.hpp"
#include "mbrgg/solver.hpp"

using namespace mbrgg;

namespace {

// Plain minimax over the host's pairs, no memo, no symmetry.
bool naive_maker_wins(int k, const std::vector<int>& free, std::uint32_t maker, bool breaker_turn,
                      const std::function<bool(const SmallGraph&)>& pred) {
  if (free.empty()) return pred(SmallGraph::from_mask(k, maker));
  for (std::size_t i = 0; i < free.size(); ++i) {
    std::vector<int> rest(free);
    rest.erase(rest.begin() + static_cast<long>(i));
    const std::uint32_t next = breaker_turn ? maker : maker | (1u << free[i]);
    const bool win = naive_maker_wins(k, rest, next, !breaker_turn, pred);
    if (breaker_turn && !win) return false;
    if (!breaker_turn && win) return true;
  }
  return breaker_turn;
}

bool naive(const SmallGraph& host, const std::function<bool(const SmallGraph&)>& pred,
           bool maker_first = false) {
  std::vector<int> free;
  for (int b = 0; b < 32; ++b)
    if (host.mask() >> b & 1) free.push_back(b);
  return naive_maker_wins(host.order(), free, 0, !maker_first, pred);
}

SolverPosition start(const SmallGraph& g, Side first) {
  return {g.order(), g.mask(), 0, 0, first};
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("triangle game facts") {
  auto tri = h_game_solver(SmallGraph::complete(3));
  CHECK(tri->solve(SmallGraph::complete(5)) == Side::maker);
  CHECK(tri->solve(SmallGraph::complete(4)) == Side::breaker);
  for (const auto& g : enumerate_graphs(4)) CHECK(tri->solve(g) == Side::breaker);
  const SmallGraph k5e = named_graph("k5-e");
  CHECK(k5e.size() == 9);
  // Breaker first loses nothing here; Maker first wins (see the ledger).
  CHECK(tri->solve(start(k5e, Side::breaker)) == Side::breaker);
  CHECK(tri->solve(start(k5e, Side::maker)) == Side::maker);
}

TEST_CASE("connectivity on cliques") {
  auto conn = connectivity_solver();
  for (int n = 2; n <= 5; ++n)
    CHECK((conn->solve(SmallGraph::complete(n)) == Side::maker) == (n >= 4));
}

TEST_CASE("agrees with plain minimax") {
  std::mt19937_64 rng(31);
  auto tri = h_game_solver(SmallGraph::complete(3));
  auto conn = connectivity_solver();
  auto p3 = path_solver(3);
  auto has_tri = [](const SmallGraph& g) { return contains_subgraph(g, SmallGraph::complete(3)); };
  auto connected = [](const SmallGraph& g) { return g.connected(); };
  auto long_path = [](const SmallGraph& g) { return has_path_of_length(g, 3); };
  int checked = 0;
  for (int it = 0; it < 120; ++it) {
    const int k = 4 + static_cast<int>(rng() % 3);
    SmallGraph g(k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (rng() % 3) g.add_edge(i, j);
    if (g.size() > 9) continue;
    ++checked;
    for (Side first : {Side::breaker, Side::maker}) {
      const bool mf = first == Side::maker;
      CHECK((tri->solve(start(g, first)) == Side::maker) == naive(g, has_tri, mf));
      CHECK((conn->solve(start(g, first)) == Side::maker) == naive(g, connected, mf));
      CHECK((p3->solve(start(g, first)) == Side::maker) == naive(g, long_path, mf));
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("canonical keys are labelling invariant") {
  std::mt19937_64 rng(4);
  auto tri = h_game_solver(SmallGraph::complete(3));
  for (int it = 0; it < 100; ++it) {
    const int k = 5 + static_cast<int>(rng() % 3);
    SmallGraph host = SmallGraph::complete(k);
    SolverPosition pos{k, host.mask(), 0, 0, Side::breaker};
    for (int b = 0; b < pair_count(k); ++b) {
      const auto roll = rng() % 4;
      if (roll == 1) pos.maker |= 1u << b;
      if (roll == 2) pos.breaker |= 1u << b;
    }
    std::array<int, SmallGraph::kMaxVertices> perm{};
    for (int i = 0; i < SmallGraph::kMaxVertices; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.begin() + k, rng);
    SolverPosition moved = pos;
    moved.host = SmallGraph::from_mask(k, pos.host).relabeled(perm).mask();
    moved.maker = SmallGraph::from_mask(k, pos.maker).relabeled(perm).mask();
    moved.breaker = SmallGraph::from_mask(k, pos.breaker).relabeled(perm).mask();
    CHECK(tri->canonical_key(pos) == tri->canonical_key(moved));
  }
}

TEST_CASE("k_H") {
  auto tri = compute_kH(SmallGraph::complete(3), 6);
  CHECK(tri.k_H == 5);
  REQUIRE(tri.family.size() == 1);
  CHECK(isomorphic(tri.family[0], SmallGraph::complete(5)));
  CHECK(tri.realizable[0]);

  auto edge = compute_kH(SmallGraph::complete(2), 4);
  CHECK(edge.k_H == 3);
  auto has = [&](const SmallGraph& g) {
    return std::any_of(edge.family.begin(), edge.family.end(),
                       [&](const SmallGraph& f) { return isomorphic(f, g); });
  };
  CHECK(has(SmallGraph::path(3)));
  CHECK(has(SmallGraph::complete(3)));
}

TEST_CASE("cache round trip") {
  auto a = h_game_solver(SmallGraph::complete(3));
  a->solve(SmallGraph::complete(6));
  const std::string path = "solver_cache_test.bin";
  a->save(path);
  auto b = h_game_solver(SmallGraph::complete(3));
  REQUIRE(b->load(path));
  CHECK(b->memo_size() == a->memo_size());
  auto other = connectivity_solver();
  CHECK_FALSE(other->load(path));  // name mismatch
  std::remove(path.c_str());
}

TEST_CASE("solver-driven Maker") {
  Board k5 = Board::complete(5);
  auto tri = h_game_solver(SmallGraph::complete(3));
  auto win = h_subgraph_win(SmallGraph::complete(3));
  for (const auto& adv : adversary_names())
    for (Seed s = 1; s <= 5; ++s) {
      SolverMaker maker(k5, *tri);
      auto breaker = make_adversary(adv, s);
      CHECK(play(k5, maker, *breaker, 1, *win).winner == Side::maker);
    }
  CHECK_THROWS_AS(SolverMaker(Board::complete(8), *tri), PreconditionError);
}

}
