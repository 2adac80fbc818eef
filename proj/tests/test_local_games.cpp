#include "doctest.h"
#include "mbrgg/local_games.hpp"

using namespace mbrgg;

namespace {

// G_{a,b}: A = 0..a-1 a clique, B = a..a+b-1 independent, all A-B pairs.
struct ABBoard {
  Board board;
  std::vector<Vertex> A, B;
};

ABBoard ab_board(std::size_t a, std::size_t b) {
  ABBoard out;
  std::vector<Edge> es;
  for (Vertex i = 0; i < a; ++i) {
    out.A.push_back(i);
    for (Vertex j = i + 1; j < a; ++j) es.push_back({i, j});
    for (Vertex j = a; j < a + b; ++j) es.push_back({i, j});
  }
  for (Vertex j = a; j < a + b; ++j) out.B.push_back(j);
  out.board = Board(a + b, es);
  return out;
}

std::vector<Vertex> iota_vertices(std::size_t s) {
  std::vector<Vertex> v(s);
  for (std::size_t i = 0; i < s; ++i) v[i] = static_cast<Vertex>(i);
  return v;
}

bool path_long_enough(const Graph& g, const std::vector<Vertex>& vs) {
  auto p = clique_path_extract(g, vs);
  return p && p->size() + 1 >= vs.size();
}

// Runs Maker's local strategy against a random Breaker.
Graph random_game(const Board& board, std::unique_ptr<LocalGame> game, Seed seed) {
  LocalGameStrategy maker(std::move(game));
  RandomStrategy breaker(seed);
  return play(board, maker, breaker, 1, *connectivity_win()).maker_graph;
}

}  // namespace

TEST_SUITE("local_games") {

TEST_CASE("supported (a,b) pairs") {
  for (auto [a, b] : {std::pair{1, 4}, {2, 4}, {3, 5}, {2, 5}}) CHECK(ab_path_supported(a, b));
  for (auto [a, b] : {std::pair{1, 2}, {2, 3}, {3, 4}}) CHECK(ab_matching_supported(a, b));
  CHECK_FALSE(ab_path_supported(1, 3));
  CHECK_FALSE(ab_matching_supported(1, 1));
}

TEST_CASE("(a,b) path game, every Breaker line") {
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 6; ++b) {
      if (!ab_path_supported(a, b) || a * (a - 1) / 2 + a * b > 18) continue;
      auto g = ab_board(a, b);
      LocalGameStrategy maker(std::make_unique<ABPathGame>(g.board, g.A, g.B));
      auto rep = exhaustive_breaker(g.board, maker, [&](const Graph& m) {
        return ab_path_verify(m, g.A, g.B).has_value();
      });
      INFO("a=" << a << " b=" << b);
      CHECK(rep.maker_always_wins);
    }
}

TEST_CASE("(1,4) path: two edges at the A vertex") {
  auto g = ab_board(1, 4);
  for (Seed s = 1; s <= 50; ++s) {
    auto m = random_game(g.board, std::make_unique<ABPathGame>(g.board, g.A, g.B), s);
    CHECK(m.degree(0) >= 2);
    auto paths = ab_path_verify(m, g.A, g.B);
    REQUIRE(paths);
    CHECK(paths->size() == 1);
  }
}

TEST_CASE("(a,b) matching game, every Breaker line") {
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 5; ++b) {
      if (!ab_matching_supported(a, b)) continue;
      auto g = ab_board(a, b);
      LocalGameStrategy maker(std::make_unique<ABMatchingGame>(g.board, g.A, g.B));
      auto rep = exhaustive_breaker(g.board, maker, [&](const Graph& m) {
        return ab_matching_verify(m, g.A, g.B).has_value();
      });
      INFO("a=" << a << " b=" << b);
      CHECK(rep.maker_always_wins);
    }
}

TEST_CASE("(3,4) matching vs random Breaker") {
  auto g = ab_board(3, 4);
  for (Seed s = 1; s <= 1000; ++s) {
    auto m = random_game(g.board, std::make_unique<ABMatchingGame>(g.board, g.A, g.B), s);
    CHECK(ab_matching_verify(m, g.A, g.B).has_value());
  }
}

TEST_CASE("clique path game") {
  for (std::size_t s = 3; s <= 6; ++s) {
    Board k = Board::complete(s);
    auto vs = iota_vertices(s);
    LocalGameStrategy maker(std::make_unique<CliquePathGame>(k, vs));
    auto rep = exhaustive_breaker(k, maker, [&](const Graph& m) { return path_long_enough(m, vs); });
    INFO("s=" << s);
    CHECK(rep.maker_always_wins);
  }
  Board k5 = Board::complete(5);
  auto vs = iota_vertices(5);
  for (Seed s = 1; s <= 1000; ++s)
    CHECK(path_long_enough(random_game(k5, std::make_unique<CliquePathGame>(k5, vs), s), vs));
}

TEST_CASE("star game keeps half") {
  Board k9 = Board::complete(9);
  std::vector<Vertex> leaves{1, 2, 3, 4, 5, 6, 7, 8};
  for (Seed s = 1; s <= 100; ++s) {
    auto m = random_game(k9, std::make_unique<StarGame>(k9, 0, leaves), s);
    CHECK(m.degree(0) >= leaves.size() / 2);
  }
}

TEST_CASE("exhaustive adversary finds a losing strategy") {
  // First-free Maker on C4 connectivity loses; the walk must report a counterexample.
  Board c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  LocalGameStrategy maker(std::make_unique<PairingGame>("none", std::vector<std::pair<EdgeId, EdgeId>>{}));
  auto rep = exhaustive_breaker(c4, maker, [](const Graph& m) { return is_connected(m); });
  CHECK_FALSE(rep.maker_always_wins);
  CHECK_FALSE(rep.counterexample.empty());
}

}
