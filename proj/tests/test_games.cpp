#include <random>
#include <sstream>

#include "doctest.h"
#include "mbrgg/adversaries.hpp"
#include "mbrgg/grand_strategy.hpp"
#include "mbrgg/lehman.hpp"

using namespace mbrgg;

namespace {

Board cycle_board(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex i = 0; i < n; ++i) es.push_back(make_edge(i, static_cast<Vertex>((i + 1) % n)));
  return Board(n, es);
}

}  // namespace

TEST_SUITE("games") {

TEST_CASE("win conditions") {
  Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  std::string why;
  CHECK(hamilton_win()->check(c5, nullptr, &why));
  Graph pm6(6, {{0, 1}, {2, 3}, {4, 5}});
  CHECK(perfect_matching_win()->check(pm6, nullptr, &why));
  CHECK_FALSE(h_subgraph_win(SmallGraph::complete(3))->check(c5, nullptr, &why));
  CHECK_FALSE(connectivity_win()->check(pm6, nullptr, &why));

  // A wrong certificate is rejected even when the graph qualifies.
  Certificate bad;
  bad.kind = Certificate::Kind::hamilton_cycle;
  bad.cycle = {0, 2, 1, 3, 4};
  CHECK_FALSE(hamilton_win()->check(c5, &bad, &why));
}

TEST_CASE("small connectivity games") {
  auto win = connectivity_win();
  Board k3 = Board::complete(3);
  for (Seed s = 1; s <= 20; ++s) {
    RandomStrategy maker(s), breaker(s + 100);
    CHECK(play(k3, maker, breaker, 1, *win).winner == Side::breaker);
  }
  Board empty(3, {});
  FirstFreeStrategy m, b;
  CHECK(play(empty, m, b, 1, *win).winner == Side::breaker);

  Board k4 = Board::complete(4);
  for (Seed s = 1; s <= 1000; ++s) {
    LehmanMaker maker(k4);
    auto breaker = random_breaker(s);
    CHECK(play(k4, maker, *breaker, 1, *win).winner == Side::maker);
  }
  for (Seed s = 1; s <= 50; ++s) {
    LehmanMaker maker(k4);
    auto breaker = cut_attacker(s);
    auto out = play(k4, maker, *breaker, 1, *win);
    CHECK(out.winner == Side::maker);
    CHECK(out.certificate_checked);
    CHECK(maker.invariant_violations() == 0);
  }
  Board c4 = cycle_board(4);
  for (Seed s = 1; s <= 20; ++s) {
    RandomStrategy naive(s);
    auto breaker = cut_attacker(s);
    CHECK(play(c4, naive, *breaker, 1, *win).winner == Side::breaker);
  }
}

TEST_CASE("pairing strategy keeps one edge per pair") {
  std::mt19937_64 rng(8);
  Board k30 = Board::complete(30);
  std::vector<EdgeId> ids(k30.size());
  for (EdgeId i = 0; i < ids.size(); ++i) ids[i] = i;
  for (int game = 0; game < 1000; ++game) {
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    for (std::size_t i = 0; i < 200; i += 2) pairs.push_back({ids[i], ids[i + 1]});
    auto maker = pairing_strategy(k30, pairs, std::make_unique<RandomStrategy>(game + 1));
    RandomStrategy breaker(game + 7);
    GameState st(k30);
    while (!st.finished()) {
      Strategy& who = st.to_move() == Side::maker ? static_cast<Strategy&>(*maker) : breaker;
      Strategy& other = st.to_move() == Side::maker ? static_cast<Strategy&>(breaker) : *maker;
      EdgeId e = who.next_move(st);
      REQUIRE(st.unclaimed(e));
      st.claim(e);
      other.on_opponent_move(st, e);
    }
    bool ok = true;
    for (auto [a, b] : pairs) ok = ok && (st.owner(a) == Side::maker || st.owner(b) == Side::maker);
    CHECK(ok);
  }

  Board two(3, {{0, 1}, {1, 2}});
  auto maker = pairing_strategy(two, {{0, 1}}, std::make_unique<FirstFreeStrategy>());
  FirstFreeStrategy breaker;
  auto out = play(two, *maker, breaker, 1, *connectivity_win());
  CHECK(out.transcript[0].edge == 0);
  CHECK(out.transcript[1].edge == 1);
}

TEST_CASE("transcripts replay") {
  Board k6 = Board::complete(6);
  LehmanMaker maker(k6);
  auto breaker = low_degree_attacker(3);
  auto win = connectivity_win();
  auto out = play(k6, maker, *breaker, 1, *win);
  std::stringstream ss;
  write_transcript(ss, k6, out.transcript);
  auto moves = read_transcript(ss, k6);
  REQUIRE(moves.size() == out.transcript.size());
  auto again = replay(k6, moves, 1, *win, out.certificate ? &*out.certificate : nullptr);
  CHECK(again.winner == out.winner);
}

TEST_CASE("adversaries only claim free edges") {
  auto ps = std::make_shared<PointSet>(sample(SamplingModel::binomial, 150, 2));
  auto g = build_graph(ps, 0.15);
  Board board(g.graph());
  for (const auto& name : adversary_names())
    for (Seed s = 1; s <= 3; ++s) {
      RandomStrategy maker(s);
      auto breaker = make_adversary(name, s);
      auto out = play(board, maker, *breaker, 1, *connectivity_win());
      CHECK_FALSE(out.forfeit.has_value());
      CHECK(out.transcript.size() == board.size());
    }
}

TEST_CASE("connectivity Maker preconditions") {
  // A pendant vertex: Breaker isolates it, so the strategy refuses.
  Board pendant(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  CHECK_THROWS_AS(maker_connectivity(pendant), PreconditionError);
  auto maker = maker_connectivity(Board::complete(4));
  auto breaker = cut_attacker(1);
  CHECK(play(Board::complete(4), *maker, *breaker, 1, *connectivity_win()).winner == Side::maker);
}

TEST_CASE("low-degree attacker beats a passive Maker below degree four") {
  // 3-regular circulant: Breaker takes an edge at a vertex before Maker can hold four.
  std::vector<Edge> es;
  const Vertex n = 10;
  for (Vertex i = 0; i < n; ++i) {
    es.push_back(make_edge(i, (i + 1) % n));
    if (i < n / 2) es.push_back(make_edge(i, i + n / 2));
  }
  Board b(n, es);
  for (Seed s = 1; s <= 10; ++s) {
    RandomStrategy maker(s);
    auto breaker = low_degree_attacker(s, 4);
    CHECK(play(b, maker, *breaker, 1, *hamilton_win()).winner == Side::breaker);
  }
}

}
