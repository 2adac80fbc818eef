#include <algorithm>
#include <random>

#include "doctest.h"
#include "mbrgg/blob.hpp"
#include "support/blob_cases.hpp"

using namespace mbrgg;

using blob_cases::EdgeSet;

TEST_SUITE("blob") {

TEST_CASE("verifier") {
  EdgeSet f;
  BlobCycle c{{0, 1, 2, 3, 4, 5}, 3};
  f.cycle(c);
  Graph g(6, f.edges);
  CHECK(verify_blob_cycle(c, g).ok);
  BlobCycle wrong{{0, 1, 2, 3, 4, 5}, 4};  // 0-3 is not an edge
  CHECK_FALSE(verify_blob_cycle(wrong, g).ok);
  BlobCycle repeat{{0, 1, 2, 0, 4, 5}, 3};
  CHECK_FALSE(verify_blob_cycle(repeat, g).ok);
}

TEST_CASE("random surgeries") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 1000; ++it) {
    CHECK(blob_cases::edge_pair(rng) == "");
    CHECK(blob_cases::vertex(rng) == "");
    CHECK(blob_cases::merge(rng) == "");
  }
  for (int it = 0; it < 200; ++it) CHECK(blob_cases::conglomerate(rng) == "");
}

TEST_CASE("insertion cases keep or shrink the blob as expected") {
  // Vertex 10 needs |C|/2 = 5 neighbours on a 10-cycle with a 5-blob (ell = 0).
  BlobCycle c{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 5};
  // Neighbours outside the blob: s unchanged.
  EdgeSet f;
  f.cycle(c);
  for (Vertex u : {5u, 6u, 7u, 8u, 9u}) f.edges.push_back({u, 10});
  Graph g(11, f.edges);
  auto r = blob_insert_vertex(c, 10, g, 0);
  CHECK(r.s == 5);
  CHECK(verify_blob_cycle(r, g).ok);

  // Only blob neighbours: the blob shrinks by at most two.
  EdgeSet h;
  h.cycle(c);
  for (Vertex u : {0u, 1u, 2u, 3u, 4u}) h.edges.push_back({u, 10});
  Graph g2(11, h.edges);
  auto r2 = blob_insert_vertex(c, 10, g2, 0);
  CHECK(r2.s + 2 >= 5);
  CHECK(r2.s <= 5);
  CHECK(verify_blob_cycle(r2, g2).ok);
}

TEST_CASE("conglomerate without marked vertices") {
  EdgeSet f;
  BlobCycle c{{}, 30};
  for (Vertex i = 0; i < 30; ++i) c.order.push_back(i);
  f.cycle(c);
  Graph alone(30, f.edges);
  CHECK(blob_conglomerate(c, {}, {}, alone).order == c.order);
}

TEST_CASE("conglomerate rejects a small blob") {
  EdgeSet f;
  BlobCycle c{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 4};
  f.cycle(c);
  for (Vertex v = 0; v < 10; ++v) f.edges.push_back(make_edge(v, 10));
  Graph g(11, f.edges);
  CHECK_THROWS_AS(blob_conglomerate(c, {}, {10}, g), PreconditionError);
}

TEST_CASE("blob builder") {
  for (std::size_t k : {3u, 4u}) {
    const std::size_t s = blob_builder_min_size(k);
    const int games = k == 3 ? 50 : 20;
    int wins = 0;
    for (int gi = 0; gi < games; ++gi) {
      Board b = Board::complete(s);
      std::vector<Vertex> vs(s);
      for (std::size_t i = 0; i < s; ++i) vs[i] = static_cast<Vertex>(i);
      auto game = std::make_unique<BlobBuilderGame>(b, vs, k);
      auto* view = game.get();
      LocalGameStrategy maker(std::move(game));
      RandomStrategy breaker(gi + 1);
      auto out = play(b, maker, breaker, 1, *connectivity_win());
      auto bc = view->extract(out.maker_graph);
      wins += bc && verify_blob_cycle(*bc, out.maker_graph).ok && bc->size() == s && bc->s >= k;
    }
    CHECK(wins >= games * 95 / 100);
  }
  Board small = Board::complete(5);
  CHECK_THROWS_AS(BlobBuilderGame(small, {0, 1, 2, 3, 4}, 4), PreconditionError);
}

}
