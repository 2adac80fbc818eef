#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "mbrgg/dissection.hpp"
#include "mbrgg/grand_strategy.hpp"

using namespace mbrgg;

namespace {

// Points placed by hand on a 10x10 grid of cells (side 0.1), r = 0.25.
struct Layout {
  std::shared_ptr<PointSet> ps = std::make_shared<PointSet>();
  std::mt19937_64 rng{3};

  // `count` points in a small disk at the centre of cell (x, y).
  void cluster(int x, int y, int count) {
    std::uniform_real_distribution<double> u(-0.005, 0.005);
    for (int i = 0; i < count; ++i)
      ps->points.push_back({(x + 0.5) * 0.1 + u(rng), (y + 0.5) * 0.1 + u(rng)});
  }
  Vertex add(double x, double y) {
    ps->points.push_back({x, y});
    return static_cast<Vertex>(ps->points.size() - 1);
  }
  DissectionAnalysis analyze(std::size_t T = 20, double separation = 1e10) {
    ps->intensity = static_cast<double>(ps->size());
    DissectionParams p;
    p.T = T;
    p.m = 10;
    p.r = 0.25;
    p.str1_fraction = 0.0;
    p.separation = separation;
    return mbrgg::analyze(build_graph(ps, 0.25), p);
  }
};

}  // namespace

TEST_SUITE("dissection") {

TEST_CASE("cells per side") {
  CHECK(cells_per_side(std::numbers::e, 1.0) == static_cast<std::size_t>(std::ceil(std::sqrt(std::numbers::e))));
  CHECK(cells_per_side(1e5, 0.05) == static_cast<std::size_t>(std::ceil(std::sqrt(1e5 / (0.0025 * std::log(1e5))))));
}

TEST_CASE("good cells in a uniform sample") {
  auto ps = std::make_shared<PointSet>(sample(SamplingModel::binomial, 1e4, 1));
  DissectionParams p;
  p.eta = 0.1;
  p.T = 1;
  p.r = 0.05;
  Dissection d(ps, p);
  CHECK(d.m() == cells_per_side(1e4, 0.1));
  // About 0.09 points per cell at this eta, so only occupancy is testable:
  // the good fraction at T = 1 is close to 1 - exp(-n/m^2).
  const double lambda = 1e4 / double(d.num_cells());
  const double expect = 1 - std::exp(-lambda), sd = std::sqrt(expect * (1 - expect) / double(d.num_cells()));
  CHECK(std::abs(d.good_fraction() - expect) <= 4 * sd + 0.01);
  std::size_t occupied = 0;
  for (CellId c = 0; c < d.num_cells(); ++c) occupied += d.count(c) > 0;
  CHECK(d.good_count() == occupied);
  std::size_t total = 0;
  for (CellId c = 0; c < d.num_cells(); ++c) total += d.count(c);
  CHECK(total == ps->size());
}

TEST_CASE("all good cells form one component") {
  Layout L;
  for (int x = 0; x < 10; ++x)
    for (int y = 0; y < 10; ++y) L.cluster(x, y, 20);
  auto a = L.analyze();
  CHECK(a.gamma.count() == 1);
  CHECK(a.gamma.components[0].size() == 100);
  CHECK(a.obstructions.empty());
  CHECK(a.str.all());
  for (auto c : a.classes.cls) CHECK(c == VertexClass::safe);
}

TEST_CASE("components, classes and obstructions") {
  Layout L;
  for (int x = 1; x <= 3; ++x)
    for (int y = 1; y <= 3; ++y) L.cluster(x, y, 25);
  L.cluster(8, 8, 25);                      // second component, far from the block
  const Vertex risky = L.add(0.85, 0.68);    // sees only the (8,8) cluster
  const Vertex lone = L.add(0.08, 0.92);     // sees nothing good
  auto a = L.analyze();
  REQUIRE(a.gamma.count() == 2);
  CHECK(a.gamma.components[0].size() == 9);
  CHECK(a.classes.cls[0] == VertexClass::safe);
  CHECK(a.classes.cls[risky] == VertexClass::risky);
  CHECK(a.classes.cls[lone] == VertexClass::dangerous);

  const Dissection& d = *a.dissection;
  auto plus = gamma_plus(d, a.gamma, a.classes, 2);
  CHECK(std::find(plus.begin(), plus.end(), risky) != plus.end());
  for (Vertex v : d.members(d.cell_at(8, 8))) CHECK(std::find(plus.begin(), plus.end(), v) != plus.end());

  bool found_plus = false, found_lone = false;
  for (const auto& ob : a.obstructions) {
    if (ob.kind == Obstruction::Kind::gamma_plus) {
      found_plus = true;
      CHECK(std::find(ob.members.begin(), ob.members.end(), risky) != ob.members.end());
    } else if (ob.members == std::vector<Vertex>{lone}) {
      found_lone = true;
    }
  }
  CHECK(found_plus);
  CHECK(found_lone);
  CHECK_FALSE(a.str.holds[4]);  // the lone vertex and the component are close in units of 1e10 r
}

TEST_CASE("close dangerous vertices form one obstruction") {
  Layout L;
  for (int x = 3; x <= 6; ++x)
    for (int y = 3; y <= 6; ++y) L.cluster(x, y, 25);
  const Vertex a1 = L.add(0.1, 0.1), a2 = L.add(0.1 + 0.25 / 200, 0.1);
  auto a = L.analyze();
  REQUIRE(a.obstructions.size() == 1);
  CHECK(a.obstructions[0].members == std::vector<Vertex>{a1, a2});
  CHECK(a.obstructions[0].crucial.empty());
}

TEST_CASE("two nearby components break STR4") {
  Layout L;
  for (int x = 1; x <= 4; ++x)
    for (int y = 1; y <= 4; ++y) L.cluster(x, y, 25);
  L.cluster(8, 8, 25);
  L.cluster(8, 1, 25);
  auto a = L.analyze();
  CHECK(a.gamma.count() == 3);
  CHECK_FALSE(a.str.holds[3]);
}

TEST_CASE("crucial vertices") {
  // One dangerous vertex between two dense cells: the close cell members see it.
  Layout L;
  for (int x = 2; x <= 5; ++x)
    for (int y = 2; y <= 5; ++y) L.cluster(x, y, 25);
  const Vertex v = L.add(0.25 + 0.22, 0.25 - 0.25);  // below the block, near cell (4,2)
  auto a = L.analyze();
  const Obstruction* ob = nullptr;
  for (const auto& o : a.obstructions)
    if (o.members == std::vector<Vertex>{v}) ob = &o;
  REQUIRE(ob != nullptr);
  CHECK(ob->crucial.size() >= 2);
  for (Vertex c : ob->crucial) {
    CHECK(a.classes.cls[c] == VertexClass::safe);
    CHECK(dist(L.ps->points[c], L.ps->points[v]) <= 0.25);
  }
}

TEST_CASE("abc counts") {
  auto ps = std::make_shared<PointSet>();
  const double r = 0.1;
  ps->points = {{0.5, 0.5}, {0.5 + r / 200, 0.5}, {0.9, 0.9}};
  auto z = abc_counts(*ps, r, 0, 1);
  CHECK(z.a == 0);
  CHECK(z.b == 0);
  CHECK(z.c == 0);
  ps->points.push_back({0.5 - r / 2, 0.5});  // in B(u, r - z) \ B(u, z)
  CHECK(abc_counts(*ps, r, 0, 1).a == 1);
}

TEST_CASE("bounded degree spanning tree") {
  std::vector<Point> path{{0.1, 0.1}, {0.2, 0.1}, {0.3, 0.1}, {0.4, 0.1}};
  Graph pg(4, {{0, 1}, {1, 2}, {2, 3}});
  auto t = bounded_degree_spanning_tree(path, pg);
  CHECK(t.edges.size() == 3);
  CHECK(t.length == doctest::Approx(0.3));

  std::vector<Point> star{{0.5, 0.5}};
  for (int i = 0; i < 5; ++i)
    star.push_back({0.5 + 0.1 * std::cos(2 * std::numbers::pi * i / 5),
                    0.5 + 0.1 * std::sin(2 * std::numbers::pi * i / 5)});
  Graph sg(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  auto st = bounded_degree_spanning_tree(star, sg);
  CHECK(st.max_degree == 5);

  // Dense cell block of about 500 cells.
  auto ps = std::make_shared<PointSet>();
  for (int x = 0; x < 23; ++x)
    for (int y = 0; y < 23; ++y) ps->points.push_back({(x + 0.5) / 23, (y + 0.5) / 23});
  DissectionParams p;
  p.T = 1;
  p.m = 23;
  p.r = 0.2;
  p.str1_fraction = 0;
  Dissection d(ps, p);
  auto g = gamma(d);
  REQUIRE(g.components[0].size() == 529);
  auto tree = gamma_max_tree(d, g);
  CHECK(tree.edges.size() == 528);
  CHECK(tree.max_degree <= 5);
  CHECK_THROWS_AS(bounded_degree_spanning_tree(path, Graph(4, {{0, 1}})), PreconditionError);
}

TEST_CASE("synthetic instances satisfy the structural checks") {
  for (Seed s = 1; s <= 10; ++s) {
    auto inst = synthetic_instance({}, s);
    auto g = build_graph(inst.points, inst.r);
    auto a = analyze(g, inst.dissection);
    CHECK(a.str.all());
    CHECK(a.gamma.count() == 1);
    CHECK(a.obstructions.size() >= inst.obstructions);
    for (const auto& ob : a.obstructions) CHECK(ob.crucial.size() >= ob.size());  // k + s - 2 with k = 2
    auto report = nlohmann::json::parse(dissection_report_json(a));
    CHECK(report["m"] == 20);
  }
}

}
