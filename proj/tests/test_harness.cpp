#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mbrgg/harness.hpp"

using namespace mbrgg;
using std::numbers::pi;

namespace {

const ResultRow& row(const std::vector<ResultRow>& rows, const std::string& measure) {
  for (const auto& r : rows)
    if (r.measure == measure) return r;
  throw std::runtime_error("missing measure " + measure);
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("closed forms") {
  CHECK(limit_prob(ThresholdGame::hamilton, 0) == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK(limit_prob(ThresholdGame::connectivity, 0) == doctest::Approx(std::exp(-(1 + std::sqrt(pi)))));
  CHECK(limit_prob(ThresholdGame::connectivity, 0) == doctest::Approx(0.0625).epsilon(1e-3));
  CHECK(limit_prob(ThresholdGame::perfect_matching, 0) == doctest::Approx(6.9e-5).epsilon(0.01));
  CHECK(expected_obstruction_count(0) == doctest::Approx(9.575).epsilon(1e-4));
  CHECK(expected_obstruction_count(-2) == doctest::Approx(36.46).epsilon(1e-4));
  CHECK(expected_obstruction_count(80) < 1e-10);
  CHECK(limit_prob(ThresholdGame::connectivity, 6) == doctest::Approx(0.9133).epsilon(1e-3));
  for (auto g : {ThresholdGame::connectivity, ThresholdGame::perfect_matching, ThresholdGame::hamilton}) {
    CHECK(limit_prob(g, -30) < 1e-6);
    CHECK(limit_prob(g, 40) > 1 - 1e-6);
    for (double x = -5; x < 5; x += 0.25) CHECK(limit_prob(g, x) <= limit_prob(g, x + 0.25));
  }
  for (double x = -5; x < 5; x += 0.25)
    CHECK(expected_obstruction_count(x) >= expected_obstruction_count(x + 0.25));
  CHECK(mu_exact(SmallGraph::complete(2)) == doctest::Approx(pi / 2));
  CHECK(mu_exact(SmallGraph::path(3)) == doctest::Approx(3 * std::sqrt(3.0) * pi / 8));
  CHECK(std::isnan(mu_exact(SmallGraph::complete(3))));
}

TEST_CASE("threshold scaling round trip") {
  for (auto g : {ThresholdGame::connectivity, ThresholdGame::perfect_matching, ThresholdGame::hamilton})
    for (double x : {-2.0, 0.0, 3.5}) {
      auto s = ThresholdScaling::at(g, 1e5, x);
      CHECK(ThresholdScaling::offset(g, 1e5, s.r) == doctest::Approx(x).epsilon(1e-9));
    }
  const double n = 1e4;
  auto c = ThresholdScaling::at(ThresholdGame::connectivity, n, 0);
  CHECK(pi * n * c.r * c.r == doctest::Approx(std::log(n) + std::log(std::log(n))));
  CHECK(threshold_game_from_string("pm") == ThresholdGame::perfect_matching);
  CHECK_THROWS_AS(threshold_game_from_string("chess"), PreconditionError);
}

TEST_CASE("config parsing") {
  auto cfg = parse_config(R"({"experiment": "poisson", "n": [1000, 2000], "x": [1], "reps": 7,
                              "seed": 3, "model": "poisson", "params": {"k": 2, "alpha": 1.5}})");
  CHECK(cfg.experiment == "poisson");
  CHECK(cfg.n == std::vector<double>{1000, 2000});
  CHECK(cfg.reps == 7);
  CHECK(cfg.model == SamplingModel::poisson);
  CHECK(cfg.param("alpha", 0) == 1.5);
  CHECK(cfg.param("missing", 4) == 4);
  auto again = parse_config(config_json(cfg));
  CHECK(config_json(again) == config_json(cfg));
  CHECK_THROWS(parse_config(R"({"experiment": "limit", "repetitions": 3})"));
  CHECK_THROWS(parse_config("[1, 2"));
}

TEST_CASE("low degree statistics match a graph recount") {
  const double n = 1e4;
  auto ps = sample(SamplingModel::binomial, n, 3);
  const double r = ThresholdScaling::at(ThresholdGame::connectivity, n, 0).r;
  auto stats = low_degree_stats(ps, r);
  auto g = build_graph_brute(ps, r);
  CHECK(stats.min_degree == min_degree(g));
  CHECK(stats.zt == count_low_structures(g));
}

TEST_CASE("replications do not depend on the thread count") {
  ExperimentConfig cfg;
  cfg.experiment = "limit";
  cfg.game = "pm";
  cfg.n = {2000};
  cfg.x = {0, 2};
  cfg.reps = 24;
  cfg.seed = 5;
  setenv("MBRGG_THREADS", "1", 1);
  auto serial = run_experiment(cfg);
  setenv("MBRGG_THREADS", "4", 1);
  auto parallel = run_experiment(cfg);
  unsetenv("MBRGG_THREADS");
  std::ostringstream a, b;
  write_csv(a, serial);
  write_csv(b, parallel);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("schema,experiment,game,measure,n,x,reps,estimate,stderr,closed_form\n", 0) == 0);
  CHECK(replication_seed(1, 0, 0, 0) != replication_seed(1, 0, 0, 1));
}

TEST_CASE("row sink sees every cell in order") {
  ExperimentConfig cfg;
  cfg.experiment = "limit";
  cfg.n = {500, 1000};
  cfg.x = {0};
  cfg.reps = 5;
  std::vector<double> seen;
  auto rows = run_experiment(cfg, [&](const std::vector<ResultRow>& cell) { seen.push_back(cell.front().n); });
  CHECK(seen == std::vector<double>{500, 1000});
  CHECK(rows.size() == 2);
  auto j = nlohmann::json::parse(rows_json(cfg, rows));
  CHECK(j["rows"].size() == 2);
}

TEST_CASE("poisson experiment") {
  ExperimentConfig cfg;
  cfg.experiment = "poisson";
  cfg.n = {1e4};
  cfg.reps = 300;
  cfg.params = {{"k", 2}, {"alpha", 0}};
  CHECK(row(run_experiment(cfg), "mean_count").estimate == 0);

  cfg.params = {{"k", 3}, {"alpha", 1}};
  cfg.h = "p3";
  auto p3 = row(run_experiment(cfg), "mean_count");
  CHECK(p3.closed_form == doctest::Approx(3 * std::sqrt(3.0) * pi / 8));
  CHECK(std::abs(p3.estimate - p3.closed_form) <= 3 * p3.stderr_ + 0.02 * p3.closed_form);
}

TEST_CASE("limit at large offset") {
  ExperimentConfig cfg;
  cfg.n = {5000};
  cfg.x = {6};
  cfg.reps = 300;
  auto r = row(run_experiment(cfg), "p_min_deg_ge_2");
  CHECK(std::abs(r.estimate - r.closed_form) <= 3 * r.stderr_ + 0.03);
}

TEST_CASE("hitting and dissection experiments report") {
  ExperimentConfig h;
  h.experiment = "hitting";
  h.n = {4, 300};
  h.reps = 4;
  auto rows = run_experiment(h);
  CHECK_FALSE(rows.empty());
  for (const auto& r : rows) CHECK(std::isfinite(r.estimate));

  ExperimentConfig d;
  d.experiment = "dissection";
  d.n = {1000};
  d.reps = 3;
  auto drows = run_experiment(d);
  CHECK(row(drows, "str_all").reps == 3);
}

}
