#pragma once

// Closed-form threshold limits and the Monte-Carlo experiments that compare
// them with simulation. Replications run in parallel with per-replication
// derived seeds, so results do not depend on the thread count.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mbrgg/common.hpp"
#include "mbrgg/rgg.hpp"

namespace mbrgg {

enum class ThresholdGame { connectivity, perfect_matching, hamilton };
std::string to_string(ThresholdGame g);
// "connectivity" | "pm" | "hamilton".
ThresholdGame threshold_game_from_string(const std::string& s);

// connectivity/pm: pi n r^2 = ln n + ln ln n + x
// hamilton:        pi n r^2 = ln n + 5 ln ln n - 2 ln 6 + 2x
struct ThresholdScaling {
  ThresholdGame game = ThresholdGame::connectivity;
  double x = 0.0;
  double n = 0.0;
  double r = 0.0;

  static ThresholdScaling at(ThresholdGame game, double n, double x);
  // Inverse map: the offset x at which radius r sits.
  static double offset(ThresholdGame game, double n, double r);
};

double limit_prob(ThresholdGame game, double x);
double expected_obstruction_count(double x);

// Exact mu(H) where known (edge, path on three vertices), else NaN.
double mu_exact(const SmallGraph& H);

// Worker count from MBRGG_THREADS, else the hardware concurrency.
std::size_t harness_threads();
// Calls fn(i) for i in [0, count) over `threads` workers (0 = harness_threads()).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t threads = 0);

struct ExperimentConfig {
  std::string experiment = "limit";  // hitting | limit | poisson | dissection
  std::string game = "connectivity"; // connectivity | pm | hamilton | h
  std::vector<double> n{1000};
  std::vector<double> x{0.0};
  std::size_t reps = 100;
  Seed seed = 1;
  SamplingModel model = SamplingModel::binomial;
  std::string h = "triangle";         // pattern for the H-game and Poisson experiments
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
};

// JSON object with the fields above; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
std::string config_json(const ExperimentConfig& cfg);

struct ResultRow {
  std::string experiment, game, measure;
  double n = 0.0, x = 0.0;
  std::size_t reps = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double closed_form = 0.0;  // NaN when there is none
  double runtime = 0.0;      // seconds for the whole (n, x) cell
};

// Per-(n, x) seed stream: derive_seed(derive_seed(derive_seed(seed, ni), xi), rep).
Seed replication_seed(Seed base, std::size_t n_index, std::size_t x_index, std::size_t rep);

// Receives the rows of each finished (n, x) cell, in order.
using RowSink = std::function<void(const std::vector<ResultRow>&)>;

std::vector<ResultRow> run_hitting_experiment(const ExperimentConfig& cfg, const RowSink& sink = {});
std::vector<ResultRow> run_limit_experiment(const ExperimentConfig& cfg, const RowSink& sink = {});
std::vector<ResultRow> run_subgraph_poisson_experiment(const ExperimentConfig& cfg,
                                                       const RowSink& sink = {});
std::vector<ResultRow> run_dissection_experiment(const ExperimentConfig& cfg,
                                                 const RowSink& sink = {});
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const RowSink& sink = {});

inline constexpr const char* kCsvSchema = "mbrgg-results-v1";
// Header then one line per row; runtime is left out so reruns compare equal.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::string rows_json(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows);

// Degree statistics from a radius query alone, without materialising edges.
struct LowDegreeStats {
  std::size_t min_degree = 0;
  std::size_t zt = 0;  // vertices of degree <= 1 plus edges of edge-degree <= 2
};
LowDegreeStats low_degree_stats(const PointSet& ps, double r);

// Incremental detector: some k-vertex connected set spans a family member.
std::unique_ptr<Detector> family_member_detector(std::vector<SmallGraph> family);

}  // namespace mbrgg
