// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
// Usage: acceptance [criterion numbers...]   (default: all twelve)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbrgg/adversaries.hpp"
#include "mbrgg/geometry.hpp"
#include "mbrgg/grand_strategy.hpp"
#include "mbrgg/harness.hpp"
#include "mbrgg/lehman.hpp"
#include "mbrgg/local_games.hpp"
#include "mbrgg/packing.hpp"
#include "mbrgg/solver.hpp"
#include "support/blob_cases.hpp"

using namespace mbrgg;
using std::numbers::pi;

namespace {

// ------------------------------------------------------------ tolerances
constexpr double kSigma = 3.0;                 // Monte-Carlo agreement, in standard errors
constexpr double kHitCoincidence = 0.90;       // criterion 7
constexpr double kHGameCoincidence = 0.95;     // criterion 8
constexpr double kConnLimitTol = 0.10;         // criterion 9, absolute
constexpr double kHamLimitTol = 0.12;          // criterion 9, absolute
constexpr double kZtRelTol = 0.20;             // criterion 9, relative
constexpr double kPoissonMeanRelTol = 0.05;    // criterion 10
constexpr double kVarMeanLo = 0.9, kVarMeanHi = 1.1;
constexpr double kDissectionRate = 0.90;       // criterion 12

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

const ResultRow& row(const std::vector<ResultRow>& rows, const std::string& measure, double n) {
  for (const auto& r : rows)
    if (r.measure == measure && r.n == n) return r;
  throw std::runtime_error("missing row " + measure + " at n=" + fmt(n));
}

// |estimate - target| shrinks from n1 to n2, up to sampling noise.
bool trend_ok(const ResultRow& a, const ResultRow& b, double target) {
  const double noise = kSigma * std::hypot(a.stderr_, b.stderr_);
  return std::abs(b.estimate - target) <= std::abs(a.estimate - target) + noise;
}

// ------------------------------------------------------------ 1
Result exact_solver_triangle() {
  auto tri = h_game_solver(SmallGraph::complete(3));
  auto kh = compute_kH(SmallGraph::complete(3), 6);
  bool four_all_breaker = true;
  for (const auto& g : enumerate_graphs(4)) four_all_breaker = four_all_breaker && tri->solve(g) == Side::breaker;
  const SmallGraph k5e = named_graph("k5-e");
  const Side maker_first = tri->solve(SolverPosition{5, k5e.mask(), 0, 0, Side::maker});
  const Side breaker_first = tri->solve(SolverPosition{5, k5e.mask(), 0, 0, Side::breaker});
  const bool ok = kh.k_H == 5 && maker_first == Side::maker && four_all_breaker;
  return {ok, "k_H=" + std::to_string(kh.k_H) + ", K5-e Maker-first: " + to_string(maker_first) +
                  " (Breaker-first: " + to_string(breaker_first) + "), 4-vertex boards all Breaker: " +
                  (four_all_breaker ? "yes" : "no")};
}

// ------------------------------------------------------------ 2
Result connectivity_on_cliques() {
  auto conn = connectivity_solver();
  bool ok = true;
  std::string s = "solver";
  for (int n = 2; n <= 5; ++n) {
    const bool maker = conn->solve(SmallGraph::complete(n)) == Side::maker;
    ok = ok && maker == (n >= 4);
    s += " K" + std::to_string(n) + "=" + (maker ? "M" : "B");
  }
  s += "; packing";
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<Edge> es;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j) es.push_back({i, j});
    auto pair = two_tree_packing(n, es);
    const bool packs = pair && verify_tree_pair(n, es, *pair);
    if (n >= 4) ok = ok && packs;
    if (n == 3) ok = ok && !packs;
    s += " K" + std::to_string(n) + "=" + (packs ? "y" : "n");
  }
  return {ok, s};
}

// ------------------------------------------------------------ 3
Result lehman_games() {
  std::size_t games = 0, wins = 0, nonpack_runs = 0, breaker_wins = 0, graphs = 0;
  auto win = connectivity_win();
  for (Seed gs = 1; graphs < 200; ++gs) {
    const double n = 15 + static_cast<double>(gs % 26);
    auto ps = std::make_shared<PointSet>(sample(SamplingModel::binomial, n, derive_seed(3, gs)));
    EdgeProcess proc(ps, 1.5);
    auto det = two_disjoint_spanning_trees();
    auto hit = hitting_radius(proc, *det);
    if (!hit.attained || *hit.witness_edge == 0) continue;
    ++graphs;
    // The process prefix ending at the witness edge packs; one edge less does not.
    Board packable(proc.prefix_graph(*hit.witness_edge + 1));
    Board short_of(proc.prefix_graph(*hit.witness_edge));
    const auto& names = adversary_names();
    for (std::size_t k = 0; k < 5; ++k) {
      const std::string& adv = names[k < 4 ? k : gs % 4];
      LehmanMaker maker(packable);
      auto breaker = make_adversary(adv, derive_seed(gs, k));
      ++games;
      wins += play(packable, maker, *breaker, 1, *win).winner == Side::maker;
    }
    RandomStrategy naive(gs);
    auto cut = cut_attacker(gs);
    ++nonpack_runs;
    breaker_wins += play(short_of, naive, *cut, 1, *win).winner == Side::breaker;
  }
  const bool ok = wins == games && breaker_wins == nonpack_runs;
  return {ok, "Lehman " + std::to_string(wins) + "/" + std::to_string(games) + " on " +
                  std::to_string(graphs) + " packable graphs; cut vs naive Maker on non-packable " +
                  std::to_string(breaker_wins) + "/" + std::to_string(nonpack_runs)};
}

// ------------------------------------------------------------ 4
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
    for (Vertex j = static_cast<Vertex>(a); j < a + b; ++j) es.push_back({i, j});
  }
  for (Vertex j = static_cast<Vertex>(a); j < a + b; ++j) out.B.push_back(j);
  out.board = Board(a + b, es);
  return out;
}

Result local_games_exhaustive() {
  bool ok = true;
  std::string s;
  std::size_t lines = 0;
  auto note = [&](const std::string& what, const ExhaustiveReport& rep) {
    ok = ok && rep.maker_always_wins;
    lines += rep.lines;
    if (!rep.maker_always_wins) s += " LOST:" + what;
  };
  // The listed pairs plus every other supported pair on at most 12 edges.
  std::vector<std::pair<std::size_t, std::size_t>> path_pairs{{1, 4}, {2, 4}, {3, 5}, {2, 5}};
  std::vector<std::pair<std::size_t, std::size_t>> match_pairs{{1, 2}, {2, 3}};
  for (std::size_t a = 1; a <= 4; ++a)
    for (std::size_t b = 1; b <= 12; ++b) {
      const std::size_t edges = a * (a - 1) / 2 + a * b;
      if (edges > 12) continue;
      if (ab_path_supported(a, b) && std::find(path_pairs.begin(), path_pairs.end(), std::pair{a, b}) == path_pairs.end())
        path_pairs.push_back({a, b});
      if (ab_matching_supported(a, b) && std::find(match_pairs.begin(), match_pairs.end(), std::pair{a, b}) == match_pairs.end())
        match_pairs.push_back({a, b});
    }
  s += "path";
  for (auto [a, b] : path_pairs) {
    if (!ab_path_supported(a, b)) {
      ok = false;
      s += " unsupported(" + std::to_string(a) + "," + std::to_string(b) + ")";
      continue;
    }
    auto g = ab_board(a, b);
    LocalGameStrategy maker(std::make_unique<ABPathGame>(g.board, g.A, g.B));
    note("path" + std::to_string(a) + std::to_string(b),
         exhaustive_breaker(g.board, maker, [&](const Graph& m) { return ab_path_verify(m, g.A, g.B).has_value(); }));
    s += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  s += "; matching";
  for (auto [a, b] : match_pairs) {
    if (!ab_matching_supported(a, b)) {
      ok = false;
      s += " unsupported(" + std::to_string(a) + "," + std::to_string(b) + ")";
      continue;
    }
    auto g = ab_board(a, b);
    LocalGameStrategy maker(std::make_unique<ABMatchingGame>(g.board, g.A, g.B));
    note("match" + std::to_string(a) + std::to_string(b),
         exhaustive_breaker(g.board, maker, [&](const Graph& m) { return ab_matching_verify(m, g.A, g.B).has_value(); }));
    s += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  s += "; clique path s=3..6";
  for (std::size_t n = 3; n <= 6; ++n) {
    Board k = Board::complete(n);
    std::vector<Vertex> vs(n);
    for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<Vertex>(i);
    LocalGameStrategy maker(std::make_unique<CliquePathGame>(k, vs));
    note("clique" + std::to_string(n), exhaustive_breaker(k, maker, [&](const Graph& m) {
           auto p = clique_path_extract(m, vs);
           return p && p->size() + 1 >= n;
         }));
  }
  return {ok, s + "; " + std::to_string(lines) + " positions"};
}

// ------------------------------------------------------------ 5
Result blob_properties() {
  constexpr int kPer = 10'000;
  std::mt19937_64 rng(2024);
  std::map<std::string, std::function<std::string(std::mt19937_64&)>> ops{
      {"edge_pair", [](std::mt19937_64& r) { return blob_cases::edge_pair(r); }},
      {"vertex", [](std::mt19937_64& r) { return blob_cases::vertex(r); }},
      {"merge", [](std::mt19937_64& r) { return blob_cases::merge(r); }},
      {"conglomerate", [](std::mt19937_64& r) { return blob_cases::conglomerate(r); }}};
  std::size_t bad = 0;
  std::string s, first;
  for (auto& [name, op] : ops) {
    std::size_t v = 0;
    for (int i = 0; i < kPer; ++i)
      if (auto why = op(rng); !why.empty()) {
        ++v;
        if (first.empty()) first = name + ": " + why;
      }
    bad += v;
    s += (s.empty() ? "" : ", ") + name + " " + std::to_string(v) + "/" + std::to_string(kPer);
  }
  return {bad == 0, "violations: " + s + (first.empty() ? "" : " (first: " + first + ")")};
}

// ------------------------------------------------------------ 6
bool in_disk(Point p, Point c, double r) { return dist2(p, c) <= r * r; }

Result geometry_oracles() {
  constexpr std::uint64_t kSamples = 1'000'000;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t checks = 0, confirmed_off = 0, first_stage_off = 0;
  double worst = 0;
  Seed mc_seed = 1;
  // A 3-sigma miss is re-run once with fresh samples: a biased closed form
  // fails both, while chance misses across 400 comparisons do not.
  auto compare = [&](double exact, const std::function<bool(Point)>& region, Box box) {
    ++checks;
    auto est = mc_area(region, box, kSamples, mc_seed++);
    double z = std::abs(est.value - exact) / std::max(est.se, 1e-300);
    worst = std::max(worst, z);
    if (z <= kSigma) return;
    ++first_stage_off;
    auto again = mc_area(region, box, kSamples, mc_seed++);
    if (std::abs(again.value - exact) > kSigma * again.se) ++confirmed_off;
  };
  for (int i = 0; i < 100; ++i) {
    const double r = 0.05 + 0.15 * u(rng), d = 2 * r * u(rng), h = r * u(rng) * 0.999;
    const Point x{0.5, 0.5}, y{0.5 + d, 0.5};
    compare(disk_diff_area(d, r), [&](Point p) { return in_disk(p, x, r) && !in_disk(p, y, r); },
            {0.5 - r, 0.5 - r, 0.5 + r, 0.5 + r});
    const Point c{h, 0.5};
    compare(disk_square_area(h, r), [&](Point p) { return p.x >= 0 && in_disk(p, c, r); },
            {0, 0.5 - r, h + r, 0.5 + r});
    const DiskPairFrame f{0.2 * r * u(rng), 0.8 * r * u(rng), pi * (u(rng) - 0.5), r};
    const Point a{f.h, 0.5}, b{f.h + f.d * std::cos(f.alpha), 0.5 + f.d * std::sin(f.alpha)};
    const auto nb = union_near_boundary_areas(f);
    const Box box{0, 0.5 - 1.3 * r, f.h + 1.3 * r, 0.5 + 1.3 * r};
    compare(nb.union_exact, [&](Point p) { return in_disk(p, a, r) || in_disk(p, b, r); }, box);
    compare(nb.diff_exact, [&](Point p) { return in_disk(p, b, r) && !in_disk(p, a, r); }, box);
  }
  std::size_t bound_violations = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double r = 0.001 + 0.49 * u(rng), d = 2 * r * u(rng), h = r * u(rng) * 0.999999;
    const double diff = disk_diff_area(d, r), sq = disk_square_area(h, r);
    bound_violations += diff < d * r * (1 - 1e-12) || diff > 4 * d * r * (1 + 1e-12);
    bound_violations += sq < pi * r * r / 2 + h * r - 1e-12 || sq > pi * r * r / 2 + 2 * h * r + 1e-12;
  }
  auto k2 = mu_H(SmallGraph::complete(2), kSamples, 99);
  const double zk2 = std::abs(k2.value - pi / 2) / k2.se;
  const bool ok = confirmed_off == 0 && bound_violations == 0 && zk2 <= kSigma;
  return {ok, std::to_string(checks) + " area comparisons, " + std::to_string(first_stage_off) +
                  " beyond 3 sigma on first draw, " + std::to_string(confirmed_off) +
                  " confirmed; max |z|=" + fmt(worst, 3) + "; bound violations " +
                  std::to_string(bound_violations) + "/20000; mu(K2)=" + fmt(k2.value, 5) +
                  " (|z|=" + fmt(zk2, 3) + ")"};
}

// ------------------------------------------------------------ 7
Result hitting_connectivity() {
  ExperimentConfig a;
  a.experiment = "hitting";
  a.game = "connectivity";
  a.n = {2000};
  a.reps = 200;
  a.seed = 71;
  ExperimentConfig b = a;
  b.n = {8000};
  b.reps = 50;
  auto ra = row(run_experiment(a), "coincidence_rate", 2000);
  auto rb = row(run_experiment(b), "coincidence_rate", 8000);
  const bool ok = ra.estimate >= kHitCoincidence && rb.estimate >= ra.estimate;
  return {ok, "coincidence " + fmt(ra.estimate, 3) + " +- " + fmt(ra.stderr_, 2) + " at n=2000 (need >= " +
                  fmt(kHitCoincidence) + "), " + fmt(rb.estimate, 3) + " +- " + fmt(rb.stderr_, 2) +
                  " at n=8000 (need >= n=2000 rate)"};
}

// ------------------------------------------------------------ 8
Result hitting_hgame() {
  ExperimentConfig cfg;
  cfg.experiment = "hitting";
  cfg.game = "h";
  cfg.h = "triangle";
  cfg.n = {3000};
  cfg.reps = 100;
  cfg.seed = 81;
  auto rows = run_experiment(cfg);
  auto co = row(rows, "coincidence_rate", 3000);
  auto und = row(rows, "undecided_rate", 3000);
  const bool ok = co.estimate >= kHGameCoincidence;
  return {ok, "coincidence " + fmt(co.estimate, 3) + " +- " + fmt(co.stderr_, 2) + " at n=3000 (need >= " +
                  fmt(kHGameCoincidence) + "), undecided " + fmt(und.estimate, 3)};
}

// ------------------------------------------------------------ 9
Result limit_probabilities() {
  auto run = [](const std::string& game, double seed) {
    ExperimentConfig cfg;
    cfg.experiment = "limit";
    cfg.game = game;
    cfg.n = {1e4, 1e5};
    cfg.x = {0};
    cfg.reps = 500;
    cfg.seed = static_cast<Seed>(seed);
    return run_experiment(cfg);
  };
  auto conn = run("connectivity", 91);
  auto ham = run("hamilton", 92);
  auto pm = run("pm", 93);
  const double pc = limit_prob(ThresholdGame::connectivity, 0), ph = limit_prob(ThresholdGame::hamilton, 0);
  const double zt = expected_obstruction_count(0);
  auto c4 = row(conn, "p_min_deg_ge_2", 1e4), c5 = row(conn, "p_min_deg_ge_2", 1e5);
  auto h5 = row(ham, "p_min_deg_ge_4", 1e5), h4 = row(ham, "p_min_deg_ge_4", 1e4);
  auto z4 = row(pm, "mean_zt", 1e4), z5 = row(pm, "mean_zt", 1e5);
  const bool conn_ok = std::abs(c5.estimate - pc) <= kConnLimitTol && trend_ok(c4, c5, pc);
  const bool ham_ok = std::abs(h5.estimate - ph) <= kHamLimitTol;
  const bool zt_ok = std::abs(z5.estimate - zt) <= kZtRelTol * zt && trend_ok(z4, z5, zt);
  std::string s = "P(mindeg>=2) " + fmt(c4.estimate, 3) + " -> " + fmt(c5.estimate, 3) + " vs " + fmt(pc, 4) +
                  (conn_ok ? " ok" : " FAIL") + "; P(mindeg>=4) " + fmt(h4.estimate, 3) + " -> " +
                  fmt(h5.estimate, 3) + " vs " + fmt(ph, 4) + (ham_ok ? " ok" : " FAIL") + "; mean Zt " +
                  fmt(z4.estimate, 4) + " -> " + fmt(z5.estimate, 4) + " vs " + fmt(zt, 4) +
                  (zt_ok ? " ok" : " FAIL");
  return {conn_ok && ham_ok && zt_ok, s};
}

// ------------------------------------------------------------ 10
Result subgraph_poisson() {
  ExperimentConfig cfg;
  cfg.experiment = "poisson";
  cfg.n = {1e4};
  cfg.reps = 2000;
  cfg.seed = 101;
  cfg.params = {{"k", 2}, {"alpha", 1}};
  auto rows = run_experiment(cfg);
  auto mean = row(rows, "mean_count", 1e4), vm = row(rows, "variance_over_mean", 1e4);
  auto tv = row(rows, "tv_to_poisson", 1e4);
  const bool ok = std::abs(mean.estimate - pi / 2) <= kPoissonMeanRelTol * pi / 2 &&
                  vm.estimate >= kVarMeanLo && vm.estimate <= kVarMeanHi;
  return {ok, "mean " + fmt(mean.estimate, 4) + " vs pi/2=" + fmt(pi / 2, 4) + ", var/mean " +
                  fmt(vm.estimate, 3) + ", TV " + fmt(tv.estimate, 3)};
}

// ------------------------------------------------------------ 11
Result grand_strategies() {
  std::size_t games = 0, verified = 0, instances = 0;
  std::string first_loss;
  auto run_all = [&](const GeometricGraph& g, const MarkingPlan& plan, GrandGame game, Seed seed) {
    Board board(g.graph());
    for (const auto& adv : adversary_names()) {
      GrandMaker maker(board, g, plan);
      auto breaker = make_adversary(adv, seed, maker.focus_edges());
      auto win = game == GrandGame::hamilton ? hamilton_win() : perfect_matching_win();
      auto out = play(board, maker, *breaker, 1, *win);
      ++games;
      if (out.winner == Side::maker && out.certificate_checked)
        ++verified;
      else if (first_loss.empty())
        first_loss = to_string(game) + " vs " + adv + ": " + out.report;
    }
  };
  for (Seed s = 0; s < 20; ++s)
    for (GrandGame game : {GrandGame::hamilton, GrandGame::perfect_matching}) {
      SyntheticOptions o;
      o.even = game == GrandGame::perfect_matching;
      auto inst = synthetic_instance(o, 100 + s);
      auto g = build_graph(inst.points, inst.r);
      MarkingParams mp;
      mp.game = game;
      auto plan = marking_plan(g, analyze(g, inst.dissection), mp);
      if (!plan.ok()) {
        if (first_loss.empty()) first_loss = "synthetic plan rejected: " + plan.diagnostics[0].condition;
        games += 4;
        continue;
      }
      ++instances;
      run_all(g, plan, game, 7 + s);
    }
  // Real samples at the connectivity scaling: played wherever the checker passes.
  std::size_t real_tried = 0, real_passed = 0;
  for (Seed s = 1; s <= 10; ++s)
    for (GrandGame game : {GrandGame::hamilton, GrandGame::perfect_matching}) {
      const double n = 2000;
      auto ps = std::make_shared<PointSet>(sample(SamplingModel::binomial, n, derive_seed(111, s)));
      if (game == GrandGame::perfect_matching && ps->size() % 2) continue;
      const double r = ThresholdScaling::at(game == GrandGame::hamilton ? ThresholdGame::hamilton
                                                                        : ThresholdGame::perfect_matching,
                                            n, 0).r;
      auto g = build_graph(ps, r);
      DissectionParams dp;
      dp.T = 60;
      dp.r = r;
      MarkingParams mp;
      mp.game = game;
      ++real_tried;
      auto plan = marking_plan(g, analyze(g, dp), mp);
      if (!plan.ok()) continue;
      ++real_passed;
      run_all(g, plan, game, s);
    }
  const bool ok = games > 0 && verified == games;
  return {ok, std::to_string(verified) + "/" + std::to_string(games) + " verified on " +
                  std::to_string(instances) + " synthetic plans (T=60, ell=3); real samples passing the checker " +
                  std::to_string(real_passed) + "/" + std::to_string(real_tried) +
                  (first_loss.empty() ? "" : "; first loss: " + first_loss)};
}

// ------------------------------------------------------------ 12
Result dissection_frequencies() {
  ExperimentConfig cfg;
  cfg.experiment = "dissection";
  cfg.game = "connectivity";
  cfg.n = {1e5};
  cfg.x = {0};
  cfg.reps = 50;
  cfg.seed = 121;
  cfg.params = {{"eta", 0.05}, {"T", 10}, {"k", 2}};
  auto rows = run_experiment(cfg);
  auto all = row(rows, "str_all", 1e5), two = row(rows, "two_obstruction_sufficiency", 1e5);
  auto good = row(rows, "mean_good_fraction", 1e5);
  std::string strs;
  for (int i = 1; i <= 6; ++i) strs += " " + fmt(row(rows, "str" + std::to_string(i), 1e5).estimate, 2);
  const bool ok = all.estimate >= kDissectionRate && two.estimate >= kDissectionRate;
  return {ok, "config n=1e5 x=0 eta=0.05 T=10 m=" + std::to_string(cells_per_side(1e5, 0.05)) +
                  " reps=50; all-STR " + fmt(all.estimate, 3) + " (STR1..6:" + strs +
                  "), 2-obstruction sufficiency " + fmt(two.estimate, 3) + ", good-cell fraction " +
                  fmt(good.estimate, 3)};
}

struct Criterion {
  int id;
  const char* name;
  Result (*run)();
};

const Criterion kCriteria[] = {
    {1, "exact solver: triangle game facts", exact_solver_triangle},
    {2, "connectivity game on K_n iff n >= 4", connectivity_on_cliques},
    {3, "Lehman strategy and cut adversary", lehman_games},
    {4, "local games win every Breaker line", local_games_exhaustive},
    {5, "blob surgery invariants", blob_properties},
    {6, "geometry against Monte-Carlo oracles", geometry_oracles},
    {7, "hitting radius coincidence, connectivity", hitting_connectivity},
    {8, "hitting radius coincidence, triangle game", hitting_hgame},
    {9, "limiting probabilities", limit_probabilities},
    {10, "subgraph counts are Poisson", subgraph_poisson},
    {11, "grand strategies end to end", grand_strategies},
    {12, "dissection structure frequencies", dissection_frequencies},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failed = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++ran;
    failed += !r.pass;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed ? 1 : 0;
}
