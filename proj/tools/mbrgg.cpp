// Command-line front end: sampling, graph statistics, hitting radii,
// dissection reports, single games, the exact solver, k_H and Monte Carlo.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mbrgg/adversaries.hpp"
#include "mbrgg/dissection.hpp"
#include "mbrgg/game.hpp"
#include "mbrgg/grand_strategy.hpp"
#include "mbrgg/harness.hpp"
#include "mbrgg/packing.hpp"
#include "mbrgg/rgg.hpp"
#include "mbrgg/solver.hpp"

using namespace mbrgg;
using nlohmann::json;

namespace {

// Where the points come from and which radius to use.
struct Source {
  std::string points_file;
  double n = 2000;
  Seed seed = 1;
  std::string model = "binomial";
  double r = -1;
  double x = std::numeric_limits<double>::quiet_NaN();
  std::string scaling = "connectivity";

  void add(CLI::App* app, bool radius) {
    app->add_option("--points", points_file, "Point file written by 'sample'");
    app->add_option("--n", n, "Intensity / number of points")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Sampling seed");
    app->add_option("--model", model, "binomial | poisson")
        ->check(CLI::IsMember({"binomial", "poisson"}));
    if (!radius) return;
    app->add_option("--r", r, "Connection radius");
    app->add_option("--x", x, "Offset in the threshold scaling (used when --r is absent)");
    app->add_option("--scaling", scaling, "connectivity | pm | hamilton")
        ->check(CLI::IsMember({"connectivity", "pm", "hamilton"}));
  }

  std::shared_ptr<PointSet> points() const {
    if (points_file.empty())
      return std::make_shared<PointSet>(sample(sampling_model_from_string(model), n, seed));
    std::ifstream is(points_file);
    if (!is) throw PreconditionError("cannot open " + points_file);
    return std::make_shared<PointSet>(read_points(is));
  }

  bool has_radius() const { return r >= 0 || !std::isnan(x); }
  double radius(const PointSet& ps) const {
    if (r >= 0) return r;
    if (std::isnan(x)) throw PreconditionError("give --r or --x");
    return ThresholdScaling::at(threshold_game_from_string(scaling),
                                static_cast<double>(ps.size()), x).r;
  }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw PreconditionError("cannot write " + path);
  return file;
}

json certificate_json(const Certificate& c) {
  static const char* kinds[] = {"none", "spanning_tree", "hamilton_cycle", "matching", "h_copy"};
  json j;
  j["kind"] = kinds[static_cast<int>(c.kind)];
  if (!c.cycle.empty()) j["cycle"] = c.cycle;
  if (!c.edges.empty()) {
    j["edges"] = json::array();
    for (const auto& e : c.edges) j["edges"].push_back({e.u, e.v});
  }
  if (!c.mapping.empty()) j["mapping"] = c.mapping;
  return j;
}

SmallGraph parse_board(const std::string& text) {
  // Either a named graph or "k:u-v,u-v,...".
  auto colon = text.find(':');
  if (colon == std::string::npos) return named_graph(text);
  SmallGraph g(std::stoi(text.substr(0, colon)));
  std::stringstream ss(text.substr(colon + 1));
  for (std::string item; std::getline(ss, item, ',');) {
    auto dash = item.find('-');
    if (dash == std::string::npos) throw PreconditionError("bad edge '" + item + "'");
    g.add_edge(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
  }
  return g;
}

std::unique_ptr<ExactSolver> solver_for(const std::string& game, const std::string& h) {
  if (game == "connectivity") return connectivity_solver();
  if (game == "h") return h_game_solver(named_graph(h));
  if (game.rfind("path", 0) == 0 && game.size() > 5 && game[4] == ':')
    return path_solver(std::stoi(game.substr(5)));
  throw PreconditionError("unknown solver game '" + game + "' (connectivity | h | path:<len>)");
}

// ------------------------------------------------------------ subcommands

int cmd_sample(const Source& src, const std::string& out) {
  auto ps = src.points();
  std::ofstream f;
  write_points(open_out(out, f), *ps);
  return 0;
}

int cmd_build(const Source& src, const std::string& edges_out) {
  auto ps = src.points();
  const double r = src.radius(*ps);
  auto g = build_graph(ps, r);
  const auto deg = degrees(g.graph());
  json j;
  j["n"] = g.order();
  j["r"] = r;
  j["edges"] = g.size();
  j["min_degree"] = deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
  j["max_degree"] = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  j["mean_degree"] = g.order() ? 2.0 * static_cast<double>(g.size()) / static_cast<double>(g.order()) : 0.0;
  j["components"] = connected_components(g.graph()).size();
  j["low_structures"] = count_low_structures(g.graph());
  j["pm_necessary"] = pm_necessary_holds(g.graph());
  j["two_tree_packable"] = two_tree_packing(g.graph()).has_value();
  std::cout << j.dump(2) << "\n";
  if (!edges_out.empty()) {
    std::ofstream f;
    write_edges(open_out(edges_out, f), g);
  }
  return 0;
}

int cmd_hit(const Source& src, const std::vector<std::string>& props, double r_cap) {
  auto ps = src.points();
  EdgeProcess proc(ps, r_cap > 0 ? r_cap : default_r_cap(ps->size()));
  json out = json::array();
  for (const auto& p : props) {
    std::unique_ptr<Detector> det;
    std::optional<ThresholdGame> game;
    if (p.rfind("min_deg:", 0) == 0) {
      const auto k = static_cast<std::size_t>(std::stoul(p.substr(8)));
      det = min_deg_at_least(k);
      if (k == 2) game = ThresholdGame::connectivity;
      if (k == 4) game = ThresholdGame::hamilton;
    } else if (p == "pm_necessary") {
      det = pm_necessary();
      game = ThresholdGame::perfect_matching;
    } else if (p == "two_trees") {
      det = two_disjoint_spanning_trees();
      game = ThresholdGame::connectivity;
    } else if (p.rfind("family:", 0) == 0) {
      auto kh = compute_kH(named_graph(p.substr(7)), 6);
      if (kh.k_H == 0) throw PreconditionError("no Maker-win clique up to 6 for " + p.substr(7));
      det = family_member_detector(kh.family);
    } else {
      throw PreconditionError("unknown property '" + p +
                              "' (min_deg:<k> | pm_necessary | two_trees | family:<H>)");
    }
    auto res = hitting_radius(proc, *det);
    json j{{"property", res.property_name}, {"attained", res.attained}};
    if (res.attained) {
      j["rho"] = res.rho;
      if (res.witness_edge) j["witness_edge"] = *res.witness_edge;
      if (game && ps->size() > 2)
        j["offset_x"] = ThresholdScaling::offset(*game, static_cast<double>(ps->size()), res.rho);
    }
    if (res.monotone_violation) j["monotone_violation"] = *res.monotone_violation;
    out.push_back(j);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct DissectOptions {
  double eta = 0.05;
  std::size_t T = 10;
  std::size_t m = 0;
  double separation = 1e10;
  std::string plan;  // "", "hamilton" or "pm"
  bool synthetic = false;
};

int cmd_dissect(const Source& src, const DissectOptions& o) {
  std::shared_ptr<PointSet> ps;
  DissectionParams params;
  double r;
  if (o.synthetic) {
    SyntheticOptions so;
    so.even = o.plan == "pm";
    auto inst = synthetic_instance(so, src.seed);
    ps = inst.points;
    params = inst.dissection;
    r = inst.r;
  } else {
    ps = src.points();
    r = src.radius(*ps);
    params.eta = o.eta;
    params.T = o.T;
    params.m = o.m;
    params.separation = o.separation;
    params.r = r;
  }
  auto g = build_graph(ps, r);
  auto a = analyze(g, params);
  json j;
  j["dissection"] = json::parse(dissection_report_json(a));
  if (!o.plan.empty()) {
    MarkingParams mp;
    mp.game = o.plan == "pm" ? GrandGame::perfect_matching : GrandGame::hamilton;
    j["plan"] = json::parse(plan_json(marking_plan(g, a, mp)));
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct PlayArgs {
  std::string game = "connectivity";
  std::string breaker = "random";
  Seed breaker_seed = 1;
  bool real = false;
  std::string board = "k5";
  std::string h = "triangle";
  std::string transcript, certificate;
};

int report_outcome(const Board& board, const GameOutcome& out, const PlayArgs& o) {
  std::cout << (out.winner == Side::maker ? "Maker wins" : "Breaker wins");
  if (out.certificate && out.certificate_checked) std::cout << ", certificate verified";
  if (!out.report.empty()) std::cout << " (" << out.report << ")";
  std::cout << "\nmoves: " << out.transcript.size() << ", max move time: " << out.max_move_seconds
            << " s\n";
  if (!o.transcript.empty()) {
    std::ofstream f;
    write_transcript(open_out(o.transcript, f), board, out.transcript);
  }
  if (!o.certificate.empty() && out.certificate) {
    std::ofstream f;
    open_out(o.certificate, f) << certificate_json(*out.certificate).dump() << "\n";
  }
  return 0;
}

int cmd_play(const Source& src, const PlayArgs& o) {
  if (o.game == "h") {
    const SmallGraph host = parse_board(o.board);
    std::vector<Edge> es;
    for (auto [i, j] : host.edges())
      es.push_back(make_edge(static_cast<Vertex>(i), static_cast<Vertex>(j)));
    Board board(static_cast<std::size_t>(host.order()), es);
    auto solver = h_game_solver(named_graph(o.h));
    SolverMaker maker(board, *solver);
    auto breaker = make_adversary(o.breaker, o.breaker_seed);
    auto win = h_subgraph_win(named_graph(o.h));
    return report_outcome(board, play(board, maker, *breaker, 1, *win), o);
  }
  if (o.game == "connectivity") {
    auto ps = src.points();
    std::optional<GeometricGraph> g;
    if (src.has_radius()) {
      g.emplace(build_graph(ps, src.radius(*ps)));
    } else {
      // Default: the hitting radius of two edge-disjoint spanning trees. The
      // board is the process prefix, so the witness edge is kept exactly.
      EdgeProcess proc(ps, default_r_cap(ps->size()));
      auto det = two_disjoint_spanning_trees();
      auto hit = hitting_radius(proc, *det);
      if (!hit.attained) throw PreconditionError("two spanning trees never appear below the cap");
      g.emplace(ps, hit.rho, proc.prefix_graph(*hit.witness_edge + 1));
    }
    Board board(g->graph());
    std::cout << "n=" << g->order() << " r=" << g->radius() << " edges=" << g->size() << "\n";
    auto maker = maker_connectivity(board);
    auto breaker = make_adversary(o.breaker, o.breaker_seed);
    auto win = connectivity_win();
    return report_outcome(board, play(board, *maker, *breaker, 1, *win), o);
  }
  const bool pm = o.game == "pm";
  if (!pm && o.game != "hamilton") throw PreconditionError("unknown game " + o.game);
  std::shared_ptr<PointSet> ps;
  double r;
  DissectionParams params;
  if (o.real) {
    ps = src.points();
    r = src.radius(*ps);
    params.r = r;
  } else {
    SyntheticOptions so;
    so.even = pm;
    auto inst = synthetic_instance(so, src.seed);
    ps = inst.points;
    r = inst.r;
    params = inst.dissection;
  }
  auto g = build_graph(ps, r);
  auto a = analyze(g, params);
  MarkingParams mp;
  mp.game = pm ? GrandGame::perfect_matching : GrandGame::hamilton;
  auto plan = marking_plan(g, a, mp);
  if (!plan.ok()) {
    std::cerr << "precondition check failed:\n";
    for (const auto& d : plan.diagnostics) std::cerr << "  " << d.condition << ": " << d.witness << "\n";
    return 3;
  }
  Board board(g.graph());
  GrandMaker maker(board, g, plan);
  std::cout << "n=" << g.order() << " r=" << r << " edges=" << g.size()
            << " local games=" << maker.game_count() << "\n";
  auto breaker = make_adversary(o.breaker, o.breaker_seed, maker.focus_edges());
  auto win = pm ? perfect_matching_win() : hamilton_win();
  auto out = play(board, maker, *breaker, 1, *win);
  if (maker.last_stitch())
    for (const auto& e : maker.last_stitch()->errors) std::cerr << "stitch: " << e << "\n";
  return report_outcome(board, out, o);
}

int cmd_solve(const std::string& board_spec, const std::string& game, const std::string& h,
              bool maker_first, const std::string& cache) {
  auto solver = solver_for(game, h);
  if (!cache.empty()) solver->load(cache);
  const SmallGraph host = parse_board(board_spec);
  SolverPosition pos{host.order(), host.mask(), 0, 0, maker_first ? Side::maker : Side::breaker};
  const auto t0 = std::chrono::steady_clock::now();
  const Side winner = solver->solve(pos);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << host.to_string() << " " << solver->name() << " ("
            << (maker_first ? "Maker" : "Breaker") << " first): "
            << (winner == Side::maker ? "Maker" : "Breaker") << " wins\n"
            << "memo entries: " << solver->memo_size() << ", " << dt << " s\n";
  if (!cache.empty()) solver->save(cache);
  return 0;
}

int cmd_kh(const std::string& h, int kmax, Seed seed) {
  auto res = compute_kH(named_graph(h), kmax, seed);
  if (res.k_H == 0) {
    std::cout << "no Maker win on K_k for k <= " << kmax << "\n";
    return 1;
  }
  std::cout << "k_H=" << res.k_H << "\nF_H (" << res.family.size() << " graphs):\n";
  for (std::size_t i = 0; i < res.family.size(); ++i)
    std::cout << "  " << res.family[i].to_string()
              << (res.realizable[i] ? "  unit-disk realizable" : "  no unit-disk embedding found")
              << "\n";
  return 0;
}

int cmd_mc(ExperimentConfig cfg, const std::string& config_file, const std::string& out,
           const std::string& json_out) {
  if (!config_file.empty()) {
    std::ifstream is(config_file);
    if (!is) throw PreconditionError("cannot open " + config_file);
    std::stringstream ss;
    ss << is.rdbuf();
    cfg = parse_config(ss.str());
  }
  std::ofstream f;
  std::ostream& os = open_out(out, f);
  write_csv(os, {});
  auto rows = run_experiment(cfg, [&](const std::vector<ResultRow>& cell) {
    std::ostringstream body;
    write_csv(body, cell);
    const std::string text = body.str();
    os << text.substr(text.find('\n') + 1) << std::flush;  // drop the repeated header
    for (const auto& r : cell)
      std::cerr << r.measure << " n=" << r.n << " x=" << r.x << " runtime " << r.runtime << " s\n";
  });
  if (!json_out.empty()) {
    std::ofstream jf;
    open_out(json_out, jf) << rows_json(cfg, rows) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker games on random geometric graphs"};
  app.require_subcommand(1);

  Source src;
  std::string out;

  auto* sample_cmd = app.add_subcommand("sample", "Sample a point set and write it");
  src.add(sample_cmd, false);
  sample_cmd->add_option("--out", out, "Output file (default stdout)");

  std::string edges_out;
  auto* build_cmd = app.add_subcommand("build", "Build the geometric graph and print statistics");
  src.add(build_cmd, true);
  build_cmd->add_option("--edges", edges_out, "Write the edge list here");

  std::vector<std::string> props{"min_deg:2", "two_trees"};
  double r_cap = 0;
  auto* hit_cmd = app.add_subcommand("hit", "Hitting radii along the edge process");
  src.add(hit_cmd, false);
  hit_cmd->add_option("--property", props, "min_deg:<k> | pm_necessary | two_trees | family:<H>");
  hit_cmd->add_option("--r-cap", r_cap, "Initial process cap (default from n)");

  DissectOptions dis;
  auto* dissect_cmd = app.add_subcommand("dissect", "Dissection report (JSON)");
  src.add(dissect_cmd, true);
  dissect_cmd->add_option("--eta", dis.eta, "Cell side in units of r")->check(CLI::PositiveNumber);
  dissect_cmd->add_option("--T", dis.T, "Good-cell threshold");
  dissect_cmd->add_option("--m", dis.m, "Cells per side (0 derives it from eta)");
  dissect_cmd->add_option("--separation", dis.separation, "Dangerous-cluster linkage in units of r");
  dissect_cmd->add_option("--plan", dis.plan, "Also lay out the marking plan")
      ->check(CLI::IsMember({"hamilton", "pm"}));
  dissect_cmd->add_flag("--synthetic", dis.synthetic, "Use a synthetic instance (seed from --seed)");

  PlayArgs po;
  auto* play_cmd = app.add_subcommand("play", "Play one game and verify Maker's certificate");
  play_cmd->set_help_flag("--help", "Print this help message and exit");  // -h clashes with --h
  src.add(play_cmd, true);
  play_cmd->add_option("--game", po.game, "connectivity | hamilton | pm | h")
      ->check(CLI::IsMember({"connectivity", "hamilton", "pm", "h"}));
  play_cmd->add_option("--breaker", po.breaker, "random | cut | low_degree | cluster")
      ->check(CLI::IsMember(adversary_names()));
  play_cmd->add_option("--breaker-seed", po.breaker_seed, "Adversary seed");
  play_cmd->add_flag("--real", po.real, "hamilton/pm on a sampled graph instead of a synthetic one");
  play_cmd->add_option("--board", po.board, "Small board for --game h (name or k:u-v,...)");
  play_cmd->add_option("--h", po.h, "Pattern for --game h");
  play_cmd->add_option("--transcript", po.transcript, "Write the move transcript (JSON lines)");
  play_cmd->add_option("--certificate", po.certificate, "Write Maker's certificate (JSON)");

  std::string board_spec = "k5-e", solve_game = "h", solve_h = "triangle", cache;
  bool maker_first = false;
  auto* solve_cmd = app.add_subcommand("solve", "Exact game value on a board of at most 7 vertices");
  solve_cmd->set_help_flag("--help", "Print this help message and exit");  // -h clashes with --h
  solve_cmd->add_option("--board", board_spec, "Named graph or k:u-v,u-v,...");
  solve_cmd->add_option("--game", solve_game, "connectivity | h | path:<len>");
  solve_cmd->add_option("--h", solve_h, "Pattern for --game h");
  solve_cmd->add_flag("--maker-first", maker_first, "Maker moves first");
  solve_cmd->add_option("--cache", cache, "Solver cache file (loaded and saved)");

  std::string kh_h = "triangle";
  int kmax = 6;
  Seed kh_seed = 1;
  auto* kh_cmd = app.add_subcommand("kh", "Smallest Maker-win clique and its family");
  kh_cmd->set_help_flag("--help", "Print this help message and exit");  // -h clashes with --h
  kh_cmd->add_option("--h", kh_h, "Pattern graph");
  kh_cmd->add_option("--kmax", kmax, "Largest clique to try")->check(CLI::Range(2, 7));
  kh_cmd->add_option("--seed", kh_seed, "Seed of the realizability search");

  ExperimentConfig cfg;
  std::string config_file, json_out;
  std::vector<std::string> param_items;
  std::string model = "binomial";
  auto* mc_cmd = app.add_subcommand("mc", "Run a Monte-Carlo experiment and emit CSV");
  mc_cmd->set_help_flag("--help", "Print this help message and exit");  // -h clashes with --h
  mc_cmd->add_option("--config", config_file, "JSON experiment config (overrides the flags)");
  mc_cmd->add_option("--experiment", cfg.experiment, "hitting | limit | poisson | dissection")
      ->check(CLI::IsMember({"hitting", "limit", "poisson", "dissection"}));
  mc_cmd->add_option("--game", cfg.game, "connectivity | pm | hamilton | h");
  mc_cmd->add_option("--n", cfg.n, "One or more n values");
  mc_cmd->add_option("--x", cfg.x, "One or more offsets");
  mc_cmd->add_option("--reps", cfg.reps, "Replications per (n, x)");
  mc_cmd->add_option("--seed", cfg.seed, "Base seed");
  mc_cmd->add_option("--model", model, "binomial | poisson")->check(CLI::IsMember({"binomial", "poisson"}));
  mc_cmd->add_option("--h", cfg.h, "Pattern for H experiments");
  mc_cmd->add_option("--param", param_items, "key=value experiment parameter (repeatable)");
  mc_cmd->add_option("--out", out, "CSV output (default stdout)");
  mc_cmd->add_option("--json", json_out, "Also write a JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample_cmd) return cmd_sample(src, out);
    if (*build_cmd) return cmd_build(src, edges_out);
    if (*hit_cmd) return cmd_hit(src, props, r_cap);
    if (*dissect_cmd) return cmd_dissect(src, dis);
    if (*play_cmd) return cmd_play(src, po);
    if (*solve_cmd) return cmd_solve(board_spec, solve_game, solve_h, maker_first, cache);
    if (*kh_cmd) return cmd_kh(kh_h, kmax, kh_seed);
    if (*mc_cmd) {
      cfg.model = sampling_model_from_string(model);
      for (const auto& item : param_items) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw PreconditionError("--param expects key=value");
        cfg.params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      }
      return cmd_mc(cfg, config_file, out, json_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
