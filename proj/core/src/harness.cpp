#include "mbrgg/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mbrgg/adversaries.hpp"
#include "mbrgg/dissection.hpp"
#include "mbrgg/geometry.hpp"
#include "mbrgg/grand_strategy.hpp"
#include "mbrgg/solver.hpp"

namespace mbrgg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Mean and standard error of a sample.
Estimate mean_se(const std::vector<double>& v) {
  if (v.empty()) return {kNaN, kNaN};
  double s = 0;
  for (double a : v) s += a;
  const double mean = s / static_cast<double>(v.size());
  if (v.size() < 2) return {mean, kNaN};
  double ss = 0;
  for (double a : v) ss += (a - mean) * (a - mean);
  const double var = ss / static_cast<double>(v.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

Estimate proportion(std::size_t hits, std::size_t total) {
  if (total == 0) return {kNaN, kNaN};
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(total))};
}

ResultRow make_row(const ExperimentConfig& cfg, const std::string& measure, double n, double x,
                   std::size_t reps, Estimate e, double closed, double runtime) {
  ResultRow row;
  row.experiment = cfg.experiment;
  row.game = cfg.game;
  row.measure = measure;
  row.n = n;
  row.x = x;
  row.reps = reps;
  row.estimate = e.value;
  row.stderr_ = e.se;
  row.closed_form = closed;
  row.runtime = runtime;
  return row;
}

std::size_t checked_count(double n) {
  if (!(n >= 1)) throw PreconditionError("experiment: n must be >= 1");
  return static_cast<std::size_t>(std::llround(n));
}

// -------------------------------------------------------------- H-game detectors

// Adjacency that only grows; enough for the sparse H-game regime.
struct GrowingGraph {
  std::vector<std::vector<Vertex>> adj;
  void reset(std::size_t n) { adj.assign(n, {}); }
  void add(Vertex u, Vertex v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  bool has(Vertex u, Vertex v) const {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
  }
  // Vertices within `hops` of s, stopping once more than `cap` are seen.
  std::vector<Vertex> ball(Vertex s, std::size_t hops, std::size_t cap) const {
    std::vector<Vertex> seen{s};
    std::vector<std::size_t> depth{0};
    for (std::size_t i = 0; i < seen.size() && seen.size() <= cap; ++i) {
      if (depth[i] == hops) continue;
      for (Vertex w : adj[seen[i]])
        if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
          seen.push_back(w);
          depth.push_back(depth[i] + 1);
        }
    }
    return seen;
  }
  Graph induced(const std::vector<Vertex>& vs) const {
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (has(vs[i], vs[j])) es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    return Graph(vs.size(), std::move(es));
  }
};

class FamilyDetector : public Detector {
 public:
  explicit FamilyDetector(std::vector<SmallGraph> family) : family_(std::move(family)) {
    if (family_.empty()) throw PreconditionError("family detector: empty family");
    k_ = static_cast<std::size_t>(family_.front().order());
  }
  std::string name() const override { return "family_member"; }
  void reset(std::size_t n) override {
    g_.reset(n);
    found_ = false;
  }
  void insert(const ProcessEdge& e) override {
    g_.add(e.u, e.v);
    if (found_) return;
    auto ball = g_.ball(e.u, k_ - 1, std::numeric_limits<std::size_t>::max());
    if (ball.size() < k_) return;
    Graph local = g_.induced(ball);
    found_ = contains_family_member(local, family_, ball.size());
  }
  bool holds() override { return found_; }

 private:
  std::vector<SmallGraph> family_;
  std::size_t k_ = 0;
  GrowingGraph g_;
  bool found_ = false;
};

// Some component of at most 7 vertices is a Maker win (Breaker first).
// Components that outgrow the solver before a win are flagged.
class ComponentWinDetector : public Detector {
 public:
  explicit ComponentWinDetector(ExactSolver& solver) : solver_(&solver) {}
  std::string name() const override { return "component_maker_win"; }
  void reset(std::size_t n) override {
    g_.reset(n);
    won_ = false;
    oversized_ = false;
    witness_order_ = 0;
  }
  void insert(const ProcessEdge& e) override {
    g_.add(e.u, e.v);
    if (won_) return;
    auto comp = g_.ball(e.u, std::numeric_limits<std::size_t>::max(), ExactSolver::kMaxVertices);
    if (comp.size() > static_cast<std::size_t>(ExactSolver::kMaxVertices)) {
      oversized_ = true;
      return;
    }
    Graph local = g_.induced(comp);
    SmallGraph h(static_cast<int>(comp.size()));
    for (const Edge& le : local.edges()) h.add_edge(static_cast<int>(le.u), static_cast<int>(le.v));
    if (solver_->solve(h) == Side::maker) {
      won_ = true;
      witness_order_ = comp.size();
    }
  }
  bool holds() override { return won_; }
  bool oversized() const { return oversized_; }
  std::size_t witness_order() const { return witness_order_; }

 private:
  ExactSolver* solver_;
  GrowingGraph g_;
  bool won_ = false, oversized_ = false;
  std::size_t witness_order_ = 0;
};

double poisson_tv(const std::vector<std::size_t>& counts, double lambda) {
  std::size_t top = 0;
  for (auto c : counts) top = std::max(top, c);
  std::vector<double> freq(top + 1, 0.0);
  for (auto c : counts) freq[c] += 1.0 / static_cast<double>(counts.size());
  double tv = 0, mass = 0, p = std::exp(-lambda);
  for (std::size_t j = 0; j <= top; ++j) {
    tv += std::abs(freq[j] - p);
    mass += p;
    p *= lambda / static_cast<double>(j + 1);
  }
  tv += std::max(0.0, 1.0 - mass);  // Poisson mass beyond the observed range
  return tv / 2;
}

// Rows of the current experiment; flush() hands the latest cell to the sink.
class Collector {
 public:
  explicit Collector(const RowSink& sink) : sink_(sink) {}
  void push_back(ResultRow row) { rows_.push_back(std::move(row)); }
  void flush() {
    if (sink_ && mark_ < rows_.size())
      sink_(std::vector<ResultRow>(rows_.begin() + static_cast<std::ptrdiff_t>(mark_), rows_.end()));
    mark_ = rows_.size();
  }
  std::vector<ResultRow> take() {
    flush();
    return std::move(rows_);
  }

 private:
  const RowSink& sink_;
  std::vector<ResultRow> rows_;
  std::size_t mark_ = 0;
};

std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

// -------------------------------------------------------------- closed forms

std::string to_string(ThresholdGame g) {
  switch (g) {
    case ThresholdGame::connectivity: return "connectivity";
    case ThresholdGame::perfect_matching: return "pm";
    case ThresholdGame::hamilton: return "hamilton";
  }
  return "?";
}

ThresholdGame threshold_game_from_string(const std::string& s) {
  if (s == "connectivity") return ThresholdGame::connectivity;
  if (s == "pm" || s == "perfect_matching") return ThresholdGame::perfect_matching;
  if (s == "hamilton") return ThresholdGame::hamilton;
  throw PreconditionError("unknown threshold game: " + s);
}

ThresholdScaling ThresholdScaling::at(ThresholdGame game, double n, double x) {
  if (!(n > std::numbers::e)) throw PreconditionError("threshold scaling: n must exceed e");
  const double ln = std::log(n), lnln = std::log(ln);
  const double target = game == ThresholdGame::hamilton ? ln + 5 * lnln - 2 * std::log(6.0) + 2 * x
                                                        : ln + lnln + x;
  if (!(target > 0)) throw PreconditionError("threshold scaling: pi n r^2 would be <= 0");
  return {game, x, n, std::sqrt(target / (kPi * n))};
}

double ThresholdScaling::offset(ThresholdGame game, double n, double r) {
  const double ln = std::log(n), lnln = std::log(ln);
  const double a = kPi * n * r * r;
  return game == ThresholdGame::hamilton ? (a - ln - 5 * lnln + 2 * std::log(6.0)) / 2
                                         : a - ln - lnln;
}

double limit_prob(ThresholdGame game, double x) {
  switch (game) {
    case ThresholdGame::connectivity: {
      const double e = std::exp(-x);
      return std::exp(-(e + std::sqrt(kPi * e)));
    }
    case ThresholdGame::perfect_matching: return std::exp(-expected_obstruction_count(x));
    case ThresholdGame::hamilton: return std::exp(-std::exp(-x));
  }
  return kNaN;
}

double expected_obstruction_count(double x) {
  return (1 + kPi * kPi / 8) * std::exp(-x) + std::sqrt(kPi) * (1 + kPi) * std::exp(-x / 2);
}

double mu_exact(const SmallGraph& H) {
  if (H.order() == 2 && H.size() == 1) return kPi / 2;
  if (H.order() == 3 && H.size() == 2) return 3 * std::sqrt(3.0) * kPi / 8;
  return kNaN;
}

// -------------------------------------------------------------- parallelism

std::size_t harness_threads() {
  if (const char* env = std::getenv("MBRGG_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t threads) {
  if (threads == 0) threads = harness_threads();
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// -------------------------------------------------------------- configuration

double ExperimentConfig::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw PreconditionError("config: expected a JSON object");
  ExperimentConfig c;
  auto list = [](const nlohmann::json& v) {
    std::vector<double> out;
    if (v.is_array())
      for (const auto& a : v) out.push_back(a.get<double>());
    else
      out.push_back(v.get<double>());
    return out;
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "experiment") c.experiment = v.get<std::string>();
      else if (key == "game") c.game = v.get<std::string>();
      else if (key == "n") c.n = list(v);
      else if (key == "x") c.x = list(v);
      else if (key == "reps") c.reps = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<Seed>();
      else if (key == "model") c.model = sampling_model_from_string(v.get<std::string>());
      else if (key == "h") c.h = v.get<std::string>();
      else if (key == "params")
        for (const auto& [pk, pv] : v.items()) c.params[pk] = pv.get<double>();
      else throw PreconditionError("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("config: ") + e.what());
  }
  if (c.n.empty() || c.x.empty()) throw PreconditionError("config: n and x must be nonempty");
  return c;
}

std::string config_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["experiment"] = c.experiment;
  j["game"] = c.game;
  j["n"] = c.n;
  j["x"] = c.x;
  j["reps"] = c.reps;
  j["seed"] = c.seed;
  j["model"] = to_string(c.model);
  j["h"] = c.h;
  j["params"] = c.params;
  return j.dump();
}

Seed replication_seed(Seed base, std::size_t ni, std::size_t xi, std::size_t rep) {
  return derive_seed(derive_seed(derive_seed(base, ni), xi), rep);
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "schema,experiment,game,measure,n,x,reps,estimate,stderr,closed_form\n";
  for (const auto& r : rows)
    os << kCsvSchema << ',' << r.experiment << ',' << r.game << ',' << r.measure << ','
       << fmt_double(r.n) << ',' << fmt_double(r.x) << ',' << r.reps << ','
       << fmt_double(r.estimate) << ',' << fmt_double(r.stderr_) << ','
       << fmt_double(r.closed_form) << '\n';
}

std::string rows_json(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows) {
  nlohmann::json j;
  j["schema"] = kCsvSchema;
  j["config"] = nlohmann::json::parse(config_json(cfg));
  j["rows"] = nlohmann::json::array();
  auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
  for (const auto& r : rows)
    j["rows"].push_back({{"measure", r.measure}, {"n", r.n}, {"x", r.x}, {"reps", r.reps},
                         {"estimate", num(r.estimate)}, {"stderr", num(r.stderr_)},
                         {"closed_form", num(r.closed_form)}, {"runtime", r.runtime}});
  return j.dump(2);
}

// -------------------------------------------------------------- degree statistics

LowDegreeStats low_degree_stats(const PointSet& ps, double r) {
  const std::size_t n = ps.size();
  LowDegreeStats s;
  if (n == 0) return s;
  SpatialGrid grid(ps.points, r, 2048);
  std::vector<std::uint32_t> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    grid.for_each_within(ps.points[i], r, [&](Vertex j) { deg[i] += j != i; });
  s.min_degree = *std::min_element(deg.begin(), deg.end());
  // Edge-degree <= 2 forces both endpoint degrees <= 3.
  std::vector<Vertex> nu, nv;
  auto nbrs = [&](Vertex v, std::vector<Vertex>& out) {
    out.clear();
    grid.for_each_within(ps.points[v], r, [&](Vertex j) {
      if (j != v) out.push_back(j);
    });
    std::sort(out.begin(), out.end());
  };
  for (Vertex u = 0; u < n; ++u) {
    if (deg[u] <= 1) ++s.zt;
    if (deg[u] > 3) continue;
    nbrs(u, nu);
    for (Vertex v : nu) {
      if (v < u || deg[v] > 3) continue;
      nbrs(v, nv);
      std::vector<Vertex> uni;
      std::set_union(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(uni));
      if (uni.size() - 2 <= 2) ++s.zt;
    }
  }
  return s;
}

std::unique_ptr<Detector> family_member_detector(std::vector<SmallGraph> family) {
  return std::make_unique<FamilyDetector>(std::move(family));
}

// -------------------------------------------------------------- experiments

std::vector<ResultRow> run_limit_experiment(const ExperimentConfig& cfg, const RowSink& sink) {
  const ThresholdGame game = threshold_game_from_string(cfg.game);
  Collector rows(sink);
  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni)
    for (std::size_t xi = 0; xi < cfg.x.size(); ++xi) {
      const auto t0 = std::chrono::steady_clock::now();
      const double n = cfg.n[ni], x = cfg.x[xi];
      checked_count(n);
      const double r = ThresholdScaling::at(game, n, x).r;
      std::vector<LowDegreeStats> stats(cfg.reps);
      parallel_for(cfg.reps, [&](std::size_t rep) {
        auto ps = sample(cfg.model, n, replication_seed(cfg.seed, ni, xi, rep));
        stats[rep] = low_degree_stats(ps, r);
      });
      const double dt = seconds_since(t0);
      auto count_if = [&](auto pred) {
        return static_cast<std::size_t>(std::count_if(stats.begin(), stats.end(), pred));
      };
      switch (game) {
        case ThresholdGame::connectivity:
          rows.push_back(make_row(cfg, "p_min_deg_ge_2", n, x, cfg.reps,
                                  proportion(count_if([](auto& s) { return s.min_degree >= 2; }),
                                             cfg.reps),
                                  limit_prob(game, x), dt));
          break;
        case ThresholdGame::hamilton:
          rows.push_back(make_row(cfg, "p_min_deg_ge_4", n, x, cfg.reps,
                                  proportion(count_if([](auto& s) { return s.min_degree >= 4; }),
                                             cfg.reps),
                                  limit_prob(game, x), dt));
          break;
        case ThresholdGame::perfect_matching: {
          rows.push_back(make_row(cfg, "p_zt_eq_0", n, x, cfg.reps,
                                  proportion(count_if([](auto& s) { return s.zt == 0; }), cfg.reps),
                                  limit_prob(game, x), dt));
          std::vector<double> z;
          for (auto& s : stats) z.push_back(static_cast<double>(s.zt));
          rows.push_back(make_row(cfg, "mean_zt", n, x, cfg.reps, mean_se(z),
                                  expected_obstruction_count(x), dt));
          break;
        }
      }
      rows.flush();
    }
  return rows.take();
}

std::vector<ResultRow> run_subgraph_poisson_experiment(const ExperimentConfig& cfg, const RowSink& sink) {
  const int k = static_cast<int>(cfg.param("k", 2));
  if (k != 2 && k != 3) throw PreconditionError("poisson experiment: k must be 2 or 3");
  const double alpha = cfg.param("alpha", 1.0);
  if (alpha < 0) throw PreconditionError("poisson experiment: alpha must be >= 0");
  const SmallGraph H = k == 2 ? SmallGraph::complete(2) : named_graph(cfg.h);
  if (H.order() != k || !H.connected())
    throw PreconditionError("poisson experiment: H must be connected with k vertices");
  double mu = mu_exact(H);
  if (std::isnan(mu)) mu = mu_H(H, 1'000'000, cfg.seed).value;
  const double lambda = std::pow(alpha, 2.0 * (k - 1)) * mu;
  Collector rows(sink);
  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni) {
    const auto t0 = std::chrono::steady_clock::now();
    const double n = cfg.n[ni];
    checked_count(n);
    const double r = alpha * std::pow(n, -static_cast<double>(k) / (2.0 * (k - 1)));
    std::vector<std::size_t> counts(cfg.reps);
    parallel_for(cfg.reps, [&](std::size_t rep) {
      auto ps = std::make_shared<PointSet>(sample(cfg.model, n, replication_seed(cfg.seed, ni, 0, rep)));
      // Radius zero: no edges, so no copies of a connected H with k >= 2.
      counts[rep] = r > 0 ? count_induced(build_graph(ps, r).graph(), H) : 0;
    });
    const double dt = seconds_since(t0);
    std::vector<double> c(counts.begin(), counts.end());
    Estimate m = mean_se(c);
    double var = 0;
    for (double v : c) var += (v - m.value) * (v - m.value);
    var = c.size() > 1 ? var / static_cast<double>(c.size() - 1) : kNaN;
    const double x = alpha;  // the x column carries alpha here
    rows.push_back(make_row(cfg, "mean_count", n, x, cfg.reps, m, lambda, dt));
    rows.push_back(make_row(cfg, "variance_over_mean", n, x, cfg.reps,
                            {m.value > 0 ? var / m.value : kNaN, kNaN}, 1.0, dt));
    rows.push_back(make_row(cfg, "tv_to_poisson", n, x, cfg.reps, {poisson_tv(counts, lambda), kNaN},
                            0.0, dt));
    rows.flush();
  }
  return rows.take();
}

namespace {

// Every obstruction of size s has at least k + s - 2 crucial vertices.
bool crucial_sufficient(const std::vector<Obstruction>& obs, std::size_t k) {
  for (const auto& o : obs)
    if (o.crucial.size() + 2 < k + o.size()) return false;
  return true;
}

bool two_obstructions_sufficient(const std::vector<Obstruction>& obs, std::size_t k) {
  for (const auto& o : obs)
    if (o.size() == 2 && o.crucial.size() < k) return false;
  return true;
}

DissectionParams dissection_params(const ExperimentConfig& cfg, double r) {
  DissectionParams p;
  p.eta = cfg.param("eta", p.eta);
  p.T = static_cast<std::size_t>(cfg.param("T", static_cast<double>(p.T)));
  p.m = static_cast<std::size_t>(cfg.param("m", 0));
  p.separation = cfg.param("separation", p.separation);
  p.str1_fraction = cfg.param("str1_fraction", p.str1_fraction);
  p.r = r;
  return p;
}

}  // namespace

std::vector<ResultRow> run_dissection_experiment(const ExperimentConfig& cfg, const RowSink& sink) {
  const ThresholdGame game = threshold_game_from_string(cfg.game);
  const auto k = static_cast<std::size_t>(cfg.param("k", 2));
  Collector rows(sink);
  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni)
    for (std::size_t xi = 0; xi < cfg.x.size(); ++xi) {
      const auto t0 = std::chrono::steady_clock::now();
      const double n = cfg.n[ni], x = cfg.x[xi];
      checked_count(n);
      const double r = ThresholdScaling::at(game, n, x).r;
      struct Rep {
        std::array<bool, 6> str{};
        bool all = false, sufficient = false, two_sufficient = false;
        double obstructions = 0, good_fraction = 0;
      };
      std::vector<Rep> out(cfg.reps);
      parallel_for(cfg.reps, [&](std::size_t rep) {
        auto ps = std::make_shared<PointSet>(sample(cfg.model, n, replication_seed(cfg.seed, ni, xi, rep)));
        auto g = build_graph(ps, r);
        auto a = analyze(g, dissection_params(cfg, r));
        Rep& o = out[rep];
        o.str = a.str.holds;
        o.all = a.str.all();
        o.sufficient = crucial_sufficient(a.obstructions, k);
        o.two_sufficient = two_obstructions_sufficient(a.obstructions, k);
        o.obstructions = static_cast<double>(a.obstructions.size());
        o.good_fraction = a.dissection->good_fraction();
      });
      const double dt = seconds_since(t0);
      auto rate = [&](auto pred) {
        return proportion(static_cast<std::size_t>(std::count_if(out.begin(), out.end(), pred)),
                          cfg.reps);
      };
      rows.push_back(make_row(cfg, "str_all", n, x, cfg.reps, rate([](auto& o) { return o.all; }), kNaN, dt));
      for (int i = 0; i < 6; ++i)
        rows.push_back(make_row(cfg, "str" + std::to_string(i + 1), n, x, cfg.reps,
                                rate([i](auto& o) { return o.str[i]; }), kNaN, dt));
      rows.push_back(make_row(cfg, "crucial_sufficiency", n, x, cfg.reps,
                              rate([](auto& o) { return o.sufficient; }), kNaN, dt));
      rows.push_back(make_row(cfg, "two_obstruction_sufficiency", n, x, cfg.reps,
                              rate([](auto& o) { return o.two_sufficient; }), kNaN, dt));
      std::vector<double> obs, good;
      for (auto& o : out) {
        obs.push_back(o.obstructions);
        good.push_back(o.good_fraction);
      }
      rows.push_back(make_row(cfg, "mean_obstructions", n, x, cfg.reps, mean_se(obs), kNaN, dt));
      rows.push_back(make_row(cfg, "mean_good_fraction", n, x, cfg.reps, mean_se(good), kNaN, dt));
      rows.flush();
    }
  return rows.take();
}

namespace {

std::vector<ResultRow> hitting_connectivity(const ExperimentConfig& cfg, const RowSink& sink) {
  Collector rows(sink);
  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni) {
    const auto t0 = std::chrono::steady_clock::now();
    const double n = cfg.n[ni];
    const std::size_t count = checked_count(n);
    struct Rep {
      bool attained = false, coincide = false;
      double offset = 0;
    };
    std::vector<Rep> out(cfg.reps);
    parallel_for(cfg.reps, [&](std::size_t rep) {
      auto ps = std::make_shared<PointSet>(sample(cfg.model, n, replication_seed(cfg.seed, ni, 0, rep)));
      EdgeProcess proc(ps, default_r_cap(count));
      auto md = min_deg_at_least(2);
      auto tt = two_disjoint_spanning_trees();
      auto a = hitting_radius(proc, *md);
      auto b = hitting_radius(proc, *tt);
      out[rep].attained = a.attained && b.attained;
      out[rep].coincide = out[rep].attained && a.witness_edge == b.witness_edge;
      if (a.attained && ps->size() > 2)
        out[rep].offset = ThresholdScaling::offset(ThresholdGame::connectivity,
                                                   static_cast<double>(ps->size()), a.rho);
    });
    const double dt = seconds_since(t0);
    std::size_t hit = 0, att = 0;
    std::vector<double> off;
    for (auto& o : out) {
      hit += o.coincide;
      att += o.attained;
      if (o.attained) off.push_back(o.offset);
    }
    rows.push_back(make_row(cfg, "coincidence_rate", n, kNaN, cfg.reps, proportion(hit, cfg.reps), 1.0, dt));
    rows.push_back(make_row(cfg, "attained_rate", n, kNaN, cfg.reps, proportion(att, cfg.reps), kNaN, dt));
    rows.push_back(make_row(cfg, "mean_offset_at_hit", n, kNaN, cfg.reps, mean_se(off), kNaN, dt));
    rows.flush();
  }
  return rows.take();
}

// Necessary-condition radius, then the sufficient bundle checked there.
std::vector<ResultRow> hitting_grand(const ExperimentConfig& cfg, ThresholdGame game,
                                     const RowSink& sink) {
  const bool play_games = cfg.param("play", 0) != 0;
  Collector rows(sink);
  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni) {
    const auto t0 = std::chrono::steady_clock::now();
    const double n = cfg.n[ni];
    const std::size_t count = checked_count(n);
    struct Rep {
      bool attained = false, sufficient = false, verified = false;
      double offset = 0;
    };
    std::vector<Rep> out(cfg.reps);
    parallel_for(cfg.reps, [&](std::size_t rep) {
      auto ps = std::make_shared<PointSet>(sample(cfg.model, n, replication_seed(cfg.seed, ni, 0, rep)));
      EdgeProcess proc(ps, default_r_cap(count));
      auto det = game == ThresholdGame::hamilton ? min_deg_at_least(4) : pm_necessary();
      auto h = hitting_radius(proc, *det);
      Rep& o = out[rep];
      if (!h.attained || !h.witness_edge) return;
      o.attained = true;
      o.offset = ThresholdScaling::offset(game, static_cast<double>(ps->size()), h.rho);
      GeometricGraph g(ps, h.rho, proc.prefix_graph(*h.witness_edge + 1));
      auto a = analyze(g, dissection_params(cfg, h.rho));
      MarkingParams mp;
      mp.game = game == ThresholdGame::hamilton ? GrandGame::hamilton : GrandGame::perfect_matching;
      auto plan = marking_plan(g, a, mp);
      o.sufficient = plan.ok();
      if (!o.sufficient || !play_games) return;
      Board board(g.graph());
      GrandMaker maker(board, g, plan);
      auto breaker = random_breaker(replication_seed(cfg.seed, ni, 1, rep));
      auto win = game == ThresholdGame::hamilton ? hamilton_win() : perfect_matching_win();
      o.verified = play(board, maker, *breaker, 1, *win).winner == Side::maker;
    });
    const double dt = seconds_since(t0);
    std::size_t att = 0, suff = 0, ver = 0;
    std::vector<double> off;
    for (auto& o : out) {
      att += o.attained;
      suff += o.sufficient;
      ver += o.verified;
      if (o.attained) off.push_back(o.offset);
    }
    rows.push_back(make_row(cfg, "attained_rate", n, kNaN, cfg.reps, proportion(att, cfg.reps), kNaN, dt));
    rows.push_back(make_row(cfg, "sufficient_rate", n, kNaN, cfg.reps, proportion(suff, cfg.reps), 1.0, dt));
    if (play_games)
      rows.push_back(make_row(cfg, "verified_given_sufficient", n, kNaN, suff, proportion(ver, suff), 1.0, dt));
    rows.push_back(make_row(cfg, "mean_offset_at_hit", n, kNaN, cfg.reps, mean_se(off), kNaN, dt));
    rows.flush();
  }
  return rows.take();
}

std::vector<ResultRow> hitting_hgame(const ExperimentConfig& cfg, const RowSink& sink) {
  const SmallGraph H = named_graph(cfg.h);
  const int kmax = static_cast<int>(cfg.param("kmax", 6));
  KHResult kh = compute_kH(H, kmax, cfg.seed);
  if (kh.k_H == 0) throw PreconditionError("hitting: no k <= kmax with a Maker win for " + cfg.h);
  auto solver = h_game_solver(H);
  const double k = kh.k_H;
  Collector rows(sink);
  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni) {
    const auto t0 = std::chrono::steady_clock::now();
    const double n = cfg.n[ni];
    checked_count(n);
    const double r0 = std::pow(n, -k / (2 * (k - 1)));
    struct Rep {
      bool attained = false, coincide = false, oversized = false;
      double witness_order = 0;
    };
    std::vector<Rep> out(cfg.reps);
    parallel_for(cfg.reps, [&](std::size_t rep) {
      auto ps = std::make_shared<PointSet>(sample(cfg.model, n, replication_seed(cfg.seed, ni, 0, rep)));
      EdgeProcess proc(ps, std::min(1.5, cfg.param("cap_factor", 4.0) * r0));
      FamilyDetector fam(kh.family);
      ComponentWinDetector win(*solver);
      auto a = hitting_radius(proc, fam);
      auto b = hitting_radius(proc, win);
      Rep& o = out[rep];
      o.attained = a.attained;
      o.oversized = win.oversized() && !b.attained;
      o.coincide = a.attained && b.attained && a.witness_edge == b.witness_edge;
      o.witness_order = static_cast<double>(win.witness_order());
    });
    const double dt = seconds_since(t0);
    std::size_t att = 0, hit = 0, over = 0;
    std::vector<double> orders;
    for (auto& o : out) {
      att += o.attained;
      hit += o.coincide;
      over += o.oversized;
      if (o.witness_order > 0) orders.push_back(o.witness_order);
    }
    rows.push_back(make_row(cfg, "coincidence_rate", n, kNaN, cfg.reps, proportion(hit, cfg.reps), 1.0, dt));
    rows.push_back(make_row(cfg, "attained_rate", n, kNaN, cfg.reps, proportion(att, cfg.reps), kNaN, dt));
    rows.push_back(make_row(cfg, "undecided_rate", n, kNaN, cfg.reps, proportion(over, cfg.reps), 0.0, dt));
    rows.push_back(make_row(cfg, "mean_witness_order", n, kNaN, cfg.reps, mean_se(orders), k, dt));
    rows.flush();
  }
  return rows.take();
}

}  // namespace

std::vector<ResultRow> run_hitting_experiment(const ExperimentConfig& cfg, const RowSink& sink) {
  if (cfg.game == "h") return hitting_hgame(cfg, sink);
  const ThresholdGame game = threshold_game_from_string(cfg.game);
  if (game == ThresholdGame::connectivity) return hitting_connectivity(cfg, sink);
  return hitting_grand(cfg, game, sink);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const RowSink& sink) {
  if (cfg.experiment == "hitting") return run_hitting_experiment(cfg, sink);
  if (cfg.experiment == "limit") return run_limit_experiment(cfg, sink);
  if (cfg.experiment == "poisson") return run_subgraph_poisson_experiment(cfg, sink);
  if (cfg.experiment == "dissection") return run_dissection_experiment(cfg, sink);
  throw PreconditionError("unknown experiment: " + cfg.experiment);
}

}  // namespace mbrgg
