#include "mbrgg/grand_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "mbrgg/lehman.hpp"
#include "mbrgg/packing.hpp"

namespace mbrgg {

std::unique_ptr<Strategy> maker_connectivity(const Board& board) {
  if (!two_tree_packing(board.order(), board.edges()))
    throw PreconditionError(
        "connectivity: the board does not contain two edge-disjoint spanning trees");
  return std::make_unique<LehmanMaker>(board);
}

std::string to_string(GrandGame g) {
  return g == GrandGame::hamilton ? "hamilton" : "perfect_matching";
}

std::string to_string(VertexRole r) {
  switch (r) {
    case VertexRole::unassigned: return "unassigned";
    case VertexRole::c0: return "c0";
    case VertexRole::ci: return "ci";
    case VertexRole::tree_link: return "tree_link";
    case VertexRole::important: return "important";
    case VertexRole::safe_important: return "safe_important";
    case VertexRole::path: return "path";
    case VertexRole::crucial: return "crucial";
    case VertexRole::obstruction: return "obstruction";
    case VertexRole::safe_cluster: return "safe_cluster";
  }
  return "?";
}

std::string to_string(Rule r) {
  static const char* names[kRuleCount] = {
      "tree_link",  "crucial_important", "obstruction_game", "safe_cluster_game",
      "path_cross", "path_local",        "ci_blob",          "c0_blob",
      "marked_star", "ci_star",          "fallback"};
  return names[static_cast<std::size_t>(r)];
}

std::size_t MarkingPlan::max_marked_in_cell() const {
  std::size_t m = 0;
  for (const auto& c : cells) m = std::max(m, c.marked.size());
  return m;
}

// ---------------------------------------------------------------- plan

namespace {

bool is_marked_role(VertexRole r) {
  return r == VertexRole::tree_link || r == VertexRole::important ||
         r == VertexRole::safe_important || r == VertexRole::path;
}

std::string list(const std::vector<Vertex>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "]";
}

class Planner {
 public:
  Planner(const GeometricGraph& g, const DissectionAnalysis& a, MarkingParams p)
      : g_(g), a_(a), d_(*a.dissection), G_(g.graph()) {
    plan_.params = p;
    used_.assign(g.order(), 0);
    plan_.role.assign(g.order(), VertexRole::unassigned);
    plan_.cell_index.assign(d_.num_cells(), -1);
  }

  MarkingPlan run() {
    check_preconditions();
    if (!plan_.ok()) return std::move(plan_);
    const auto& cells = a_.gamma.components[0];
    for (std::size_t i = 0; i < cells.size(); ++i) {
      plan_.cell_index[cells[i]] = static_cast<int>(i);
      plan_.cells.push_back({cells[i], {}, {}, {}, {}});
      auto ms = d_.members(cells[i]);
      plan_.cells.back().members.assign(ms.begin(), ms.end());
    }
    plan_.tree_cells = cells;
    plan_.tree = gamma_max_tree(d_, a_.gamma);
    mark_obstructions();
    mark_safe_clusters();
    check_coverage();
    mark_tree_links();
    partition_cells();
    return std::move(plan_);
  }

 private:
  void fail(std::string cond, std::string witness) {
    plan_.diagnostics.push_back({std::move(cond), std::move(witness)});
  }
  bool hamilton() const { return plan_.params.game == GrandGame::hamilton; }

  void check_preconditions() {
    const auto& P = plan_.params;
    if (P.require_str)
      for (std::size_t k = 0; k < 6; ++k)
        if (!a_.str.holds[k]) {
          const std::string tag = "STR" + std::to_string(k + 1) + ": ";
          std::string w;
          for (const auto& s : a_.str.diagnostics)
            if (s.rfind(tag, 0) == 0) w = s.substr(tag.size());
          fail(tag.substr(0, tag.size() - 2), w);
        }
    if (a_.gamma.count() == 0) fail("largest component", "no good cells");
    if (d_.side() * std::numbers::sqrt2 > g_.radius())
      fail("cell cliques", "cell diagonal exceeds the radius");
    const std::size_t need = hamilton() ? 4 : 2;
    for (Vertex v = 0; v < g_.order(); ++v)
      if (G_.degree(v) < need) {
        fail("minimum degree >= " + std::to_string(need),
             "vertex " + std::to_string(v) + " has degree " + std::to_string(G_.degree(v)));
        break;
      }
    if (!hamilton()) {
      if (g_.order() % 2) fail("even order", "n = " + std::to_string(g_.order()));
      for (const Edge& e : G_.edges()) {
        std::size_t ed = G_.degree(e.u) + G_.degree(e.v) - 2;
        for (Vertex w : G_.neighbors(e.u))
          if (w != e.v && G_.has_edge(w, e.v)) --ed;
        if (ed < 3) {
          fail("minimum edge-degree >= 3",
               "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " has edge-degree " +
                   std::to_string(ed));
          break;
        }
      }
    }
  }

  std::vector<Vertex> free_in_cell(CellId c) const {
    std::vector<Vertex> out;
    for (Vertex v : d_.members(c))
      if (!used_[v]) out.push_back(v);
    return out;
  }

  void take(Vertex v, VertexRole r) {
    used_[v] = 1;
    plan_.role[v] = r;
  }

  // Shortest cell path inside the largest component.
  std::vector<CellId> cell_path(CellId from, CellId to) const {
    const auto& G = a_.gamma;
    const int s = G.index_of[from], t = G.index_of[to];
    std::vector<int> prev(G.cells.size(), -2);
    std::deque<int> q{s};
    prev[s] = -1;
    while (!q.empty() && prev[t] == -2) {
      int v = q.front();
      q.pop_front();
      for (Vertex w : G.adjacency.neighbors(v))
        if (prev[w] == -2) {
          prev[w] = v;
          q.push_back(static_cast<int>(w));
        }
    }
    std::vector<CellId> out;
    if (prev[t] == -2) return out;
    for (int v = t; v != -1; v = prev[v]) out.push_back(G.cells[v]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  void mark_obstructions() {
    const auto& P = plan_.params;
    // Every obstruction vertex has one owner: the first obstruction listing it.
    std::vector<std::vector<Vertex>> As;
    for (const auto& o : a_.obstructions) {
      std::vector<Vertex> A;
      for (Vertex v : o.members)
        if (!used_[v]) {
          take(v, VertexRole::obstruction);
          A.push_back(v);
        }
      As.push_back(std::move(A));
    }
    std::vector<std::vector<Vertex>> cand(a_.obstructions.size());
    for (std::size_t i = 0; i < a_.obstructions.size(); ++i)
      for (Vertex v : a_.obstructions[i].crucial)
        if (!used_[v]) {
          used_[v] = 1;
          cand[i].push_back(v);
        }
    for (std::size_t i = 0; i < a_.obstructions.size(); ++i) {
      const auto& o = a_.obstructions[i];
      ObstructionPlan op;
      op.kind = o.kind;
      op.component = o.component;
      op.A = As[i];
      if (op.A.empty()) {
        for (Vertex v : cand[i]) used_[v] = 0;
        continue;
      }
      const std::size_t s = op.A.size();
      const std::size_t need = s >= d_.params().T ? 6 : s + 2;
      if (cand[i].size() < need)
        fail("crucial count", to_string(o.kind) + " " + list(op.A) + " of size " +
                                  std::to_string(s) + " has " + std::to_string(cand[i].size()) +
                                  " crucial vertices, needs " + std::to_string(need));
      for (std::size_t x = 0; x < op.A.size(); ++x)
        for (std::size_t y = x + 1; y < op.A.size(); ++y)
          if (!G_.has_edge(op.A[x], op.A[y]))
            fail("obstruction clique", "vertices " + std::to_string(op.A[x]) + " and " +
                                           std::to_string(op.A[y]) + " are not adjacent");
      std::optional<CellId> preferred;
      for (Vertex v : cand[i]) {
        if (op.crucial.size() >= P.crucial_cap) break;
        auto as = assign_important(d_, a_.gamma, g_, {v}, P.important_per, used_,
                                   P.important_cells == ImportantCells::shared ? preferred
                                                                               : std::nullopt);
        if (as.crucial.empty()) continue;
        CrucialRecord rec{v, as.cell[0], as.important[0], -1};
        for (Vertex w : rec.important) plan_.role[w] = VertexRole::important;
        plan_.role[v] = VertexRole::crucial;
        if (!preferred) preferred = rec.cell;
        op.crucial.push_back(std::move(rec));
      }
      for (Vertex v : cand[i])
        if (plan_.role[v] != VertexRole::crucial) used_[v] = 0;
      const std::size_t b = op.crucial.size();
      const bool supported = hamilton() ? ab_path_supported(s, b) : ab_matching_supported(s, b);
      if (!supported) {
        fail("obstruction game", to_string(o.kind) + " " + list(op.A) + " with " +
                                     std::to_string(b) + " crucial vertices holding important sets");
        continue;
      }
      for (Vertex x : op.A)
        for (const auto& c : op.crucial)
          if (!G_.has_edge(x, c.v))
            fail("crucial sees obstruction", "crucial " + std::to_string(c.v) +
                                                 " misses obstruction vertex " + std::to_string(x));
      op.root = op.crucial[0].cell;
      if (hamilton())
        for (auto& c : op.crucial) {
          if (c.cell == op.root) continue;
          CellPath cp;
          cp.cells = cell_path(c.cell, op.root);
          if (cp.cells.empty()) {
            fail("short cell path", "no path between cells " + std::to_string(c.cell) + " and " +
                                        std::to_string(op.root));
            continue;
          }
          for (CellId cell : cp.cells) {
            auto f = free_in_cell(cell);
            if (f.size() < 2) {
              fail("path vertices", "cell " + std::to_string(cell) + " has no free pair");
              break;
            }
            take(f[0], VertexRole::path);
            take(f[1], VertexRole::path);
            cp.pairs.push_back({f[0], f[1]});
          }
          if (cp.pairs.size() != cp.cells.size()) continue;
          c.path = static_cast<int>(plan_.paths.size());
          plan_.paths.push_back(std::move(cp));
        }
      plan_.obstructions.push_back(std::move(op));
    }
  }

  void mark_safe_clusters() {
    const auto& P = plan_.params;
    const double r = g_.radius(), sub = r / 2;
    std::map<std::pair<CellId, int>, std::vector<Vertex>> groups;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (used_[v] || a_.classes.cls[v] != VertexClass::safe) continue;
      if (plan_.cell_index[d_.cell_of(v)] >= 0) continue;
      const CellId c = static_cast<CellId>(a_.classes.anchor[v]);
      const Point o = d_.corner(c);
      const double cx = o.x + d_.side() / 2 - 1.5 * r, cy = o.y + d_.side() / 2 - 1.5 * r;
      auto idx = [&](double t) { return std::clamp(static_cast<int>(std::floor(t / sub)), 0, 5); };
      const Point p = g_.point(v);
      groups[{c, idx(p.y - cy) * 6 + idx(p.x - cx)}].push_back(v);
    }
    for (auto& [key, members] : groups) {
      const CellId c = key.first;
      std::vector<std::vector<Vertex>> clusters;
      if (members.size() > 6) clusters.push_back(members);
      else
        for (Vertex v : members) clusters.push_back({v});
      for (auto& S : clusters) {
        for (Vertex v : S) take(v, VertexRole::safe_cluster);
        const std::size_t heads = std::min<std::size_t>(S.size(), 6);
        SafeClusterPlan sc{c, S, {}};
        auto pool = free_in_cell(c);
        std::erase_if(pool, [&](Vertex w) {
          for (Vertex v : S)
            if (!G_.has_edge(v, w)) return true;
          return false;
        });
        const std::size_t want = heads * P.important_per;
        if (pool.size() < want) {
          fail("safe cluster important vertices",
               "cluster " + list(S) + " at cell " + std::to_string(c) + " finds " +
                   std::to_string(pool.size()) + " of " + std::to_string(want));
          continue;
        }
        for (std::size_t i = 0; i < want; ++i) {
          take(pool[i], VertexRole::safe_important);
          sc.B.push_back(pool[i]);
        }
        const bool supported = hamilton() ? ab_path_supported(S.size(), sc.B.size())
                                          : ab_matching_supported(S.size(), sc.B.size());
        if (!supported) fail("safe cluster game", list(S));
        plan_.safe_clusters.push_back(std::move(sc));
      }
    }
  }

  void check_coverage() {
    for (Vertex v = 0; v < g_.order(); ++v)
      if (!used_[v] && plan_.cell_index[d_.cell_of(v)] < 0) {
        fail("vertex coverage", "vertex " + std::to_string(v) + " (" +
                                    to_string(a_.classes.cls[v]) +
                                    ") lies outside the largest component and no game owns it");
        return;
      }
  }

  void mark_tree_links() {
    for (const Edge& e : plan_.tree.edges) {
      TreeLink L;
      L.a = plan_.tree_cells[e.u];
      L.b = plan_.tree_cells[e.v];
      auto xs = free_in_cell(L.a), ys = free_in_cell(L.b);
      std::vector<char> ytaken(ys.size(), 0);
      std::size_t k = 0;
      for (std::size_t i = 0; i < xs.size() && k < 4; ++i)
        for (std::size_t j = 0; j < ys.size(); ++j)
          if (!ytaken[j] && G_.has_edge(xs[i], ys[j])) {
            ytaken[j] = 1;
            L.x[k] = xs[i];
            L.y[k] = ys[j];
            ++k;
            break;
          }
      if (k < 4) {
        fail("tree link", "cells " + std::to_string(L.a) + " and " + std::to_string(L.b) +
                              " lack four disjoint adjacent pairs");
        continue;
      }
      for (int i = 0; i < 4; ++i) {
        take(L.x[i], VertexRole::tree_link);
        take(L.y[i], VertexRole::tree_link);
      }
      plan_.links.push_back(L);
    }
  }

  void partition_cells() {
    const auto& P = plan_.params;
    for (auto& cp : plan_.cells) {
      std::vector<Vertex> pool;
      for (Vertex v : d_.members(cp.cell)) {
        if (is_marked_role(plan_.role[v])) cp.marked.push_back(v);
        else if (!used_[v]) pool.push_back(v);
      }
      if (cp.marked.size() > P.max_marked)
        fail("marked per cell", "cell " + std::to_string(cp.cell) + " has " +
                                    std::to_string(cp.marked.size()) + " marked vertices");
      if (pool.size() < P.ell * P.ci_size + P.c0_min) {
        fail("cell partition", "cell " + std::to_string(cp.cell) + " has " +
                                   std::to_string(pool.size()) + " unmarked vertices, needs " +
                                   std::to_string(P.ell * P.ci_size + P.c0_min));
        continue;
      }
      std::size_t at = 0;
      for (std::size_t i = 0; i < P.ell; ++i) {
        cp.ci.emplace_back(pool.begin() + at, pool.begin() + at + P.ci_size);
        for (Vertex v : cp.ci.back()) plan_.role[v] = VertexRole::ci;
        at += P.ci_size;
      }
      cp.c0.assign(pool.begin() + at, pool.end());
      for (Vertex v : cp.c0) plan_.role[v] = VertexRole::c0;
    }
  }

  const GeometricGraph& g_;
  const DissectionAnalysis& a_;
  const Dissection& d_;
  const Graph& G_;
  MarkingPlan plan_;
  std::vector<char> used_;
};

}  // namespace

MarkingPlan marking_plan(const GeometricGraph& g, const DissectionAnalysis& a,
                         MarkingParams params) {
  return Planner(g, a, params).run();
}

std::string plan_json(const MarkingPlan& plan) {
  using nlohmann::json;
  json j;
  j["game"] = to_string(plan.params.game);
  j["ok"] = plan.ok();
  j["diagnostics"] = json::array();
  for (const auto& d : plan.diagnostics)
    j["diagnostics"].push_back({{"condition", d.condition}, {"witness", d.witness}});
  j["params"] = {{"ell", plan.params.ell},
                 {"ci_size", plan.params.ci_size},
                 {"c0_min", plan.params.c0_min},
                 {"crucial_cap", plan.params.crucial_cap},
                 {"important_per", plan.params.important_per}};
  j["tree"] = json::array();
  for (const auto& L : plan.links)
    j["tree"].push_back({{"cells", {L.a, L.b}}, {"x", L.x}, {"y", L.y}});
  j["obstructions"] = json::array();
  for (const auto& o : plan.obstructions) {
    json cr = json::array();
    for (const auto& c : o.crucial)
      cr.push_back({{"v", c.v}, {"cell", c.cell}, {"important", c.important}, {"path", c.path}});
    j["obstructions"].push_back(
        {{"kind", to_string(o.kind)}, {"A", o.A}, {"root", o.root}, {"crucial", cr}});
  }
  j["safe_clusters"] = json::array();
  for (const auto& s : plan.safe_clusters)
    j["safe_clusters"].push_back({{"anchor", s.anchor}, {"members", s.members}, {"B", s.B}});
  j["paths"] = json::array();
  for (const auto& p : plan.paths) j["paths"].push_back({{"cells", p.cells}, {"pairs", p.pairs}});
  j["cells"] = json::array();
  for (const auto& c : plan.cells)
    j["cells"].push_back(
        {{"cell", c.cell}, {"marked", c.marked}, {"c0", c.c0}, {"ci", c.ci}});
  return j.dump(2);
}

// ---------------------------------------------------------------- composite Maker

struct GrandMaker::Games {
  std::vector<int> obstruction;  // per plan obstruction: game index
  std::vector<int> safe;         // per safe cluster
  std::vector<int> c0;           // per cell
  std::vector<std::vector<int>> ci;
  std::vector<int> priority;     // free-move order
};

GrandMaker::GrandMaker(const Board& board, const GeometricGraph& g, MarkingPlan plan)
    : board_(&board), graph_(&g), plan_(std::move(plan)), index_(std::make_unique<Games>()) {
  if (!plan_.ok())
    throw PreconditionError("grand strategy: plan precondition failed: " +
                            plan_.diagnostics[0].condition + " (" + plan_.diagnostics[0].witness +
                            ")");
  const bool ham = plan_.params.game == GrandGame::hamilton;
  if (!ham && board.order() % 2)
    throw PreconditionError("perfect matching: the number of vertices is odd");
  owner_.assign(board.size(), -1);
  auto id = [&](Vertex u, Vertex v) {
    EdgeId e = board.id(u, v);
    if (e == kNoEdge)
      throw PreconditionError("grand strategy: planned pair " + std::to_string(u) + "-" +
                              std::to_string(v) + " is not an edge");
    return e;
  };
  auto& G = *index_;
  // (iii) and (iv) first: they get free moves first.
  for (const auto& o : plan_.obstructions) {
    std::vector<Vertex> B;
    for (const auto& c : o.crucial) B.push_back(c.v);
    G.obstruction.push_back(static_cast<int>(games_.size()));
    if (ham) add(std::make_unique<ABPathGame>(board, o.A, B), Rule::obstruction_game);
    else add(std::make_unique<ABMatchingGame>(board, o.A, B), Rule::obstruction_game);
  }
  for (const auto& s : plan_.safe_clusters) {
    G.safe.push_back(static_cast<int>(games_.size()));
    if (ham) add(std::make_unique<ABPathGame>(board, s.members, s.B), Rule::safe_cluster_game);
    else add(std::make_unique<ABMatchingGame>(board, s.members, s.B), Rule::safe_cluster_game);
  }
  // (vii), (viii)
  const auto& P = plan_.params;
  Seed gs = P.seed;
  for (const auto& cp : plan_.cells) {
    std::vector<int> ids;
    for (const auto& ci : cp.ci) {
      ids.push_back(static_cast<int>(games_.size()));
      add(std::make_unique<BlobBuilderGame>(
              board, ci, P.ci_k, BlobBuilderOptions{P.ci_size, 0, gs = mix64(gs)}),
          Rule::ci_blob);
    }
    G.ci.push_back(std::move(ids));
    G.c0.push_back(static_cast<int>(games_.size()));
    const std::size_t k0 = cp.c0.size() >= P.c0_k4_size ? 4 : 3;
    add(std::make_unique<BlobBuilderGame>(
            board, cp.c0, k0,
            BlobBuilderOptions{k0 == 4 ? P.c0_k4_size : P.c0_min, 0, gs = mix64(gs)}),
        Rule::c0_blob);
  }
  // (i)
  for (const auto& L : plan_.links)
    add(std::make_unique<PairingGame>(
            "tree_link", std::vector<std::pair<EdgeId, EdgeId>>{
                             {id(L.x[0], L.y[0]), id(L.x[1], L.y[1])},
                             {id(L.x[2], L.y[2]), id(L.x[3], L.y[3])}}),
        Rule::tree_link);
  // (ii), (v), (vi)
  for (const auto& o : plan_.obstructions)
    for (const auto& c : o.crucial) {
      std::vector<std::pair<EdgeId, EdgeId>> pairs;
      for (std::size_t i = 0; i + 1 < c.important.size(); i += 2)
        pairs.push_back({id(c.v, c.important[i]), id(c.v, c.important[i + 1])});
      add(std::make_unique<PairingGame>("crucial_important", std::move(pairs)),
          Rule::crucial_important);
      if (c.path < 0) continue;
      const auto& path = plan_.paths[c.path];
      std::vector<std::pair<EdgeId, EdgeId>> local;
      for (Vertex u : c.important)
        local.push_back({id(u, path.pairs[0][0]), id(u, path.pairs[0][1])});
      add(std::make_unique<PairingGame>("path_local", std::move(local)), Rule::path_local);
      for (std::size_t k = 1; k < path.pairs.size(); ++k) {
        const auto& from = path.pairs[k - 1];
        const auto& to = path.pairs[k];
        std::vector<std::pair<EdgeId, EdgeId>> cross;
        for (Vertex u : from) cross.push_back({id(u, to[0]), id(u, to[1])});
        add(std::make_unique<PairingGame>("path_cross", std::move(cross)), Rule::path_cross);
      }
    }
  // (ix), (x)
  for (const auto& cp : plan_.cells) {
    std::vector<const std::vector<Vertex>*> sets{&cp.c0};
    for (const auto& ci : cp.ci) sets.push_back(&ci);
    for (Vertex u : cp.marked)
      for (const auto* s : sets) add(std::make_unique<StarGame>(board, u, *s), Rule::marked_star);
    for (const auto& ci : cp.ci)
      for (Vertex v : ci) add(std::make_unique<StarGame>(board, v, cp.c0), Rule::ci_star);
  }
  for (std::size_t i = 0; i < games_.size(); ++i) G.priority.push_back(static_cast<int>(i));
}

GrandMaker::~GrandMaker() = default;

std::string GrandMaker::name() const {
  return plan_.params.game == GrandGame::hamilton ? "grand_hamilton" : "grand_matching";
}

void GrandMaker::add(std::unique_ptr<LocalGame> game, Rule rule) {
  const int idx = static_cast<int>(games_.size());
  for (EdgeId e : game->board()) {
    if (owner_[e] >= 0)
      throw PreconditionError("grand strategy: edge " + std::to_string(board_->edge(e).u) + "-" +
                              std::to_string(board_->edge(e).v) + " owned by " +
                              to_string(rules_[owner_[e]]) + " and " + to_string(rule));
    owner_[e] = idx;
  }
  games_.push_back(std::move(game));
  rules_.push_back(rule);
}

void GrandMaker::on_opponent_move(const GameState&, EdgeId e) { last_ = e; }

EdgeId GrandMaker::any_move(const GameState& state) {
  const auto& order = index_->priority;
  while (cursor_ < order.size()) {
    EdgeId m = games_[order[cursor_]]->free_move(state);
    if (m != kNoEdge && state.unclaimed(m)) return m;
    ++cursor_;
  }
  auto free = state.free_edges();
  return free.empty() ? kNoEdge : *std::min_element(free.begin(), free.end());
}

EdgeId GrandMaker::next_move(const GameState& state) {
  const EdgeId e = std::exchange(last_, kNoEdge);
  if (e != kNoEdge) {
    const int g = owner_[e];
    const Rule r = g >= 0 ? rules_[g] : Rule::fallback;
    ++audit_.breaker_moves[static_cast<std::size_t>(r)];
    if (g >= 0) {
      EdgeId m = games_[g]->respond(state, e);
      if (m != kNoEdge && state.unclaimed(m)) {
        ++audit_.maker_replies[static_cast<std::size_t>(r)];
        return m;
      }
      ++audit_.unanswered;
    }
  }
  return any_move(state);
}

std::vector<EdgeId> GrandMaker::focus_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < owner_.size(); ++e) {
    if (owner_[e] < 0) continue;
    Rule r = rules_[owner_[e]];
    if (r == Rule::obstruction_game || r == Rule::safe_cluster_game ||
        r == Rule::crucial_important || r == Rule::path_cross || r == Rule::path_local)
      out.push_back(e);
  }
  return out;
}

std::optional<Certificate> GrandMaker::certificate(const GameState& state) {
  last_stitch_ = stitch(state.graph_of(Side::maker));
  if (!last_stitch_->ok) return std::nullopt;
  Certificate c;
  if (plan_.params.game == GrandGame::hamilton) {
    c.kind = Certificate::Kind::hamilton_cycle;
    c.cycle = last_stitch_->cycle;
  } else {
    c.kind = Certificate::Kind::matching;
    c.edges = last_stitch_->matching;
  }
  return c;
}

// ---------------------------------------------------------------- stitcher

namespace {

struct Virtual {
  Vertex u = 0, v = 0;
  CellId cell = 0;
  int link = -1;                // tree link index, or -1 for a path
  std::vector<Vertex> path;     // realization from u to v (paths only)
};

bool has_consecutive(const std::vector<Vertex>& o, Vertex a, Vertex b) {
  const std::size_t m = o.size();
  for (std::size_t i = 0; i < m; ++i) {
    Vertex x = o[i], y = o[(i + 1) % m];
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

bool keeps_all(const BlobCycle& c, const std::vector<Edge>& keep) {
  for (const Edge& e : keep) {
    bool in_u = std::find(c.order.begin(), c.order.end(), e.u) != c.order.end();
    if (in_u && !has_consecutive(c.order, e.u, e.v)) return false;
  }
  return true;
}

// Inserts a whole cycle into `cur`: blob openings first, then every opening
// at a non-kept cycle edge.
std::optional<BlobCycle> absorb_cycle(const BlobCycle& cur, const BlobCycle& piece,
                                      const Graph& carrier, const std::vector<Edge>& keep) {
  if (auto r = try_blob_merge(cur, piece, carrier, keep); r && keeps_all(*r, keep)) return r;
  const auto& o = piece.order;
  const std::size_t m = o.size();
  for (std::size_t i = 0; i < m; ++i) {
    Vertex a = o[i], b = o[(i + 1) % m];
    if (std::find(keep.begin(), keep.end(), make_edge(a, b)) != keep.end()) continue;
    std::vector<Vertex> path;
    for (std::size_t t = 1; t <= m; ++t) path.push_back(o[(i + t) % m]);
    if (auto r = blob_splice_path(cur, path, carrier, keep); r && keeps_all(*r, keep)) return r;
  }
  return std::nullopt;
}

}  // namespace

StitchResult GrandMaker::stitch(const Graph& maker) const {
  StitchResult out;
  const bool ham = plan_.params.game == GrandGame::hamilton;
  const std::size_t n = maker.order();
  auto err = [&](std::string s) {
    out.errors.push_back(std::move(s));
    return out;
  };
  std::vector<Virtual> virt;
  std::vector<char> consumed(n, 0), matched(n, 0);
  std::vector<Edge> M0;

  auto edge_to_any = [&](Vertex v, const std::vector<Vertex>& cands,
                         Vertex avoid) -> std::optional<Vertex> {
    for (Vertex w : cands)
      if (w != avoid && maker.has_edge(v, w)) return w;
    return std::nullopt;
  };
  // Chain from a crucial vertex to its root cell: important vertex, then the
  // path pairs. Returns vertices after the crucial, ending in the root cell.
  auto extend = [&](const CrucialRecord& c) -> std::optional<std::vector<Vertex>> {
    auto i = edge_to_any(c.v, c.important, c.v);
    if (!i) return std::nullopt;
    std::vector<Vertex> chain{*i};
    if (c.path < 0) return chain;
    const auto& p = plan_.paths[c.path];
    for (const auto& pr : p.pairs) {
      auto x = edge_to_any(chain.back(), {pr[0], pr[1]}, chain.back());
      if (!x) return std::nullopt;
      chain.push_back(*x);
    }
    return chain;
  };

  // Obstructions (P2) and unused crucial vertices.
  for (std::size_t oi = 0; oi < plan_.obstructions.size(); ++oi) {
    const auto& o = plan_.obstructions[oi];
    std::vector<Vertex> B;
    for (const auto& c : o.crucial) B.push_back(c.v);
    std::vector<char> on_path(o.crucial.size(), 0);
    auto crucial_index = [&](Vertex v) {
      for (std::size_t k = 0; k < o.crucial.size(); ++k)
        if (o.crucial[k].v == v) return static_cast<int>(k);
      return -1;
    };
    if (ham) {
      auto paths = ab_path_verify(maker, o.A, B);
      if (!paths) return err("obstruction " + list(o.A) + ": no covering B-to-B paths");
      for (const auto& P : *paths) {
        for (Vertex v : P)
          if (int k = crucial_index(v); k >= 0) on_path[k] = 1;
        auto f = extend(o.crucial[crucial_index(P.front())]);
        auto b = extend(o.crucial[crucial_index(P.back())]);
        if (!f || !b)
          return err("obstruction " + list(o.A) + ": crucial end without important or path edges");
        Virtual V;
        V.path.assign(f->rbegin(), f->rend());
        V.path.insert(V.path.end(), P.begin(), P.end());
        V.path.insert(V.path.end(), b->begin(), b->end());
        V.u = V.path.front();
        V.v = V.path.back();
        V.cell = o.root;
        for (std::size_t t = 1; t + 1 < V.path.size(); ++t) consumed[V.path[t]] = 1;
        virt.push_back(std::move(V));
      }
    } else {
      auto m = ab_matching_verify(maker, o.A, B);
      if (!m) return err("obstruction " + list(o.A) + ": no saturating matching");
      for (const Edge& e : *m) {
        matched[e.u] = matched[e.v] = 1;
        M0.push_back(e);
        if (int k = crucial_index(e.u); k >= 0) on_path[k] = 1;
        if (int k = crucial_index(e.v); k >= 0) on_path[k] = 1;
      }
    }
    for (std::size_t k = 0; k < o.crucial.size(); ++k) {
      if (on_path[k]) continue;
      const auto& c = o.crucial[k];
      auto i1 = edge_to_any(c.v, c.important, c.v);
      auto i2 = i1 ? edge_to_any(c.v, c.important, *i1) : std::nullopt;
      if (!i2) return err("crucial " + std::to_string(c.v) + ": fewer than two important edges");
      consumed[c.v] = 1;
      virt.push_back({*i1, *i2, c.cell, -1, {*i1, c.v, *i2}});
    }
  }
  // Safe clusters (P1).
  for (const auto& s : plan_.safe_clusters) {
    if (ham) {
      auto paths = ab_path_verify(maker, s.members, s.B);
      if (!paths) return err("safe cluster " + list(s.members) + ": no covering paths");
      for (const auto& P : *paths) {
        for (std::size_t t = 1; t + 1 < P.size(); ++t) consumed[P[t]] = 1;
        virt.push_back({P.front(), P.back(), s.anchor, -1, P});
      }
    } else {
      auto m = ab_matching_verify(maker, s.members, s.B);
      if (!m) return err("safe cluster " + list(s.members) + ": no saturating matching");
      for (const Edge& e : *m) {
        matched[e.u] = matched[e.v] = 1;
        M0.push_back(e);
      }
    }
  }
  // Tree links.
  std::vector<std::array<Edge, 2>> link_edges;
  for (std::size_t li = 0; li < plan_.links.size(); ++li) {
    const auto& L = plan_.links[li];
    int j1 = maker.has_edge(L.x[0], L.y[0]) ? 0 : maker.has_edge(L.x[1], L.y[1]) ? 1 : -1;
    int j2 = maker.has_edge(L.x[2], L.y[2]) ? 2 : maker.has_edge(L.x[3], L.y[3]) ? 3 : -1;
    if (j1 < 0 || j2 < 0)
      return err("tree link " + std::to_string(L.a) + "-" + std::to_string(L.b) + ": pair lost");
    virt.push_back({L.x[j1], L.x[j2], L.a, static_cast<int>(li), {}});
    virt.push_back({L.y[j1], L.y[j2], L.b, static_cast<int>(li), {}});
    link_edges.push_back({Edge{L.x[j1], L.y[j1]}, Edge{L.x[j2], L.y[j2]}});
  }
  out.virtual_edges = virt.size();

  std::vector<Edge> all_keep;
  {
    std::vector<Edge> es(maker.edges().begin(), maker.edges().end());
    for (const auto& V : virt) {
      es.push_back(make_edge(V.u, V.v));
      all_keep.push_back(make_edge(V.u, V.v));
    }
    std::sort(all_keep.begin(), all_keep.end());
    if (std::adjacent_find(all_keep.begin(), all_keep.end()) != all_keep.end())
      return err("two marked edges share both endpoints");
  }
  std::vector<Edge> carrier_edges(maker.edges().begin(), maker.edges().end());
  carrier_edges.insert(carrier_edges.end(), all_keep.begin(), all_keep.end());
  const Graph carrier(n, std::move(carrier_edges));

  // Per-cell spanning cycles through the marked edges (P3, P4).
  std::vector<std::vector<Vertex>> cell_cycles;
  const auto& G = *index_;
  for (std::size_t ci = 0; ci < plan_.cells.size(); ++ci) {
    const auto& cp = plan_.cells[ci];
    const std::string where = "cell " + std::to_string(cp.cell);
    auto blob_of = [&](int game) {
      return static_cast<const BlobBuilderGame&>(*games_[game]).extract(maker);
    };
    auto cur = blob_of(G.c0[ci]);
    if (!cur) return err(where + ": C0 has no blob Hamilton cycle");
    std::vector<Virtual*> mine;
    for (auto& V : virt)
      if (V.cell == cp.cell) mine.push_back(&V);
    std::vector<char> endpoint(n, 0);
    for (auto* V : mine) endpoint[V->u] = endpoint[V->v] = 1;
    std::vector<BlobCycle> pieces;
    std::size_t next_virtual = 0;
    for (std::size_t k = 0; k < cp.ci.size(); ++k) {
      auto c = blob_of(G.ci[ci][k]);
      if (!c) return err(where + ": C" + std::to_string(k + 1) + " has no blob Hamilton cycle");
      if (next_virtual < mine.size()) {
        auto* V = mine[next_virtual];
        if (auto t = blob_splice_path(*c, {V->u, V->v}, carrier, {make_edge(V->u, V->v)})) {
          c = std::move(t);
          ++next_virtual;
        }
      }
      pieces.push_back(std::move(*c));
    }
    for (const auto& p : pieces) {
      auto r = absorb_cycle(*cur, p, carrier, all_keep);
      if (!r) return err(where + ": a blob cycle could not be merged");
      cur = std::move(r);
    }
    std::vector<char> on(n, 0);
    for (Vertex v : cur->order) on[v] = 1;
    for (auto* V : mine) {
      if (on[V->u] || on[V->v]) continue;
      auto r = blob_splice_path(*cur, {V->u, V->v}, carrier, all_keep);
      if (!r) return err(where + ": marked edge " + std::to_string(V->u) + "-" +
                         std::to_string(V->v) + " could not be threaded");
      cur = std::move(r);
      on[V->u] = on[V->v] = 1;
    }
    for (Vertex w : cp.members) {
      if (on[w] || consumed[w] || matched[w]) continue;
      auto r = blob_splice_path(*cur, {w}, carrier, all_keep);
      if (!r) return err(where + ": vertex " + std::to_string(w) + " could not be inserted");
      cur = std::move(r);
      on[w] = 1;
    }
    for (auto* V : mine)
      if (!has_consecutive(cur->order, V->u, V->v))
        return err(where + ": marked edge " + std::to_string(V->u) + "-" + std::to_string(V->v) +
                   " was opened");
    cell_cycles.push_back(std::move(cur->order));
  }

  // Substitution (P5): cycle edges minus marked edges plus their realizations.
  std::vector<std::array<Vertex, 2>> nb(n);
  std::vector<std::uint8_t> deg(n, 0);
  bool overflow = false;
  auto link = [&](Vertex a, Vertex b) {
    if (deg[a] >= 2 || deg[b] >= 2) {
      overflow = true;
      return;
    }
    nb[a][deg[a]++] = b;
    nb[b][deg[b]++] = a;
  };
  for (const auto& cyc : cell_cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Vertex a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (std::binary_search(all_keep.begin(), all_keep.end(), make_edge(a, b))) continue;
      link(a, b);
    }
  for (const auto& V : virt)
    for (std::size_t t = 0; t + 1 < V.path.size(); ++t) link(V.path[t], V.path[t + 1]);
  for (const auto& le : link_edges) {
    link(le[0].u, le[0].v);
    link(le[1].u, le[1].v);
  }
  if (overflow) return err("substitution: a vertex received three cycle edges");
  std::size_t start = n;
  std::size_t expected = 0;
  for (Vertex v = 0; v < n; ++v)
    if (!matched[v]) {
      ++expected;
      if (deg[v] != 2)
        return err("substitution: vertex " + std::to_string(v) + " has cycle degree " +
                   std::to_string(deg[v]));
      if (start == n) start = v;
    }
  std::vector<Vertex> cyc;
  if (start < n) {
    Vertex prev = static_cast<Vertex>(n), cur = static_cast<Vertex>(start);
    do {
      cyc.push_back(cur);
      Vertex nxt = nb[cur][0] != prev ? nb[cur][0] : nb[cur][1];
      prev = cur;
      cur = nxt;
    } while (cur != start && cyc.size() <= n);
  }
  if (cyc.size() != expected)
    return err("substitution: cycle covers " + std::to_string(cyc.size()) + " of " +
               std::to_string(expected) + " vertices");
  out.cycle = cyc;
  if (ham) {
    out.ok = is_hamilton_cycle(maker, cyc);
    if (!out.ok) return err("assembled cycle does not verify in Maker's graph");
    return out;
  }
  out.matching = M0;
  for (std::size_t i = 0; i + 1 < cyc.size(); i += 2)
    out.matching.push_back(make_edge(cyc[i], cyc[i + 1]));
  if (!cyc.empty()) {
    // Only the cycle edges of R must be Maker's.
    for (std::size_t i = 0; i < cyc.size(); ++i)
      if (!maker.has_edge(cyc[i], cyc[(i + 1) % cyc.size()]))
        return err("cycle on R uses a non-Maker edge");
  }
  out.ok = is_perfect_matching(maker, out.matching);
  if (!out.ok) return err("assembled matching does not verify in Maker's graph");
  return out;
}

}  // namespace mbrgg
