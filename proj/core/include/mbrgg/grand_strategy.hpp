#pragma once

// Full-board Maker strategies: connectivity via tree packing, and the
// Hamilton cycle / perfect matching strategies built from a marking plan
// over the dissection, a registry of local games and a stitcher that turns
// the won local games into a certificate.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbrgg/blob.hpp"
#include "mbrgg/dissection.hpp"
#include "mbrgg/game.hpp"
#include "mbrgg/local_games.hpp"

namespace mbrgg {

// ------------------------------------------------------------ connectivity

// Lehman Maker on the whole board. Throws PreconditionError when the graph
// does not pack two edge-disjoint spanning trees.
std::unique_ptr<Strategy> maker_connectivity(const Board& board);

// ------------------------------------------------------------ marking plan

enum class GrandGame { hamilton, perfect_matching };
std::string to_string(GrandGame g);

enum class ImportantCells {
  shared,  // every crucial of an obstruction prefers the first crucial's cell
  own      // each crucial takes the cell where it has the most free neighbours
};

struct MarkingParams {
  GrandGame game = GrandGame::hamilton;
  std::size_t ell = 3;         // number of sets C_1..C_ell per cell
  std::size_t ci_size = 12;    // |C_i|, played as 3-blob games
  std::size_t ci_k = 3;
  std::size_t c0_min = 12;     // smallest admissible |C_0|
  std::size_t c0_k4_size = 40; // C_0 plays a 4-blob game from this size on
  std::size_t max_marked = 1000;
  std::size_t crucial_cap = 6;
  std::size_t important_per = 4;
  ImportantCells important_cells = ImportantCells::shared;
  bool require_str = true;
  Seed seed = 1;
};

enum class VertexRole : std::uint8_t {
  unassigned,
  c0,
  ci,
  tree_link,
  important,      // important for a crucial vertex
  safe_important, // endpoint set of a safe-cluster game
  path,           // assigned to a short path between cells
  crucial,
  obstruction,
  safe_cluster
};
std::string to_string(VertexRole r);

struct TreeLink {
  CellId a = 0, b = 0;
  std::array<Vertex, 4> x{}, y{};  // pairs (x0y0, x1y1) and (x2y2, x3y3)
};

// Cells from a crucial's important cell (front) to the obstruction's root
// cell (back), with two assigned vertices per cell.
struct CellPath {
  std::vector<CellId> cells;
  std::vector<std::array<Vertex, 2>> pairs;
};

struct CrucialRecord {
  Vertex v = 0;
  CellId cell = 0;
  std::vector<Vertex> important;
  int path = -1;  // index into MarkingPlan::paths, or -1 when cell == root
};

struct ObstructionPlan {
  Obstruction::Kind kind = Obstruction::Kind::dangerous_cluster;
  int component = -1;
  std::vector<Vertex> A;
  std::vector<CrucialRecord> crucial;
  CellId root = 0;
};

struct SafeClusterPlan {
  CellId anchor = 0;
  std::vector<Vertex> members;  // the game's A side
  std::vector<Vertex> B;        // important vertices in the anchor cell
};

struct CellPlan {
  CellId cell = 0;
  std::vector<Vertex> members;  // every point of the cell
  std::vector<Vertex> marked;  // tree links, important and path vertices
  std::vector<Vertex> c0;
  std::vector<std::vector<Vertex>> ci;
};

struct PlanDiagnostic {
  std::string condition;
  std::string witness;
};

struct MarkingPlan {
  MarkingParams params;
  std::vector<CellId> tree_cells;  // vertices of `tree` are positions here
  BoundedTree tree;
  std::vector<TreeLink> links;
  std::vector<ObstructionPlan> obstructions;
  std::vector<SafeClusterPlan> safe_clusters;
  std::vector<CellPath> paths;
  std::vector<CellPlan> cells;
  std::vector<int> cell_index;  // per CellId: index into cells or -1
  std::vector<VertexRole> role;
  std::vector<PlanDiagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
  std::size_t max_marked_in_cell() const;
};

// Checks the structural preconditions and lays out every local game. On a
// failed precondition the plan carries diagnostics naming the condition and
// a witness; the layout is then incomplete.
MarkingPlan marking_plan(const GeometricGraph& g, const DissectionAnalysis& a,
                         MarkingParams params);
std::string plan_json(const MarkingPlan& plan);

// ------------------------------------------------------------ composite Maker

// Dispatch rules (i)..(xi) in the order of the strategy description.
enum class Rule : std::uint8_t {
  tree_link,
  crucial_important,
  obstruction_game,
  safe_cluster_game,
  path_cross,
  path_local,
  ci_blob,
  c0_blob,
  marked_star,
  ci_star,
  fallback
};
inline constexpr std::size_t kRuleCount = 11;
std::string to_string(Rule r);

struct DispatchAudit {
  std::array<std::size_t, kRuleCount> breaker_moves{};
  std::array<std::size_t, kRuleCount> maker_replies{};
  std::size_t unanswered = 0;  // owning game had no free edge left
  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : breaker_moves) t += c;
    return t;
  }
};

struct StitchResult {
  bool ok = false;
  std::vector<Vertex> cycle;     // Hamilton cycle (hamilton) or cycle on R (matching)
  std::vector<Edge> matching;    // perfect matching
  std::vector<std::string> errors;
  std::size_t virtual_edges = 0;
};

class GrandMaker : public Strategy {
 public:
  // Throws PreconditionError when the plan carries diagnostics, when n is
  // odd for the matching game, or when two games claim the same edge.
  GrandMaker(const Board& board, const GeometricGraph& g, MarkingPlan plan);
  ~GrandMaker() override;

  std::string name() const override;
  EdgeId next_move(const GameState& state) override;
  void on_opponent_move(const GameState& state, EdgeId e) override;
  std::optional<Certificate> certificate(const GameState& state) override;

  const MarkingPlan& plan() const { return plan_; }
  const DispatchAudit& audit() const { return audit_; }
  std::size_t game_count() const { return games_.size(); }
  // Edges of obstruction and safe-cluster games plus their pairings.
  std::vector<EdgeId> focus_edges() const;
  // Owner game of an edge (-1 for fallback) and that game's rule.
  int owner(EdgeId e) const { return owner_[e]; }
  Rule rule_of(int game) const { return rules_[game]; }

  // Assembles the certificate from Maker's final graph.
  StitchResult stitch(const Graph& maker) const;
  // Result of the stitch run by certificate(), if any.
  const std::optional<StitchResult>& last_stitch() const { return last_stitch_; }

 private:
  struct Games;
  void add(std::unique_ptr<LocalGame> game, Rule rule);
  EdgeId any_move(const GameState& state);

  const Board* board_;
  const GeometricGraph* graph_;
  MarkingPlan plan_;
  std::vector<std::unique_ptr<LocalGame>> games_;
  std::vector<Rule> rules_;
  std::vector<int> owner_;
  std::unique_ptr<Games> index_;
  EdgeId last_ = kNoEdge;
  std::size_t cursor_ = 0;
  DispatchAudit audit_;
  std::optional<StitchResult> last_stitch_;
};

// ------------------------------------------------------------ synthetic instances

// Point sets built to satisfy the plan preconditions at small constants:
// dense clusters in a connected block of good cells, dangerous clusters with
// placed crucial vertices, and safe vertices in bad cells.
struct SyntheticOptions {
  double side = 0.05;
  double radius_factor = 2.5;  // r = radius_factor * side
  double cluster_radius = 0.008;
  std::size_t cells_min = 2, cells_max = 3;
  std::size_t points_min = 80, points_max = 96;
  std::size_t obstructions_min = 1, obstructions_max = 2;
  std::size_t obstruction_size_max = 3;
  std::size_t safe_singletons_max = 1;
  bool bridge_obstructions = true;  // crucial vertices split over two cells
  std::size_t T = 60;
  bool even = false;  // force an even number of points
};

struct SyntheticInstance {
  std::shared_ptr<PointSet> points;
  double r = 0.0;
  DissectionParams dissection;
  std::size_t good_cells = 0, obstructions = 0, safe_vertices = 0;
};

SyntheticInstance synthetic_instance(const SyntheticOptions& opts, Seed seed);

}  // namespace mbrgg
