#pragma once

// Breaker stress opponents. All are deterministic for a fixed seed and only
// ever return unclaimed edges.

#include <memory>
#include <string>
#include <vector>

#include "mbrgg/game.hpp"

namespace mbrgg {

std::unique_ptr<Strategy> random_breaker(Seed seed);

struct CutAttackerOptions {
  // Stoer-Wagner is run while the contracted board has at most this many
  // super-vertices; above it the minimum-degree super-vertex cut is used.
  std::size_t exact_cut_limit = 150;
};

// Attacks a minimum cut of the board with Maker's components contracted and
// Breaker's edges removed.
std::unique_ptr<Strategy> cut_attacker(Seed seed, CutAttackerOptions opts = {});

// Claims edges at the vertex with the fewest Maker-or-free edges among those
// where Maker holds fewer than `target_degree` edges.
std::unique_ptr<Strategy> low_degree_attacker(Seed seed, std::size_t target_degree = 2);

// Concentrates on a focus edge set (typically the boards of local games).
// An empty focus set selects edges at the lowest-degree decile of vertices.
std::unique_ptr<Strategy> cluster_spoiler(Seed seed, std::vector<EdgeId> focus = {});

// "random" | "cut" | "low_degree" | "cluster".
std::unique_ptr<Strategy> make_adversary(const std::string& name, Seed seed,
                                         std::vector<EdgeId> focus = {});
const std::vector<std::string>& adversary_names();

// Global minimum cut of a weighted graph given as a dense symmetric matrix.
// Returns the cut weight and the vertex subset on one side.
std::pair<double, std::vector<char>> stoer_wagner(std::vector<std::vector<double>> w);

}  // namespace mbrgg
