#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclelab/graph.hpp"
#include "cyclelab/strip.hpp"

namespace cyclelab {

// Exact longest-cycle length via a bitmask dynamic program anchored at each
// cycle's minimum vertex; 0 for acyclic inputs. Rejects |V| > cap.
std::uint32_t longest_cycle_exact(const Graph& g, std::size_t cap = 20);

// Same value by naive DFS path enumeration; exists to cross-check the DP on
// tiny graphs. Rejects |V| > cap.
std::uint32_t longest_cycle_dfs(const Graph& g, std::size_t cap = 12);

// Exhaustive minimum-uncovered count over all vertex-disjoint path systems
// with boundary endpoints: every boundary-to-boundary tree path (length-0
// included) is a candidate piece, then a subset-cover DP. Rejects > cap.
std::uint64_t phi_exact(const TreeComponent& t, std::size_t cap = 12);

struct HamiltonResult {
  bool found = false;
  std::vector<std::uint32_t> cycle;  // vertex order, starts at 0, when found
};

// Searches for a Hamilton cycle containing every `forced` edge. The forced
// set must be a matching of existing edges; each matched pair is traversed
// atomically by the DP, which makes skipping a forced edge unrepresentable.
// Rejects |V| > cap.
HamiltonResult hamilton_forced(const Graph& g,
                               const std::vector<std::pair<std::uint32_t, std::uint32_t>>& forced,
                               std::size_t cap = 20);

}  // namespace cyclelab
