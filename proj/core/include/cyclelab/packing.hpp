#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclelab/graph.hpp"
#include "cyclelab/strip.hpp"

namespace cyclelab {

// An optimal boundary-anchored path packing of one tree. Paths are vertex
// sequences in parent-graph ids; a single-element sequence is a length-0
// path. Vertices appearing in no path are listed in `uncovered`.
struct PackingResult {
  std::uint64_t phi = 0;  // |uncovered| at the minimum
  std::vector<std::vector<std::uint32_t>> paths;
  std::vector<std::uint32_t> uncovered;  // sorted
};

// Minimum number of vertices of t left uncovered by vertex-disjoint paths
// whose endpoints all lie in t.boundary (length-0 paths count). Exact via a
// rooted DP with per-vertex states {closed, open-dangling, uncovered}.
// Among minimizers the packing with the lexicographically smallest uncovered
// set (as a sorted id list) is returned, so output is input-deterministic.
PackingResult phi_tree(const TreeComponent& t);

// Structural check of a packing against its tree: disjointness, path
// validity, boundary endpoints, and the covering count. Throws
// std::logic_error on the first violation.
void validate_packing(const TreeComponent& t, const PackingResult& p);

// The cycle-target graph assembled from a stripped 2-core and per-tree
// packings. Vertices are V1 plus the surviving interface V2*; edges are the
// V1-internal and V1:V2* edges of the core plus one matching edge per packed
// path of length >= 1.
struct GammaStar {
  Graph graph;                           // on local ids
  std::vector<std::uint32_t> to_parent;  // local id -> core id
  std::vector<std::pair<std::uint32_t, std::uint32_t>> m_star;  // local ids
  std::vector<std::uint32_t> i_star;     // core ids interior to some path, sorted
  VertexSet v2_star;                     // over the core universe
};

// packings[i] must describe cl.trees[i]. Throws std::invalid_argument if a
// path of length >= 1 has an endpoint outside v2.
GammaStar assemble_gamma_star(const Graph& c2, const StripResult& strip,
                              const Classified& cl,
                              const std::vector<PackingResult>& packings);

}  // namespace cyclelab
