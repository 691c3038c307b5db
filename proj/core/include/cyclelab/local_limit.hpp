#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cyclelab/analytic.hpp"
#include "cyclelab/graph.hpp"

namespace cyclelab {

// A rooted tree in canonical form. The code is "(" + child codes sorted as
// strings + ")" recursively, so equal codes mean root-preserving isomorphism.
// Vertex 0 is the root; vertices are in code (preorder) order.
struct RootedTree {
  std::vector<std::uint32_t> parent;       // parent[0] == 0
  std::vector<std::uint32_t> level_sizes;  // index = depth
  std::vector<std::uint32_t> degrees;      // tree degree per vertex
  std::string code;
  std::uint32_t depth = 0;
  std::uint64_t aut = 1;  // root-fixing automorphisms, saturating
  double log_aut = 0;     // exact in log space even when aut saturates
  std::size_t size() const { return parent.size(); }
};

// Canonical code of an arbitrary tree-shaped graph rooted at `root`. The
// graph must be a tree containing root (|E| = |V| - 1, connected).
std::string canonical_code(const Graph& tree, std::uint32_t root);

// Parse a canonical (or any well-formed) code back into a RootedTree; the
// stored code is re-canonicalized, so unsorted input codes are accepted.
RootedTree tree_from_code(const std::string& code);

// Product over vertices of m! for each group of m identical child subtrees,
// i.e. the number of automorphisms fixing the root. Saturates at uint64 max.
std::uint64_t aut_rooted(const RootedTree& t);

// The enumerated family: every canonical rooted tree of depth <= k1 whose
// level i has at most caps[i-1] vertices, streamed by (size, code) until the
// cumulative vertex budget `size_cap` runs out.
struct HEps {
  std::vector<RootedTree> trees;
  unsigned k1 = 0;
  std::vector<std::uint64_t> caps;  // caps[i-1] bounds level i
  std::uint64_t trees_evaluated = 0;
  std::uint64_t vertices_enumerated = 0;
  bool truncated = false;
  std::uint64_t cutoff_size_class = 0;  // first size not fully emitted
};

// caps[i-1] = floor(3 c^i k1 / eps), k1 from k1_of(eps, c).
HEps enumerate_h_eps(double c, double eps, std::uint64_t size_cap);

// Same stream under explicit depth and level caps (k1 = caps.size()).
HEps enumerate_with_caps(const std::vector<std::uint64_t>& caps, std::uint64_t size_cap);

// The degree-completion gadget: t plus one K_{3,3}; tree vertices at depth
// exactly k1 (or all of them if whole_ball) gain edges to all three vertices
// of one fixed side. Tree keeps ids 0..|t|-1, the K_{3,3} sides are
// {|t|,|t|+1,|t|+2} and {|t|+3,|t|+4,|t|+5}.
Graph build_gv(const RootedTree& t, unsigned k1, bool whole_ball = false);

// Where the root ended up after stripping the gadget's 2-core.
enum class RootFate { NotInCore, InV1, TreeComponent, NonTreeComponent };

struct FRootResult {
  double value = 0;  // phi(T')/|interior(T')| when the root lands in tree T'
  RootFate fate = RootFate::NotInCore;
};
FRootResult f_root(const RootedTree& t, unsigned k1, bool whole_ball = false);

// The truncated local-limit series: sum over enumerated trees of
// f_root * (1/Aut) (N/2M)^{k-1} lambda^{2k-2} A / f2(lambda)^k with A either
// e^{k lambda} or f2(k lambda); both sums are returned.
struct FEpsResult {
  double value_exp = 0;
  double value_f2 = 0;
  double rho_mass_exp = 0;  // sum of the weights alone, truncation context
  double rho_mass_f2 = 0;
  double lambda = 0;
  double ratio = 0;  // 2M/N
  unsigned k1 = 0;
  std::uint64_t trees_evaluated = 0;
  std::uint64_t trees_contributing = 0;  // f_root > 0
  std::uint64_t vertices_enumerated = 0;
  bool truncated = false;
  std::uint64_t cutoff_size_class = 0;
};
FEpsResult f_eps(double c, double eps, std::uint64_t size_cap, double N, double M,
                 bool whole_ball = false);

// Radius-k1 ball shapes over all vertices: canonical code -> count for balls
// that are trees of at most max_size vertices; the rest are bucketed.
struct CensusResult {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t non_tree_balls = 0;
  std::uint64_t oversized = 0;
  std::uint64_t total = 0;
};
CensusResult neighborhood_census(const Graph& g, unsigned k1, std::size_t max_size);

}  // namespace cyclelab
