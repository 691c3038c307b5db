#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cyclelab/graph.hpp"
#include "cyclelab/rng.hpp"

namespace cyclelab {

// Which eligible pivot moves next. The final stripped set is invariant under
// the choice; the policies exist to test exactly that.
enum class OrderPolicy { MinId, MaxId, Random };

struct StripOptions {
  OrderPolicy policy = OrderPolicy::MinId;
  Seed seed{};                       // used by OrderPolicy::Random only
  std::size_t step_log_cap = 1u << 20;
};

struct StripStep {
  char rule;             // 'a' or 'b'
  std::uint32_t pivot;
  std::array<std::uint32_t, 3> added{};
  std::uint8_t added_count = 0;
};

struct StripComponent {
  std::vector<std::uint32_t> vertices;  // sorted
  std::uint64_t edge_count = 0;
  bool is_tree = false;
};

struct StripResult {
  VertexSet stripped;   // S: all vertices absorbed by the process
  VertexSet v1;         // complement of S in the input
  VertexSet v2;         // members of S with a neighbor in v1
  std::vector<StripComponent> components;            // of the induced graph on S
  std::vector<std::vector<std::uint32_t>> v0_per_component;  // component minus v2
  std::vector<StripStep> step_log;
  bool step_log_truncated = false;
};

// Repeatedly grow S: rule a takes a member of S with exactly one or two
// neighbors outside and absorbs those neighbors; rule b takes a non-member
// with at most two outside neighbors and absorbs it plus them. Runs until no
// rule applies. Input must have min degree >= 2 (empty graph allowed).
StripResult strip(const Graph& core, const StripOptions& opts = {});

// Hard structural checks on a finished strip; throws std::logic_error with a
// description on the first violation.
//  - no rule-a/rule-b move remains
//  - every vertex of v1 and of v2 has >= 3 neighbors in v1
//  - each component K has |K minus v2| >= |K|/3
//  - partition bookkeeping consistent
void validate_strip_result(const Graph& core, const StripResult& r);

// Tree components with their boundary (component members adjacent to v1);
// non_tree_mass counts vertices in non-tree components.
struct TreeComponent {
  std::vector<std::uint32_t> vertices;  // parent-graph ids, sorted
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> boundary;  // subset of vertices, sorted
};
struct Classified {
  std::vector<TreeComponent> trees;
  std::uint64_t non_tree_mass = 0;
  std::uint64_t non_tree_components = 0;
};
Classified classify(const Graph& core, const StripResult& r);

// one-line JSON summary (sizes, component histogram)
std::string strip_summary_json(const StripResult& r, const Classified& cl);

}  // namespace cyclelab
