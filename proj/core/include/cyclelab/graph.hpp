#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cyclelab {

// Dense set of vertex ids over a fixed universe [0, universe).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : words_((universe + 63) / 64, 0), universe_(universe) {}

  bool contains(std::uint32_t v) const {
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }
  void insert(std::uint32_t v) {
    std::uint64_t& w = words_[v >> 6];
    std::uint64_t bit = 1ULL << (v & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }
  void erase(std::uint32_t v) {
    std::uint64_t& w = words_[v >> 6];
    std::uint64_t bit = 1ULL << (v & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }
  std::size_t size() const { return count_; }
  std::size_t universe() const { return universe_; }
  bool empty() const { return count_ == 0; }

  std::vector<std::uint32_t> to_vector() const;
  bool operator==(const VertexSet& o) const {
    return universe_ == o.universe_ && words_ == o.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
};

// Immutable simple undirected graph in CSR form. Adjacency lists are sorted,
// self-loops and parallel edges are rejected at construction.
class Graph {
 public:
  Graph() = default;

  // takes any edge list (unordered pairs); throws std::invalid_argument on
  // loops, duplicates, or out-of-range endpoints
  static Graph from_edges(std::size_t n,
                          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> offsets_;  // n_+1 entries
  std::vector<std::uint32_t> adj_;
};

// A graph cut out of a parent graph; to_parent maps local ids back so results
// can be reported in the parent's coordinates.
struct Subgraph {
  Graph graph;
  std::vector<std::uint32_t> to_parent;
};

// Vertex set of the largest connected component; ties go to the component
// holding the smallest vertex id. Empty graph -> empty set.
VertexSet giant_component(const Graph& g);

// Induced subgraph on `keep`, remapped to local ids in ascending parent order.
Subgraph induced_subgraph(const Graph& g, const VertexSet& keep);

// Iteratively peel degree <= 1 vertices from the giant component (or from all
// of g). An acyclic input yields an empty subgraph, which is valid downstream.
Subgraph two_core_of_giant(const Graph& g);
Subgraph two_core_all(const Graph& g);

struct BfsBall {
  std::vector<VertexSet> levels;  // levels[i] = vertices at distance exactly i
  Subgraph induced;               // induced subgraph on the union of levels
};
BfsBall bfs_ball(const Graph& g, std::uint32_t v, std::uint32_t radius);

// Text edge list: header "n m", then one "u v" per line. Loaders reject
// duplicate edges (either orientation) and self-loops.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

}  // namespace cyclelab
