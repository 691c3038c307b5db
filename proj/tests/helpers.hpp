#pragma once

// Small graph builders and brute-force enumerators shared by the test files.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyclelab/graph.hpp"
#include "cyclelab/local_limit.hpp"
#include "cyclelab/rng.hpp"
#include "cyclelab/strip.hpp"

namespace testutil {

using E = std::pair<std::uint32_t, std::uint32_t>;

inline cyclelab::Graph cycle_graph(std::uint32_t n) {
  std::vector<E> e;
  for (std::uint32_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return cyclelab::Graph::from_edges(n, e);
}

inline cyclelab::Graph path_graph(std::uint32_t n) {
  std::vector<E> e;
  for (std::uint32_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return cyclelab::Graph::from_edges(n, e);
}

inline cyclelab::Graph complete_graph(std::uint32_t n) {
  std::vector<E> e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) e.push_back({i, j});
  return cyclelab::Graph::from_edges(n, e);
}

// Two K4s {0..3} and {6..9} joined by the path 3-4-5-6. Min degree 2, its
// own 2-core, and the whole thing dissolves under stripping.
inline cyclelab::Graph dumbbell_graph() {
  std::vector<E> e;
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = i + 1; j < 4; ++j) {
      e.push_back({i, j});
      e.push_back({i + 6, j + 6});
    }
  e.push_back({3, 4});
  e.push_back({4, 5});
  e.push_back({5, 6});
  return cyclelab::Graph::from_edges(10, e);
}

// Spider: center 0, middles 1..3, leaf tips 4..6 (three legs of length 2).
inline std::vector<E> spider_edges() {
  return {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}};
}

// The spider with each tip joined to all of {7,8,9}, one side of a K33 on
// {7..12}. Stripping absorbs exactly the spider and leaves the K33 alone.
inline cyclelab::Graph spider_core() {
  std::vector<E> e = spider_edges();
  for (std::uint32_t a = 7; a < 10; ++a)
    for (std::uint32_t b = 10; b < 13; ++b) e.push_back({a, b});
  for (std::uint32_t leaf = 4; leaf < 7; ++leaf)
    for (std::uint32_t a = 7; a < 10; ++a) e.push_back({leaf, a});
  return cyclelab::Graph::from_edges(13, e);
}

inline cyclelab::TreeComponent make_tree(std::vector<std::uint32_t> vertices,
                                         std::vector<E> edges,
                                         std::vector<std::uint32_t> boundary) {
  cyclelab::TreeComponent t;
  std::sort(vertices.begin(), vertices.end());
  std::sort(boundary.begin(), boundary.end());
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  t.vertices = std::move(vertices);
  t.edges = std::move(edges);
  t.boundary = std::move(boundary);
  return t;
}

// Prufer decode over labels 0..n-1; n >= 2, sequence length n-2.
inline std::vector<E> prufer_decode(const std::vector<std::uint32_t>& seq,
                                    std::uint32_t n) {
  std::vector<std::uint32_t> deg(n, 1);
  for (auto s : seq) ++deg[s];
  std::set<std::uint32_t> leaves;
  for (std::uint32_t v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.insert(v);
  std::vector<E> out;
  for (auto s : seq) {
    std::uint32_t leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    out.push_back({std::min(leaf, s), std::max(leaf, s)});
    if (--deg[s] == 1) leaves.insert(s);
  }
  std::uint32_t u = *leaves.begin();
  std::uint32_t v = *std::next(leaves.begin());
  out.push_back({u, v});
  return out;
}

inline std::vector<E> random_tree_edges(std::uint32_t n, cyclelab::SplitMix64& rng) {
  if (n < 2) return {};
  if (n == 2) return {{0, 1}};
  std::vector<std::uint32_t> seq(n - 2);
  for (auto& s : seq) s = static_cast<std::uint32_t>(rng.next_below(n));
  return prufer_decode(seq, n);
}

// Every rooted tree on n vertices as a canonical code, by exhausting parent
// arrays with parent[i] < i. (n-1)! arrays, fine through n = 9.
inline std::set<std::string> rooted_codes_brute(std::uint32_t n) {
  std::set<std::string> out;
  if (n == 0) return out;
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<E> edges(n > 0 ? n - 1 : 0);
  while (true) {
    for (std::uint32_t i = 1; i < n; ++i)
      edges[i - 1] = {std::min(parent[i], i), std::max(parent[i], i)};
    auto g = cyclelab::Graph::from_edges(n, edges);
    out.insert(cyclelab::canonical_code(g, 0));
    std::uint32_t i = n;
    while (i > 1) {
      --i;
      if (parent[i] + 1 < i) {
        ++parent[i];
        break;
      }
      parent[i] = 0;
      if (i == 1) return out;
    }
    if (n == 1) return out;
  }
}

// Free (unrooted) trees on n vertices: min-over-roots canonical code, with a
// representative edge list kept per shape.
inline std::map<std::string, std::vector<E>> free_trees_brute(std::uint32_t n) {
  std::map<std::string, std::vector<E>> out;
  if (n == 1) {
    out.emplace("()", std::vector<E>{});
    return out;
  }
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<E> edges(n - 1);
  while (true) {
    for (std::uint32_t i = 1; i < n; ++i)
      edges[i - 1] = {std::min(parent[i], i), std::max(parent[i], i)};
    auto g = cyclelab::Graph::from_edges(n, edges);
    std::string best = cyclelab::canonical_code(g, 0);
    for (std::uint32_t r = 1; r < n; ++r)
      best = std::min(best, cyclelab::canonical_code(g, r));
    out.emplace(best, edges);
    std::uint32_t i = n;
    bool done = true;
    while (i > 1) {
      --i;
      if (parent[i] + 1 < i) {
        ++parent[i];
        done = false;
        break;
      }
      parent[i] = 0;
    }
    if (done) return out;
  }
}

// True iff cyc is a Hamilton cycle of g that uses every forced edge.
inline bool valid_hamilton(const cyclelab::Graph& g,
                           const std::vector<std::uint32_t>& cyc,
                           const std::vector<E>& forced) {
  std::size_t n = g.vertex_count();
  if (cyc.size() != n || n < 3) return false;
  std::vector<bool> seen(n, false);
  for (auto v : cyc) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t u = cyc[i], v = cyc[(i + 1) % n];
    if (!g.has_edge(u, v)) return false;
    used.insert({std::min(u, v), std::max(u, v)});
  }
  for (auto [u, v] : forced)
    if (!used.count({std::min(u, v), std::max(u, v)})) return false;
  return true;
}

}  // namespace testutil
