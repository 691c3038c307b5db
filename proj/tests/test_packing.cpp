#include <cstdint>
#include <stdexcept>

#include "cyclelab/oracle.hpp"
#include "cyclelab/packing.hpp"
#include "cyclelab/rng.hpp"
#include "cyclelab/strip.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cyclelab;
using testutil::E;

namespace {

// boundary >= the leaf set; a lone vertex counts as a leaf
std::vector<std::uint32_t> leaves_of(std::uint32_t n, const std::vector<E>& edges) {
  if (n == 1) return {0};
  std::vector<std::uint32_t> deg(n, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < n; ++v)
    if (deg[v] == 1) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("single vertex") {
  auto with = testutil::make_tree({7}, {}, {7});
  auto p = phi_tree(with);
  CHECK(p.phi == 0);
  REQUIRE(p.paths.size() == 1);
  CHECK(p.paths[0] == std::vector<std::uint32_t>{7});
  CHECK_NOTHROW(validate_packing(with, p));

  auto without = testutil::make_tree({7}, {}, {});
  auto q = phi_tree(without);
  CHECK(q.phi == 1);
  CHECK(q.paths.empty());
  CHECK(q.uncovered == std::vector<std::uint32_t>{7});
  CHECK_NOTHROW(validate_packing(without, q));
}

TEST_CASE("star with anchored leaves packs completely") {
  auto t = testutil::make_tree({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}}, {1, 2, 3});
  auto p = phi_tree(t);
  CHECK(p.phi == 0);
  CHECK_NOTHROW(validate_packing(t, p));
}

TEST_CASE("path with anchored ends packs as itself") {
  auto t = testutil::make_tree({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}}, {0, 3});
  auto p = phi_tree(t);
  CHECK(p.phi == 0);
  REQUIRE(p.paths.size() == 1);
  CHECK(p.paths[0] == std::vector<std::uint32_t>{0, 1, 2, 3});
  CHECK_NOTHROW(validate_packing(t, p));
}

TEST_CASE("the seven-vertex spider is the smallest obstruction") {
  auto t = testutil::make_tree({0, 1, 2, 3, 4, 5, 6}, testutil::spider_edges(),
                               {4, 5, 6});
  auto p = phi_tree(t);
  CHECK(p.phi == 1);
  // ties break toward the lexicographically least uncovered id list
  CHECK(p.uncovered == std::vector<std::uint32_t>{1});
  CHECK_NOTHROW(validate_packing(t, p));

  // every tree strictly below seven vertices with anchored leaves packs fully
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (const auto& [code, edges] : testutil::free_trees_brute(n)) {
      auto small = testutil::make_tree(
          [&] {
            std::vector<std::uint32_t> v(n);
            for (std::uint32_t i = 0; i < n; ++i) v[i] = i;
            return v;
          }(),
          edges, leaves_of(n, edges));
      CHECK_MESSAGE(phi_tree(small).phi == 0, "code ", code);
    }
  }
}

TEST_CASE("dp matches the exhaustive count on every small shape") {
  std::uint64_t free_counts[10] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47};
  std::uint64_t checked = 0;
  for (std::uint32_t n = 1; n <= 9; ++n) {
    auto shapes = testutil::free_trees_brute(n);
    CHECK(shapes.size() == free_counts[n]);
    for (const auto& [code, edges] : shapes) {
      auto leaves = leaves_of(n, edges);
      std::vector<std::uint32_t> internal;
      for (std::uint32_t v = 0; v < n; ++v) {
        bool is_leaf = false;
        for (auto l : leaves) is_leaf |= l == v;
        if (!is_leaf) internal.push_back(v);
      }
      // every boundary choice that keeps all leaves anchored
      for (std::uint32_t mask = 0; mask < (1u << internal.size()); ++mask) {
        auto boundary = leaves;
        for (std::size_t i = 0; i < internal.size(); ++i)
          if (mask >> i & 1) boundary.push_back(internal[i]);
        std::vector<std::uint32_t> ids(n);
        for (std::uint32_t i = 0; i < n; ++i) ids[i] = i;
        auto t = testutil::make_tree(ids, edges, boundary);
        auto p = phi_tree(t);
        CHECK(p.phi == phi_exact(t));
        CHECK(p.phi <= n - boundary.size());
        CHECK_NOTHROW(validate_packing(t, p));
        ++checked;
      }
    }
  }
  CHECK(checked == 1776);
}

TEST_CASE("dp matches the exhaustive count on random boundary labelings") {
  SplitMix64 rng(Seed{777, 1});
  for (int trial = 0; trial < 1500; ++trial) {
    std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.next_below(12));
    auto edges = testutil::random_tree_edges(n, rng);
    std::vector<std::uint32_t> ids(n), boundary;
    for (std::uint32_t i = 0; i < n; ++i) {
      ids[i] = i;
      if (rng.next_unit() < 0.5) boundary.push_back(i);
    }
    auto t = testutil::make_tree(ids, edges, boundary);
    auto p = phi_tree(t);
    REQUIRE_MESSAGE(p.phi == phi_exact(t), "n=", n, " trial=", trial);
    CHECK_NOTHROW(validate_packing(t, p));
    // anchored vertices can always stand alone, so phi never exceeds the rest
    CHECK(p.phi <= n - boundary.size());
  }
}

TEST_CASE("matching edge replaces a packed path") {
  auto g = testutil::dumbbell_graph();
  StripResult r;
  r.stripped = VertexSet(10);
  r.v1 = VertexSet(10);
  r.v2 = VertexSet(10);
  for (std::uint32_t v : {4u, 5u}) {
    r.stripped.insert(v);
    r.v2.insert(v);
  }
  for (std::uint32_t v : {0u, 1u, 2u, 3u, 6u, 7u, 8u, 9u}) r.v1.insert(v);
  r.components.push_back({{4, 5}, 1, true});
  r.v0_per_component.push_back({});

  auto cl = classify(g, r);
  REQUIRE(cl.trees.size() == 1);
  CHECK(cl.trees[0].boundary == std::vector<std::uint32_t>{4, 5});
  auto p = phi_tree(cl.trees[0]);
  CHECK(p.phi == 0);

  auto gs = assemble_gamma_star(g, r, cl, {p});
  CHECK(gs.graph.vertex_count() == 10);
  CHECK(gs.graph.edge_count() == 15);
  CHECK(gs.i_star.empty());
  CHECK(gs.v2_star.to_vector() == std::vector<std::uint32_t>{4, 5});
  REQUIRE(gs.m_star.size() == 1);
  auto [a, b] = gs.m_star[0];
  CHECK(gs.to_parent[a] == 4);
  CHECK(gs.to_parent[b] == 5);
  // the assembled graph is the original one here, matching edge included
  CHECK(gs.graph.edges() == g.edges());
}

TEST_CASE("length-0 paths contribute no matching edge") {
  std::vector<E> e = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3},
                      {2, 3}, {4, 0}, {4, 1}, {4, 2}};
  auto g = Graph::from_edges(5, e);
  StripResult r;
  r.stripped = VertexSet(5);
  r.v1 = VertexSet(5);
  r.v2 = VertexSet(5);
  r.stripped.insert(4);
  r.v2.insert(4);
  for (std::uint32_t v = 0; v < 4; ++v) r.v1.insert(v);
  r.components.push_back({{4}, 0, true});
  r.v0_per_component.push_back({});

  auto cl = classify(g, r);
  auto p = phi_tree(cl.trees[0]);
  auto gs = assemble_gamma_star(g, r, cl, {p});
  CHECK(gs.m_star.empty());
  CHECK(gs.i_star.empty());
  CHECK(gs.graph.vertex_count() == 5);
  CHECK(gs.graph.edge_count() == 9);

  // a long path may not end outside the interface
  PackingResult bogus;
  bogus.phi = 0;
  bogus.paths = {{0, 4}};
  CHECK_THROWS_AS(assemble_gamma_star(g, r, cl, {bogus}), std::invalid_argument);
}

TEST_CASE("full pipeline interface survives into the assembled graph") {
  auto g = testutil::spider_core();
  auto r = strip(g);
  auto cl = classify(g, r);
  REQUIRE(cl.trees.size() == 1);
  auto p = phi_tree(cl.trees[0]);
  CHECK(p.phi == 1);
  auto gs = assemble_gamma_star(g, r, cl, {p});
  // six anchors plus the three tips; the packed path spans tip to tip
  CHECK(gs.graph.vertex_count() == 9);
  CHECK(gs.graph.edge_count() == 19);
  REQUIRE(gs.m_star.size() == 1);
  CHECK(gs.to_parent[gs.m_star[0].first] == 5);
  CHECK(gs.to_parent[gs.m_star[0].second] == 6);
  CHECK(gs.i_star == std::vector<std::uint32_t>{0, 2, 3});
  CHECK(gs.v2_star.to_vector() == std::vector<std::uint32_t>{4, 5, 6});
}
