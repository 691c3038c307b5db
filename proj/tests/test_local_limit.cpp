#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclelab/analytic.hpp"
#include "cyclelab/local_limit.hpp"
#include "cyclelab/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cyclelab;
using doctest::Approx;
using testutil::E;

namespace {

// root-fixing automorphisms by brute force over label permutations
std::uint64_t aut_brute(const Graph& g, std::uint32_t root) {
  std::uint32_t n = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  std::uint64_t count = 0;
  do {
    if (perm[root] != root) continue;
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (!g.has_edge(perm[u], perm[v])) {
        ok = false;
        break;
      }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

const std::string kSpiderCode = "((())(())(()))";

}  // namespace

TEST_CASE("canonical codes of known shapes") {
  CHECK(canonical_code(Graph::from_edges(1, {}), 0) == "()");
  auto p3 = testutil::path_graph(3);
  CHECK(canonical_code(p3, 1) == "(()())");
  CHECK(canonical_code(p3, 0) == "((()))");
  auto star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(canonical_code(star, 0) == "(()()())");
  auto spider = Graph::from_edges(7, testutil::spider_edges());
  CHECK(canonical_code(spider, 0) == kSpiderCode);
}

TEST_CASE("codes are invariant under relabeling") {
  SplitMix64 rng(Seed{2718, 0});
  for (int trial = 0; trial < 800; ++trial) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.next_below(9));
    auto edges = testutil::random_tree_edges(n, rng);
    auto g = Graph::from_edges(n, edges);
    // Fisher-Yates relabeling
    std::vector<std::uint32_t> pi(n);
    for (std::uint32_t i = 0; i < n; ++i) pi[i] = i;
    for (std::uint32_t i = n; i > 1; --i)
      std::swap(pi[i - 1], pi[rng.next_below(i)]);
    std::vector<E> relabeled;
    for (auto [u, v] : edges)
      relabeled.push_back({std::min(pi[u], pi[v]), std::max(pi[u], pi[v])});
    auto h = Graph::from_edges(n, relabeled);
    std::uint32_t root = static_cast<std::uint32_t>(rng.next_below(n));
    CHECK(canonical_code(g, root) == canonical_code(h, pi[root]));
  }
}

TEST_CASE("code parsing round trip and structure") {
  auto t = tree_from_code(kSpiderCode);
  CHECK(t.code == kSpiderCode);
  CHECK(t.size() == 7);
  CHECK(t.depth == 2);
  CHECK(t.parent == std::vector<std::uint32_t>{0, 0, 1, 0, 3, 0, 5});
  CHECK(t.level_sizes == std::vector<std::uint32_t>{1, 3, 3});
  CHECK(t.degrees == std::vector<std::uint32_t>{3, 2, 1, 2, 1, 2, 1});
  CHECK(t.aut == 6);
  CHECK(t.log_aut == Approx(std::log(6.0)).epsilon(1e-12));

  // non-canonical input is accepted and renormalized
  CHECK(tree_from_code("(()(()))").code == "((())())");
  CHECK(tree_from_code("((())())").code == "((())())");

  CHECK_THROWS_AS(tree_from_code(""), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_code("(()"), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_code("())("), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_code("()()"), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_code("(x)"), std::invalid_argument);
}

TEST_CASE("automorphism counts match brute force") {
  CHECK(tree_from_code("((()))").aut == 1);
  CHECK(tree_from_code("(()()())").aut == 6);
  SplitMix64 rng(Seed{1414, 0});
  for (int trial = 0; trial < 120; ++trial) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.next_below(6));
    auto edges = testutil::random_tree_edges(n, rng);
    auto g = Graph::from_edges(n, edges);
    auto t = tree_from_code(canonical_code(g, 0));
    CHECK(aut_rooted(t) == t.aut);
    CHECK(t.aut == aut_brute(g, 0));
  }
}

TEST_CASE("depth-1 family under a level cap") {
  auto he = enumerate_with_caps({3}, 1u << 20);
  REQUIRE(he.trees.size() == 4);
  CHECK(he.trees[0].code == "()");
  CHECK(he.trees[1].code == "(())");
  CHECK(he.trees[2].code == "(()())");
  CHECK(he.trees[3].code == "(()()())");
  CHECK(he.k1 == 1);
  CHECK_FALSE(he.truncated);
  CHECK(he.vertices_enumerated == 1 + 2 + 3 + 4);
}

TEST_CASE("enumeration matches brute force under explicit caps") {
  std::vector<std::uint64_t> caps = {2, 4};
  auto he = enumerate_with_caps(caps, 1u << 20);
  std::set<std::string> got;
  for (const auto& t : he.trees) {
    CHECK(t.depth <= 2);
    REQUIRE(t.level_sizes.size() <= 3);
    for (std::size_t d = 1; d < t.level_sizes.size(); ++d)
      CHECK(t.level_sizes[d] <= caps[d - 1]);
    got.insert(t.code);
  }
  CHECK(got.size() == he.trees.size());

  std::set<std::string> expect;
  for (std::uint32_t n = 1; n <= 7; ++n)
    for (const auto& code : testutil::rooted_codes_brute(n)) {
      auto t = tree_from_code(code);
      bool ok = t.depth <= 2;
      for (std::size_t d = 1; ok && d < t.level_sizes.size(); ++d)
        ok = t.level_sizes[d] <= caps[d - 1];
      if (ok) expect.insert(code);
    }
  CHECK(got == expect);

  // stream is ordered by size, then lexicographically within a size class
  for (std::size_t i = 1; i < he.trees.size(); ++i) {
    const auto &a = he.trees[i - 1], &b = he.trees[i];
    CHECK((a.size() < b.size() ||
           (a.size() == b.size() && a.code < b.code)));
  }
}

TEST_CASE("rooted shape counts by brute force") {
  // all rooted trees per size, then the depth-2 fan-out-2 subfamily
  std::uint64_t rooted_counts[10] = {0, 1, 1, 2, 4, 9, 20, 48, 115, 286};
  for (std::uint32_t n = 1; n <= 8; ++n)
    CHECK(testutil::rooted_codes_brute(n).size() == rooted_counts[n]);

  std::uint64_t narrow = 0;
  for (std::uint32_t n = 1; n <= 7; ++n)
    for (const auto& code : testutil::rooted_codes_brute(n)) {
      auto t = tree_from_code(code);
      if (t.depth > 2) continue;
      std::vector<std::uint32_t> kids(t.size(), 0);
      for (std::size_t v = 1; v < t.size(); ++v) ++kids[t.parent[v]];
      bool ok = true;
      for (auto k : kids) ok &= k <= 2;
      if (ok) ++narrow;
    }
  CHECK(narrow == 10);
}

TEST_CASE("vertex budget truncates the stream between size classes") {
  // depth <= 2 class sizes are the partition numbers 1,1,2,3,5,7,11 with
  // 1+2+6+12+25+42+77 = 165 vertices through size seven
  auto full = enumerate_with_caps({6, 25}, 165);
  CHECK(full.vertices_enumerated == 165);
  CHECK(full.trees.size() == 30);
  CHECK(full.truncated);  // size-8 shapes exist beyond the budget
  CHECK(full.cutoff_size_class == 8);

  auto cut = enumerate_with_caps({6, 25}, 164);
  CHECK(cut.truncated);
  CHECK(cut.cutoff_size_class == 7);
  CHECK(cut.vertices_enumerated == 165 - 7);
  CHECK(cut.trees.size() == 29);

  auto zero = enumerate_with_caps({6, 25}, 0);
  CHECK(zero.trees.empty());
  CHECK(zero.truncated);
  CHECK(zero.cutoff_size_class == 1);
}

TEST_CASE("family stream for the localization parameters") {
  auto he = enumerate_h_eps(40, 0.3, 50);
  CHECK(he.k1 == 4);
  REQUIRE(he.caps.size() == 4);
  CHECK(he.caps[0] == 1600);  // floor(3 * 40 * 4 / 0.3)
  CHECK(he.trees_evaluated == 13);
  CHECK(he.trees.size() == 13);
  CHECK(he.vertices_enumerated == 50);
  CHECK(he.truncated);
  CHECK(he.cutoff_size_class == 5);
  for (std::size_t i = 0; i < 8; ++i) CHECK(he.trees[i].size() <= 4);
  for (std::size_t i = 8; i < 13; ++i) CHECK(he.trees[i].size() == 5);

  CHECK(enumerate_h_eps(40, 0.01, 10).k1 == 6);
  CHECK(enumerate_h_eps(40, 0.01, 10).caps[0] == 72000);
}

TEST_CASE("caps scaling within one depth leaves the stream alone") {
  // both grids keep k1 = 2 at c = 60; the caps differ by a factor of ten
  // but never bind at these sizes, so the streams coincide
  auto a = enumerate_h_eps(60, 0.3, 285);
  auto b = enumerate_h_eps(60, 0.03, 285);
  CHECK(a.k1 == 2);
  CHECK(b.k1 == 2);
  REQUIRE(a.trees.size() == b.trees.size());
  for (std::size_t i = 0; i < a.trees.size(); ++i)
    CHECK(a.trees[i].code == b.trees[i].code);
}

TEST_CASE("degree-completion gadget") {
  auto lone = build_gv(tree_from_code("()"), 0);
  CHECK(lone.vertex_count() == 7);
  CHECK(lone.edge_count() == 12);
  CHECK(lone.degree(0) == 3);

  auto pair = build_gv(tree_from_code("(())"), 1);
  CHECK(pair.vertex_count() == 8);
  CHECK(pair.edge_count() == 13);
  CHECK(pair.degree(0) == 1);
  CHECK(pair.degree(1) == 4);

  auto whole = build_gv(tree_from_code("(())"), 1, true);
  CHECK(whole.edge_count() == 16);
  CHECK(whole.degree(0) == 4);
}

TEST_CASE("root fate across the gadget pipeline") {
  // no frontier: the dangling root is peeled before stripping
  auto lonely = f_root(tree_from_code("(())"), 2);
  CHECK(lonely.fate == RootFate::NotInCore);
  CHECK(lonely.value == 0);

  // a root wired straight into the anchor block survives in v1
  auto anchored = f_root(tree_from_code("()"), 0);
  CHECK(anchored.fate == RootFate::InV1);
  CHECK(anchored.value == 0);

  // two depth-1 children: stripped, fully packable, value 0
  auto packed = f_root(tree_from_code("(()())"), 1);
  CHECK(packed.fate == RootFate::TreeComponent);
  CHECK(packed.value == 0);

  // the obstruction spider scores 1 uncovered out of 4 interior
  auto spider = f_root(tree_from_code(kSpiderCode), 2);
  CHECK(spider.fate == RootFate::TreeComponent);
  CHECK(spider.value == Approx(0.25).epsilon(1e-15));

  auto spider4 = f_root(tree_from_code("((())(())(())(()))"), 2);
  CHECK(spider4.fate == RootFate::TreeComponent);
  CHECK(spider4.value == Approx(0.4).epsilon(1e-15));

  // depth-1 shapes can never leave the root uncovered
  for (const auto& t : enumerate_with_caps({6}, 1u << 20).trees) {
    auto f = f_root(t, 1);
    CHECK(f.value == 0);
  }

  // whole-ball attachment keeps the value in range
  auto wb = f_root(tree_from_code(kSpiderCode), 2, true);
  CHECK(wb.value >= 0);
  CHECK(wb.value <= 1);
}

TEST_CASE("truncated series pins to the lone contributing shape") {
  auto cp = core_fractions(60);
  double N = 1e5 * cp.vertex_fraction;
  double M = 1e5 * cp.edge_fraction;
  auto res = f_eps(60, 0.3, 285, N, M);
  CHECK(res.k1 == 2);
  CHECK(res.trees_evaluated == 45);
  CHECK(res.vertices_enumerated == 285);
  CHECK(res.truncated);
  CHECK(res.cutoff_size_class == 9);
  CHECK(res.ratio == Approx(2 * M / N).epsilon(1e-15));
  CHECK(res.lambda == Approx(solve_lambda(2 * M / N).lambda).epsilon(1e-12));
  // exactly the 7-vertex spider and its pendant-leaf extension contribute
  CHECK(res.trees_contributing == 2);
  double want_exp = 0.25 * (rho_tree(7, 6, N, M, res.lambda, RhoVariant::ExpKLambda) +
                            rho_tree(8, 6, N, M, res.lambda, RhoVariant::ExpKLambda));
  double want_f2 = 0.25 * (rho_tree(7, 6, N, M, res.lambda, RhoVariant::F2KLambda) +
                           rho_tree(8, 6, N, M, res.lambda, RhoVariant::F2KLambda));
  CHECK(res.value_exp == Approx(want_exp).epsilon(1e-10));
  CHECK(res.value_f2 == Approx(want_f2).epsilon(1e-10));
  // at this ratio the two exponential variants coincide in doubles
  CHECK(res.value_f2 <= res.value_exp);
  CHECK(res.rho_mass_exp > res.value_exp);

  // a tighter epsilon at the same depth reproduces the same truncated sum
  auto tighter = f_eps(60, 0.12, 285, N, M);
  CHECK(tighter.k1 == 2);
  CHECK(tighter.value_exp == Approx(res.value_exp).epsilon(1e-13));
  CHECK(tighter.value_exp >= res.value_exp - 1e-13);

  auto zero = f_eps(60, 0.3, 0, N, M);
  CHECK(zero.value_exp == 0);
  CHECK(zero.truncated);

  CHECK_THROWS_AS(f_eps(60, 0.3, 10, 0, M), std::invalid_argument);
}

TEST_CASE("truncated series at the printed working point") {
  auto cp = core_fractions(40);
  double N = 1e5 * cp.vertex_fraction;
  double M = 1e5 * cp.edge_fraction;
  auto res = f_eps(40, 0.3, 50, N, M);
  CHECK(res.k1 == 4);
  CHECK(res.trees_evaluated == 13);
  CHECK(res.truncated);
  // every shape this small dies before its ball reaches the frontier
  CHECK(res.trees_contributing == 0);
  CHECK(res.value_exp == 0);
  CHECK(res.rho_mass_exp > 0);
}

TEST_CASE("ball census over vertices") {
  auto c6 = testutil::cycle_graph(6);
  auto r1 = neighborhood_census(c6, 1, 64);
  CHECK(r1.total == 6);
  CHECK(r1.non_tree_balls == 0);
  REQUIRE(r1.counts.count("(()())"));
  CHECK(r1.counts.at("(()())") == 6);

  auto r2 = neighborhood_census(c6, 2, 64);
  CHECK(r2.counts.at("((())(()))") == 6);

  // radius three closes the cycle, so no ball is a tree
  auto r3 = neighborhood_census(c6, 3, 64);
  CHECK(r3.non_tree_balls == 6);
  CHECK(r3.counts.empty());

  auto k4 = neighborhood_census(testutil::complete_graph(4), 1, 64);
  CHECK(k4.non_tree_balls == 4);

  auto capped = neighborhood_census(c6, 2, 4);
  CHECK(capped.oversized == 6);
  CHECK(capped.total == 6);
}
