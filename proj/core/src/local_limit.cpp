#include "cyclelab/local_limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cyclelab/packing.hpp"
#include "cyclelab/strip.hpp"

namespace cyclelab {

namespace {

constexpr std::uint64_t kSat = 0xffffffffffffffffULL;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSat / a) return kSat;
  return a * b;
}

std::uint64_t sat_factorial(std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= m; ++i) r = sat_mul(r, i);
  return r;
}

// one subtree during enumeration; profile[j] = size of its level j
struct Sub {
  std::string code;
  std::vector<std::uint32_t> profile;
  std::uint32_t size = 1;
  std::uint32_t depth = 0;
};

// children chosen in non-decreasing code order concatenate into a canonical
// code directly
Sub combine(const std::vector<const Sub*>& chosen) {
  Sub out;
  out.code = "(";
  out.profile = {1};
  for (const Sub* s : chosen) {
    out.code += s->code;
    out.size += s->size;
    out.depth = std::max(out.depth, s->depth + 1);
    if (out.profile.size() < s->profile.size() + 1)
      out.profile.resize(s->profile.size() + 1, 0);
    for (std::size_t j = 0; j < s->profile.size(); ++j) out.profile[j + 1] += s->profile[j];
  }
  out.code += ")";
  return out;
}

}  // namespace

std::string canonical_code(const Graph& tree, std::uint32_t root) {
  const std::size_t n = tree.vertex_count();
  if (root >= n) throw std::invalid_argument("canonical_code: root out of range");
  if (tree.edge_count() + 1 != n) throw std::invalid_argument("canonical_code: not a tree");

  std::vector<std::uint32_t> parent(n, 0xffffffffu), order;
  order.reserve(n);
  order.push_back(root);
  parent[root] = root;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (std::uint32_t w : tree.neighbors(order[h]))
      if (parent[w] == 0xffffffffu && w != root) {
        parent[w] = order[h];
        order.push_back(w);
      }
  if (order.size() != n) throw std::invalid_argument("canonical_code: tree is disconnected");

  std::vector<std::string> code(n);
  std::vector<std::vector<std::string>> kid_codes(n);
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t v = order[i];
    auto& ks = kid_codes[v];
    std::sort(ks.begin(), ks.end());
    std::string& c = code[v];
    c = "(";
    for (auto& k : ks) c += k;
    c += ")";
    if (v != root) kid_codes[parent[v]].push_back(c);
  }
  return code[root];
}

RootedTree tree_from_code(const std::string& code) {
  // parse into children lists, ids in input preorder
  std::vector<std::vector<std::uint32_t>> kids;
  std::vector<std::uint32_t> stack;
  for (char ch : code) {
    if (ch == '(') {
      std::uint32_t id = static_cast<std::uint32_t>(kids.size());
      if (stack.empty() && id != 0)
        throw std::invalid_argument("tree_from_code: multiple roots");
      kids.emplace_back();
      if (!stack.empty()) kids[stack.back()].push_back(id);
      stack.push_back(id);
    } else if (ch == ')') {
      if (stack.empty()) throw std::invalid_argument("tree_from_code: unbalanced code");
      stack.pop_back();
    } else {
      throw std::invalid_argument("tree_from_code: invalid character");
    }
  }
  if (!stack.empty() || kids.empty())
    throw std::invalid_argument("tree_from_code: unbalanced code");
  const std::size_t n = kids.size();

  // canonical subtree codes bottom-up (preorder ids, reverse is children-first)
  std::vector<std::string> sub(n);
  for (std::size_t v = n; v-- > 0;) {
    std::vector<std::string> ks;
    for (std::uint32_t k : kids[v]) ks.push_back(sub[k]);
    std::sort(ks.begin(), ks.end());
    sub[v] = "(";
    for (auto& k : ks) sub[v] += k;
    sub[v] += ")";
  }

  // renumber by a preorder walk that visits children in canonical order
  std::vector<std::uint32_t> new_id(n, 0), depth(n, 0);
  std::vector<std::uint32_t> walk{0};
  std::uint32_t next = 0;
  while (!walk.empty()) {
    std::uint32_t v = walk.back();
    walk.pop_back();
    new_id[v] = next++;
    auto order = kids[v];
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return sub[a] < sub[b]; });
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      depth[*it] = depth[v] + 1;
      walk.push_back(*it);
    }
  }

  RootedTree t;
  t.code = sub[0];
  t.parent.assign(n, 0);
  t.degrees.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::uint32_t k : kids[v]) t.parent[new_id[k]] = new_id[v];
  for (std::size_t v = 0; v < n; ++v) t.depth = std::max(t.depth, depth[v]);
  t.level_sizes.assign(t.depth + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ++t.level_sizes[depth[v]];
  for (std::size_t v = 1; v < n; ++v) {
    ++t.degrees[v];
    ++t.degrees[t.parent[v]];
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::string> ks;
    for (std::uint32_t k : kids[v]) ks.push_back(sub[k]);
    std::sort(ks.begin(), ks.end());
    for (std::size_t i = 0; i < ks.size();) {
      std::size_t j = i;
      while (j < ks.size() && ks[j] == ks[i]) ++j;
      t.aut = sat_mul(t.aut, sat_factorial(j - i));
      t.log_aut += std::lgamma(static_cast<double>(j - i) + 1.0);
      i = j;
    }
  }
  return t;
}

std::uint64_t aut_rooted(const RootedTree& t) { return tree_from_code(t.code).aut; }

HEps enumerate_with_caps(const std::vector<std::uint64_t>& caps, std::uint64_t size_cap) {
  constexpr std::uint64_t kClassGuard = 2'000'000;  // trees per size class
  constexpr std::uint64_t kMemoGuard = 4'000'000;   // stored subtrees overall
  HEps out;
  out.k1 = static_cast<unsigned>(caps.size());
  out.caps = caps;

  std::uint64_t max_size = 1;
  for (std::uint64_t c : caps) max_size += std::min<std::uint64_t>(c, 1'000'000'000'000ULL);

  // memo[d][s]: all canonical subtrees of size s and depth <= d, no caps; cap
  // pruning happens only at the root where levels of siblings add up
  const unsigned kd = out.k1 == 0 ? 0 : out.k1 - 1;
  std::vector<std::vector<std::vector<Sub>>> memo(kd + 1);
  std::vector<std::size_t> built(kd + 1, 1);
  std::uint64_t memo_total = kd + 1;
  for (auto& m : memo) {
    m.assign(2, {});
    m[1].push_back(Sub{"()", {1}, 1, 0});
  }
  auto ensure_memo = [&](std::size_t smax) -> bool {
    for (unsigned d = 0; d <= kd; ++d) {
      if (memo[d].size() <= smax) memo[d].resize(smax + 1);
      for (std::size_t s = built[d] + 1; s <= smax; ++s) {
        if (d == 0) continue;  // only the leaf has depth 0
        std::vector<const Sub*> cand;
        for (std::size_t sz = 1; sz < s; ++sz)
          for (const Sub& x : memo[d - 1][sz]) cand.push_back(&x);
        std::sort(cand.begin(), cand.end(),
                  [](const Sub* a, const Sub* b) { return a->code < b->code; });
        std::vector<const Sub*> chosen;
        bool ok = true;
        auto rec = [&](auto&& self, std::size_t from, std::size_t rem) -> void {
          if (!ok) return;
          if (rem == 0) {
            if (++memo_total > kMemoGuard) {
              ok = false;
              return;
            }
            memo[d][s].push_back(combine(chosen));
            return;
          }
          for (std::size_t i = from; i < cand.size() && ok; ++i) {
            if (cand[i]->size > rem) continue;
            chosen.push_back(cand[i]);
            self(self, i, rem - cand[i]->size);
            chosen.pop_back();
          }
        };
        rec(rec, 0, s - 1);
        if (!ok) return false;
      }
      built[d] = std::max(built[d], smax);
    }
    return true;
  };

  bool stop = false;
  for (std::uint64_t k = 1; k <= max_size && !stop; ++k) {
    if (out.vertices_enumerated + k > size_cap) {
      out.truncated = true;
      out.cutoff_size_class = k;
      break;
    }
    std::vector<Sub> cls;
    if (k == 1) {
      cls.push_back(Sub{"()", {1}, 1, 0});
    } else {
      if (!ensure_memo(k - 1)) {
        out.truncated = true;
        out.cutoff_size_class = k;
        break;
      }
      std::vector<const Sub*> cand;
      for (std::size_t sz = 1; sz < k; ++sz)
        for (const Sub& x : memo[kd][sz]) cand.push_back(&x);
      std::sort(cand.begin(), cand.end(),
                [](const Sub* a, const Sub* b) { return a->code < b->code; });
      std::vector<const Sub*> chosen;
      std::vector<std::uint64_t> prof(caps.size() + 1, 0);
      prof[0] = 1;
      bool guard_hit = false;
      auto rec = [&](auto&& self, std::size_t from, std::size_t rem) -> void {
        if (guard_hit) return;
        if (rem == 0) {
          if (cls.size() >= kClassGuard) {
            guard_hit = true;
            return;
          }
          cls.push_back(combine(chosen));
          return;
        }
        for (std::size_t i = from; i < cand.size() && !guard_hit; ++i) {
          const Sub* x = cand[i];
          if (x->size > rem) continue;
          bool fits = true;
          for (std::size_t j = 0; j < x->profile.size(); ++j)
            if (prof[j + 1] + x->profile[j] > caps[j]) {
              fits = false;
              break;
            }
          if (!fits) continue;
          for (std::size_t j = 0; j < x->profile.size(); ++j) prof[j + 1] += x->profile[j];
          chosen.push_back(x);
          self(self, i, rem - x->size);
          chosen.pop_back();
          for (std::size_t j = 0; j < x->profile.size(); ++j) prof[j + 1] -= x->profile[j];
        }
      };
      rec(rec, 0, k - 1);
      if (guard_hit) {
        // an incomplete class must not leak a misleading prefix
        out.truncated = true;
        out.cutoff_size_class = k;
        break;
      }
    }
    std::sort(cls.begin(), cls.end(), [](const Sub& a, const Sub& b) { return a.code < b.code; });
    for (const Sub& s : cls) {
      if (out.vertices_enumerated + k > size_cap) {
        out.truncated = true;
        out.cutoff_size_class = k;
        stop = true;
        break;
      }
      out.trees.push_back(tree_from_code(s.code));
      out.vertices_enumerated += k;
    }
  }
  out.trees_evaluated = out.trees.size();
  return out;
}

HEps enumerate_h_eps(double c, double eps, std::uint64_t size_cap) {
  DepthChoice dc = k1_of(eps, c);
  std::vector<std::uint64_t> caps(dc.k1);
  double level = 1.0;
  for (unsigned i = 1; i <= dc.k1; ++i) {
    level *= c;
    double bound = std::floor(3.0 * level * dc.k1 / eps);
    caps[i - 1] = bound > 1e15 ? static_cast<std::uint64_t>(1e15)
                               : static_cast<std::uint64_t>(std::max(bound, 0.0));
  }
  return enumerate_with_caps(caps, size_cap);
}

Graph build_gv(const RootedTree& t, unsigned k1, bool whole_ball) {
  const std::size_t k = t.size();
  std::vector<std::uint32_t> depth(k, 0);
  for (std::size_t v = 1; v < k; ++v) depth[v] = depth[t.parent[v]] + 1;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t v = 1; v < k; ++v)
    edges.emplace_back(t.parent[v], static_cast<std::uint32_t>(v));
  const std::uint32_t a0 = static_cast<std::uint32_t>(k);
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 3; ++j) edges.emplace_back(a0 + i, a0 + 3 + j);
  for (std::size_t v = 0; v < k; ++v)
    if (whole_ball || depth[v] == k1)
      for (std::uint32_t i = 0; i < 3; ++i)
        edges.emplace_back(static_cast<std::uint32_t>(v), a0 + i);
  return Graph::from_edges(k + 6, std::move(edges));
}

FRootResult f_root(const RootedTree& t, unsigned k1, bool whole_ball) {
  FRootResult res;
  Graph g = build_gv(t, k1, whole_ball);
  Subgraph core = two_core_all(g);
  if (core.to_parent.empty() || core.to_parent[0] != 0) {
    res.fate = RootFate::NotInCore;
    return res;
  }
  StripResult sr = strip(core.graph);
  if (sr.v1.contains(0)) {
    res.fate = RootFate::InV1;
    return res;
  }
  Classified cl = classify(core.graph, sr);
  for (const TreeComponent& tc : cl.trees) {
    if (!std::binary_search(tc.vertices.begin(), tc.vertices.end(), 0u)) continue;
    std::size_t interior = tc.vertices.size() - tc.boundary.size();
    if (interior == 0)
      throw std::logic_error("f_root: stripped tree component with empty interior");
    PackingResult pr = phi_tree(tc);
    res.value = static_cast<double>(pr.phi) / static_cast<double>(interior);
    res.fate = RootFate::TreeComponent;
    return res;
  }
  res.fate = RootFate::NonTreeComponent;
  return res;
}

FEpsResult f_eps(double c, double eps, std::uint64_t size_cap, double N, double M,
                 bool whole_ball) {
  if (!(N > 0) || !(M > 0)) throw std::invalid_argument("f_eps: N and M must be positive");
  FEpsResult res;
  res.ratio = 2.0 * M / N;
  res.lambda = solve_lambda(res.ratio).lambda;

  HEps he = enumerate_h_eps(c, eps, size_cap);
  res.k1 = he.k1;
  res.trees_evaluated = he.trees_evaluated;
  res.vertices_enumerated = he.vertices_enumerated;
  res.truncated = he.truncated;
  res.cutoff_size_class = he.cutoff_size_class;

  for (const RootedTree& t : he.trees) {
    const std::uint64_t k = t.size();
    double le = rho_tree_log(k, 1.0, N, M, res.lambda, RhoVariant::ExpKLambda) - t.log_aut;
    double lf = rho_tree_log(k, 1.0, N, M, res.lambda, RhoVariant::F2KLambda) - t.log_aut;
    double we = std::exp(le), wf = std::exp(lf);
    res.rho_mass_exp += we;
    res.rho_mass_f2 += wf;
    double fr = f_root(t, he.k1, whole_ball).value;
    if (fr > 0) {
      ++res.trees_contributing;
      res.value_exp += fr * we;
      res.value_f2 += fr * wf;
    }
  }
  return res;
}

CensusResult neighborhood_census(const Graph& g, unsigned k1, std::size_t max_size) {
  CensusResult res;
  const std::size_t n = g.vertex_count();
  res.total = n;
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> dist(n, kUnset);
  std::vector<std::uint32_t> ball;

  for (std::uint32_t v = 0; v < n; ++v) {
    ball.clear();
    ball.push_back(v);
    dist[v] = 0;
    for (std::size_t h = 0; h < ball.size(); ++h) {
      std::uint32_t u = ball[h];
      if (dist[u] == k1) break;  // BFS order: everything after is as deep
      for (std::uint32_t w : g.neighbors(u))
        if (dist[w] == kUnset) {
          dist[w] = dist[u] + 1;
          ball.push_back(w);
        }
    }
    std::uint64_t edges = 0;
    for (std::uint32_t u : ball)
      for (std::uint32_t w : g.neighbors(u))
        if (u < w && dist[w] != kUnset) ++edges;

    if (edges + 1 != ball.size()) {
      ++res.non_tree_balls;
    } else if (ball.size() > max_size) {
      ++res.oversized;
    } else {
      // bottom-up codes; in a tree ball every non-root has a unique parent
      std::vector<std::uint32_t> sorted_ball = ball;
      std::sort(sorted_ball.begin(), sorted_ball.end());
      auto idx = [&](std::uint32_t x) {
        return static_cast<std::size_t>(
            std::lower_bound(sorted_ball.begin(), sorted_ball.end(), x) - sorted_ball.begin());
      };
      std::vector<std::vector<std::string>> kid_codes(ball.size());
      for (std::size_t i = ball.size(); i-- > 0;) {
        std::uint32_t u = ball[i];
        auto& ks = kid_codes[idx(u)];
        std::sort(ks.begin(), ks.end());
        std::string cc = "(";
        for (auto& s : ks) cc += s;
        cc += ")";
        if (u == v) {
          ++res.counts[cc];
        } else {
          for (std::uint32_t w : g.neighbors(u))
            if (dist[w] != kUnset && dist[w] + 1 == dist[u]) {
              kid_codes[idx(w)].push_back(std::move(cc));
              break;
            }
        }
      }
    }
    for (std::uint32_t u : ball) dist[u] = kUnset;
  }
  return res;
}

}  // namespace cyclelab
