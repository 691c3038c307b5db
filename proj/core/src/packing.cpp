#include "cyclelab/packing.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclelab {

namespace {

constexpr std::uint32_t kInf = 0xffffffffu;

// DP value: uncovered count, the uncovered set for tie-breaking, and the
// path count so equal-cost equal-set solutions prefer longer pieces over
// needless length-0 splits.
struct Val {
  std::uint32_t cost = kInf;
  std::vector<std::uint64_t> bits;
  std::uint32_t paths = 0;
  bool feasible() const { return cost != kInf; }
};

// -1 if a wins, +1 if b wins, 0 equal. Lower cost first; at equal cost the
// set holding the smallest differing id is preferred (only equal-size sets
// ever tie on cost, so this orders sorted id lists lexicographically); at
// equal sets, fewer paths. All three keys add across disjoint subtrees, so
// per-child minima compose.
int cmp(const Val& a, const Val& b) {
  if (a.cost != b.cost) return a.cost < b.cost ? -1 : 1;
  for (std::size_t w = 0; w < a.bits.size(); ++w) {
    if (a.bits[w] == b.bits[w]) continue;
    std::uint64_t x = a.bits[w] ^ b.bits[w];
    std::uint64_t low = x & (~x + 1);
    return (a.bits[w] & low) ? -1 : 1;
  }
  if (a.paths != b.paths) return a.paths < b.paths ? -1 : 1;
  return 0;
}

enum class Kind : std::uint8_t { None, Sum, Len0, Term, Merge, Start, Pass };

struct Choice {
  Kind kind = Kind::None;
  std::uint32_t a = 0, b = 0;  // child local ids where applicable
};

struct Solver {
  const TreeComponent& t;
  std::size_t n, words;
  std::vector<std::uint32_t> ids;              // local -> parent, sorted
  std::vector<std::vector<std::uint32_t>> adj;  // local
  std::vector<std::uint8_t> bnd;
  std::vector<std::uint32_t> parent, order;
  std::vector<std::vector<std::uint32_t>> kids;

  std::vector<Val> U, C, O, D;
  std::vector<Choice> cU, cC, cO;
  std::vector<std::uint8_t> d_pick;  // 0 = U, 1 = C

  explicit Solver(const TreeComponent& tc) : t(tc) {
    ids = t.vertices;
    n = ids.size();
    words = (n + 63) / 64;
    auto local = [&](std::uint32_t p) {
      auto it = std::lower_bound(ids.begin(), ids.end(), p);
      if (it == ids.end() || *it != p)
        throw std::invalid_argument("phi_tree: edge or boundary id outside the tree");
      return static_cast<std::uint32_t>(it - ids.begin());
    };
    adj.assign(n, {});
    for (auto [u, v] : t.edges) {
      std::uint32_t a = local(u), b = local(v);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    bnd.assign(n, 0);
    for (std::uint32_t b : t.boundary) bnd[local(b)] = 1;

    parent.assign(n, kInf);
    order.reserve(n);
    order.push_back(0);
    parent[0] = 0;
    for (std::size_t h = 0; h < order.size(); ++h) {
      std::uint32_t v = order[h];
      for (std::uint32_t w : adj[v])
        if (parent[w] == kInf && w != 0) {
          parent[w] = v;
          order.push_back(w);
        }
    }
    if (order.size() != n || t.edges.size() + 1 != n)
      throw std::invalid_argument("phi_tree: input is not a connected tree");
    kids.assign(n, {});
    for (std::uint32_t v : order)
      if (v != 0) kids[parent[v]].push_back(v);
  }

  Val make(std::uint32_t cost) const {
    return Val{cost, std::vector<std::uint64_t>(words, 0), 0};
  }

  static void merge_into(Val& dst, const Val& src) {
    dst.cost += src.cost;
    dst.paths += src.paths;
    for (std::size_t w = 0; w < dst.bits.size(); ++w) dst.bits[w] |= src.bits[w];
  }
  static void take_min(Val& best, Choice& bc, Val&& cand, Choice cc) {
    if (!cand.feasible()) return;
    if (!best.feasible() || cmp(cand, best) < 0) {
      best = std::move(cand);
      bc = cc;
    }
  }

  void run() {
    U.assign(n, {});
    C.assign(n, {});
    O.assign(n, {});
    D.assign(n, {});
    cU.assign(n, {});
    cC.assign(n, {});
    cO.assign(n, {});
    d_pick.assign(n, 0);

    for (std::size_t idx = n; idx-- > 0;) {
      std::uint32_t v = order[idx];
      const auto& ch = kids[v];
      const std::size_t k = ch.size();

      // prefix/suffix over children's resolved-subtree values
      std::vector<Val> pre(k + 1), suf(k + 1);
      pre[0] = make(0);
      for (std::size_t i = 0; i < k; ++i) {
        pre[i + 1] = pre[i];
        merge_into(pre[i + 1], D[ch[i]]);
      }
      suf[k] = make(0);
      for (std::size_t i = k; i-- > 0;) {
        suf[i] = suf[i + 1];
        merge_into(suf[i], D[ch[i]]);
      }
      const Val& sumD = pre[k];

      // v stays uncovered; no dangling path may stop dead below it
      U[v] = sumD;
      U[v].cost += 1;
      U[v].bits[v >> 6] |= 1ULL << (v & 63);
      cU[v] = {Kind::Sum, 0, 0};

      auto except_one = [&](std::size_t i, const Val& open) {
        Val out = pre[i];
        merge_into(out, open);
        merge_into(out, suf[i + 1]);
        return out;
      };

      if (bnd[v]) {
        Val start(sumD);
        ++start.paths;  // a new path begins (and may end) at v
        take_min(C[v], cC[v], Val(start), {Kind::Len0, 0, 0});
        take_min(O[v], cO[v], std::move(start), {Kind::Start, 0, 0});
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (!O[ch[i]].feasible()) continue;
        take_min(O[v], cO[v], except_one(i, O[ch[i]]), {Kind::Pass, ch[i], 0});
        if (bnd[v])
          take_min(C[v], cC[v], except_one(i, O[ch[i]]), {Kind::Term, ch[i], 0});
      }
      // a path bending at v: two dangling arms complete each other
      for (std::size_t i = 0; i < k; ++i) {
        if (!O[ch[i]].feasible()) continue;
        Val mid = make(0);  // resolved children strictly between i and j
        for (std::size_t j = i + 1; j < k; ++j) {
          if (O[ch[j]].feasible()) {
            Val cand = pre[i];
            merge_into(cand, O[ch[i]]);
            merge_into(cand, mid);
            merge_into(cand, O[ch[j]]);
            merge_into(cand, suf[j + 1]);
            --cand.paths;  // the two dangling arms fuse into one path
            take_min(C[v], cC[v], std::move(cand), {Kind::Merge, ch[i], ch[j]});
          }
          merge_into(mid, D[ch[j]]);
        }
      }

      if (C[v].feasible() && cmp(C[v], U[v]) < 0) {
        D[v] = C[v];
        d_pick[v] = 1;
      } else {
        D[v] = U[v];
        d_pick[v] = 0;
      }
    }
  }

  PackingResult reconstruct() const {
    PackingResult res;
    std::uint8_t root_state = d_pick[0];
    res.phi = root_state ? C[0].cost : U[0].cost;

    // (vertex, 0=uncovered-root / 1=closed-root) tasks; chains walked inline
    std::vector<std::pair<std::uint32_t, std::uint8_t>> tasks{{0, root_state}};
    std::vector<std::uint32_t> chain_a, chain_b;
    auto push_kids = [&](std::uint32_t v, std::uint32_t skip1, std::uint32_t skip2) {
      for (std::uint32_t c : kids[v])
        if (c != skip1 && c != skip2) tasks.push_back({c, d_pick[c]});
    };
    auto walk_chain = [&](std::uint32_t x, std::vector<std::uint32_t>& out) {
      out.clear();
      for (;;) {
        out.push_back(ids[x]);
        const Choice& oc = cO[x];
        push_kids(x, oc.kind == Kind::Pass ? oc.a : kInf, kInf);
        if (oc.kind == Kind::Start) break;
        x = oc.a;
      }
    };

    while (!tasks.empty()) {
      auto [v, st] = tasks.back();
      tasks.pop_back();
      if (st == 0) {
        res.uncovered.push_back(ids[v]);
        push_kids(v, kInf, kInf);
        continue;
      }
      const Choice& c = cC[v];
      switch (c.kind) {
        case Kind::Len0:
          res.paths.push_back({ids[v]});
          push_kids(v, kInf, kInf);
          break;
        case Kind::Term: {
          walk_chain(c.a, chain_a);
          std::vector<std::uint32_t> path{ids[v]};
          path.insert(path.end(), chain_a.begin(), chain_a.end());
          res.paths.push_back(std::move(path));
          push_kids(v, c.a, kInf);
          break;
        }
        case Kind::Merge: {
          walk_chain(c.a, chain_a);
          walk_chain(c.b, chain_b);
          std::vector<std::uint32_t> path(chain_a.rbegin(), chain_a.rend());
          path.push_back(ids[v]);
          path.insert(path.end(), chain_b.begin(), chain_b.end());
          res.paths.push_back(std::move(path));
          push_kids(v, c.a, c.b);
          break;
        }
        default:
          throw std::logic_error("phi_tree: reconstruction hit an invalid state");
      }
    }

    for (auto& p : res.paths)
      if (p.front() > p.back()) std::reverse(p.begin(), p.end());
    std::sort(res.paths.begin(), res.paths.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::sort(res.uncovered.begin(), res.uncovered.end());
    return res;
  }
};

}  // namespace

PackingResult phi_tree(const TreeComponent& t) {
  if (t.vertices.empty()) throw std::invalid_argument("phi_tree: empty tree");
  Solver s(t);
  s.run();
  return s.reconstruct();
}

void validate_packing(const TreeComponent& t, const PackingResult& p) {
  auto fail = [](const std::string& m) { throw std::logic_error("packing invariant: " + m); };
  std::vector<std::uint32_t> ids = t.vertices;
  auto local = [&](std::uint32_t v) {
    auto it = std::lower_bound(ids.begin(), ids.end(), v);
    if (it == ids.end() || *it != v) return kInf;
    return static_cast<std::uint32_t>(it - ids.begin());
  };
  std::vector<std::vector<std::uint32_t>> adj(ids.size());
  for (auto [u, w] : t.edges) {
    adj[local(u)].push_back(local(w));
    adj[local(w)].push_back(local(u));
  }
  std::vector<std::uint8_t> bnd(ids.size(), 0), covered(ids.size(), 0);
  for (std::uint32_t b : t.boundary) bnd[local(b)] = 1;

  std::size_t covered_total = 0;
  for (const auto& path : p.paths) {
    if (path.empty()) fail("empty path");
    for (std::size_t i = 0; i < path.size(); ++i) {
      std::uint32_t lv = local(path[i]);
      if (lv == kInf) fail("path leaves the tree");
      if (covered[lv]) fail("vertex covered twice");
      covered[lv] = 1;
      ++covered_total;
      if (i > 0) {
        std::uint32_t lu = local(path[i - 1]);
        if (std::find(adj[lu].begin(), adj[lu].end(), lv) == adj[lu].end())
          fail("consecutive path vertices not adjacent");
      }
    }
    if (!bnd[local(path.front())] || !bnd[local(path.back())])
      fail("path endpoint not on the boundary");
  }
  if (covered_total + p.phi != ids.size()) fail("covered + phi != |V|");
  if (p.uncovered.size() != p.phi) fail("uncovered list size != phi");
  for (std::uint32_t v : p.uncovered) {
    std::uint32_t lv = local(v);
    if (lv == kInf || covered[lv]) fail("uncovered list wrong");
  }
}

GammaStar assemble_gamma_star(const Graph& c2, const StripResult& strip,
                              const Classified& cl,
                              const std::vector<PackingResult>& packings) {
  if (packings.size() != cl.trees.size())
    throw std::invalid_argument("assemble_gamma_star: one packing per tree required");
  const std::size_t n = c2.vertex_count();

  GammaStar gs;
  gs.v2_star = VertexSet(n);
  std::vector<std::uint8_t> interior(n, 0);
  for (const auto& p : packings)
    for (const auto& path : p.paths) {
      if (path.size() >= 2 &&
          (!strip.v2.contains(path.front()) || !strip.v2.contains(path.back())))
        throw std::invalid_argument("assemble_gamma_star: path endpoint outside V2");
      for (std::size_t i = 1; i + 1 < path.size(); ++i) interior[path[i]] = 1;
    }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (interior[v]) gs.i_star.push_back(v);
    if (strip.v2.contains(v) && !interior[v]) gs.v2_star.insert(v);
  }

  std::vector<std::uint32_t> to_local(n, kInf);
  for (std::uint32_t v = 0; v < n; ++v)
    if (strip.v1.contains(v) || gs.v2_star.contains(v)) {
      to_local[v] = static_cast<std::uint32_t>(gs.to_parent.size());
      gs.to_parent.push_back(v);
    }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (auto [u, w] : c2.edges()) {
    bool u1 = strip.v1.contains(u), w1 = strip.v1.contains(w);
    if ((u1 && w1) || (u1 && gs.v2_star.contains(w)) || (w1 && gs.v2_star.contains(u)))
      edges.emplace_back(to_local[u], to_local[w]);
  }
  for (const auto& p : packings)
    for (const auto& path : p.paths)
      if (path.size() >= 2) {
        std::uint32_t a = to_local[path.front()], b = to_local[path.back()];
        edges.emplace_back(a, b);
        gs.m_star.emplace_back(a, b);
      }
  gs.graph = Graph::from_edges(gs.to_parent.size(), std::move(edges));
  return gs;
}

}  // namespace cyclelab
