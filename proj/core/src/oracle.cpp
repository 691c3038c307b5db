#include "cyclelab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cyclelab {

namespace {

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.vertex_count(), 0);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    for (std::uint32_t w : g.neighbors(v)) adj[v] |= 1u << w;
  return adj;
}

}  // namespace

std::uint32_t longest_cycle_exact(const Graph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > cap) throw std::invalid_argument("longest_cycle_exact: vertex cap exceeded");
  if (n < 3) return 0;
  const auto adj = adjacency_masks(g);

  std::uint32_t best = 0;
  std::vector<std::uint32_t> ends(std::size_t{1} << n);
  for (std::uint32_t s = 0; s + 2 < n; ++s) {
    // cycles whose minimum vertex is s: paths from s over vertices > s
    const std::uint32_t allowed = ~((1u << s) - 1) & ((n == 32 ? 0u : (1u << n)) - 1);
    std::fill(ends.begin(), ends.end(), 0u);
    ends[1u << s] = 1u << s;
    for (std::uint32_t mask = 1u << s; mask < (1u << n); ++mask) {
      std::uint32_t e = ends[mask];
      if (!e || (mask & ~allowed) || !(mask & (1u << s))) continue;
      if ((e & adj[s]) && std::popcount(mask) >= 3)
        best = std::max(best, static_cast<std::uint32_t>(std::popcount(mask)));
      while (e) {
        std::uint32_t v = std::countr_zero(e);
        e &= e - 1;
        std::uint32_t ext = adj[v] & allowed & ~mask;
        while (ext) {
          std::uint32_t w = std::countr_zero(ext);
          ext &= ext - 1;
          ends[mask | (1u << w)] |= 1u << w;
        }
      }
    }
  }
  return best;
}

std::uint32_t longest_cycle_dfs(const Graph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > cap) throw std::invalid_argument("longest_cycle_dfs: vertex cap exceeded");
  if (n < 3) return 0;
  const auto adj = adjacency_masks(g);
  std::uint32_t best = 0;

  // grow simple paths anchored at their minimum vertex, close when possible
  struct Frame {
    std::uint32_t v, mask;
  };
  for (std::uint32_t s = 0; s + 2 < n; ++s) {
    std::vector<Frame> stack{{s, 1u << s}};
    while (!stack.empty()) {
      auto [v, mask] = stack.back();
      stack.pop_back();
      if ((adj[v] & (1u << s)) && std::popcount(mask) >= 3)
        best = std::max(best, static_cast<std::uint32_t>(std::popcount(mask)));
      for (std::uint32_t w : g.neighbors(v))
        if (w > s && !(mask & (1u << w))) stack.push_back({w, mask | (1u << w)});
    }
  }
  return best;
}

std::uint64_t phi_exact(const TreeComponent& t, std::size_t cap) {
  const std::size_t n = t.vertices.size();
  if (n > cap) throw std::invalid_argument("phi_exact: vertex cap exceeded");
  if (n == 0) throw std::invalid_argument("phi_exact: empty tree");
  if (t.edges.size() + 1 != n) throw std::invalid_argument("phi_exact: not a tree");

  auto local = [&](std::uint32_t p) {
    auto it = std::lower_bound(t.vertices.begin(), t.vertices.end(), p);
    if (it == t.vertices.end() || *it != p)
      throw std::invalid_argument("phi_exact: id outside the tree");
    return static_cast<std::uint32_t>(it - t.vertices.begin());
  };
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto [u, v] : t.edges) {
    adj[local(u)].push_back(local(v));
    adj[local(v)].push_back(local(u));
  }
  std::vector<std::uint32_t> bnd;
  for (std::uint32_t b : t.boundary) bnd.push_back(local(b));
  std::sort(bnd.begin(), bnd.end());

  // the unique a..b tree path as a vertex mask
  auto path_mask = [&](std::uint32_t a, std::uint32_t b) {
    std::vector<std::uint32_t> par(n, 0xffffffffu), q{a};
    par[a] = a;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (std::uint32_t w : adj[q[h]])
        if (par[w] == 0xffffffffu) {
          par[w] = q[h];
          q.push_back(w);
        }
    std::uint32_t mask = 0;
    for (std::uint32_t x = b;; x = par[x]) {
      mask |= 1u << x;
      if (x == a) break;
    }
    return mask;
  };

  std::vector<std::uint32_t> pieces;
  for (std::size_t i = 0; i < bnd.size(); ++i) {
    pieces.push_back(1u << bnd[i]);
    for (std::size_t j = i + 1; j < bnd.size(); ++j)
      pieces.push_back(path_mask(bnd[i], bnd[j]));
  }

  std::vector<std::uint8_t> coverable(std::size_t{1} << n, 0);
  coverable[0] = 1;
  std::uint32_t best_cover = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!coverable[mask]) continue;
    best_cover = std::max(best_cover, static_cast<std::uint32_t>(std::popcount(mask)));
    for (std::uint32_t p : pieces)
      if (!(mask & p)) coverable[mask | p] = 1;
  }
  return n - best_cover;
}

HamiltonResult hamilton_forced(
    const Graph& g, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& forced,
    std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > cap) throw std::invalid_argument("hamilton_forced: vertex cap exceeded");
  HamiltonResult res;
  if (n < 3) return res;

  std::vector<std::uint32_t> partner(n, 0xffffffffu);
  for (auto [u, v] : forced) {
    if (u == v || u >= n || v >= n || !g.has_edge(u, v))
      throw std::invalid_argument("hamilton_forced: forced edge not in the graph");
    if (partner[u] != 0xffffffffu || partner[v] != 0xffffffffu)
      throw std::invalid_argument("hamilton_forced: forced edges must form a matching");
    partner[u] = v;
    partner[v] = u;
  }
  const auto adj = adjacency_masks(g);
  const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);

  // ends[mask] = endpoints of paths from 0 covering mask; a visit to a
  // matched vertex immediately continues across its forced edge, so every
  // state has all forced pairs inside mask traversed
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  std::uint32_t start_mask, start_v;
  if (partner[0] != 0xffffffffu) {
    start_v = partner[0];
    start_mask = 1u | (1u << start_v);
  } else {
    start_v = 0;
    start_mask = 1u;
  }
  ends[start_mask] = 1u << start_v;

  std::uint32_t final_v = 0xffffffffu;
  for (std::uint32_t mask = start_mask; mask <= full; ++mask) {
    std::uint32_t e = ends[mask];
    if (!e) continue;
    if (mask == full) {
      std::uint32_t close = e & adj[0];
      if (close) final_v = std::countr_zero(close);
      break;
    }
    while (e) {
      std::uint32_t v = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t ext = adj[v] & ~mask;
      while (ext) {
        std::uint32_t w = std::countr_zero(ext);
        ext &= ext - 1;
        std::uint32_t p = partner[w];
        if (p == 0xffffffffu) {
          ends[mask | (1u << w)] |= 1u << w;
        } else if (!(mask & (1u << p))) {
          ends[mask | (1u << w) | (1u << p)] |= 1u << p;
        }
        // a matched w whose partner is already inside the path would leave
        // its forced edge untraversable: dead state, dropped
      }
    }
  }
  if (final_v == 0xffffffffu) return res;

  // walk predecessors back to the start state
  res.found = true;
  std::vector<std::uint32_t> rev;
  std::uint32_t mask = full, v = final_v;
  while (!(mask == start_mask && v == start_v)) {
    std::uint32_t p = partner[v];
    if (p != 0xffffffffu && (mask & (1u << p))) {
      // arrived atomically: some u stepped to p, then crossed to v
      std::uint32_t prev_mask = mask & ~(1u << v) & ~(1u << p);
      std::uint32_t cand = adj[p] & ends[prev_mask] & prev_mask;
      rev.push_back(v);
      rev.push_back(p);
      mask = prev_mask;
      v = std::countr_zero(cand);
    } else {
      std::uint32_t prev_mask = mask & ~(1u << v);
      std::uint32_t cand = adj[v] & ends[prev_mask] & prev_mask;
      rev.push_back(v);
      mask = prev_mask;
      v = std::countr_zero(cand);
    }
  }
  rev.push_back(start_v);
  if (start_v != 0) rev.push_back(0);
  res.cycle.assign(rev.rbegin(), rev.rend());
  return res;
}

}  // namespace cyclelab
