#include "cyclelab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cyclelab {

std::vector<std::uint32_t> VertexSet::to_vector() const {
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
      out.push_back(static_cast<std::uint32_t>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

Graph Graph::from_edges(std::size_t n,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1]) throw std::invalid_argument("duplicate edge rejected");

  Graph g;
  g.n_ = n;
  g.m_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.adj_.resize(2 * edges.size());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // edges are lex-sorted with u < v, so appending all lower endpoints first
  // and higher endpoints second leaves every adjacency list sorted
  for (auto [u, v] : edges) g.adj_[cursor[v]++] = u;
  for (auto [u, v] : edges) g.adj_[cursor[u]++] = v;
  return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(m_);
  for (std::uint32_t v = 0; v < n_; ++v)
    for (std::uint32_t w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

VertexSet giant_component(const Graph& g) {
  const std::size_t n = g.vertex_count();
  VertexSet best(n);
  if (n == 0) return best;
  std::vector<std::uint32_t> comp(n, UINT32_MAX);
  std::vector<std::uint32_t> queue;
  std::uint32_t best_root = UINT32_MAX;
  std::size_t best_size = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] != UINT32_MAX) continue;
    queue.clear();
    queue.push_back(s);
    comp[s] = s;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t v = queue[head];
      for (std::uint32_t w : g.neighbors(v))
        if (comp[w] == UINT32_MAX) {
          comp[w] = s;
          queue.push_back(w);
        }
    }
    if (queue.size() > best_size) {  // first component found wins ties: min id
      best_size = queue.size();
      best_root = s;
    }
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (comp[v] == best_root) best.insert(v);
  return best;
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  Subgraph out;
  out.to_parent = keep.to_vector();
  const std::size_t k = out.to_parent.size();
  std::vector<std::uint32_t> local(g.vertex_count(), UINT32_MAX);
  for (std::uint32_t i = 0; i < k; ++i) local[out.to_parent[i]] = i;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint32_t p = out.to_parent[i];
    for (std::uint32_t w : g.neighbors(p))
      if (p < w && local[w] != UINT32_MAX) edges.emplace_back(i, local[w]);
  }
  out.graph = Graph::from_edges(k, std::move(edges));
  return out;
}

namespace {

// peel degree <= 1 inside `inside`; mutates it to the 2-core
void peel_to_two_core(const Graph& g, VertexSet& inside) {
  std::vector<std::uint32_t> deg(g.vertex_count(), 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (!inside.contains(v)) continue;
    std::uint32_t d = 0;
    for (std::uint32_t w : g.neighbors(v)) d += inside.contains(w);
    deg[v] = d;
    if (d <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    if (!inside.contains(v)) continue;
    inside.erase(v);
    for (std::uint32_t w : g.neighbors(v)) {
      if (!inside.contains(w)) continue;
      if (--deg[w] == 1) stack.push_back(w);
    }
  }
}

}  // namespace

Subgraph two_core_of_giant(const Graph& g) {
  VertexSet keep = giant_component(g);
  peel_to_two_core(g, keep);
  return induced_subgraph(g, keep);
}

Subgraph two_core_all(const Graph& g) {
  VertexSet keep(g.vertex_count());
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) keep.insert(v);
  peel_to_two_core(g, keep);
  return induced_subgraph(g, keep);
}

BfsBall bfs_ball(const Graph& g, std::uint32_t v, std::uint32_t radius) {
  if (v >= g.vertex_count()) throw std::invalid_argument("bfs_ball: root out of range");
  BfsBall out;
  VertexSet seen(g.vertex_count());
  seen.insert(v);
  std::vector<std::uint32_t> frontier{v};
  VertexSet lvl0(g.vertex_count());
  lvl0.insert(v);
  out.levels.push_back(std::move(lvl0));
  for (std::uint32_t d = 0; d < radius && !frontier.empty(); ++d) {
    std::vector<std::uint32_t> next;
    VertexSet lvl(g.vertex_count());
    for (std::uint32_t u : frontier)
      for (std::uint32_t w : g.neighbors(u))
        if (!seen.contains(w)) {
          seen.insert(w);
          lvl.insert(w);
          next.push_back(w);
        }
    if (lvl.empty()) break;
    out.levels.push_back(std::move(lvl));
    frontier = std::move(next);
  }
  out.induced = induced_subgraph(g, seen);
  return out;
}

Graph load_edge_list(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: bad header");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t u, v;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated");
    if (u >= n || v >= n) throw std::invalid_argument("edge list: endpoint out of range");
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return Graph::from_edges(n, std::move(edges));  // rejects loops/duplicates
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    for (std::uint32_t w : g.neighbors(v))
      if (v < w) out << v << ' ' << w << '\n';
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  save_edge_list(g, out);
}

}  // namespace cyclelab
