#include "cyclelab/strip.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cyclelab {

namespace {

// eligibility under the two rules, given membership and outside-degree
inline bool eligible(bool in_s, std::uint32_t outside) {
  return in_s ? (outside == 1 || outside == 2) : (outside <= 2);
}

}  // namespace

StripResult strip(const Graph& core, const StripOptions& opts) {
  const std::size_t n = core.vertex_count();
  for (std::uint32_t v = 0; v < n; ++v)
    if (core.degree(v) < 2)
      throw std::invalid_argument("strip: input must have min degree >= 2");

  std::vector<std::uint8_t> in_s(n, 0);
  std::vector<std::uint32_t> outside(n);
  for (std::uint32_t v = 0; v < n; ++v) outside[v] = core.degree(v);

  std::set<std::uint32_t> pool;  // currently eligible pivots
  std::vector<std::uint8_t> pooled(n, 0);
  auto sync = [&](std::uint32_t v) {
    bool el = eligible(in_s[v], outside[v]);
    if (el && !pooled[v]) {
      pool.insert(v);
      pooled[v] = 1;
    } else if (!el && pooled[v]) {
      pool.erase(v);
      pooled[v] = 0;
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) sync(v);

  SplitMix64 rng(opts.seed);
  StripResult res;
  res.stripped = VertexSet(n);
  res.step_log.reserve(std::min<std::size_t>(n, 1024));

  std::vector<std::uint32_t> added;
  while (!pool.empty()) {
    std::uint32_t pivot;
    switch (opts.policy) {
      case OrderPolicy::MinId: pivot = *pool.begin(); break;
      case OrderPolicy::MaxId: pivot = *pool.rbegin(); break;
      default: {
        auto it = pool.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(rng.next_below(pool.size())));
        pivot = *it;
      }
    }
    added.clear();
    char rule;
    if (in_s[pivot]) {
      rule = 'a';  // absorb the 1..2 outside neighbors
      for (std::uint32_t w : core.neighbors(pivot))
        if (!in_s[w]) added.push_back(w);
    } else {
      rule = 'b';  // absorb the pivot and its outside neighbors
      added.push_back(pivot);
      for (std::uint32_t w : core.neighbors(pivot))
        if (!in_s[w]) added.push_back(w);
    }

    if (res.step_log.size() < opts.step_log_cap) {
      StripStep st;
      st.rule = rule;
      st.pivot = pivot;
      for (std::uint32_t w : added)
        if (st.added_count < 3) st.added[st.added_count++] = w;
      res.step_log.push_back(st);
    } else {
      res.step_log_truncated = true;
    }

    for (std::uint32_t w : added) {
      in_s[w] = 1;
      res.stripped.insert(w);
    }
    for (std::uint32_t w : added) {
      for (std::uint32_t x : core.neighbors(w)) {
        --outside[x];
        sync(x);
      }
      sync(w);
    }
    sync(pivot);
  }

  res.v1 = VertexSet(n);
  res.v2 = VertexSet(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!in_s[v])
      res.v1.insert(v);
    else if (outside[v] > 0)
      res.v2.insert(v);
  }

  // components of the induced graph on S, discovered in ascending id order
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (!in_s[s] || seen[s]) continue;
    queue.clear();
    queue.push_back(s);
    seen[s] = 1;
    std::uint64_t internal_deg_sum = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t v = queue[head];
      for (std::uint32_t w : core.neighbors(v)) {
        if (!in_s[w]) continue;
        ++internal_deg_sum;
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    StripComponent comp;
    comp.vertices = queue;
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.edge_count = internal_deg_sum / 2;
    comp.is_tree = comp.edge_count + 1 == comp.vertices.size();
    std::vector<std::uint32_t> v0;
    for (std::uint32_t v : comp.vertices)
      if (outside[v] == 0) v0.push_back(v);
    res.components.push_back(std::move(comp));
    res.v0_per_component.push_back(std::move(v0));
  }
  return res;
}

void validate_strip_result(const Graph& core, const StripResult& r) {
  const std::size_t n = core.vertex_count();
  auto fail = [](const std::string& msg) { throw std::logic_error("strip invariant: " + msg); };
  if (r.stripped.size() + r.v1.size() != n) fail("S and V1 do not partition the core");

  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t out = 0;
    for (std::uint32_t w : core.neighbors(v)) out += r.v1.contains(w);
    bool in_s = r.stripped.contains(v);
    if (in_s == r.v1.contains(v)) fail("membership tables disagree");
    if (in_s && r.v2.contains(v) != (out > 0)) fail("V2 mislabels a stripped vertex");
    if (!in_s && r.v2.contains(v)) fail("V2 contains a non-stripped vertex");
    if (eligible(in_s, out)) fail("a rule-a/rule-b move remains at termination");
    // every V1 or V2 vertex keeps >= 3 neighbors outside the stripped set
    if ((!in_s || out > 0) && out < 3) fail("vertex with 1..2 outside neighbors survived");
  }
  std::size_t comp_total = 0;
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& comp = r.components[i];
    comp_total += comp.vertices.size();
    std::size_t v0 = r.v0_per_component[i].size();
    for (std::uint32_t v : r.v0_per_component[i])
      if (r.v2.contains(v)) fail("interior list contains a V2 vertex");
    if (3 * v0 < comp.vertices.size()) fail("component has fewer than |K|/3 interior vertices");
  }
  if (comp_total != r.stripped.size()) fail("components do not cover S");
}

Classified classify(const Graph& core, const StripResult& r) {
  Classified out;
  for (const auto& comp : r.components) {
    if (!comp.is_tree) {
      out.non_tree_mass += comp.vertices.size();
      ++out.non_tree_components;
      continue;
    }
    TreeComponent t;
    t.vertices = comp.vertices;
    for (std::uint32_t v : comp.vertices) {
      if (r.v2.contains(v)) t.boundary.push_back(v);
      for (std::uint32_t w : core.neighbors(v))
        if (v < w && r.stripped.contains(w)) t.edges.emplace_back(v, w);
    }
    out.trees.push_back(std::move(t));
  }
  return out;
}

std::string strip_summary_json(const StripResult& r, const Classified& cl) {
  std::uint64_t tree_mass = 0;
  for (const auto& t : cl.trees) tree_mass += t.vertices.size();
  std::ostringstream os;
  os << "{\"stripped\":" << r.stripped.size() << ",\"v1\":" << r.v1.size()
     << ",\"v2\":" << r.v2.size() << ",\"components\":" << r.components.size()
     << ",\"trees\":" << cl.trees.size() << ",\"tree_mass\":" << tree_mass
     << ",\"non_tree_mass\":" << cl.non_tree_mass
     << ",\"steps\":" << r.step_log.size()
     << ",\"step_log_truncated\":" << (r.step_log_truncated ? "true" : "false") << "}";
  return os.str();
}

}  // namespace cyclelab
