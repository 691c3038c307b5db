#include "cyclelab/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "cyclelab/analytic.hpp"

namespace cyclelab {

Graph sample_gnp(std::size_t n, double c, Seed seed) {
  if (n == 0) return Graph::from_edges(0, {});
  if (c < 0) throw std::invalid_argument("sample_gnp: c < 0");
  const double p = std::min(1.0, c / static_cast<double>(n));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  if (p >= 1.0) {
    for (std::uint32_t u = 0; u + 1 < n; ++u)
      for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, std::move(edges));
  }
  if (p > 0.0) {
    edges.reserve(static_cast<std::size_t>(1.1 * p * 0.5 * n * (n - 1)) + 16);
    SplitMix64 rng(seed);
    const double denom = std::log1p(-p);
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t idx = 0;
    std::uint32_t row = 0;
    std::uint64_t row_end = n - 1;  // slots for row 0: pairs (0,1..n-1)
    bool first = true;
    while (true) {
      double u = 1.0 - rng.next_unit();  // (0, 1]
      double jump = std::floor(std::log(u) / denom);
      std::uint64_t skip = jump >= static_cast<double>(total)
                               ? total
                               : static_cast<std::uint64_t>(jump);
      idx += first ? skip : skip + 1;
      first = false;
      if (idx >= total) break;
      while (idx >= row_end) {
        ++row;
        row_end += n - 1 - row;
      }
      std::uint64_t col_base = row_end - (n - 1 - row);
      auto v = static_cast<std::uint32_t>(row + 1 + (idx - col_base));
      edges.emplace_back(row, v);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

namespace {

// Poisson(lambda | t >= 2) by CDF inversion from t = 2 upward
struct TruncPoissonSampler {
  double lambda;
  double p2;  // pmf at 2
  explicit TruncPoissonSampler(const TruncPoisson& tp)
      : lambda(tp.lambda), p2(tp.pmf(2)) {}
  std::uint32_t draw(SplitMix64& rng) const {
    double u = rng.next_unit();
    double prob = p2, acc = p2;
    std::uint32_t t = 2;
    // acc converges to 1; the cap only guards degenerate rounding
    const std::uint32_t cap = 2 + 500 + static_cast<std::uint32_t>(20.0 * lambda);
    while (u > acc && t < cap) {
      ++t;
      prob *= lambda / t;
      acc += prob;
      if (prob == 0.0) break;
    }
    return t;
  }
  double pmf(std::uint32_t t) const {
    double prob = p2;
    for (std::uint32_t i = 3; i <= t; ++i) prob *= lambda / i;
    return t < 2 ? 0.0 : prob;
  }
  double pmf_max() const {
    auto mode = static_cast<std::uint32_t>(std::max(2.0, std::floor(lambda)));
    return std::max(pmf(mode), pmf(mode + 1));
  }
};

DegreeSequence degrees_min2_impl(std::size_t N, std::size_t M, SplitMix64& rng,
                                 const SamplerBudgets& budgets) {
  if (M < N) throw std::invalid_argument("sample_degrees_min2: needs M >= N");
  if (N == 0) throw std::invalid_argument("sample_degrees_min2: N == 0");
  DegreeSequence out;
  if (M == N) {  // sum 2N with every entry >= 2 forces all twos
    out.degrees.assign(N, 2);
    out.attempts = 1;
    return out;
  }
  const double ratio = 2.0 * static_cast<double>(M) / static_cast<double>(N);
  const TruncPoisson tp = solve_lambda(ratio);
  const TruncPoissonSampler sampler(tp);
  const std::uint64_t target = 2 * static_cast<std::uint64_t>(M);
  out.degrees.resize(N);

  if (!budgets.deficit_resample) {
    for (std::uint64_t attempt = 1; attempt <= budgets.degree_retries; ++attempt) {
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < N; ++i) {
        out.degrees[i] = sampler.draw(rng);
        sum += out.degrees[i];
      }
      if (sum == target) {
        out.attempts = attempt;
        return out;
      }
    }
    throw RetryExceeded("sample_degrees_min2: degree budget exhausted",
                        budgets.degree_retries);
  }

  const double envelope = sampler.pmf_max();
  for (std::uint64_t attempt = 1; attempt <= budgets.degree_retries; ++attempt) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i + 1 < N; ++i) {
      out.degrees[i] = sampler.draw(rng);
      sum += out.degrees[i];
    }
    if (sum + 2 > target) continue;
    std::uint64_t deficit = target - sum;
    if (deficit > UINT32_MAX) continue;
    auto d = static_cast<std::uint32_t>(deficit);
    // accept the forced last coordinate in proportion to its pmf, which makes
    // the joint law exactly the conditioned product measure
    if (rng.next_unit() * envelope < sampler.pmf(d)) {
      out.degrees[N - 1] = d;
      out.attempts = attempt;
      return out;
    }
  }
  throw RetryExceeded("sample_degrees_min2: degree budget exhausted",
                      budgets.degree_retries);
}

MultiGraphPairing pairing_impl(const std::vector<std::uint32_t>& degrees,
                               SplitMix64& rng) {
  std::uint64_t total = 0;
  for (std::uint32_t d : degrees) total += d;
  if (total % 2 != 0)
    throw std::invalid_argument("pair_configuration: odd degree sum");
  std::vector<std::uint32_t> point_vertex(total);
  {
    std::size_t p = 0;
    for (std::uint32_t v = 0; v < degrees.size(); ++v)
      for (std::uint32_t i = 0; i < degrees[v]; ++i) point_vertex[p++] = v;
  }
  // Fisher-Yates, then pair consecutive points: uniform over matchings
  std::vector<std::uint32_t> pts(total);
  for (std::uint64_t i = 0; i < total; ++i) pts[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t i = total; i > 1; --i) {
    std::uint64_t j = rng.next_below(i);
    std::swap(pts[i - 1], pts[j]);
  }
  MultiGraphPairing out;
  out.point_pairs.reserve(total / 2);
  out.vertex_pairs.reserve(total / 2);
  for (std::uint64_t i = 0; i < total; i += 2) {
    out.point_pairs.emplace_back(pts[i], pts[i + 1]);
    std::uint32_t a = point_vertex[pts[i]], b = point_vertex[pts[i + 1]];
    if (a > b) std::swap(a, b);
    out.vertex_pairs.emplace_back(a, b);
    if (a == b) ++out.loops;
  }
  auto sorted = out.vertex_pairs;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && sorted[i].first != sorted[i].second)
      ++out.multi_edges;
  return out;
}

}  // namespace

DegreeSequence sample_degrees_min2(std::size_t N, std::size_t M, Seed seed,
                                   const SamplerBudgets& budgets) {
  SplitMix64 rng(seed);
  return degrees_min2_impl(N, M, rng, budgets);
}

MultiGraphPairing pair_configuration(const std::vector<std::uint32_t>& degrees,
                                     Seed seed) {
  SplitMix64 rng(seed);
  return pairing_impl(degrees, rng);
}

Gnm2Result sample_gnm_min2(std::size_t N, std::size_t M, Seed seed,
                           const SamplerBudgets& budgets) {
  SplitMix64 rng(seed);  // one stream drives degrees and pairings alike
  Gnm2Result out;
  for (std::uint64_t attempt = 1; attempt <= budgets.pairing_retries; ++attempt) {
    DegreeSequence ds = degrees_min2_impl(N, M, rng, budgets);
    out.degree_attempts += ds.attempts;
    MultiGraphPairing mp = pairing_impl(ds.degrees, rng);
    out.loops_seen += mp.loops;
    out.multis_seen += mp.multi_edges;
    if (mp.simple()) {
      out.pairing_attempts = attempt;
      out.degrees = std::move(ds.degrees);
      out.graph = Graph::from_edges(N, std::move(mp.vertex_pairs));
      return out;
    }
  }
  throw RetryExceeded("sample_gnm_min2: simplicity budget exhausted",
                      budgets.pairing_retries);
}

}  // namespace cyclelab
