#include "cyclelab/estimator.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cyclelab/analytic.hpp"
#include "cyclelab/graph.hpp"
#include "cyclelab/oracle.hpp"
#include "cyclelab/packing.hpp"
#include "cyclelab/samplers.hpp"
#include "cyclelab/strip.hpp"

namespace cyclelab {

EstimateRecord estimate_once(std::uint64_t n, double c, Seed seed) {
  if (n < 1) throw std::invalid_argument("estimate_once: n must be >= 1");
  if (!(c > 1.0)) throw std::invalid_argument("estimate_once: c must be > 1");
  const auto t0 = std::chrono::steady_clock::now();

  EstimateRecord rec;
  rec.n = n;
  rec.c = c;
  rec.seed = seed;
  rec.corollary1_value = corollary1(c).value;

  Graph g = sample_gnp(n, c, seed);
  Subgraph core = two_core_of_giant(g);
  rec.core_size = core.graph.vertex_count();
  rec.core_edges = core.graph.edge_count();

  if (rec.core_size > 0) {
    StripResult sr = strip(core.graph);
    rec.stripped_size = sr.stripped.size();
    rec.v1_size = sr.v1.size();
    rec.v2_size = sr.v2.size();
    Classified cl = classify(core.graph, sr);
    rec.non_tree_mass = cl.non_tree_mass;
    rec.tree_count = cl.trees.size();
    for (const TreeComponent& t : cl.trees) {
      rec.sum_phi += phi_tree(t).phi;
      ++rec.tree_size_hist[t.vertices.size()];
    }
  }
  rec.l_hat_over_n =
      static_cast<double>(rec.core_size - rec.sum_phi) / static_cast<double>(n);
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rec;
}

BatchResult estimate_batch(std::uint64_t n, double c, std::uint64_t trials, Seed seed,
                           unsigned threads) {
  if (trials < 1) throw std::invalid_argument("estimate_batch: trials must be >= 1");
  BatchResult out;
  out.records.resize(trials);

  unsigned workers = threads == 0 ? 1 : threads;
  if (workers > trials) workers = static_cast<unsigned>(trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto run = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        out.records[i] = estimate_once(n, c, Seed{seed.master, i});
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  double sum = 0;
  for (const auto& r : out.records) sum += r.l_hat_over_n;
  out.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0;
    for (const auto& r : out.records) {
      double d = r.l_hat_over_n - out.mean;
      ss += d * d;
    }
    double sd = std::sqrt(ss / static_cast<double>(trials - 1));
    out.stderr_mean = sd / std::sqrt(static_cast<double>(trials));
  }
  return out;
}

ExactnessReport exactness_check_small(std::uint64_t n, double c, std::uint64_t trials,
                                      Seed seed) {
  if (n > 16)
    throw std::invalid_argument("exactness_check_small: n above the oracle bound");
  ExactnessReport rep;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Graph g = sample_gnp(n, c, Seed{seed.master, i});
    Subgraph core = two_core_of_giant(g);
    ExactnessRow row;
    row.trial = i;
    row.core_size = core.graph.vertex_count();
    if (row.core_size > 0) {
      StripResult sr = strip(core.graph);
      Classified cl = classify(core.graph, sr);
      row.non_tree_mass = cl.non_tree_mass;
      for (const TreeComponent& t : cl.trees) row.sum_phi += phi_tree(t).phi;
      row.longest_cycle = longest_cycle_exact(core.graph);
    }
    row.gap = static_cast<std::int64_t>(row.core_size - row.sum_phi) -
              static_cast<std::int64_t>(row.longest_cycle);
    if (row.gap < 0) ++rep.violations;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace cyclelab
