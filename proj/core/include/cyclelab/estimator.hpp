#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cyclelab/rng.hpp"

namespace cyclelab {

// One end-to-end trial: sample G(n, c/n), take the giant's 2-core, strip it,
// pack the stripped trees, subtract. The cycle-length estimate is
// core_size - sum_phi; non-tree stripped mass is reported, never subtracted.
struct EstimateRecord {
  std::uint64_t n = 0;
  double c = 0;
  Seed seed;
  std::uint64_t core_size = 0;   // |C2| of the giant component
  std::uint64_t core_edges = 0;  // |E(C2)|
  std::uint64_t stripped_size = 0;
  std::uint64_t v1_size = 0;
  std::uint64_t v2_size = 0;
  std::uint64_t sum_phi = 0;
  std::uint64_t non_tree_mass = 0;
  std::uint64_t tree_count = 0;
  std::map<std::uint64_t, std::uint64_t> tree_size_hist;
  double l_hat_over_n = 0;
  double corollary1_value = 0;
  double wall_ms = 0;
};

// Throws std::invalid_argument unless n >= 1 and c > 1. An empty or
// subcritical draw yields a valid record with l_hat_over_n = 0.
EstimateRecord estimate_once(std::uint64_t n, double c, Seed seed);

struct BatchResult {
  std::vector<EstimateRecord> records;  // trial order
  double mean = 0;                      // of l_hat_over_n
  double stderr_mean = 0;               // sample SD / sqrt(trials)
};

// Trial i runs on Seed{seed.master, i}: records are identical across runs
// and across thread counts.
BatchResult estimate_batch(std::uint64_t n, double c, std::uint64_t trials, Seed seed,
                           unsigned threads = 1);

// The deterministic direction of the estimate on oracle-sized instances: the
// exact longest cycle of C2 never exceeds core_size - sum_phi.
struct ExactnessRow {
  std::uint64_t trial = 0;
  std::uint64_t core_size = 0;
  std::uint64_t sum_phi = 0;
  std::uint64_t non_tree_mass = 0;
  std::uint32_t longest_cycle = 0;
  std::int64_t gap = 0;  // (core_size - sum_phi) - longest_cycle
};
struct ExactnessReport {
  std::vector<ExactnessRow> rows;
  std::uint64_t violations = 0;  // rows with gap < 0; must stay 0
};

// n must be <= 16 so the cycle oracle stays tractable.
ExactnessReport exactness_check_small(std::uint64_t n, double c, std::uint64_t trials,
                                      Seed seed);

}  // namespace cyclelab
