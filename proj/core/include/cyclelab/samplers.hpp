#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cyclelab/graph.hpp"
#include "cyclelab/rng.hpp"

namespace cyclelab {

// Thrown when a rejection loop exhausts its budget; carries how far it got.
struct RetryExceeded : std::runtime_error {
  RetryExceeded(const std::string& what, std::uint64_t n)
      : std::runtime_error(what), attempts(n) {}
  std::uint64_t attempts;
};

struct SamplerBudgets {
  std::uint64_t degree_retries = 1'000'000;  // full-vector degree resamples
  std::uint64_t pairing_retries = 1'000;     // simplicity rejections
  // exact last-coordinate rejection: draw N-1 values, accept the forced
  // remainder with prob pmf(d)/max pmf. Same law, fewer raw draws. Off by
  // default; the plain full-vector loop is the reference path.
  bool deficit_resample = false;
};

// G(n, p) with p = c/n (clamped to 1), via geometric jumps through the n(n-1)/2
// pair slots in lexicographic order. O(n + m) time.
Graph sample_gnp(std::size_t n, double c, Seed seed);

struct DegreeSequence {
  std::vector<std::uint32_t> degrees;
  std::uint64_t attempts = 0;  // full-vector tries consumed
};

// N iid Poisson(lambda | >= 2) draws conditioned on summing to 2M, by
// rejection; lambda solves the mean equation for ratio 2M/N. Requires M >= N
// (all-twos is the unique vector at M == N and is returned directly).
DegreeSequence sample_degrees_min2(std::size_t N, std::size_t M, Seed seed,
                                   const SamplerBudgets& budgets = {});

// Uniform perfect matching on the sum(d) configuration points; cell i holds
// points [cum(i), cum(i)+d_i).
struct MultiGraphPairing {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> point_pairs;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> vertex_pairs;  // u <= v
  std::uint64_t loops = 0;
  std::uint64_t multi_edges = 0;  // edges duplicating an earlier vertex pair
  bool simple() const { return loops == 0 && multi_edges == 0; }
};
MultiGraphPairing pair_configuration(const std::vector<std::uint32_t>& degrees, Seed seed);

// Random simple graph with min degree 2, N vertices, M edges: repeat
// {degree vector, pairing} until the multigraph is simple.
struct Gnm2Result {
  Graph graph;
  std::vector<std::uint32_t> degrees;
  std::uint64_t degree_attempts = 0;   // across all pairing attempts
  std::uint64_t pairing_attempts = 0;  // accepted attempt included
  std::uint64_t loops_seen = 0;
  std::uint64_t multis_seen = 0;
};
Gnm2Result sample_gnm_min2(std::size_t N, std::size_t M, Seed seed,
                           const SamplerBudgets& budgets = {});

}  // namespace cyclelab
