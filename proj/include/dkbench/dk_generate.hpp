#pragma once

#include <cstdint>

#include "dkbench/dk_series.hpp"
#include "dkbench/graph.hpp"

namespace dkbench {

struct GenParams {
  DkLevel level = DkLevel::OneK;
  std::uint64_t rng_seed = 0;
  double swap_budget_factor = 10.0;    // accepted-swap target = factor * |E|
  double max_attempts_factor = 200.0;  // proposal cap per phase = factor * |E|
  std::int64_t jdd_tolerance = 0;      // L1 over JDD entries
  double cspec_tolerance = 0.01;       // weighted L1 over the clustering spectrum
  int restarts = 2;                    // extra derived-seed rounds for 2.5K

  void validate() const;
};

struct GenStats {
  std::int64_t accepted_swaps = 0;
  std::int64_t attempts = 0;
  std::int64_t jdd_distance = 0;   // achieved L1 vs the source graph
  double cspec_distance = 0.0;     // achieved weighted L1 (2.5K only)
  bool swap_budget_met = true;     // randomization reached its accepted-swap target
  bool used_fallback = false;      // 2K fallback / 2.5K constrained walk engaged
};

struct GenResult {
  Graph graph;
  GenStats stats;
};

// Degree-preserving randomization: uniform double-edge swaps, rejecting any
// proposal that would introduce a loop or a parallel edge. Output has the
// exact per-node degree sequence of g.
GenResult generate_1k(const Graph& g, const GenParams& p);

// Randomizes, then rewires toward the source joint degree distribution with
// zero-temperature Metropolis acceptance; falls back to JDD-preserving swaps
// applied directly to g if targeting stalls. Output JDD is within
// p.jdd_tolerance of the source (0 by default).
GenResult generate_2k(const Graph& g, const GenParams& p);

// 2K instance driven toward the source degree-dependent clustering spectrum:
// wedge-closing triangle boosts followed by JDD repair, clustering descent
// via JDD-preserving swaps, and a JDD-preserving constrained walk from g as
// the terminal fallback. Output satisfies both tolerances.
GenResult generate_25k(const Graph& g, const GenParams& p);

// Dispatch on p.level; GS returns an unmodified copy.
GenResult generate(const Graph& g, const GenParams& p);

}  // namespace dkbench
