#pragma once

// Independent oracles for the strong-connectivity recursion: exhaustive
// enumeration of every digraph on n <= 5 vertices, and Monte Carlo sampling.
// Each kernel has a serial reference (`*_serial`) kept for testing; the
// default entry points are OpenMP-parallel and must agree with it exactly.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "randnet/prob.hpp"

namespace randnet {

inline constexpr int kBruteForceMaxVertices = 5;

/// c_e = number of strongly connected labeled digraphs on n vertices with e
/// arcs, e = 0..n(n-1). Computed once per n and cached (thread-safe).
/// Throws CostGuardError for n > kBruteForceMaxVertices.
const std::vector<std::uint64_t>& strongly_connected_counts(int n);
std::vector<std::uint64_t> strongly_connected_counts_serial(int n);
/// Uncached OpenMP enumeration behind strongly_connected_counts.
std::vector<std::uint64_t> strongly_connected_counts_parallel(int n);

/// sum_e c_e p^e (1-p)^{n(n-1)-e}
Prob exact_pc_bruteforce(int n, const Prob& p);

struct McEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double confidence = 0.99;

  bool contains(double value) const { return lo <= value && value <= hi; }
};

/// Wilson score interval for hits/samples at the given two-sided confidence.
McEstimate wilson_estimate(std::uint64_t hits, std::uint64_t samples, double confidence);

/// Samples are split into fixed blocks of kMcBlockSize; block b draws from
/// StreamFactory(seed).stream(b). Results depend only on (n, p, samples,
/// seed), never on the thread count.
inline constexpr std::uint64_t kMcBlockSize = 1u << 16;

McEstimate estimate_pc_monte_carlo(int n, double p, std::uint64_t samples, std::uint64_t seed,
                                   double confidence = 0.99);
McEstimate estimate_pc_monte_carlo_serial(int n, double p, std::uint64_t samples,
                                          std::uint64_t seed, double confidence = 0.99);

}  // namespace randnet
