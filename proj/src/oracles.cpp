#include "randnet/oracles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "randnet/digraph.hpp"
#include "randnet/errors.hpp"

namespace randnet {

namespace {

void check_bruteforce_size(int n) {
  if (n < 1) {
    throw std::domain_error("vertex count must be positive");
  }
  if (n > kBruteForceMaxVertices) {
    throw CostGuardError("exhaustive enumeration refused for n > 5");
  }
}

int slots_of(int n) { return n * (n - 1); }

}  // namespace

std::vector<std::uint64_t> strongly_connected_counts_serial(int n) {
  check_bruteforce_size(n);
  const int slots = slots_of(n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(slots) + 1, 0);
  if (n == 1) {
    counts[0] = 1;
    return counts;
  }
  const std::uint64_t total = std::uint64_t{1} << slots;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto g = DirectedGraph::from_bits(n, {mask});
    if (strongly_connected_components(g).size() == 1) {
      ++counts[static_cast<std::size_t>(std::popcount(mask))];
    }
  }
  return counts;
}

std::vector<std::uint64_t> strongly_connected_counts_parallel(int n) {
  check_bruteforce_size(n);
  if (n == 1) return strongly_connected_counts_serial(n);
  const int slots = slots_of(n);
  const auto width = static_cast<std::size_t>(slots) + 1;
  const std::int64_t total = std::int64_t{1} << slots;
  std::vector<std::uint64_t> counts(width, 0);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(width, 0);
    std::array<std::uint64_t, 64> masks{};
    const std::span<std::uint64_t> out(masks.data(), static_cast<std::size_t>(n));
#pragma omp for schedule(static)
    for (std::int64_t mask = 0; mask < total; ++mask) {
      const std::uint64_t word = static_cast<std::uint64_t>(mask);
      out_masks_from_bits(n, std::span<const std::uint64_t>(&word, 1), out);
      if (is_strongly_connected_masks(out)) {
        ++local[static_cast<std::size_t>(std::popcount(word))];
      }
    }
#pragma omp critical
    for (std::size_t e = 0; e < width; ++e) counts[e] += local[e];
  }
  return counts;
}

const std::vector<std::uint64_t>& strongly_connected_counts(int n) {
  check_bruteforce_size(n);
  static std::mutex mutex;
  static std::map<int, std::vector<std::uint64_t>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, strongly_connected_counts_parallel(n)).first;
  }
  return it->second;
}

Prob exact_pc_bruteforce(int n, const Prob& p) {
  const auto& counts = strongly_connected_counts(n);
  const mpq_class& pv = p.value();
  const mpq_class q = 1 - pv;
  const int slots = slots_of(n);
  mpq_class sum = 0;
  mpq_class p_pow = 1;
  for (int e = 0; e <= slots; ++e) {
    if (counts[static_cast<std::size_t>(e)] != 0) {
      mpq_class q_pow;
      mpz_pow_ui(q_pow.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(slots - e));
      mpz_pow_ui(q_pow.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(slots - e));
      q_pow.canonicalize();
      sum += mpq_class(mpz_class(static_cast<unsigned long>(counts[static_cast<std::size_t>(e)]))) * p_pow * q_pow;
    }
    p_pow *= pv;
  }
  return Prob(sum);
}

McEstimate wilson_estimate(std::uint64_t hits, std::uint64_t samples, double confidence) {
  if (samples == 0) {
    throw std::domain_error("Monte Carlo needs at least one sample");
  }
  if (hits > samples) {
    throw std::invalid_argument("hits exceed samples");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in (0,1)");
  }
  const double z =
      boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
  const double nn = static_cast<double>(samples);
  const double phat = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;

  McEstimate out;
  out.samples = samples;
  out.hits = hits;
  out.estimate = phat;
  out.confidence = confidence;
  out.lo = std::max(0.0, std::min(phat, centre - half));
  out.hi = std::min(1.0, std::max(phat, centre + half));
  return out;
}

namespace {

void check_mc_args(int n, double p, std::uint64_t samples) {
  if (n < 1) throw std::domain_error("vertex count must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability outside [0,1]");
  if (samples < 1) throw std::domain_error("Monte Carlo needs at least one sample");
}

std::uint64_t block_count(std::uint64_t samples) {
  return (samples + kMcBlockSize - 1) / kMcBlockSize;
}

std::uint64_t block_samples(std::uint64_t samples, std::uint64_t block) {
  return std::min(kMcBlockSize, samples - block * kMcBlockSize);
}

}  // namespace

McEstimate estimate_pc_monte_carlo_serial(int n, double p, std::uint64_t samples,
                                          std::uint64_t seed, double confidence) {
  check_mc_args(n, p, samples);
  const StreamFactory streams(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t b = 0; b < block_count(samples); ++b) {
    auto rng = streams.stream(b);
    for (std::uint64_t s = 0; s < block_samples(samples, b); ++s) {
      const DirectedGraph g = sample_digraph(n, p, rng);
      if (strongly_connected_components(g).size() == 1) ++hits;
    }
  }
  return wilson_estimate(hits, samples, confidence);
}

McEstimate estimate_pc_monte_carlo(int n, double p, std::uint64_t samples, std::uint64_t seed,
                                   double confidence) {
  check_mc_args(n, p, samples);
  if (n > 64) {
    return estimate_pc_monte_carlo_serial(n, p, samples, seed, confidence);
  }
  const StreamFactory streams(seed);
  const auto blocks = static_cast<std::int64_t>(block_count(samples));
  const std::size_t words = (static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) + 63) / 64;
  std::uint64_t hits = 0;

#pragma omp parallel reduction(+ : hits)
  {
    std::vector<std::uint64_t> bits(words);
    std::array<std::uint64_t, 64> masks{};
    const std::span<std::uint64_t> out(masks.data(), static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < blocks; ++b) {
      auto rng = streams.stream(static_cast<std::uint64_t>(b));
      const std::uint64_t count = block_samples(samples, static_cast<std::uint64_t>(b));
      for (std::uint64_t s = 0; s < count; ++s) {
        sample_arc_bits(n, p, rng, bits);
        out_masks_from_bits(n, bits, out);
        if (is_strongly_connected_masks(out)) ++hits;
      }
    }
  }
  return wilson_estimate(hits, samples, confidence);
}

}  // namespace randnet
