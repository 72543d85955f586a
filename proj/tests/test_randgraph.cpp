#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "randnet/digraph.hpp"
#include "randnet/errors.hpp"
#include "randnet/exactprob.hpp"
#include "randnet/oracles.hpp"

using namespace randnet;

namespace {

std::vector<std::vector<bool>> adjacency(const DirectedGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.arcs()) adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
  return adj;
}

bool condensation_is_acyclic(const SccDecomposition& scc) {
  // Kahn's algorithm on the condensation.
  const std::size_t k = scc.size();
  std::vector<int> indegree(k, 0);
  for (auto [a, b] : scc.condensation) ++indegree[static_cast<std::size_t>(b)];
  std::vector<std::size_t> ready;
  for (std::size_t c = 0; c < k; ++c)
    if (indegree[c] == 0) ready.push_back(c);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t c = ready.back();
    ready.pop_back();
    ++removed;
    for (auto [a, b] : scc.condensation) {
      if (static_cast<std::size_t>(a) == c && --indegree[static_cast<std::size_t>(b)] == 0)
        ready.push_back(static_cast<std::size_t>(b));
    }
  }
  return removed == k;
}

void check_scc_partition(const DirectedGraph& g, const SccDecomposition& scc) {
  std::vector<int> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t c = 0; c < scc.size(); ++c) {
    for (int v : scc.components[c]) {
      ++seen[static_cast<std::size_t>(v)];
      CHECK(scc.component_of[static_cast<std::size_t>(v)] == static_cast<int>(c));
    }
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  CHECK(condensation_is_acyclic(scc));
  for (auto [a, b] : scc.condensation) CHECK(a != b);
  CHECK(std::adjacent_find(scc.condensation.begin(), scc.condensation.end()) == scc.condensation.end());
}

}  // namespace

TEST_SUITE("digraph") {
  TEST_CASE("arc indexing is row-major without the diagonal") {
    const DirectedGraph g(4);
    CHECK(g.slot_count() == 12);
    std::size_t expected = 0;
    for (int u = 0; u < 4; ++u) {
      for (int v = 0; v < 4; ++v) {
        if (u == v) continue;
        CHECK(g.arc_index(u, v) == expected);
        CHECK(g.arc_at(expected) == std::pair{u, v});
        ++expected;
      }
    }
    CHECK_THROWS(g.arc_index(1, 1));
    CHECK_THROWS(g.arc_index(0, 4));
  }

  TEST_CASE("add, remove, and query arcs") {
    DirectedGraph g(3);
    g.add_arc(0, 2);
    g.add_arc(2, 1);
    CHECK(g.has_arc(0, 2));
    CHECK_FALSE(g.has_arc(2, 0));
    CHECK(g.arc_count() == 2);
    CHECK(g.successors(2) == std::vector<int>{1});
    g.remove_arc(0, 2);
    CHECK(g.arc_count() == 1);
    CHECK(DirectedGraph::complete(5).arc_count() == 20);
    CHECK_THROWS(DirectedGraph::from_bits(2, {0b100}));
  }

  TEST_CASE("sampling at p = 0 and p = 1 and determinism per seed") {
    for (int n : {1, 2, 5, 9, 70}) {
      auto rng = StreamFactory(7).stream(0);
      CHECK(sample_digraph(n, 1.0, rng) == DirectedGraph::complete(n));
      CHECK(sample_digraph(n, 0.0, rng).arc_count() == 0);
    }
    auto a = StreamFactory(42).stream(3);
    auto b = StreamFactory(42).stream(3);
    CHECK(sample_digraph(4, 0.5, a) == sample_digraph(4, 0.5, b));
    auto c = StreamFactory(42).stream(4);
    auto d = StreamFactory(43).stream(3);
    int differ = 0;
    for (int i = 0; i < 20; ++i) {
      const DirectedGraph x = sample_digraph(8, 0.5, c);
      if (!(x == sample_digraph(8, 0.5, d))) ++differ;
    }
    CHECK(differ > 15);
  }

  TEST_CASE("Bernoulli lanes have the right frequency") {
    auto rng = StreamFactory(1).stream(0);
    for (double p : {0.1, 0.3, 0.5, 0.77}) {
      std::uint64_t ones = 0;
      const int words = 20000;
      for (int i = 0; i < words; ++i) ones += static_cast<std::uint64_t>(std::popcount(bernoulli_word(rng, p, 64)));
      const double freq = static_cast<double>(ones) / (64.0 * words);
      CHECK(std::abs(freq - p) < 5e-3);
    }
    CHECK(bernoulli_word(rng, 0.5, 5) < 32);
  }
}

TEST_SUITE("scc") {
  TEST_CASE("directed 3-cycle is one component") {
    const SccDecomposition scc = strongly_connected_components(DirectedGraph::cycle(3));
    REQUIRE(scc.size() == 1);
    CHECK(scc.components[0] == std::vector<int>{0, 1, 2});
    CHECK(scc.condensation.empty());
  }

  TEST_CASE("two 2-cycles joined by a one-way arc") {
    const std::vector<std::pair<int, int>> arcs{{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}};
    const DirectedGraph g = DirectedGraph::from_arcs(4, arcs);
    const SccDecomposition scc = strongly_connected_components(g);
    REQUIRE(scc.size() == 2);
    CHECK(scc.condensation.size() == 1);
    const int from = scc.component_of[0];
    const int to = scc.component_of[3];
    CHECK(scc.condensation[0] == std::pair{from, to});
    CHECK_FALSE(is_strongly_connected(g));
  }

  TEST_CASE("single vertex and small named graphs") {
    CHECK(strongly_connected_components(DirectedGraph(1)).size() == 1);
    CHECK(is_strongly_connected(DirectedGraph(1)));
    for (int n = 2; n <= 70; n += 17) {
      CHECK(is_strongly_connected(DirectedGraph::complete(n)));
      CHECK_FALSE(is_strongly_connected(DirectedGraph(n)));
      DirectedGraph star(n);
      for (int v = 1; v < n; ++v) star.add_arc(0, v);
      CHECK_FALSE(is_strongly_connected(star));
      CHECK(strongly_connected_components(star).size() == static_cast<std::size_t>(n));
    }
  }

  TEST_CASE("agreement with naive reachability on every graph with n <= 4") {
    for (int n = 1; n <= 4; ++n) {
      const int slots = n * (n - 1);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
        const DirectedGraph g = n == 1 ? DirectedGraph(1) : DirectedGraph::from_bits(n, {mask});
        const bool expected = randnet::testing::strongly_connected_naive(adjacency(g));
        CHECK(is_strongly_connected(g) == expected);
        const SccDecomposition scc = strongly_connected_components(g);
        CHECK((scc.size() == 1) == expected);
        check_scc_partition(g, scc);
      }
    }
  }

  TEST_CASE("agreement with naive reachability on 1000 random graphs, n <= 64") {
    std::mt19937_64 pick(2024);
    auto rng = StreamFactory(11).stream(0);
    int connected = 0;
    for (int i = 0; i < 1000; ++i) {
      const int n = std::uniform_int_distribution<int>(2, 64)(pick);
      // Probabilities around the connectivity threshold so both outcomes occur.
      const double p = std::min(1.0, std::log(static_cast<double>(n)) / n * std::uniform_real_distribution<double>(0.5, 2.0)(pick));
      const DirectedGraph g = sample_digraph(n, p, rng);
      const bool expected = randnet::testing::strongly_connected_naive(adjacency(g));
      connected += expected;
      CHECK(is_strongly_connected(g) == expected);
      const SccDecomposition scc = strongly_connected_components(g);
      CHECK((scc.size() == 1) == expected);
      check_scc_partition(g, scc);
    }
    CHECK(connected > 100);
    CHECK(connected < 900);
  }

  TEST_CASE("graphs beyond 64 vertices use the general path") {
    auto rng = StreamFactory(5).stream(0);
    for (int i = 0; i < 20; ++i) {
      const DirectedGraph g = sample_digraph(100, 0.05, rng);
      CHECK(is_strongly_connected(g) == randnet::testing::strongly_connected_naive(adjacency(g)));
    }
  }
}

TEST_SUITE("oracles") {
  TEST_CASE("exhaustive counts: serial and parallel kernels agree") {
    for (int n = 1; n <= 5; ++n) {
      CHECK(strongly_connected_counts(n) == strongly_connected_counts_serial(n));
      CHECK(strongly_connected_counts_parallel(n) == strongly_connected_counts_serial(n));
    }
    // Totals of strongly connected labeled digraphs.
    const std::uint64_t totals[] = {1, 1, 18, 1606, 565080};
    for (int n = 1; n <= 5; ++n) {
      const auto& c = strongly_connected_counts(n);
      std::uint64_t sum = 0;
      for (auto x : c) sum += x;
      CHECK(sum == totals[n - 1]);
    }
  }

  TEST_CASE("exact_pc_bruteforce examples and cost guard") {
    CHECK(exact_pc_bruteforce(1, Prob(1, 3)).value() == 1);
    for (const Prob& p : {Prob(1, 5), Prob(1, 2), Prob(5, 7)}) {
      CHECK(exact_pc_bruteforce(2, p).value() == p.value() * p.value());
    }
    CHECK(exact_pc_bruteforce(3, Prob(1, 2)).value() == mpq_class(9, 32));
    CHECK_THROWS_AS(exact_pc_bruteforce(6, Prob(1, 2)), CostGuardError);
  }

  TEST_CASE("brute force equals the recursion on the rational grid") {
    for (const Prob& p : {Prob(1, 5), Prob(1, 3), Prob(2, 5), Prob(3, 7), Prob(1, 2), Prob(2, 3)}) {
      for (int n = 1; n <= 5; ++n) {
        CHECK(exact_pc_bruteforce(n, p).value() == prob_strongly_connected(n, p).value());
      }
    }
  }

  TEST_CASE("Monte Carlo: parallel and serial kernels count the same hits") {
    for (int n : {3, 7, 20}) {
      const McEstimate par = estimate_pc_monte_carlo(n, 0.4, 150000, 77);
      const McEstimate ser = estimate_pc_monte_carlo_serial(n, 0.4, 150000, 77);
      CHECK(par.hits == ser.hits);
      CHECK(par.samples == 150000);
    }
  }

  TEST_CASE("Monte Carlo examples") {
    const McEstimate full = estimate_pc_monte_carlo(6, 1.0, 1000, 3);
    CHECK(full.estimate == 1.0);
    CHECK(full.hits == 1000);
    const double exact7 = prob_strongly_connected(7, Prob(1, 2)).to_double();
    CHECK(estimate_pc_monte_carlo(7, 0.5, 1000000, 1).contains(exact7));
    const double exact5 = exact_pc_bruteforce(5, Prob(1, 3)).to_double();
    CHECK(estimate_pc_monte_carlo(5, 1.0 / 3.0, 1000000, 2).contains(exact5));
    CHECK(estimate_pc_monte_carlo(1, 0.3, 10, 2).estimate == 1.0);
    // Same seed, same answer.
    CHECK(estimate_pc_monte_carlo(9, 0.3, 70000, 5).hits == estimate_pc_monte_carlo(9, 0.3, 70000, 5).hits);
    CHECK_THROWS_AS(estimate_pc_monte_carlo(5, 0.3, 0, 1), std::domain_error);
  }

  TEST_CASE("Monte Carlo coverage over independent seeds") {
    const double exact = exact_pc_bruteforce(5, Prob(1, 2)).to_double();
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      covered += estimate_pc_monte_carlo(5, 0.5, 20000, 1000 + seed).contains(exact);
    }
    CHECK(covered >= 95);
  }

  TEST_CASE("Wilson interval properties") {
    const McEstimate all = wilson_estimate(500, 500, 0.99);
    CHECK(all.hi == doctest::Approx(1.0));
    CHECK(all.lo < 1.0);
    CHECK(all.lo > 0.98);
    const McEstimate none = wilson_estimate(0, 500, 0.99);
    CHECK(none.lo == doctest::Approx(0.0));
    CHECK(none.hi > 0.0);
    const McEstimate half = wilson_estimate(500, 1000, 0.99);
    CHECK(half.estimate == 0.5);
    CHECK(half.lo + half.hi == doctest::Approx(1.0));
    // Known value: z = 2.5758, n = 1000, p = 0.5.
    const double z = 2.5758293035489;
    const double half_width = z * std::sqrt(0.25 / 1000 + z * z / 4e6) / (1 + z * z / 1000);
    CHECK(half.hi - 0.5 == doctest::Approx(half_width).epsilon(1e-9));
    CHECK(wilson_estimate(500, 1000, 0.95).hi < half.hi);
    CHECK_THROWS_AS(wilson_estimate(5, 0, 0.99), std::domain_error);
    CHECK_THROWS_AS(wilson_estimate(5, 10, 1.0), std::domain_error);
  }
}
