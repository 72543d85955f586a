#include <doctest.h>

#include <chrono>
#include <cmath>

#include "brute_force.hpp"
#include "randnet/exactprob.hpp"
#include "randnet/oracles.hpp"
#include "randnet/partition.hpp"

using namespace randnet;
using randnet::testing::acyclic_interconnect_bruteforce;
using randnet::testing::count_set_partitions_with_sizes;
using randnet::testing::undirected_connected_bruteforce;

namespace {

const std::vector<Prob>& rational_grid() {
  static const std::vector<Prob> grid{Prob(1, 5), Prob(1, 3), Prob(2, 5),
                                      Prob(3, 7), Prob(1, 2), Prob(2, 3)};
  return grid;
}

std::vector<std::vector<int>> as_vectors(const std::vector<Partition>& parts) {
  std::vector<std::vector<int>> out;
  for (const auto& p : parts) out.push_back(p.parts());
  return out;
}

std::size_t partition_number(int n) {
  // p(n) by the standard coin-change recurrence.
  std::vector<std::size_t> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
  return ways[static_cast<std::size_t>(n)];
}

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("enumerate_partitions lists exactly the partitions with enough parts") {
    CHECK(as_vectors(enumerate_partitions(2, 2)) == std::vector<std::vector<int>>{{1, 1}});
    CHECK(as_vectors(enumerate_partitions(3, 2)) == std::vector<std::vector<int>>{{2, 1}, {1, 1, 1}});
    CHECK(as_vectors(enumerate_partitions(4, 2)) ==
          std::vector<std::vector<int>>{{3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
    CHECK(enumerate_partitions(0, 1).empty());
    CHECK(enumerate_partitions(1, 2).empty());
  }

  TEST_CASE("partition completeness: |partitions of n with >= 2 parts| = p(n) - 1") {
    for (int n = 1; n <= 30; ++n) {
      const auto parts = enumerate_partitions(n, 2);
      CHECK(parts.size() == partition_number(n) - 1);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        CHECK(parts[i].total() == n);
        CHECK(parts[i].length() >= 2);
        CHECK(std::is_sorted(parts[i].parts().rbegin(), parts[i].parts().rend()));
        if (i > 0) CHECK(parts[i] < parts[i - 1]);  // strictly decreasing: no repeats
      }
    }
  }

  TEST_CASE("Partition normalizes order and rejects non-positive parts") {
    const Partition p({1, 3, 2, 3});
    CHECK(p.parts() == std::vector<int>{3, 3, 2, 1});
    CHECK(p.total() == 9);
    CHECK(p.multiplicities() == std::vector<std::pair<int, int>>{{3, 2}, {2, 1}, {1, 1}});
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
    CHECK(Partition().empty());
    CHECK(Partition().total() == 0);
  }

  TEST_CASE("count_labeled_decompositions matches set-partition enumeration") {
    CHECK(count_labeled_decompositions(Partition({1, 1})) == 1);
    CHECK(count_labeled_decompositions(Partition({2, 1})) == 3);
    CHECK(count_labeled_decompositions(Partition({2, 2})) == 3);
    CHECK(count_labeled_decompositions(Partition()) == 1);
    for (int n = 1; n <= 8; ++n) {
      for (const auto& part : enumerate_partitions(n, 1)) {
        CAPTURE(part);
        CHECK(count_labeled_decompositions(part) ==
              static_cast<unsigned long>(count_set_partitions_with_sizes(part.parts())));
      }
    }
  }
}

TEST_SUITE("exactprob") {
  TEST_CASE("acyclic interconnection: hand values and enumeration oracle") {
    CHECK(prob_acyclic_interconnect(Partition({5}), Prob(1, 3)).value() == 1);
    CHECK(prob_acyclic_interconnect(Partition(), Prob(1, 3)).value() == 1);
    CHECK(prob_acyclic_interconnect(Partition({1, 1}), Prob(1, 2)).value() == mpq_class(3, 4));
    CHECK(prob_acyclic_interconnect(Partition({1, 1, 1}), Prob(1, 2)).value() == mpq_class(25, 64));

    for (const Prob& p : rational_grid()) {
      ExactSession session(p.value());
      for (int n = 2; n <= 5; ++n) {
        for (const auto& part : enumerate_partitions(n, 2)) {
          CAPTURE(part);
          CHECK(session.acyclic_interconnect(part) == acyclic_interconnect_bruteforce(part.parts(), p.value()));
        }
      }
    }
  }

  TEST_CASE("two components: P_A = 2(1-p)^{ab} - (1-p)^{2ab}") {
    // The l = k term of the inclusion-exclusion supplies -(1-p)^{2ab}.
    const mpq_class p(2, 7);
    const mpq_class q = 1 - p;
    ExactSession session(p);
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= a; ++b) {
        const auto ab = static_cast<unsigned long>(a * b);
        CHECK(session.acyclic_interconnect(Partition({a, b})) ==
              2 * randnet::testing::rational_pow(q, ab) - randnet::testing::rational_pow(q, 2 * ab));
      }
    }
  }

  TEST_CASE("sink upper bound holds for every partition") {
    // P_A({n}_k) <= sum over single sinks of (1-p)^{m(n-m)} P_A(rest)
    for (const Prob& p : rational_grid()) {
      ExactSession session(p.value());
      for (int n = 2; n <= 9; ++n) {
        for (const auto& part : enumerate_partitions(n, 2)) {
          mpq_class bound = 0;
          for (std::size_t i = 0; i < part.length(); ++i) {
            std::vector<int> rest = part.parts();
            const int m = rest[i];
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            bound += session.non_edge_power(static_cast<long>(m) * (n - m)) *
                     session.acyclic_interconnect(Partition(rest));
          }
          CHECK(session.acyclic_interconnect(part) <= bound);
        }
      }
    }
  }

  TEST_CASE("prob_disconnected and prob_strongly_connected: small cases") {
    CHECK(prob_disconnected(1, Prob(1, 3)).value() == 0);
    CHECK(prob_strongly_connected(1, Prob(1, 3)).value() == 1);
    CHECK(prob_disconnected(2, Prob(1, 2)).value() == mpq_class(3, 4));
    // 18 of the 64 labeled digraphs on 3 vertices are strongly connected.
    CHECK(prob_disconnected(3, Prob(1, 2)).value() == mpq_class(23, 32));
    CHECK(prob_strongly_connected(2, Prob(1, 2)).value() == mpq_class(1, 4));
    CHECK(prob_strongly_connected(3, Prob(1, 2)).value() == mpq_class(9, 32));
  }

  TEST_CASE("oracle equivalence against exhaustive enumeration, n <= 5") {
    for (const Prob& p : rational_grid()) {
      ExactSession session(p.value());
      for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        CAPTURE(p.str());
        CHECK(session.strongly_connected(n) == exact_pc_bruteforce(n, p).value());
      }
    }
  }

  TEST_CASE("P_C + P_D = 1 exactly and both lie in [0,1]") {
    for (const Prob& p : rational_grid()) {
      ExactSession session(p.value());
      for (int n = 1; n <= 14; ++n) {
        const mpq_class pc = session.strongly_connected(n);
        const mpq_class pd = session.disconnected(n);
        CHECK(pc + pd == 1);
        CHECK(pd >= 0);
        CHECK(pd <= 1);
      }
    }
  }

  TEST_CASE("P_C is strictly increasing in p") {
    std::vector<mpq_class> ps;
    for (int i = 1; i < 20; ++i) ps.emplace_back(i, 20);
    for (int n = 2; n <= 9; ++n) {
      mpq_class previous = 0;
      for (const auto& p : ps) {
        const mpq_class pc = ExactSession(p).strongly_connected(n);
        CHECK(pc > previous);
        previous = pc;
      }
    }
  }

  TEST_CASE("invalid edge probability is a domain error") {
    CHECK_THROWS_AS(ExactSession(mpq_class(0)), std::domain_error);
    CHECK_THROWS_AS(ExactSession(mpq_class(1)), std::domain_error);
    CHECK_THROWS_AS(FloatSession(1.5), std::domain_error);
    CHECK_THROWS_AS(prob_strongly_connected(0, Prob(1, 2)), std::domain_error);
  }

  TEST_CASE("float path agrees with the rational path to 1e-12 for n <= 20") {
    for (const Prob& p : rational_grid()) {
      ExactSession exact(p.value());
      FloatSession approx(p.to_double());
      for (int n = 1; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(std::abs(exact.strongly_connected(n).get_d() - approx.strongly_connected(n)) <= 1e-12);
      }
    }
  }

  TEST_CASE("grouped recurrence equals the partition sum exactly") {
    for (const Prob& p : rational_grid()) {
      ExactSession session(p.value());
      for (int n = 1; n <= 22; ++n) {
        CAPTURE(n);
        CHECK(session.strongly_connected_grouped(n) == session.strongly_connected_by_partitions(n));
      }
    }
  }

  TEST_CASE("float partition sum and float grouped recurrence agree") {
    for (double p : {0.05, 0.2, 0.5, 0.9}) {
      // The partition sum alternates in sign and loses a few digits for small p.
      const double tolerance = p < 0.1 ? 1e-10 : 1e-12;
      FloatSession session(p);
      for (int n = 1; n <= 26; ++n) {
        CHECK(std::abs(session.strongly_connected_by_partitions(n) - session.strongly_connected_grouped(n)) <= tolerance);
      }
    }
  }

  TEST_CASE("float path stays accurate up to n = 80") {
    for (const Prob& p : rational_grid()) {
      ExactSession exact(p.value());
      FloatSession approx(p.to_double());
      for (int n = 20; n <= 80; n += 20) {
        CHECK(std::abs(exact.strongly_connected_grouped(n).get_d() - approx.strongly_connected(n)) <= 1e-12);
      }
    }
  }

  TEST_CASE("undirected connectivity: recursion vs enumeration") {
    CHECK(prob_connected_undirected(1, Prob(1, 3)).value() == 1);
    CHECK(prob_connected_undirected(2, Prob(2, 7)).value() == mpq_class(2, 7));
    CHECK(prob_connected_undirected(3, Prob(1, 2)).value() == mpq_class(1, 2));
    for (const Prob& p : rational_grid()) {
      ExactSession session(p.value());
      for (int n = 1; n <= 6; ++n) {
        CHECK(session.connected_undirected(n) == undirected_connected_bruteforce(n, p.value()));
        CHECK(session.connected_undirected(n) + session.disconnected_undirected(n) == 1);
      }
    }
  }

  TEST_CASE("undirected connectivity at p^2 never exceeds strong connectivity at p") {
    for (const Prob& p : rational_grid()) {
      ExactSession directed(p.value());
      ExactSession undirected(p.value() * p.value());
      // Equal at n = 2: both events are "the two arcs / the one edge exist".
      CHECK(directed.strongly_connected(2) == undirected.connected_undirected(2));
      for (int n = 3; n <= 12; ++n) {
        CHECK(directed.strongly_connected(n) > undirected.connected_undirected(n));
      }
    }
  }
}

TEST_SUITE("bounds") {
  TEST_CASE("lower_bound_pc closed form") {
    CHECK(lower_bound_pc(7, 1.0) == 1.0);
    CHECK(lower_bound_pc(10, 0.5) == doctest::Approx(1.0 - 81.0 * std::pow(0.75, 9)).epsilon(1e-14));
    CHECK(lower_bound_pc(10, 0.5) == doctest::Approx(-5.0819).epsilon(1e-4));
    CHECK(lower_bound_pc(50, 0.5) == doctest::Approx(1.0 - 2401.0 * std::pow(0.75, 49)).epsilon(1e-14));
    CHECK(lower_bound_pc(50, 0.5) == doctest::Approx(0.99819).epsilon(1e-5));
    // Deep underflow stays finite and at 1.
    CHECK(lower_bound_pc(5000, 0.9) == 1.0);
    CHECK_THROWS_AS(lower_bound_pc(1, 0.5), std::domain_error);
  }

  TEST_CASE("bound terms: definition, consecutive ratio, and majorization by the last term") {
    for (double p : {0.1, 0.3, 0.5}) {
      for (int n : {5, 20, 60}) {
        for (int k = 1; k < n; ++k) {
          const double direct = std::exp(std::lgamma(n) - std::lgamma(k) - std::lgamma(n - k + 1.0)) *
                                std::pow(1.0 - p, k * (n - k));
          CHECK(bound_term(n, k, p) == doctest::Approx(direct).epsilon(1e-10));
          if (k + 1 < n) {
            const double ratio = (n - k) / static_cast<double>(k) * std::pow(1.0 - p, n - (2 * k + 1));
            CHECK(bound_term(n, k + 1, p) / bound_term(n, k, p) == doctest::Approx(ratio).epsilon(1e-9));
          }
        }
      }
    }
    // For large n the sum of a_k is at most (n-1) a_{n-1}.
    for (double p : {0.1, 0.5, 0.9}) {
      for (int n = 80; n <= 200; n += 40) {
        double sum = 0.0;
        for (int k = 1; k < n; ++k) sum += bound_term(n, k, p);
        CHECK(sum <= (n - 1) * bound_term(n, n - 1, p));
      }
    }
  }

  TEST_CASE("undirected recurrence beats (n-1)^2 (1-p)^{n-1} for n in [30,200]") {
    for (int i = 1; i <= 9; ++i) {
      const double p = i / 10.0;
      FloatSession session(p);
      for (int n = 30; n <= 200; ++n) {
        const double bound_gap = std::exp(2.0 * std::log(n - 1.0) + (n - 1.0) * std::log1p(-p));
        CHECK(session.disconnected_undirected(n) < bound_gap);
      }
    }
  }
}

TEST_SUITE("curve") {
  TEST_CASE("pc_curve at p = 1/2 matches the labeled strongly connected digraph counts") {
    // Counts of strongly connected labeled digraphs on n = 1..7 vertices.
    const char* counts[] = {"1", "1", "18", "1606", "565080", "734774776", "3523091615568"};
    const PcCurve curve = pc_curve(7, Prob(1, 2));
    REQUIRE(curve.points.size() == 7);
    ExactSession session(mpq_class(1, 2));
    for (int n = 1; n <= 7; ++n) {
      mpq_class expected(mpz_class(counts[n - 1]));
      mpz_class all;
      mpz_ui_pow_ui(all.get_mpz_t(), 2, static_cast<unsigned long>(n * (n - 1)));
      expected /= all;
      CHECK(session.strongly_connected(n) == expected);
      CHECK(curve.points[static_cast<std::size_t>(n - 1)].pc == doctest::Approx(expected.get_d()).epsilon(1e-15));
      if (n >= 3) CHECK(curve.points[static_cast<std::size_t>(n - 1)].pc > curve.points[static_cast<std::size_t>(n - 2)].pc);
    }
    CHECK(curve.argmin_n == 2);
  }

  TEST_CASE("pc_curve with n_max = 1") {
    const PcCurve curve = pc_curve(1, Prob(1, 3));
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].pc == 1.0);
    CHECK(curve.argmin_n == 1);
  }

  TEST_CASE("sparse graphs have an interior minimum, confirmed by Monte Carlo") {
    const PcCurve curve = pc_curve(12, Prob(1, 5));
    CHECK(curve.argmin_n > 2);
    CHECK(curve.argmin_n < 12);
    const int nstar = curve.argmin_n;
    // The Monte Carlo estimates must order the minimum below both ends.
    const auto at = [&](int n) { return estimate_pc_monte_carlo(n, 0.2, 400000, 99); };
    const McEstimate mid = at(nstar);
    CHECK(mid.contains(curve.points[static_cast<std::size_t>(nstar - 1)].pc));
    CHECK(mid.hi < at(2).lo);
    CHECK(mid.hi < at(12).lo);
  }

  TEST_CASE("exact recursion reaches n = 30 within the time envelope") {
    const auto start = std::chrono::steady_clock::now();
    ExactSession session(mpq_class(1, 2));
    const mpq_class pc = session.strongly_connected(30);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    MESSAGE("P_C(30,1/2) in " << seconds << " s");
    CHECK(seconds < 60.0);
    CHECK(pc > 0);
    CHECK(pc < 1);
    CHECK(std::abs(pc.get_d() - FloatSession(0.5).strongly_connected(30)) < 1e-12);
  }
}
