#pragma once

// Exact strong-connectivity probabilities of directed Erdos-Renyi graphs.
//
// P_C(n,p) is obtained from its complement P_D(n,p): a graph that is not
// strongly connected splits into k >= 2 dicomponents whose vertex counts form
// a partition of n, each dicomponent strongly connected and the arcs between
// them free of directed cycles. The acyclicity probability P_A is computed by
// inclusion-exclusion over the set of sink dicomponents.
//
// ConnectivitySession<mpq_class> is the exact reference. ConnectivitySession
// <double> serves curves beyond the exact range: it collapses the partition
// sum by grouping partitions through their sink dicomponents, which needs
// O(n^2) work instead of one term per sub-multiset of every partition.

#include <array>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "randnet/partition.hpp"
#include "randnet/prob.hpp"

namespace randnet {

template <class Scalar>
class ConnectivitySession {
 public:
  /// Throws std::domain_error unless 0 < p < 1.
  explicit ConnectivitySession(Scalar p);

  const Scalar& edge_probability() const noexcept { return p_; }

  /// Exact sessions sum over partitions; float sessions use the grouped form.
  Scalar strongly_connected(int n);
  Scalar disconnected(int n);

  /// Sum over every partition of n with at least two parts.
  Scalar strongly_connected_by_partitions(int n);

  /// Same quantity from the grouped recurrences
  ///   1   = sum_{t=1}^{n} C(n,t) d_t (1-p)^{t(n-t)}
  ///   s_n = d_n + sum_{j=1}^{n-1} C(n-1,j-1) s_j d_{n-j} (1-p)^{2j(n-j)}
  /// where d_t is the signed weight of sets of mutually unlinked strongly
  /// connected blocks covering t vertices.
  Scalar strongly_connected_grouped(int n);
  Scalar acyclic_interconnect(const Partition& part);

  /// Undirected G(n,p) connectivity; recursion over the size of the
  /// component holding a fixed vertex.
  Scalar connected_undirected(int n);
  /// 1 - connected_undirected(n), summed directly (no cancellation).
  Scalar disconnected_undirected(int n);

  /// (1-p)^e
  Scalar non_edge_power(long e);

  /// Largest partition total the acyclicity memo can key (CostGuardError above).
  static constexpr int kMaxTotal = 100;

 private:
  // (size, multiplicity) pairs, sizes strictly decreasing, multiplicities > 0.
  using SizeCounts = std::vector<std::pair<int, int>>;
  // Seven bits of size and seven of multiplicity per distinct size.
  using Key = std::array<std::uint64_t, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Scalar acyclic_from_counts(const SizeCounts& counts, long total);
  static Key key_of(const SizeCounts& counts);
  const Scalar& choose(int n, int k);

  Scalar p_;
  Scalar q_;
  std::vector<Scalar> q_powers_;
  std::vector<std::vector<Scalar>> pascal_;
  std::map<int, Scalar> pc_memo_;
  std::vector<Scalar> grouped_pc_;
  std::vector<Scalar> sink_weight_;
  std::unordered_map<Key, Scalar, KeyHash> pa_memo_;
  std::map<int, Scalar> pc_un_memo_;
  std::map<int, Scalar> pd_un_memo_;
};

using ExactSession = ConnectivitySession<mpq_class>;
using FloatSession = ConnectivitySession<double>;

extern template class ConnectivitySession<mpq_class>;
extern template class ConnectivitySession<double>;

// One-shot wrappers; each builds a fresh session.
Prob prob_acyclic_interconnect(const Partition& part, const Prob& p);
Prob prob_disconnected(int n, const Prob& p);
Prob prob_strongly_connected(int n, const Prob& p);
Prob prob_connected_undirected(int n, const Prob& p);

/// 1 - (n-1)^2 (1-p^2)^(n-1), power evaluated in the log domain. Negative for
/// small n, where the bound says nothing. Accepts p = 1 (returns 1).
double lower_bound_pc(int n, double p);

/// a_k = C(n-1,k-1) (1-p)^{k(n-k)}, the terms majorizing the undirected
/// disconnection probability.
double bound_term(int n, int k, double p);

struct CurvePoint {
  int n;
  double pc;
  double lower_bound;  // only meaningful for n >= 2
};

struct PcCurve {
  std::vector<CurvePoint> points;
  int argmin_n;
};

/// P_C(n,p) for n = 1..n_max; argmin ties go to the smaller n.
PcCurve pc_curve(int n_max, const Prob& p);
PcCurve pc_curve(int n_max, double p);

}  // namespace randnet
