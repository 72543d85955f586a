#pragma once

// Graph-ensemble averages of iterated CNOT channels.
//
// Dynamic networks redraw the graph every step, so the r-th iterate is Phi^r
// for the averaged channel Phi. Static networks keep one unknown graph, so the
// r-th iterate is Psi^(r) = sum_g P_g Phi_g^r, a sum of matrix powers.
//
// StaticEvolver is the production kernel: labeled graphs are grouped into
// isomorphism classes, one power per class is advanced (OpenMP over classes),
// and class contributions are mapped back to labeled graphs by qubit
// relabeling. static_average_serial is the per-graph reference.

#include <cstdint>
#include <vector>

#include "randnet/channel.hpp"

namespace randnet {

inline constexpr int kExhaustiveMaxQubits = 4;
inline constexpr std::uint64_t kDefaultBudget = 10000;
inline constexpr std::uint64_t kDefaultSeed = 20150622;

enum class StaticMode { exhaustive, sampled };

struct StaticOptions {
  StaticMode mode = StaticMode::exhaustive;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = kDefaultSeed;
};

/// Labeled graphs (arc masks in DirectedGraph bit order) with weights.
struct GraphEnsemble {
  int n = 0;
  std::vector<std::uint64_t> masks;
  std::vector<double> weights;
};

/// All 2^{n(n-1)} graphs with binomial weights P_g. CostGuardError for n > 4.
GraphEnsemble exhaustive_ensemble(int n, double p);
/// `budget` graphs from G(n,p), duplicates merged, weight count / budget.
GraphEnsemble sampled_ensemble(int n, double p, std::uint64_t budget, std::uint64_t seed);
GraphEnsemble make_ensemble(int n, double p, const StaticOptions& options);

/// Channel of one labeled graph with uniform link weights; the arcless graph
/// maps to the identity.
RandomUnitaryPtm graph_channel(int n, std::uint64_t mask);

/// Reference: sum_g w_g Phi_g^r, one graph at a time, single-threaded.
PauliTransferMatrix static_average_serial(const GraphEnsemble& ensemble, int r);

class StaticEvolver {
 public:
  /// Each series is a weighting over the same qubit count; series may use
  /// different graph sets. Throws CostGuardError when the class powers would
  /// exceed `memory_limit_bytes`.
  StaticEvolver(int n, const std::vector<GraphEnsemble>& series,
                std::size_t memory_limit_bytes = std::size_t{2} << 30);

  int power() const noexcept { return power_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  std::size_t series_count() const noexcept { return series_.size(); }

  void step();
  PauliTransferMatrix average(std::size_t series) const;

 private:
  struct Member {
    std::size_t perm;  // index into perms_
    double weight;
  };
  struct ClassSeries {
    double symmetric_weight = 0.0;  // coefficient of the sum over all relabelings
    std::vector<Member> members;    // labeled graphs added one by one
  };
  struct GraphClass {
    RandomUnitaryPtm channel;
    Eigen::MatrixXd power;
  };

  int n_;
  int power_ = 0;
  std::vector<std::vector<std::uint32_t>> perms_;  // Pauli index maps per qubit relabeling
  std::vector<GraphClass> classes_;
  std::vector<std::vector<ClassSeries>> series_;  // [series][class]
};

PauliTransferMatrix static_average_iterate(int n, double p, int r, const StaticOptions& options);

struct TracePoint {
  int r;
  double distance;
};

/// D(r) = ||Phi^r - asymptotic_channel(n)||, r = 0..r_max.
std::vector<TracePoint> dynamic_trace(int n, double p, int r_max);
/// D(r) = ||Psi^(r) - asymptotic_channel(n)|| for several p sharing one evolver.
std::vector<std::vector<TracePoint>> static_traces(int n, const std::vector<double>& ps, int r_max,
                                                   const StaticOptions& options);

enum class NetworkMode { dynamic, static_ };

std::vector<TracePoint> convergence_trace(int n, double p, NetworkMode mode, int r_max,
                                          const StaticOptions& options = {});

}  // namespace randnet
