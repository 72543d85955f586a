#include "randnet/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "randnet/errors.hpp"

namespace randnet {

namespace {

int slot_count(int n) { return n * (n - 1); }

void check_mask_qubits(int n) {
  if (n < 2) {
    throw std::domain_error("network needs n >= 2");
  }
  if (n > kMaxQubits) {
    throw CostGuardError("qubit networks are limited to n <= " + std::to_string(kMaxQubits));
  }
}

std::vector<std::vector<int>> vertex_permutations(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Slot map of a vertex relabeling: arc (u,v) -> (perm[u], perm[v]).
std::vector<int> slot_map(int n, const std::vector<int>& perm) {
  const DirectedGraph shape(n);
  std::vector<int> out(static_cast<std::size_t>(slot_count(n)));
  for (int i = 0; i < slot_count(n); ++i) {
    auto [u, v] = shape.arc_at(static_cast<std::size_t>(i));
    out[static_cast<std::size_t>(i)] = static_cast<int>(
        shape.arc_index(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]));
  }
  return out;
}

std::uint64_t relabel_mask(std::uint64_t mask, const std::vector<int>& slots) {
  std::uint64_t out = 0;
  for (std::uint64_t m = mask; m; m &= m - 1) {
    out |= std::uint64_t{1} << slots[static_cast<std::size_t>(std::countr_zero(m))];
  }
  return out;
}

}  // namespace

GraphEnsemble exhaustive_ensemble(int n, double p) {
  check_mask_qubits(n);
  if (n > kExhaustiveMaxQubits) {
    throw CostGuardError("exhaustive graph averaging is limited to n <= 4");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("edge probability outside [0,1]");
  }
  const int slots = slot_count(n);
  GraphEnsemble out{n, {}, {}};
  const std::uint64_t total = std::uint64_t{1} << slots;
  out.masks.reserve(total);
  out.weights.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const int e = std::popcount(mask);
    out.masks.push_back(mask);
    out.weights.push_back(std::pow(p, e) * std::pow(1.0 - p, slots - e));
  }
  return out;
}

GraphEnsemble sampled_ensemble(int n, double p, std::uint64_t budget, std::uint64_t seed) {
  check_mask_qubits(n);
  if (budget < 1) {
    throw std::domain_error("sampling budget must be positive");
  }
  auto rng = StreamFactory(seed).stream(0);
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t word = 0;
  for (std::uint64_t s = 0; s < budget; ++s) {
    sample_arc_bits(n, p, rng, std::span<std::uint64_t>(&word, 1));
    ++counts[word];
  }
  GraphEnsemble out{n, {}, {}};
  for (auto [mask, count] : counts) {
    out.masks.push_back(mask);
    out.weights.push_back(static_cast<double>(count) / static_cast<double>(budget));
  }
  return out;
}

GraphEnsemble make_ensemble(int n, double p, const StaticOptions& options) {
  return options.mode == StaticMode::exhaustive
             ? exhaustive_ensemble(n, p)
             : sampled_ensemble(n, p, options.budget, options.seed);
}

RandomUnitaryPtm graph_channel(int n, std::uint64_t mask) {
  if (mask == 0) {
    return RandomUnitaryPtm(n, 1.0, {});
  }
  auto g = DirectedGraph::from_bits(n, {mask});
  return channel_ptm(ChannelSpec::uniform(std::move(g)));
}

PauliTransferMatrix static_average_serial(const GraphEnsemble& ensemble, int r) {
  check_mask_qubits(ensemble.n);
  if (r < 0) {
    throw std::domain_error("iteration count must be non-negative");
  }
  PauliTransferMatrix out(ensemble.n);
  for (std::size_t i = 0; i < ensemble.masks.size(); ++i) {
    out.matrix() += ensemble.weights[i] * channel_power(graph_channel(ensemble.n, ensemble.masks[i]), r).matrix();
  }
  return out;
}

StaticEvolver::StaticEvolver(int n, const std::vector<GraphEnsemble>& series,
                             std::size_t memory_limit_bytes)
    : n_(n) {
  check_mask_qubits(n);
  const auto vperms = vertex_permutations(n);
  std::vector<std::vector<int>> slots;
  slots.reserve(vperms.size());
  const std::uint64_t pauli_count = std::uint64_t{1} << (2 * n);
  for (const auto& vp : vperms) {
    slots.push_back(slot_map(n, vp));
    std::vector<std::uint32_t> pidx(pauli_count);
    for (std::uint64_t a = 0; a < pauli_count; ++a) {
      pidx[a] = static_cast<std::uint32_t>(permute_pauli_index(n, a, vp));
    }
    perms_.push_back(std::move(pidx));
  }
  // inverse[k] is the index of the inverse relabeling of vperms[k].
  std::vector<std::size_t> inverse(vperms.size());
  {
    std::map<std::vector<int>, std::size_t> index_of;
    for (std::size_t k = 0; k < vperms.size(); ++k) index_of[vperms[k]] = k;
    for (std::size_t k = 0; k < vperms.size(); ++k) {
      std::vector<int> inv(vperms[k].size());
      for (std::size_t q = 0; q < inv.size(); ++q) inv[static_cast<std::size_t>(vperms[k][q])] = static_cast<int>(q);
      inverse[k] = index_of.at(inv);
    }
  }

  std::map<std::uint64_t, std::size_t> class_of;
  std::vector<std::uint64_t> reps;
  struct Pending {
    std::uint64_t mask;
    Member member;
  };
  std::vector<std::vector<std::vector<Pending>>> pending(series.size());

  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].n != n) {
      throw std::invalid_argument("ensemble qubit count mismatch");
    }
    for (std::size_t i = 0; i < series[s].masks.size(); ++i) {
      const double w = series[s].weights[i];
      if (w == 0.0) continue;
      const std::uint64_t mask = series[s].masks[i];
      std::uint64_t best = ~std::uint64_t{0};
      std::size_t best_k = 0;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const std::uint64_t image = relabel_mask(mask, slots[k]);
        if (image < best) {
          best = image;
          best_k = k;
        }
      }
      auto [it, inserted] = class_of.emplace(best, reps.size());
      if (inserted) reps.push_back(best);
      auto& per_class = pending[s];
      if (per_class.size() < reps.size()) per_class.resize(reps.size());
      // vperms[best_k] maps mask to the representative, so its inverse maps back.
      per_class[it->second].push_back({mask, {inverse[best_k], w}});
    }
  }

  const auto dim = static_cast<std::size_t>(pauli_count);
  const std::size_t bytes = reps.size() * dim * dim * sizeof(double);
  if (bytes > memory_limit_bytes) {
    throw CostGuardError("static ensemble needs " + std::to_string(bytes >> 20) +
                         " MiB of class powers");
  }

  for (std::uint64_t rep : reps) {
    classes_.push_back({graph_channel(n, rep),
                        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim))});
  }

  const double factorial = static_cast<double>(vperms.size());
  series_.resize(series.size());
  for (std::size_t s = 0; s < series.size(); ++s) {
    series_[s].resize(reps.size());
    pending[s].resize(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) {
      auto& members = pending[s][c];
      if (members.empty()) continue;
      std::set<std::uint64_t> orbit;
      for (const auto& sl : slots) orbit.insert(relabel_mask(reps[c], sl));
      const bool uniform = std::all_of(members.begin(), members.end(), [&](const Pending& m) {
        return m.member.weight == members.front().member.weight;
      });
      if (uniform && members.size() == orbit.size()) {
        series_[s][c].symmetric_weight =
            members.front().member.weight * static_cast<double>(orbit.size()) / factorial;
      } else {
        for (const auto& m : members) series_[s][c].members.push_back(m.member);
      }
    }
  }
}

void StaticEvolver::step() {
  const auto count = static_cast<std::int64_t>(classes_.size());
#pragma omp parallel
  {
    Eigen::MatrixXd next;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < count; ++c) {
      auto& cls = classes_[static_cast<std::size_t>(c)];
      if (cls.channel.terms().empty()) continue;  // identity
      cls.channel.apply_right(cls.power, next);
      cls.power.swap(next);
    }
  }
  ++power_;
}

PauliTransferMatrix StaticEvolver::average(std::size_t s) const {
  const auto& per_class = series_.at(s);
  PauliTransferMatrix out(n_);
  Eigen::MatrixXd& y = out.matrix();
  const Eigen::Index dim = y.rows();

  const bool any_symmetric = std::any_of(per_class.begin(), per_class.end(),
                                         [](const ClassSeries& cs) { return cs.symmetric_weight != 0.0; });
  if (any_symmetric) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
#pragma omp parallel for schedule(static)
    for (Eigen::Index col = 0; col < dim; ++col) {
      for (std::size_t c = 0; c < classes_.size(); ++c) {
        const double w = per_class[c].symmetric_weight;
        if (w != 0.0) b.col(col) += w * classes_[c].power.col(col);
      }
    }
    for (const auto& pidx : perms_) {
#pragma omp parallel for schedule(static)
      for (Eigen::Index col = 0; col < dim; ++col) {
        const auto dst = static_cast<Eigen::Index>(pidx[static_cast<std::size_t>(col)]);
        for (Eigen::Index row = 0; row < dim; ++row) {
          y(static_cast<Eigen::Index>(pidx[static_cast<std::size_t>(row)]), dst) += b(row, col);
        }
      }
    }
  }

  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const Eigen::MatrixXd& x = classes_[c].power;
    for (const Member& m : per_class[c].members) {
      const auto& pidx = perms_[m.perm];
#pragma omp parallel for schedule(static)
      for (Eigen::Index col = 0; col < dim; ++col) {
        const auto dst = static_cast<Eigen::Index>(pidx[static_cast<std::size_t>(col)]);
        for (Eigen::Index row = 0; row < dim; ++row) {
          y(static_cast<Eigen::Index>(pidx[static_cast<std::size_t>(row)]), dst) += m.weight * x(row, col);
        }
      }
    }
  }
  return out;
}

PauliTransferMatrix static_average_iterate(int n, double p, int r, const StaticOptions& options) {
  if (r < 0) {
    throw std::domain_error("iteration count must be non-negative");
  }
  StaticEvolver evolver(n, {make_ensemble(n, p, options)});
  for (int i = 0; i < r; ++i) evolver.step();
  return evolver.average(0);
}

std::vector<TracePoint> dynamic_trace(int n, double p, int r_max) {
  if (r_max < 0) {
    throw std::domain_error("r_max must be non-negative");
  }
  const RandomUnitaryPtm phi = averaged_channel_ptm(n, p);
  const PauliTransferMatrix limit = asymptotic_channel(n);
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(phi.dim(), phi.dim());
  Eigen::MatrixXd next;
  std::vector<TracePoint> out;
  out.reserve(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0;; ++r) {
    out.push_back({r, (x - limit.matrix()).norm()});
    if (r == r_max) break;
    phi.apply_right(x, next);
    x.swap(next);
  }
  return out;
}

std::vector<std::vector<TracePoint>> static_traces(int n, const std::vector<double>& ps, int r_max,
                                                   const StaticOptions& options) {
  if (r_max < 0) {
    throw std::domain_error("r_max must be non-negative");
  }
  std::vector<GraphEnsemble> series;
  for (double p : ps) series.push_back(make_ensemble(n, p, options));
  const PauliTransferMatrix limit = asymptotic_channel(n);
  StaticEvolver evolver(n, series);
  std::vector<std::vector<TracePoint>> out(ps.size());
  for (int r = 0;; ++r) {
    for (std::size_t s = 0; s < ps.size(); ++s) {
      out[s].push_back({r, hs_distance(evolver.average(s), limit)});
    }
    if (r == r_max) break;
    evolver.step();
  }
  return out;
}

std::vector<TracePoint> convergence_trace(int n, double p, NetworkMode mode, int r_max,
                                          const StaticOptions& options) {
  if (n < 2) {
    throw std::domain_error("convergence trace needs n >= 2");
  }
  if (mode == NetworkMode::dynamic) {
    return dynamic_trace(n, p, r_max);
  }
  return static_traces(n, {p}, r_max, options).front();
}

}  // namespace randnet
