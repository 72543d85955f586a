#include "randnet/exactprob.hpp"

#include "randnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace randnet {

namespace {

template <class Scalar>
Scalar from_integer(const mpz_class& z) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return z.get_d();
  } else {
    return Scalar(z);
  }
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

template <class Scalar>
ConnectivitySession<Scalar>::ConnectivitySession(Scalar p) : p_(std::move(p)) {
  require_interior(p_);
  q_ = Scalar(1) - p_;
  q_powers_.push_back(Scalar(1));
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::non_edge_power(long e) {
  if (e < 0) {
    throw std::domain_error("negative exponent");
  }
  while (static_cast<long>(q_powers_.size()) <= e) {
    if constexpr (std::is_same_v<Scalar, double>) {
      // Each entry from the logarithm directly, so errors do not accumulate.
      q_powers_.push_back(std::exp(static_cast<double>(q_powers_.size()) * std::log1p(-p_)));
    } else {
      q_powers_.push_back(q_powers_.back() * q_);
    }
  }
  return q_powers_[static_cast<std::size_t>(e)];
}

template <class Scalar>
std::size_t ConnectivitySession<Scalar>::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : k) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

template <class Scalar>
typename ConnectivitySession<Scalar>::Key ConnectivitySession<Scalar>::key_of(const SizeCounts& counts) {
  Key key{};
  std::size_t slot = 0;
  for (auto [size, count] : counts) {
    const std::uint64_t field = static_cast<std::uint64_t>(size) << 7 | static_cast<std::uint64_t>(count);
    key[slot / 4] |= field << (14 * (slot % 4));
    ++slot;
  }
  return key;
}

template <class Scalar>
const Scalar& ConnectivitySession<Scalar>::choose(int n, int k) {
  while (static_cast<int>(pascal_.size()) <= n) {
    const std::size_t row = pascal_.size();
    std::vector<Scalar> next(row + 1, Scalar(1));
    for (std::size_t j = 1; j < row; ++j) next[j] = pascal_[row - 1][j - 1] + pascal_[row - 1][j];
    pascal_.push_back(std::move(next));
  }
  return pascal_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::acyclic_interconnect(const Partition& part) {
  if (part.total() > kMaxTotal) {
    throw CostGuardError("partition total exceeds " + std::to_string(kMaxTotal));
  }
  SizeCounts counts;
  for (auto [size, count] : part.multiplicities()) counts.emplace_back(size, count);
  return acyclic_from_counts(counts, part.total());
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::acyclic_from_counts(const SizeCounts& counts, long n) {
  if (counts.empty() || (counts.size() == 1 && counts[0].second == 1)) {
    return Scalar(1);
  }
  const Key key = key_of(counts);
  if (auto it = pa_memo_.find(key); it != pa_memo_.end()) {
    return it->second;
  }

  std::vector<int> chosen(counts.size(), 0);
  Scalar sum(0);
  SizeCounts residual;
  residual.reserve(counts.size());

  // Odometer over distinct sub-multisets of sink dicomponents.
  for (;;) {
    std::size_t pos = 0;
    while (pos < chosen.size() && chosen[pos] == counts[pos].second) {
      chosen[pos] = 0;
      ++pos;
    }
    if (pos == chosen.size()) break;
    ++chosen[pos];

    long l = 0, m = 0, sq = 0;
    Scalar coefficient(1);
    residual.clear();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const long size = counts[i].first;
      const long c = chosen[i];
      l += c;
      m += c * size;
      sq += c * size * size;
      if (c != 0 && c != counts[i].second) {
        coefficient *= choose(counts[i].second, static_cast<int>(c));
      }
      if (c != counts[i].second) residual.emplace_back(counts[i].first, counts[i].second - static_cast<int>(c));
    }
    // Sinks send no arc to the residual (m(n-m)) nor to each other (m^2 - sq).
    const long exponent = m * (n - m) + m * m - sq;
    Scalar term = coefficient * non_edge_power(exponent) * acyclic_from_counts(residual, n - m);
    if (l % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  pa_memo_.emplace(key, sum);
  return sum;
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::disconnected(int n) {
  if (n < 1) {
    throw std::domain_error("vertex count must be positive");
  }
  return Scalar(1) - strongly_connected(n);
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::strongly_connected(int n) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return strongly_connected_grouped(n);
  } else {
    return strongly_connected_by_partitions(n);
  }
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::strongly_connected_by_partitions(int n) {
  if (n < 1) {
    throw std::domain_error("vertex count must be positive");
  }
  if (n == 1) {
    return Scalar(1);
  }
  if (n > kMaxTotal) {
    throw CostGuardError("vertex count exceeds " + std::to_string(kMaxTotal));
  }
  if (auto it = pc_memo_.find(n); it != pc_memo_.end()) {
    return it->second;
  }
  Scalar pd(0);
  for (const Partition& part : enumerate_partitions(n, 2)) {
    Scalar term = from_integer<Scalar>(count_labeled_decompositions(part));
    for (int size : part.parts()) {
      term *= strongly_connected_by_partitions(size);
    }
    term *= acyclic_interconnect(part);
    pd += term;
  }
  Scalar pc = Scalar(1) - pd;
  pc_memo_.emplace(n, pc);
  return pc;
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::strongly_connected_grouped(int n) {
  if (n < 1) {
    throw std::domain_error("vertex count must be positive");
  }
  if (grouped_pc_.empty()) {
    grouped_pc_.push_back(Scalar(0));
    sink_weight_.push_back(Scalar(0));
  }
  while (static_cast<int>(grouped_pc_.size()) <= n) {
    const int m = static_cast<int>(grouped_pc_.size());
    Scalar d(1);
    for (int t = 1; t < m; ++t) {
      d -= choose(m, t) * sink_weight_[static_cast<std::size_t>(t)] * non_edge_power(static_cast<long>(t) * (m - t));
    }
    Scalar s = d;
    for (int j = 1; j < m; ++j) {
      s += choose(m - 1, j - 1) * grouped_pc_[static_cast<std::size_t>(j)] *
           sink_weight_[static_cast<std::size_t>(m - j)] * non_edge_power(2L * j * (m - j));
    }
    sink_weight_.push_back(d);
    grouped_pc_.push_back(s);
  }
  return grouped_pc_[static_cast<std::size_t>(n)];
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::disconnected_undirected(int n) {
  if (n < 1) {
    throw std::domain_error("vertex count must be positive");
  }
  if (n == 1) {
    return Scalar(0);
  }
  if (auto it = pd_un_memo_.find(n); it != pd_un_memo_.end()) {
    return it->second;
  }
  Scalar sum(0);
  for (int k = 1; k < n; ++k) {
    const long e = static_cast<long>(k) * (n - k);
    if constexpr (std::is_same_v<Scalar, double>) {
      sum += std::exp(log_binomial(n - 1, k - 1) + static_cast<double>(e) * std::log1p(-p_)) *
             connected_undirected(k);
    } else {
      sum += Scalar(binomial(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(k - 1))) *
             connected_undirected(k) * non_edge_power(e);
    }
  }
  pd_un_memo_.emplace(n, sum);
  return sum;
}

template <class Scalar>
Scalar ConnectivitySession<Scalar>::connected_undirected(int n) {
  if (auto it = pc_un_memo_.find(n); it != pc_un_memo_.end()) {
    return it->second;
  }
  Scalar pc = Scalar(1) - disconnected_undirected(n);
  pc_un_memo_.emplace(n, pc);
  return pc;
}

template class ConnectivitySession<mpq_class>;
template class ConnectivitySession<double>;

Prob prob_acyclic_interconnect(const Partition& part, const Prob& p) {
  ExactSession session(p.value());
  return Prob(session.acyclic_interconnect(part));
}

Prob prob_disconnected(int n, const Prob& p) {
  ExactSession session(p.value());
  return Prob(session.disconnected(n));
}

Prob prob_strongly_connected(int n, const Prob& p) {
  ExactSession session(p.value());
  return Prob(session.strongly_connected(n));
}

Prob prob_connected_undirected(int n, const Prob& p) {
  ExactSession session(p.value());
  return Prob(session.connected_undirected(n));
}

double lower_bound_pc(int n, double p) {
  if (n < 2) {
    throw std::domain_error("lower bound needs n >= 2");
  }
  if (p >= 1.0) {
    return 1.0;
  }
  const double log_term = 2.0 * std::log(n - 1.0) + (n - 1.0) * std::log1p(-p * p);
  return 1.0 - std::exp(log_term);
}

double bound_term(int n, int k, double p) {
  if (k < 1 || k >= n) {
    throw std::domain_error("bound term index must satisfy 1 <= k < n");
  }
  return std::exp(log_binomial(n - 1, k - 1) +
                  static_cast<double>(k) * (n - k) * std::log1p(-p));
}

namespace {

template <class Session, class ToDouble>
PcCurve build_curve(int n_max, Session& session, double p, ToDouble to_double) {
  if (n_max < 1) {
    throw std::domain_error("n_max must be positive");
  }
  PcCurve curve;
  curve.argmin_n = 1;
  double best = 2.0;
  for (int n = 1; n <= n_max; ++n) {
    const double pc = to_double(session.strongly_connected(n));
    const double bound = n >= 2 ? lower_bound_pc(n, p) : 1.0;
    curve.points.push_back({n, pc, bound});
    if (pc < best) {
      best = pc;
      curve.argmin_n = n;
    }
  }
  return curve;
}

}  // namespace

PcCurve pc_curve(int n_max, const Prob& p) {
  ExactSession session(p.value());
  return build_curve(n_max, session, p.to_double(), [](const mpq_class& v) { return v.get_d(); });
}

PcCurve pc_curve(int n_max, double p) {
  FloatSession session(p);
  return build_curve(n_max, session, p, [](double v) { return v; });
}

}  // namespace randnet
