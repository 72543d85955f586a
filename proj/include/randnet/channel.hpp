#pragma once

// Random-unitary CNOT channels in the Pauli-transfer representation.
//
// A channel is stored as its real matrix M in the orthonormal basis
// sigma_a / sqrt(2^n): M[a][b] = 2^-n Tr(sigma_a Channel(sigma_b)). CNOT
// conjugation permutes Pauli words up to sign, so every CNOT channel is a
// convex combination of signed permutation matrices. Composition of channels
// is matrix multiplication and the Hilbert-Schmidt distance of two channels is
// the Frobenius norm of the difference.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "randnet/digraph.hpp"
#include "randnet/pauli.hpp"

namespace randnet {

/// Qubit networks above this size are refused; 4^6 = 4096 transfer-matrix rows.
inline constexpr int kMaxQubits = 6;

class PauliTransferMatrix {
 public:
  explicit PauliTransferMatrix(int n);  // zero matrix
  PauliTransferMatrix(int n, Eigen::MatrixXd m);
  static PauliTransferMatrix identity(int n);

  int qubits() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  Eigen::MatrixXd& matrix() noexcept { return m_; }

  /// Composition: (a * b)(rho) = a(b(rho)).
  friend PauliTransferMatrix operator*(const PauliTransferMatrix& a, const PauliTransferMatrix& b);

 private:
  int n_;
  Eigen::MatrixXd m_;
};

/// rho = sum_a coeffs[a] sigma_a, i.e. coeffs[a] = 2^-n Tr(sigma_a rho).
struct PauliStateVector {
  int n;
  Eigen::VectorXd coeffs;

  static PauliStateVector from_density(const Eigen::MatrixXcd& rho);
  static PauliStateVector from_pure(const Eigen::VectorXcd& psi);
  static PauliStateVector zero_state(int n);       // |0...0><0...0|
  static PauliStateVector plus_state(int n);       // |+...+><+...+|
  static PauliStateVector maximally_mixed(int n);  // I / 2^n

  Eigen::MatrixXcd to_density() const;
  double trace() const { return coeffs[0] * static_cast<double>(Eigen::Index{1} << n); }
  /// Tr(rho^2) = 2^n sum_a coeffs[a]^2
  double purity() const;
};

struct WeightedCnot {
  int control;
  int target;
  double weight;
  SignedPermutation action;
};

/// identity_weight * Identity + sum_l weight_l * S_l, kept in sparse form.
class RandomUnitaryPtm {
 public:
  RandomUnitaryPtm(int n, double identity_weight, std::vector<WeightedCnot> terms);

  int qubits() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << (2 * n_); }
  double identity_weight() const noexcept { return identity_weight_; }
  const std::vector<WeightedCnot>& terms() const noexcept { return terms_; }

  /// out = M v
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const;
  /// out = X M. M is symmetric, so repeated right multiplication from the
  /// identity yields M^r with contiguous column gathers.
  void apply_right(const Eigen::MatrixXd& x, Eigen::MatrixXd& out) const;

  PauliTransferMatrix dense() const;

 private:
  int n_;
  double identity_weight_;
  std::vector<WeightedCnot> terms_;
};

/// A graph plus the probability q_l with which each link's CNOT fires
/// (control = tail, target = head).
struct ChannelSpec {
  DirectedGraph graph;
  std::map<std::pair<int, int>, double> weights;

  static ChannelSpec uniform(DirectedGraph g);
  /// q_l drawn uniformly from (0.05, 1] and normalized.
  static ChannelSpec random_weights(DirectedGraph g, std::mt19937_64& rng);

  /// Throws std::invalid_argument unless weights are positive, sum to 1 and
  /// cover exactly the graph's arcs.
  void validate() const;
};

/// Phi_g(rho) = sum_l q_l U_l rho U_l^dagger. Throws std::invalid_argument
/// for a graph with no arcs or invalid weights.
RandomUnitaryPtm channel_ptm(const ChannelSpec& spec);

/// Phi = sum_g P_g Phi_g over G(n,p) with uniform q_l. The arcless graph
/// contributes the identity; every arc carries the same total weight, so
/// Phi = (1-p)^{n(n-1)} Identity + c sum_l S_l with c = (1 - (1-p)^{n(n-1)}) / (n(n-1)).
RandomUnitaryPtm averaged_channel_ptm(int n, double p);

/// Orthogonal projector (2^n x 2^n) onto span{|0...0>, |+...+>}.
Eigen::MatrixXd attractor_projector(int n);

/// Transfer matrix with entries numerators[a * 4^n + b] / denominator.
struct RationalTransferMatrix {
  int n = 0;
  std::vector<long long> numerators;
  long long denominator = 1;
};

/// rho -> P rho P + Tr((I-P) rho) / (2^n - 2) (I-P) in exact arithmetic; the
/// square roots of the attractor basis cancel, leaving rational entries.
/// Requires n >= 2.
RationalTransferMatrix asymptotic_channel_rational(int n);
/// The same map rounded entrywise to double.
PauliTransferMatrix asymptotic_channel(int n);

/// Frobenius norm of a - b. Throws std::invalid_argument on a size mismatch.
double hs_distance(const PauliTransferMatrix& a, const PauliTransferMatrix& b);

/// M^r as a dense matrix (r >= 0).
PauliTransferMatrix channel_power(const RandomUnitaryPtm& m, int r);

PauliStateVector evolve_state(const PauliStateVector& rho, const RandomUnitaryPtm& m, int r);
PauliStateVector evolve_state(const PauliStateVector& rho, const PauliTransferMatrix& m, int r);

/// Named initial states accepted by the command line: zero, plus, mixed.
PauliStateVector named_state(int n, std::string_view name);

}  // namespace randnet
