#include "randnet/channel.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "randnet/errors.hpp"

namespace randnet {

namespace {

void check_qubits(int n) {
  if (n < 1) {
    throw std::domain_error("qubit count must be positive");
  }
  if (n > kMaxQubits) {
    throw CostGuardError("qubit networks are limited to n <= " + std::to_string(kMaxQubits));
  }
}

Eigen::Index pauli_dim(int n) { return Eigen::Index{1} << (2 * n); }
Eigen::Index hilbert_dim(int n) { return Eigen::Index{1} << n; }

}  // namespace

PauliTransferMatrix::PauliTransferMatrix(int n)
    : n_(n), m_(Eigen::MatrixXd::Zero(pauli_dim(n), pauli_dim(n))) {
  check_qubits(n);
}

PauliTransferMatrix::PauliTransferMatrix(int n, Eigen::MatrixXd m) : n_(n), m_(std::move(m)) {
  check_qubits(n);
  if (m_.rows() != pauli_dim(n) || m_.cols() != pauli_dim(n)) {
    throw std::invalid_argument("transfer matrix must be 4^n x 4^n");
  }
}

PauliTransferMatrix PauliTransferMatrix::identity(int n) {
  check_qubits(n);
  return PauliTransferMatrix(n, Eigen::MatrixXd::Identity(pauli_dim(n), pauli_dim(n)));
}

PauliTransferMatrix operator*(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
  if (a.n_ != b.n_) {
    throw std::invalid_argument("composing channels on different qubit counts");
  }
  return PauliTransferMatrix(a.n_, a.m_ * b.m_);
}

// States ---------------------------------------------------------------------

PauliStateVector PauliStateVector::from_density(const Eigen::MatrixXcd& rho) {
  const Eigen::Index d = rho.rows();
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d || rho.cols() != d || n < 1) {
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
  }
  check_qubits(n);
  PauliStateVector out{n, Eigen::VectorXd::Zero(pauli_dim(n))};
  for (Eigen::Index a = 0; a < pauli_dim(n); ++a) {
    const PauliString s(n, static_cast<std::uint64_t>(a));
    std::complex<double> tr = 0.0;
    // Tr(sigma rho) = sum_k <k|sigma rho|k> = sum_k phase_k rho(k, k') with sigma|k> = phase_k |k'>,
    // using <k| sigma = (sigma |k>)^dagger for Hermitian sigma.
    for (Eigen::Index k = 0; k < d; ++k) {
      auto [kp, phase] = pauli_on_basis(s, static_cast<std::uint64_t>(k));
      tr += std::conj(phase) * rho(static_cast<Eigen::Index>(kp), k);
    }
    out.coeffs[a] = tr.real() / static_cast<double>(d);
  }
  return out;
}

PauliStateVector PauliStateVector::from_pure(const Eigen::VectorXcd& psi) {
  return from_density(psi * psi.adjoint());
}

PauliStateVector PauliStateVector::zero_state(int n) {
  check_qubits(n);
  // |0><0| per qubit is (I + Z)/2: coefficient 2^-n on every word over {I, Z}.
  PauliStateVector out{n, Eigen::VectorXd::Zero(pauli_dim(n))};
  for (Eigen::Index a = 0; a < pauli_dim(n); ++a) {
    const PauliString s(n, static_cast<std::uint64_t>(a));
    bool ok = true;
    for (int q = 0; q < n && ok; ++q) {
      const PauliLetter l = s.letter(q);
      ok = l == PauliLetter::I || l == PauliLetter::Z;
    }
    if (ok) out.coeffs[a] = 1.0 / static_cast<double>(hilbert_dim(n));
  }
  return out;
}

PauliStateVector PauliStateVector::plus_state(int n) {
  check_qubits(n);
  PauliStateVector out{n, Eigen::VectorXd::Zero(pauli_dim(n))};
  for (Eigen::Index a = 0; a < pauli_dim(n); ++a) {
    const PauliString s(n, static_cast<std::uint64_t>(a));
    bool ok = true;
    for (int q = 0; q < n && ok; ++q) {
      const PauliLetter l = s.letter(q);
      ok = l == PauliLetter::I || l == PauliLetter::X;
    }
    if (ok) out.coeffs[a] = 1.0 / static_cast<double>(hilbert_dim(n));
  }
  return out;
}

PauliStateVector PauliStateVector::maximally_mixed(int n) {
  check_qubits(n);
  PauliStateVector out{n, Eigen::VectorXd::Zero(pauli_dim(n))};
  out.coeffs[0] = 1.0 / static_cast<double>(hilbert_dim(n));
  return out;
}

Eigen::MatrixXcd PauliStateVector::to_density() const {
  const Eigen::Index d = hilbert_dim(n);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
    if (coeffs[a] == 0.0) continue;
    const PauliString s(n, static_cast<std::uint64_t>(a));
    for (Eigen::Index k = 0; k < d; ++k) {
      auto [kp, phase] = pauli_on_basis(s, static_cast<std::uint64_t>(k));
      rho(static_cast<Eigen::Index>(kp), k) += coeffs[a] * phase;
    }
  }
  return rho;
}

double PauliStateVector::purity() const {
  return static_cast<double>(hilbert_dim(n)) * coeffs.squaredNorm();
}

// Sparse channels -------------------------------------------------------------

RandomUnitaryPtm::RandomUnitaryPtm(int n, double identity_weight, std::vector<WeightedCnot> terms)
    : n_(n), identity_weight_(identity_weight), terms_(std::move(terms)) {
  check_qubits(n);
  for (const auto& t : terms_) {
    if (static_cast<Eigen::Index>(t.action.size()) != dim()) {
      throw std::invalid_argument("CNOT action has the wrong dimension");
    }
  }
}

void RandomUnitaryPtm::apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
  if (v.size() != dim()) {
    throw std::invalid_argument("state dimension does not match channel");
  }
  out = identity_weight_ * v;
  for (const auto& t : terms_) {
    const auto* image = t.action.image.data();
    const auto* sign = t.action.sign.data();
    for (Eigen::Index a = 0; a < dim(); ++a) {
      out[a] += t.weight * sign[a] * v[image[a]];
    }
  }
}

void RandomUnitaryPtm::apply_right(const Eigen::MatrixXd& x, Eigen::MatrixXd& out) const {
  if (x.cols() != dim()) {
    throw std::invalid_argument("matrix dimension does not match channel");
  }
  out.resize(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < dim(); ++b) {
    auto col = out.col(b);
    col = identity_weight_ * x.col(b);
    for (const auto& t : terms_) {
      const double w = t.weight * t.action.sign[static_cast<std::size_t>(b)];
      col += w * x.col(static_cast<Eigen::Index>(t.action.image[static_cast<std::size_t>(b)]));
    }
  }
}

PauliTransferMatrix RandomUnitaryPtm::dense() const {
  Eigen::MatrixXd m = identity_weight_ * Eigen::MatrixXd::Identity(dim(), dim());
  for (const auto& t : terms_) {
    for (Eigen::Index a = 0; a < dim(); ++a) {
      m(a, static_cast<Eigen::Index>(t.action.image[static_cast<std::size_t>(a)])) +=
          t.weight * t.action.sign[static_cast<std::size_t>(a)];
    }
  }
  return PauliTransferMatrix(n_, std::move(m));
}

ChannelSpec ChannelSpec::uniform(DirectedGraph g) {
  ChannelSpec spec{std::move(g), {}};
  const auto arcs = spec.graph.arcs();
  for (const auto& arc : arcs) {
    spec.weights[arc] = 1.0 / static_cast<double>(arcs.size());
  }
  return spec;
}

ChannelSpec ChannelSpec::random_weights(DirectedGraph g, std::mt19937_64& rng) {
  ChannelSpec spec{std::move(g), {}};
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  double total = 0.0;
  for (const auto& arc : spec.graph.arcs()) {
    const double w = dist(rng);
    spec.weights[arc] = w;
    total += w;
  }
  for (auto& [arc, w] : spec.weights) w /= total;
  return spec;
}

void ChannelSpec::validate() const {
  const auto arcs = graph.arcs();
  if (arcs.size() != weights.size()) {
    throw std::invalid_argument("weights must cover exactly the graph's arcs");
  }
  double total = 0.0;
  for (const auto& arc : arcs) {
    auto it = weights.find(arc);
    if (it == weights.end()) {
      throw std::invalid_argument("missing weight for an arc");
    }
    if (!(it->second > 0.0)) {
      throw std::invalid_argument("link weights must be positive");
    }
    total += it->second;
  }
  if (!arcs.empty() && std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("link weights must sum to 1");
  }
}

RandomUnitaryPtm channel_ptm(const ChannelSpec& spec) {
  const int n = spec.graph.vertex_count();
  check_qubits(n);
  if (spec.graph.arc_count() == 0) {
    throw std::invalid_argument("no links to apply");
  }
  spec.validate();
  std::vector<WeightedCnot> terms;
  for (const auto& [arc, w] : spec.weights) {
    terms.push_back({arc.first, arc.second, w, cnot_permutation(n, arc.first, arc.second)});
  }
  return RandomUnitaryPtm(n, 0.0, std::move(terms));
}

RandomUnitaryPtm averaged_channel_ptm(int n, double p) {
  check_qubits(n);
  if (n < 2) {
    throw std::domain_error("averaged channel needs n >= 2");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("edge probability outside [0,1]");
  }
  const int links = n * (n - 1);
  const double empty = p >= 1.0 ? 0.0 : std::exp(links * std::log1p(-p));
  const double per_link = (1.0 - empty) / links;
  std::vector<WeightedCnot> terms;
  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < n; ++t) {
      if (c != t) terms.push_back({c, t, per_link, cnot_permutation(n, c, t)});
    }
  }
  return RandomUnitaryPtm(n, empty, std::move(terms));
}

// Asymptotics -----------------------------------------------------------------

namespace {

// Orthonormal basis of the attractor subspace: e0 = |0...0>, e1 = the part of
// |+...+> orthogonal to e0, which is uniform on the 2^n - 1 nonzero strings.
std::pair<Eigen::VectorXd, Eigen::VectorXd> attractor_basis(int n) {
  const Eigen::Index d = hilbert_dim(n);
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(d);
  e0[0] = 1.0;
  Eigen::VectorXd e1 = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d - 1)));
  e1[0] = 0.0;
  return {e0, e1};
}

}  // namespace

Eigen::MatrixXd attractor_projector(int n) {
  check_qubits(n);
  auto [e0, e1] = attractor_basis(n);
  return e0 * e0.transpose() + e1 * e1.transpose();
}

RationalTransferMatrix asymptotic_channel_rational(int n) {
  check_qubits(n);
  if (n < 2) {
    throw std::domain_error("asymptotic channel needs n >= 2");
  }
  const Eigen::Index d = hilbert_dim(n);
  const Eigen::Index dim = pauli_dim(n);

  // With the unnormalized basis f0 = |0...0>, f1 = sum of the nonzero strings,
  // P = f0 f0^T + f1 f1^T / (d-1) and h[a](i,j) = <f_i| sigma_a |f_j> is a
  // Gaussian integer. Every entry of the map is then an integer over
  // L = d (d-1)^2 (d-2).
  using Gauss = std::complex<long long>;
  std::vector<std::array<Gauss, 4>> h(static_cast<std::size_t>(dim));
  for (Eigen::Index a = 0; a < dim; ++a) {
    const PauliString s(n, static_cast<std::uint64_t>(a));
    std::array<Gauss, 4> ha{};
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto [kp, phase] = pauli_on_basis(s, static_cast<std::uint64_t>(k));
      const Gauss ph(std::llround(phase.real()), std::llround(phase.imag()));
      const int i = kp == 0 ? 0 : 1;
      const int j = k == 0 ? 0 : 1;
      ha[static_cast<std::size_t>(2 * i + j)] += ph;
    }
    h[static_cast<std::size_t>(a)] = ha;
  }

  const long long dd = d;
  RationalTransferMatrix out;
  out.n = n;
  out.denominator = dd * (dd - 1) * (dd - 1) * (dd - 2);
  out.numerators.resize(static_cast<std::size_t>(dim * dim));
  // (d-1) Tr(sigma_a (I - P))
  std::vector<long long> trace_out(static_cast<std::size_t>(dim));
  for (Eigen::Index a = 0; a < dim; ++a) {
    const auto& ha = h[static_cast<std::size_t>(a)];
    trace_out[static_cast<std::size_t>(a)] = (a == 0 ? dd * (dd - 1) : 0) - (dd - 1) * ha[0].real() - ha[3].real();
  }
  for (Eigen::Index a = 0; a < dim; ++a) {
    const auto& ha = h[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto& hb = h[static_cast<std::size_t>(b)];
      // Tr(sigma_a P sigma_b P) = sum_ij h_a(i,j) h_b(j,i) c_i c_j, c = (1, 1/(d-1))
      const long long both0 = (ha[0] * hb[0]).real();
      const long long mixed = (ha[1] * hb[2] + ha[2] * hb[1]).real();
      const long long both1 = (ha[3] * hb[3]).real();
      out.numerators[static_cast<std::size_t>(a * dim + b)] =
          (dd - 2) * ((dd - 1) * (dd - 1) * both0 + (dd - 1) * mixed + both1) +
          trace_out[static_cast<std::size_t>(a)] * trace_out[static_cast<std::size_t>(b)];
    }
  }
  return out;
}

PauliTransferMatrix asymptotic_channel(int n) {
  const RationalTransferMatrix exact = asymptotic_channel_rational(n);
  const Eigen::Index dim = pauli_dim(n);
  const double denominator = static_cast<double>(exact.denominator);
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      // Both operands are exact doubles, so the quotient is correctly rounded.
      m(a, b) = static_cast<double>(exact.numerators[static_cast<std::size_t>(a * dim + b)]) / denominator;
    }
  }
  return PauliTransferMatrix(n, std::move(m));
}

double hs_distance(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
  if (a.qubits() != b.qubits()) {
    throw std::invalid_argument("Hilbert-Schmidt distance between different qubit counts");
  }
  return (a.matrix() - b.matrix()).norm();
}

PauliTransferMatrix channel_power(const RandomUnitaryPtm& m, int r) {
  if (r < 0) {
    throw std::domain_error("iteration count must be non-negative");
  }
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(m.dim(), m.dim());
  Eigen::MatrixXd next;
  for (int i = 0; i < r; ++i) {
    m.apply_right(x, next);
    x.swap(next);
  }
  return PauliTransferMatrix(m.qubits(), std::move(x));
}

PauliStateVector evolve_state(const PauliStateVector& rho, const RandomUnitaryPtm& m, int r) {
  if (rho.n != m.qubits()) {
    throw std::invalid_argument("state and channel act on different qubit counts");
  }
  if (r < 0) {
    throw std::domain_error("iteration count must be non-negative");
  }
  PauliStateVector out = rho;
  Eigen::VectorXd next;
  for (int i = 0; i < r; ++i) {
    m.apply(out.coeffs, next);
    out.coeffs.swap(next);
  }
  return out;
}

PauliStateVector evolve_state(const PauliStateVector& rho, const PauliTransferMatrix& m, int r) {
  if (rho.n != m.qubits()) {
    throw std::invalid_argument("state and channel act on different qubit counts");
  }
  if (r < 0) {
    throw std::domain_error("iteration count must be non-negative");
  }
  PauliStateVector out = rho;
  for (int i = 0; i < r; ++i) {
    out.coeffs = m.matrix() * out.coeffs;
  }
  return out;
}

PauliStateVector named_state(int n, std::string_view name) {
  if (name == "zero") return PauliStateVector::zero_state(n);
  if (name == "plus") return PauliStateVector::plus_state(n);
  if (name == "mixed") return PauliStateVector::maximally_mixed(n);
  throw std::invalid_argument("unknown state name: " + std::string(name));
}

}  // namespace randnet
