#include "randnet/pauli.hpp"

#include <stdexcept>

namespace randnet {

namespace {

constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};

int shift_of(int n, int qubit) { return 2 * (n - 1 - qubit); }

bool x_bit(PauliLetter l) { return l == PauliLetter::X || l == PauliLetter::Y; }
bool z_bit(PauliLetter l) { return l == PauliLetter::Z || l == PauliLetter::Y; }

PauliLetter from_bits(bool x, bool z) {
  if (x) return z ? PauliLetter::Y : PauliLetter::X;
  return z ? PauliLetter::Z : PauliLetter::I;
}

}  // namespace

PauliString::PauliString(int n, std::uint64_t index) : n_(n), index_(index) {
  if (n < 1 || n > 31) {
    throw std::domain_error("Pauli words need 1 <= n <= 31 qubits");
  }
  if (index >> (2 * n)) {
    throw std::out_of_range("Pauli index out of range");
  }
}

PauliString PauliString::from_word(std::string_view word) {
  std::uint64_t index = 0;
  for (char c : word) {
    int v;
    switch (c) {
      case 'I': v = 0; break;
      case 'X': v = 1; break;
      case 'Y': v = 2; break;
      case 'Z': v = 3; break;
      default: throw std::invalid_argument("Pauli letters must be I, X, Y or Z");
    }
    index = 4 * index + static_cast<std::uint64_t>(v);
  }
  return PauliString(static_cast<int>(word.size()), index);
}

PauliLetter PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit out of range");
  return static_cast<PauliLetter>((index_ >> shift_of(n_, qubit)) & 3U);
}

PauliString PauliString::with_letter(int qubit, PauliLetter l) const {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit out of range");
  const int s = shift_of(n_, qubit);
  const std::uint64_t cleared = index_ & ~(std::uint64_t{3} << s);
  return PauliString(n_, cleared | (static_cast<std::uint64_t>(l) << s));
}

std::string PauliString::word() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int q = 0; q < n_; ++q) out.push_back(kLetters[static_cast<int>(letter(q))]);
  return out;
}

SignedPauli cnot_conjugate(const PauliString& pauli, int control, int target) {
  const int n = pauli.qubits();
  if (control == target) {
    throw std::domain_error("CNOT needs distinct control and target");
  }
  if (control < 0 || target < 0 || control >= n || target >= n) {
    throw std::domain_error("CNOT qubit out of range");
  }
  const PauliLetter lc = pauli.letter(control);
  const PauliLetter lt = pauli.letter(target);
  const bool xc = x_bit(lc), zc = z_bit(lc), xt = x_bit(lt), zt = z_bit(lt);
  // X propagates control -> target, Z propagates target -> control.
  const bool flip = xc && zt && !(xt ^ zc);
  const PauliString image =
      pauli.with_letter(control, from_bits(xc, zc ^ zt)).with_letter(target, from_bits(xt ^ xc, zt));
  return {image, flip ? -1 : 1};
}

SignedPauli cnot_conjugate(const SignedPauli& pauli, int control, int target) {
  SignedPauli out = cnot_conjugate(pauli.pauli, control, target);
  out.sign *= pauli.sign;
  return out;
}

std::pair<std::uint64_t, std::complex<double>> pauli_on_basis(const PauliString& pauli,
                                                               std::uint64_t k) {
  const int n = pauli.qubits();
  std::complex<double> phase{1.0, 0.0};
  std::uint64_t out = k;
  for (int q = 0; q < n; ++q) {
    const int bit_pos = n - 1 - q;
    const bool b = (k >> bit_pos) & 1U;
    switch (pauli.letter(q)) {
      case PauliLetter::I:
        break;
      case PauliLetter::X:
        out ^= std::uint64_t{1} << bit_pos;
        break;
      case PauliLetter::Y:
        out ^= std::uint64_t{1} << bit_pos;
        phase *= b ? std::complex<double>{0.0, -1.0} : std::complex<double>{0.0, 1.0};
        break;
      case PauliLetter::Z:
        if (b) phase = -phase;
        break;
    }
  }
  return {out, phase};
}

Eigen::MatrixXcd pauli_matrix(const PauliString& pauli) {
  const auto dim = static_cast<Eigen::Index>(1) << pauli.qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    auto [row, phase] = pauli_on_basis(pauli, static_cast<std::uint64_t>(k));
    m(static_cast<Eigen::Index>(row), k) = phase;
  }
  return m;
}

Eigen::MatrixXd cnot_matrix(int n, int control, int target) {
  if (control == target || control < 0 || target < 0 || control >= n || target >= n) {
    throw std::domain_error("invalid CNOT qubits");
  }
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
  const std::uint64_t cbit = std::uint64_t{1} << (n - 1 - control);
  const std::uint64_t tbit = std::uint64_t{1} << (n - 1 - target);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto ku = static_cast<std::uint64_t>(k);
    const std::uint64_t image = (ku & cbit) ? ku ^ tbit : ku;
    u(static_cast<Eigen::Index>(image), k) = 1.0;
  }
  return u;
}

SignedPermutation cnot_permutation(int n, int control, int target) {
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  SignedPermutation out;
  out.image.resize(dim);
  out.sign.resize(dim);
  for (std::uint64_t a = 0; a < dim; ++a) {
    const SignedPauli s = cnot_conjugate(PauliString(n, a), control, target);
    out.image[a] = static_cast<std::uint32_t>(s.pauli.index());
    out.sign[a] = static_cast<std::int8_t>(s.sign);
  }
  return out;
}

std::uint64_t permute_pauli_index(int n, std::uint64_t index, const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t l = (index >> shift_of(n, q)) & 3U;
    out |= l << shift_of(n, perm[static_cast<std::size_t>(q)]);
  }
  return out;
}

}  // namespace randnet
