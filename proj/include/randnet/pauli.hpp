#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace randnet {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// An n-qubit Pauli word. Qubit 0 is the leftmost letter and the most
/// significant base-4 digit of the index, matching the Kronecker ordering
/// sigma_0 (x) sigma_1 (x) ... of the 2^n-dimensional matrix.
class PauliString {
 public:
  PauliString(int n, std::uint64_t index);
  static PauliString from_word(std::string_view word);
  static PauliString identity(int n) { return PauliString(n, 0); }

  int qubits() const noexcept { return n_; }
  std::uint64_t index() const noexcept { return index_; }
  PauliLetter letter(int qubit) const;
  PauliString with_letter(int qubit, PauliLetter letter) const;
  std::string word() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_;
  std::uint64_t index_;
};

struct SignedPauli {
  PauliString pauli;
  int sign;  // +1 or -1

  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
};

/// U P U^dagger for the CNOT U with the given control and target qubits.
/// Throws std::domain_error when control == target or either is out of range.
SignedPauli cnot_conjugate(const PauliString& pauli, int control, int target);
SignedPauli cnot_conjugate(const SignedPauli& pauli, int control, int target);

/// Dense 2^n x 2^n matrix of a Pauli word (test oracle and small-n helper).
Eigen::MatrixXcd pauli_matrix(const PauliString& pauli);

/// Dense CNOT |0><0|_c (x) I_t + |1><1|_c (x) X_t on n qubits.
Eigen::MatrixXd cnot_matrix(int n, int control, int target);

/// Action of a Pauli word on computational basis state |k>: returns
/// (k', phase) with P|k> = phase |k'>.
std::pair<std::uint64_t, std::complex<double>> pauli_on_basis(const PauliString& pauli,
                                                               std::uint64_t k);

/// The transfer matrix of a CNOT conjugation as a signed permutation:
/// (S v)[a] = sign[a] * v[image[a]]. CNOT is self-inverse, so `image` is an
/// involution and S is symmetric.
struct SignedPermutation {
  std::vector<std::uint32_t> image;
  std::vector<std::int8_t> sign;

  std::size_t size() const noexcept { return image.size(); }
};

SignedPermutation cnot_permutation(int n, int control, int target);

/// Relabels qubits: letter at qubit q moves to qubit perm[q].
std::uint64_t permute_pauli_index(int n, std::uint64_t index, const std::vector<int>& perm);

}  // namespace randnet
