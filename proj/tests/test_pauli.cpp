#include <doctest.h>

#include <random>

#include "randnet/pauli.hpp"

using namespace randnet;

namespace {

// U P U^dagger with U the dense CNOT; returns (index, sign) by matching
// against every Pauli word, or (-1, 0) if the result is not a signed Pauli.
std::pair<long, int> dense_conjugate(const PauliString& p, int control, int target) {
  const int n = p.qubits();
  const Eigen::MatrixXd u = cnot_matrix(n, control, target);
  const Eigen::MatrixXcd image = u.cast<std::complex<double>>() * pauli_matrix(p) * u.transpose().cast<std::complex<double>>();
  const std::uint64_t words = std::uint64_t{1} << (2 * n);
  for (std::uint64_t i = 0; i < words; ++i) {
    const Eigen::MatrixXcd q = pauli_matrix(PauliString(n, i));
    if ((image - q).cwiseAbs().maxCoeff() == 0.0) return {static_cast<long>(i), 1};
    if ((image + q).cwiseAbs().maxCoeff() == 0.0) return {static_cast<long>(i), -1};
  }
  return {-1, 0};
}

}  // namespace

TEST_SUITE("pauli") {
  TEST_CASE("words and indices are a bijection with qubit 0 most significant") {
    CHECK(PauliString::from_word("IX").index() == 1);
    CHECK(PauliString::from_word("XI").index() == 4);
    CHECK(PauliString::from_word("ZY").index() == 14);
    CHECK(PauliString::identity(3).word() == "III");
    for (std::uint64_t i = 0; i < 64; ++i) {
      CHECK(PauliString::from_word(PauliString(3, i).word()).index() == i);
    }
    CHECK(PauliString::from_word("XYZ").letter(1) == PauliLetter::Y);
    CHECK(PauliString::from_word("XYZ").with_letter(0, PauliLetter::I).word() == "IYZ");
    CHECK_THROWS(PauliString::from_word("XQ"));
    CHECK_THROWS(PauliString(2, 16));
  }

  TEST_CASE("dense Pauli matrices follow the Kronecker order") {
    const Eigen::MatrixXcd xi = pauli_matrix(PauliString::from_word("XI"));
    // X on qubit 0 flips the most significant bit: |00> -> |10>.
    CHECK(xi(2, 0) == std::complex<double>(1, 0));
    const Eigen::MatrixXcd y = pauli_matrix(PauliString::from_word("Y"));
    CHECK(y(1, 0) == std::complex<double>(0, 1));
    CHECK(y(0, 1) == std::complex<double>(0, -1));
    for (std::uint64_t i = 0; i < 64; ++i) {
      const PauliString p(3, i);
      const Eigen::MatrixXcd m = pauli_matrix(p);
      for (std::uint64_t k = 0; k < 8; ++k) {
        const auto [k2, phase] = pauli_on_basis(p, k);
        CHECK(m(static_cast<Eigen::Index>(k2), static_cast<Eigen::Index>(k)) == phase);
      }
    }
  }

  TEST_CASE("conjugation examples") {
    CHECK(cnot_conjugate(PauliString::from_word("XI"), 0, 1) == SignedPauli{PauliString::from_word("XX"), 1});
    CHECK(cnot_conjugate(PauliString::from_word("II"), 0, 1) == SignedPauli{PauliString::from_word("II"), 1});
    CHECK(cnot_conjugate(PauliString::from_word("XZ"), 0, 1) == SignedPauli{PauliString::from_word("YY"), -1});
    CHECK(cnot_conjugate(PauliString::from_word("IZ"), 0, 1) == SignedPauli{PauliString::from_word("ZZ"), 1});
    CHECK(cnot_conjugate(PauliString::from_word("ZI"), 1, 0) == SignedPauli{PauliString::from_word("ZZ"), 1});
    CHECK_THROWS_AS(cnot_conjugate(PauliString::from_word("XZ"), 1, 1), std::domain_error);
    CHECK_THROWS_AS(cnot_conjugate(PauliString::from_word("XZ"), 0, 2), std::domain_error);
  }

  TEST_CASE("all 16 two-qubit Paulis match dense conjugation, both orientations") {
    for (std::uint64_t i = 0; i < 16; ++i) {
      const PauliString p(2, i);
      for (auto [c, t] : {std::pair{0, 1}, std::pair{1, 0}}) {
        CAPTURE(p.word());
        const SignedPauli got = cnot_conjugate(p, c, t);
        const auto [index, sign] = dense_conjugate(p, c, t);
        CHECK(static_cast<long>(got.pauli.index()) == index);
        CHECK(got.sign == sign);
      }
    }
  }

  TEST_CASE("100 random three-qubit Paulis match dense conjugation") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::uint64_t> word(0, 63);
    std::uniform_int_distribution<int> qubit(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
      const PauliString p(3, word(rng));
      const int c = qubit(rng);
      int t = qubit(rng);
      while (t == c) t = qubit(rng);
      const SignedPauli got = cnot_conjugate(p, c, t);
      const auto [index, sign] = dense_conjugate(p, c, t);
      CHECK(static_cast<long>(got.pauli.index()) == index);
      CHECK(got.sign == sign);
    }
  }

  TEST_CASE("conjugation is an involution and the permutation form agrees") {
    for (int n = 2; n <= 4; ++n) {
      for (int c = 0; c < n; ++c) {
        for (int t = 0; t < n; ++t) {
          if (c == t) continue;
          const SignedPermutation s = cnot_permutation(n, c, t);
          REQUIRE(s.size() == (std::size_t{1} << (2 * n)));
          for (std::uint64_t i = 0; i < s.size(); ++i) {
            const SignedPauli once = cnot_conjugate(PauliString(n, i), c, t);
            CHECK(cnot_conjugate(once, c, t) == SignedPauli{PauliString(n, i), 1});
            // (S v)[a] = sign[a] v[image[a]] with S symmetric: image[a] = U a U^dagger.
            CHECK(s.image[i] == once.pauli.index());
            CHECK(s.sign[i] == once.sign);
            CHECK(s.image[s.image[i]] == i);
          }
        }
      }
    }
  }

  TEST_CASE("qubit relabeling of Pauli indices") {
    const std::vector<int> swap{1, 0, 2};
    CHECK(permute_pauli_index(3, PauliString::from_word("XYZ").index(), swap) == PauliString::from_word("YXZ").index());
    const std::vector<int> rotate{1, 2, 0};
    CHECK(permute_pauli_index(3, PauliString::from_word("XIZ").index(), rotate) == PauliString::from_word("ZXI").index());
    // Relabeling commutes with conjugation: a CNOT on (c,t) becomes one on (perm c, perm t).
    for (std::uint64_t i = 0; i < 64; ++i) {
      const SignedPauli a = cnot_conjugate(PauliString(3, i), 0, 2);
      const SignedPauli b = cnot_conjugate(PauliString(3, permute_pauli_index(3, i, rotate)), 1, 0);
      CHECK(permute_pauli_index(3, a.pauli.index(), rotate) == b.pauli.index());
      CHECK(a.sign == b.sign);
    }
  }
}
