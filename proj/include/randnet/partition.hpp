#pragma once

#include <compare>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace randnet {

/// A non-increasing sequence of positive integers. Each part is the vertex
/// count of one strongly connected dicomponent; the empty partition is the
/// base case of the acyclic-interconnection recursion.
class Partition {
 public:
  Partition() = default;

  /// Sorts `parts` non-increasing. Throws std::invalid_argument on a part < 1.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int total() const noexcept { return total_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }

  /// (part size, multiplicity) pairs, largest size first.
  std::vector<std::pair<int, int>> multiplicities() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Partition& part);

/// All partitions of n with at least `min_length` parts, in reverse
/// lexicographic order: {n-1,1} before {n-2,2} ... before {1,...,1}.
std::vector<Partition> enumerate_partitions(int n, int min_length);

/// Number of ways to split n labeled vertices into unlabeled groups with the
/// given sizes: n! / (prod n_i! * prod_s mult_s!). The empty partition counts 1.
mpz_class count_labeled_decompositions(const Partition& part);

}  // namespace randnet
