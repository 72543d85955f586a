#include "randnet/partition.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace randnet {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int part : parts_) {
    if (part < 1) {
      throw std::invalid_argument("partition parts must be positive");
    }
    total_ += part;
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

std::vector<std::pair<int, int>> Partition::multiplicities() const {
  std::vector<std::pair<int, int>> out;
  for (int part : parts_) {
    if (!out.empty() && out.back().first == part) {
      ++out.back().second;
    } else {
      out.emplace_back(part, 1);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Partition& part) {
  os << '{';
  for (std::size_t i = 0; i < part.parts().size(); ++i) {
    if (i) os << ',';
    os << part.parts()[i];
  }
  return os << '}';
}

namespace {

void extend(int remaining, int max_part, std::vector<int>& prefix, int min_length,
            std::vector<Partition>& out) {
  if (remaining == 0) {
    if (static_cast<int>(prefix.size()) >= min_length) {
      out.emplace_back(prefix);
    }
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    extend(remaining - part, part, prefix, min_length, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n, int min_length) {
  std::vector<Partition> out;
  if (n < 1) {
    return out;
  }
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(n));
  extend(n, n, prefix, min_length, out);
  return out;
}

mpz_class count_labeled_decompositions(const Partition& part) {
  if (part.empty()) {
    return 1;
  }
  mpz_class count;
  mpz_fac_ui(count.get_mpz_t(), static_cast<unsigned long>(part.total()));
  mpz_class f;
  for (auto [size, mult] : part.multiplicities()) {
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(size));
    for (int i = 0; i < mult; ++i) {
      count /= f;
    }
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(mult));
    count /= f;
  }
  return count;
}

}  // namespace randnet
