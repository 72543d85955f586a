#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace randnet {

/// An exact rational probability in [0, 1].
class Prob {
 public:
  Prob() = default;
  /// Throws std::domain_error if value lies outside [0, 1].
  explicit Prob(mpq_class value);
  Prob(long num, unsigned long den);

  const mpq_class& value() const noexcept { return value_; }
  double to_double() const { return value_.get_d(); }

  /// Strictly inside (0, 1).
  bool is_interior() const { return value_ > 0 && value_ < 1; }

  std::string str() const { return value_.get_str(); }

  friend bool operator==(const Prob& a, const Prob& b) { return a.value_ == b.value_; }

 private:
  mpq_class value_{0};
};

/// Result of parsing a probability given on the command line.
struct ParsedProb {
  Prob exact;      // rational value ("a/b" or an integer) or the decimal read as a rational
  double approx;   // float projection
  bool is_exact;   // false when the input was written as a decimal
};

/// Accepts "a/b", integers, and decimals ("0.3"). Throws std::invalid_argument
/// on malformed text and std::domain_error outside [0, 1].
ParsedProb parse_prob(std::string_view text);

/// Throws std::domain_error unless 0 < p < 1.
void require_interior(const mpq_class& p);
void require_interior(double p);

}  // namespace randnet
