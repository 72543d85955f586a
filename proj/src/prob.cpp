#include "randnet/prob.hpp"

#include <cctype>
#include <stdexcept>

namespace randnet {

Prob::Prob(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ < 0 || value_ > 1) {
    throw std::domain_error("probability outside [0,1]: " + value_.get_str());
  }
}

Prob::Prob(long num, unsigned long den)
    : Prob(den == 0 ? throw std::domain_error("probability with zero denominator")
                    : mpq_class(num, den)) {}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

ParsedProb parse_prob(std::string_view text) {
  const std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational probability: " + s);
    }
    mpz_class d(den);
    if (d == 0) {
      throw std::invalid_argument("zero denominator: " + s);
    }
    Prob p(mpq_class(mpz_class(num), d));
    return {p, p.to_double(), true};
  }
  if (all_digits(s)) {
    Prob p{mpq_class(mpz_class(s))};
    return {p, p.to_double(), true};
  }
  // Decimal: digits '.' digits
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    throw std::invalid_argument("malformed probability: " + s);
  }
  const std::string whole = s.substr(0, dot);
  const std::string frac = s.substr(dot + 1);
  if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
    throw std::invalid_argument("malformed probability: " + s);
  }
  mpz_class num(whole.empty() ? std::string("0") : whole);
  mpz_class den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Prob p(mpq_class(num, den));
  return {p, std::stod(s), false};
}

void require_interior(const mpq_class& p) {
  if (!(p > 0 && p < 1)) {
    throw std::domain_error("edge probability must lie in (0,1), got " + p.get_str());
  }
}

void require_interior(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("edge probability must lie in (0,1), got " + std::to_string(p));
  }
}

}  // namespace randnet
