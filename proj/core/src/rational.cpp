#include "pqfourier/rational.hpp"

#include <numeric>
#include <stdexcept>

#include "pqfourier/errors.hpp"

namespace pqf {

const char* errc_name(errc code) {
  switch (code) {
    case errc::variable_mismatch: return "VariableMismatch";
    case errc::zero_leading_term: return "ZeroLeadingTerm";
    case errc::unknown_order: return "UnknownOrder";
    case errc::ill_formed_composition: return "IllFormedComposition";
    case errc::root_not_in_field: return "RootNotInField";
    case errc::zero_order: return "ZeroOrder";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::parse_error: return "ParseError";
    case errc::zero_derivative: return "ZeroDerivative";
    case errc::non_coprime_degrees: return "NonCoprimeDegrees";
    case errc::higher_order_unsupported: return "HigherOrderUnsupported";
    case errc::slope_not_greater_than_one: return "SlopeNotGreaterThanOne";
    case errc::not_irreducible: return "NotIrreducible";
    case errc::jordan_not_supported: return "JordanNotSupported";
    case errc::not_an_orbit: return "NotAnOrbit";
    case errc::even_p: return "EvenP";
    case errc::eigenvalues_not_distinct: return "EigenvaluesNotDistinct";
    case errc::unsupported_extension: return "UnsupportedExtension";
  }
  return "UnknownError";
}

Rational::Rational(long n, long d) : v_(n, d) {
  if (d == 0) fail(errc::zero_leading_term, "rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
  if (d == 0) fail(errc::zero_leading_term, "rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

std::optional<Rational> Rational::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(text);
      return Rational(n, 1);
    }
    mpz_class n(text.substr(0, slash));
    mpz_class d(text.substr(slash + 1));
    if (d <= 0) return std::nullopt;
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(errc::zero_leading_term, "division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) fail(errc::zero_leading_term, "inverse of zero rational");
  return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long long e) const {
  if (e == 0) return Rational(1);
  const Rational base = e > 0 ? *this : inverse();
  unsigned long long n = e > 0 ? static_cast<unsigned long long>(e)
                               : static_cast<unsigned long long>(-(e + 1)) + 1ULL;
  Rational acc(1);
  Rational sq = base;
  while (n > 0) {
    if (n & 1ULL) acc *= sq;
    sq *= sq;
    n >>= 1ULL;
  }
  return acc;
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

std::optional<Rational> Rational::nth_root(long n) const {
  if (n <= 0) return std::nullopt;
  if (n == 1) return *this;
  if (sign() < 0 && n % 2 == 0) return std::nullopt;
  mpz_class rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), num().get_mpz_t(), static_cast<unsigned long>(n));
  int exact_d = mpz_root(rd.get_mpz_t(), den().get_mpz_t(), static_cast<unsigned long>(n));
  if (!exact_n || !exact_d) return std::nullopt;
  return Rational(rn, rd);
}

std::string Rational::str() const {
  std::string s = num().get_str();
  if (!is_integer()) s += "/" + den().get_str();
  return s;
}

long long gcd_ll(long long a, long long b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return (a / gcd_ll(a, b)) * b;
}

}  // namespace pqf
