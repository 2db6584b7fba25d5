#pragma once

#include <map>
#include <optional>
#include <string>

#include "pqfourier/cyclotomic.hpp"

namespace pqf {

// Exponent value k/den in lowest terms, den >= 1.
struct Exponent {
  long long num = 0;
  long long den = 1;

  static Exponent make(long long num, long long den);
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Exponent& a, const Exponent& b) {
    return a.num * b.den < b.num * a.den;
  }
  std::string str() const;
};

// Formal Puiseux series: finitely many known terms c_k * var^{k/ram} plus a
// truncation bound.  `trunc` means the coefficients at keys k >= trunc are
// unknown; no trunc means the series is exact.  Invariants: stored
// coefficients are nonzero, every stored key is below trunc, ram >= 1.
//
// The declared ramification is part of the presentation, not the value:
// equality merges ramifications before comparing.  Values are immutable; all
// operations are pure, so the type is safe to share across threads.
class PuiseuxSeries {
 public:
  using TermMap = std::map<long long, Cyclotomic>;

  PuiseuxSeries() : PuiseuxSeries(zero('z')) {}

  static PuiseuxSeries zero(char var);
  static PuiseuxSeries constant(char var, const Cyclotomic& c);
  static PuiseuxSeries monomial(char var, const Cyclotomic& c, long long num, long long ram = 1);
  // Series with no known terms, unknown from key `trunc` on: "O(var^{trunc/ram})".
  static PuiseuxSeries unknown(char var, long long trunc, long long ram = 1);
  static PuiseuxSeries make(char var, long long ram, TermMap terms,
                            std::optional<long long> trunc);

  char var() const { return var_; }
  long long ram() const { return ram_; }
  const TermMap& terms() const { return terms_; }
  std::optional<long long> trunc() const { return trunc_; }

  bool is_exact() const { return !trunc_.has_value(); }
  // Exact zero (empty terms, no truncation).
  bool is_zero() const { return terms_.empty() && is_exact(); }
  bool has_known_terms() const { return !terms_.empty(); }
  // Finite number of terms and exact: a Laurent polynomial.
  bool is_laurent_polynomial() const { return is_exact(); }
  // Exact single-term series.
  bool is_monomial() const { return is_exact() && terms_.size() == 1; }
  bool is_polynomial() const;  // ram 1, exact, all exponents >= 0

  // Least exponent with a nonzero known coefficient; nullopt for the exact
  // zero series (order +infinity).  Throws UnknownOrder when no terms are
  // known but the truncation is finite.
  std::optional<Exponent> order() const;

  // Coefficient at exponent num/den (0 if absent within the known range);
  // throws PrecisionExhausted if the position is beyond the truncation.
  Cyclotomic coeff(long long num, long long den = 1) const;

  PuiseuxSeries with_var(char v) const;
  // Re-expresses with ramification m (a multiple of ram); value unchanged.
  PuiseuxSeries with_ram(long long m) const;
  // Reinterprets the keys over a different ramification: var^{k/ram} becomes
  // var^{k/m}.  This *changes* the value (used for substitutions u = t^{1/m}).
  PuiseuxSeries relabel_ram(long long m) const;
  // Drops knowledge at keys >= cap (key units of the current ramification).
  PuiseuxSeries truncated(long long cap) const;
  // Multiplies by var^{shift/ram}.
  PuiseuxSeries shifted(long long shift) const;

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  PuiseuxSeries scaled(const Cyclotomic& c) const;

  // Value equality on the merged ramification (declared ramification and the
  // variable letter are presentation; the letter *is* compared).
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend bool operator!=(const PuiseuxSeries& a, const PuiseuxSeries& b) { return !(a == b); }

 private:
  PuiseuxSeries(char var, long long ram, TermMap terms, std::optional<long long> trunc);
  void normalize();

  char var_;
  long long ram_;
  TermMap terms_;
  std::optional<long long> trunc_;
};

// Default number of exponent units a truncating expansion extends past the
// order when neither the inputs nor the caller bound it.
inline constexpr long long kDefaultExpansionSpan = 24;

// Termwise derivative d/dvar.
PuiseuxSeries derivative(const PuiseuxSeries& a);

// Multiplicative inverse.  `cap` bounds the expansion (key units of a's
// ramification) when the exact inverse would have infinitely many terms.
PuiseuxSeries inverse(const PuiseuxSeries& a, std::optional<long long> cap = std::nullopt);

// a^(num/den) using the canonical den-th root of the leading coefficient.
PuiseuxSeries pow_fractional(const PuiseuxSeries& a, long long num, long long den,
                             std::optional<long long> cap = std::nullopt);
inline PuiseuxSeries pow(const PuiseuxSeries& a, long long n,
                         std::optional<long long> cap = std::nullopt) {
  return pow_fractional(a, n, 1, cap);
}

// Substitution outer(inner).  Requires ord(inner) > 0, or outer exact (a
// Laurent polynomial) with ord(inner) != 0.  `cap` is an exponent-value bound
// applied when expansions would otherwise be infinite.
PuiseuxSeries compose(const PuiseuxSeries& outer, const PuiseuxSeries& inner,
                      std::optional<long long> cap = std::nullopt);

// Compositional inverse: v with compose(u, v) = identity up to exponent value
// `target`.  The result lives in fractional powers of `out_var` with
// denominator dividing |ord numerator| of u.
PuiseuxSeries comp_inverse(const PuiseuxSeries& u, long long target, char out_var);

// Substitution var^{1/r} -> mu_r^k var^{1/r}: the coefficient at exponent j/r
// is multiplied by mu_r^{jk}.
PuiseuxSeries twist(const PuiseuxSeries& a, long long k);

// Minimal ramification presentation of the same value.
PuiseuxSeries reduce_ramification(const PuiseuxSeries& a);

// True when a and b agree on the range where both are known.
bool agree_on_known(const PuiseuxSeries& a, const PuiseuxSeries& b);

}  // namespace pqf
