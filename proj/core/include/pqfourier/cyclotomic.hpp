#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqfourier/rational.hpp"

namespace pqf {

// Element of the cyclotomic field Q(mu_N), stored as the residue of a
// polynomial in mu_N modulo the N-th cyclotomic polynomial.  The coefficient
// vector always has length phi(N) (power basis 1, mu, ..., mu^{phi(N)-1}).
// Order 1 embeds the rationals.  Values are immutable.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}
  Cyclotomic(const Rational& r) : order_(1), coeffs_(1, r) {}  // NOLINT
  Cyclotomic(long n) : Cyclotomic(Rational(n)) {}              // NOLINT

  // mu_order^power, reduced modulo the cyclotomic polynomial.
  static Cyclotomic root_of_unity(long order, long long power);

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Value as a rational; requires is_rational().
  Rational rational_value() const;
  // Coefficient of the basis element 1 (the only rational-basis component).
  const Rational& rational_part() const { return coeffs_[0]; }

  // Same value re-expressed in Q(mu_m) for a multiple m of order().
  Cyclotomic promoted(long m) const;
  // Smallest divisor d of order() such that the value lies in Q(mu_d).
  Cyclotomic reduced() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic inverse() const;
  Cyclotomic pow(long long e) const;

  // Decomposition value = scale * mu_order^power with rational scale, taken on
  // the reduced representation.  scale may be negative.  nullopt when the
  // value is not of this shape (or is zero).
  struct RootOfUnityForm {
    Rational scale;
    long order;
    long power;
  };
  std::optional<RootOfUnityForm> root_of_unity_form() const;

  // Canonical exact n-th root: for value = |scale| * mu_M^k the root is
  // |scale|^{1/n} * mu_{nM}^k (argument index 0), with a minus sign folded
  // into the root of unity first.  Throws RootNotInField when the value is not
  // rational-times-root-of-unity or |scale| is not a perfect n-th power.
  Cyclotomic nth_root(long n) const;

  // Deterministic display, e.g. "1/2", "mu(3)", "-1 + 2*mu(4)".
  std::string str() const;

 private:
  Cyclotomic(long order, std::vector<Rational> coeffs);

  long order_;
  std::vector<Rational> coeffs_;
};

long euler_phi(long n);
// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<Rational>& cyclotomic_polynomial(long n);

}  // namespace pqf
