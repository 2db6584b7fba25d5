#include "pqfourier/puiseux.hpp"

#include <algorithm>

#include "pqfourier/errors.hpp"

namespace pqf {

namespace {

// Exponent value as a fraction with positive denominator; compared in 128 bit.
struct Frac {
  long long n;
  long long d;
};

bool frac_lt(const Frac& a, const Frac& b) {
  return static_cast<__int128>(a.n) * b.d < static_cast<__int128>(b.n) * a.d;
}
bool frac_le(const Frac& a, const Frac& b) { return !frac_lt(b, a); }

long long ceil_div(long long a, long long b) {
  // b > 0
  long long q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

std::optional<long long> min_opt(std::optional<long long> a, std::optional<long long> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

Exponent Exponent::make(long long num, long long den) {
  if (den < 0) { num = -num; den = -den; }
  const long long g = std::max<long long>(gcd_ll(num, den), 1);
  return Exponent{num / g, den / g};
}

std::string Exponent::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

PuiseuxSeries::PuiseuxSeries(char var, long long ram, TermMap terms,
                             std::optional<long long> trunc)
    : var_(var), ram_(ram), terms_(std::move(terms)), trunc_(trunc) {
  normalize();
}

void PuiseuxSeries::normalize() {
  if (ram_ < 1) fail(errc::unsupported_extension, "ramification must be positive");
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero() || (trunc_ && it->first >= *trunc_))
      it = terms_.erase(it);
    else
      ++it;
  }
}

PuiseuxSeries PuiseuxSeries::zero(char var) { return PuiseuxSeries(var, 1, {}, std::nullopt); }

PuiseuxSeries PuiseuxSeries::constant(char var, const Cyclotomic& c) {
  TermMap t;
  if (!c.is_zero()) t.emplace(0, c);
  return PuiseuxSeries(var, 1, std::move(t), std::nullopt);
}

PuiseuxSeries PuiseuxSeries::monomial(char var, const Cyclotomic& c, long long num,
                                      long long ram) {
  TermMap t;
  if (!c.is_zero()) t.emplace(num, c);
  return PuiseuxSeries(var, ram, std::move(t), std::nullopt);
}

PuiseuxSeries PuiseuxSeries::unknown(char var, long long trunc, long long ram) {
  return PuiseuxSeries(var, ram, {}, trunc);
}

PuiseuxSeries PuiseuxSeries::make(char var, long long ram, TermMap terms,
                                  std::optional<long long> trunc) {
  return PuiseuxSeries(var, ram, std::move(terms), trunc);
}

bool PuiseuxSeries::is_polynomial() const {
  if (!is_exact() || ram_ != 1) return false;
  return terms_.empty() || terms_.begin()->first >= 0;
}

std::optional<Exponent> PuiseuxSeries::order() const {
  if (terms_.empty()) {
    if (is_exact()) return std::nullopt;  // exact zero: order +infinity
    fail(errc::unknown_order, "no known terms below the truncation");
  }
  return Exponent::make(terms_.begin()->first, ram_);
}

Cyclotomic PuiseuxSeries::coeff(long long num, long long den) const {
  if (den < 1) fail(errc::unsupported_extension, "exponent denominator must be positive");
  if (trunc_ && !frac_lt(Frac{num, den}, Frac{*trunc_, ram_}))
    fail(errc::precision_exhausted, "coefficient beyond the truncation");
  const __int128 k = static_cast<__int128>(num) * ram_;
  if (k % den != 0) return Cyclotomic(Rational(0));
  const long long key = static_cast<long long>(k / den);
  auto it = terms_.find(key);
  return it == terms_.end() ? Cyclotomic(Rational(0)) : it->second;
}

PuiseuxSeries PuiseuxSeries::with_var(char v) const {
  return PuiseuxSeries(v, ram_, terms_, trunc_);
}

PuiseuxSeries PuiseuxSeries::with_ram(long long m) const {
  if (m == ram_) return *this;
  if (m % ram_ != 0 || m < 1)
    fail(errc::unsupported_extension, "ramification change must be an integer multiple");
  const long long f = m / ram_;
  TermMap t;
  for (const auto& [k, c] : terms_) t.emplace(k * f, c);
  std::optional<long long> tr = trunc_ ? std::optional<long long>(*trunc_ * f) : std::nullopt;
  return PuiseuxSeries(var_, m, std::move(t), tr);
}

PuiseuxSeries PuiseuxSeries::relabel_ram(long long m) const {
  return PuiseuxSeries(var_, m, terms_, trunc_);
}

PuiseuxSeries PuiseuxSeries::truncated(long long cap) const {
  return PuiseuxSeries(var_, ram_, terms_, min_opt(trunc_, cap));
}

PuiseuxSeries PuiseuxSeries::shifted(long long shift) const {
  TermMap t;
  for (const auto& [k, c] : terms_) t.emplace(k + shift, c);
  std::optional<long long> tr = trunc_ ? std::optional<long long>(*trunc_ + shift) : std::nullopt;
  return PuiseuxSeries(var_, ram_, std::move(t), tr);
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  TermMap t;
  for (const auto& [k, c] : terms_) t.emplace(k, -c);
  return PuiseuxSeries(var_, ram_, std::move(t), trunc_);
}

PuiseuxSeries PuiseuxSeries::scaled(const Cyclotomic& c) const {
  if (c.is_zero()) return zero(var_);
  TermMap t;
  for (const auto& [k, coef] : terms_) t.emplace(k, coef * c);
  return PuiseuxSeries(var_, ram_, std::move(t), trunc_);
}

namespace {

void require_same_var(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.var() != b.var())
    fail(errc::variable_mismatch, std::string("series in '") + a.var() + "' vs '" + b.var() + "'");
}

std::pair<PuiseuxSeries, PuiseuxSeries> merged(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  const long long m = lcm_ll(a.ram(), b.ram());
  return {a.with_ram(m), b.with_ram(m)};
}

// Lower bound for the order key: min key when terms exist, the truncation for
// an all-unknown series, nullopt (+infinity) for the exact zero.
std::optional<long long> order_key_lower_bound(const PuiseuxSeries& s) {
  if (s.has_known_terms()) return s.terms().begin()->first;
  if (s.is_exact()) return std::nullopt;
  return *s.trunc();
}

}  // namespace

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  require_same_var(a, b);
  auto [x, y] = merged(a, b);
  PuiseuxSeries::TermMap t = x.terms();
  for (const auto& [k, c] : y.terms()) {
    auto it = t.find(k);
    if (it == t.end())
      t.emplace(k, c);
    else
      it->second = it->second + c;
  }
  return PuiseuxSeries::make(x.var(), x.ram(), std::move(t), min_opt(x.trunc(), y.trunc()));
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  require_same_var(a, b);
  if (a.is_zero() || b.is_zero()) return PuiseuxSeries::zero(a.var());
  auto [x, y] = merged(a, b);
  const auto lb_x = order_key_lower_bound(x);
  const auto lb_y = order_key_lower_bound(y);
  // known range: min(T_a + ord(b), T_b + ord(a))
  std::optional<long long> tr;
  if (x.trunc() && lb_y) tr = min_opt(tr, *x.trunc() + *lb_y);
  if (x.trunc() && !lb_y) tr = min_opt(tr, std::nullopt);
  if (y.trunc() && lb_x) tr = min_opt(tr, *y.trunc() + *lb_x);
  PuiseuxSeries::TermMap t;
  for (const auto& [ka, ca] : x.terms()) {
    for (const auto& [kb, cb] : y.terms()) {
      const long long k = ka + kb;
      if (tr && k >= *tr) continue;
      auto it = t.find(k);
      if (it == t.end())
        t.emplace(k, ca * cb);
      else
        it->second = it->second + ca * cb;
    }
  }
  return PuiseuxSeries::make(x.var(), x.ram(), std::move(t), tr);
}

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.var() != b.var()) return false;
  auto [x, y] = merged(a, b);
  return x.terms() == y.terms() && x.trunc() == y.trunc();
}

PuiseuxSeries derivative(const PuiseuxSeries& a) {
  PuiseuxSeries::TermMap t;
  for (const auto& [k, c] : a.terms()) {
    if (k == 0) continue;
    t.emplace(k - a.ram(), c * Cyclotomic(Rational(k, a.ram())));
  }
  std::optional<long long> tr =
      a.trunc() ? std::optional<long long>(*a.trunc() - a.ram()) : std::nullopt;
  return PuiseuxSeries::make(a.var(), a.ram(), std::move(t), tr);
}

PuiseuxSeries inverse(const PuiseuxSeries& a, std::optional<long long> cap) {
  if (a.is_zero()) fail(errc::zero_leading_term, "inverse of the zero series");
  if (!a.has_known_terms()) fail(errc::unknown_order, "inverse of an all-unknown series");
  const long long k0 = a.terms().begin()->first;
  const Cyclotomic c0 = a.terms().begin()->second;
  const Cyclotomic c0_inv = c0.inverse();
  const PuiseuxSeries u =
      a.shifted(-k0).scaled(c0_inv) - PuiseuxSeries::constant(a.var(), Cyclotomic(Rational(1)));
  if (u.is_zero()) {
    PuiseuxSeries res = PuiseuxSeries::monomial(a.var(), c0_inv, -k0, a.ram());
    return cap ? res.truncated(*cap) : res;
  }
  // 1/a = c0^-1 x^-k0 * sum (-u)^n, truncated at K keys.
  long long K;
  if (u.trunc()) {
    K = *u.trunc();
  } else {
    K = u.terms().begin()->first + kDefaultExpansionSpan * a.ram();
  }
  if (cap) K = std::min(K, *cap + k0);
  PuiseuxSeries acc = PuiseuxSeries::constant(a.var(), Cyclotomic(Rational(1)));
  const PuiseuxSeries neg_u = (-u).truncated(K);
  PuiseuxSeries pw = acc;
  while (true) {
    pw = (pw * neg_u).truncated(K);
    if (!pw.has_known_terms()) break;
    acc = acc + pw;
    if (pw.terms().begin()->first >= K) break;
  }
  acc = acc.truncated(K);
  // The geometric tail continues beyond K even when u is exact.
  if (!acc.trunc()) acc = PuiseuxSeries::make(acc.var(), acc.ram(), acc.terms(), K);
  return acc.scaled(c0_inv).shifted(-k0);
}

PuiseuxSeries pow_fractional(const PuiseuxSeries& a, long long num, long long den,
                             std::optional<long long> cap) {
  if (den == 0) fail(errc::unsupported_extension, "zero exponent denominator");
  if (den < 0) { num = -num; den = -den; }
  {
    const long long g = std::max<long long>(gcd_ll(num, den), 1);
    num /= g;
    den /= g;
  }
  if (a.is_zero()) {
    if (num > 0) return PuiseuxSeries::zero(a.var());
    if (num == 0) return PuiseuxSeries::constant(a.var(), Cyclotomic(Rational(1)));
    fail(errc::zero_leading_term, "negative power of the zero series");
  }
  if (!a.has_known_terms()) fail(errc::unknown_order, "power of an all-unknown series");
  const long long k0 = a.terms().begin()->first;
  const Cyclotomic c0 = a.terms().begin()->second;
  const Cyclotomic lead_pow = (den == 1 ? c0 : c0.nth_root(den)).pow(num);
  const Rational alpha(num, den);
  const bool natural = (den == 1 && num >= 0);

  const PuiseuxSeries u = a.shifted(-k0).scaled(c0.inverse()) -
                          PuiseuxSeries::constant(a.var(), Cyclotomic(Rational(1)));
  const long long out_ram = a.ram() * den;
  const long long lead_key = k0 * num;  // over out_ram

  PuiseuxSeries binom_sum = PuiseuxSeries::constant(a.var(), Cyclotomic(Rational(1)));
  if (!u.is_zero()) {
    std::optional<long long> K;  // keys over a.ram()
    if (u.trunc()) K = *u.trunc();
    if (cap) {
      // result known below cap keys (out_ram) <=> sum known below (cap - lead_key)/den
      K = min_opt(K, ceil_div(*cap - lead_key, den));
    }
    if (!K && !natural)
      K = u.terms().begin()->first + kDefaultExpansionSpan * a.ram();
    PuiseuxSeries pw = binom_sum;
    Rational b(1);
    for (long long j = 1;; ++j) {
      b = b * (alpha - Rational(j - 1)) / Rational(j);
      if (b.is_zero() && natural) break;
      pw = pw * u;
      if (K) pw = pw.truncated(*K);
      if (!pw.has_known_terms()) break;
      binom_sum = binom_sum + pw.scaled(Cyclotomic(b));
      if (K && pw.terms().begin()->first >= *K) break;
    }
    if (!natural && K) {
      binom_sum = binom_sum.truncated(*K);
      if (!binom_sum.trunc())
        binom_sum = PuiseuxSeries::make(binom_sum.var(), binom_sum.ram(), binom_sum.terms(), *K);
    }
  }
  PuiseuxSeries res = PuiseuxSeries::monomial(a.var(), lead_pow, lead_key, out_ram) *
                      binom_sum.with_ram(out_ram);
  return cap ? res.truncated(*cap) : res;
}

PuiseuxSeries compose(const PuiseuxSeries& outer_in, const PuiseuxSeries& inner,
                      std::optional<long long> cap) {
  const PuiseuxSeries outer = reduce_ramification(outer_in);
  const char out_var = inner.var();
  if (outer.is_zero()) return PuiseuxSeries::zero(out_var);

  if (inner.is_zero()) {
    if (outer.has_known_terms() && outer.terms().begin()->first < 0)
      fail(errc::ill_formed_composition, "zero substituted into negative powers");
    if (outer.trunc() && *outer.trunc() <= 0) return PuiseuxSeries::unknown(out_var, 0);
    auto it = outer.terms().find(0);
    return PuiseuxSeries::constant(out_var,
                                   it == outer.terms().end() ? Cyclotomic(Rational(0)) : it->second);
  }
  if (!inner.has_known_terms())
    fail(errc::ill_formed_composition, "inner series has unknown order");
  const long long m = inner.terms().begin()->first;  // over inner.ram()
  const long long rho = inner.ram();
  if (m == 0) fail(errc::ill_formed_composition, "inner series has order zero");
  if (m < 0 && !outer.is_exact())
    fail(errc::ill_formed_composition,
         "composition with negative inner order needs an exact Laurent-polynomial outer");

  const long long r_o = outer.ram();
  // Value bound below which the result is determined.
  std::optional<Frac> vcap;
  if (cap) vcap = Frac{*cap, 1};
  if (outer.trunc() && m > 0) {
    const Frac from_outer{*outer.trunc() * m, r_o * rho};
    if (!vcap || frac_lt(from_outer, *vcap)) vcap = from_outer;
  }

  PuiseuxSeries acc = PuiseuxSeries::zero(out_var);
  for (const auto& [k, c] : outer.terms()) {
    if (m > 0 && vcap && frac_le(*vcap, Frac{k * m, r_o * rho})) break;
    const long long g = std::max<long long>(gcd_ll(k, r_o), 1);
    const long long e_num = k / g;
    const long long e_den = r_o / g;
    std::optional<long long> addend_cap;
    if (vcap) addend_cap = ceil_div(vcap->n * rho * e_den, vcap->d);  // keys over rho*e_den
    acc = acc + pow_fractional(inner, e_num, e_den, addend_cap).scaled(c);
  }
  if (vcap) {
    const long long key_cap = ceil_div(vcap->n * acc.ram(), vcap->d);
    acc = acc.truncated(key_cap);
    if (!acc.trunc()) acc = PuiseuxSeries::make(acc.var(), acc.ram(), acc.terms(), key_cap);
  }
  return acc;
}

namespace {

// Solves U(Y) = identity for U with integer exponents and positive order m.
PuiseuxSeries invert_positive_integer_order(const PuiseuxSeries& U, long long target) {
  const long long m = U.terms().begin()->first;
  const Cyclotomic c_m = U.terms().begin()->second;
  const Cyclotomic a1 = c_m.nth_root(m).inverse();
  const char v = U.var();
  const long long capv = target + m + 10;

  PuiseuxSeries Y = PuiseuxSeries::monomial(v, a1, 1, m);
  const PuiseuxSeries identity = PuiseuxSeries::monomial(v, Cyclotomic(Rational(1)), m, m);
  const PuiseuxSeries dU = derivative(U);

  for (int iter = 0; iter < 64; ++iter) {
    const PuiseuxSeries R = compose(U, Y, capv) - identity;
    if (R.is_zero()) return Y;
    if (!R.has_known_terms()) {
      if (R.trunc() && frac_le(Frac{target, 1}, Frac{*R.trunc(), R.ram()})) return Y;
      fail(errc::precision_exhausted, "compositional inverse limited by input precision");
    }
    if (frac_le(Frac{target, 1}, Frac{R.terms().begin()->first, R.ram()})) return Y;
    const PuiseuxSeries slope = compose(dU, Y, capv);
    const PuiseuxSeries correction = R * inverse(slope, capv * slope.ram());
    Y = Y - correction;
  }
  fail(errc::precision_exhausted, "Newton iteration for compositional inverse did not converge");
}

}  // namespace

PuiseuxSeries comp_inverse(const PuiseuxSeries& u, long long target, char out_var) {
  if (u.is_zero()) fail(errc::zero_order, "compositional inverse of the zero series");
  if (!u.has_known_terms())
    fail(errc::precision_exhausted, "compositional inverse of an all-unknown series");
  const long long m = u.terms().begin()->first;
  if (m == 0) fail(errc::zero_order, "compositional inverse requires nonzero order");

  if (m < 0) {
    if (!u.is_exact())
      fail(errc::precision_exhausted,
           "negative-order compositional inverse needs an exact input");
    if (u.terms().rbegin()->first >= 0)
      fail(errc::ill_formed_composition,
           "negative-order compositional inverse needs all exponents negative");
    // u(t) = u_rev(1/t) with u_rev of positive order; invert and reciprocate.
    PuiseuxSeries::TermMap rev;
    for (const auto& [k, c] : u.terms()) rev.emplace(-k, c);
    const PuiseuxSeries u_rev =
        PuiseuxSeries::make(u.var(), u.ram(), std::move(rev), std::nullopt);
    const PuiseuxSeries w = comp_inverse(u_rev, target, out_var);
    return inverse(w, std::nullopt);
  }

  const PuiseuxSeries U = u.relabel_ram(1);
  const PuiseuxSeries Y = invert_positive_integer_order(U, target);
  const PuiseuxSeries v = pow(Y, u.ram(), std::nullopt);
  return v.with_var(out_var);
}

PuiseuxSeries twist(const PuiseuxSeries& a, long long k) {
  const long long r = a.ram();
  PuiseuxSeries::TermMap t;
  for (const auto& [j, c] : a.terms()) {
    long long e = ((j % r) * (((k % r) + r) % r)) % r;
    if (e < 0) e += r;
    t.emplace(j, c * Cyclotomic::root_of_unity(r, e));
  }
  return PuiseuxSeries::make(a.var(), r, std::move(t), a.trunc());
}

PuiseuxSeries reduce_ramification(const PuiseuxSeries& a) {
  long long g = a.ram();
  for (const auto& [k, c] : a.terms()) {
    g = gcd_ll(g, k);
    if (g == 1) break;
  }
  if (g <= 1) return a;
  PuiseuxSeries::TermMap t;
  for (const auto& [k, c] : a.terms()) t.emplace(k / g, c);
  std::optional<long long> tr;
  if (a.trunc()) tr = ceil_div(*a.trunc(), g);
  return PuiseuxSeries::make(a.var(), a.ram() / g, std::move(t), tr);
}

bool agree_on_known(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.var() != b.var()) return false;
  auto [x, y] = merged(a, b);
  const std::optional<long long> bound = min_opt(x.trunc(), y.trunc());
  auto below = [&](const PuiseuxSeries& s) {
    PuiseuxSeries::TermMap t;
    for (const auto& [k, c] : s.terms())
      if (!bound || k < *bound) t.emplace(k, c);
    return t;
  };
  return below(x) == below(y);
}

}  // namespace pqf
