#include "pqfourier/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "pqfourier/errors.hpp"

namespace pqf {

namespace {

constexpr long kMaxPhi = 128;

using Poly = std::vector<Rational>;  // dense, constant term first

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  int da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return {Rational(0)};
  Poly out(static_cast<size_t>(da + db + 1), Rational(0));
  for (int i = 0; i <= da; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j <= db; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Remainder of a modulo b (b nonzero).  Also fills q when requested.
Poly poly_divmod(Poly a, const Poly& b, Poly* quotient = nullptr) {
  int db = degree(b);
  if (db < 0) fail(errc::zero_leading_term, "polynomial division by zero");
  const Rational lead_inv = b[db].inverse();
  Poly q(a.size(), Rational(0));
  for (int da = degree(a); da >= db; da = degree(a)) {
    Rational c = a[da] * lead_inv;
    q[da - db] = c;
    for (int j = 0; j <= db; ++j) a[da - db + j] -= c * b[j];
  }
  if (quotient) *quotient = q;
  if (degree(a) < 0) a.assign(1, Rational(0));
  a.resize(static_cast<size_t>(std::max(degree(a), 0)) + 1);
  return a;
}

std::vector<long> divisors_of(long n) {
  std::vector<long> d;
  for (long i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Gaussian elimination solve of the system cols * x = rhs over Q, where cols
// holds the column vectors.  Returns nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_columns(std::vector<std::vector<Rational>> cols,
                                                   std::vector<Rational> rhs) {
  const size_t rows = rhs.size();
  const size_t ncols = cols.size();
  std::vector<long> pivot_of_col(ncols, -1);
  size_t prow = 0;
  for (size_t c = 0; c < ncols && prow < rows; ++c) {
    size_t sel = prow;
    while (sel < rows && cols[c][sel].is_zero()) ++sel;
    if (sel == rows) continue;
    for (size_t cc = 0; cc < ncols; ++cc) std::swap(cols[cc][prow], cols[cc][sel]);
    std::swap(rhs[prow], rhs[sel]);
    const Rational inv = cols[c][prow].inverse();
    for (size_t cc = 0; cc < ncols; ++cc) cols[cc][prow] *= inv;
    rhs[prow] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == prow || cols[c][r].is_zero()) continue;
      const Rational f = cols[c][r];
      for (size_t cc = 0; cc < ncols; ++cc) cols[cc][r] -= f * cols[cc][prow];
      rhs[r] -= f * rhs[prow];
    }
    pivot_of_col[c] = static_cast<long>(prow);
    ++prow;
  }
  for (size_t r = prow; r < rows; ++r)
    if (!rhs[r].is_zero()) return std::nullopt;
  // Free columns get 0; the caller re-verifies the reconstruction.
  std::vector<Rational> x(ncols, Rational(0));
  for (size_t c = 0; c < ncols; ++c)
    if (pivot_of_col[c] >= 0) x[c] = rhs[static_cast<size_t>(pivot_of_col[c])];
  return x;
}

}  // namespace

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<Rational>& cyclotomic_polynomial(long n) {
  static std::map<long, Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, built recursively over the
  // divisor lattice with memoization.
  std::function<const Poly&(long)> build = [&](long m) -> const Poly& {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    Poly num(static_cast<size_t>(m) + 1, Rational(0));
    num[0] = Rational(-1);
    num[static_cast<size_t>(m)] = Rational(1);
    for (long d : divisors_of(m)) {
      if (d == m) continue;
      const Poly& phi_d = build(d);
      Poly quotient;
      Poly rem = poly_divmod(num, phi_d, &quotient);
      if (degree(rem) >= 0)
        fail(errc::unsupported_extension, "cyclotomic polynomial division not exact");
      quotient.resize(static_cast<size_t>(std::max(degree(quotient), 0)) + 1);
      num = quotient;
    }
    return cache.emplace(m, num).first->second;
  };
  return build(n);
}

Cyclotomic::Cyclotomic(long order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

Cyclotomic Cyclotomic::root_of_unity(long order, long long power) {
  if (order < 1) fail(errc::unsupported_extension, "root of unity of nonpositive order");
  long long p = power % order;
  if (p < 0) p += order;
  if (order == 1) return Cyclotomic(Rational(1));
  const long phi = euler_phi(order);
  if (phi > kMaxPhi) fail(errc::unsupported_extension, "cyclotomic order too large");
  // x^p mod Phi_order
  Poly x(static_cast<size_t>(p) + 1, Rational(0));
  x[static_cast<size_t>(p)] = Rational(1);
  Poly rem = poly_divmod(x, cyclotomic_polynomial(order));
  rem.resize(static_cast<size_t>(phi), Rational(0));
  return Cyclotomic(order, rem).reduced();
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) fail(errc::unsupported_extension, "value is not rational");
  return coeffs_[0];
}

Cyclotomic Cyclotomic::promoted(long m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) fail(errc::unsupported_extension, "promotion target not a multiple");
  const long phi_m = euler_phi(m);
  if (phi_m > kMaxPhi) fail(errc::unsupported_extension, "cyclotomic order too large");
  const long step = m / order_;
  const Poly& phi_poly = cyclotomic_polynomial(m);
  // generator powers mu_m^{step*i} mod Phi_m
  Poly gen(static_cast<size_t>(step) + 1, Rational(0));
  gen[static_cast<size_t>(step)] = Rational(1);
  Poly acc{Rational(1)};
  Poly out(static_cast<size_t>(phi_m), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) {
      for (size_t j = 0; j < acc.size(); ++j)
        if (!acc[j].is_zero()) out[j] += coeffs_[i] * acc[j];
    }
    if (i + 1 < coeffs_.size()) {
      acc = poly_divmod(poly_mul(acc, gen), phi_poly);
      acc.resize(static_cast<size_t>(phi_m), Rational(0));
    }
  }
  return Cyclotomic(m, out);
}

Cyclotomic Cyclotomic::reduced() const {
  if (order_ == 1) return *this;
  if (is_rational()) return Cyclotomic(coeffs_[0]);
  const long phi_n = euler_phi(order_);
  for (long d : divisors_of(order_)) {
    if (d == 1 || d == order_) continue;
    const long phi_d = euler_phi(d);
    if (phi_d >= phi_n) continue;
    // Basis of Q(mu_d) lifted into Q(mu_order): mu^{(order/d)*i}, i < phi(d).
    std::vector<std::vector<Rational>> cols;
    cols.reserve(static_cast<size_t>(phi_d));
    bool ok = true;
    for (long i = 0; i < phi_d; ++i) {
      Cyclotomic b = root_of_unity(order_, static_cast<long long>(order_ / d) * i);
      if (b.order() != order_) b = b.promoted(order_);
      cols.push_back(b.coeffs_);
      if (cols.back().size() != static_cast<size_t>(phi_n)) { ok = false; break; }
    }
    if (!ok) continue;
    auto sol = solve_columns(cols, coeffs_);
    if (sol) {
      // Verify (solve_columns ignores free columns); cheap at these sizes.
      Cyclotomic rebuilt(d, *sol);
      if (rebuilt.promoted(order_).coeffs_ == coeffs_) return rebuilt;
    }
  }
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x = -x;
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const long m = lcm_ll(a.order_, b.order_);
  Cyclotomic pa = a.promoted(m), pb = b.promoted(m);
  for (size_t i = 0; i < pa.coeffs_.size(); ++i) pa.coeffs_[i] += pb.coeffs_[i];
  return pa;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  const long m = lcm_ll(a.order_, b.order_);
  Cyclotomic pa = a.promoted(m), pb = b.promoted(m);
  if (m == 1) return Cyclotomic(pa.coeffs_[0] * pb.coeffs_[0]);
  Poly prod = poly_mul(pa.coeffs_, pb.coeffs_);
  Poly rem = poly_divmod(prod, cyclotomic_polynomial(m));
  rem.resize(static_cast<size_t>(euler_phi(m)), Rational(0));
  return Cyclotomic(m, std::move(rem));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  const long m = lcm_ll(a.order_, b.order_);
  return a.promoted(m).coeffs_ == b.promoted(m).coeffs_;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) fail(errc::zero_leading_term, "inverse of zero");
  if (order_ == 1) return Cyclotomic(coeffs_[0].inverse());
  // Extended Euclid with the cyclotomic polynomial (irreducible over Q).
  Poly r0 = cyclotomic_polynomial(order_);
  Poly r1 = coeffs_;
  r1.resize(static_cast<size_t>(std::max(degree(r1), 0)) + 1);
  Poly s0{Rational(0)}, s1{Rational(1)};
  while (true) {
    const int d1 = degree(r1);
    if (d1 < 0) fail(errc::unsupported_extension, "gcd with cyclotomic polynomial nontrivial");
    if (d1 == 0) break;
    Poly q;
    Poly r2 = poly_divmod(r0, r1, &q);
    Poly s2 = s0;
    Poly qs = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs.size()), Rational(0));
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const Rational unit_inv = r1[0].inverse();
  Poly inv = poly_divmod(s1, cyclotomic_polynomial(order_));
  for (auto& c : inv) c *= unit_inv;
  inv.resize(static_cast<size_t>(euler_phi(order_)), Rational(0));
  return Cyclotomic(order_, std::move(inv));
}

Cyclotomic Cyclotomic::pow(long long e) const {
  if (e == 0) return Cyclotomic(Rational(1));
  Cyclotomic base = e > 0 ? *this : inverse();
  unsigned long long n = e > 0 ? static_cast<unsigned long long>(e)
                               : static_cast<unsigned long long>(-(e + 1)) + 1ULL;
  Cyclotomic acc{Rational(1)};
  while (n > 0) {
    if (n & 1ULL) acc = acc * base;
    base = base * base;
    n >>= 1ULL;
  }
  return acc;
}

std::optional<Cyclotomic::RootOfUnityForm> Cyclotomic::root_of_unity_form() const {
  const Cyclotomic red = reduced();
  if (red.is_zero()) return std::nullopt;
  if (red.is_rational()) return RootOfUnityForm{red.coeffs_[0], 1, 0};
  const long n = red.order_;
  for (long k = 1; k < n; ++k) {
    const Cyclotomic q = red * root_of_unity(n, -k);
    if (q.is_rational()) return RootOfUnityForm{q.rational_value(), n, k};
  }
  return std::nullopt;
}

Cyclotomic Cyclotomic::nth_root(long n) const {
  if (n < 1) fail(errc::root_not_in_field, "root index must be positive");
  if (n == 1) return *this;
  if (is_zero()) return Cyclotomic(Rational(0));
  auto form = root_of_unity_form();
  if (!form) fail(errc::root_not_in_field, "value is not rational times a root of unity");
  Rational scale = form->scale;
  long order = form->order;
  long power = form->power;
  if (scale.sign() < 0) {
    const long m = lcm_ll(order, 2);
    power = power * (m / order) + m / 2;
    power %= m;
    order = m;
    scale = -scale;
  }
  auto root = scale.nth_root(n);
  if (!root) fail(errc::root_not_in_field, "rational part is not a perfect power");
  return (Cyclotomic(*root) * root_of_unity(order * n, power)).reduced();
}

std::string Cyclotomic::str() const {
  const Cyclotomic red = reduced();
  if (red.is_rational()) return red.coeffs_[0].str();
  std::string out;
  bool first = true;
  for (size_t i = 0; i < red.coeffs_.size(); ++i) {
    const Rational& c = red.coeffs_[i];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
      first = false;
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    std::string base;
    if (i == 0) {
      base = mag.str();
    } else {
      base = "mu(" + std::to_string(red.order_) + ")";
      if (i > 1) base += "^" + std::to_string(i);
      if (!(mag == Rational(1))) base = mag.str() + "*" + base;
    }
    out += base;
  }
  return out.empty() ? "0" : out;
}

}  // namespace pqf
