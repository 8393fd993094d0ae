#include "mloop/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Poly = std::vector<Rational>;   // ascending, no trailing zeros, empty = 0
using IPoly = std::vector<Integer>;   // same conventions over Z

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

// Quotient and remainder over Q[x]; divisor need not be monic.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& d) {
  trim(a);
  Poly q;
  if (d.empty()) throw DivisionByZero("polynomial division by zero");
  if (a.size() >= d.size()) q.assign(a.size() - d.size() + 1, Rational(0));
  const Rational& lead = d.back();
  while (a.size() >= d.size()) {
    Rational c = a.back() / lead;
    std::size_t shift = a.size() - d.size();
    q[shift] = c;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) a[shift + i] -= c * d[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {std::move(q), std::move(a)};
}

// Exact division by a monic integer polynomial; remainder must vanish.
IPoly ipoly_div_exact_monic(IPoly a, const IPoly& d) {
  IPoly q(a.size() >= d.size() ? a.size() - d.size() + 1 : 0, Integer(0));
  while (a.size() >= d.size()) {
    Integer c = a.back();
    std::size_t shift = a.size() - d.size();
    q[shift] = c;
    if (c != 0)
      for (std::size_t i = 0; i + 1 < d.size(); ++i) a[shift + i] -= c * d[i];
    a.pop_back();
  }
  for (const Integer& r : a)
    if (r != 0) throw Error("Internal", "inexact cyclotomic division");
  return q;
}

struct FieldData {
  IPoly phi_int;                 // Phi_n over Z, ascending, size phi(n)+1
  Poly phi_rat;                  // same over Q
  std::vector<Poly> powers;      // x^k mod Phi_n for k = 0..n-1, size phi(n)
};

std::mutex cache_mutex;
std::map<unsigned, FieldData>& field_cache() {
  static std::map<unsigned, FieldData> cache;
  return cache;
}

const FieldData& field_data(unsigned n);

FieldData build_field_data(unsigned n) {
  FieldData fd;
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  IPoly num(n + 1, Integer(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned d : divisors(n))
    if (d < n) num = ipoly_div_exact_monic(num, field_data(d).phi_int);
  fd.phi_int = std::move(num);
  fd.phi_rat.reserve(fd.phi_int.size());
  for (const Integer& c : fd.phi_int) fd.phi_rat.emplace_back(c);

  unsigned deg = euler_phi(n);
  fd.powers.assign(n, Poly(deg, Rational(0)));
  // x^0 .. x^(deg-1) are basis vectors; beyond that multiply by x and reduce
  Poly cur(deg, Rational(0));
  for (unsigned k = 0; k < n; ++k) {
    if (k < deg) {
      fd.powers[k][k] = 1;
      continue;
    }
    if (k == deg) {
      // x^deg = -(lower part of Phi)
      for (unsigned i = 0; i < deg; ++i) cur[i] = -fd.phi_rat[i];
    } else {
      // multiply previous by x, fold overflow back via x^deg
      Rational top = cur[deg - 1];
      for (unsigned i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (unsigned i = 0; i < deg; ++i) cur[i] -= top * fd.phi_rat[i];
    }
    fd.powers[k] = cur;
  }
  return fd;
}

const FieldData& field_data(unsigned n) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = field_cache().find(n);
    if (it != field_cache().end()) return it->second;
  }
  FieldData fd = build_field_data(n);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return field_cache().emplace(n, std::move(fd)).first->second;
}

// Reduce an arbitrary-degree polynomial in zeta_n to the power basis.
std::vector<Rational> reduce_mod_phi(const Poly& p, unsigned n) {
  unsigned deg = euler_phi(n);
  std::vector<Rational> out(deg, Rational(0));
  const FieldData& fd = field_data(n);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    if (k < deg) {
      out[k] += p[k];
    } else {
      const Poly& pw = fd.powers[k % n];  // zeta_n^n = 1
      for (unsigned i = 0; i < deg; ++i) out[i] += p[k] * pw[i];
    }
  }
  return out;
}

// Solve A x = b over Q (A given column-wise); returns nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_columns(
    const std::vector<std::vector<Rational>>& cols,
    const std::vector<Rational>& b) {
  std::size_t rows = b.size(), ncols = cols.size();
  // augmented matrix, row-major
  std::vector<std::vector<Rational>> m(rows,
                                       std::vector<Rational>(ncols + 1));
  for (std::size_t j = 0; j < ncols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  for (std::size_t i = 0; i < rows; ++i) m[i][ncols] = b[i];

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = m[r][c];
    for (std::size_t j = c; j <= ncols; ++j) m[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j <= ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][ncols] != 0) return std::nullopt;
  std::vector<Rational> x(ncols, Rational(0));
  for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = m[k][ncols];
  return x;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw Error("Domain", "cyclotomic polynomial needs n >= 1");
  return field_data(n).phi_int;
}

Cyclo Cyclo::zeta(unsigned n) {
  if (n == 0) throw Error("Domain", "zeta needs n >= 1");
  if (n == 1) return Cyclo(1);
  unsigned deg = euler_phi(n);
  std::vector<Rational> c(deg, Rational(0));
  if (deg == 1) {
    c[0] = -1;  // n = 2: Phi_2 = x + 1
  } else {
    c[1] = 1;
  }
  Cyclo z(n, std::move(c));
  z.normalize();
  return z;
}

void Cyclo::normalize() {
  if (order_ == 1) return;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return;
  Rational v = coeffs_[0];
  order_ = 1;
  coeffs_.assign(1, std::move(v));
}

Cyclo Cyclo::lifted_to(unsigned target) const {
  if (target == order_) return *this;
  if (target % order_ != 0)
    throw Error("Domain", "lift target must be a multiple of the order");
  unsigned step = target / order_;
  unsigned deg = euler_phi(target);
  std::vector<Rational> out(deg, Rational(0));
  const FieldData& fd = field_data(target);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const Poly& pw = fd.powers[(j * step) % target];
    for (unsigned i = 0; i < deg; ++i) out[i] += coeffs_[j] * pw[i];
  }
  return Cyclo(target, std::move(out));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (Rational& c : r.coeffs_) c = -c;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (order_ == o.order_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  unsigned m = std::lcm(order_, o.order_);
  Cyclo a = lifted_to(m), b = o.lifted_to(m);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    a.coeffs_[i] += b.coeffs_[i];
  a.normalize();
  return *this = std::move(a);
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (order_ == 1 && o.order_ == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  // rational scalar times a general value: scale coefficients in place
  if (order_ == 1 || o.order_ == 1) {
    const Rational& s = (order_ == 1) ? coeffs_[0] : o.coeffs_[0];
    Cyclo r = (order_ == 1) ? o : *this;
    for (Rational& c : r.coeffs_) c *= s;
    r.normalize();
    return *this = std::move(r);
  }
  unsigned m = std::lcm(order_, o.order_);
  Cyclo a = lifted_to(m), b = o.lifted_to(m);
  Poly prod = poly_mul(a.coeffs_, b.coeffs_);
  Cyclo r(m, reduce_mod_phi(prod, m));
  r.normalize();
  return *this = std::move(r);
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (order_ == 1) return Cyclo(Rational(1) / coeffs_[0]);
  // extended Euclid against Phi: b*f = gcd mod Phi, gcd a nonzero constant
  Poly r0 = field_data(order_).phi_rat;
  Poly r1 = coeffs_;
  trim(r1);
  Poly b0, b1{Rational(1)};
  while (!r1.empty()) {
    auto [q, rem] = poly_divmod(r0, r1);
    Poly b2 = b0;
    Poly qb = poly_mul(q, b1);
    b2.resize(std::max(b2.size(), qb.size()), Rational(0));
    for (std::size_t i = 0; i < qb.size(); ++i) b2[i] -= qb[i];
    trim(b2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    b0 = std::move(b1);
    b1 = std::move(b2);
  }
  // r0 = gcd = nonzero constant (Phi is irreducible over Q)
  if (r0.size() != 1)
    throw Error("Internal", "cyclotomic inverse: non-constant gcd");
  for (Rational& c : b0) c /= r0[0];
  Cyclo r(order_, reduce_mod_phi(b0, order_));
  r.normalize();
  return r;
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo result(1L);
  Cyclo base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  unsigned m = std::lcm(a.order_, b.order_);
  return a.lifted_to(m).coeffs_ == b.lifted_to(m).coeffs_;
}

Cyclo Cyclo::minimized() const {
  Cyclo v = *this;
  v.normalize();
  if (v.order_ == 1) return v;
  const FieldData& fd = field_data(v.order_);
  unsigned deg = euler_phi(v.order_);
  for (unsigned d : divisors(v.order_)) {
    if (d == v.order_) break;
    unsigned dd = euler_phi(d);
    std::vector<std::vector<Rational>> cols;
    cols.reserve(dd);
    unsigned step = v.order_ / d;
    for (unsigned j = 0; j < dd; ++j) {
      const Poly& pw = fd.powers[(j * step) % v.order_];
      cols.emplace_back(pw.begin(), pw.begin() + deg);
    }
    if (auto x = solve_columns(cols, v.coeffs_)) {
      Cyclo r(d, std::move(*x));
      r.normalize();
      return r;
    }
  }
  return v;
}

int Cyclo::compare(const Cyclo& a, const Cyclo& b) {
  Cyclo ma = a.minimized(), mb = b.minimized();
  if (ma.order_ != mb.order_) return ma.order_ < mb.order_ ? -1 : 1;
  for (std::size_t i = 0; i < ma.coeffs_.size(); ++i) {
    if (ma.coeffs_[i] < mb.coeffs_[i]) return -1;
    if (ma.coeffs_[i] > mb.coeffs_[i]) return 1;
  }
  return 0;
}

std::optional<std::pair<unsigned, unsigned>> Cyclo::as_root_of_unity() const {
  if (is_zero()) return std::nullopt;
  if (order_ == 1 && coeffs_[0] != 1 && coeffs_[0] != -1) return std::nullopt;
  const Cyclo one(1L);
  const unsigned L = order_;
  if (pow(static_cast<long>(2) * L) != one) return std::nullopt;
  unsigned n = 0;
  for (unsigned d : divisors(2 * L)) {
    if (pow(static_cast<long>(d)) == one) {
      n = d;
      break;
    }
  }
  Cyclo z = zeta(n), p = one;
  for (unsigned e = 0; e < n; ++e) {
    if (p == *this) return std::make_pair(n, e);
    p *= z;
  }
  throw NotRootOfUnity("root of unity detection failed to locate exponent");
}

std::string Cyclo::to_string() const {
  Cyclo m = minimized();
  if (m.order_ == 1) return m.coeffs_[0].str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < m.coeffs_.size(); ++j) {
    const Rational& c = m.coeffs_[j];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (j == 0) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str() << "*";
      os << "zeta(" << m.order_ << ")";
      if (j > 1) os << "^" << j;
    }
  }
  if (first) return "0";
  return os.str();
}

}  // namespace mloop
