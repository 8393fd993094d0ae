#ifndef MLOOP_CYCLOTOMIC_HPP
#define MLOOP_CYCLOTOMIC_HPP

#include <optional>
#include <utility>
#include <vector>

#include "mloop/rational.hpp"

namespace mloop {

unsigned euler_phi(unsigned n);
std::vector<unsigned> divisors(unsigned n);

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
/// Exact integers; cached across calls.
const std::vector<Integer>& cyclotomic_polynomial(unsigned n);

/// An element of the cyclotomic field Q(zeta_order), stored as the reduced
/// polynomial in zeta_order of degree < phi(order). Values collapse to
/// order 1 whenever the reduced form is a plain rational, so rationals have
/// a unique cheap representation regardless of how they were produced.
///
/// Arithmetic between different orders lifts both operands to the lcm via
/// zeta_L -> zeta_M^(M/L); equality and the canonical total order are
/// representation-independent.
class Cyclo {
public:
  Cyclo() : order_(1), coeffs_(1, Rational(0)) {}
  Cyclo(const Rational& q) : order_(1), coeffs_(1, q) {}
  Cyclo(long n) : order_(1), coeffs_(1, Rational(n)) {}
  Cyclo(int n) : order_(1), coeffs_(1, Rational(n)) {}

  /// The primitive n-th root of unity zeta_n.
  static Cyclo zeta(unsigned n);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const { return order_ == 1 && coeffs_[0] == 0; }
  bool is_one() const { return order_ == 1 && coeffs_[0] == 1; }
  bool is_rational() const { return order_ == 1; }
  /// Only meaningful when is_rational().
  const Rational& rational_value() const { return coeffs_[0]; }

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }

  /// Multiplicative inverse; throws DivisionByZero on zero.
  Cyclo inverse() const;
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) {
    return a * b.inverse();
  }

  /// Integer power, negative exponents via the inverse.
  Cyclo pow(long e) const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Rewrites the value at the divisor-minimal cyclotomic order. The result
  /// is the canonical representation: equal values always minimize to
  /// identical (order, coeffs) pairs.
  Cyclo minimized() const;

  /// Canonical strict total order: compares (minimal order, coefficients at
  /// that order) lexicographically. Returns -1, 0, or +1.
  static int compare(const Cyclo& a, const Cyclo& b);

  /// If the value is a root of unity, returns (n, e) with value = zeta_n^e,
  /// n minimal and 0 <= e < n. Detection is exact: x is a root of unity in
  /// Q(zeta_L) iff x^(2L) = 1.
  std::optional<std::pair<unsigned, unsigned>> as_root_of_unity() const;

  /// Canonical printable form, re-parseable by the scalar expression
  /// grammar, e.g. "-1/2 + zeta(8)^3".
  std::string to_string() const;

  /// Value at `target` order (order() must divide target).
  Cyclo lifted_to(unsigned target) const;

private:
  Cyclo(unsigned order, std::vector<Rational> coeffs)
      : order_(order), coeffs_(std::move(coeffs)) {}
  void normalize();

  unsigned order_;
  std::vector<Rational> coeffs_;
};

}  // namespace mloop

#endif
