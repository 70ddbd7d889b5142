#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxtop/golden.hpp"
#include "coxtop/rational.hpp"

namespace coxtop {

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(int n);

int euler_phi(int n);

/// Element of Q(zeta_n) in the power basis 1, x, ..., x^(phi(n)-1) of
/// Q[x]/Phi_n, x = zeta_n = exp(2 pi i / n). Values of different orders are
/// compared and combined after embedding into the lcm order.
class Cyclo {
 public:
  Cyclo() : Cyclo(0) {}
  Cyclo(long v) : n_(1), c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  Cyclo(const Rational& v) : n_(1), c_{v} {}  // NOLINT(google-explicit-constructor)
  Cyclo(int order, std::vector<Rational> coeffs);

  static Cyclo root_of_unity(int n, long k);
  /// sqrt5 = 1 + 2(zeta5 + zeta5^4)
  static Cyclo from_golden(const Golden& g);

  int order() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws InputError unless rational.
  Rational to_rational() const;
  std::optional<Golden> to_golden() const;

  Cyclo embed(int m) const;
  /// Same value written in the smallest order dividing order().
  Cyclo reduced() const;
  Cyclo conj() const;
  /// zeta_n -> zeta_n^k, gcd(k, n) = 1.
  Cyclo galois(long k) const;
  Cyclo inverse() const;
  Cyclo pow(long e) const;
  /// If this is a root of unity zeta_m^k (m minimal), returns {m, k}.
  std::optional<std::pair<int, int>> as_root_of_unity() const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o) { return *this *= o.inverse(); }

  friend Cyclo operator+(Cyclo x, const Cyclo& y) { return x += y; }
  friend Cyclo operator-(Cyclo x, const Cyclo& y) { return x -= y; }
  friend Cyclo operator*(Cyclo x, const Cyclo& y) { return x *= y; }
  friend Cyclo operator/(Cyclo x, const Cyclo& y) { return x /= y; }
  friend bool operator==(const Cyclo& x, const Cyclo& y);
  friend bool operator!=(const Cyclo& x, const Cyclo& y) { return !(x == y); }

  /// Readable form: rationals as "p/q", Q(sqrt5) values with r5, otherwise
  /// sums of E(n)^k terms.
  std::string str() const;

 private:
  int n_;
  std::vector<Rational> c_;
};

}  // namespace coxtop
