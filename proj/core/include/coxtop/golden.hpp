#pragma once

#include <string>

#include "coxtop/rational.hpp"

namespace coxtop {

// a + b*sqrt(5)
class Golden {
 public:
  Golden() = default;
  Golden(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Golden(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Golden(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Golden sqrt5() { return Golden(0, 1); }
  // (1 + sqrt5) / 2
  static Golden tau() { return Golden(Rational(1, 2), Rational(1, 2)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  Rational norm() const { return a_ * a_ - 5 * b_ * b_; }
  Golden galois() const { return Golden(a_, -b_); }
  // exact sign of the real number a + b*sqrt5
  int sign() const;

  Golden operator-() const { return Golden(-a_, -b_); }
  Golden& operator+=(const Golden& o);
  Golden& operator-=(const Golden& o);
  Golden& operator*=(const Golden& o);
  Golden& operator/=(const Golden& o);
  Golden inverse() const;

  friend Golden operator+(Golden x, const Golden& y) { return x += y; }
  friend Golden operator-(Golden x, const Golden& y) { return x -= y; }
  friend Golden operator*(Golden x, const Golden& y) { return x *= y; }
  friend Golden operator/(Golden x, const Golden& y) { return x /= y; }
  friend bool operator==(const Golden& x, const Golden& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Golden& x, const Golden& y) { return !(x == y); }
  friend bool operator<(const Golden& x, const Golden& y) { return (x - y).sign() < 0; }

  std::string str() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

}  // namespace coxtop
