#include "coxtop/golden.hpp"

#include "coxtop/errors.hpp"

namespace coxtop {

int Golden::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 5 b^2
  int c = cmp(Rational(a_ * a_), Rational(5 * b_ * b_));
  if (c == 0) return 0;  // unreachable for rational a, b != 0
  return c > 0 ? sa : sb;
}

Golden& Golden::operator+=(const Golden& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Golden& Golden::operator-=(const Golden& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

Golden& Golden::operator*=(const Golden& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational na = a_ * o.a_ + 5 * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

Golden Golden::inverse() const {
  if (is_zero()) throw InputError("division by zero in Q(sqrt5)");
  if (sgn(b_) == 0) return Golden(Rational(1 / a_));
  Rational n = norm();
  return Golden(Rational(a_ / n), Rational(-b_ / n));
}

Golden& Golden::operator/=(const Golden& o) { return *this *= o.inverse(); }

std::string Golden::str() const {
  if (sgn(b_) == 0) return to_display(a_);
  std::string s;
  if (sgn(a_) != 0) s = to_display(a_) + (sgn(b_) > 0 ? "+" : "");
  if (b_ == 1)
    s += "r5";
  else if (b_ == -1)
    s += "-r5";
  else
    s += to_display(b_) + "*r5";
  return s;
}

}  // namespace coxtop
