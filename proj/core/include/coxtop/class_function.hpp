#pragma once

#include <string>
#include <vector>

#include "coxtop/coxeter.hpp"
#include "coxtop/cyclo.hpp"

namespace coxtop {

/// One value per conjugacy class, in the group's class order.
struct ClassFunction {
  GroupPtr group;
  std::vector<Cyclo> values;

  ClassFunction() = default;
  ClassFunction(GroupPtr g, std::vector<Cyclo> v);
  static ClassFunction constant(GroupPtr g, const Cyclo& c);

  const Cyclo& operator[](int cls) const { return values[cls]; }
  Cyclo at_element(int w) const { return values[group->class_of(w)]; }
  Cyclo degree() const { return values[group->class_of(0)]; }
  bool is_rational() const;
  std::vector<Rational> rational_values() const;

  ClassFunction& operator+=(const ClassFunction& o);
  ClassFunction& operator-=(const ClassFunction& o);
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  /// Pointwise product.
  friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);
  friend ClassFunction operator*(const Cyclo& c, const ClassFunction& a);
  friend bool operator==(const ClassFunction& a, const ClassFunction& b);
  friend bool operator!=(const ClassFunction& a, const ClassFunction& b) { return !(a == b); }

  /// Values joined by commas, "." for zero.
  std::string str() const;
};

}  // namespace coxtop
