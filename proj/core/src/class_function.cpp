#include "coxtop/class_function.hpp"

#include "coxtop/errors.hpp"

namespace coxtop {

namespace {

void same_group(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group || a.values.size() != b.values.size())
    throw InputError("class functions live on different groups");
}

}  // namespace

ClassFunction::ClassFunction(GroupPtr g, std::vector<Cyclo> v) : group(std::move(g)), values(std::move(v)) {
  if (!group || static_cast<int>(values.size()) != group->num_classes())
    throw InputError("class function needs one value per class");
}

ClassFunction ClassFunction::constant(GroupPtr g, const Cyclo& c) {
  int n = g->num_classes();
  return ClassFunction(std::move(g), std::vector<Cyclo>(n, c));
}

bool ClassFunction::is_rational() const {
  for (const auto& v : values)
    if (!v.is_rational()) return false;
  return true;
}

std::vector<Rational> ClassFunction::rational_values() const {
  std::vector<Rational> out;
  for (const auto& v : values) {
    if (!v.is_rational()) throw InputError("class function has irrational values");
    out.push_back(v.to_rational());
  }
  return out;
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
  same_group(*this, o);
  for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
  same_group(*this, o);
  for (size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
  same_group(a, b);
  ClassFunction r = a;
  for (size_t i = 0; i < r.values.size(); ++i) r.values[i] *= b.values[i];
  return r;
}

ClassFunction operator*(const Cyclo& c, const ClassFunction& a) {
  ClassFunction r = a;
  for (auto& v : r.values) v *= c;
  return r;
}

bool operator==(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group || a.values.size() != b.values.size()) return false;
  for (size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] != b.values[i]) return false;
  return true;
}

std::string ClassFunction::str() const {
  std::string s;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += values[i].is_zero() ? "." : values[i].str();
  }
  return s;
}

}  // namespace coxtop
