#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxtop/class_function.hpp"
#include "coxtop/coxeter.hpp"
#include "coxtop/matrix.hpp"

namespace coxtop {

/// Sparse element of the rational group algebra QW.
class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(GroupPtr g) : g_(std::move(g)) {}
  static GroupAlgebraElement basis(GroupPtr g, int w, const Rational& c = 1);

  const GroupPtr& group() const { return g_; }
  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coeff(int w) const;
  void add(int w, const Rational& c);
  bool is_zero() const { return terms_.empty(); }

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
  GroupAlgebraElement& operator*=(const Rational& c);
  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
  friend GroupAlgebraElement operator*(const Rational& c, GroupAlgebraElement a) { return a *= c; }
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

 private:
  GroupPtr g_;
  std::map<int, Rational> terms_;
};

/// Reading of the counting set for m_KJ (J a subset of K). The literal reading
/// counts x in X_J with x^-1 J x inside K.
struct DescentConvention {
  bool left_cosets = false;    // X_J avoids J in right descents rather than left descents
  bool over_k = false;         // x runs over X_K instead of X_J
  bool simple_target = false;  // conjugate of J must be simple, not inside K
  bool inverse = false;        // conjugate as x J x^-1 instead of x^-1 J x
  bool double_coset = false;   // x also minimal on the other side
  bool transpose = false;      // roles of K and J swapped in the count

  std::string str() const;
  static std::vector<DescentConvention> all();
  friend bool operator==(const DescentConvention&, const DescentConvention&) = default;
};

/// x in X_K with x^-1 J x made of simple reflections.
DescentConvention default_descent_convention();

/// Subsets by decreasing size, lexicographic within a size.
std::vector<SubsetMask> descent_subset_order(int rank);

struct DescentData {
  GroupPtr group;
  DescentConvention convention;
  std::vector<SubsetMask> subsets;
  std::vector<int> position;  // mask -> index into subsets
  Matrix<Rational> m;         // integer entries, rows/columns in subset order
  Matrix<Rational> n;         // inverse of m
  std::vector<int> gamma;     // by mask

  /// The descent set that decides membership in X_J.
  SubsetMask descents(int w) const;
  /// Coefficient of e_K at any element with descent set d, indexed by d.
  std::vector<Rational> coefficient_table(SubsetMask k) const;
  GroupAlgebraElement x(SubsetMask j) const;
  GroupAlgebraElement e(SubsetMask k) const;
};

Matrix<Rational> m_matrix(const GroupPtr& g, const DescentConvention& conv = default_descent_convention());
DescentData quasi_idempotents(const GroupPtr& g, const DescentConvention& conv = default_descent_convention());

/// lambda with e_K e_K = lambda e_K, or nothing if e_K e_K is not a multiple
/// of e_K. Exact over the whole group.
std::optional<Rational> quasi_idempotent_scalar(const DescentData& d, SubsetMask k);

/// Checks e_K e_K = lambda e_K coefficientwise. samples < 0 checks every
/// coefficient, otherwise the identity plus `samples` random elements.
bool check_quasi_idempotent(const DescentData& d, SubsetMask k, const Rational& lambda, long samples = -1,
                            uint64_t seed = 1);

/// Character of QW e for e with e e = gamma e, gamma != 0.
ClassFunction left_ideal_character(const GroupAlgebraElement& e);

ClassFunction rho_top(const DescentData& d);
ClassFunction rho_top(const GroupPtr& g);

/// Conventions under which, for every probe group, each e_K squares to a
/// nonzero multiple of itself, e_S is idempotent and rho of A1 is the sign.
std::vector<DescentConvention> admissible_conventions(const std::vector<GroupPtr>& probes);

}  // namespace coxtop
