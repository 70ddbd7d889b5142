#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxtop/cyclo.hpp"
#include "coxtop/golden.hpp"
#include "coxtop/matrix.hpp"

namespace coxtop {

enum class Family { A, B, D, F, H, I };

struct CoxeterType {
  Family family = Family::A;
  int rank = 1;
  int m = 0;  // dihedral parameter, I2 only

  /// "A3", "B4", "D4", "F4", "H3", "H4", "I2.5" (also "I2(5)").
  static CoxeterType parse(const std::string& text);
  std::string name() const;
  friend bool operator==(const CoxeterType&, const CoxeterType&) = default;
};

/// Bitmask over the simple reflections, bit i = s_{i+1}.
using SubsetMask = unsigned;

struct Fingerprint {
  int order = 1;
  int class_size = 1;
  int centralizer_order = 1;
  std::vector<Golden> charpoly;  // det(xI - M), constant term first
  std::vector<std::pair<int, int>> power_classes;  // (prime, class of w^prime)

  std::string str() const;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct ConjugacyClass {
  int rep = 0;
  std::vector<int> members;
  Fingerprint fingerprint;
};

/// A finite Coxeter group of rank <= 6 with all elements enumerated. Elements
/// are indices 0..size()-1 ordered by (length, lex-least reduced word); 0 is
/// the identity and 1..rank are the simple reflections.
class CoxeterGroup {
 public:
  static std::shared_ptr<const CoxeterGroup> build(const CoxeterType& t);

  const CoxeterType& type() const { return type_; }
  std::string name() const { return type_.name(); }
  int rank() const { return n_; }
  int size() const { return size_; }
  int num_pos_roots() const { return npos_; }
  bool crystallographic() const { return crystallographic_; }

  // Roots in simple-root coordinates: positive roots 0..N-1 in height-then-lex
  // order (simple roots first), root N+i is the negative of root i.
  const std::vector<std::vector<Golden>>& roots() const { return roots_; }
  int root_index(const std::vector<Golden>& v) const;
  int negate_root(int r) const { return r < npos_ ? r + npos_ : r - npos_; }
  bool is_positive_root(int r) const { return r < npos_; }
  const Matrix<Golden>& cartan() const { return cartan_; }
  /// Symmetric bilinear form in simple-root coordinates.
  const Matrix<Golden>& gram() const { return gram_; }
  Golden inner(const std::vector<Golden>& x, const std::vector<Golden>& y) const;
  bool is_long_root(int r) const;
  /// Highest root among the long (or short) roots.
  int highest_root(bool long_root) const;

  int identity() const { return 0; }
  int generator(int i) const { return gen_[i]; }
  int mul(int a, int b) const;
  int inverse(int w) const { return inv_[w]; }
  int conjugate(int x, int by) const { return mul(mul(by, x), inv_[by]); }
  int power(int w, long k) const;
  int length(int w) const { return len_[w]; }
  /// s in D_L(w) iff l(sw) < l(w).
  SubsetMask left_descents(int w) const { return ldes_[w]; }
  SubsetMask right_descents(int w) const { return rdes_[w]; }
  int order(int w) const { return ord_[w]; }
  int root_image(int w, int r) const { return perm_[static_cast<size_t>(w) * 2 * npos_ + r]; }
  const uint8_t* perm(int w) const { return &perm_[static_cast<size_t>(w) * 2 * npos_]; }
  /// Element with the given images of the simple roots; -1 if none.
  int find_by_simple_images(const std::vector<int>& images) const;
  std::vector<int> word(int w) const;
  int from_word(const std::vector<int>& gens) const;
  std::string word_string(int w) const;
  int longest() const { return longest_; }
  /// Matrix on V in the simple-root basis (columns are images of simple roots).
  Matrix<Golden> matrix(int w) const;
  Matrix<Cyclo> cyclo_matrix(int w) const { return to_cyclo(matrix(w)); }

  int num_classes() const { return static_cast<int>(classes_.size()); }
  int class_of(int w) const { return cls_[w]; }
  const ConjugacyClass& conj_class(int c) const { return classes_[c]; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  /// Class index of the class with the given fingerprint, or -1.
  int class_by_fingerprint(const Fingerprint& f) const;

  const std::vector<int>& exponents() const { return exponents_; }
  /// Exponent of the group (lcm of element orders).
  int exponent() const { return exponent_; }
  /// Coxeter element s1 s2 ... sn.
  int coxeter_element() const;

  bool is_cuspidal(int w) const;
  std::vector<int> cuspidal_classes() const;
  /// Regular eigenspaces of the representative: pairs (d, k) with E(zeta_d^k)
  /// nonzero and not contained in any reflecting hyperplane, d = order.
  std::vector<int> regular_eigenvalue_powers(int cls) const;
  bool is_regular_class(int cls) const { return !regular_eigenvalue_powers(cls).empty(); }

  /// X_J = { w : D_L(w) and J disjoint }.
  std::vector<int> parabolic_transversal(SubsetMask j) const;
  /// Elements of W_L.
  std::vector<int> parabolic_elements(SubsetMask l) const;

  /// Canonical type label of W_L such as "A1~A1", "B3", "A1I2(5)".
  std::string parabolic_label(SubsetMask l) const;
  /// Partition of the 2^n subsets into W-conjugacy classes (class id per mask).
  const std::vector<int>& subset_classes() const { return subset_class_; }

  // Signed permutations (families B and D): image[k] = +-(m+1) for v_{k+1} -> +-v_{m+1}.
  std::vector<int> signed_permutation(int w) const;
  int from_signed_permutation(const std::vector<int>& sp) const;
  /// Positive-cycle and negative-cycle lengths, e.g. "11.1", ".22".
  std::string signed_cycle_type(int w) const;

 private:
  CoxeterGroup() = default;
  void build_roots();
  void enumerate();
  void build_classes();
  void build_exponents();
  void build_subset_classes();
  uint64_t key_of(const uint8_t* p) const;

  CoxeterType type_;
  int n_ = 0;
  int npos_ = 0;
  int size_ = 0;
  bool crystallographic_ = true;
  Matrix<Golden> cartan_;
  Matrix<Golden> gram_;
  std::vector<Golden> root_len2_;  // (alpha_i, alpha_i)
  std::vector<std::vector<Golden>> roots_;
  std::vector<std::vector<int>> gen_perm_;
  std::vector<int> gen_;
  std::vector<uint8_t> perm_;
  std::vector<uint64_t> keys_;
  std::unordered_map<uint64_t, int> index_;
  std::vector<uint8_t> len_, ldes_, rdes_, ord_;
  std::vector<int> inv_, parent_, parent_gen_;
  std::vector<int> cls_;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> exponents_;
  int exponent_ = 1;
  int longest_ = 0;
  std::vector<int> subset_class_;
  Matrix<Rational> vbasis_;  // columns: simple roots in v-coordinates (B, D)
  Matrix<Rational> vbasis_inv_;
};

using GroupPtr = std::shared_ptr<const CoxeterGroup>;

/// An enumerated subgroup with its own conjugacy classes and fusion into W.
class Subgroup {
 public:
  static Subgroup generated(GroupPtr g, std::vector<int> gens);
  /// elements must form a subgroup; generators are chosen greedily.
  static Subgroup from_elements(GroupPtr g, std::vector<int> elements);

  const GroupPtr& group() const { return g_; }
  const std::vector<int>& elements() const { return elems_; }
  const std::vector<int>& generators() const { return gens_; }
  int order() const { return static_cast<int>(elems_.size()); }
  bool contains(int w) const { return local_[w] >= 0; }
  int local_index(int w) const { return local_[w]; }

  int num_classes() const { return static_cast<int>(class_reps_.size()); }
  int class_of(int w) const { return cls_[local_[w]]; }
  int class_rep(int c) const { return class_reps_[c]; }
  int class_size(int c) const { return class_sizes_[c]; }
  /// Ambient class of each subgroup class.
  int fusion(int c) const { return fusion_[c]; }

 private:
  void finish();
  GroupPtr g_;
  std::vector<int> elems_, gens_, local_, cls_, class_reps_, class_sizes_, fusion_;
};

Subgroup centralizer(const GroupPtr& g, int w);
/// Centralizer of a set of elements.
Subgroup centralizer_of_set(const GroupPtr& g, const std::vector<int>& ws);
Subgroup parabolic_subgroup(const GroupPtr& g, SubsetMask l);
Subgroup normalizer_parabolic(const GroupPtr& g, SubsetMask l);

struct BulkyResult {
  bool bulky = false;
  int normalizer_order = 0;
  int centralizer_order = 0;  // of W_L in N
  int center_order = 0;       // of W_L
  std::vector<int> complement;  // N_L = {w : w(L) = L}
};

/// W_L is bulky when the complement N_L is normal in N_W(W_L), which holds
/// exactly when N_L fixes every simple root in L.
BulkyResult is_bulky(const GroupPtr& g, SubsetMask l);

/// Reflection fixing the hyperplane orthogonal to v (v must be a root).
int reflection_by_root(const GroupPtr& g, const std::vector<Golden>& v);
int reflection_of_root(const GroupPtr& g, int root);

/// Partition in non-decreasing order, e.g. {1,1,2}.
using Partition = std::vector<int>;
int b_cuspidal_rep(const GroupPtr& g, const Partition& lambda);
/// {c_i} followed by {x_i : lambda_i = lambda_{i+1}}.
std::vector<int> b_centralizer_gens(const GroupPtr& g, const Partition& lambda);
/// t_i (1-based) and s_{i,j} as elements of a B_n group.
int b_sign_change(const GroupPtr& g, int i);
int b_transposition(const GroupPtr& g, int i, int j);
/// c_i of the lambda construction (1-based i).
int b_negative_cycle(const GroupPtr& g, const Partition& lambda, int i);
int b_swap_blocks(const GroupPtr& g, const Partition& lambda, int i);

}  // namespace coxtop
