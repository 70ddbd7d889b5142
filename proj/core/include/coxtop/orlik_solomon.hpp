#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxtop/class_function.hpp"
#include "coxtop/coxeter.hpp"
#include "coxtop/golden.hpp"

namespace coxtop {

enum class ArrangementField { Rational, Sqrt5 };

/// Hyperplanes H_0, H_1, ... given by normal vectors, in index order.
struct Arrangement {
  ArrangementField field = ArrangementField::Rational;
  int dim = 0;
  std::vector<std::vector<Golden>> normals;

  int size() const { return static_cast<int>(normals.size()); }
  /// Validates: at most 64 hyperplanes, no zero or proportional normals, essential.
  static Arrangement make(ArrangementField field, std::vector<std::vector<Golden>> normals);
};

/// Positive roots in root order.
Arrangement arrangement_of_group(const GroupPtr& g);
/// {"field": "rational" | "sqrt5", "normals": [[coord, ...], ...]}
Arrangement arrangement_from_json(const nlohmann::json& j);

/// A product a_{t_1} ... a_{t_p} with t_1 < ... < t_p, as the bit set {t_i}.
using Monomial = uint64_t;
std::vector<int> monomial_indices(Monomial m);
Monomial monomial_of(const std::vector<int>& increasing);
inline int monomial_degree(Monomial m) { return __builtin_popcountll(m); }

struct NbcData {
  std::vector<std::vector<Monomial>> basis;  // by degree, in discovery order
  std::vector<Monomial> minimal_broken;
  std::vector<int> completion;               // a t completing each minimal broken circuit
  std::unordered_map<Monomial, int> index;   // position within its degree

  /// |basis of degree p| for p = 0..dim.
  std::vector<long> poincare() const;
  long total() const;
};

/// The queue procedure; broken circuits are completed by a larger index.
NbcData nbc(const Arrangement& arr);

bool is_independent(const Arrangement& arr, Monomial m);

/// Element of A^p: map from NBC monomial to coefficient.
using AElement = std::map<Monomial, Rational>;

class OrlikSolomon {
 public:
  explicit OrlikSolomon(Arrangement arr, size_t cache_cap = 0);

  const Arrangement& arrangement() const { return arr_; }
  const NbcData& nbc_data() const { return nbc_; }

  /// Normal form of a_{t_1} ... a_{t_p} (any order, repeats give zero) times c.
  AElement rewrite(const std::vector<int>& tuple, const Rational& c = 1);

  /// Normal form of the increasing monomial m as (basis index, coefficient) pairs.
  const std::vector<std::pair<int, long>>& normal_form(Monomial m);

  size_t cache_size() const { return cache_.size(); }

 private:
  const std::vector<std::pair<int, long>>& compute(Monomial m);
  void maybe_evict();
  int find_minimal_broken(Monomial m) const;

  Arrangement arr_;
  NbcData nbc_;
  size_t cap_;
  std::unordered_map<Monomial, std::vector<std::pair<int, long>>> cache_;
  std::vector<std::vector<long>> scratch_;
  std::vector<std::vector<int>> buckets_;  // minimal broken circuits by their two lowest indices
};

/// The Orlik-Solomon algebra of a Coxeter group, with hyperplanes indexed by
/// positive roots (or their reverse order) and the W-action a_t -> a_{wtw^-1}.
class GroupOrlikSolomon {
 public:
  explicit GroupOrlikSolomon(GroupPtr g, bool reverse_order = false, size_t cache_cap = 0);

  const GroupPtr& group() const { return g_; }
  OrlikSolomon& algebra() { return os_; }
  /// Hyperplane index of each positive root.
  int hyperplane_of_root(int r) const { return hyper_of_root_[r]; }

  /// w applied to the NBC monomial m, in normal form.
  AElement act(int w, Monomial m);
  /// Trace of w on A^p.
  Integer trace(int w, int p);
  ClassFunction omega_character(int p);

 private:
  // sign and target monomial of w applied to m
  std::pair<int, Monomial> permute(int w, Monomial m) const;

  GroupPtr g_;
  std::vector<int> root_of_hyper_, hyper_of_root_;
  OrlikSolomon os_;
};

ClassFunction omega_character(const GroupPtr& g, int p);

}  // namespace coxtop
