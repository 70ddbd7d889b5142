#pragma once

#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxtop/class_function.hpp"
#include "coxtop/coxeter.hpp"
#include "coxtop/cyclo.hpp"

namespace coxtop {

using SubgroupPtr = std::shared_ptr<const Subgroup>;

ClassFunction trivial_character(const GroupPtr& g);
ClassFunction sign_character(const GroupPtr& g);
ClassFunction regular_character(const GroupPtr& g);

/// (1/|W|) sum_i |C_i| a_i conj(b_i)
Cyclo inner_product(const ClassFunction& a, const ClassFunction& b);

/// One value per class of a subgroup.
struct SubgroupClassFunction {
  SubgroupPtr sub;
  std::vector<Cyclo> values;
};

Cyclo inner_product(const SubgroupClassFunction& a, const SubgroupClassFunction& b);
SubgroupClassFunction restrict_to(const SubgroupPtr& h, const ClassFunction& chi);
ClassFunction induce(const SubgroupClassFunction& phi);

/// A homomorphism H -> C^*, stored as exponents of zeta_n.
class LinearCharacter {
 public:
  /// Images of the subgroup's generators, each a root of unity. Throws
  /// InputError if they do not extend to a homomorphism.
  static LinearCharacter from_images(SubgroupPtr h, const std::vector<Cyclo>& images);

  const SubgroupPtr& subgroup() const { return sub_; }
  int order() const { return n_; }
  /// Value at an element of the subgroup (ambient index).
  Cyclo at(int w) const;
  const std::vector<Cyclo>& generator_images() const { return images_; }
  SubgroupClassFunction class_function() const;
  ClassFunction induced() const { return induce(class_function()); }
  LinearCharacter pow(long p) const;
  friend bool operator==(const LinearCharacter& a, const LinearCharacter& b);

 private:
  SubgroupPtr sub_;
  int n_ = 1;
  std::vector<Cyclo> images_;
  std::vector<int> exps_;  // per local element index
};

inline LinearCharacter character_from_images(SubgroupPtr h, const std::vector<Cyclo>& images) {
  return LinearCharacter::from_images(std::move(h), images);
}

/// All |H/[H,H]| linear characters, ordered by generator exponents.
std::vector<LinearCharacter> linear_characters(const SubgroupPtr& h);
/// Order of the abelianization.
int abelianization_order(const Subgroup& h);

/// y -> det(y on E(zeta))^p on C_W(w). zeta must be a root of unity.
LinearCharacter det_on_eigenspace(const GroupPtr& g, int w, const Cyclo& zeta, long p = 1);
LinearCharacter det_on_eigenspace(const SubgroupPtr& centralizer, int w, const Cyclo& zeta, long p = 1);
/// det on the fixed space of w, as a character of C_W(w).
LinearCharacter alpha_character(const GroupPtr& g, int w);

struct CharacterTable {
  GroupPtr group;
  std::vector<ClassFunction> irreducibles;  // by degree, trivial first
  long prime = 0;                           // modulus used for the splitting

  int size() const { return static_cast<int>(irreducibles.size()); }
  /// Exact orthogonality in both directions.
  bool validate() const;
};

/// Dixon-Schneider over F_q with exact lifting.
CharacterTable irreducible_characters(const GroupPtr& g);
/// Cached per group name within the process.
const CharacterTable& character_table(const GroupPtr& g);

/// Multiplicities of the irreducibles; InputError if chi is not a character.
std::vector<long> decompose(const CharacterTable& t, const ClassFunction& chi);
ClassFunction recompose(const CharacterTable& t, const std::vector<long>& mult);

nlohmann::json character_table_to_json(const CharacterTable& t);
/// Checks the class fingerprints against g.
CharacterTable character_table_from_json(const GroupPtr& g, const nlohmann::json& j);

}  // namespace coxtop
