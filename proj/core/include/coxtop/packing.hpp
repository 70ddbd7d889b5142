#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coxtop {

using PackVector = std::vector<long>;

/// A deduplicated candidate list; sources[i] are the ids that produced vectors[i].
struct CandidateList {
  std::vector<PackVector> vectors;
  std::vector<std::vector<int>> sources;

  /// Appends v (or merges its source into an existing equal vector); returns its index.
  int add(const PackVector& v, int source);
  int size() const { return static_cast<int>(vectors.size()); }
};

struct PackingProblem {
  PackVector goal;
  std::vector<CandidateList> lists;

  /// Throws InputError on length mismatch or negative entries.
  void validate() const;
  /// {"goal":[...],"lists":[[[...],...],...]}
  static PackingProblem from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

enum class PackingStrategy {
  Given,           // lists in input order
  AscendingSize,   // smallest list first, ties by larger minimal first entry
  DescendingSize,
};
std::string to_string(PackingStrategy s);
PackingStrategy parse_packing_strategy(const std::string& s);

struct SearchStats {
  long vertices = 0;       // vertices of the explored tree, root included
  std::vector<int> order;  // list indices in the order they were branched on
};

/// A solution picks one vector index per list, in the original list order.
using PackingSolution = std::vector<int>;

struct PackingResult {
  std::vector<PackingSolution> solutions;  // sorted
  SearchStats stats;
};

/// All selections summing to the goal. Branches only on vectors <= the
/// remaining goal componentwise.
PackingResult exact_packings(const PackingProblem& p, PackingStrategy strategy = PackingStrategy::AscendingSize);

/// Full Cartesian-product scan, for testing. InputError if the product exceeds cap.
std::vector<PackingSolution> brute_force_packings(const PackingProblem& p, long cap = 10'000'000);

/// The order in which exact_packings visits the lists.
std::vector<int> packing_order(const PackingProblem& p, PackingStrategy strategy);

nlohmann::json packing_result_to_json(const PackingProblem& p, const PackingResult& r);

}  // namespace coxtop
