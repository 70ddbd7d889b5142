#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxtop/chars.hpp"
#include "coxtop/coxeter.hpp"
#include "coxtop/packing.hpp"

namespace coxtop {

/// Element expressions: whitespace-separated tokens multiplied left to right.
///   s<i>  e  1  w0  cox  hs  hl       generators, identity, longest, s1...sn,
///                                     reflections in the highest short/long root
///   sp(a,b,...)                       signed permutation (B and D)
///   bw<parts> bc<parts>.<i> bx<parts>.<i>
///                                     cuspidal rep, c_i and x_i of a B partition,
///                                     e.g. bw112, bc22.1
///   @name                             a named element
/// Any token may carry a power suffix, e.g. cox^3.
int parse_element(const GroupPtr& g, const std::string& expr, const std::map<std::string, int>& named = {});

/// Table values: ".", integers, and sums like "11-mu", "2nu", "z3^2", "-z5".
/// mu = z5 + z5^4, nu = z5^2 + z5^3, z<n> = exp(2 pi i / n).
Cyclo parse_value(const std::string& text);
/// A fixture entry: a JSON integer or a value string.
Cyclo parse_table_value(const nlohmann::json& j);

/// Groups with a shipped table.
std::vector<std::string> fixture_groups();
/// Parsed table; InputError if absent, InternalError if its checksum is wrong.
const nlohmann::json& table_fixture(const std::string& group);
/// 64-bit FNV-1a of the bytes.
uint64_t fnv1a64(const std::string& bytes);
/// Names of fixtures whose embedded bytes do not match the manifest.
std::vector<std::string> fixture_checksum_failures();

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct RowReport {
  std::string name;
  std::vector<Cyclo> expected;  // fixture column order
  std::vector<Cyclo> computed;
  std::vector<int> mismatched_columns;
  bool ok() const { return mismatched_columns.empty() && expected.size() == computed.size(); }
};

struct TableReport {
  std::string group;
  std::vector<std::string> column_labels;
  std::vector<int> column_classes;           // our class index per fixture column, -1 if unmatched
  std::map<std::string, int> cuspidal_reps;  // character name -> representative used
  std::map<std::string, std::vector<Cyclo>> chosen_images;  // characters found by search
  std::vector<RowReport> rows;
  std::vector<CheckLine> checks;
  int ambiguous_columns = 0;  // columns no row distinguishes from another

  bool ok() const;
  const RowReport* row(const std::string& name) const;
  const CheckLine* check(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Recomputes every row of the shipped table and compares column by column.
TableReport reproduce_table(const GroupPtr& g);
/// Same, against a caller-supplied table in the fixture format.
TableReport reproduce_table(const GroupPtr& g, const nlohmann::json& fixture);

/// rho_top = sign * omega^rank as class functions.
bool check_rho_equals_eps_omega(const GroupPtr& g);

struct VerifyOptions {
  int jobs = 1;
  size_t solution_cap = 1000;  // record every solution below this count
  PackingStrategy strategy = PackingStrategy::AscendingSize;
};

struct CertificateCandidate {
  std::vector<Cyclo> images;  // of the centralizer generators, first source
  std::vector<long> multiplicities;
  int sources = 0;  // linear characters inducing to this vector
};

struct CertificateClass {
  int cls = 0;
  int rep = 0;
  Fingerprint fingerprint;
  std::vector<int> centralizer_gens;
  int centralizer_order = 0;
  int linear_characters = 0;
  std::vector<CertificateCandidate> candidates;
};

struct Certificate {
  GroupPtr group;
  std::vector<int> degrees;  // of the irreducibles, in table order
  std::vector<long> goal;    // multiplicities of rho_top
  std::vector<CertificateClass> classes;
  std::vector<PackingSolution> solutions;
  long solution_count = 0;
  bool solutions_truncated = false;
  SearchStats stats;
  bool packing_solved = false;
  bool rho_equals_eps_omega = false;

  bool verified() const { return packing_solved && rho_equals_eps_omega; }
  std::vector<int> list_sizes() const;
  nlohmann::json to_json() const;
};

/// Cuspidal classes, centralizers, linear characters, induced multiplicity
/// vectors, packing against rho_top, and the rho = sign * omega check.
Certificate verify_conjecture_b(const GroupPtr& g, const VerifyOptions& opt = {});

/// Rebuilds everything a certificate claims from its JSON alone.
std::vector<std::string> check_certificate(const nlohmann::json& cert);

struct BulkyEntry {
  SubsetMask mask = 0;  // least representative of the conjugacy class
  std::string label;
  int rank = 0;
  bool bulky = false;
};

struct BulkyReport {
  std::string group;
  std::vector<BulkyEntry> entries;  // one per class of parabolic subgroups
  std::vector<std::string> expected_bulky;  // excluding W, the trivial group and A1
  std::vector<std::string> computed_bulky;
  std::vector<std::string> expected_nonbulky_maximal;  // rank-4 groups only
  std::vector<std::string> computed_nonbulky_maximal;
  bool blanket_ok = false;  // trivial and A1 classes are bulky
  bool has_expectation = false;

  bool ok() const;
  nlohmann::json to_json() const;
};

BulkyReport bulky_report(const GroupPtr& g);

}  // namespace coxtop
