#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "coxtop/coxeter.hpp"
#include "coxtop/errors.hpp"

using namespace coxtop;

namespace {

GroupPtr group(const std::string& name) {
  static std::map<std::string, GroupPtr> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  return cache[name] = CoxeterGroup::build(CoxeterType::parse(name));
}

std::set<std::string> bulky_labels(const GroupPtr& g) {
  std::set<std::string> out;
  const auto& sc = g->subset_classes();
  const SubsetMask all = (1u << g->rank()) - 1;
  for (SubsetMask l = 0; l <= all; ++l) {
    if (sc[l] != static_cast<int>(l)) continue;
    std::string label = g->parabolic_label(l);
    if (l == 0 || l == all || label == "A1") {
      EXPECT_TRUE(is_bulky(g, l).bulky) << g->name() << " " << label;
      continue;
    }
    if (is_bulky(g, l).bulky) out.insert(label);
  }
  return out;
}

std::set<std::string> nonbulky_max_rank(const GroupPtr& g) {
  std::set<std::string> out;
  const auto& sc = g->subset_classes();
  for (SubsetMask l = 0; l < (1u << g->rank()); ++l)
    if (sc[l] == static_cast<int>(l) && __builtin_popcount(l) == g->rank() - 1 && !is_bulky(g, l).bulky)
      out.insert(g->parabolic_label(l));
  return out;
}

}  // namespace

TEST(CoxeterType, ParsesAndRejects) {
  EXPECT_EQ(CoxeterType::parse("H4").name(), "H4");
  EXPECT_EQ(CoxeterType::parse("I2.5").m, 5);
  EXPECT_EQ(CoxeterType::parse("I2(6)").m, 6);
  EXPECT_EQ(CoxeterType::parse("C3").family, Family::B);
  EXPECT_THROW(CoxeterType::parse("E6"), InputError);
  EXPECT_THROW(CoxeterType::parse("H5"), InputError);
  EXPECT_THROW(CoxeterType::parse("D3"), InputError);
  EXPECT_THROW(CoxeterType::parse("I2.7"), InputError);
  EXPECT_THROW(CoxeterType::parse("x"), InputError);
}

TEST(CoxeterGroup, OrdersClassesExponents) {
  struct Row {
    const char* name;
    int order, classes, npos;
    std::vector<int> exps;
  };
  std::vector<Row> rows = {
      {"A1", 2, 2, 1, {1}},
      {"A3", 24, 5, 6, {1, 2, 3}},
      {"A4", 120, 7, 10, {1, 2, 3, 4}},
      {"B2", 8, 5, 4, {1, 3}},
      {"B3", 48, 10, 9, {1, 3, 5}},
      {"B4", 384, 20, 16, {1, 3, 5, 7}},
      {"D4", 192, 13, 12, {1, 3, 3, 5}},
      {"D5", 1920, 18, 20, {1, 3, 4, 5, 7}},
      {"F4", 1152, 25, 24, {1, 5, 7, 11}},
      {"H3", 120, 10, 15, {1, 5, 9}},
      {"H4", 14400, 34, 60, {1, 11, 19, 29}},
      {"I2.5", 10, 4, 5, {1, 4}},
      {"I2.6", 12, 6, 6, {1, 5}},
  };
  for (const auto& r : rows) {
    auto g = group(r.name);
    EXPECT_EQ(g->size(), r.order) << r.name;
    EXPECT_EQ(g->num_classes(), r.classes) << r.name;
    EXPECT_EQ(g->num_pos_roots(), r.npos) << r.name;
    EXPECT_EQ(g->exponents(), r.exps) << r.name;
    long total = 0;
    for (const auto& c : g->classes()) total += c.members.size();
    EXPECT_EQ(total, r.order);
  }
}

TEST(CoxeterGroup, LengthsAndDescents) {
  for (const char* name : {"B3", "F4", "H3"}) {
    auto g = group(name);
    for (int w = 0; w < g->size(); ++w) {
      EXPECT_EQ(g->length(w), static_cast<int>(g->word(w).size()));
      EXPECT_EQ(g->from_word(g->word(w)), w);
      EXPECT_EQ(g->length(g->inverse(w)), g->length(w));
      for (int s = 0; s < g->rank(); ++s) {
        bool right = g->right_descents(w) >> s & 1;
        EXPECT_EQ(right, g->length(g->mul(w, g->generator(s))) < g->length(w));
        bool left = g->left_descents(w) >> s & 1;
        EXPECT_EQ(left, g->length(g->mul(g->generator(s), w)) < g->length(w));
      }
    }
    EXPECT_EQ(g->length(g->longest()), g->num_pos_roots());
  }
}

TEST(CoxeterGroup, TransversalSizes) {
  auto g = group("H4");
  for (SubsetMask j = 0; j < 16; ++j)
    EXPECT_EQ(g->parabolic_transversal(j).size() * g->parabolic_elements(j).size(), 14400u);
}

TEST(CoxeterGroup, CuspidalCounts) {
  std::map<std::string, int> expected = {{"B3", 3}, {"B4", 5}, {"D4", 3}, {"F4", 9}, {"H3", 4}, {"H4", 20},
                                         {"A3", 1}, {"I2.5", 2}};
  for (const auto& [name, count] : expected) EXPECT_EQ(group(name)->cuspidal_classes().size(), count) << name;
}

TEST(CoxeterGroup, RegularClasses) {
  auto g = group("H4");
  int cox = g->class_of(g->coxeter_element());
  auto ks = g->regular_eigenvalue_powers(cox);
  EXPECT_NE(std::find(ks.begin(), ks.end(), 1), ks.end());
  EXPECT_TRUE(g->is_regular_class(g->class_of(g->longest())));
  EXPECT_TRUE(g->is_regular_class(g->class_of(0)));
  EXPECT_FALSE(g->is_regular_class(g->class_of(g->generator(0))));
  int reg = 0;
  std::set<int> orders;
  for (int c = 0; c < g->num_classes(); ++c)
    if (g->is_regular_class(c)) {
      ++reg;
      orders.insert(g->conj_class(c).fingerprint.order);
    }
  // regular numbers are the divisors of the degrees 2, 12, 20, 30
  EXPECT_EQ(orders, (std::set<int>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30}));
  EXPECT_GE(reg, 11);
}

TEST(CoxeterGroup, SignedCycleTypes) {
  for (const char* name : {"B3", "B4"}) {
    auto g = group(name);
    std::set<std::string> labels;
    for (const auto& c : g->classes()) labels.insert(g->signed_cycle_type(c.rep));
    EXPECT_EQ(static_cast<int>(labels.size()), g->num_classes());
  }
  auto d4 = group("D4");
  std::set<std::string> labels;
  for (const auto& c : d4->classes()) labels.insert(d4->signed_cycle_type(c.rep));
  EXPECT_EQ(labels.size(), 11u);
  for (int w = 0; w < d4->size(); w += 7) EXPECT_EQ(d4->from_signed_permutation(d4->signed_permutation(w)), w);
  EXPECT_THROW(group("F4")->signed_permutation(0), InputError);
}

TEST(CoxeterGroup, TypeBConstructions) {
  auto g = group("B4");
  std::set<int> classes;
  for (Partition lambda : std::vector<Partition>{{4}, {1, 3}, {2, 2}, {1, 1, 2}, {1, 1, 1, 1}}) {
    int w = b_cuspidal_rep(g, lambda);
    EXPECT_TRUE(g->is_cuspidal(w));
    classes.insert(g->class_of(w));
    auto gens = b_centralizer_gens(g, lambda);
    EXPECT_EQ(Subgroup::generated(g, gens).order(), centralizer(g, w).order());
    std::string neg;
    for (int x : lambda) neg += std::to_string(x);
    EXPECT_EQ(g->signed_cycle_type(w), "." + neg);
  }
  EXPECT_EQ(classes.size(), 5u);
  EXPECT_THROW(b_cuspidal_rep(g, {3, 2}), InputError);
  EXPECT_THROW(b_cuspidal_rep(g, {1, 2}), InputError);
  EXPECT_EQ(b_sign_change(g, 1), g->generator(0));
  EXPECT_EQ(b_transposition(g, 1, 2), g->generator(1));
}

TEST(CoxeterGroup, Reflections) {
  auto g = group("F4");
  for (int i = 0; i < 4; ++i) EXPECT_EQ(reflection_of_root(g, i), g->generator(i));
  int hl = g->highest_root(true), hs = g->highest_root(false);
  EXPECT_TRUE(g->is_long_root(hl));
  EXPECT_FALSE(g->is_long_root(hs));
  for (int r : {hl, hs}) {
    int t = reflection_of_root(g, r);
    EXPECT_EQ(g->order(t), 2);
    EXPECT_EQ(g->length(t) % 2, 1);
  }
  EXPECT_THROW(reflection_by_root(g, std::vector<Golden>(4, Golden(5))), InputError);
}

TEST(CoxeterGroup, ParabolicLabels) {
  auto f4 = group("F4");
  EXPECT_EQ(f4->parabolic_label(0b0111), "B3");
  EXPECT_EQ(f4->parabolic_label(0b1110), "C3");
  EXPECT_EQ(f4->parabolic_label(0b1000), "~A1");
  EXPECT_EQ(f4->parabolic_label(0b1011), "A2~A1");
  EXPECT_EQ(f4->parabolic_label(0b1111), "F4");
  auto h4 = group("H4");
  EXPECT_EQ(h4->parabolic_label(0b1011), "A1I2(5)");
  EXPECT_EQ(h4->parabolic_label(0b0111), "H3");
  EXPECT_EQ(group("D4")->parabolic_label(0b1011), "3A1");
  EXPECT_EQ(group("D4")->parabolic_label(0), "1");
}

TEST(CoxeterGroup, SubgroupsAndFusion) {
  auto g = group("H4");
  Subgroup h3 = parabolic_subgroup(g, 0b0111);
  EXPECT_EQ(h3.order(), 120);
  EXPECT_EQ(h3.num_classes(), 10);
  int total = 0;
  for (int c = 0; c < h3.num_classes(); ++c) total += h3.class_size(c);
  EXPECT_EQ(total, 120);
  EXPECT_EQ(normalizer_parabolic(g, 0b0111).order(), 240);
  EXPECT_EQ(centralizer(g, g->coxeter_element()).order(), 30);
  EXPECT_THROW(Subgroup::from_elements(g, {0, g->generator(0), g->generator(1)}), InputError);
}

TEST(Bulky, AppendixFixtures) {
  using S = std::set<std::string>;
  EXPECT_EQ(bulky_labels(group("A4")), (S{"A2", "A3", "A1A2"}));
  EXPECT_EQ(bulky_labels(group("B3")), (S{"~A1", "B2", "A1~A1"}));
  EXPECT_EQ(bulky_labels(group("B4")), (S{"~A1", "B2", "B3", "A1~A1", "A1B2"}));
  EXPECT_EQ(bulky_labels(group("D4")), (S{"3A1"}));
  EXPECT_EQ(bulky_labels(group("F4")), (S{"~A1", "A1~A1", "B2", "B3", "C3"}));
  EXPECT_EQ(bulky_labels(group("H3")), (S{"2A1"}));
  EXPECT_EQ(bulky_labels(group("H4")), (S{"H3"}));
}

TEST(Bulky, NonBulkyMaximalRank) {
  using S = std::set<std::string>;
  EXPECT_EQ(nonbulky_max_rank(group("B4")), (S{"A2~A1", "A3"}));
  EXPECT_EQ(nonbulky_max_rank(group("D4")), (S{"A3"}));
  EXPECT_EQ(nonbulky_max_rank(group("F4")), (S{"A1~A2", "A2~A1"}));
  EXPECT_EQ(nonbulky_max_rank(group("H4")), (S{"A3", "A1A2", "A1I2(5)"}));
}
