#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "coxtop/errors.hpp"
#include "coxtop/orlik_solomon.hpp"

using namespace coxtop;

namespace {

GroupPtr G(const char* name) { return CoxeterGroup::build(CoxeterType::parse(name)); }

Arrangement rational_arrangement(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Golden>> normals;
  for (const auto& r : rows) {
    std::vector<Golden> v;
    for (long x : r) v.emplace_back(x);
    normals.push_back(v);
  }
  return Arrangement::make(ArrangementField::Rational, normals);
}

std::vector<long> elementary_symmetric(const std::vector<int>& xs) {
  std::vector<long> e = {1};
  for (int x : xs) {
    e.push_back(0);
    for (size_t k = e.size() - 1; k > 0; --k) e[k] += e[k - 1] * x;
  }
  return e;
}

// Broken circuits straight from the definition, by enumerating all subsets.
std::set<Monomial> brute_force_nbc(const Arrangement& arr) {
  const int T = arr.size();
  std::vector<Monomial> circuits;
  for (Monomial m = 1; m < (Monomial(1) << T); ++m) {
    if (monomial_degree(m) > arr.dim + 1 || is_independent(arr, m)) continue;
    bool minimal = true;
    for (Monomial x = m; x && minimal; x &= x - 1)
      minimal = is_independent(arr, m & ~(x & -x));
    if (minimal) circuits.push_back(m);
  }
  std::vector<Monomial> broken;
  for (Monomial c : circuits) broken.push_back(c & ~(Monomial(1) << (63 - __builtin_clzll(c))));
  std::set<Monomial> out;
  for (Monomial m = 0; m < (Monomial(1) << T); ++m) {
    if (monomial_degree(m) > arr.dim) continue;
    bool ok = true;
    for (Monomial b : broken) ok &= (b & ~m) != 0;
    if (ok) out.insert(m);
  }
  return out;
}

AElement act_linear(GroupOrlikSolomon& os, int w, const AElement& a) {
  AElement out;
  for (const auto& [m, c] : a)
    for (const auto& [b, d] : os.act(w, m)) {
      out[b] += c * d;
      if (sgn(out[b]) == 0) out.erase(b);
    }
  return out;
}

}  // namespace

TEST(OrlikSolomon, ArrangementOfGroupSizes) {
  EXPECT_EQ(arrangement_of_group(G("B3")).size(), 9);
  EXPECT_EQ(arrangement_of_group(G("H4")).size(), 60);
  auto a2 = arrangement_of_group(G("A2"));
  EXPECT_EQ(a2.size(), 3);
  EXPECT_EQ(a2.dim, 2);
  EXPECT_EQ(arrangement_of_group(G("H3")).field, ArrangementField::Sqrt5);
}

TEST(OrlikSolomon, ArrangementValidation) {
  EXPECT_THROW(rational_arrangement({{1, 0}, {2, 0}, {0, 1}}), InputError);
  EXPECT_THROW(rational_arrangement({{1, 0, 0}, {0, 1, 0}}), InputError);
  EXPECT_THROW(rational_arrangement({{0, 0}, {0, 1}}), InputError);
  EXPECT_THROW(Arrangement::make(ArrangementField::Rational, {{Golden::sqrt5()}}), InputError);
  std::vector<std::vector<Golden>> many(65, std::vector<Golden>{1});
  EXPECT_THROW(Arrangement::make(ArrangementField::Rational, many), InputError);
}

TEST(OrlikSolomon, ArrangementFromJson) {
  auto j = nlohmann::json::parse(R"({"field":"rational","normals":[["1/1","0/1"],["0/1","1/1"],["1/1","1/1"]]})");
  auto arr = arrangement_from_json(j);
  EXPECT_EQ(arr.size(), 3);
  EXPECT_EQ(nbc(arr).poincare(), (std::vector<long>{1, 3, 2}));
  EXPECT_THROW(arrangement_from_json(nlohmann::json::parse(R"({"field":"complex","normals":[]})")), InputError);
  EXPECT_THROW(arrangement_from_json(nlohmann::json::parse(R"({"normals":[]})")), InputError);
}

TEST(OrlikSolomon, BooleanArrangementHasNoBrokenCircuits) {
  auto d = nbc(rational_arrangement({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_TRUE(d.minimal_broken.empty());
  EXPECT_EQ(d.poincare(), (std::vector<long>{1, 3, 3, 1}));
}

TEST(OrlikSolomon, A2BrokenCircuitCompletesUpward) {
  auto d = nbc(arrangement_of_group(G("A2")));
  ASSERT_EQ(d.minimal_broken.size(), 1u);
  EXPECT_EQ(d.minimal_broken[0], monomial_of({0, 1}));
  EXPECT_EQ(d.completion[0], 2);
  std::set<Monomial> top(d.basis[2].begin(), d.basis[2].end());
  EXPECT_EQ(top, (std::set<Monomial>{monomial_of({0, 2}), monomial_of({1, 2})}));
}

TEST(OrlikSolomon, A2Rewrite) {
  OrlikSolomon os(arrangement_of_group(G("A2")));
  AElement want = {{monomial_of({0, 2}), 1}, {monomial_of({1, 2}), -1}};
  EXPECT_EQ(os.rewrite({0, 1}), want);
  AElement neg = {{monomial_of({0, 2}), -1}, {monomial_of({1, 2}), 1}};
  EXPECT_EQ(os.rewrite({1, 0}), neg);
  EXPECT_TRUE(os.rewrite({0, 1, 2}).empty());
  EXPECT_TRUE(os.rewrite({1, 1}).empty());
}

TEST(OrlikSolomon, NbcMatchesBruteForce) {
  std::vector<Arrangement> arrs = {arrangement_of_group(G("A3")), arrangement_of_group(G("B3")),
                                   arrangement_of_group(G("H3")), arrangement_of_group(G("I2.5"))};
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<std::vector<Golden>> normals = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    while (normals.size() < 8) {
      auto cand = normals;
      cand.push_back({coord(rng), coord(rng), coord(rng)});
      try {
        Arrangement::make(ArrangementField::Rational, cand);
        normals = cand;
      } catch (const InputError&) {
        // zero or proportional, draw again
      }
    }
    arrs.push_back(Arrangement::make(ArrangementField::Rational, normals));
  }
  for (const auto& arr : arrs) {
    auto d = nbc(arr);
    std::set<Monomial> got;
    for (const auto& level : d.basis) got.insert(level.begin(), level.end());
    EXPECT_EQ(got, brute_force_nbc(arr));
  }
}

TEST(OrlikSolomon, NbcInvariants) {
  auto arr = arrangement_of_group(G("B3"));
  auto d = nbc(arr);
  std::set<Monomial> basis;
  for (const auto& level : d.basis) basis.insert(level.begin(), level.end());
  for (Monomial m = 0; m < (Monomial(1) << arr.size()); ++m) {
    if (monomial_degree(m) > arr.dim) continue;
    bool has_broken = false;
    for (Monomial b : d.minimal_broken) has_broken |= (b & ~m) == 0;
    if (basis.count(m)) {
      EXPECT_FALSE(has_broken);
      EXPECT_TRUE(is_independent(arr, m));
    } else {
      EXPECT_TRUE(has_broken || !is_independent(arr, m));
    }
  }
}

TEST(OrlikSolomon, PoincarePolynomialFromExponents) {
  for (auto name : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "I2.5", "I2.6"}) {
    auto g = G(name);
    auto d = nbc(arrangement_of_group(g));
    EXPECT_EQ(d.poincare(), elementary_symmetric(g->exponents())) << name;
    EXPECT_EQ(d.total(), g->size()) << name;
  }
}

TEST(OrlikSolomon, B3TotalDimension) {
  auto d = nbc(arrangement_of_group(G("B3")));
  EXPECT_EQ(d.total(), 48);
  EXPECT_EQ(d.poincare()[3], 15);
}

TEST(OrlikSolomon, RewriteFixesBasisAndKillsRelations) {
  for (auto name : {"B3", "H3", "A3"}) {
    auto arr = arrangement_of_group(G(name));
    OrlikSolomon os(arr);
    for (const auto& level : os.nbc_data().basis)
      for (Monomial m : level) EXPECT_EQ(os.rewrite(monomial_indices(m)), (AElement{{m, 1}})) << name;
    // sum_i (-1)^i a_{C - c_i} = 0 for every circuit C, also after multiplying by an outside a_u
    const int T = arr.size();
    int checked = 0;
    for (Monomial c = 1; c < (Monomial(1) << T); ++c) {
      if (monomial_degree(c) > arr.dim + 1 || is_independent(arr, c)) continue;
      bool circuit = true;
      for (Monomial x = c; x && circuit; x &= x - 1) circuit = is_independent(arr, c & ~(x & -x));
      if (!circuit) continue;
      auto idx = monomial_indices(c);
      for (int u = -1; u < T; ++u) {
        if (u >= 0 && (c >> u & 1)) continue;
        AElement sum;
        for (size_t i = 0; i < idx.size(); ++i) {
          std::vector<int> tuple;
          for (size_t k = 0; k < idx.size(); ++k)
            if (k != i) tuple.push_back(idx[k]);
          if (u >= 0) tuple.push_back(u);
          for (const auto& [m, v] : os.rewrite(tuple, i % 2 ? -1 : 1)) {
            sum[m] += v;
            if (sgn(sum[m]) == 0) sum.erase(m);
          }
        }
        EXPECT_TRUE(sum.empty()) << name;
        ++checked;
      }
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(OrlikSolomon, RewriteIsIdempotentOnNormalForms) {
  OrlikSolomon os(arrangement_of_group(G("H3")));
  auto once = os.rewrite({0, 3, 7});
  AElement twice;
  for (const auto& [m, c] : once)
    for (const auto& [b, d] : os.rewrite(monomial_indices(m), c)) twice[b] += d;
  EXPECT_EQ(once, twice);
}

TEST(OrlikSolomon, CacheCapKeepsResults) {
  auto arr = arrangement_of_group(G("B4"));
  OrlikSolomon capped(arr, 10), free(arr);
  for (Monomial m : {monomial_of({0, 1, 2, 3}), monomial_of({1, 4, 6, 9}), monomial_of({0, 2, 5, 11})}) {
    EXPECT_EQ(capped.rewrite(monomial_indices(m)), free.rewrite(monomial_indices(m)));
    EXPECT_LE(capped.cache_size(), free.cache_size());
  }
}

TEST(OrlikSolomon, ActionIdentityAndComposition) {
  for (auto name : {"B3", "H3", "D4"}) {
    auto g = G(name);
    GroupOrlikSolomon os(g);
    const auto& top = os.algebra().nbc_data().basis[g->rank()];
    for (Monomial m : top) EXPECT_EQ(os.act(0, m), (AElement{{m, 1}}));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, g->size() - 1);
    std::uniform_int_distribution<int> pickm(0, static_cast<int>(top.size()) - 1);
    for (int trial = 0; trial < 20; ++trial) {
      int w = pick(rng), v = pick(rng);
      Monomial m = top[pickm(rng)];
      EXPECT_EQ(act_linear(os, w, os.act(v, m)), os.act(g->mul(w, v), m)) << name;
    }
  }
}

TEST(OrlikSolomon, A1ReflectionFixesGenerator) {
  auto g = G("A1");
  GroupOrlikSolomon os(g);
  EXPECT_EQ(os.act(1, monomial_of({0})), (AElement{{monomial_of({0}), 1}}));
  auto w1 = os.omega_character(1);
  EXPECT_EQ(w1.degree(), Cyclo(1));
  EXPECT_EQ(w1.at_element(1), Cyclo(1));
}

TEST(OrlikSolomon, CentralLongestElementActsTrivially) {
  auto g = G("B3");
  GroupOrlikSolomon os(g);
  for (Monomial m : os.algebra().nbc_data().basis[3]) EXPECT_EQ(os.act(g->longest(), m), (AElement{{m, 1}}));
  EXPECT_EQ(os.trace(g->longest(), 3), 15);
}

TEST(OrlikSolomon, DegreeZeroAndOne) {
  for (auto name : {"B3", "H3"}) {
    auto g = G(name);
    GroupOrlikSolomon os(g);
    auto w0 = os.omega_character(0);
    for (const auto& v : w0.values) EXPECT_EQ(v, Cyclo(1));
    // degree one: permutation character of W on its reflections
    auto w1 = os.omega_character(1);
    for (int c = 0; c < g->num_classes(); ++c) {
      int w = g->conj_class(c).rep, fixed = 0;
      for (int r = 0; r < g->num_pos_roots(); ++r) {
        int img = g->root_image(w, r);
        fixed += img == r || img == g->negate_root(r);
      }
      EXPECT_EQ(w1[c], Cyclo(fixed)) << name;
    }
  }
}

TEST(OrlikSolomon, TopDegreeIsProductOfExponents) {
  for (auto name : {"A3", "B3", "B4", "D4", "F4", "H3", "I2.5"}) {
    auto g = G(name);
    long prod = 1;
    for (int e : g->exponents()) prod *= e;
    EXPECT_EQ(omega_character(g, g->rank()).degree(), Cyclo(prod)) << name;
  }
}

TEST(OrlikSolomon, ReversedOrderGivesSameCharacter) {
  for (auto name : {"B3", "H3", "F4"}) {
    auto g = G(name);
    GroupOrlikSolomon fwd(g), rev(g, true);
    for (int p = 0; p <= g->rank(); ++p) EXPECT_EQ(fwd.omega_character(p), rev.omega_character(p)) << name;
  }
}

TEST(OrlikSolomon, B3TopCharacterByLabel) {
  auto g = G("B3");
  auto omega = omega_character(g, 3);
  std::map<std::string, int> want = {{"111.", 15}, {"11.1", 3}, {"1.11", 3}, {".111", 15}, {"12.", 1},
                                     {"1.2", -1},  {"2.1", 1},  {".12", -1}, {"3.", 0},    {".3", 0}};
  for (int c = 0; c < g->num_classes(); ++c) {
    auto label = g->signed_cycle_type(g->conj_class(c).rep);
    ASSERT_TRUE(want.count(label)) << label;
    EXPECT_EQ(omega[c], Cyclo(want[label])) << label;
  }
}

TEST(OrlikSolomon, B4TopCharacterByLabel) {
  auto g = G("B4");
  auto omega = omega_character(g, 4);
  std::map<std::string, int> want = {
      {"1111.", 105}, {"111.1", 15}, {"11.11", 9}, {"1.111", 15}, {".1111", 105}, {"112.", 3}, {"11.2", -3},
      {"12.1", 1},    {"1.12", -1},  {"2.11", 3},  {".112", -3},  {"22.", -3},    {"2.2", -1}, {".22", 5},
      {"13.", 0},     {"1.3", 0},    {"3.1", 0},   {".13", 0},    {"4.", 1},      {".4", -1}};
  for (int c = 0; c < g->num_classes(); ++c) {
    auto label = g->signed_cycle_type(g->conj_class(c).rep);
    ASSERT_TRUE(want.count(label)) << label;
    EXPECT_EQ(omega[c], Cyclo(want[label])) << label;
  }
}

TEST(OrlikSolomon, H4TopDegree) {
  auto g = G("H4");
  GroupOrlikSolomon os(g);
  EXPECT_EQ(os.algebra().nbc_data().poincare(), (std::vector<long>{1, 60, 1138, 7140, 6061}));
  EXPECT_EQ(os.trace(0, 4), 6061);
  EXPECT_EQ(os.trace(g->longest(), 4), 6061);
}
