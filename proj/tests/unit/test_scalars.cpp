#include <gtest/gtest.h>

#include <random>

#include "coxtop/cyclo.hpp"
#include "coxtop/golden.hpp"
#include "coxtop/matrix.hpp"
#include "coxtop/serialize.hpp"

using namespace coxtop;

namespace {

int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Phi_n = prod_{d|n} (x^d - 1)^mu(n/d): multiply the positive factors,
// then divide by the negative ones.
std::vector<Integer> mobius_oracle(int n) {
  std::vector<Integer> num{1}, den{1};
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    std::vector<Integer> f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    int m = mobius(n / d);
    if (m == 1) num = poly_mul(num, f);
    if (m == -1) den = poly_mul(den, f);
  }
  std::vector<Integer> q(num.size() - den.size() + 1, 0);
  for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
    Integer c = num[i] / den.back();
    q[i - den.size() + 1] = c;
    for (size_t j = 0; j < den.size(); ++j) num[i - den.size() + 1 + j] -= c * den[j];
  }
  return q;
}

Rational rand_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return make_rational(num(rng), den(rng));
}

Cyclo rand_cyclo(std::mt19937& rng, int n) {
  int phi = euler_phi(n);
  std::vector<Rational> c(phi);
  for (auto& x : c) x = rand_rational(rng);
  return Cyclo(n, c);
}

}  // namespace

namespace coxtop {
void PrintTo(const Cyclo& c, std::ostream* os) { *os << c.str(); }
void PrintTo(const Golden& g, std::ostream* os) { *os << g.str(); }
}  // namespace coxtop

TEST(Cyclotomic, PolynomialSmallCases) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<Integer>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<Integer>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<Integer>{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, PolynomialMatchesMobiusProduct) {
  for (int n = 1; n <= 120; ++n) {
    auto p = cyclotomic_polynomial(n);
    EXPECT_EQ(p, mobius_oracle(n)) << n;
    EXPECT_EQ(static_cast<int>(p.size()) - 1, euler_phi(n));
  }
}

TEST(Cyclotomic, RootsOfUnity) {
  Cyclo s = Cyclo::root_of_unity(5, 1) + Cyclo::root_of_unity(5, 2) + Cyclo::root_of_unity(5, 3) +
            Cyclo::root_of_unity(5, 4);
  EXPECT_EQ(s, Cyclo(-1));
  EXPECT_EQ(Cyclo::root_of_unity(6, 1).conj(), Cyclo::root_of_unity(6, 5));
  EXPECT_EQ(Cyclo::root_of_unity(7, 0), Cyclo(1));
  EXPECT_EQ(Cyclo::root_of_unity(9, 9), Cyclo(1));
  EXPECT_EQ(Cyclo::root_of_unity(6, 3), Cyclo(-1));
  EXPECT_EQ(Cyclo::root_of_unity(4, 1) * Cyclo::root_of_unity(4, 1), Cyclo(-1));
  // zeta_3 seen inside order 12
  EXPECT_EQ(Cyclo::root_of_unity(3, 1), Cyclo::root_of_unity(12, 4));
  EXPECT_EQ(Cyclo::root_of_unity(12, 4).reduced().order(), 3);
}

TEST(Cyclotomic, GoldenInjection) {
  Cyclo mu = Cyclo::root_of_unity(5, 1) + Cyclo::root_of_unity(5, 4);
  Cyclo nu = Cyclo::root_of_unity(5, 2) + Cyclo::root_of_unity(5, 3);
  Cyclo s5 = Cyclo::from_golden(Golden::sqrt5());
  EXPECT_EQ(s5 * s5, Cyclo(5));
  EXPECT_EQ(mu, Cyclo::from_golden(Golden(Rational(-1, 2), Rational(1, 2))));
  EXPECT_EQ(nu, Cyclo::from_golden(Golden(Rational(-1, 2), Rational(-1, 2))));
  EXPECT_EQ(mu + nu, Cyclo(-1));
  EXPECT_EQ(mu * nu, Cyclo(-1));
  auto g = mu.to_golden();
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*g, Golden(Rational(-1, 2), Rational(1, 2)));
  EXPECT_FALSE(Cyclo::root_of_unity(5, 1).to_golden().has_value());
}

TEST(Cyclotomic, FieldAxiomsProperty) {
  std::mt19937 rng(7);
  const int orders[] = {1, 3, 4, 5, 8, 10, 12, 15};
  for (int trial = 0; trial < 60; ++trial) {
    int n1 = orders[trial % 8], n2 = orders[(trial * 5 + 3) % 8];
    Cyclo a = rand_cyclo(rng, n1), b = rand_cyclo(rng, n2), c = rand_cyclo(rng, n1);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Cyclo(1));
    Cyclo n = a * a.conj();
    EXPECT_EQ(n.conj(), n);
    EXPECT_EQ(a.embed(std::lcm(n1, n2) * 2).reduced(), a.reduced());
    EXPECT_EQ(a.embed(120).reduced().embed(120), a.embed(120));
  }
}

TEST(Cyclotomic, RootOfUnityRecognition) {
  auto r = (-Cyclo::root_of_unity(3, 1)).as_root_of_unity();
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->first, 6);
  EXPECT_EQ(Cyclo::root_of_unity(6, r->second), -Cyclo::root_of_unity(3, 1));
  EXPECT_FALSE(Cyclo(2).as_root_of_unity().has_value());
  auto one = Cyclo(1).as_root_of_unity();
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(one->first, 1);
}

TEST(Golden, FieldAxiomsAndSign) {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    Golden a(rand_rational(rng), rand_rational(rng)), b(rand_rational(rng), rand_rational(rng)),
        c(rand_rational(rng), rand_rational(rng));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), Golden(1));
      EXPECT_NE(a.norm(), 0);
    }
    EXPECT_EQ(Cyclo::from_golden(a * b), Cyclo::from_golden(a) * Cyclo::from_golden(b));
  }
  EXPECT_EQ(Golden::tau().sign(), 1);
  EXPECT_EQ((Golden(2) - Golden::sqrt5()).sign(), -1);
  EXPECT_EQ((Golden(3) - Golden::sqrt5()).sign(), 1);
  EXPECT_EQ(Golden::tau() * Golden::tau(), Golden::tau() + Golden(1));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(make_rational(-3, 6)), "-1/2");
  EXPECT_EQ(to_string(Rational(4)), "4/1");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("x"), InputError);
  EXPECT_THROW(parse_rational("1/-2"), InputError);
}

TEST(Serialize, RoundTrip) {
  Cyclo z = Cyclo::root_of_unity(12, 5) + Cyclo(Rational(1, 3));
  EXPECT_EQ(cyclo_from_json(cyclo_to_json(z)), z);
  Golden g(Rational(1, 2), Rational(-3, 4));
  EXPECT_EQ(golden_from_json(golden_to_json(g)), g);
  EXPECT_EQ(golden_to_json(g).dump(), R"(["1/2","-3/4"])");
  EXPECT_EQ(cyclo_to_json(Cyclo::root_of_unity(6, 2)).dump(), R"({"coeffs":["0/1","1/1"],"order":3})");
}

TEST(Matrix, IdentityRankEigenspace) {
  auto id = Matrix<Rational>::identity(3);
  EXPECT_EQ(id.rank(), 3);
  EXPECT_EQ(rank_bareiss(id), 3);
  EXPECT_EQ(id.eigenspace(Rational(1)).size(), 3u);
  EXPECT_EQ(id.eigenspace(Rational(2)).size(), 0u);
}

TEST(Matrix, KernelConsistencyProperty) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> small(-2, 2), dim(1, 5);
  for (int t = 0; t < 100; ++t) {
    int r = dim(rng), c = dim(rng);
    Matrix<Rational> m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = small(rng) * (t % 3 == 0 ? 1 : small(rng));
    auto k = m.kernel();
    EXPECT_EQ(m.rank() + static_cast<int>(k.size()), c);
    EXPECT_EQ(rank_bareiss(m), m.rank());
    for (const auto& v : k)
      for (const auto& x : m * v) EXPECT_EQ(x, 0);
    if (r == c) EXPECT_EQ(det_bareiss(m), m.det());
  }
}

TEST(Matrix, CyclotomicEigenspace) {
  // rotation by 2pi/3 in the A2 root basis
  Matrix<Cyclo> m(2, 2);
  m(0, 0) = Cyclo(0);
  m(0, 1) = Cyclo(-1);
  m(1, 0) = Cyclo(1);
  m(1, 1) = Cyclo(-1);
  EXPECT_EQ(m.eigenspace(Cyclo::root_of_unity(3, 1)).size(), 1u);
  EXPECT_EQ(m.eigenspace(Cyclo::root_of_unity(3, 2)).size(), 1u);
  EXPECT_EQ(m.eigenspace(Cyclo(1)).size(), 0u);
  auto cp = characteristic_polynomial(m);
  EXPECT_EQ(cp, (std::vector<Cyclo>{Cyclo(1), Cyclo(1), Cyclo(1)}));
  EXPECT_EQ(m.det(), Cyclo(1));
}

TEST(Matrix, DimensionMismatch) {
  Matrix<Rational> a(2, 3), b(2, 3);
  EXPECT_THROW(a * b, InputError);
  EXPECT_THROW(a.eigenspace(Rational(1)), InputError);
}
