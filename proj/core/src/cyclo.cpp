#include "coxtop/cyclo.hpp"

#include <map>
#include <memory>
#include <numeric>

#include "coxtop/errors.hpp"

namespace coxtop {

std::vector<Integer> cyclotomic_polynomial(int n) {
  if (n < 1) throw InputError("cyclotomic_polynomial: n must be positive");
  // x^n - 1
  std::vector<Integer> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    std::vector<Integer> q = cyclotomic_polynomial(d);
    // exact division by the monic q
    int dq = static_cast<int>(q.size()) - 1;
    int dp = static_cast<int>(p.size()) - 1;
    std::vector<Integer> quot(dp - dq + 1, 0);
    for (int i = dp; i >= dq; --i) {
      Integer c = p[i];
      quot[i - dq] = c;
      for (int j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
    }
    for (int i = 0; i < dq; ++i)
      if (p[i] != 0) throw InternalError("cyclotomic division not exact");
    p = std::move(quot);
  }
  return p;
}

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

struct Field {
  int n = 1;
  int phi = 1;
  // pow[j] = x^j reduced mod Phi_n, 0 <= j < n
  std::vector<std::vector<long>> pow;
};

const Field& field(int n) {
  thread_local std::map<int, std::unique_ptr<Field>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto f = std::make_unique<Field>();
  f->n = n;
  std::vector<Integer> poly = cyclotomic_polynomial(n);
  f->phi = static_cast<int>(poly.size()) - 1;
  int phi = f->phi;
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  f->pow.reserve(n);
  for (int j = 0; j < n; ++j) {
    f->pow.push_back(cur);
    // multiply by x
    long top = cur[phi - 1];
    for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (int i = 0; i < phi; ++i) cur[i] -= top * poly[i].get_si();
  }
  auto& ref = *f;
  cache.emplace(n, std::move(f));
  return ref;
}

// Solve sum_j cols[j] * y_j = target over Q; nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_span(std::vector<std::vector<Rational>> cols,
                                                const std::vector<Rational>& target) {
  const size_t rows = target.size(), nc = cols.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(nc + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < nc; ++j) a[i][j] = cols[j][i];
    a[i][nc] = target[i];
  }
  std::vector<int> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < nc && r < rows; ++c) {
    size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (size_t k = c; k <= nc; ++k) a[r][k] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (size_t k = c; k <= nc; ++k) a[i][k] -= f * a[r][k];
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (sgn(a[i][nc]) != 0) return std::nullopt;
  std::vector<Rational> y(nc, 0);
  for (size_t i = 0; i < r; ++i) y[pivcol[i]] = a[i][nc];
  return y;
}

}  // namespace

Cyclo::Cyclo(int order, std::vector<Rational> coeffs) : n_(order), c_(std::move(coeffs)) {
  if (order < 1) throw InputError("cyclotomic order must be positive");
  const Field& f = field(order);
  if (static_cast<int>(c_.size()) > f.phi) {
    // accept longer polynomials in zeta_n and reduce them
    std::vector<Rational> red(f.phi, 0);
    for (size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      const auto& pw = f.pow[j % order];
      for (int i = 0; i < f.phi; ++i)
        if (pw[i]) red[i] += c_[j] * pw[i];
    }
    c_ = std::move(red);
  }
  c_.resize(f.phi, 0);
}

Cyclo Cyclo::root_of_unity(int n, long k) {
  if (n < 1) throw InputError("root_of_unity: n must be positive");
  const Field& f = field(n);
  long kk = ((k % n) + n) % n;
  std::vector<Rational> c(f.phi);
  for (int i = 0; i < f.phi; ++i) c[i] = f.pow[kk][i];
  return Cyclo(n, std::move(c));
}

Cyclo Cyclo::from_golden(const Golden& g) {
  if (g.is_rational()) return Cyclo(g.a());
  Cyclo s5 = Cyclo(1) + Cyclo(2) * (root_of_unity(5, 1) + root_of_unity(5, 4));
  return Cyclo(g.a()) + Cyclo(g.b()) * s5;
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rational Cyclo::to_rational() const {
  if (!is_rational()) throw InputError("cyclotomic value " + str() + " is not rational");
  return c_[0];
}

std::optional<Golden> Cyclo::to_golden() const {
  if (is_rational()) return Golden(c_[0]);
  Cyclo r = reduced();
  if (r.n_ != 5) return std::nullopt;
  // basis of order 5: sqrt5 = -1 - 2x^2 - 2x^3
  Rational b = -r.c_[2] / 2;
  Golden g(Rational(r.c_[0] + b), b);
  if (from_golden(g) == r) return g;
  return std::nullopt;
}

Cyclo Cyclo::embed(int m) const {
  if (m % n_) throw InputError("cannot embed order " + std::to_string(n_) + " into " + std::to_string(m));
  if (m == n_) return *this;
  const Field& f = field(m);
  const int step = m / n_;
  std::vector<Rational> out(f.phi, 0);
  for (size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    const auto& pw = f.pow[(j * step) % m];
    for (int i = 0; i < f.phi; ++i)
      if (pw[i]) out[i] += c_[j] * pw[i];
  }
  return Cyclo(m, std::move(out));
}

Cyclo Cyclo::reduced() const {
  if (is_rational()) return Cyclo(c_[0]);
  for (int d = 2; d < n_; ++d) {
    if (n_ % d || d % 4 == 2) continue;
    const Field& fd = field(d);
    std::vector<std::vector<Rational>> cols;
    for (int i = 0; i < fd.phi; ++i) {
      std::vector<Rational> e(fd.phi, 0);
      e[i] = 1;
      cols.push_back(Cyclo(d, e).embed(n_).c_);
    }
    if (auto y = solve_span(cols, c_)) return Cyclo(d, *y);
  }
  return *this;
}

Cyclo Cyclo::conj() const { return galois(n_ - 1); }

Cyclo Cyclo::galois(long k) const {
  if (std::gcd(k, static_cast<long>(n_)) != 1) throw InputError("galois: exponent not coprime to order");
  const Field& f = field(n_);
  long kk = ((k % n_) + n_) % n_;
  std::vector<Rational> out(f.phi, 0);
  for (size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    const auto& pw = f.pow[(j * kk) % n_];
    for (int i = 0; i < f.phi; ++i)
      if (pw[i]) out[i] += c_[j] * pw[i];
  }
  return Cyclo(n_, std::move(out));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw InputError("division by zero in cyclotomic field");
  if (is_rational()) return Cyclo(Rational(1 / c_[0]));
  const Field& f = field(n_);
  std::vector<std::vector<Rational>> cols;
  for (int j = 0; j < f.phi; ++j) cols.push_back((*this * root_of_unity(n_, j)).c_);
  std::vector<Rational> one(f.phi, 0);
  one[0] = 1;
  auto y = solve_span(cols, one);
  if (!y) throw InternalError("cyclotomic inverse failed");
  return Cyclo(n_, *y);
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::optional<std::pair<int, int>> Cyclo::as_root_of_unity() const {
  if (is_zero()) return std::nullopt;
  Cyclo r = reduced();
  int l = r.n_ % 2 ? 2 * r.n_ : r.n_;
  for (int k = 0; k < l; ++k) {
    if (root_of_unity(l, k) == r) {
      int g = std::gcd(k, l);
      return std::make_pair(l / g, k / g);
    }
  }
  return std::nullopt;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.n_ != n_) {
    int l = std::lcm(n_, o.n_);
    if (l != n_) *this = embed(l);
    if (l != o.n_) return *this += o.embed(l);
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (o.n_ == 1) {
    for (auto& x : c_) x *= o.c_[0];
    return *this;
  }
  if (n_ == 1) {
    Rational s = c_[0];
    *this = o;
    for (auto& x : c_) x *= s;
    return *this;
  }
  if (o.n_ != n_) {
    int l = std::lcm(n_, o.n_);
    if (l != n_) *this = embed(l);
    if (l != o.n_) return *this *= o.embed(l);
  }
  const Field& f = field(n_);
  std::vector<Rational> prod(2 * f.phi - 1, 0);
  for (int i = 0; i < f.phi; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (int j = 0; j < f.phi; ++j)
      if (sgn(o.c_[j]) != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + f.phi);
  for (int j = f.phi; j < 2 * f.phi - 1; ++j) {
    if (sgn(prod[j]) == 0) continue;
    const auto& pw = f.pow[j % n_];
    for (int i = 0; i < f.phi; ++i)
      if (pw[i]) out[i] += prod[j] * pw[i];
  }
  c_ = std::move(out);
  return *this;
}

bool operator==(const Cyclo& x, const Cyclo& y) {
  if (x.n_ == y.n_) return x.c_ == y.c_;
  int l = std::lcm(x.n_, y.n_);
  return x.embed(l).c_ == y.embed(l).c_;
}

std::string Cyclo::str() const {
  if (is_rational()) return to_display(c_[0]);
  if (auto g = to_golden()) return g->str();
  Cyclo r = reduced();
  std::string s;
  for (size_t j = 0; j < r.c_.size(); ++j) {
    const Rational& c = r.c_[j];
    if (sgn(c) == 0) continue;
    std::string term = j == 0 ? "" : "E(" + std::to_string(r.n_) + ")" + (j > 1 ? "^" + std::to_string(j) : "");
    std::string coef;
    if (j == 0)
      coef = to_display(c);
    else if (c == 1)
      coef = "";
    else if (c == -1)
      coef = "-";
    else
      coef = to_display(c) + "*";
    std::string t = coef + term;
    if (!s.empty() && t[0] != '-') s += "+";
    s += t;
  }
  return s;
}

}  // namespace coxtop
