#include "coxtop/coxeter.hpp"
#include <functional>
#include <tuple>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "coxtop/errors.hpp"

namespace coxtop {

// ---------------------------------------------------------------- types

CoxeterType CoxeterType::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2) throw InputError("bad Coxeter type '" + text + "'");
  CoxeterType t;
  char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  auto parse_int = [&](const std::string& digits) {
    if (digits.empty() || digits.size() > 3 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InputError("bad Coxeter type '" + text + "'");
    return std::stoi(digits);
  };
  if (f == 'I') {
    if (s.size() < 4 || s[1] != '2') throw InputError("bad dihedral type '" + text + "', expected e.g. I2.5");
    std::string rest = s.substr(2);
    if (rest.front() == '.' || rest.front() == '_')
      rest = rest.substr(1);
    else if (rest.front() == '(' && rest.back() == ')')
      rest = rest.substr(1, rest.size() - 2);
    else
      throw InputError("bad dihedral type '" + text + "', expected e.g. I2.5");
    t.family = Family::I;
    t.rank = 2;
    t.m = parse_int(rest);
    if (t.m < 3 || t.m > 6) throw InputError("unsupported dihedral type I2(" + std::to_string(t.m) + ")");
    return t;
  }
  t.rank = parse_int(s.substr(1));
  switch (f) {
    case 'A':
      t.family = Family::A;
      if (t.rank < 1 || t.rank > 6) break;
      return t;
    case 'B':
    case 'C':
      t.family = Family::B;
      if (t.rank < 2 || t.rank > 6) break;
      return t;
    case 'D':
      t.family = Family::D;
      if (t.rank < 4 || t.rank > 6) break;
      return t;
    case 'F':
      t.family = Family::F;
      if (t.rank != 4) break;
      return t;
    case 'H':
      t.family = Family::H;
      if (t.rank != 3 && t.rank != 4) break;
      return t;
    default:
      break;
  }
  throw InputError("unsupported Coxeter type '" + text + "'");
}

std::string CoxeterType::name() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::B: return "B" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::F: return "F4";
    case Family::H: return "H" + std::to_string(rank);
    case Family::I: return "I2." + std::to_string(m);
  }
  return "?";
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "order=" << order << " size=" << class_size << " centralizer=" << centralizer_order << " charpoly=[";
  for (size_t i = 0; i < charpoly.size(); ++i) os << (i ? "," : "") << charpoly[i].str();
  os << "] powers=[";
  for (size_t i = 0; i < power_classes.size(); ++i)
    os << (i ? "," : "") << power_classes[i].first << ":" << power_classes[i].second;
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- build

namespace {

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

bool root_less(const std::vector<Golden>& a, const std::vector<Golden>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    int c = (a[i] - b[i]).sign();
    if (c) return c < 0;
  }
  return false;
}

struct RootLess {
  bool operator()(const std::vector<Golden>& a, const std::vector<Golden>& b) const { return root_less(a, b); }
};

}  // namespace

std::shared_ptr<const CoxeterGroup> CoxeterGroup::build(const CoxeterType& t) {
  std::shared_ptr<CoxeterGroup> g(new CoxeterGroup());
  g->type_ = t;
  g->n_ = t.rank;
  const int n = t.rank;
  Matrix<Golden> c(n, n);
  std::vector<Golden> d(n, Golden(2));
  for (int i = 0; i < n; ++i) c(i, i) = Golden(2);
  auto link = [&](int i, int j, Golden cij, Golden cji) {
    c(i, j) = cij;
    c(j, i) = cji;
  };
  const Golden m1(-1), mt = -Golden::tau();
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, m1, m1);
      break;
    case Family::B:
      link(0, 1, Golden(-2), m1);
      for (int i = 1; i + 1 < n; ++i) link(i, i + 1, m1, m1);
      d[0] = Golden(1);
      break;
    case Family::D:
      link(0, 2, m1, m1);
      for (int i = 1; i + 1 < n; ++i) link(i, i + 1, m1, m1);
      break;
    case Family::F:
      link(0, 1, m1, m1);
      link(1, 2, m1, Golden(-2));
      link(2, 3, m1, m1);
      d[2] = d[3] = Golden(1);
      break;
    case Family::H:
      link(0, 1, mt, mt);
      for (int i = 1; i + 1 < n; ++i) link(i, i + 1, m1, m1);
      g->crystallographic_ = false;
      break;
    case Family::I:
      if (t.m == 3) link(0, 1, m1, m1);
      if (t.m == 4) {
        link(0, 1, Golden(-2), m1);
        d[0] = Golden(1);
      }
      if (t.m == 5) {
        link(0, 1, mt, mt);
        g->crystallographic_ = false;
      }
      if (t.m == 6) {
        link(0, 1, Golden(-3), m1);
        d[0] = Golden(1);
        d[1] = Golden(3);
      }
      break;
  }
  g->cartan_ = c;
  g->root_len2_ = d;
  g->gram_ = Matrix<Golden>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g->gram_(i, j) = c(i, j) * d[i] / Golden(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g->gram_(i, j) != g->gram_(j, i)) throw InternalError("Gram matrix not symmetric");

  if (t.family == Family::B || t.family == Family::D) {
    Matrix<Rational> p(n, n);
    for (int k = 0; k < n; ++k) {
      if (k >= 1) {
        p(k, k) = 1;
        p(k - 1, k) = -1;
      } else {
        p(0, 0) = 1;
      }
    }
    if (t.family == Family::D) {
      // alpha_1' = v1 + v2, alpha_2 = v2 - v1
      p(0, 0) = 1;
      p(1, 0) = 1;
    }
    g->vbasis_ = p;
    g->vbasis_inv_ = p.inverse();
  }

  g->build_roots();
  g->enumerate();
  g->build_classes();
  g->build_exponents();
  g->build_subset_classes();
  return g;
}

void CoxeterGroup::build_roots() {
  const int n = n_;
  auto reflect = [&](int i, std::vector<Golden> x) {
    Golden s;
    for (int j = 0; j < n; ++j)
      if (!cartan_(i, j).is_zero() && !x[j].is_zero()) s += cartan_(i, j) * x[j];
    x[i] -= s;
    return x;
  };
  std::map<std::vector<Golden>, int, RootLess> seen;
  std::vector<std::vector<Golden>> all;
  for (int i = 0; i < n; ++i) {
    std::vector<Golden> e(n);
    e[i] = Golden(1);
    seen.emplace(e, static_cast<int>(all.size()));
    all.push_back(e);
  }
  for (size_t q = 0; q < all.size(); ++q) {
    for (int i = 0; i < n; ++i) {
      auto y = reflect(i, all[q]);
      if (seen.emplace(y, static_cast<int>(all.size())).second) all.push_back(y);
    }
    if (all.size() > 400) throw InternalError("root system does not close");
  }
  std::vector<std::vector<Golden>> pos;
  for (auto& r : all) {
    int sg = 0;
    for (auto& x : r)
      if (!x.is_zero()) {
        sg = x.sign();
        break;
      }
    for (auto& x : r)
      if (!x.is_zero() && x.sign() != sg) throw InternalError("root with mixed signs");
    if (sg > 0) pos.push_back(r);
  }
  auto height = [](const std::vector<Golden>& r) {
    Golden h;
    for (auto& x : r) h += x;
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
    int c = (height(a) - height(b)).sign();
    if (c) return c < 0;
    return root_less(b, a);
  });
  npos_ = static_cast<int>(pos.size());
  if (2 * npos_ > 255) throw InternalError("too many roots for byte permutations");
  roots_ = pos;
  for (auto& r : pos) {
    std::vector<Golden> m(r.size());
    for (size_t i = 0; i < r.size(); ++i) m[i] = -r[i];
    roots_.push_back(m);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Golden> e(n);
    e[i] = Golden(1);
    if (roots_[i] != e) throw InternalError("simple roots are not first in root order");
  }
  gen_perm_.assign(n, std::vector<int>(2 * npos_));
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < 2 * npos_; ++r) {
      int k = root_index(reflect(i, roots_[r]));
      if (k < 0) throw InternalError("reflection image is not a root");
      gen_perm_[i][r] = k;
    }
}

int CoxeterGroup::root_index(const std::vector<Golden>& v) const {
  if (static_cast<int>(v.size()) != n_) throw InputError("root has wrong dimension");
  // binary search is not available for the mixed order; linear scan is fine
  for (size_t r = 0; r < roots_.size(); ++r)
    if (roots_[r] == v) return static_cast<int>(r);
  return -1;
}

uint64_t CoxeterGroup::key_of(const uint8_t* p) const {
  uint64_t k = 0;
  for (int i = 0; i < n_; ++i) k |= static_cast<uint64_t>(p[i]) << (8 * i);
  return k;
}

void CoxeterGroup::enumerate() {
  const int nr = 2 * npos_;
  perm_.clear();
  std::vector<uint8_t> id(nr);
  std::iota(id.begin(), id.end(), 0);
  perm_.insert(perm_.end(), id.begin(), id.end());
  keys_.push_back(key_of(id.data()));
  index_.emplace(keys_[0], 0);
  parent_.push_back(-1);
  parent_gen_.push_back(-1);
  std::vector<uint8_t> next(nr);
  for (size_t w = 0; w < keys_.size(); ++w) {
    for (int s = 0; s < n_; ++s) {
      const uint8_t* pw = &perm_[w * nr];
      for (int r = 0; r < nr; ++r) next[r] = pw[gen_perm_[s][r]];
      uint64_t k = key_of(next.data());
      if (index_.count(k)) continue;
      index_.emplace(k, static_cast<int>(keys_.size()));
      keys_.push_back(k);
      perm_.insert(perm_.end(), next.begin(), next.end());
      parent_.push_back(static_cast<int>(w));
      parent_gen_.push_back(s);
    }
    if (keys_.size() > 100000) throw InternalError("group enumeration exceeded 100000 elements");
  }
  size_ = static_cast<int>(keys_.size());
  gen_.resize(n_);
  for (int s = 0; s < n_; ++s) {
    std::vector<int> img(n_);
    for (int i = 0; i < n_; ++i) img[i] = gen_perm_[s][i];
    gen_[s] = find_by_simple_images(img);
  }
  len_.assign(size_, 0);
  rdes_.assign(size_, 0);
  ldes_.assign(size_, 0);
  ord_.assign(size_, 1);
  inv_.assign(size_, 0);
  std::vector<uint8_t> ip(nr);
  for (int w = 0; w < size_; ++w) {
    const uint8_t* p = perm(w);
    int l = 0;
    for (int r = 0; r < npos_; ++r) l += p[r] >= npos_;
    len_[w] = static_cast<uint8_t>(l);
    uint8_t rd = 0;
    for (int i = 0; i < n_; ++i)
      if (p[i] >= npos_) rd |= 1u << i;
    rdes_[w] = rd;
    for (int r = 0; r < nr; ++r) ip[p[r]] = static_cast<uint8_t>(r);
    inv_[w] = index_.at(key_of(ip.data()));
    std::vector<char> vis(nr, 0);
    int o = 1;
    for (int r = 0; r < nr; ++r) {
      if (vis[r]) continue;
      int c = 0;
      for (int x = r; !vis[x]; x = p[x]) {
        vis[x] = 1;
        ++c;
      }
      o = lcm_int(o, c);
    }
    ord_[w] = static_cast<uint8_t>(o);
    exponent_ = lcm_int(exponent_, o);
  }
  for (int w = 0; w < size_; ++w) ldes_[w] = rdes_[inv_[w]];
  longest_ = static_cast<int>(std::max_element(len_.begin(), len_.end()) - len_.begin());
  if (len_[longest_] != npos_) throw InternalError("longest element has wrong length");
}

int CoxeterGroup::find_by_simple_images(const std::vector<int>& images) const {
  uint64_t k = 0;
  for (int i = 0; i < n_; ++i) {
    if (images[i] < 0 || images[i] >= 2 * npos_) return -1;
    k |= static_cast<uint64_t>(images[i]) << (8 * i);
  }
  auto it = index_.find(k);
  return it == index_.end() ? -1 : it->second;
}

int CoxeterGroup::mul(int a, int b) const {
  const uint8_t* pa = perm(a);
  const uint8_t* pb = perm(b);
  uint64_t k = 0;
  for (int i = 0; i < n_; ++i) k |= static_cast<uint64_t>(pa[pb[i]]) << (8 * i);
  return index_.find(k)->second;
}

int CoxeterGroup::power(int w, long k) const {
  int o = ord_[w];
  k %= o;
  if (k < 0) k += o;
  int r = 0, b = w;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

std::vector<int> CoxeterGroup::word(int w) const {
  std::vector<int> out;
  for (int x = w; parent_[x] >= 0; x = parent_[x]) out.push_back(parent_gen_[x]);
  std::reverse(out.begin(), out.end());
  return out;
}

int CoxeterGroup::from_word(const std::vector<int>& gens) const {
  int w = 0;
  for (int s : gens) {
    if (s < 0 || s >= n_) throw InputError("generator index out of range");
    w = mul(w, gen_[s]);
  }
  return w;
}

std::string CoxeterGroup::word_string(int w) const {
  auto wd = word(w);
  if (wd.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < wd.size(); ++i) s += (i ? " s" : "s") + std::to_string(wd[i] + 1);
  return s;
}

Matrix<Golden> CoxeterGroup::matrix(int w) const {
  Matrix<Golden> m(n_, n_);
  const uint8_t* p = perm(w);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) m(i, j) = roots_[p[j]][i];
  return m;
}

Golden CoxeterGroup::inner(const std::vector<Golden>& x, const std::vector<Golden>& y) const {
  Golden s;
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j)
      if (!y[j].is_zero() && !gram_(i, j).is_zero()) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

bool CoxeterGroup::is_long_root(int r) const {
  Golden mx = *std::max_element(root_len2_.begin(), root_len2_.end());
  return inner(roots_[r], roots_[r]) * Golden(2) == mx * Golden(2);
}

int CoxeterGroup::highest_root(bool long_root) const {
  for (int r = npos_ - 1; r >= 0; --r)
    if (is_long_root(r) == long_root) return r;
  throw InputError("no " + std::string(long_root ? "long" : "short") + " roots in " + name());
}

// ---------------------------------------------------------------- classes

void CoxeterGroup::build_classes() {
  cls_.assign(size_, -1);
  classes_.clear();
  for (int w = 0; w < size_; ++w) {
    if (cls_[w] >= 0) continue;
    int id = static_cast<int>(classes_.size());
    ConjugacyClass c;
    c.rep = w;
    cls_[w] = id;
    c.members.push_back(w);
    for (size_t q = 0; q < c.members.size(); ++q) {
      int x = c.members[q];
      for (int s = 0; s < n_; ++s) {
        int y = mul(mul(gen_[s], x), gen_[s]);
        if (cls_[y] < 0) {
          cls_[y] = id;
          c.members.push_back(y);
        }
      }
    }
    std::sort(c.members.begin(), c.members.end());
    classes_.push_back(std::move(c));
  }
  std::vector<int> primes;
  for (int p = 2; p <= size_; ++p) {
    if (size_ % p) continue;
    bool prime = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (prime) primes.push_back(p);
  }
  for (auto& c : classes_) {
    Fingerprint& f = c.fingerprint;
    f.order = ord_[c.rep];
    f.class_size = static_cast<int>(c.members.size());
    f.centralizer_order = size_ / f.class_size;
    f.charpoly = characteristic_polynomial(matrix(c.rep));
    for (int p : primes) f.power_classes.emplace_back(p, cls_[power(c.rep, p)]);
  }
}

int CoxeterGroup::class_by_fingerprint(const Fingerprint& f) const {
  for (int c = 0; c < num_classes(); ++c)
    if (classes_[c].fingerprint == f) return c;
  return -1;
}

int CoxeterGroup::coxeter_element() const {
  std::vector<int> w(n_);
  std::iota(w.begin(), w.end(), 0);
  return from_word(w);
}

void CoxeterGroup::build_exponents() {
  int c = coxeter_element();
  int h = ord_[c];
  Matrix<Cyclo> m = cyclo_matrix(c);
  exponents_.clear();
  for (int e = 1; e < h; ++e) {
    size_t dim = m.eigenspace(Cyclo::root_of_unity(h, e)).size();
    for (size_t k = 0; k < dim; ++k) exponents_.push_back(e);
  }
  if (static_cast<int>(exponents_.size()) != n_) throw InternalError("exponent computation failed");
  long prod = 1, sum = 0;
  for (int e : exponents_) {
    prod *= e + 1;
    sum += e;
  }
  if (prod != size_ || sum != npos_) throw InternalError("exponents inconsistent with |W| or |T|");
}

bool CoxeterGroup::is_cuspidal(int w) const {
  Matrix<Golden> m = matrix(w);
  for (int i = 0; i < n_; ++i) m(i, i) -= Golden(1);
  return m.rank() == n_;
}

std::vector<int> CoxeterGroup::cuspidal_classes() const {
  std::vector<int> out;
  for (int c = 0; c < num_classes(); ++c)
    if (is_cuspidal(classes_[c].rep)) out.push_back(c);
  return out;
}

std::vector<int> CoxeterGroup::regular_eigenvalue_powers(int cls) const {
  int w = classes_[cls].rep;
  int d = ord_[w];
  Matrix<Cyclo> m = cyclo_matrix(w);
  // functionals x -> (beta, x) for positive roots beta
  std::vector<std::vector<Cyclo>> funcs;
  for (int r = 0; r < npos_; ++r) {
    std::vector<Cyclo> f(n_);
    for (int j = 0; j < n_; ++j) {
      Golden s;
      for (int i = 0; i < n_; ++i) s += roots_[r][i] * gram_(i, j);
      f[j] = Cyclo::from_golden(s);
    }
    funcs.push_back(std::move(f));
  }
  std::vector<int> out;
  for (int k = 0; k < d; ++k) {
    auto basis = m.eigenspace(Cyclo::root_of_unity(d, k));
    if (basis.empty()) continue;
    const size_t dim = basis.size();
    // vals[r][b] = f_r(basis b)
    std::vector<std::vector<Cyclo>> vals(npos_, std::vector<Cyclo>(dim));
    bool inside = false;
    for (int r = 0; r < npos_ && !inside; ++r) {
      bool all_zero = true;
      for (size_t b = 0; b < dim; ++b) {
        Cyclo s;
        for (int j = 0; j < n_; ++j)
          if (!basis[b][j].is_zero()) s += funcs[r][j] * basis[b][j];
        vals[r][b] = s;
        all_zero = all_zero && s.is_zero();
      }
      inside = all_zero;
    }
    if (inside) continue;
    // v(t) = sum_b t^b basis_b avoids every hyperplane for some small t
    bool found = false;
    for (long t = 0; t <= static_cast<long>(npos_ * dim) + 1 && !found; ++t) {
      bool ok = true;
      for (int r = 0; r < npos_ && ok; ++r) {
        Cyclo s;
        long tp = 1;
        for (size_t b = 0; b < dim; ++b, tp *= t) s += vals[r][b] * Cyclo(tp);
        ok = !s.is_zero();
      }
      found = ok;
    }
    if (!found) throw InternalError("generic eigenvector search failed");
    out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------- parabolics

std::vector<int> CoxeterGroup::parabolic_transversal(SubsetMask j) const {
  std::vector<int> out;
  for (int w = 0; w < size_; ++w)
    if ((ldes_[w] & j) == 0) out.push_back(w);
  return out;
}

std::vector<int> CoxeterGroup::parabolic_elements(SubsetMask l) const {
  std::vector<int> out{0};
  std::vector<char> seen(size_, 0);
  seen[0] = 1;
  for (size_t q = 0; q < out.size(); ++q)
    for (int s = 0; s < n_; ++s) {
      if (!(l >> s & 1)) continue;
      int y = mul(out[q], gen_[s]);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

void CoxeterGroup::build_subset_classes() {
  const int ns = 1 << n_;
  std::vector<int> parent(ns);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::set<std::vector<int>> maps;
  for (int w = 0; w < size_; ++w) {
    std::vector<int> m(n_, -1);
    const uint8_t* p = perm(w);
    bool any = false;
    for (int i = 0; i < n_; ++i) {
      int r = p[i] < npos_ ? p[i] : p[i] - npos_;
      if (r < n_) {
        m[i] = r;
        any = true;
      }
    }
    if (any) maps.insert(m);
  }
  for (const auto& m : maps) {
    SubsetMask dom = 0;
    for (int i = 0; i < n_; ++i)
      if (m[i] >= 0) dom |= 1u << i;
    for (SubsetMask l = dom;; l = (l - 1) & dom) {
      SubsetMask img = 0;
      for (int i = 0; i < n_; ++i)
        if (l >> i & 1) img |= 1u << m[i];
      int a = find(static_cast<int>(l)), b = find(static_cast<int>(img));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
      if (l == 0) break;
    }
  }
  subset_class_.assign(ns, 0);
  for (int l = 0; l < ns; ++l) subset_class_[l] = find(l);
}

std::string CoxeterGroup::parabolic_label(SubsetMask l) const {
  const Golden max_len = *std::max_element(root_len2_.begin(), root_len2_.end());
  const bool two_lengths = std::any_of(root_len2_.begin(), root_len2_.end(), [&](const Golden& x) { return x != max_len; });
  auto bond = [&](int i, int j) {
    Golden p = cartan_(i, j) * cartan_(j, i);
    if (p.is_zero()) return 2;
    if (p == Golden(1)) return 3;
    if (p == Golden(2)) return 4;
    if (p == Golden(3)) return 6;
    return 5;
  };
  std::vector<char> done(n_, 0);
  struct Comp {
    bool tilde;
    int rank;
    std::string name;
  };
  std::vector<Comp> comps;
  for (int i = 0; i < n_; ++i) {
    if (!(l >> i & 1) || done[i]) continue;
    std::vector<int> nodes{i};
    done[i] = 1;
    for (size_t q = 0; q < nodes.size(); ++q)
      for (int j = 0; j < n_; ++j)
        if ((l >> j & 1) && !done[j] && bond(nodes[q], j) > 2) {
          done[j] = 1;
          nodes.push_back(j);
        }
    const int k = static_cast<int>(nodes.size());
    int nshort = 0, maxbond = 3, maxdeg = 0;
    for (int a : nodes) {
      nshort += root_len2_[a] != max_len;
      int deg = 0;
      for (int b : nodes)
        if (a != b && bond(a, b) > 2) {
          ++deg;
          maxbond = std::max(maxbond, bond(a, b));
        }
      maxdeg = std::max(maxdeg, deg);
    }
    Comp c{false, k, ""};
    if (maxdeg >= 3) {
      c.name = "D" + std::to_string(k);
    } else if (maxbond == 3) {
      c.tilde = two_lengths && nshort == k;
      c.name = std::string(c.tilde ? "~" : "") + "A" + std::to_string(k);
    } else if (maxbond == 4) {
      if (k == 2)
        c.name = "B2";
      else if (k == 4 && nshort == 2)
        c.name = "F4";
      else
        c.name = std::string(nshort == 1 ? "B" : "C") + std::to_string(k);
    } else if (maxbond == 5) {
      c.name = k == 2 ? "I2(5)" : "H" + std::to_string(k);
    } else {
      c.name = "I2(6)";
    }
    comps.push_back(c);
  }
  std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
    return std::tie(a.tilde, a.rank, a.name) < std::tie(b.tilde, b.rank, b.name);
  });
  std::string out;
  for (size_t i = 0; i < comps.size();) {
    size_t j = i;
    while (j < comps.size() && comps[j].name == comps[i].name) ++j;
    if (j - i > 1) out += std::to_string(j - i);
    out += comps[i].name;
    i = j;
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- signed permutations

std::vector<int> CoxeterGroup::signed_permutation(int w) const {
  if (type_.family != Family::B && type_.family != Family::D)
    throw InputError("signed permutations exist only for types B and D, not " + name());
  Matrix<Rational> m = matrix(w).map<Rational>([](const Golden& g) { return g.a(); });
  Matrix<Rational> mv = vbasis_ * m * vbasis_inv_;
  std::vector<int> sp(n_, 0);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      if (sgn(mv(i, k)) != 0) sp[k] = mv(i, k) > 0 ? i + 1 : -(i + 1);
  return sp;
}

int CoxeterGroup::from_signed_permutation(const std::vector<int>& sp) const {
  if (type_.family != Family::B && type_.family != Family::D)
    throw InputError("signed permutations exist only for types B and D, not " + name());
  if (static_cast<int>(sp.size()) != n_) throw InputError("signed permutation has wrong length");
  Matrix<Rational> mv(n_, n_);
  std::vector<char> hit(n_, 0);
  for (int k = 0; k < n_; ++k) {
    int m = std::abs(sp[k]) - 1;
    if (m < 0 || m >= n_ || hit[m]) throw InputError("not a signed permutation");
    hit[m] = 1;
    mv(m, k) = sp[k] > 0 ? 1 : -1;
  }
  Matrix<Rational> m = vbasis_inv_ * mv * vbasis_;
  std::vector<int> img(n_);
  for (int j = 0; j < n_; ++j) {
    std::vector<Golden> col(n_);
    for (int i = 0; i < n_; ++i) col[i] = Golden(m(i, j));
    img[j] = root_index(col);
  }
  int w = find_by_simple_images(img);
  if (w < 0) throw InputError("signed permutation is not an element of " + name());
  return w;
}

std::string CoxeterGroup::signed_cycle_type(int w) const {
  auto sp = signed_permutation(w);
  std::vector<int> pos, neg;
  std::vector<char> vis(n_, 0);
  for (int k = 0; k < n_; ++k) {
    if (vis[k]) continue;
    int len = 0, sign = 1;
    for (int x = k; !vis[x]; x = std::abs(sp[x]) - 1) {
      vis[x] = 1;
      ++len;
      if (sp[x] < 0) sign = -sign;
    }
    (sign > 0 ? pos : neg).push_back(len);
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  std::string s;
  for (int x : pos) s += std::to_string(x);
  s += ".";
  for (int x : neg) s += std::to_string(x);
  return s;
}

// ---------------------------------------------------------------- subgroups

Subgroup Subgroup::generated(GroupPtr g, std::vector<int> gens) {
  Subgroup h;
  h.g_ = std::move(g);
  h.gens_ = std::move(gens);
  h.local_.assign(h.g_->size(), -1);
  h.elems_.push_back(0);
  h.local_[0] = 0;
  for (size_t q = 0; q < h.elems_.size(); ++q)
    for (int s : h.gens_) {
      int y = h.g_->mul(h.elems_[q], s);
      if (h.local_[y] < 0) {
        h.local_[y] = 0;
        h.elems_.push_back(y);
      }
    }
  h.finish();
  return h;
}

Subgroup Subgroup::from_elements(GroupPtr g, std::vector<int> elements) {
  Subgroup h;
  h.g_ = std::move(g);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<char> in_closure(h.g_->size(), 0);
  std::vector<int> closure{0};
  in_closure[0] = 1;
  for (int w : elements) {
    if (in_closure[w]) continue;
    h.gens_.push_back(w);
    // extend the closure by the new generator
    for (size_t q = 0; q < closure.size(); ++q)
      for (int s : h.gens_) {
        int y = h.g_->mul(closure[q], s);
        if (!in_closure[y]) {
          in_closure[y] = 1;
          closure.push_back(y);
        }
      }
    if (closure.size() == elements.size()) break;
  }
  if (closure.size() != elements.size()) throw InputError("element set is not a subgroup");
  h.elems_ = std::move(elements);
  h.local_.assign(h.g_->size(), -1);
  for (int w : h.elems_)
    if (!in_closure[w]) throw InputError("element set is not a subgroup");
  h.finish();
  return h;
}

void Subgroup::finish() {
  std::sort(elems_.begin(), elems_.end());
  local_.assign(g_->size(), -1);
  for (size_t i = 0; i < elems_.size(); ++i) local_[elems_[i]] = static_cast<int>(i);
  cls_.assign(elems_.size(), -1);
  class_reps_.clear();
  class_sizes_.clear();
  fusion_.clear();
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (cls_[i] >= 0) continue;
    int id = static_cast<int>(class_reps_.size());
    std::vector<int> orbit{elems_[i]};
    cls_[i] = id;
    for (size_t q = 0; q < orbit.size(); ++q)
      for (int s : gens_) {
        int y = g_->conjugate(orbit[q], s);
        int ly = local_[y];
        if (cls_[ly] < 0) {
          cls_[ly] = id;
          orbit.push_back(y);
        }
      }
    class_reps_.push_back(elems_[i]);
    class_sizes_.push_back(static_cast<int>(orbit.size()));
    fusion_.push_back(g_->class_of(elems_[i]));
  }
}

Subgroup centralizer(const GroupPtr& g, int w) {
  std::vector<int> el;
  for (int x = 0; x < g->size(); ++x)
    if (g->mul(x, w) == g->mul(w, x)) el.push_back(x);
  return Subgroup::from_elements(g, el);
}

Subgroup centralizer_of_set(const GroupPtr& g, const std::vector<int>& ws) {
  std::vector<int> el;
  for (int x = 0; x < g->size(); ++x) {
    bool ok = true;
    for (int w : ws)
      if (g->mul(x, w) != g->mul(w, x)) {
        ok = false;
        break;
      }
    if (ok) el.push_back(x);
  }
  return Subgroup::from_elements(g, el);
}

Subgroup parabolic_subgroup(const GroupPtr& g, SubsetMask l) {
  std::vector<int> gens;
  for (int i = 0; i < g->rank(); ++i)
    if (l >> i & 1) gens.push_back(g->generator(i));
  return Subgroup::generated(g, gens);
}

Subgroup normalizer_parabolic(const GroupPtr& g, SubsetMask l) {
  std::vector<char> in_wl(g->size(), 0);
  for (int x : g->parabolic_elements(l)) in_wl[x] = 1;
  std::vector<int> el;
  for (int w = 0; w < g->size(); ++w) {
    bool ok = true;
    for (int i = 0; i < g->rank() && ok; ++i)
      if (l >> i & 1) ok = in_wl[g->conjugate(g->generator(i), w)];
    if (ok) el.push_back(w);
  }
  return Subgroup::from_elements(g, el);
}

BulkyResult is_bulky(const GroupPtr& g, SubsetMask l) {
  BulkyResult res;
  const int n = g->rank(), npos = g->num_pos_roots();
  Subgroup n_sub = normalizer_parabolic(g, l);
  res.normalizer_order = n_sub.order();
  Subgroup wl = parabolic_subgroup(g, l);
  for (int x : n_sub.elements()) {
    bool central = true;
    for (int i = 0; i < n && central; ++i)
      if (l >> i & 1) central = g->root_image(x, i) == i;
    if (central) ++res.centralizer_order;
    if (central && wl.contains(x)) ++res.center_order;
  }
  res.bulky = true;
  for (int w = 0; w < g->size(); ++w) {
    bool stable = true, fixed = true;
    for (int i = 0; i < n && stable; ++i) {
      if (!(l >> i & 1)) continue;
      int r = g->root_image(w, i);
      stable = r < npos && r < n && (l >> r & 1);
      fixed = fixed && r == i;
    }
    if (!stable) continue;
    res.complement.push_back(w);
    if (!fixed) res.bulky = false;
  }
  if (static_cast<long>(res.complement.size()) * wl.order() != res.normalizer_order)
    throw InternalError("N_L is not a complement of W_L");
  return res;
}

// ---------------------------------------------------------------- reflections, type B constructions

int reflection_of_root(const GroupPtr& g, int root) {
  const auto& beta = g->roots()[root];
  Golden bb = g->inner(beta, beta);
  std::vector<int> img(g->rank());
  for (int i = 0; i < g->rank(); ++i) {
    const auto& a = g->roots()[i];
    Golden c = Golden(2) * g->inner(a, beta) / bb;
    std::vector<Golden> v(a);
    for (int j = 0; j < g->rank(); ++j) v[j] -= c * beta[j];
    img[i] = g->root_index(v);
  }
  int w = g->find_by_simple_images(img);
  if (w < 0) throw InternalError("reflection not found");
  return w;
}

int reflection_by_root(const GroupPtr& g, const std::vector<Golden>& v) {
  int r = g->root_index(v);
  if (r < 0) throw InputError("vector is not a root of " + g->name());
  return reflection_of_root(g, r);
}

namespace {

using SignedPerm = std::vector<int>;

SignedPerm sp_identity(int n) {
  SignedPerm p(n);
  for (int k = 0; k < n; ++k) p[k] = k + 1;
  return p;
}

// (a b)(v) = a(b(v))
SignedPerm sp_mul(const SignedPerm& a, const SignedPerm& b) {
  SignedPerm c(a.size());
  for (size_t k = 0; k < b.size(); ++k) {
    int m = std::abs(b[k]) - 1;
    c[k] = b[k] > 0 ? a[m] : -a[m];
  }
  return c;
}

SignedPerm sp_t(int n, int i) {
  auto p = sp_identity(n);
  p[i - 1] = -i;
  return p;
}

SignedPerm sp_swap(int n, int i, int j) {
  auto p = sp_identity(n);
  std::swap(p[i - 1], p[j - 1]);
  return p;
}

void check_partition(int n, const Partition& lambda) {
  int s = 0;
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 1) throw InputError("partition parts must be positive");
    if (i && lambda[i] < lambda[i - 1]) throw InputError("partition must be non-decreasing");
    s += lambda[i];
  }
  if (s != n) throw InputError("partition does not sum to the rank");
}

std::vector<int> taus(const Partition& lambda) {
  std::vector<int> t{0};
  for (int x : lambda) t.push_back(t.back() + x);
  return t;  // t[i-1] = tau_i
}

SignedPerm sp_c(int n, const Partition& lambda, int i) {
  auto t = taus(lambda);
  SignedPerm p = sp_t(n, t[i - 1] + 1);
  // s_k swaps v_{k-1} and v_k
  for (int k = t[i - 1] + 2; k <= t[i]; ++k) p = sp_mul(p, sp_swap(n, k - 1, k));
  return p;
}

SignedPerm sp_x(int n, const Partition& lambda, int i) {
  auto t = taus(lambda);
  if (i >= static_cast<int>(lambda.size()) || lambda[i - 1] != lambda[i])
    throw InputError("x_i requires lambda_i = lambda_{i+1}");
  SignedPerm p = sp_identity(n);
  for (int j = 1; j <= lambda[i - 1]; ++j) p = sp_mul(p, sp_swap(n, t[i - 1] + j, t[i] + j));
  return p;
}

void require_bd(const GroupPtr& g) {
  if (g->type().family != Family::B && g->type().family != Family::D)
    throw InputError("construction requires a group of type B or D, not " + g->name());
}

}  // namespace

int b_sign_change(const GroupPtr& g, int i) {
  require_bd(g);
  return g->from_signed_permutation(sp_t(g->rank(), i));
}

int b_transposition(const GroupPtr& g, int i, int j) {
  require_bd(g);
  return g->from_signed_permutation(sp_swap(g->rank(), i, j));
}

int b_negative_cycle(const GroupPtr& g, const Partition& lambda, int i) {
  require_bd(g);
  check_partition(g->rank(), lambda);
  return g->from_signed_permutation(sp_c(g->rank(), lambda, i));
}

int b_swap_blocks(const GroupPtr& g, const Partition& lambda, int i) {
  require_bd(g);
  check_partition(g->rank(), lambda);
  return g->from_signed_permutation(sp_x(g->rank(), lambda, i));
}

int b_cuspidal_rep(const GroupPtr& g, const Partition& lambda) {
  require_bd(g);
  const int n = g->rank();
  check_partition(n, lambda);
  SignedPerm p = sp_identity(n);
  for (size_t i = 1; i <= lambda.size(); ++i) p = sp_mul(p, sp_c(n, lambda, static_cast<int>(i)));
  return g->from_signed_permutation(p);
}

std::vector<int> b_centralizer_gens(const GroupPtr& g, const Partition& lambda) {
  if (g->type().family != Family::B) throw InputError("b_centralizer_gens requires type B");
  const int n = g->rank();
  check_partition(n, lambda);
  std::vector<int> out;
  const int p = static_cast<int>(lambda.size());
  for (int i = 1; i <= p; ++i) out.push_back(g->from_signed_permutation(sp_c(n, lambda, i)));
  for (int i = 1; i < p; ++i)
    if (lambda[i - 1] == lambda[i]) out.push_back(g->from_signed_permutation(sp_x(n, lambda, i)));
  return out;
}

}  // namespace coxtop
