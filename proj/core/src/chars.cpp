#include "coxtop/chars.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "coxtop/errors.hpp"
#include "coxtop/matrix.hpp"
#include "coxtop/serialize.hpp"

namespace coxtop {

// ---------------------------------------------------------------- basics

ClassFunction trivial_character(const GroupPtr& g) { return ClassFunction::constant(g, Cyclo(1)); }

ClassFunction sign_character(const GroupPtr& g) {
  std::vector<Cyclo> v;
  for (const auto& c : g->classes()) v.emplace_back(g->length(c.rep) % 2 ? -1 : 1);
  return ClassFunction(g, v);
}

ClassFunction regular_character(const GroupPtr& g) {
  std::vector<Cyclo> v(g->num_classes(), Cyclo(0));
  v[g->class_of(g->identity())] = Cyclo(g->size());
  return ClassFunction(g, v);
}

Cyclo inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw InputError("inner product of class functions on different groups");
  Cyclo s(0);
  for (int c = 0; c < a.group->num_classes(); ++c)
    s += Cyclo(a.group->conj_class(c).fingerprint.class_size) * a[c] * b[c].conj();
  return (s * Cyclo(make_rational(1, a.group->size()))).reduced();
}

Cyclo inner_product(const SubgroupClassFunction& a, const SubgroupClassFunction& b) {
  if (a.sub != b.sub) throw InputError("inner product of class functions on different subgroups");
  Cyclo s(0);
  for (int c = 0; c < a.sub->num_classes(); ++c) s += Cyclo(a.sub->class_size(c)) * a.values[c] * b.values[c].conj();
  return (s * Cyclo(make_rational(1, a.sub->order()))).reduced();
}

SubgroupClassFunction restrict_to(const SubgroupPtr& h, const ClassFunction& chi) {
  if (h->group() != chi.group) throw InputError("restriction to a subgroup of another group");
  SubgroupClassFunction out{h, {}};
  for (int c = 0; c < h->num_classes(); ++c) out.values.push_back(chi[h->fusion(c)]);
  return out;
}

ClassFunction induce(const SubgroupClassFunction& phi) {
  const auto& h = *phi.sub;
  const auto& g = h.group();
  if (static_cast<int>(phi.values.size()) != h.num_classes()) throw InputError("class function size mismatch");
  std::vector<Cyclo> v(g->num_classes(), Cyclo(0));
  for (int c = 0; c < h.num_classes(); ++c) v[h.fusion(c)] += phi.values[c] * Cyclo(h.class_size(c));
  for (int c = 0; c < g->num_classes(); ++c)
    v[c] = (v[c] * Cyclo(make_rational(g->conj_class(c).fingerprint.centralizer_order, h.order()))).reduced();
  return ClassFunction(g, v);
}

// ---------------------------------------------------------------- linear characters

namespace {

// exps[x] = exps[parent] + gen exponent along a BFS over the Cayley graph; every
// edge is checked, which is exactly the homomorphism condition
std::optional<std::vector<int>> propagate(const Subgroup& h, const std::vector<int>& gen_exps, int n) {
  const auto& g = *h.group();
  std::vector<int> exps(h.order(), -1);
  std::vector<int> queue = {g.identity()};
  exps[h.local_index(g.identity())] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    int ex = exps[h.local_index(x)];
    for (size_t i = 0; i < h.generators().size(); ++i) {
      int y = g.mul(x, h.generators()[i]);
      int want = (ex + gen_exps[i]) % n;
      int& slot = exps[h.local_index(y)];
      if (slot < 0) {
        slot = want;
        queue.push_back(y);
      } else if (slot != want) {
        return std::nullopt;
      }
    }
  }
  return exps;
}

}  // namespace

LinearCharacter LinearCharacter::from_images(SubgroupPtr h, const std::vector<Cyclo>& images) {
  if (images.size() != h->generators().size()) throw InputError("need one image per subgroup generator");
  std::vector<std::pair<int, int>> roots;
  int n = 1;
  for (const auto& z : images) {
    auto r = z.as_root_of_unity();
    if (!r) throw InputError("generator image " + z.str() + " is not a root of unity");
    roots.push_back(*r);
    n = std::lcm(n, r->first);
  }
  std::vector<int> gen_exps;
  for (const auto& [m, k] : roots) gen_exps.push_back(k * (n / m));
  auto exps = propagate(*h, gen_exps, n);
  if (!exps) throw InputError("generator images do not extend to a linear character");
  LinearCharacter chi;
  chi.sub_ = std::move(h);
  chi.n_ = n;
  chi.images_ = images;
  chi.exps_ = std::move(*exps);
  return chi;
}

Cyclo LinearCharacter::at(int w) const {
  int i = sub_->local_index(w);
  if (i < 0) throw InputError("element outside the subgroup");
  return Cyclo::root_of_unity(n_, exps_[i]).reduced();
}

SubgroupClassFunction LinearCharacter::class_function() const {
  SubgroupClassFunction out{sub_, {}};
  for (int c = 0; c < sub_->num_classes(); ++c) out.values.push_back(at(sub_->class_rep(c)));
  return out;
}

LinearCharacter LinearCharacter::pow(long p) const {
  std::vector<Cyclo> imgs;
  for (const auto& z : images_) imgs.push_back(z.pow(p).reduced());
  return from_images(sub_, imgs);
}

bool operator==(const LinearCharacter& a, const LinearCharacter& b) {
  if (a.sub_->elements() != b.sub_->elements()) return false;
  const long l = std::lcm(a.n_, b.n_);
  for (size_t i = 0; i < a.exps_.size(); ++i)
    if (a.exps_[i] * (l / a.n_) != b.exps_[i] * (l / b.n_)) return false;
  return true;
}

namespace {

struct Abelianization {
  std::vector<int> coset;      // per local index
  int size = 0;
  std::vector<int> gen_order;  // order of each generator image
};

Abelianization abelianize(const Subgroup& h) {
  const auto& g = *h.group();
  const auto& gens = h.generators();
  std::vector<char> in_d(g.size(), 0);
  std::vector<int> d_elems = {g.identity()};
  in_d[g.identity()] = 1;
  std::vector<int> d_gens;
  auto close = [&] {
    for (size_t i = 0; i < d_elems.size(); ++i)
      for (int s : d_gens) {
        int y = g.mul(d_elems[i], s);
        if (!in_d[y]) {
          in_d[y] = 1;
          d_elems.push_back(y);
        }
      }
  };
  auto add_gen = [&](int s) {
    if (in_d[s]) return false;
    d_gens.push_back(s);
    close();
    return true;
  };
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      int a = gens[i], b = gens[j];
      add_gen(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
    }
  // normal closure: conjugates of the generators of D by generators of H
  for (bool grew = true; grew;) {
    grew = false;
    for (size_t k = 0; k < d_gens.size(); ++k)
      for (int x : gens) grew |= add_gen(g.mul(g.mul(g.inverse(x), d_gens[k]), x));
  }
  Abelianization ab;
  ab.coset.assign(h.order(), -1);
  for (int x : h.elements()) {
    if (ab.coset[h.local_index(x)] >= 0) continue;
    for (int dd : d_elems) ab.coset[h.local_index(g.mul(x, dd))] = ab.size;
    ++ab.size;
  }
  for (int s : gens) {
    int o = 1;
    for (int y = s; ab.coset[h.local_index(y)] != ab.coset[h.local_index(g.identity())]; y = g.mul(y, s)) ++o;
    ab.gen_order.push_back(o);
  }
  return ab;
}

}  // namespace

int abelianization_order(const Subgroup& h) { return abelianize(h).size; }

std::vector<LinearCharacter> linear_characters(const SubgroupPtr& h) {
  auto ab = abelianize(*h);
  const size_t k = h->generators().size();
  std::vector<LinearCharacter> out;
  std::vector<int> e(k, 0);
  while (true) {
    int n = 1;
    for (int o : ab.gen_order) n = std::lcm(n, o);
    std::vector<int> gen_exps(k);
    for (size_t i = 0; i < k; ++i) gen_exps[i] = e[i] * (n / ab.gen_order[i]);
    if (propagate(*h, gen_exps, n)) {
      std::vector<Cyclo> imgs;
      for (size_t i = 0; i < k; ++i) imgs.push_back(Cyclo::root_of_unity(ab.gen_order[i], e[i]).reduced());
      out.push_back(LinearCharacter::from_images(h, imgs));
    }
    size_t i = 0;
    while (i < k && ++e[i] == ab.gen_order[i]) e[i++] = 0;
    if (i == k) break;
  }
  if (static_cast<int>(out.size()) != ab.size) throw InternalError("linear character count differs from |H/H'|");
  return out;
}

LinearCharacter det_on_eigenspace(const SubgroupPtr& c, int w, const Cyclo& zeta, long p) {
  const auto& g = c->group();
  auto basis = g->cyclo_matrix(w).eigenspace(zeta);
  if (basis.empty()) throw InputError("eigenspace E(" + zeta.str() + ") of w is zero");
  const int k = static_cast<int>(basis.size());
  std::vector<Cyclo> imgs;
  for (int y : c->generators()) {
    auto m = g->cyclo_matrix(y);
    Matrix<Cyclo> r(k, k);
    for (int j = 0; j < k; ++j) {
      auto coords = Matrix<Cyclo>::coordinates(basis, m * basis[j]);
      if (!coords) throw InputError("subgroup does not preserve the eigenspace");
      for (int i = 0; i < k; ++i) r(i, j) = (*coords)[i];
    }
    imgs.push_back(r.det().pow(p).reduced());
  }
  return LinearCharacter::from_images(c, imgs);
}

LinearCharacter det_on_eigenspace(const GroupPtr& g, int w, const Cyclo& zeta, long p) {
  return det_on_eigenspace(std::make_shared<const Subgroup>(centralizer(g, w)), w, zeta, p);
}

LinearCharacter alpha_character(const GroupPtr& g, int w) {
  auto c = std::make_shared<const Subgroup>(centralizer(g, w));
  if (g->cyclo_matrix(w).eigenspace(Cyclo(1)).empty())
    return LinearCharacter::from_images(c, std::vector<Cyclo>(c->generators().size(), Cyclo(1)));
  return det_on_eigenspace(c, w, Cyclo(1), 1);
}

// ---------------------------------------------------------------- character table

namespace {

using u64 = unsigned long;

u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q); }

u64 powmod(u64 a, u64 e, u64 q) {
  u64 r = 1 % q;
  for (a %= q; e; e >>= 1, a = mulmod(a, a, q))
    if (e & 1) r = mulmod(r, a, q);
  return r;
}

u64 invmod(u64 a, u64 q) { return powmod(a, q - 2, q); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(u64 q) {
  std::vector<u64> fac;
  u64 m = q - 1;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      fac.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) fac.push_back(m);
  for (u64 r = 2; r < q; ++r) {
    bool ok = true;
    for (u64 f : fac) ok &= powmod(r, (q - 1) / f, q) != 1;
    if (ok) return r;
  }
  throw InternalError("no primitive root");
}

using Vec = std::vector<u64>;

// Column space in reduced form: basis[r][pivot[s]] = delta_rs.
struct Space {
  std::vector<Vec> basis;
  std::vector<int> pivot;
};

Space reduce_space(std::vector<Vec> vs, u64 q) {
  Space s;
  for (auto& v : vs) {
    for (size_t r = 0; r < s.basis.size(); ++r) {
      u64 c = v[s.pivot[r]];
      if (c)
        for (size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + q - mulmod(c, s.basis[r][i], q)) % q;
    }
    int p = -1;
    for (size_t i = 0; i < v.size() && p < 0; ++i)
      if (v[i]) p = static_cast<int>(i);
    if (p < 0) continue;
    u64 inv = invmod(v[p], q);
    for (auto& x : v) x = mulmod(x, inv, q);
    for (size_t r = 0; r < s.basis.size(); ++r) {
      u64 c = s.basis[r][p];
      if (c)
        for (size_t i = 0; i < v.size(); ++i) s.basis[r][i] = (s.basis[r][i] + q - mulmod(c, v[i], q)) % q;
    }
    s.basis.push_back(v);
    s.pivot.push_back(p);
  }
  return s;
}

// Kernel of a d x d matrix mod q.
std::vector<Vec> kernel_mod(std::vector<Vec> m, u64 q) {
  const int d = static_cast<int>(m.size());
  std::vector<int> piv_col;
  int row = 0;
  for (int col = 0; col < d && row < d; ++col) {
    int p = row;
    while (p < d && m[p][col] == 0) ++p;
    if (p == d) continue;
    std::swap(m[p], m[row]);
    u64 inv = invmod(m[row][col], q);
    for (auto& x : m[row]) x = mulmod(x, inv, q);
    for (int r = 0; r < d; ++r)
      if (r != row && m[r][col]) {
        u64 c = m[r][col];
        for (int j = 0; j < d; ++j) m[r][j] = (m[r][j] + q - mulmod(c, m[row][j], q)) % q;
      }
    piv_col.push_back(col);
    ++row;
  }
  std::vector<Vec> out;
  for (int free = 0; free < d; ++free) {
    if (std::find(piv_col.begin(), piv_col.end(), free) != piv_col.end()) continue;
    Vec v(d, 0);
    v[free] = 1;
    for (size_t r = 0; r < piv_col.size(); ++r) v[piv_col[r]] = (q - m[r][free]) % q;
    out.push_back(v);
  }
  return out;
}

// Class multiplication coefficients a[i][j][l] = #{x in C_i : x^-1 z_l in C_j}.
std::vector<std::vector<std::vector<u64>>> class_constants(const CoxeterGroup& g) {
  const int k = g.num_classes();
  std::vector<std::vector<std::vector<u64>>> a(k, std::vector<std::vector<u64>>(k, std::vector<u64>(k, 0)));
  for (int l = 0; l < k; ++l) {
    int z = g.conj_class(l).rep;
    for (int x = 0; x < g.size(); ++x) ++a[g.class_of(x)][g.class_of(g.mul(g.inverse(x), z))][l];
  }
  return a;
}

std::optional<std::vector<ClassFunction>> dixon_mod(const GroupPtr& gp, u64 q,
                                                    const std::vector<std::vector<std::vector<u64>>>& a) {
  const auto& g = *gp;
  const int k = g.num_classes();
  std::vector<Vec> full;
  for (int i = 0; i < k; ++i) {
    Vec v(k, 0);
    v[i] = 1;
    full.push_back(v);
  }
  std::vector<Space> spaces = {reduce_space(full, q)};
  for (int i = 0; i < k; ++i) {
    std::vector<Space> next;
    for (auto& sp : spaces) {
      const int d = static_cast<int>(sp.basis.size());
      if (d == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      // action of A_i on the space in its own coordinates
      std::vector<Vec> images;
      for (const auto& b : sp.basis) {
        Vec img(k, 0);
        for (int j = 0; j < k; ++j) {
          u64 s = 0;
          for (int l = 0; l < k; ++l) s = (s + mulmod(a[i][j][l] % q, b[l], q)) % q;
          img[j] = s;
        }
        images.push_back(img);
      }
      int found = 0;
      for (u64 lambda = 0; lambda < q && found < d; ++lambda) {
        std::vector<Vec> m(d, Vec(d, 0));
        for (int r = 0; r < d; ++r)
          for (int s = 0; s < d; ++s) m[s][r] = images[r][sp.pivot[s]];
        for (int r = 0; r < d; ++r) m[r][r] = (m[r][r] + q - lambda) % q;
        auto ker = kernel_mod(m, q);
        if (ker.empty()) continue;
        std::vector<Vec> vs;
        for (const auto& c : ker) {
          Vec v(k, 0);
          for (int r = 0; r < d; ++r)
            for (int l = 0; l < k; ++l) v[l] = (v[l] + mulmod(c[r], sp.basis[r][l], q)) % q;
          vs.push_back(v);
        }
        next.push_back(reduce_space(vs, q));
        found += static_cast<int>(ker.size());
      }
      if (found != d) return std::nullopt;
    }
    spaces = std::move(next);
  }

  const int id = g.class_of(g.identity());
  const int e = g.exponent();
  const u64 z_e = powmod(primitive_root(q), (q - 1) / e, q);
  const long sq = static_cast<long>(std::sqrt(static_cast<double>(g.size()))) + 1;
  std::vector<ClassFunction> out;
  for (const auto& sp : spaces) {
    if (sp.basis.size() != 1) return std::nullopt;
    Vec w = sp.basis[0];
    if (w[id] == 0) return std::nullopt;
    u64 inv = invmod(w[id], q);
    for (auto& x : w) x = mulmod(x, inv, q);
    // sum_l w_l w_{l'} / |C_l| = |W| / chi(1)^2
    u64 s = 0;
    for (int l = 0; l < k; ++l) {
      int lp = g.class_of(g.inverse(g.conj_class(l).rep));
      s = (s + mulmod(mulmod(w[l], w[lp], q), invmod(g.conj_class(l).fingerprint.class_size % q, q), q)) % q;
    }
    if (s == 0) return std::nullopt;
    u64 deg2 = mulmod(g.size() % q, invmod(s, q), q);
    long deg = -1;
    for (long dd = 1; dd <= sq; ++dd)
      if (static_cast<u64>(dd * dd) % q == deg2) {
        if (deg > 0) return std::nullopt;
        deg = dd;
      }
    if (deg < 0) return std::nullopt;
    Vec chi(k);
    for (int l = 0; l < k; ++l)
      chi[l] = mulmod(mulmod(w[l], deg % q, q), invmod(g.conj_class(l).fingerprint.class_size % q, q), q);
    std::vector<Cyclo> vals;
    for (int l = 0; l < k; ++l) {
      int rep = g.conj_class(l).rep;
      int o = g.order(rep);
      u64 z = powmod(z_e, e / o, q);
      std::vector<int> pc(o);
      for (int j = 0; j < o; ++j) pc[j] = g.class_of(g.power(rep, j));
      Cyclo v(0);
      u64 inv_o = invmod(o, q);
      for (int t = 0; t < o; ++t) {
        // multiplicity of the eigenvalue zeta_o^t
        u64 m = 0;
        for (int j = 0; j < o; ++j) m = (m + mulmod(chi[pc[j]], powmod(z, (static_cast<u64>(o) - t) * j % o, q), q)) % q;
        m = mulmod(m, inv_o, q);
        if (static_cast<long>(m) > deg) return std::nullopt;
        if (m) v += Cyclo(static_cast<long>(m)) * Cyclo::root_of_unity(o, t);
      }
      vals.push_back(v.reduced());
    }
    out.emplace_back(gp, vals);
  }
  return out;
}

bool is_trivial(const ClassFunction& c) {
  for (const auto& v : c.values)
    if (v != Cyclo(1)) return false;
  return true;
}

void sort_table(std::vector<ClassFunction>& irr) {
  std::stable_sort(irr.begin(), irr.end(), [](const ClassFunction& a, const ClassFunction& b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    Rational da = a.degree().to_rational(), db = b.degree().to_rational();
    if (da != db) return da < db;
    return a.str() < b.str();
  });
}

}  // namespace

bool CharacterTable::validate() const {
  const int k = group->num_classes();
  if (size() != k) return false;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      if (inner_product(irreducibles[i], irreducibles[j]) != Cyclo(i == j ? 1 : 0)) return false;
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Cyclo s(0);
      for (const auto& chi : irreducibles) s += chi[a] * chi[b].conj();
      Cyclo want = a == b ? Cyclo(group->conj_class(a).fingerprint.centralizer_order) : Cyclo(0);
      if (s.reduced() != want) return false;
    }
  return true;
}

CharacterTable irreducible_characters(const GroupPtr& g) {
  const long e = g->exponent();
  const long bound = 2 * static_cast<long>(std::ceil(std::sqrt(static_cast<double>(g->size()))));
  auto a = class_constants(*g);
  long q = e + 1;
  while (q <= bound || !is_prime(q)) q += e;
  for (int attempt = 0; attempt < 8; ++attempt, q += e) {
    while (!is_prime(q)) q += e;
    auto irr = dixon_mod(g, q, a);
    if (!irr) continue;
    sort_table(*irr);
    CharacterTable t{g, std::move(*irr), q};
    if (t.validate()) return t;
  }
  throw InternalError("character table of " + g->name() + " did not split over 8 primes");
}

const CharacterTable& character_table(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<std::string, CharacterTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g->name());
  if (it != cache.end() && it->second.group == g) return it->second;
  auto t = irreducible_characters(g);
  return cache.insert_or_assign(g->name(), std::move(t)).first->second;
}

std::vector<long> decompose(const CharacterTable& t, const ClassFunction& chi) {
  std::vector<long> out;
  for (const auto& irr : t.irreducibles) {
    Cyclo n = inner_product(chi, irr);
    if (!n.is_rational()) throw InputError("not a character: irrational multiplicity");
    Rational r = n.to_rational();
    if (r.get_den() != 1 || sgn(r) < 0 || !r.get_num().fits_slong_p())
      throw InputError("not a character: multiplicity " + to_display(r));
    out.push_back(r.get_num().get_si());
  }
  if (recompose(t, out) != chi) throw InputError("not a character: not in the span of the irreducibles");
  return out;
}

ClassFunction recompose(const CharacterTable& t, const std::vector<long>& mult) {
  if (static_cast<int>(mult.size()) != t.size()) throw InputError("multiplicity vector has the wrong length");
  auto out = ClassFunction::constant(t.group, Cyclo(0));
  for (int i = 0; i < t.size(); ++i)
    if (mult[i]) out += Cyclo(mult[i]) * t.irreducibles[i];
  for (auto& v : out.values) v = v.reduced();
  return out;
}

nlohmann::json character_table_to_json(const CharacterTable& t) {
  nlohmann::json j;
  j["version"] = 1;
  j["group"] = t.group->name();
  j["prime"] = t.prime;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : t.group->classes()) j["classes"].push_back(c.fingerprint.str());
  j["irreducibles"] = nlohmann::json::array();
  for (const auto& chi : t.irreducibles) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : chi.values) row.push_back(cyclo_to_json(v));
    j["irreducibles"].push_back(row);
  }
  return j;
}

CharacterTable character_table_from_json(const GroupPtr& g, const nlohmann::json& j) {
  if (j.value("version", 0) != 1) throw InputError("unsupported character table version");
  if (j.at("group").get<std::string>() != g->name()) throw InputError("character table is for another group");
  const auto& cls = j.at("classes");
  if (static_cast<int>(cls.size()) != g->num_classes()) throw InputError("class count mismatch");
  for (int c = 0; c < g->num_classes(); ++c)
    if (cls[c].get<std::string>() != g->conj_class(c).fingerprint.str())
      throw InputError("class " + std::to_string(c) + " fingerprint mismatch");
  CharacterTable t{g, {}, j.value("prime", 0L)};
  for (const auto& row : j.at("irreducibles")) {
    std::vector<Cyclo> vals;
    for (const auto& v : row) vals.push_back(cyclo_from_json(v));
    t.irreducibles.emplace_back(g, vals);
  }
  if (!t.validate()) throw InputError("imported character table fails orthogonality");
  return t;
}

}  // namespace coxtop
