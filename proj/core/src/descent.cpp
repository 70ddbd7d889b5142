#include "coxtop/descent.hpp"

#include <algorithm>
#include <random>

#include "coxtop/errors.hpp"

namespace coxtop {

// ---------------------------------------------------------------- group algebra

GroupAlgebraElement GroupAlgebraElement::basis(GroupPtr g, int w, const Rational& c) {
  GroupAlgebraElement e(std::move(g));
  e.add(w, c);
  return e;
}

Rational GroupAlgebraElement::coeff(int w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GroupAlgebraElement::add(int w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (fresh) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
  if (g_ != o.g_) throw InputError("group algebra elements of different groups");
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (a.g_ != b.g_) throw InputError("group algebra elements of different groups");
  std::vector<Rational> dense(a.g_->size());
  for (const auto& [x, cx] : a.terms_)
    for (const auto& [y, cy] : b.terms_) dense[a.g_->mul(x, y)] += cx * cy;
  GroupAlgebraElement r(a.g_);
  for (int w = 0; w < a.g_->size(); ++w)
    if (sgn(dense[w]) != 0) r.terms_.emplace(w, dense[w]);
  return r;
}

bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  return a.g_ == b.g_ && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------- conventions

std::string DescentConvention::str() const {
  std::string s = left_cosets ? "right-descents" : "left-descents";
  s += over_k ? ",X_K" : ",X_J";
  s += inverse ? ",xJx^-1" : ",x^-1Jx";
  s += simple_target ? "<=S" : "<=K";
  if (double_coset) s += ",double-coset";
  if (transpose) s += ",transposed";
  return s;
}

std::vector<DescentConvention> DescentConvention::all() {
  std::vector<DescentConvention> out;
  for (int b = 0; b < 64; ++b)
    out.push_back({bool(b & 1), bool(b & 2), bool(b & 4), bool(b & 8), bool(b & 16), bool(b & 32)});
  return out;
}

DescentConvention default_descent_convention() {
  DescentConvention c;
  c.over_k = true;
  c.simple_target = true;
  return c;
}

std::vector<SubsetMask> descent_subset_order(int rank) {
  std::vector<SubsetMask> out;
  for (SubsetMask l = 0; l < (1u << rank); ++l) out.push_back(l);
  auto elems = [&](SubsetMask l) {
    std::vector<int> v;
    for (int i = 0; i < rank; ++i)
      if (l >> i & 1) v.push_back(i);
    return v;
  };
  std::sort(out.begin(), out.end(), [&](SubsetMask a, SubsetMask b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa > pb;
    return elems(a) < elems(b);
  });
  return out;
}

// ---------------------------------------------------------------- m, n, e_K

namespace {

SubsetMask side_descents(const CoxeterGroup& g, int w, bool left_cosets) {
  return left_cosets ? g.right_descents(w) : g.left_descents(w);
}

}  // namespace

Matrix<Rational> m_matrix(const GroupPtr& g, const DescentConvention& conv) {
  const int n = g->rank(), npos = g->num_pos_roots();
  const SubsetMask full = 1u << n;
  const auto order = descent_subset_order(n);
  std::vector<int> pos(full);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<std::vector<long>> count(full, std::vector<long>(full, 0));
  std::vector<int> img(n);
  for (int x = 0; x < g->size(); ++x) {
    // conjugating s by x sends it to the reflection of the image root
    int conj = conv.inverse ? x : g->inverse(x);
    for (int i = 0; i < n; ++i) {
      int r = g->root_image(conj, i);
      if (r >= npos) r -= npos;
      img[i] = r < n ? r : -1;
    }
    SubsetMask own = side_descents(*g, x, conv.left_cosets);
    SubsetMask other = side_descents(*g, x, !conv.left_cosets);
    for (SubsetMask j = 0; j < full; ++j) {
      if (!conv.over_k && (own & j)) continue;
      if (conv.over_k && conv.double_coset && (other & j)) continue;
      SubsetMask image = 0;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        if (j >> i & 1) {
          ok = img[i] >= 0;
          if (ok) image |= 1u << img[i];
        }
      if (!ok) continue;
      for (SubsetMask k = j; k < full; k = (k + 1) | j) {
        if (conv.over_k && (own & k)) continue;
        if (!conv.over_k && conv.double_coset && (other & k)) continue;
        if (!conv.simple_target && (image & ~k)) continue;
        ++count[k][j];
      }
    }
  }
  Matrix<Rational> m(order.size(), order.size());
  for (SubsetMask k = 0; k < full; ++k)
    for (SubsetMask j = 0; j < full; ++j) m(pos[k], pos[j]) = conv.transpose ? count[j][k] : count[k][j];
  return m;
}

DescentData quasi_idempotents(const GroupPtr& g, const DescentConvention& conv) {
  DescentData d;
  d.group = g;
  d.convention = conv;
  const int n = g->rank();
  d.subsets = descent_subset_order(n);
  d.position.assign(1u << n, 0);
  for (size_t i = 0; i < d.subsets.size(); ++i) d.position[d.subsets[i]] = static_cast<int>(i);
  d.m = m_matrix(g, conv);
  for (size_t i = 0; i < d.subsets.size(); ++i)
    if (sgn(d.m(i, i)) <= 0) throw InternalError("m has a non-positive diagonal entry");
  d.n = d.m.inverse();
  d.gamma.assign(1u << n, 0);
  const auto& sc = g->subset_classes();
  for (SubsetMask k = 0; k < (1u << n); ++k)
    for (SubsetMask l = 0; l < (1u << n); ++l) d.gamma[k] += sc[l] == sc[k];
  return d;
}

SubsetMask DescentData::descents(int w) const { return side_descents(*group, w, convention.left_cosets); }

std::vector<Rational> DescentData::coefficient_table(SubsetMask k) const {
  const SubsetMask full = 1u << group->rank();
  std::vector<Rational> row(full);
  for (SubsetMask j = 0; j < full; ++j) {
    const Rational& c = n(position[k], position[j]);
    if (sgn(c) == 0) continue;
    for (SubsetMask dset = 0; dset < full; ++dset)
      if ((dset & j) == 0) row[dset] += c;
  }
  return row;
}

GroupAlgebraElement DescentData::x(SubsetMask j) const {
  GroupAlgebraElement e(group);
  for (int w = 0; w < group->size(); ++w)
    if ((descents(w) & j) == 0) e.add(w, 1);
  return e;
}

GroupAlgebraElement DescentData::e(SubsetMask k) const {
  auto table = coefficient_table(k);
  GroupAlgebraElement out(group);
  for (int w = 0; w < group->size(); ++w) out.add(w, table[descents(w)]);
  return out;
}

namespace {

// e_K scaled to integers, indexed by descent set.
struct ScaledTable {
  std::vector<__int128> f;
  Integer den;
};

ScaledTable scaled_table(const DescentData& d, SubsetMask k) {
  auto table = d.coefficient_table(k);
  ScaledTable t;
  t.den = 1;
  for (const auto& c : table) t.den = lcm(t.den, Integer(c.get_den()));
  if (!t.den.fits_slong_p()) throw UndecidedError("quasi-idempotent denominator too large");
  t.f.resize(table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    Rational scaled = table[i] * t.den;
    if (!scaled.get_num().fits_slong_p()) throw UndecidedError("quasi-idempotent coefficients too large");
    t.f[i] = scaled.get_num().get_si();
  }
  return t;
}

// Coefficient of z in (den e)(den e).
__int128 square_coefficient(const DescentData& d, const ScaledTable& t, const std::vector<int>& support, int z) {
  const auto& g = *d.group;
  const int n = g.rank(), npos = g.num_pos_roots();
  // descent set of w^-1 z read off root images, no element lookup needed
  const uint8_t* zp = g.perm(z);
  const uint8_t* zi = g.perm(g.inverse(z));
  __int128 acc = 0;
  for (int w : support) {
    SubsetMask ds = 0;
    if (!d.convention.left_cosets) {
      const uint8_t* wp = g.perm(w);
      for (int s = 0; s < n; ++s)
        if (zi[wp[s]] >= npos) ds |= 1u << s;
    } else {
      const uint8_t* wi = g.perm(g.inverse(w));
      for (int s = 0; s < n; ++s)
        if (wi[zp[s]] >= npos) ds |= 1u << s;
    }
    acc += t.f[d.descents(w)] * t.f[ds];
  }
  return acc;
}

std::vector<int> support_of(const DescentData& d, const ScaledTable& t) {
  std::vector<int> support;
  for (int w = 0; w < d.group->size(); ++w)
    if (t.f[d.descents(w)] != 0) support.push_back(w);
  return support;
}

Integer to_integer(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer r = static_cast<unsigned long>(u >> 64);
  r <<= 64;
  r += static_cast<unsigned long>(u & ~0UL);
  return neg ? Integer(-r) : r;
}

}  // namespace

std::optional<Rational> quasi_idempotent_scalar(const DescentData& d, SubsetMask k) {
  auto t = scaled_table(d, k);
  auto support = support_of(d, t);
  if (support.empty()) return std::nullopt;
  std::optional<Rational> lambda;
  for (int z = 0; z < d.group->size(); ++z) {
    __int128 acc = square_coefficient(d, t, support, z);
    __int128 fz = t.f[d.descents(z)];
    if (fz == 0) {
      if (acc != 0) return std::nullopt;
      continue;
    }
    Rational r(to_integer(acc), to_integer(fz) * t.den);
    r.canonicalize();
    if (!lambda) lambda = r;
    else if (*lambda != r) return std::nullopt;
  }
  if (!lambda || sgn(*lambda) == 0) return std::nullopt;
  return lambda;
}

bool check_quasi_idempotent(const DescentData& d, SubsetMask k, const Rational& lambda, long samples,
                            uint64_t seed) {
  const auto& g = *d.group;
  auto t = scaled_table(d, k);
  Rational scale_q = lambda * t.den;
  if (!scale_q.get_num().fits_slong_p() || !scale_q.get_den().fits_slong_p())
    throw UndecidedError("quasi-idempotent scalar too large");
  const __int128 p = scale_q.get_num().get_si(), q = scale_q.get_den().get_si();

  std::vector<int> targets;
  if (samples < 0) {
    targets.resize(g.size());
    for (int z = 0; z < g.size(); ++z) targets[z] = z;
  } else {
    std::mt19937_64 rng(seed);
    targets.push_back(0);
    std::uniform_int_distribution<int> pick(0, g.size() - 1);
    for (long i = 0; i < samples; ++i) targets.push_back(pick(rng));
  }
  auto support = support_of(d, t);
  for (int z : targets)
    if (q * square_coefficient(d, t, support, z) != p * t.f[d.descents(z)]) return false;
  return true;
}

// ---------------------------------------------------------------- characters

ClassFunction left_ideal_character(const GroupAlgebraElement& e) {
  const auto& g = e.group();
  if (e.is_zero()) throw InputError("zero element has no left ideal character");
  GroupAlgebraElement sq = e * e;
  const auto& [w0, c0] = *e.terms().begin();
  Rational gamma = sq.coeff(w0) / c0;
  if (sgn(gamma) == 0 || !(sq == gamma * GroupAlgebraElement(e)))
    throw InputError("element is not a quasi-idempotent");
  std::vector<Rational> sums(g->num_classes());
  for (const auto& [w, c] : e.terms()) sums[g->class_of(w)] += c;
  std::vector<Cyclo> vals;
  for (int c = 0; c < g->num_classes(); ++c)
    vals.emplace_back(Rational(sums[c] * g->conj_class(c).fingerprint.centralizer_order / gamma));
  return ClassFunction(g, vals);
}

ClassFunction rho_top(const DescentData& d) {
  const auto& g = d.group;
  const SubsetMask s = (1u << g->rank()) - 1;
  auto table = d.coefficient_table(s);
  std::vector<Rational> sums(g->num_classes());
  for (int w = 0; w < g->size(); ++w) sums[g->class_of(w)] += table[d.descents(w)];
  std::vector<Cyclo> vals;
  for (int c = 0; c < g->num_classes(); ++c)
    vals.emplace_back(Rational(sums[c] * g->conj_class(c).fingerprint.centralizer_order));
  return ClassFunction(g, vals);
}

ClassFunction rho_top(const GroupPtr& g) { return rho_top(quasi_idempotents(g)); }

std::vector<DescentConvention> admissible_conventions(const std::vector<GroupPtr>& probes) {
  std::vector<DescentConvention> out;
  for (const auto& conv : DescentConvention::all()) {
    bool ok = true;
    for (const auto& g : probes) {
      DescentData d;
      try {
        d = quasi_idempotents(g, conv);
      } catch (const std::exception&) {
        ok = false;
        break;
      }
      const SubsetMask full = 1u << g->rank();
      for (SubsetMask k = 0; k < full && ok; ++k) {
        auto lambda = quasi_idempotent_scalar(d, k);
        ok = lambda.has_value() && (k != full - 1 || *lambda == 1);
      }
      if (ok && g->size() == 2) {
        auto rho = rho_top(d);
        ok = rho.at_element(g->generator(0)) == Cyclo(-1) && rho.degree() == Cyclo(1);
      }
      if (!ok) break;
    }
    if (ok) out.push_back(conv);
  }
  return out;
}

}  // namespace coxtop
