#include "coxtop/orlik_solomon.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "coxtop/errors.hpp"
#include "coxtop/matrix.hpp"
#include "coxtop/serialize.hpp"

namespace coxtop {

namespace {

// Row echelon form of a set of vectors, for span membership.
class Echelon {
 public:
  // reduces v against the rows; true if it becomes zero
  bool in_span(std::vector<Golden> v) const { return reduce(v) < 0; }

  bool add(std::vector<Golden> v) {
    int p = reduce(v);
    if (p < 0) return false;
    Golden inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  int reduce(std::vector<Golden>& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Golden c = v[pivots_[i]];
      if (c.is_zero()) continue;
      for (size_t j = 0; j < v.size(); ++j)
        if (!rows_[i][j].is_zero()) v[j] -= c * rows_[i][j];
    }
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) return static_cast<int>(j);
    return -1;
  }

  std::vector<std::vector<Golden>> rows_;
  std::vector<int> pivots_;
};

int parity_between(Monomial a, Monomial b) {
  // pairs i in a, j in b with i > j
  int c = 0;
  for (Monomial x = a; x; x &= x - 1) {
    int i = __builtin_ctzll(x);
    c += __builtin_popcountll(b & ((Monomial(1) << i) - 1));
  }
  return c & 1;
}

long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw UndecidedError("Orlik-Solomon coefficient overflow");
  return r;
}

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw UndecidedError("Orlik-Solomon coefficient overflow");
  return r;
}

int bucket_of(Monomial m) {
  int a = __builtin_ctzll(m);
  Monomial rest = m & (m - 1);
  return a * 64 + __builtin_ctzll(rest);
}

// index of a member of `members` contained in m, or -1
int find_contained(const std::vector<std::vector<int>>& buckets, const std::vector<Monomial>& members, Monomial m) {
  auto idx = monomial_indices(m);
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a + 1; b < idx.size(); ++b)
      for (int i : buckets[idx[a] * 64 + idx[b]])
        if ((members[i] & ~m) == 0) return i;
  return -1;
}

}  // namespace

Arrangement Arrangement::make(ArrangementField field, std::vector<std::vector<Golden>> normals) {
  if (normals.empty()) throw InputError("arrangement has no hyperplanes");
  if (normals.size() > 64) throw InputError("at most 64 hyperplanes are supported");
  const int dim = static_cast<int>(normals[0].size());
  if (dim == 0) throw InputError("normals must have at least one coordinate");
  for (const auto& v : normals) {
    if (static_cast<int>(v.size()) != dim) throw InputError("normals of different lengths");
    bool zero = true;
    for (const auto& x : v) {
      zero &= x.is_zero();
      if (field == ArrangementField::Rational && !x.is_rational())
        throw InputError("irrational coordinate in a rational arrangement");
    }
    if (zero) throw InputError("zero normal vector");
  }
  for (size_t i = 0; i < normals.size(); ++i)
    for (size_t j = i + 1; j < normals.size(); ++j) {
      Echelon e;
      e.add(normals[i]);
      if (e.in_span(normals[j]))
        throw InputError("normals " + std::to_string(i) + " and " + std::to_string(j) + " are proportional");
    }
  Matrix<Golden> m(static_cast<int>(normals.size()), dim);
  for (size_t i = 0; i < normals.size(); ++i)
    for (int j = 0; j < dim; ++j) m(static_cast<int>(i), j) = normals[i][j];
  if (m.rank() != dim) throw InputError("arrangement is not essential");
  Arrangement a;
  a.field = field;
  a.dim = dim;
  a.normals = std::move(normals);
  return a;
}

Arrangement arrangement_of_group(const GroupPtr& g) {
  std::vector<std::vector<Golden>> normals(g->roots().begin(), g->roots().begin() + g->num_pos_roots());
  return Arrangement::make(g->crystallographic() ? ArrangementField::Rational : ArrangementField::Sqrt5,
                           std::move(normals));
}

Arrangement arrangement_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("normals"))
    throw InputError("arrangement needs \"field\" and \"normals\"");
  std::string f = j.at("field").get<std::string>();
  ArrangementField field;
  if (f == "rational") field = ArrangementField::Rational;
  else if (f == "sqrt5") field = ArrangementField::Sqrt5;
  else throw InputError("unknown field '" + f + "'");
  std::vector<std::vector<Golden>> normals;
  for (const auto& row : j.at("normals")) {
    if (!row.is_array()) throw InputError("each normal must be an array");
    std::vector<Golden> v;
    for (const auto& x : row)
      v.push_back(field == ArrangementField::Rational ? Golden(rational_from_json(x)) : golden_from_json(x));
    normals.push_back(std::move(v));
  }
  return Arrangement::make(field, std::move(normals));
}

std::vector<int> monomial_indices(Monomial m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
  return out;
}

Monomial monomial_of(const std::vector<int>& increasing) {
  Monomial m = 0;
  int last = -1;
  for (int t : increasing) {
    if (t <= last || t >= 64) throw InputError("monomial indices must be increasing and below 64");
    m |= Monomial(1) << t;
    last = t;
  }
  return m;
}

bool is_independent(const Arrangement& arr, Monomial m) {
  Echelon e;
  for (int t : monomial_indices(m))
    if (!e.add(arr.normals[t])) return false;
  return true;
}

std::vector<long> NbcData::poincare() const {
  std::vector<long> out;
  for (const auto& b : basis) out.push_back(static_cast<long>(b.size()));
  return out;
}

long NbcData::total() const {
  long s = 0;
  for (const auto& b : basis) s += static_cast<long>(b.size());
  return s;
}

NbcData nbc(const Arrangement& arr) {
  const int T = arr.size();
  NbcData d;
  d.basis.resize(arr.dim + 1);
  std::vector<std::vector<int>> buckets(64 * 64);
  struct Entry {
    Monomial h;
    int last;
    Echelon span;
  };
  std::deque<Entry> queue;
  queue.push_back({0, -1, Echelon()});
  while (!queue.empty()) {
    Entry cur = std::move(queue.front());
    queue.pop_front();
    int dependent = -1;
    for (int t = cur.last + 1; t < T && dependent < 0; ++t)
      if (cur.span.in_span(arr.normals[t])) dependent = t;
    if (dependent < 0) {
      int p = monomial_degree(cur.h);
      d.index[cur.h] = static_cast<int>(d.basis[p].size());
      d.basis[p].push_back(cur.h);
      for (int t = cur.last + 1; t < T; ++t) {
        Entry next{cur.h | (Monomial(1) << t), t, cur.span};
        next.span.add(arr.normals[t]);
        queue.push_back(std::move(next));
      }
      continue;
    }
    if (find_contained(buckets, d.minimal_broken, cur.h) >= 0) continue;
    buckets[bucket_of(cur.h)].push_back(static_cast<int>(d.minimal_broken.size()));
    d.minimal_broken.push_back(cur.h);
    d.completion.push_back(dependent);
  }
  return d;
}

// ---------------------------------------------------------------- rewriting

OrlikSolomon::OrlikSolomon(Arrangement arr, size_t cache_cap) : arr_(std::move(arr)), nbc_(nbc(arr_)), cap_(cache_cap) {
  scratch_.resize(nbc_.basis.size());
  for (size_t p = 0; p < nbc_.basis.size(); ++p) scratch_[p].assign(nbc_.basis[p].size(), 0);
  buckets_.resize(64 * 64);
  for (size_t i = 0; i < nbc_.minimal_broken.size(); ++i)
    buckets_[bucket_of(nbc_.minimal_broken[i])].push_back(static_cast<int>(i));
}

void OrlikSolomon::maybe_evict() {
  if (cap_ > 0 && cache_.size() > cap_) cache_.clear();
}

const std::vector<std::pair<int, long>>& OrlikSolomon::normal_form(Monomial m) {
  maybe_evict();
  return compute(m);
}

int OrlikSolomon::find_minimal_broken(Monomial m) const {
  return find_contained(buckets_, nbc_.minimal_broken, m);
}

const std::vector<std::pair<int, long>>& OrlikSolomon::compute(Monomial m) {
  static const std::vector<std::pair<int, long>> zero;
  const int p = monomial_degree(m);
  if (p > arr_.dim) return zero;
  if (auto it = cache_.find(m); it != cache_.end()) return it->second;
  if (auto it = nbc_.index.find(m); it != nbc_.index.end())
    return cache_.emplace(m, std::vector<std::pair<int, long>>{{it->second, 1}}).first->second;

  int i = find_minimal_broken(m);
  if (i < 0) throw InternalError("monomial outside the basis contains no minimal broken circuit");
  const Monomial h = nbc_.minimal_broken[i];
  const int t = nbc_.completion[i];
  if (m >> t & 1) return cache_.emplace(m, std::vector<std::pair<int, long>>{}).first->second;

  // a_h = (-1)^q sum_k (-1)^k a_{h - j_k + t}, then move a_h back into place
  const Monomial rest = m & ~h;
  const auto hs = monomial_indices(h);
  const int q = static_cast<int>(hs.size());
  const int front = parity_between(h, rest);
  std::vector<std::pair<long, const std::vector<std::pair<int, long>>*>> parts;
  for (int k = 1; k <= q; ++k) {
    Monomial s = (h & ~(Monomial(1) << hs[k - 1])) | (Monomial(1) << t);
    int parity = front + q + k + parity_between(s, rest);
    parts.emplace_back(parity & 1 ? -1 : 1, &compute(s | rest));
  }
  auto& acc = scratch_[p];
  std::vector<int> touched;
  for (const auto& [sign, nf] : parts)
    for (const auto& [b, c] : *nf) {
      if (acc[b] == 0) touched.push_back(b);
      acc[b] = checked_add(acc[b], checked_mul(sign, c));
    }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::vector<std::pair<int, long>> out;
  for (int b : touched) {
    if (acc[b] != 0) out.emplace_back(b, acc[b]);
    acc[b] = 0;
  }
  return cache_.emplace(m, std::move(out)).first->second;
}

AElement OrlikSolomon::rewrite(const std::vector<int>& tuple, const Rational& c) {
  AElement out;
  std::vector<int> v = tuple;
  int parity = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0 || v[i] >= arr_.size()) throw InputError("hyperplane index out of range");
    for (size_t j = i + 1; j < v.size(); ++j) parity += v[j] < v[i];
  }
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) return out;
  const Monomial m = monomial_of(v);
  const int p = monomial_degree(m);
  const Rational sc = parity & 1 ? Rational(-c) : c;
  for (const auto& [b, coef] : normal_form(m)) {
    Rational r = sc * coef;
    if (sgn(r) != 0) out[nbc_.basis[p][b]] = r;
  }
  return out;
}

// ---------------------------------------------------------------- group action

GroupOrlikSolomon::GroupOrlikSolomon(GroupPtr g, bool reverse_order, size_t cache_cap)
    : g_(std::move(g)), os_([&] {
        const int N = g_->num_pos_roots();
        root_of_hyper_.resize(N);
        hyper_of_root_.resize(N);
        for (int h = 0; h < N; ++h) {
          root_of_hyper_[h] = reverse_order ? N - 1 - h : h;
          hyper_of_root_[root_of_hyper_[h]] = h;
        }
        std::vector<std::vector<Golden>> normals;
        for (int h = 0; h < N; ++h) normals.push_back(g_->roots()[root_of_hyper_[h]]);
        return OrlikSolomon(Arrangement::make(g_->crystallographic() ? ArrangementField::Rational
                                                                      : ArrangementField::Sqrt5,
                                              std::move(normals)),
                            cache_cap);
      }()) {}

std::pair<int, Monomial> GroupOrlikSolomon::permute(int w, Monomial m) const {
  const int N = g_->num_pos_roots();
  int img[64];
  int k = 0;
  for (Monomial x = m; x; x &= x - 1) {
    int r = g_->root_image(w, root_of_hyper_[__builtin_ctzll(x)]);
    if (r >= N) r -= N;
    img[k++] = hyper_of_root_[r];
  }
  int parity = 0;
  Monomial out = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) parity += img[j] < img[i];
    out |= Monomial(1) << img[i];
  }
  return {parity & 1 ? -1 : 1, out};
}

AElement GroupOrlikSolomon::act(int w, Monomial m) {
  auto [sign, target] = permute(w, m);
  const int p = monomial_degree(target);
  AElement out;
  for (const auto& [b, c] : os_.normal_form(target)) out[os_.nbc_data().basis[p][b]] = Rational(sign * c);
  return out;
}

Integer GroupOrlikSolomon::trace(int w, int p) {
  const auto& basis = os_.nbc_data().basis;
  if (p < 0 || p >= static_cast<int>(basis.size())) throw InputError("degree out of range");
  long tr = 0;
  for (int i = 0; i < static_cast<int>(basis[p].size()); ++i) {
    auto [sign, target] = permute(w, basis[p][i]);
    const auto& nf = os_.normal_form(target);
    auto it = std::lower_bound(nf.begin(), nf.end(), std::make_pair(i, std::numeric_limits<long>::min()));
    if (it != nf.end() && it->first == i) tr = checked_add(tr, sign * it->second);
  }
  return Integer(tr);
}

ClassFunction GroupOrlikSolomon::omega_character(int p) {
  std::vector<Cyclo> vals;
  for (int c = 0; c < g_->num_classes(); ++c) vals.emplace_back(Rational(trace(g_->conj_class(c).rep, p)));
  return ClassFunction(g_, vals);
}

ClassFunction omega_character(const GroupPtr& g, int p) { return GroupOrlikSolomon(g).omega_character(p); }

}  // namespace coxtop
