#include "coxtop/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "coxtop/descent.hpp"
#include "coxtop/errors.hpp"
#include "coxtop/orlik_solomon.hpp"
#include "coxtop/serialize.hpp"
#include "fixtures.hpp"

namespace coxtop {

using nlohmann::json;

// ---------------------------------------------------------------- parsing

namespace {

long parse_long(const std::string& s, const std::string& context) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw InputError("bad number in \"" + context + "\"");
  }
  if (pos != s.size()) throw InputError("bad number in \"" + context + "\"");
  return v;
}

Partition parse_parts(const std::string& digits, const std::string& tok) {
  Partition p;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad partition in " + tok);
    p.push_back(c - '0');
  }
  if (p.empty()) throw InputError("empty partition in " + tok);
  return p;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

int parse_token(const GroupPtr& g, const std::string& tok, const std::map<std::string, int>& named) {
  if (tok == "e" || tok == "1") return g->identity();
  if (tok == "w0") return g->longest();
  if (tok == "cox") return g->coxeter_element();
  if (tok == "hs" || tok == "hl") return reflection_of_root(g, g->highest_root(tok == "hl"));
  if (tok[0] == '@') {
    auto it = named.find(tok.substr(1));
    if (it == named.end()) throw InputError("unknown element name " + tok);
    return it->second;
  }
  if (tok.rfind("sp(", 0) == 0 && tok.back() == ')') {
    std::vector<int> sp;
    std::stringstream in(tok.substr(3, tok.size() - 4));
    std::string part;
    while (std::getline(in, part, ',')) sp.push_back(static_cast<int>(parse_long(part, tok)));
    return g->from_signed_permutation(sp);
  }
  if (tok[0] == 's' && all_digits(tok.substr(1))) {
    long i = parse_long(tok.substr(1), tok);
    if (i < 1 || i > g->rank()) throw InputError("generator out of range: " + tok);
    return g->generator(static_cast<int>(i - 1));
  }
  if (tok.size() > 2 && tok[0] == 'b' && (tok[1] == 'w' || tok[1] == 'c' || tok[1] == 'x')) {
    std::string body = tok.substr(2);
    if (tok[1] == 'w') return b_cuspidal_rep(g, parse_parts(body, tok));
    auto dot = body.find('.');
    if (dot == std::string::npos) throw InputError("missing block index in " + tok);
    Partition lambda = parse_parts(body.substr(0, dot), tok);
    int i = static_cast<int>(parse_long(body.substr(dot + 1), tok));
    return tok[1] == 'c' ? b_negative_cycle(g, lambda, i) : b_swap_blocks(g, lambda, i);
  }
  throw InputError("unknown element token " + tok);
}

}  // namespace

int parse_element(const GroupPtr& g, const std::string& expr, const std::map<std::string, int>& named) {
  std::istringstream in(expr);
  std::string tok;
  int w = g->identity();
  bool any = false;
  while (in >> tok) {
    any = true;
    long k = 1;
    auto caret = tok.rfind('^');
    if (caret != std::string::npos && caret > 0) {
      k = parse_long(tok.substr(caret + 1), tok);
      tok = tok.substr(0, caret);
    }
    w = g->mul(w, g->power(parse_token(g, tok, named), k));
  }
  if (!any) throw InputError("empty element expression");
  return w;
}

Cyclo parse_value(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty value");
  if (s == ".") return Cyclo(0);
  const Cyclo mu = Cyclo::root_of_unity(5, 1) + Cyclo::root_of_unity(5, 4);
  const Cyclo nu = Cyclo::root_of_unity(5, 2) + Cyclo::root_of_unity(5, 3);
  Cyclo total(0);
  size_t i = 0;
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw InputError("bad value \"" + text + "\"");
    size_t k = 0;
    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
    long coef = k ? parse_long(term.substr(0, k), text) : 1;
    std::string atom = term.substr(k);
    Cyclo a(1);
    if (atom == "mu") {
      a = mu;
    } else if (atom == "nu") {
      a = nu;
    } else if (!atom.empty() && atom[0] == 'z') {
      auto caret = atom.find('^');
      long n = parse_long(atom.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), text);
      long e = caret == std::string::npos ? 1 : parse_long(atom.substr(caret + 1), text);
      if (n < 1) throw InputError("bad root of unity in \"" + text + "\"");
      a = Cyclo::root_of_unity(static_cast<int>(n), e);
    } else if (!atom.empty() || k == 0) {
      throw InputError("bad value \"" + text + "\"");
    }
    total += Cyclo(sign * coef) * a;
    i = j;
  }
  return total.reduced();
}

Cyclo parse_table_value(const json& j) {
  if (j.is_number_integer()) return Cyclo(j.get<long>());
  if (j.is_string()) return parse_value(j.get<std::string>());
  throw InputError("table value must be an integer or a string");
}

// ---------------------------------------------------------------- fixtures

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::map<std::string, uint64_t> checksum_manifest() {
  std::map<std::string, uint64_t> out;
  std::istringstream in(detail::embedded_checksums());
  std::string name, hex;
  while (in >> name >> hex) out[name] = std::stoull(hex, nullptr, 16);
  return out;
}

}  // namespace

std::vector<std::string> fixture_groups() {
  std::vector<std::string> out;
  for (const auto& [file, text] : detail::embedded_tables()) out.push_back(file.substr(0, file.size() - 5));
  return out;
}

std::vector<std::string> fixture_checksum_failures() {
  auto sums = checksum_manifest();
  std::vector<std::string> bad;
  for (const auto& [file, text] : detail::embedded_tables()) {
    auto it = sums.find(file);
    if (it == sums.end() || it->second != fnv1a64(text)) bad.push_back(file);
  }
  return bad;
}

const json& table_fixture(const std::string& group) {
  static std::mutex mu;
  static std::map<std::string, json> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(group); it != cache.end()) return it->second;
  for (const auto& [file, text] : detail::embedded_tables()) {
    if (file != group + ".json") continue;
    auto sums = checksum_manifest();
    auto it = sums.find(file);
    if (it == sums.end() || it->second != fnv1a64(text))
      throw InternalError("table fixture " + file + " does not match its checksum");
    json j = json::parse(text);
    if (j.value("version", 0) != 1) throw InternalError("unsupported fixture version in " + file);
    return cache[group] = std::move(j);
  }
  throw InputError("no table fixture for " + group);
}

// ---------------------------------------------------------------- tables

bool TableReport::ok() const {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.ok()) return false;
  for (const auto& c : checks)
    if (!c.ok) return false;
  std::set<int> used;
  for (int c : column_classes)
    if (c < 0 || !used.insert(c).second) return false;
  return true;
}

const RowReport* TableReport::row(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

const CheckLine* TableReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json TableReport::to_json() const {
  json j;
  j["group"] = group;
  j["ok"] = ok();
  j["columns"] = json::array();
  for (size_t k = 0; k < column_labels.size(); ++k)
    j["columns"].push_back({{"label", column_labels[k]}, {"class", column_classes[k]}});
  j["ambiguous_columns"] = ambiguous_columns;
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json jr{{"name", r.name}, {"ok", r.ok()}};
    for (const auto& v : r.computed) jr["computed"].push_back(v.str());
    jr["mismatched_columns"] = json::array();
    for (int k : r.mismatched_columns) jr["mismatched_columns"].push_back(column_labels[k]);
    j["rows"].push_back(jr);
  }
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return j;
}

namespace {

std::vector<Cyclo> parse_images(const json& a) {
  std::vector<Cyclo> out;
  for (const auto& x : a) out.push_back(parse_table_value(x));
  return out;
}

// Expected charpoly of a Carter class, as integer coefficients, constant first.
std::optional<std::vector<long>> carter_charpoly(const std::string& label, int rank) {
  using Poly = std::vector<long>;
  auto mul = [](const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  auto xk_plus_1 = [](int k) {
    Poly p(k + 1, 0);
    p[0] = p[k] = 1;
    return p;
  };
  Poly total{1};
  int used = 0;
  static const std::regex part(R"((\d*)(~?)([ABCDF])(\d+)(\(a1\))?)");
  auto begin = std::sregex_iterator(label.begin(), label.end(), part);
  size_t covered = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (static_cast<size_t>(m.position()) != covered) return std::nullopt;
    covered += m.length();
    int mult = m[1].length() ? std::stoi(m[1]) : 1;
    char fam = m[3].str()[0];
    int k = std::stoi(m[4]);
    bool a1 = m[5].matched;
    Poly p;
    switch (fam) {
      case 'A':
        p.assign(k + 1, 1);
        break;
      case 'B':
      case 'C':
        p = xk_plus_1(k);
        break;
      case 'D':
        p = a1 ? mul(xk_plus_1(k - 2), xk_plus_1(2)) : mul(xk_plus_1(k - 1), xk_plus_1(1));
        break;
      case 'F':
        p = a1 ? mul(Poly{1, -1, 1}, Poly{1, -1, 1}) : Poly{1, 0, -1, 0, 1};
        break;
    }
    if ((fam == 'A' || fam == 'B' || fam == 'C') && a1) return std::nullopt;
    for (int r = 0; r < mult; ++r) total = mul(total, p), used += k;
  }
  if (covered != label.size() || used > rank) return std::nullopt;
  for (int r = used; r < rank; ++r) total = mul(total, Poly{-1, 1});
  return total;
}

struct Context {
  GroupPtr g;
  const json& fx;
  TableReport& rep;
  std::map<std::string, int> named;
  std::map<std::string, ClassFunction> computed;
  std::map<int, SubgroupPtr> centralizers;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    rep.checks.push_back({name, ok, detail});
  }

  SubgroupPtr centralizer_of(int w) {
    auto& c = centralizers[w];
    if (!c) c = std::make_shared<const Subgroup>(centralizer(g, w));
    return c;
  }

  int column_index(const std::string& label) const {
    for (size_t k = 0; k < rep.column_labels.size(); ++k)
      if (rep.column_labels[k] == label) return static_cast<int>(k);
    throw InputError("fixture names unknown column " + label);
  }
};

bool regular_ok(const GroupPtr& g, int w, const json& reg) {
  int n = reg.at(0), k = reg.at(1);
  if (g->order(w) != n) return false;
  auto ks = g->regular_eigenvalue_powers(g->class_of(w));
  return std::find(ks.begin(), ks.end(), k) != ks.end();
}

// The fixture character at representative w; records its checks and returns
// the induced row, or nothing if the character could not be built.
std::optional<ClassFunction> fixture_character(Context& cx, const json& ch, int w) {
  const GroupPtr& g = cx.g;
  const std::string name = ch.at("name");
  const std::string tag = "phi:" + name;
  if (ch.value("sign", false)) {
    cx.check(tag + " centralizer is W", cx.centralizer_of(w)->order() == g->size());
    return sign_character(g);
  }
  auto cent = cx.centralizer_of(w);
  SubgroupPtr h = cent;
  std::optional<LinearCharacter> chi;
  if (ch.contains("centralizer")) {
    std::vector<int> gens;
    for (const auto& e : ch.at("centralizer")) gens.push_back(parse_element(g, e.get<std::string>(), cx.named));
    h = std::make_shared<const Subgroup>(Subgroup::generated(g, gens));
    bool inside = std::all_of(gens.begin(), gens.end(), [&](int x) { return cent->contains(x); });
    cx.check(tag + " generators span C_W(w)", inside && h->order() == cent->order(),
             std::to_string(h->order()) + " vs " + std::to_string(cent->order()));
    try {
      chi = LinearCharacter::from_images(h, parse_images(ch.at("images")));
      cx.check(tag + " images define a linear character", true);
    } catch (const InputError& e) {
      cx.check(tag + " images define a linear character", false, e.what());
      return std::nullopt;
    }
    auto all = linear_characters(h);
    cx.check(tag + " is among the enumerated linear characters",
             std::find(all.begin(), all.end(), *chi) != all.end());
  }
  if (ch.contains("det")) {
    const auto& d = ch.at("det");
    Cyclo zeta = Cyclo::root_of_unity(d.at("zeta").at(0), d.at("zeta").at(1));
    LinearCharacter det = det_on_eigenspace(h, w, zeta, d.at("power").get<long>());
    if (chi) {
      cx.check(tag + " equals a power of det on an eigenspace", *chi == det);
    } else {
      chi = det;
    }
  }
  if (!chi) throw InputError("fixture character " + name + " has neither images nor det");
  if (ch.contains("regular"))
    cx.check(tag + " eigenspace is regular", regular_ok(g, w, ch.at("regular")));
  if (ch.contains("not_det_power")) {
    const auto& z = ch.at("not_det_power").at("zeta");
    LinearCharacter det = det_on_eigenspace(h, w, Cyclo::root_of_unity(z.at(0), z.at(1)), 1);
    bool hit = false;
    for (long p = 0; p < det.order() && !hit; ++p) hit = det.pow(p) == *chi;
    cx.check(tag + " is no power of det on an eigenspace", !hit);
  }
  for (const auto& va : ch.value("value_at", json::array())) {
    int x = parse_element(g, va.at(0).get<std::string>(), cx.named);
    Cyclo want = parse_table_value(va.at(1));
    bool ok = h->contains(x) && chi->at(x) == want;
    cx.check(tag + " value at " + va.at(0).get<std::string>(), ok,
             h->contains(x) ? chi->at(x).str() + " vs " + want.str() : "element outside centralizer");
  }
  return chi->induced();
}

// Reps named in the fixture, resolved in dependency order.
void resolve_reps(Context& cx) {
  std::vector<const json*> pending;
  for (const auto& ch : cx.fx.at("characters"))
    if (ch.contains("rep")) pending.push_back(&ch);
  while (!pending.empty()) {
    std::vector<const json*> later;
    std::string last_error;
    for (const json* ch : pending) {
      try {
        cx.named[ch->at("name")] = parse_element(cx.g, ch->at("rep").get<std::string>(), cx.named);
      } catch (const InputError& e) {
        later.push_back(ch);
        last_error = e.what();
      }
    }
    if (later.size() == pending.size()) throw InputError("unresolvable fixture reps: " + last_error);
    pending = std::move(later);
  }
}

void match_signed_labels(Context& cx) {
  const GroupPtr& g = cx.g;
  std::map<std::string, std::vector<int>> by_label;
  for (int c = 0; c < g->num_classes(); ++c) by_label[g->signed_cycle_type(g->conj_class(c).rep)].push_back(c);
  for (const auto& label : cx.rep.column_labels) {
    std::string base = label;
    int which = 0;
    if (!label.empty() && (label.back() == '+' || label.back() == '-')) {
      which = label.back() == '-' ? 1 : 0;
      base.pop_back();
    }
    auto it = by_label.find(base);
    int cls = -1;
    if (it != by_label.end() && which < static_cast<int>(it->second.size())) cls = it->second[which];
    if (it != by_label.end() && base == label && it->second.size() != 1) cls = -1;
    cx.rep.column_classes.push_back(cls);
  }
}

void match_representatives(Context& cx) {
  const GroupPtr& g = cx.g;
  for (const auto& col : cx.fx.at("columns")) {
    int w = parse_element(g, col.at("rep").get<std::string>(), cx.named);
    cx.rep.column_classes.push_back(g->class_of(w));
    if (col.contains("carter")) {
      std::string label = col.at("carter");
      auto want = carter_charpoly(label, g->rank());
      const auto& got = g->conj_class(g->class_of(w)).fingerprint.charpoly;
      bool ok = want && want->size() == got.size();
      for (size_t i = 0; ok && i < got.size(); ++i) ok = got[i] == Golden((*want)[i]);
      cx.check("column " + label + " charpoly matches its Carter type", ok);
    }
  }
}

// Per column, the set of classes still possible.
using Candidates = std::vector<std::vector<char>>;

bool refine(Candidates& cand, const ClassFunction& row, const std::vector<Cyclo>& want) {
  for (size_t k = 0; k < cand.size(); ++k) {
    bool any = false;
    for (size_t c = 0; c < cand[k].size(); ++c) {
      if (cand[k][c] && row[static_cast<int>(c)] != want[k]) cand[k][c] = 0;
      any |= cand[k][c];
    }
    if (!any) return false;
  }
  return true;
}

struct PowerLink {
  int column, source;
  long power;
};

bool propagate(const GroupPtr& g, Candidates& cand, const std::vector<PowerLink>& links) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < cand.size(); ++k) {
      int count = 0, only = -1;
      for (size_t c = 0; c < cand[k].size(); ++c)
        if (cand[k][c]) ++count, only = static_cast<int>(c);
      if (count == 0) return false;
      if (count != 1) continue;
      for (size_t k2 = 0; k2 < cand.size(); ++k2)
        if (k2 != k && cand[k2][only]) cand[k2][only] = 0, changed = true;
    }
    for (const auto& l : links) {
      int count = 0, only = -1;
      for (size_t c = 0; c < cand[l.source].size(); ++c)
        if (cand[l.source][c]) ++count, only = static_cast<int>(c);
      if (count != 1) continue;
      int target = g->class_of(g->power(g->conj_class(only).rep, l.power));
      for (size_t c = 0; c < cand[l.column].size(); ++c)
        if (static_cast<int>(c) != target && cand[l.column][c]) cand[l.column][c] = 0, changed = true;
    }
  }
  return true;
}

bool augment(const Candidates& cand, int k, std::vector<int>& owner, std::vector<char>& seen) {
  for (size_t c = 0; c < cand[k].size(); ++c) {
    if (!cand[k][c] || seen[c]) continue;
    seen[c] = 1;
    if (owner[c] < 0 || augment(cand, owner[c], owner, seen)) {
      owner[c] = k;
      return true;
    }
  }
  return false;
}

std::optional<std::vector<int>> perfect_matching(const Candidates& cand, int classes) {
  std::vector<int> owner(classes, -1);
  for (size_t k = 0; k < cand.size(); ++k) {
    std::vector<char> seen(classes, 0);
    if (!augment(cand, static_cast<int>(k), owner, seen)) return std::nullopt;
  }
  std::vector<int> col(cand.size(), -1);
  for (int c = 0; c < classes; ++c)
    if (owner[c] >= 0) col[owner[c]] = c;
  return col;
}

struct SearchEntry {
  const json* ch;
  int column;
  std::vector<Cyclo> want;  // the fixture row
};

struct RowOption {
  ClassFunction row;
  std::vector<Cyclo> images;
};

// Columns keyed by invariants only: backtrack over class choices for the
// cuspidal columns and over linear characters for the search rows.
void match_invariants(Context& cx, const std::map<std::string, std::vector<Cyclo>>& expected) {
  const GroupPtr& g = cx.g;
  const auto& cols = cx.fx.at("columns");
  const int K = static_cast<int>(cols.size()), n = g->num_classes();
  const std::string bijection = "column bijection consistent with all rows and invariants";
  auto fail = [&](const std::string& detail) {
    cx.check(bijection, false, detail);
    cx.rep.column_classes.assign(K, -1);
  };
  if (K != n) return fail(std::to_string(K) + " columns for " + std::to_string(n) + " classes");
  Candidates cand(K, std::vector<char>(n, 1));
  std::vector<PowerLink> links;
  for (int k = 0; k < K; ++k) {
    const auto& col = cols[k];
    for (int c = 0; c < n; ++c) {
      const auto& fp = g->conj_class(c).fingerprint;
      if (col.contains("order") && fp.order != col.at("order").get<int>()) cand[k][c] = 0;
      if (col.contains("centralizer") && fp.centralizer_order != col.at("centralizer").get<int>()) cand[k][c] = 0;
    }
    if (col.contains("power_of"))
      links.push_back({k, cx.column_index(col.at("power_of").at(0)), col.at("power_of").at(1).get<long>()});
  }
  for (const auto& [name, row] : cx.computed)
    if (auto it = expected.find(name); it != expected.end() && !refine(cand, row, it->second))
      return fail("no column fits row " + name);

  std::vector<SearchEntry> entries;
  for (const auto& ch : cx.fx.at("characters")) {
    if (ch.value("sign", false)) continue;
    auto it = expected.find("phi:" + ch.at("name").get<std::string>());
    if (it == expected.end()) throw InputError("fixture character without a row");
    entries.push_back({&ch, cx.column_index(ch.at("column")), it->second});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const SearchEntry& a, const SearchEntry& b) {
    return !a.ch->value("search", false) && b.ch->value("search", false);
  });

  std::map<std::pair<int, int>, std::vector<RowOption>> memo;
  auto options = [&](int e, int cls) -> const std::vector<RowOption>& {
    auto key = std::make_pair(e, cls);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto& out = memo[key];
    const json& ch = *entries[e].ch;
    int w = g->conj_class(cls).rep;
    auto cent = cx.centralizer_of(w);
    if (ch.value("search", false)) {
      for (const auto& lc : linear_characters(cent)) {
        ClassFunction row = lc.induced();
        if (std::none_of(out.begin(), out.end(), [&](const RowOption& o) { return o.row == row; }))
          out.push_back({row, lc.generator_images()});
      }
    } else {
      if (ch.contains("regular") && !regular_ok(g, w, ch.at("regular"))) return out;
      const auto& d = ch.at("det");
      Cyclo zeta = Cyclo::root_of_unity(d.at("zeta").at(0), d.at("zeta").at(1));
      out.push_back({det_on_eigenspace(cent, w, zeta, d.at("power").get<long>()).induced(), {}});
    }
    return out;
  };

  std::vector<std::pair<int, int>> chosen(entries.size());  // (class, option)
  std::optional<std::vector<int>> result;
  Candidates final_cand;
  std::function<bool(size_t, const Candidates&)> dfs = [&](size_t e, const Candidates& cur) -> bool {
    if (e == entries.size()) {
      result = perfect_matching(cur, n);
      if (result) final_cand = cur;
      return result.has_value();
    }
    const int k = entries[e].column;
    for (int c = 0; c < n; ++c) {
      if (!cur[k][c]) continue;
      const auto& opts = options(static_cast<int>(e), c);
      for (size_t o = 0; o < opts.size(); ++o) {
        Candidates next = cur;
        std::fill(next[k].begin(), next[k].end(), 0);
        next[k][c] = 1;
        if (!refine(next, opts[o].row, entries[e].want) || !propagate(g, next, links)) continue;
        chosen[e] = {c, static_cast<int>(o)};
        if (dfs(e + 1, next)) return true;
      }
    }
    return false;
  };
  if (!propagate(g, cand, links) || !dfs(0, cand)) return fail("search exhausted");
  cx.check(bijection, true);
  cx.rep.column_classes = *result;
  for (int k = 0; k < K; ++k)
    cx.rep.ambiguous_columns += std::count(final_cand[k].begin(), final_cand[k].end(), 1) > 1;
  for (size_t e = 0; e < entries.size(); ++e) {
    const json& ch = *entries[e].ch;
    const std::string name = ch.at("name");
    const auto& opt = memo.at({static_cast<int>(e), chosen[e].first})[chosen[e].second];
    cx.named[name] = g->conj_class(chosen[e].first).rep;
    cx.computed["phi:" + name] = opt.row;
    if (ch.value("search", false)) cx.rep.chosen_images[name] = opt.images;
  }
  for (const auto& ch : cx.fx.at("characters"))
    if (ch.value("sign", false)) cx.named[ch.at("name")] = g->conj_class(cx.rep.column_classes[cx.column_index(ch.at("column"))]).rep;
}

void check_columns(Context& cx) {
  const GroupPtr& g = cx.g;
  const auto& cols = cx.fx.at("columns");
  for (size_t k = 0; k < cols.size(); ++k) {
    const auto& col = cols[k];
    if (!col.is_object()) continue;
    int cls = cx.rep.column_classes[k];
    if (cls < 0) continue;
    const auto& fp = g->conj_class(cls).fingerprint;
    const std::string label = col.at("label");
    if (col.contains("order") || col.contains("centralizer")) {
      bool ok = (!col.contains("order") || fp.order == col.at("order").get<int>()) &&
                (!col.contains("centralizer") || fp.centralizer_order == col.at("centralizer").get<int>());
      cx.check("column " + label + " order and centralizer", ok,
               std::to_string(fp.order) + "/" + std::to_string(fp.centralizer_order));
    }
    if (col.contains("power_of")) {
      int src = cx.rep.column_classes[cx.column_index(col.at("power_of").at(0))];
      bool ok = src >= 0 && g->class_of(g->power(g->conj_class(src).rep, col.at("power_of").at(1).get<long>())) == cls;
      cx.check("column " + label + " is a power of " + col.at("power_of").at(0).get<std::string>(), ok);
    }
  }
  bool cusp_ok = true;
  for (const auto& ch : cx.fx.at("characters")) {
    int k = cx.column_index(ch.at("column"));
    int cls = cx.rep.column_classes[k];
    auto it = cx.named.find(ch.at("name"));
    if (cls < 0 || it == cx.named.end() || g->class_of(it->second) != cls) cusp_ok = false;
    if (cls >= 0 && !g->is_cuspidal(g->conj_class(cls).rep)) cusp_ok = false;
  }
  cx.check("fixture reps are cuspidal and lie in their columns", cusp_ok);
  auto cusp = g->cuspidal_classes();
  cx.check("cuspidal class count equals fixture character count",
           cusp.size() == cx.fx.at("characters").size(),
           std::to_string(cusp.size()) + " vs " + std::to_string(cx.fx.at("characters").size()));
}

}  // namespace

TableReport reproduce_table(const GroupPtr& g) { return reproduce_table(g, table_fixture(g->name())); }

namespace {

TableReport reproduce(const GroupPtr& g, const json& fx) {
  TableReport rep;
  rep.group = g->name();
  Context cx{g, fx, rep, {}, {}, {}};
  for (const auto& c : fx.at("columns")) rep.column_labels.push_back(c.is_string() ? c.get<std::string>() : c.at("label").get<std::string>());

  std::map<std::string, std::vector<Cyclo>> expected;
  std::vector<std::string> row_names;
  for (const auto& r : fx.at("rows")) {
    std::vector<Cyclo> v;
    for (const auto& x : r.at("values")) v.push_back(parse_table_value(x));
    if (v.size() != rep.column_labels.size()) throw InternalError("fixture row length mismatch in " + g->name());
    row_names.push_back(r.at("name"));
    expected[r.at("name")] = std::move(v);
  }

  ClassFunction rho = rho_top(g);
  ClassFunction omega = omega_character(g, g->rank());
  cx.computed["eps"] = sign_character(g);
  cx.computed["rho"] = rho;
  cx.computed["omega"] = omega;
  for (const auto& ch : fx.at("characters"))
    if (ch.value("sign", false)) cx.computed["phi:" + ch.at("name").get<std::string>()] = sign_character(g);

  const std::string key = fx.at("column_key");
  if (key == "invariants") {
    match_invariants(cx, expected);
    // reruns the per-character checks at the matched representatives
    for (const auto& ch : fx.at("characters"))
      if (!ch.value("search", false) && rep.column_classes[cx.column_index(ch.at("column"))] >= 0)
        fixture_character(cx, ch, cx.named.at(ch.at("name")));
  } else {
    resolve_reps(cx);
    if (key == "signed_label")
      match_signed_labels(cx);
    else if (key == "representative")
      match_representatives(cx);
    else
      throw InternalError("unknown column key " + key);
    for (const auto& ch : fx.at("characters")) {
      const std::string name = ch.at("name");
      if (auto row = fixture_character(cx, ch, cx.named.at(name))) cx.computed["phi:" + name] = *row;
    }
  }
  for (const auto& [name, w] : cx.named) rep.cuspidal_reps[name] = w;
  check_columns(cx);
  cx.check("rho = sign * omega", rho == cx.computed["eps"] * omega);

  for (const auto& name : row_names) {
    RowReport r;
    r.name = name;
    r.expected = expected[name];
    auto it = cx.computed.find(name);
    if (it != cx.computed.end()) {
      for (size_t k = 0; k < r.expected.size(); ++k) {
        int cls = rep.column_classes[k];
        r.computed.push_back(cls >= 0 ? it->second[cls] : Cyclo(0));
        if (cls < 0 || r.computed.back() != r.expected[k]) r.mismatched_columns.push_back(static_cast<int>(k));
      }
    } else {
      for (size_t k = 0; k < r.expected.size(); ++k) r.mismatched_columns.push_back(static_cast<int>(k));
    }
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace

TableReport reproduce_table(const GroupPtr& g, const json& fx) {
  try {
    return reproduce(g, fx);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed table fixture: ") + e.what());
  }
}

// ---------------------------------------------------------------- conjecture B

bool check_rho_equals_eps_omega(const GroupPtr& g) {
  return rho_top(g) == sign_character(g) * omega_character(g, g->rank());
}

std::vector<int> Certificate::list_sizes() const {
  std::vector<int> out;
  for (const auto& c : classes) out.push_back(static_cast<int>(c.candidates.size()));
  return out;
}

json Certificate::to_json() const {
  json j;
  j["version"] = 1;
  j["group"] = group->name();
  j["degrees"] = degrees;
  j["goal"] = goal;
  j["classes"] = json::array();
  for (const auto& c : classes) {
    json jc;
    jc["class"] = c.cls;
    jc["rep"] = group->word_string(c.rep);
    jc["fingerprint"] = c.fingerprint.str();
    jc["centralizer_order"] = c.centralizer_order;
    jc["linear_characters"] = c.linear_characters;
    jc["centralizer"] = json::array();
    for (int x : c.centralizer_gens) jc["centralizer"].push_back(group->word_string(x));
    jc["candidates"] = json::array();
    for (const auto& cand : c.candidates) {
      json images = json::array();
      for (const auto& z : cand.images) images.push_back(cyclo_to_json(z));
      jc["candidates"].push_back({{"images", images}, {"multiplicities", cand.multiplicities}, {"sources", cand.sources}});
    }
    j["classes"].push_back(jc);
  }
  j["solutions"] = solutions;
  j["solution_count"] = solution_count;
  j["solutions_truncated"] = solutions_truncated;
  j["stats"] = {{"vertices", stats.vertices}, {"order", stats.order}};
  j["verdicts"] = {{"packing_solved", packing_solved}, {"rho_equals_eps_omega", rho_equals_eps_omega}};
  return j;
}

namespace {

template <class F>
void run_parallel(size_t count, int jobs, F&& work) {
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (size_t i; (i = next++) < count;) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const size_t n = std::min<size_t>(std::max(jobs, 1), count);
  std::vector<std::thread> pool;
  for (size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

long to_long(const Cyclo& c) {
  if (!c.is_rational()) throw InternalError("non-rational degree");
  Rational r = c.to_rational();
  if (r.get_den() != 1) throw InternalError("non-integral degree");
  return r.get_num().get_si();
}

}  // namespace

Certificate verify_conjecture_b(const GroupPtr& g, const VerifyOptions& opt) {
  Certificate cert;
  cert.group = g;
  const CharacterTable& table = character_table(g);
  for (const auto& chi : table.irreducibles) cert.degrees.push_back(static_cast<int>(to_long(chi.degree())));
  const ClassFunction rho = rho_top(g);
  cert.goal = decompose(table, rho);

  const auto cusp = g->cuspidal_classes();
  cert.classes.resize(cusp.size());
  std::vector<CandidateList> lists(cusp.size());
  run_parallel(cusp.size(), opt.jobs, [&](size_t i) {
    CertificateClass& cc = cert.classes[i];
    cc.cls = cusp[i];
    cc.rep = g->conj_class(cc.cls).rep;
    cc.fingerprint = g->conj_class(cc.cls).fingerprint;
    auto cent = std::make_shared<const Subgroup>(centralizer(g, cc.rep));
    cc.centralizer_gens = cent->generators();
    cc.centralizer_order = cent->order();
    auto lcs = linear_characters(cent);
    cc.linear_characters = static_cast<int>(lcs.size());
    for (size_t s = 0; s < lcs.size(); ++s) {
      auto m = decompose(table, lcs[s].induced());
      int idx = lists[i].add(m, static_cast<int>(s));
      if (idx == static_cast<int>(cc.candidates.size()))
        cc.candidates.push_back({lcs[s].generator_images(), m, 1});
      else
        ++cc.candidates[idx].sources;
    }
  });

  PackingProblem p{cert.goal, std::move(lists)};
  PackingResult r = exact_packings(p, opt.strategy);
  cert.stats = r.stats;
  cert.solution_count = static_cast<long>(r.solutions.size());
  cert.packing_solved = !r.solutions.empty();
  if (r.solutions.size() > opt.solution_cap) {
    cert.solutions.assign(r.solutions.begin(), r.solutions.begin() + 1);
    cert.solutions_truncated = true;
  } else {
    cert.solutions = std::move(r.solutions);
  }
  cert.rho_equals_eps_omega = rho == sign_character(g) * omega_character(g, g->rank());
  return cert;
}

std::vector<std::string> check_certificate(const json& cert) {
  std::vector<std::string> problems;
  try {
    auto g = CoxeterGroup::build(CoxeterType::parse(cert.at("group")));
    const CharacterTable& table = character_table(g);
    std::vector<int> degrees;
    for (const auto& chi : table.irreducibles) degrees.push_back(static_cast<int>(to_long(chi.degree())));
    if (cert.at("degrees").get<std::vector<int>>() != degrees) problems.push_back("irreducible degrees differ");
    const ClassFunction rho = rho_top(g);
    const auto goal = decompose(table, rho);
    if (cert.at("goal").get<std::vector<long>>() != goal) problems.push_back("goal is not the decomposition of rho");

    auto cusp = g->cuspidal_classes();
    const auto& classes = cert.at("classes");
    if (classes.size() != cusp.size()) problems.push_back("wrong number of cuspidal classes");
    std::vector<std::vector<ClassFunction>> induced(classes.size());
    std::vector<std::vector<std::vector<long>>> mults(classes.size());
    for (size_t i = 0; i < classes.size(); ++i) {
      const auto& jc = classes[i];
      const std::string where = "class " + std::to_string(i) + ": ";
      int cls = jc.at("class");
      int w = parse_element(g, jc.at("rep"));
      if (i < cusp.size() && cls != cusp[i]) problems.push_back(where + "not the expected cuspidal class");
      if (g->class_of(w) != cls) problems.push_back(where + "rep lies in another class");
      if (g->conj_class(g->class_of(w)).fingerprint.str() != jc.at("fingerprint").get<std::string>())
        problems.push_back(where + "fingerprint differs");
      std::vector<int> gens;
      for (const auto& e : jc.at("centralizer")) gens.push_back(parse_element(g, e));
      auto h = std::make_shared<const Subgroup>(Subgroup::generated(g, gens));
      Subgroup cent = centralizer(g, w);
      if (h->order() != cent.order() ||
          !std::all_of(gens.begin(), gens.end(), [&](int x) { return cent.contains(x); }))
        problems.push_back(where + "generators do not give C_W(w)");
      std::set<std::vector<long>> listed;
      for (const auto& cand : jc.at("candidates")) {
        std::vector<Cyclo> images;
        for (const auto& z : cand.at("images")) images.push_back(cyclo_from_json(z));
        auto chi = LinearCharacter::from_images(h, images).induced();
        auto m = cand.at("multiplicities").get<std::vector<long>>();
        if (decompose(table, chi) != m) problems.push_back(where + "multiplicities do not match the induced character");
        if (!listed.insert(m).second) problems.push_back(where + "duplicate candidate");
        induced[i].push_back(chi);
        mults[i].push_back(m);
      }
      std::set<std::vector<long>> all;
      for (const auto& lc : linear_characters(h)) all.insert(decompose(table, lc.induced()));
      if (all != listed) problems.push_back(where + "candidate list is incomplete");
    }

    long count = 0;
    for (const auto& sol : cert.at("solutions")) {
      auto s = sol.get<std::vector<int>>();
      ++count;
      if (s.size() != classes.size()) {
        problems.push_back("solution of wrong length");
        continue;
      }
      ClassFunction sum = ClassFunction::constant(g, Cyclo(0));
      bool in_range = true;
      for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= static_cast<int>(induced[i].size())) {
          in_range = false;
          break;
        }
        sum += induced[i][s[i]];
      }
      if (!in_range || sum != rho) problems.push_back("a solution does not sum to rho");
    }
    long claimed = cert.at("solution_count");
    bool truncated = cert.at("solutions_truncated");
    if (truncated ? (count < 1 || claimed < count) : claimed != count) problems.push_back("solution count inconsistent");
    if (cert.at("verdicts").at("packing_solved").get<bool>() != (count > 0 && claimed > 0))
      problems.push_back("packing verdict does not match the solutions");
    if (cert.at("verdicts").at("rho_equals_eps_omega").get<bool>() != (rho == sign_character(g) * omega_character(g, g->rank())))
      problems.push_back("rho = sign * omega verdict is wrong");
  } catch (const json::exception& e) {
    problems.push_back(std::string("malformed certificate: ") + e.what());
  } catch (const InputError& e) {
    problems.push_back(std::string("invalid certificate: ") + e.what());
  }
  return problems;
}

// ---------------------------------------------------------------- bulky

bool BulkyReport::ok() const {
  return has_expectation && blanket_ok && expected_bulky == computed_bulky &&
         expected_nonbulky_maximal == computed_nonbulky_maximal;
}

json BulkyReport::to_json() const {
  json j;
  j["group"] = group;
  j["ok"] = ok();
  j["entries"] = json::array();
  for (const auto& e : entries) j["entries"].push_back({{"label", e.label}, {"rank", e.rank}, {"bulky", e.bulky}, {"mask", e.mask}});
  j["expected_bulky"] = expected_bulky;
  j["computed_bulky"] = computed_bulky;
  j["expected_nonbulky_maximal"] = expected_nonbulky_maximal;
  j["computed_nonbulky_maximal"] = computed_nonbulky_maximal;
  return j;
}

namespace {

// Bulky types other than W, 1 and A1, or nothing when no rule is known.
std::optional<std::vector<std::string>> expected_bulky_types(const CoxeterType& t) {
  const int n = t.rank;
  std::vector<std::string> out;
  switch (t.family) {
    case Family::A: {
      // distinct ranks n_1 < ... < n_k fitting into n nodes
      for (unsigned s = 1; s < (1u << n); ++s) {
        int nodes = -1, rank = 0;
        std::string label;
        for (int r = 1; r <= n; ++r)
          if (s >> (r - 1) & 1) nodes += r + 1, rank += r, label += "A" + std::to_string(r);
        if (nodes <= n && rank < n && label != "A1") out.push_back(label);
      }
      break;
    }
    case Family::B:
      for (int j = 1; j <= n - 1; ++j) out.push_back(j == 1 ? "~A1" : "B" + std::to_string(j));
      for (int j = 1; j <= n - 2; ++j) out.push_back(j == 1 ? "A1~A1" : "A1B" + std::to_string(j));
      break;
    case Family::D:
      if (n != 4) return std::nullopt;
      out = {"3A1"};
      break;
    case Family::F:
      out = {"~A1", "A1~A1", "B2", "B3", "C3"};
      break;
    case Family::H:
      out = {n == 3 ? "2A1" : "H3"};
      break;
    case Family::I:
      if (t.m % 2 == 0) out = {"~A1"};
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> expected_nonbulky_maximal(const CoxeterType& t) {
  std::vector<std::string> out;
  if (t.rank != 4) return out;
  switch (t.family) {
    case Family::B: out = {"A2~A1", "A3"}; break;
    case Family::D: out = {"A3"}; break;
    case Family::F: out = {"A1~A2", "A2~A1"}; break;
    case Family::H: out = {"A1A2", "A1I2(5)", "A3"}; break;
    default: break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BulkyReport bulky_report(const GroupPtr& g) {
  BulkyReport rep;
  rep.group = g->name();
  const auto& sc = g->subset_classes();
  const SubsetMask full = (1u << g->rank()) - 1;
  std::set<int> seen;
  std::set<std::string> bulky, nonbulky_max;
  rep.blanket_ok = true;
  for (SubsetMask m = 0; m < sc.size(); ++m) {
    if (!seen.insert(sc[m]).second) continue;
    BulkyEntry e;
    e.mask = m;
    e.label = g->parabolic_label(m);
    e.rank = __builtin_popcount(m);
    e.bulky = is_bulky(g, m).bulky;
    rep.entries.push_back(e);
    if (m == full) continue;
    if (m == 0 || e.label == "A1") {
      rep.blanket_ok &= e.bulky;
      continue;
    }
    if (e.bulky) bulky.insert(e.label);
    if (!e.bulky && g->rank() == 4 && e.rank == 3) nonbulky_max.insert(e.label);
  }
  rep.computed_bulky.assign(bulky.begin(), bulky.end());
  rep.computed_nonbulky_maximal.assign(nonbulky_max.begin(), nonbulky_max.end());
  if (auto want = expected_bulky_types(g->type())) {
    rep.has_expectation = true;
    rep.expected_bulky = *want;
    rep.expected_nonbulky_maximal = expected_nonbulky_maximal(g->type());
  }
  return rep;
}

}  // namespace coxtop
