#include "coxtop/packing.hpp"

#include <algorithm>
#include <numeric>

#include "coxtop/errors.hpp"

namespace coxtop {

int CandidateList::add(const PackVector& v, int source) {
  for (int i = 0; i < size(); ++i)
    if (vectors[i] == v) {
      sources[i].push_back(source);
      return i;
    }
  vectors.push_back(v);
  sources.push_back({source});
  return size() - 1;
}

void PackingProblem::validate() const {
  for (long x : goal)
    if (x < 0) throw InputError("goal has a negative entry");
  for (size_t i = 0; i < lists.size(); ++i) {
    if (lists[i].sources.size() != lists[i].vectors.size())
      throw InputError("list " + std::to_string(i) + " has inconsistent sources");
    for (const auto& v : lists[i].vectors) {
      if (v.size() != goal.size())
        throw InputError("list " + std::to_string(i) + " has a vector of length " + std::to_string(v.size()) +
                         ", goal has " + std::to_string(goal.size()));
      for (long x : v)
        if (x < 0) throw InputError("list " + std::to_string(i) + " has a negative entry");
    }
  }
}

PackingProblem PackingProblem::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("goal") || !j.contains("lists"))
    throw InputError("packing instance needs \"goal\" and \"lists\"");
  PackingProblem p;
  try {
    p.goal = j.at("goal").get<PackVector>();
    int source = 0;
    for (const auto& l : j.at("lists")) {
      CandidateList cl;
      for (const auto& v : l) cl.add(v.get<PackVector>(), source++);
      p.lists.push_back(std::move(cl));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed packing instance: ") + e.what());
  }
  p.validate();
  return p;
}

nlohmann::json PackingProblem::to_json() const {
  nlohmann::json j;
  j["goal"] = goal;
  j["lists"] = nlohmann::json::array();
  for (const auto& l : lists) j["lists"].push_back(l.vectors);
  return j;
}

std::string to_string(PackingStrategy s) {
  switch (s) {
    case PackingStrategy::Given: return "given";
    case PackingStrategy::AscendingSize: return "ascending-size";
    case PackingStrategy::DescendingSize: return "descending-size";
  }
  return "?";
}

PackingStrategy parse_packing_strategy(const std::string& s) {
  for (auto v : {PackingStrategy::Given, PackingStrategy::AscendingSize, PackingStrategy::DescendingSize})
    if (to_string(v) == s) return v;
  throw InputError("unknown packing strategy " + s);
}

std::vector<int> packing_order(const PackingProblem& p, PackingStrategy strategy) {
  std::vector<int> order(p.lists.size());
  std::iota(order.begin(), order.end(), 0);
  if (strategy == PackingStrategy::Given) return order;
  auto min_first = [&](int i) {
    long m = 0;
    bool any = false;
    for (const auto& v : p.lists[i].vectors)
      if (!v.empty() && (!any || v[0] < m)) m = v[0], any = true;
    return m;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    int sa = p.lists[a].size(), sb = p.lists[b].size();
    if (sa != sb) return strategy == PackingStrategy::AscendingSize ? sa < sb : sa > sb;
    return min_first(a) > min_first(b);
  });
  return order;
}

namespace {

struct Search {
  const PackingProblem& p;
  const std::vector<int>& order;
  PackVector remaining;
  std::vector<int> pick;
  PackingResult& out;

  void run(size_t depth) {
    ++out.stats.vertices;
    if (depth == order.size()) {
      if (std::all_of(remaining.begin(), remaining.end(), [](long x) { return x == 0; }))
        out.solutions.push_back(pick);
      return;
    }
    const auto& list = p.lists[order[depth]];
    for (int i = 0; i < list.size(); ++i) {
      const auto& v = list.vectors[i];
      bool fits = true;
      for (size_t k = 0; k < v.size() && fits; ++k) fits = v[k] <= remaining[k];
      if (!fits) continue;
      for (size_t k = 0; k < v.size(); ++k) remaining[k] -= v[k];
      pick[order[depth]] = i;
      run(depth + 1);
      for (size_t k = 0; k < v.size(); ++k) remaining[k] += v[k];
    }
  }
};

}  // namespace

PackingResult exact_packings(const PackingProblem& p, PackingStrategy strategy) {
  p.validate();
  PackingResult out;
  out.stats.order = packing_order(p, strategy);
  Search s{p, out.stats.order, p.goal, std::vector<int>(p.lists.size(), -1), out};
  s.run(0);
  std::sort(out.solutions.begin(), out.solutions.end());
  return out;
}

std::vector<PackingSolution> brute_force_packings(const PackingProblem& p, long cap) {
  p.validate();
  long total = 1;
  for (const auto& l : p.lists) {
    total *= l.size();
    if (total > cap) throw InputError("brute force product exceeds cap " + std::to_string(cap));
  }
  std::vector<PackingSolution> out;
  if (total == 0) return out;
  PackingSolution idx(p.lists.size(), 0);
  for (long n = 0; n < total; ++n) {
    PackVector sum(p.goal.size(), 0);
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t k = 0; k < sum.size(); ++k) sum[k] += p.lists[i].vectors[idx[i]][k];
    if (sum == p.goal) out.push_back(idx);
    for (size_t i = 0; i < idx.size() && ++idx[i] == p.lists[i].size(); ++i) idx[i] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json packing_result_to_json(const PackingProblem& p, const PackingResult& r) {
  nlohmann::json j;
  j["solution_count"] = r.solutions.size();
  j["solutions"] = nlohmann::json::array();
  for (const auto& s : r.solutions) {
    nlohmann::json sol = nlohmann::json::array();
    for (size_t i = 0; i < s.size(); ++i) sol.push_back(p.lists[i].vectors[s[i]]);
    j["solutions"].push_back({{"indices", s}, {"vectors", sol}});
  }
  j["stats"] = {{"vertices", r.stats.vertices}, {"order", r.stats.order}};
  return j;
}

}  // namespace coxtop
