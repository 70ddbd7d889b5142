#include "output.hpp"

#include <algorithm>
#include <map>

#include "coxtop/serialize.hpp"

namespace coxtop::cli {

std::vector<std::string> class_labels(const GroupPtr& g) {
  std::vector<std::string> out;
  const Family f = g->type().family;
  if (f != Family::B && f != Family::D) {
    for (int c = 0; c < g->num_classes(); ++c) out.push_back("C" + std::to_string(c + 1));
    return out;
  }
  std::map<std::string, int> count, seen;
  for (const auto& c : g->classes()) ++count[g->signed_cycle_type(c.rep)];
  for (const auto& c : g->classes()) {
    std::string l = g->signed_cycle_type(c.rep);
    if (count[l] > 1) l += seen[l]++ ? "-" : "+";
    out.push_back(l);
  }
  return out;
}

std::string grid(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) {
      const std::string& f = r[i];
      bool quote = f.find_first_of(",\"\n") != std::string::npos;
      std::string cell = f;
      if (quote) {
        cell.clear();
        for (char c : f) cell += c == '"' ? std::string("\"\"") : std::string(1, c);
        cell = "\"" + cell + "\"";
      }
      out += (i ? "," : "") + cell;
    }
    out += "\n";
  }
  return out;
}

std::string display(const Cyclo& c) { return c.is_zero() ? "." : c.str(); }

nlohmann::json class_function_json(const ClassFunction& f, const std::string& name) {
  nlohmann::json j;
  j["name"] = name;
  j["values"] = nlohmann::json::array();
  j["display"] = nlohmann::json::array();
  for (const auto& v : f.values) {
    j["values"].push_back(cyclo_to_json(v));
    j["display"].push_back(display(v));
  }
  return j;
}

std::string render_class_functions(const std::vector<std::pair<std::string, ClassFunction>>& rows, Format fmt) {
  if (rows.empty()) return "";
  const GroupPtr& g = rows.front().second.group;
  auto labels = class_labels(g);
  if (fmt == Format::Json) {
    nlohmann::json j;
    j["group"] = g->name();
    j["classes"] = nlohmann::json::array();
    for (int c = 0; c < g->num_classes(); ++c)
      j["classes"].push_back({{"label", labels[c]},
                              {"representative", g->word_string(g->conj_class(c).rep)},
                              {"size", g->conj_class(c).fingerprint.class_size},
                              {"fingerprint", g->conj_class(c).fingerprint.str()}});
    j["rows"] = nlohmann::json::array();
    for (const auto& [name, f] : rows) j["rows"].push_back(class_function_json(f, name));
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> header{"class"};
  header.insert(header.end(), labels.begin(), labels.end());
  out.push_back(header);
  for (const auto& [name, f] : rows) {
    std::vector<std::string> r{name};
    for (const auto& v : f.values) r.push_back(fmt == Format::Csv ? (v.is_zero() ? "0" : v.str()) : display(v));
    out.push_back(r);
  }
  return fmt == Format::Csv ? csv(out) : grid(out);
}

}  // namespace coxtop::cli
