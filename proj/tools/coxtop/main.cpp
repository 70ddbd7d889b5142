#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

#include "cache.hpp"
#include "coxtop/chars.hpp"
#include "coxtop/descent.hpp"
#include "coxtop/errors.hpp"
#include "coxtop/orlik_solomon.hpp"
#include "coxtop/packing.hpp"
#include "coxtop/serialize.hpp"
#include "coxtop/verify.hpp"
#include "output.hpp"

using namespace coxtop;
using coxtop::cli::Cache;
using coxtop::cli::Format;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kInputError = 2;

struct Config {
  std::string format = "table";
  int jobs = 1;
  std::string cache_dir;
  bool no_cache = false;
  bool heavy = false;  // accepted for compatibility; every group runs by default

  Format fmt() const {
    if (format == "json") return Format::Json;
    if (format == "csv") return Format::Csv;
    return Format::Table;
  }
  Cache cache() const { return no_cache || cache_dir.empty() ? Cache() : Cache(cache_dir); }
};

GroupPtr group_of(const std::string& type) { return CoxeterGroup::build(CoxeterType::parse(type)); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw InputError("cannot write " + path);
}

ClassFunction cached_class_function(const Cache& cache, const GroupPtr& g, const std::string& key,
                                    const std::function<ClassFunction()>& compute) {
  if (auto j = cache.load(key)) {
    try {
      const auto& fps = j->at("fingerprints");
      bool same = static_cast<int>(fps.size()) == g->num_classes();
      for (int c = 0; same && c < g->num_classes(); ++c) same = fps[c] == g->conj_class(c).fingerprint.str();
      if (same) {
        std::vector<Cyclo> v;
        for (const auto& x : j->at("values")) v.push_back(cyclo_from_json(x));
        return ClassFunction(g, v);
      }
    } catch (const std::exception&) {
      // unreadable entries are recomputed
    }
  }
  ClassFunction f = compute();
  json j;
  j["fingerprints"] = json::array();
  for (const auto& c : g->classes()) j["fingerprints"].push_back(c.fingerprint.str());
  j["values"] = json::array();
  for (const auto& v : f.values) j["values"].push_back(cyclo_to_json(v));
  cache.store(key, j);
  return f;
}

const CharacterTable& cached_table(const Cache& cache, const GroupPtr& g) {
  static std::map<std::string, CharacterTable> loaded;
  if (auto it = loaded.find(g->name()); it != loaded.end()) return it->second;
  const std::string key = g->name() + ".chartable";
  if (auto j = cache.load(key)) {
    try {
      return loaded[g->name()] = character_table_from_json(g, *j);
    } catch (const std::exception&) {
    }
  }
  const CharacterTable& t = character_table(g);
  cache.store(key, character_table_to_json(t));
  return t;
}

// ---------------------------------------------------------------- commands

int cmd_group_info(const Config& cfg, const std::string& type) {
  auto g = group_of(type);
  auto labels = cli::class_labels(g);
  auto cusp = g->cuspidal_classes();
  auto is_cusp = [&](int c) { return std::find(cusp.begin(), cusp.end(), c) != cusp.end(); };
  if (cfg.fmt() == Format::Json) {
    json j{{"group", g->name()},         {"rank", g->rank()},           {"order", g->size()},
           {"reflections", g->num_pos_roots()}, {"exponents", g->exponents()}, {"classes", json::array()}};
    for (int c = 0; c < g->num_classes(); ++c) {
      const auto& cl = g->conj_class(c);
      j["classes"].push_back({{"label", labels[c]},
                              {"representative", g->word_string(cl.rep)},
                              {"fingerprint", cl.fingerprint.str()},
                              {"order", cl.fingerprint.order},
                              {"size", cl.fingerprint.class_size},
                              {"centralizer", cl.fingerprint.centralizer_order},
                              {"cuspidal", is_cusp(c)}});
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::vector<std::vector<std::string>> rows{{"label", "representative", "order", "size", "centralizer", "cuspidal"}};
  for (int c = 0; c < g->num_classes(); ++c) {
    const auto& cl = g->conj_class(c);
    rows.push_back({labels[c], g->word_string(cl.rep), std::to_string(cl.fingerprint.order),
                    std::to_string(cl.fingerprint.class_size), std::to_string(cl.fingerprint.centralizer_order),
                    is_cusp(c) ? "yes" : "no"});
  }
  if (cfg.fmt() == Format::Csv) {
    std::cout << cli::csv(rows);
    return kOk;
  }
  std::string exps;
  for (int e : g->exponents()) exps += (exps.empty() ? "" : " ") + std::to_string(e);
  std::cout << cli::grid({{"group", g->name()},
                          {"rank", std::to_string(g->rank())},
                          {"order", std::to_string(g->size())},
                          {"reflections", std::to_string(g->num_pos_roots())},
                          {"exponents", exps},
                          {"classes", std::to_string(g->num_classes())},
                          {"cuspidal classes", std::to_string(cusp.size())}})
            << "\n"
            << cli::grid(rows);
  return kOk;
}

int cmd_rho_top(const Config& cfg, const std::string& type) {
  auto g = group_of(type);
  auto f = cached_class_function(cfg.cache(), g, g->name() + ".rho", [&] { return rho_top(g); });
  std::cout << cli::render_class_functions({{"rho", f}}, cfg.fmt());
  return kOk;
}

int cmd_omega(const Config& cfg, const std::string& type, int degree) {
  auto g = group_of(type);
  if (degree < 0) degree = g->rank();
  if (degree > g->rank()) throw InputError("degree exceeds the rank of " + g->name());
  auto f = cached_class_function(cfg.cache(), g, g->name() + ".omega" + std::to_string(degree),
                                 [&] { return omega_character(g, degree); });
  std::cout << cli::render_class_functions({{"omega" + std::to_string(degree), f}}, cfg.fmt());
  return kOk;
}

int cmd_nbc(const Config& cfg, const std::string& input, const std::string& type, bool list) {
  if (input.empty() == type.empty()) throw InputError("nbc needs exactly one of --input and --type");
  Arrangement arr = input.empty() ? arrangement_of_group(group_of(type)) : arrangement_from_json(read_json_file(input));
  NbcData d = nbc(arr);
  auto tuples = [](const std::vector<Monomial>& ms) {
    json a = json::array();
    for (Monomial m : ms) a.push_back(monomial_indices(m));
    return a;
  };
  if (cfg.fmt() == Format::Json) {
    json j{{"hyperplanes", arr.size()}, {"dimension", arr.dim}, {"poincare", d.poincare()}, {"total", d.total()}};
    j["basis"] = json::array();
    for (const auto& b : d.basis) j["basis"].push_back(tuples(b));
    j["minimal_broken"] = tuples(d.minimal_broken);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::vector<std::vector<std::string>> rows{{"degree", "count"}};
  auto p = d.poincare();
  for (size_t k = 0; k < p.size(); ++k) rows.push_back({std::to_string(k), std::to_string(p[k])});
  if (cfg.fmt() == Format::Csv) {
    std::cout << cli::csv(rows);
    return kOk;
  }
  rows.push_back({"total", std::to_string(d.total())});
  std::cout << cli::grid(rows);
  if (list)
    for (size_t k = 0; k < d.basis.size(); ++k)
      for (Monomial m : d.basis[k]) {
        std::string s;
        for (int i : monomial_indices(m)) s += (s.empty() ? "" : " ") + std::to_string(i);
        std::cout << k << ": (" << s << ")\n";
      }
  return kOk;
}

int cmd_chartable(const Config& cfg, const std::string& type, const std::string& export_path,
                  const std::string& import_path) {
  auto g = group_of(type);
  CharacterTable imported;
  const CharacterTable* t = nullptr;
  if (!import_path.empty()) {
    imported = character_table_from_json(g, read_json_file(import_path));
    if (!imported.validate()) throw InputError(import_path + " fails the orthogonality relations");
    t = &imported;
  } else {
    t = &cached_table(cfg.cache(), g);
  }
  if (!export_path.empty()) write_text(export_path, character_table_to_json(*t).dump(2) + "\n");
  std::vector<std::pair<std::string, ClassFunction>> rows;
  for (int i = 0; i < t->size(); ++i) rows.push_back({"chi" + std::to_string(i + 1), t->irreducibles[i]});
  std::cout << cli::render_class_functions(rows, cfg.fmt());
  return kOk;
}

int cmd_pack(const Config& cfg, const std::string& input, const std::string& strategy) {
  PackingProblem p = PackingProblem::from_json(read_json_file(input));
  PackingResult r = exact_packings(p, parse_packing_strategy(strategy));
  if (cfg.fmt() == Format::Json) {
    std::cout << packing_result_to_json(p, r).dump(2) << "\n";
    return kOk;
  }
  std::vector<std::vector<std::string>> rows{{"solution", "indices"}};
  for (size_t i = 0; i < r.solutions.size(); ++i) {
    std::string s;
    for (int x : r.solutions[i]) s += (s.empty() ? "" : " ") + std::to_string(x);
    rows.push_back({std::to_string(i + 1), s});
  }
  if (cfg.fmt() == Format::Csv) {
    std::cout << cli::csv(rows);
    return kOk;
  }
  std::string order;
  for (int x : r.stats.order) order += (order.empty() ? "" : " ") + std::to_string(x);
  std::cout << cli::grid({{"solutions", std::to_string(r.solutions.size())},
                          {"tree vertices", std::to_string(r.stats.vertices)},
                          {"list order", order}})
            << cli::grid(rows);
  return kOk;
}

int cmd_bulky(const Config& cfg, const std::string& type) {
  auto g = group_of(type);
  BulkyReport r = bulky_report(g);
  const int code = r.has_expectation && !r.ok() ? kFailed : kOk;
  if (cfg.fmt() == Format::Json) {
    std::cout << r.to_json().dump(2) << "\n";
    return code;
  }
  std::vector<std::vector<std::string>> rows{{"parabolic", "rank", "bulky"}};
  for (const auto& e : r.entries) rows.push_back({e.label, std::to_string(e.rank), e.bulky ? "yes" : "no"});
  if (cfg.fmt() == Format::Csv) {
    std::cout << cli::csv(rows);
    return code;
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s.empty() ? "-" : s;
  };
  std::cout << cli::grid(rows) << "\n";
  std::vector<std::vector<std::string>> summary{{"bulky (computed)", join(r.computed_bulky)}};
  if (r.has_expectation) summary.push_back({"bulky (expected)", join(r.expected_bulky)});
  if (g->rank() == 4) {
    summary.push_back({"non-bulky maximal (computed)", join(r.computed_nonbulky_maximal)});
    if (r.has_expectation) summary.push_back({"non-bulky maximal (expected)", join(r.expected_nonbulky_maximal)});
  }
  summary.push_back({"agrees with reference", r.has_expectation ? (r.ok() ? "yes" : "no") : "no reference"});
  std::cout << cli::grid(summary);
  return code;
}

int cmd_verify_b(const Config& cfg, const std::string& type, const std::string& cert_path, bool all_solutions,
                 size_t cap, const std::string& strategy, const std::string& check_path) {
  if (!check_path.empty()) {
    json cert = read_json_file(check_path);
    auto problems = check_certificate(cert);
    bool verdict = problems.empty() && cert.at("verdicts").at("packing_solved").get<bool>() &&
                   cert.at("verdicts").at("rho_equals_eps_omega").get<bool>();
    if (cfg.fmt() == Format::Json) {
      std::cout << json{{"certificate", check_path}, {"valid", problems.empty()}, {"problems", problems}, {"verified", verdict}}.dump(2)
                << "\n";
    } else {
      for (const auto& p : problems) std::cout << "problem: " << p << "\n";
      std::cout << "certificate " << (problems.empty() ? "valid" : "invalid") << ", verdict "
                << (verdict ? "verified" : "not verified") << "\n";
    }
    return verdict ? kOk : kFailed;
  }
  if (type.empty()) throw InputError("verify-b needs --type or --check");
  auto g = group_of(type);
  VerifyOptions opt;
  opt.jobs = cfg.jobs;
  opt.solution_cap = all_solutions ? std::numeric_limits<size_t>::max() : cap;
  opt.strategy = parse_packing_strategy(strategy);
  Certificate c = verify_conjecture_b(g, opt);
  json cj = c.to_json();
  if (!cert_path.empty()) write_text(cert_path, cj.dump(2) + "\n");
  const int code = c.verified() ? kOk : kFailed;
  if (cfg.fmt() == Format::Json) {
    std::cout << cj.dump(2) << "\n";
    return code;
  }
  std::vector<std::vector<std::string>> rows{{"class", "representative", "centralizer", "linear characters", "candidates"}};
  auto labels = cli::class_labels(g);
  for (const auto& cc : c.classes)
    rows.push_back({labels[cc.cls], g->word_string(cc.rep), std::to_string(cc.centralizer_order),
                    std::to_string(cc.linear_characters), std::to_string(cc.candidates.size())});
  if (cfg.fmt() == Format::Csv) {
    std::cout << cli::csv(rows);
    return code;
  }
  std::cout << "group " << g->name() << ", " << c.classes.size() << " cuspidal classes\n\n" << cli::grid(rows) << "\n";
  std::cout << cli::grid({{"solutions", std::to_string(c.solution_count) + (c.solutions_truncated ? " (one recorded)" : "")},
                          {"tree vertices", std::to_string(c.stats.vertices)},
                          {"packing solved", c.packing_solved ? "yes" : "no"},
                          {"rho = sign * omega", c.rho_equals_eps_omega ? "yes" : "no"},
                          {"verdict", c.verified() ? "verified" : "conjecture fails computationally"}});
  return code;
}

int cmd_table(const Config& cfg, const std::string& type) {
  auto g = group_of(type);
  TableReport r = reproduce_table(g);
  const int code = r.ok() ? kOk : kFailed;
  if (cfg.fmt() == Format::Json) {
    std::cout << r.to_json().dump(2) << "\n";
    return code;
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"row"};
  header.insert(header.end(), r.column_labels.begin(), r.column_labels.end());
  header.push_back("match");
  rows.push_back(header);
  for (const auto& row : r.rows) {
    std::vector<std::string> line{row.name};
    for (const auto& v : row.computed) line.push_back(cli::display(v));
    line.push_back(row.ok() ? "yes" : "NO");
    rows.push_back(line);
  }
  std::cout << (cfg.fmt() == Format::Csv ? cli::csv(rows) : cli::grid(rows));
  if (cfg.fmt() == Format::Table) {
    std::cout << "\n";
    for (const auto& ch : r.checks)
      if (!ch.ok) std::cout << "failed check: " << ch.name << (ch.detail.empty() ? "" : " (" + ch.detail + ")") << "\n";
    std::cout << "table " << (r.ok() ? "reproduced" : "NOT reproduced") << ", " << r.checks.size() << " checks\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top components of Coxeter group algebras: characters, packings and tables"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", COXTOP_VERSION);

  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory")->envname("COXTOP_CACHE_DIR");
  app.add_flag("--no-cache", cfg.no_cache, "Ignore the cache");
  app.add_flag("--heavy", cfg.heavy, "Accepted for compatibility; all groups run by default");

  std::function<int()> action;
  std::string type, input, export_path, import_path, cert_path, check_path;
  std::string strategy = to_string(PackingStrategy::AscendingSize);
  int degree = -1;
  bool list = false, all_solutions = false;
  size_t cap = VerifyOptions{}.solution_cap;

  auto* group = app.add_subcommand("group", "Group data")->require_subcommand(1);
  auto* info = group->add_subcommand("info", "Order, exponents and conjugacy classes");
  info->add_option("--type", type, "Group type such as B3, H4, I2(5)")->required();
  info->callback([&] { action = [&] { return cmd_group_info(cfg, type); }; });

  auto* rho = app.add_subcommand("rho-top", "Character of the top descent-algebra component");
  rho->add_option("--type", type, "Group type")->required();
  rho->callback([&] { action = [&] { return cmd_rho_top(cfg, type); }; });

  auto* omega = app.add_subcommand("omega", "Character of a graded piece of the Orlik-Solomon algebra");
  omega->add_option("--type", type, "Group type")->required();
  omega->add_option("--degree", degree, "Degree p (default: the rank)");
  omega->callback([&] { action = [&] { return cmd_omega(cfg, type, degree); }; });

  auto* nbc_cmd = app.add_subcommand("nbc", "Non-broken circuit basis of an arrangement");
  nbc_cmd->add_option("--input", input, "Arrangement JSON file");
  nbc_cmd->add_option("--type", type, "Use the reflection arrangement of a group");
  nbc_cmd->add_flag("--list", list, "Print every basis monomial");
  nbc_cmd->callback([&] { action = [&] { return cmd_nbc(cfg, input, type, list); }; });

  auto* chartable = app.add_subcommand("chartable", "Irreducible characters");
  chartable->add_option("--type", type, "Group type")->required();
  chartable->add_option("--export", export_path, "Write the table as JSON");
  chartable->add_option("--import", import_path, "Read and validate a JSON table");
  chartable->callback([&] { action = [&] { return cmd_chartable(cfg, type, export_path, import_path); }; });

  auto* pack = app.add_subcommand("pack", "Exact packings of candidate lists");
  pack->add_option("--input", input, "Instance JSON file")->required();
  pack->add_option("--strategy", strategy, "given, ascending-size or descending-size");
  pack->callback([&] { action = [&] { return cmd_pack(cfg, input, strategy); }; });

  auto* bulky = app.add_subcommand("bulky", "Bulky parabolic subgroups");
  bulky->add_option("--type", type, "Group type")->required();
  bulky->callback([&] { action = [&] { return cmd_bulky(cfg, type); }; });

  auto* verify = app.add_subcommand("verify-b", "Decompose rho into induced linear characters");
  verify->add_option("--type", type, "Group type");
  verify->add_option("--certificate", cert_path, "Write the certificate JSON here");
  verify->add_flag("--all-solutions", all_solutions, "Record every packing solution");
  verify->add_option("--solution-cap", cap, "Record solutions only below this count");
  verify->add_option("--strategy", strategy, "List order for the packing search");
  verify->add_option("--check", check_path, "Re-verify a stored certificate instead");
  verify->callback([&] { action = [&] { return cmd_verify_b(cfg, type, cert_path, all_solutions, cap, strategy, check_path); }; });

  auto* table = app.add_subcommand("table", "Recompute a shipped character table and compare");
  table->add_option("--type", type, "B3, B4, D4, F4, H3 or H4")->required();
  table->callback([&] { action = [&] { return cmd_table(cfg, type); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
