#include "cache.hpp"

#include <fstream>
#include <random>

namespace coxtop::cli {

namespace fs = std::filesystem;

fs::path Cache::path_of(const std::string& key) const {
  std::string file;
  for (char c : key) file += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_';
  return *dir_ / (file + ".json");
}

std::optional<nlohmann::json> Cache::load(const std::string& key) const {
  if (!dir_) return std::nullopt;
  std::ifstream in(path_of(key));
  if (!in) return std::nullopt;
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("cache_version", 0) != kVersion || j.value("library_version", "") != COXTOP_VERSION ||
      j.value("key", "") != key || !j.contains("data"))
    return std::nullopt;
  return j["data"];
}

void Cache::store(const std::string& key, const nlohmann::json& data) const {
  if (!dir_) return;
  fs::create_directories(*dir_);
  nlohmann::json j{{"cache_version", kVersion}, {"library_version", COXTOP_VERSION}, {"key", key}, {"data", data}};
  fs::path target = path_of(key);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
    if (!out) {
      fs::remove(tmp);
      return;  // a cache that cannot be written is not an error
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace coxtop::cli
