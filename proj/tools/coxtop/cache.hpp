#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace coxtop::cli {

/// JSON results on disk, one file per key. Entries written by another cache
/// or library version are ignored and overwritten.
class Cache {
 public:
  static constexpr int kVersion = 1;

  Cache() = default;
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  bool enabled() const { return dir_.has_value(); }
  std::optional<nlohmann::json> load(const std::string& key) const;
  /// Write to a temporary file, then rename over the target.
  void store(const std::string& key, const nlohmann::json& data) const;
  std::filesystem::path path_of(const std::string& key) const;

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace coxtop::cli
