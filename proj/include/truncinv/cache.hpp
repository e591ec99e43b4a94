#pragma once

// On-disk JSON result cache.  Writes go to a temporary file that is renamed
// into place, so readers never see a partial entry.

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace truncinv {

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& value) const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path file_for(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace truncinv
