#include "truncinv/cache.hpp"

#include <atomic>
#include <cctype>
#include <fstream>
#include <thread>

namespace truncinv {

namespace fs = std::filesystem;

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path ResultCache::file_for(const std::string& key) const {
  std::string name;
  for (char c : key) name += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return dir_ / (name + ".json");
}

std::optional<nlohmann::json> ResultCache::get(const std::string& key) const {
  std::ifstream in(file_for(key));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    // Guard against a sanitized-name collision.
    if (j.value("key", "") != key) return std::nullopt;
    return j.at("value");
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void ResultCache::put(const std::string& key, const nlohmann::json& value) const {
  static std::atomic<unsigned> counter{0};
  const fs::path target = file_for(key);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "_" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp);
    out << nlohmann::json{{"key", key}, {"value", value}}.dump();
  }
  fs::rename(tmp, target);
}

}  // namespace truncinv
