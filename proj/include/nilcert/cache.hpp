#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace nilcert {

/// Bumped whenever a change can alter a cached payload.
inline constexpr int kAlgorithmVersion = 1;

/// Environment variable naming the cache directory.  Unset: $XDG_CACHE_HOME/nilcert,
/// else $HOME/.cache/nilcert, else ./.nilcert-cache.  The value "off" disables caching.
inline constexpr const char* kCacheEnv = "NILCERT_CACHE_DIR";

std::string sha256_hex(std::string_view data);

/// Content-addressed store of JSON payloads.  Keys hash (operation, request
/// JSON, algorithm version); writes go to a temporary file and are renamed.
class ResultCache {
 public:
  ResultCache() = default;  // disabled
  explicit ResultCache(std::filesystem::path dir);
  static ResultCache from_env();

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  static std::string key(std::string_view op, const nlohmann::json& request);

  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& payload) const;

  /// Where a certificate for key lives (under certificates/).
  std::filesystem::path certificate_path(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

/// Writes text to path via a sibling temporary file and rename.
void atomic_write(const std::filesystem::path& path, std::string_view text);

}  // namespace nilcert
