#include "nilcert/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <openssl/evp.h>

namespace nilcert {

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

ResultCache ResultCache::from_env() {
  if (const char* v = std::getenv(kCacheEnv)) {
    std::string s(v);
    if (s == "off") return {};
    if (!s.empty()) return ResultCache(s);
  }
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return ResultCache(std::filesystem::path(x) / "nilcert");
  if (const char* h = std::getenv("HOME"); h && *h) return ResultCache(std::filesystem::path(h) / ".cache" / "nilcert");
  return ResultCache(".nilcert-cache");
}

std::string ResultCache::key(std::string_view op, const nlohmann::json& request) {
  nlohmann::json k = {{"op", op}, {"request", request}, {"algorithm_version", kAlgorithmVersion}};
  return sha256_hex(k.dump());
}

std::optional<nlohmann::json> ResultCache::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // torn or foreign file: recompute
  }
}

void ResultCache::put(const std::string& key, const nlohmann::json& payload) const {
  if (!enabled()) return;
  atomic_write(dir_ / (key + ".json"), payload.dump());
}

std::filesystem::path ResultCache::certificate_path(const std::string& key) const {
  return dir_ / "certificates" / (key + ".json");
}

void atomic_write(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::random_device rd;
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace nilcert
