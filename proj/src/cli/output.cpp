#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "pauligap/cli/output.hpp"
#include "pauligap/error.hpp"

namespace fs = std::filesystem;

namespace pauligap::cli {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OutputDir::OutputDir(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error("cannot create output directory " + dir_ + ": " + ec.message());
}

void OutputDir::write(const std::string& name, const std::string& content) {
  const fs::path final_path = fs::path(dir_) / name;
  const fs::path tmp = fs::path(dir_) / ("." + name + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f.write(content.data(), std::streamsize(content.size()));
    if (!f) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + ": " + ec.message());
  for (auto& e : files_)
    if (e.name == name) {
      e = {name, sha256_hex(content), content.size()};
      return;
    }
  files_.push_back({name, sha256_hex(content), content.size()});
}

Json OutputDir::inventory() const {
  Json arr = Json::array();
  for (const auto& e : files_) arr.push_back({{"name", e.name}, {"sha256", e.sha256}, {"bytes", e.bytes}});
  return arr;
}

}  // namespace pauligap::cli
