#pragma once

#include <string>
#include <vector>

#include "pauligap/cli/config.hpp"

namespace pauligap::cli {

// Fixed float formatting: 17 significant digits, scientific, '.' separator.
std::string fmt(double x);

// JSON text with floats in fmt() form; non-finite floats become null.
std::string dump_json(const Json& j);

std::string sha256_hex(const std::string& data);
std::string utc_timestamp();

// Output directory with write-temp-then-rename file creation and an
// inventory of everything written.
class OutputDir {
 public:
  explicit OutputDir(std::string dir);
  void write(const std::string& name, const std::string& content);
  const std::string& dir() const { return dir_; }
  Json inventory() const;

 private:
  struct Entry {
    std::string name;
    std::string sha256;
    std::size_t bytes;
  };
  std::string dir_;
  std::vector<Entry> files_;
};

}  // namespace pauligap::cli
