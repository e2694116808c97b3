#pragma once

#include <stdexcept>
#include <string>

namespace pauligap {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pauligap
