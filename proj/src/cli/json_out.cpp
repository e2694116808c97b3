#include <cmath>
#include <cstdio>

#include "pauligap/cli/output.hpp"

namespace pauligap::cli {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

namespace {

void put_string(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

void emit(std::string& out, const Json& j, int indent) {
  const std::string pad(indent * 2, ' '), pad_in((indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        put_string(out, it.key());
        out += ": ";
        emit(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& x : j) flat = flat && x.is_primitive();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(out, j[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad_in;
        emit(out, j[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? fmt(x) : "null";
      return;
    }
    case Json::value_t::string:
      put_string(out, j.get<std::string>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

}  // namespace pauligap::cli
