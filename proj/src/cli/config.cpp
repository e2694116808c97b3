#include "pauligap/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pauligap/error.hpp"

namespace pauligap::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error("config: " + key + " " + what);
}

double as_number(const std::string& key, const Json& v) {
  if (!v.is_number()) fail(key, "must be a number");
  return v.get<double>();
}

int as_int(const std::string& key, const Json& v) {
  if (!v.is_number_integer()) fail(key, "must be an integer");
  return v.get<int>();
}

std::vector<double> as_list(const std::string& key, const Json& v) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) fail(key, "must be a number or a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_number(key, x));
  return out;
}

std::vector<double> as_fixed(const std::string& key, const Json& v, std::size_t n) {
  if (!v.is_array() || v.size() != n) fail(key, "must be a list of " + std::to_string(n) + " numbers");
  return as_list(key, v);
}

std::string as_string(const std::string& key, const Json& v) {
  if (!v.is_string()) fail(key, "must be a string");
  return v.get<std::string>();
}

using Setter = std::function<void(RunConfig&, const std::string&, const Json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"dispersion.kind", [](RunConfig& c, auto& k, auto& v) { c.kind = as_string(k, v); }},
      {"dispersion.d", [](RunConfig& c, auto& k, auto& v) { c.d = as_number(k, v); }},
      {"dispersion.layers", [](RunConfig& c, auto& k, auto& v) { c.layers = as_int(k, v); }},
      {"dispersion.A",
       [](RunConfig& c, auto& k, auto& v) {
         if (!v.is_array() || v.size() != 3) fail(k, "must be 3 rows of 2 numbers");
         for (int i = 0; i < 3; ++i) {
           auto row = as_fixed(k, v[i], 2);
           c.a(i, 0) = row[0];
           c.a(i, 1) = row[1];
         }
       }},
      {"potential.shape", [](RunConfig& c, auto& k, auto& v) { c.shape = as_string(k, v); }},
      {"potential.side", [](RunConfig& c, auto& k, auto& v) { c.side = as_number(k, v); }},
      {"potential.radius", [](RunConfig& c, auto& k, auto& v) { c.radius = as_number(k, v); }},
      {"potential.amplitudes",
       [](RunConfig& c, auto& k, auto& v) {
         auto a = as_fixed(k, v, 3);
         c.amplitudes = Vec3(a[0], a[1], a[2]);
       }},
      {"potential.quad_order", [](RunConfig& c, auto& k, auto& v) { c.quad_order = as_int(k, v); }},
      {"potential.grid", [](RunConfig& c, auto& k, auto& v) { c.grid = as_int(k, v); }},
      {"potential.cells", [](RunConfig& c, auto& k, auto& v) { c.cells = as_list(k, v); }},
      {"run.alpha", [](RunConfig& c, auto& k, auto& v) { c.alphas = as_list(k, v); }},
      {"run.beta", [](RunConfig& c, auto& k, auto& v) { c.betas = as_list(k, v); }},
      {"run.cutoff", [](RunConfig& c, auto& k, auto& v) { c.cutoff = as_int(k, v); }},
      {"run.n_k", [](RunConfig& c, auto& k, auto& v) { c.n_k = as_int(k, v); }},
      {"run.center", [](RunConfig& c, auto& k, auto& v) { c.center = as_number(k, v); }},
      {"run.seed",
       [](RunConfig& c, auto& k, auto& v) {
         if (!v.is_number_unsigned()) fail(k, "must be a non-negative integer");
         c.seed = v.template get<std::uint64_t>();
       }},
      {"feshbach.k",
       [](RunConfig& c, auto& k, auto& v) {
         auto a = as_fixed(k, v, 2);
         c.k = Vec2(a[0], a[1]);
       }},
      {"feshbach.z", [](RunConfig& c, auto& k, auto& v) { c.z = as_number(k, v); }},
      {"feshbach.window",
       [](RunConfig& c, auto& k, auto& v) {
         auto a = as_fixed(k, v, 2);
         c.window_lo = a[0];
         c.window_hi = a[1];
       }},
      {"feshbach.scan_points", [](RunConfig& c, auto& k, auto& v) { c.scan_points = as_int(k, v); }},
      {"feshbach.scan_halfwidth",
       [](RunConfig& c, auto& k, auto& v) { c.scan_halfwidth = as_number(k, v); }},
      {"feshbach.bp0_alphas", [](RunConfig& c, auto& k, auto& v) { c.bp0_alphas = as_list(k, v); }},
      {"feshbach.bp0_betas", [](RunConfig& c, auto& k, auto& v) { c.bp0_betas = as_list(k, v); }},
      {"feshbach.bp0_cutoff", [](RunConfig& c, auto& k, auto& v) { c.bp0_cutoff = as_int(k, v); }},
      {"feshbach.neumann_terms",
       [](RunConfig& c, auto& k, auto& v) { c.neumann_terms = as_int(k, v); }},
      {"kernel.eps", [](RunConfig& c, auto& k, auto& v) { c.eps = as_number(k, v); }},
      {"kernel.radii", [](RunConfig& c, auto& k, auto& v) { c.radii = as_list(k, v); }},
      {"kernel.stability_rmax",
       [](RunConfig& c, auto& k, auto& v) { c.stability_rmax = as_number(k, v); }},
      {"kernel.lattice",
       [](RunConfig& c, auto& k, auto& v) {
         if (!v.is_boolean()) fail(k, "must be true or false");
         c.lattice = v.template get<bool>();
       }},
      {"kernel.lattice_gamma", [](RunConfig& c, auto& k, auto& v) { c.lattice_gamma = as_int(k, v); }},
      {"kernel.lattice_eps", [](RunConfig& c, auto& k, auto& v) { c.lattice_eps = as_number(k, v); }},
      {"verify.cutoff", [](RunConfig& c, auto& k, auto& v) { c.verify_cutoff = as_int(k, v); }},
      {"verify.n_k", [](RunConfig& c, auto& k, auto& v) { c.verify_n_k = as_int(k, v); }},
      {"output.dir", [](RunConfig& c, auto& k, auto& v) { c.out_dir = as_string(k, v); }},
  };
  return m;
}

void validate(const RunConfig& c) {
  static const char* kinds[] = {"dirac", "power", "multilayer", "homogeneous"};
  if (std::find(std::begin(kinds), std::end(kinds), c.kind) == std::end(kinds))
    fail("dispersion.kind", "unknown preset '" + c.kind + "'");
  static const char* shapes[] = {"square", "disk", "bump", "tabulated"};
  if (std::find(std::begin(shapes), std::end(shapes), c.shape) == std::end(shapes))
    fail("potential.shape", "unknown preset '" + c.shape + "'");
  if ((c.kind == "power" || c.kind == "homogeneous") && !(c.d >= 1.0))
    fail("dispersion.d", "must be >= 1");
  if (c.kind == "multilayer" && c.layers < 1) fail("dispersion.layers", "must be >= 1");
  for (double a : c.alphas)
    if (!(a > 0.0 && a <= 0.5)) throw Error("alpha must lie in (0, 0.5]");
  for (double b : c.betas)
    if (!(b >= 0.0) || !std::isfinite(b)) throw Error("beta must be non-negative");
  if (c.cutoff < 0) fail("run.cutoff", "must be >= 0");
  if (c.n_k < 2) fail("run.n_k", "must be >= 2");
  if (c.scan_points < 2) fail("feshbach.scan_points", "must be >= 2");
  if (!(c.window_lo < c.window_hi)) fail("feshbach.window", "must satisfy lo < hi");
  for (double a : c.bp0_alphas)
    if (!(a > 0.0 && a <= 0.5)) fail("feshbach.bp0_alphas", "entries must lie in (0, 0.5]");
  for (double b : c.bp0_betas)
    if (!(b > 0.0)) fail("feshbach.bp0_betas", "entries must be positive");
  if (c.bp0_cutoff < 1) fail("feshbach.bp0_cutoff", "must be >= 1");
  if (c.neumann_terms < 1) fail("feshbach.neumann_terms", "must be >= 1");
  if (!(c.eps >= 1e-4 && c.eps <= 1.0)) fail("kernel.eps", "must lie in [1e-4, 1]");
  if (!(c.lattice_eps >= 1e-4 && c.lattice_eps <= 1.0))
    fail("kernel.lattice_eps", "must lie in [1e-4, 1]");
  for (double r : c.radii)
    if (!(r > 0.0)) fail("kernel.radii", "entries must be positive");
  if (c.lattice_gamma < 0) fail("kernel.lattice_gamma", "must be >= 0");
  if (c.verify_cutoff < 1) fail("verify.cutoff", "must be >= 1");
  if (c.verify_n_k < 2) fail("verify.n_k", "must be >= 2");
  // Building the presets surfaces their own range checks.
  c.dispersion();
  c.potential();
}

}  // namespace

Dispersion RunConfig::dispersion() const {
  if (kind == "dirac") return Dispersion::dirac();
  if (kind == "power") return Dispersion::power(d);
  if (kind == "multilayer") return Dispersion::multilayer(layers);
  return Dispersion::homogeneous(d, a);
}

Potential RunConfig::potential() const {
  if (shape == "square") return Potential::square(side, amplitudes);
  if (shape == "disk") return Potential::disk(radius, amplitudes);
  if (shape == "bump") return Potential::bump(radius, amplitudes, quad_order);
  return Potential::tabulated(grid, cells, amplitudes);
}

Params RunConfig::params() const {
  if (alphas.empty()) throw Error("config: run.alpha is empty");
  if (betas.empty()) throw Error("config: run.beta is empty");
  return Params{alphas.front(), betas.front()};
}

Json RunConfig::echo() const {
  Json j;
  Json a = Json::array();
  for (int i = 0; i < 3; ++i) a.push_back({this->a(i, 0), this->a(i, 1)});
  j["dispersion"] = {{"kind", kind}, {"d", d}, {"layers", layers}, {"A", a}};
  j["potential"] = {{"shape", shape},
                    {"side", side},
                    {"radius", radius},
                    {"amplitudes", {amplitudes(0), amplitudes(1), amplitudes(2)}},
                    {"quad_order", quad_order},
                    {"grid", grid},
                    {"cells", cells}};
  j["run"] = {{"alpha", alphas}, {"beta", betas}, {"cutoff", cutoff},
              {"n_k", n_k},      {"center", center}, {"seed", seed}};
  j["feshbach"] = {{"k", {k(0), k(1)}},
                   {"z", z},
                   {"window", {window_lo, window_hi}},
                   {"scan_points", scan_points},
                   {"scan_halfwidth", scan_halfwidth},
                   {"bp0_alphas", bp0_alphas},
                   {"bp0_betas", bp0_betas},
                   {"bp0_cutoff", bp0_cutoff},
                   {"neumann_terms", neumann_terms}};
  j["kernel"] = {{"eps", eps},
                 {"radii", radii},
                 {"stability_rmax", stability_rmax},
                 {"lattice", lattice},
                 {"lattice_gamma", lattice_gamma},
                 {"lattice_eps", lattice_eps}};
  j["verify"] = {{"cutoff", verify_cutoff}, {"n_k", verify_n_k}};
  j["output"] = {{"dir", out_dir}};
  return j;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw, section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw Error("config: " + where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config: " + where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string full = section.empty() ? key : section + "." + key;
    const auto it = setters().find(full);
    if (it == setters().end()) throw Error("config: unknown key '" + full + "' (" + where + ")");
    Json value;
    try {
      value = Json::parse(trim(line.substr(eq + 1)));
    } catch (const std::exception&) {
      throw Error("config: " + full + " has an unparsable value (" + where + ")");
    }
    it->second(cfg, full, value);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("config: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pauligap::cli
