#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pauligap/linalg.hpp"
#include "pauligap/model.hpp"

namespace pauligap::cli {

using Json = nlohmann::ordered_json;

// Flat sectioned key = value config. Values use JSON literal syntax
// (numbers, "strings", true/false, [lists]); '#' starts a comment.
struct RunConfig {
  // [dispersion]
  std::string kind = "dirac";  // dirac | power | multilayer | homogeneous
  double d = 1.0;
  int layers = 1;
  Mat32 a = (Mat32() << 1, 0, 0, 1, 0, 0).finished();

  // [potential]
  std::string shape = "square";  // square | disk | bump | tabulated
  double side = 1.0;
  double radius = 0.25;
  Vec3 amplitudes = Vec3(0, 0, 1);
  int quad_order = 64;
  int grid = 0;
  std::vector<double> cells;

  // [run]
  std::vector<double> alphas{0.1};
  std::vector<double> betas{0.2};
  int cutoff = 8;
  int n_k = 32;
  double center = 0.0;
  std::uint64_t seed = 1;

  // [feshbach]
  Vec2 k = Vec2::Zero();
  double z = 0.0;
  double window_lo = -0.1;
  double window_hi = 0.1;
  int scan_points = 41;
  double scan_halfwidth = 0.0;
  std::vector<double> bp0_alphas;
  std::vector<double> bp0_betas;
  int bp0_cutoff = 8;
  int neumann_terms = 10;

  // [kernel]
  double eps = 1e-3;
  std::vector<double> radii;  // empty: built-in radii
  double stability_rmax = 8.0;
  bool lattice = false;
  int lattice_gamma = 6;
  double lattice_eps = 1e-2;

  // [verify]
  int verify_cutoff = 3;
  int verify_n_k = 6;

  // [output]
  std::string out_dir = "out";

  Dispersion dispersion() const;
  Potential potential() const;
  Params params() const;  // first alpha and beta
  Json echo() const;      // every field, defaults included
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace pauligap::cli
