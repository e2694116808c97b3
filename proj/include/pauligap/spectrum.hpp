#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pauligap/linalg.hpp"
#include "pauligap/model.hpp"
#include "pauligap/planewave.hpp"

namespace pauligap {

struct EigenOptions {
  int spot_checks = 0;      // eigenpairs verified by inverse iteration
  std::uint64_t seed = 1;   // picks which pairs are checked
};

struct EigenResult {
  VecX values;              // ascending
  double max_residual = 0;  // max ||Hv - lv|| / ||H|| over spot checks
};

EigenResult eigensolve(const MatXc& h, const EigenOptions& opts = {});
EigenResult eigensolve(const FiberMatrix& h, const EigenOptions& opts = {});

// k_i = -1/2 + (i + 1)/n_k, i = 0..n_k-1, so the grid covers (-1/2, 1/2]
// and contains the corner (1/2, 1/2). Flattened with k1 outer.
std::vector<Vec2> kgrid(int n_k);

struct BandMeta {
  int cutoff = 0;
  int n_k = 0;
  Params params;
  std::string dispersion;
  std::string potential;
  double norm_perp = 0.0;
  double d_prime = 1.0;
};

struct BandStructure {
  std::vector<Vec2> k;
  std::vector<VecX> bands;  // bands[i] sorted, length dim
  BandMeta meta;
};

BandStructure band_structure(const Dispersion& disp, const Potential& pot, const Params& params,
                             int cutoff, int n_k);

struct GapReport {
  double lower = 0.0;   // a
  double upper = 0.0;   // b
  double center = 0.0;
  double width = 0.0;
  double predicted_halfwidth_leading = 0.0;
  double ratio = 0.0;   // width / (2 alpha^2 beta |Phi_perp|); NaN if undefined
  int n_k = 0;
  int cutoff = 0;
  double lambda = 0.0;
  double norm_perp = 0.0;
  double d_prime = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  double theorem_halfwidth(double c) const;
};

GapReport detect_gap(const BandStructure& bs, double center = 0.0);

struct ConvergenceResult {
  bool converged = false;
  double delta = 0.0;
};

// Compares the 8 eigenvalues nearest `center` at cutoffs N and 2N.
// tol < 0 selects the default 1e-6 max(1, alpha^2 beta).
ConvergenceResult convergence_check(const Vec2& k, const Dispersion& disp, const Potential& pot,
                                    const Params& params, int cutoff, double tol = -1.0,
                                    double center = 0.0);

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  int cutoff = 0;
  int n_k = 0;
  double width = 0.0;
  double ratio = 0.0;
  double runtime_s = 0.0;
  std::string error;  // empty on success
};

struct SlopeFit {
  double beta = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of log residuals
  int points = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SlopeFit> alpha_slopes;  // one per beta with >= 2 usable cells
  std::optional<double> c_fit;         // empirical correction constant
  double norm_perp = 0.0;
  double d_prime = 1.0;
};

SweepResult sweep(const Dispersion& disp, const Potential& pot, const std::vector<double>& alphas,
                  const std::vector<double>& betas, int cutoff, int n_k, double center = 0.0);

// Least squares fit y = a + b x; returns {b, a, rms residual}.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// min over grid k and modes m != 0 with |m_i| <= cutoff of |F(2 pi (m - k))|,
// and the k where it is attained.
struct KineticMin {
  double value = 0.0;
  Vec2 k = Vec2::Zero();
};
KineticMin kinetic_minimum(const Dispersion& disp, int n_k, int cutoff = 2);

}  // namespace pauligap
