#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pauligap/linalg.hpp"
#include "pauligap/model.hpp"
#include "pauligap/planewave.hpp"

namespace pauligap {

struct FeshbachEval {
  cplx z{0.0, 0.0};
  Mat2c fp0 = Mat2c::Zero();
  Mat2c bp0 = Mat2c::Zero();  // H_PQ (H_QQ - z)^{-1} H_QP
  double bp0_norm = 0.0;
  double q0_min_singular = 0.0;
};

// Direct route: LU solve against the Q block.
FeshbachEval schur(const MatXc& h, int zero_mode, cplx z);
FeshbachEval schur(const FiberMatrix& h, cplx z);

// Spectral route for repeated evaluation: diagonalizes the Q block once,
// after which each z costs O(p^2 q). Works for any index set P of a
// Hermitian matrix.
class SchurReducer {
 public:
  SchurReducer(const MatXc& h, std::vector<int> p_rows);

  MatXc fp(cplx z) const;
  MatXc remainder(cplx z) const;
  double q_min_singular(cplx z) const;  // min_i |mu_i - z| (Q block is normal)
  double det_fp(double z) const;        // real for real z
  const VecX& q_eigenvalues() const { return mu_; }
  int p_size() const { return int(p_.rows()); }

  // Roots of det F_P on [lo, hi], located by sign changes between poles and
  // refined by bisection.
  std::vector<double> roots(double lo, double hi, int samples = 4000) const;

 private:
  MatXc p_;
  MatXc w_;  // H_PQ V
  VecX mu_;
};

// min over m != 0 of ||F(2 pi (m - k))| - |z||, read off the block-diagonal
// free fiber.
double q0_min_singular(const FiberMatrix& free, const Dispersion& disp, double z);

struct CouplingNorms {
  Eigen::Matrix3d wru = Eigen::Matrix3d::Zero();
  double sup_wru = 0.0;
  bool neumann_ok = true;
};

// ||W_j R0(z) U_l|| for indicator potentials.
CouplingNorms coupling_norms(const FiberAssembler& asmb, const Vec2& k, cplx z);

struct NeumannReport {
  double sup_wru = 0.0;
  int terms = 10;
  double error = 0.0;           // ||R - R_N||
  double stated_bound = 0.0;    // sup^N / (1 - 3 sup)
  double rigorous_bound = 0.0;  // ||R0|| ||U|| ||W^T R0|| (3 sup)^{N-1} / (1 - 3 sup)
  double floor = 0.0;           // rounding floor, 1e-12 ||R||
  double factor_gap = 0.0;      // ||U W^T - Q V Q|| / ||Q V Q||, truncation of the factorization
  bool within_bound = false;    // error <= rigorous_bound + floor
};

NeumannReport neumann_check(const FiberAssembler& asmb, const Vec2& k, cplx z, int terms = 10);

// ||sqrt|chi_alpha| P0|| on the truncated basis, with the bound
// alpha sqrt(|a| mass(profile)).
struct SqrtChiP0 {
  double norm = 0.0;
  double bound = 0.0;
};
SqrtChiP0 sqrt_chi_p0_norm(const FiberAssembler& asmb);

// || |chi_alpha|^{1/2} (h_k^0 - i)^{-1} |chi_alpha|^{1/2} ||.
double free_resolvent_sandwich(const FiberAssembler& asmb, const Vec2& k);

struct RootCheckOptions {
  double window_lo = -1.0;
  double window_hi = 1.0;
  int scan_points = 41;
  // Half-width of the z-scan. <= 0 selects lambda |Phi_perp| / 2 - ||B(0)||.
  double scan_halfwidth = 0.0;
  double norm_perp = 1.0;
};

struct RootCheckReport {
  int eigenvalues_in_window = 0;
  int checked = 0;
  double max_det_ratio = 0.0;   // max |det F(l)| / ||F(l)||^2 over checked eigenvalues
  double max_root_distance = 0.0;  // eigenvalue <-> root matching, both directions
  bool roots_ok = false;
  double scan_halfwidth = 0.0;
  double scan_min_singular = 0.0;
  double scan_threshold = 0.0;
  bool scan_ok = false;
  std::vector<double> scan_z;
  std::vector<double> scan_smin;
  std::vector<double> scan_bp0;
};

RootCheckReport feshbach_root_check(const FiberMatrix& h, const RootCheckOptions& opts);

// Schur criterion on random Hermitian n x n matrices with P the first p rows:
// in-window eigenvalues against the roots of det F_P.
struct RandomSchurReport {
  int trials = 0;
  int eigenvalues = 0;
  int roots = 0;
  double max_det_ratio = 0.0;
  double max_eig_to_root = 0.0;
  double max_root_to_eig = 0.0;
  bool ok = false;
};

RandomSchurReport random_schur_trials(int trials, int n, int p, std::uint64_t seed,
                                      double lo = -1.0, double hi = 1.0, double tol = 1e-8);

struct Bp0Cell {
  double alpha = 0.0;
  double beta = 0.0;
  double bp0_norm = 0.0;  // sup over the k set
  double sup_wru = 0.0;
  bool in_regime = true;
  double normalized = 0.0;  // bp0 / (alpha^{2+d'} beta^2)
  std::string error;
};

struct Bp0Scaling {
  std::vector<Bp0Cell> cells;
  std::vector<std::pair<double, double>> alpha_slopes;  // (beta, slope)
  std::vector<std::pair<double, double>> alpha_residuals;
  std::vector<std::pair<double, double>> beta_slopes;   // (alpha, slope)
  // |bp0/beta^2| relative difference of the two smallest betas, per alpha.
  std::vector<std::pair<double, double>> beta_limit;
  double uniform_c = 0.0;
  int excluded = 0;
};

std::vector<Vec2> default_bp0_kset();

Bp0Scaling bp0_scaling(const Dispersion& disp, const Potential& pot,
                       const std::vector<double>& betas, const std::vector<double>& alphas,
                       int cutoff, const std::vector<Vec2>& ks, cplx z = 0.0);

}  // namespace pauligap
