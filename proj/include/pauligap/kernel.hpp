#pragma once

#include <array>
#include <string>
#include <vector>

#include "pauligap/linalg.hpp"
#include "pauligap/model.hpp"

namespace pauligap {

// G(p) = (sigma . F(p) - i)^{-1} = (sigma . F(p) + i) / (1 + |F(p)|^2).
class GreenSymbol {
 public:
  explicit GreenSymbol(Dispersion disp) : disp_(std::move(disp)) {}
  Mat2c operator()(const Vec2& p) const;
  // ||(sigma . F(p) - i) G(p) - I||
  double identity_residual(const Vec2& p) const;
  const Dispersion& dispersion() const { return disp_; }

 private:
  Dispersion disp_;
};

// Short-range power or log singularity for r < 1, cubic tail for r >= 1.
double envelope_md(double r, double d);

struct KernelOptions {
  int max_doublings = 14;
  double rel_tol = 1e-6;       // relative to |value| + envelope
  double angular_tol = 1e-14;  // relative change of harmonics under doubling
  double cut = 1e-12;          // radial truncation where e^{-eps <p>} < cut
  // Kernel of (H0 + i)^{-1} instead of (H0 - i)^{-1}.
  bool plus_i = false;
};

// Radial pieces of the kernel. With p = rho (cos t, sin t) and the angular
// Fourier coefficients g_{c,m}(rho) of the symbol components (c = 0 the
// coefficient of +-i I, c = 1..3 of sigma_c),
//   v_{c,m} = int_0^inf rho J_m(rho r) g_{c,m}(rho) e^{-eps <rho>} d rho,
// stored for m >= 0; negative m follow from reality of the components.
struct KernelHarmonics {
  double r = 0.0;
  double eps = 0.0;
  bool plus_i = false;
  std::vector<std::array<cplx, 4>> v;  // index m
  double error = 0.0;
  std::string worst_region;
  int doublings = 0;
  int max_angular_points = 0;
  long panels = 0;

  // 2x2 kernel value in the direction phi.
  Mat2c at(double phi) const;
  // Component c (0..3) in the direction phi.
  cplx component(int c, double phi) const;
};

KernelHarmonics kernel_harmonics(const Dispersion& disp, double r, double eps,
                                 const KernelOptions& opts = {});

struct KernelSample {
  Vec2 delta = Vec2::Zero();
  double r = 0.0;
  double eps = 0.0;
  Mat2c value = Mat2c::Zero();
  double quadrature_error = 0.0;
  std::string worst_region;
  int doublings = 0;
};

KernelSample eval_kernel(const Dispersion& disp, const Vec2& delta, double eps,
                         const KernelOptions& opts = {});

struct DecayRow {
  double r = 0.0;
  double value_norm = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  double quadrature_error = 0.0;
  double value_norm_half_eps = -1.0;  // filled when the stability pass runs
  double stability = -1.0;            // relative change under eps -> eps / 2
};

struct DecayReport {
  double eps = 0.0;
  double d = 1.0;
  std::vector<DecayRow> rows;
  double short_slope = 0.0;  // log |K| vs log r on [1e-3, 1e-1]
  int short_points = 0;
  double c_fit = 0.0;        // sup |K| / M_d
  double median_tail_ratio = 0.0;
  double max_tail_ratio = 0.0;
  bool tail_ok = true;       // no r >= 1 sample above 10x median ratio
  double max_stability = -1.0;
};

// Samples along the first axis. stability_rmax > 0 also evaluates eps / 2 for
// radii in [1e-2, stability_rmax].
DecayReport decay_report(const Dispersion& disp, const std::vector<double>& radii, double eps,
                         double stability_rmax = 0.0, const KernelOptions& opts = {});

// Default radii: 20 log-spaced in [1e-3, 1e-1] plus a coarse set up to 16.
std::vector<double> default_decay_radii();

// Lattice-sum check of the fiber identity. For q = m - k,
//   (1/2pi) sum_{|gamma|_inf <= gmax} int_{Omega + gamma} e^{-2 pi i q.y} K_eps(y) dy
// must reproduce G(2 pi q) e^{-eps <2 pi q>}; the 1/2pi converts the kernel
// normalization above to the operator kernel.
struct LatticeCase {
  Eigen::Vector2i m = Eigen::Vector2i::Zero();
  Vec2 k = Vec2::Zero();
  int j = 0;
  double rel_error = 0.0;
  double rel_error_unregularized = 0.0;
};

struct LatticeSumReport {
  double eps = 0.0;
  int gamma_max = 6;
  std::vector<LatticeCase> cases;
  double max_rel_error = 0.0;
};

LatticeSumReport lattice_sum_check(const Dispersion& disp, double eps, int gamma_max,
                                   const std::vector<Eigen::Vector2i>& ms,
                                   const std::vector<Vec2>& ks);

}  // namespace pauligap
