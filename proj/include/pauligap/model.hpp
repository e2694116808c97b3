#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "pauligap/linalg.hpp"

namespace pauligap {

enum class DispersionKind { Dirac, Power, Multilayer, Custom };

// Symbol F : R^2 -> R^3 of the kinetic term sigma . F(-i grad), with
// homogeneity exponent d, linearization F(p) ~ |p|^{d-1} A p near 0, and
// sandwich constants K0' |p|^d <= |F(p)| <= K0 |p|^d.
class Dispersion {
 public:
  using Fn = std::function<Vec3(const Vec2&)>;

  static Dispersion dirac();
  static Dispersion power(double d);
  static Dispersion multilayer(int layers);
  // F(p) = |p|^{d-1} A p; K0', K0 are the extreme singular values of A.
  static Dispersion homogeneous(double d, const Mat32& a);
  // Arbitrary evaluator. The caller vouches for the constants; invariants
  // can be checked with check_sandwich and fit_remainder.
  static Dispersion custom(Fn f, double d, const Mat32& a, double k0_lower, double k0_upper);

  Vec3 operator()(const Vec2& p) const;

  // F at p = radius * (cos t_i, sin t_i) for a ring of angles. cos/sin hold
  // the angle tables; multiples of the angle are needed by the multilayer
  // preset, which is why the angles themselves are passed too.
  void eval_ring(double radius, const double* angles, const double* cos_t, const double* sin_t,
                 std::size_t n, double* fx, double* fy, double* fz) const;

  DispersionKind kind() const { return kind_; }
  double exponent() const { return d_; }
  double d_prime() const { return d_ < 2.0 ? d_ : 2.0; }
  const Mat32& linearization() const { return a_; }
  double k0_lower() const { return k0l_; }
  double k0_upper() const { return k0u_; }
  int layers() const { return layers_; }
  // False for presets whose linearization holds only after an
  // angle-dependent rotation (multilayer with N >= 2).
  bool hypothesis_iii_strict() const { return strict_; }
  std::string tag() const;

 private:
  Dispersion() = default;
  DispersionKind kind_ = DispersionKind::Dirac;
  double d_ = 1.0;
  int layers_ = 1;
  Mat32 a_ = Mat32::Zero();
  double k0l_ = 1.0, k0u_ = 1.0;
  bool strict_ = true;
  std::shared_ptr<const Fn> fn_;
};

Vec3 eval_dispersion(const Dispersion& disp, const Vec2& p);

// Largest violation of K0'|p|^d <= |F(p)| <= K0|p|^d on n log-spaced radii
// in [rmin, rmax] (times a few angles), relative to |p|^d. <= 0 means holds.
double check_sandwich(const Dispersion& disp, double rmin = 1e-3, double rmax = 1e3, int n = 100);

// max |F(p) - |p|^{d-1} A p| / |p|^{d+1} over sampled |p| in [1e-4, 1e-1].
double fit_remainder(const Dispersion& disp);

enum class Shape { Square, Disk, Bump, Tabulated };

// chi = amplitudes * s(x) with a common profile s supported in the cell
// (-1/2, 1/2]^2.
class Potential {
 public:
  static Potential square(double side, const Vec3& amps);
  static Potential disk(double radius, const Vec3& amps);
  // s(x) = exp(1 - 1/(1 - |x|^2/w^2)) for |x| < w.
  static Potential bump(double radius, const Vec3& amps, int quad_order = 64);
  // n x n piecewise-constant cells over the unit cell, row-major in (x1, x2)
  // starting at the (-1/2, -1/2) corner.
  static Potential tabulated(int n, std::vector<double> cells, const Vec3& amps);

  Shape shape() const { return shape_; }
  bool is_indicator() const { return shape_ == Shape::Square || shape_ == Shape::Disk; }
  const Vec3& amplitudes() const { return amps_; }
  double size() const { return size_; }  // side (square), radius (disk/bump)
  int quad_order() const { return order_; }
  std::string tag() const;

  double profile(const Vec2& x) const;
  Vec3 value(const Vec2& x) const { return amps_ * profile(x); }
  // Fourier transform of the profile, int s(y) e^{-2 pi i q.y} dy.
  cplx profile_fourier(const Vec2& q) const;
  CVec3 fourier(const Vec2& q) const { return amps_.cast<cplx>() * profile_fourier(q); }
  // Integral of the profile over the cell.
  double profile_mass() const;

  // Same shape with amplitudes replaced.
  Potential with_amplitudes(const Vec3& amps) const;

 private:
  Potential() = default;
  cplx quad_fourier(const Vec2& q, int order) const;
  Shape shape_ = Shape::Square;
  Vec3 amps_ = Vec3::Zero();
  double size_ = 1.0;
  int order_ = 64;
  int grid_n_ = 0;
  std::shared_ptr<const std::vector<double>> cells_;
};

// Phi_i = int chi_i.
Vec3 flux_moments(const Potential& pot);

struct Params {
  double alpha = 0.1;
  double beta = 0.2;
  double lambda() const { return alpha * alpha * beta; }
};
void validate(const Params& p);

struct FluxDecomposition {
  Vec3 phi = Vec3::Zero();
  Vec3 phi_par = Vec3::Zero();
  Vec3 phi_perp = Vec3::Zero();
  double norm_perp = 0.0;
};

FluxDecomposition project_flux(const Vec3& phi, const Mat32& a);

struct GapConstants {
  double M = 0.0;
  double K_rem = 0.0;
  double lambda0 = std::numeric_limits<double>::infinity();
  bool certified = true;  // false when the dispersion is not strictly linearizable
};

GapConstants gap_constants(const Dispersion& disp, const FluxDecomposition& flux);

struct InfGrid {
  int radii = 512;
  int angles = 256;
};

// min over a polar grid (plus p = 0) of |F(p) + lambda Phi|.
double inf_check(const Dispersion& disp, const FluxDecomposition& flux, double lambda,
                 InfGrid grid = {});

}  // namespace pauligap
