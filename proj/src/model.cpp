#include "pauligap/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <boost/math/special_functions/bessel.hpp>

#include "pauligap/error.hpp"
#include "pauligap/quadrature.hpp"
#include "pauligap/simd/kernels.hpp"

namespace pauligap {

namespace {

Mat32 plane_embedding() {
  Mat32 a = Mat32::Zero();
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  return a;
}

Eigen::Vector2d singular_values(const Mat32& a) {
  Eigen::JacobiSVD<Mat32> svd(a);
  return svd.singularValues();
}

void require_rank2(const Mat32& a) {
  auto sv = singular_values(a);
  if (!(sv(1) > 1e-12)) throw Error("linearization not rank 2");
}

std::string fmt_num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

Dispersion Dispersion::dirac() {
  Dispersion d;
  d.kind_ = DispersionKind::Dirac;
  d.d_ = 1.0;
  d.a_ = plane_embedding();
  return d;
}

Dispersion Dispersion::power(double dexp) {
  if (!(dexp > 0.0) || !std::isfinite(dexp)) throw Error("power dispersion: d must be positive");
  Dispersion d;
  d.kind_ = DispersionKind::Power;
  d.d_ = dexp;
  d.a_ = plane_embedding();
  return d;
}

Dispersion Dispersion::multilayer(int layers) {
  if (layers < 1) throw Error("multilayer dispersion: layers must be >= 1");
  Dispersion d;
  d.kind_ = DispersionKind::Multilayer;
  d.d_ = layers;
  d.layers_ = layers;
  d.a_ = plane_embedding();
  d.strict_ = layers == 1;
  return d;
}

Dispersion Dispersion::homogeneous(double dexp, const Mat32& a) {
  if (!(dexp > 0.0) || !std::isfinite(dexp)) throw Error("custom dispersion: d must be positive");
  require_rank2(a);
  auto sv = singular_values(a);
  Dispersion d;
  d.kind_ = DispersionKind::Custom;
  d.d_ = dexp;
  d.a_ = a;
  d.k0l_ = sv(1);
  d.k0u_ = sv(0);
  return d;
}

Dispersion Dispersion::custom(Fn f, double dexp, const Mat32& a, double k0_lower,
                              double k0_upper) {
  if (!f) throw Error("custom dispersion: empty evaluator");
  if (!(dexp > 0.0)) throw Error("custom dispersion: d must be positive");
  if (!(k0_lower > 0.0) || !(k0_upper >= k0_lower))
    throw Error("custom dispersion: need 0 < K0' <= K0");
  require_rank2(a);
  Dispersion d;
  d.kind_ = DispersionKind::Custom;
  d.d_ = dexp;
  d.a_ = a;
  d.k0l_ = k0_lower;
  d.k0u_ = k0_upper;
  d.fn_ = std::make_shared<const Fn>(std::move(f));
  return d;
}

Vec3 Dispersion::operator()(const Vec2& p) const {
  switch (kind_) {
    case DispersionKind::Dirac:
      return Vec3(p(0), p(1), 0.0);
    case DispersionKind::Power: {
      double r = p.norm();
      if (r == 0.0) return Vec3::Zero();
      double s = std::pow(r, d_ - 1.0);
      return Vec3(s * p(0), s * p(1), 0.0);
    }
    case DispersionKind::Multilayer: {
      cplx z(p(0), p(1)), w(1.0, 0.0);
      for (int i = 0; i < layers_; ++i) w *= z;
      return Vec3(w.real(), w.imag(), 0.0);
    }
    case DispersionKind::Custom: {
      if (fn_) return (*fn_)(p);
      double r = p.norm();
      if (r == 0.0) return Vec3::Zero();
      return std::pow(r, d_ - 1.0) * (a_ * p);
    }
  }
  return Vec3::Zero();
}

void Dispersion::eval_ring(double radius, const double* angles, const double* cos_t,
                           const double* sin_t, std::size_t n, double* fx, double* fy,
                           double* fz) const {
  if (kind_ == DispersionKind::Dirac || kind_ == DispersionKind::Power) {
    double s = kind_ == DispersionKind::Dirac ? radius : std::pow(radius, d_);
    for (std::size_t i = 0; i < n; ++i) {
      fx[i] = s * cos_t[i];
      fy[i] = s * sin_t[i];
      fz[i] = 0.0;
    }
    return;
  }
  if (kind_ == DispersionKind::Multilayer) {
    double s = std::pow(radius, layers_);
    for (std::size_t i = 0; i < n; ++i) {
      fx[i] = s * std::cos(layers_ * angles[i]);
      fy[i] = s * std::sin(layers_ * angles[i]);
      fz[i] = 0.0;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 f = (*this)(Vec2(radius * cos_t[i], radius * sin_t[i]));
    fx[i] = f(0);
    fy[i] = f(1);
    fz[i] = f(2);
  }
}

std::string Dispersion::tag() const {
  switch (kind_) {
    case DispersionKind::Dirac: return "dirac";
    case DispersionKind::Power: return "power(d=" + fmt_num(d_) + ")";
    case DispersionKind::Multilayer: return "multilayer-" + std::to_string(layers_);
    case DispersionKind::Custom: return "custom(d=" + fmt_num(d_) + ")";
  }
  return "?";
}

Vec3 eval_dispersion(const Dispersion& disp, const Vec2& p) { return disp(p); }

double check_sandwich(const Dispersion& disp, double rmin, double rmax, int n) {
  const int n_ang = 16;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double r = rmin * std::pow(rmax / rmin, n == 1 ? 0.0 : double(i) / (n - 1));
    double rd = std::pow(r, disp.exponent());
    for (int j = 0; j < n_ang; ++j) {
      double t = 2.0 * kPi * (j + 0.37) / n_ang;
      double f = disp(Vec2(r * std::cos(t), r * std::sin(t))).norm();
      worst = std::max(worst, disp.k0_lower() - f / rd);
      worst = std::max(worst, f / rd - disp.k0_upper());
    }
  }
  return worst;
}

double fit_remainder(const Dispersion& disp) {
  const int n_r = 60, n_ang = 32;
  const Mat32& a = disp.linearization();
  const double d = disp.exponent();
  double k = 0.0;
  for (int i = 0; i < n_r; ++i) {
    double r = 1e-4 * std::pow(1e3, double(i) / (n_r - 1));
    for (int j = 0; j < n_ang; ++j) {
      double t = 2.0 * kPi * (j + 0.5) / n_ang;
      Vec2 p(r * std::cos(t), r * std::sin(t));
      Vec3 lin = std::pow(r, d - 1.0) * (a * p);
      k = std::max(k, (disp(p) - lin).norm() / std::pow(r, d + 1.0));
    }
  }
  return k;
}

// ---------------------------------------------------------------- Potential

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - (kPi * x) * (kPi * x) / 6.0;
  return std::sin(kPi * x) / (kPi * x);
}

double bump_profile(double rho, double w) {
  if (rho >= w) return 0.0;
  double t = rho / w;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

}  // namespace

Potential Potential::square(double side, const Vec3& amps) {
  if (!(side > 0.0) || side > 1.0) throw Error("square side must lie in (0, 1] (support inside the cell)");
  Potential p;
  p.shape_ = Shape::Square;
  p.size_ = side;
  p.amps_ = amps;
  return p;
}

Potential Potential::disk(double radius, const Vec3& amps) {
  if (!(radius > 0.0) || radius > 0.5) throw Error("disk radius must lie in (0, 0.5] (support inside the cell)");
  Potential p;
  p.shape_ = Shape::Disk;
  p.size_ = radius;
  p.amps_ = amps;
  return p;
}

Potential Potential::bump(double radius, const Vec3& amps, int quad_order) {
  if (!(radius > 0.0) || radius > 0.5) throw Error("bump radius must lie in (0, 0.5] (support inside the cell)");
  if (quad_order < 4) throw Error("bump quadrature order must be >= 4");
  Potential p;
  p.shape_ = Shape::Bump;
  p.size_ = radius;
  p.amps_ = amps;
  p.order_ = quad_order;
  return p;
}

Potential Potential::tabulated(int n, std::vector<double> cells, const Vec3& amps) {
  if (n < 1) throw Error("tabulated potential: grid size must be positive");
  if (cells.size() != std::size_t(n) * std::size_t(n))
    throw Error("tabulated potential: expected " + std::to_string(n * n) + " cell values");
  for (double v : cells)
    if (!std::isfinite(v)) throw Error("tabulated potential: non-finite cell value");
  Potential p;
  p.shape_ = Shape::Tabulated;
  p.grid_n_ = n;
  p.size_ = 1.0;
  p.amps_ = amps;
  p.cells_ = std::make_shared<const std::vector<double>>(std::move(cells));
  return p;
}

Potential Potential::with_amplitudes(const Vec3& amps) const {
  Potential p = *this;
  p.amps_ = amps;
  return p;
}

std::string Potential::tag() const {
  switch (shape_) {
    case Shape::Square: return "square(s=" + fmt_num(size_) + ")";
    case Shape::Disk: return "disk(r=" + fmt_num(size_) + ")";
    case Shape::Bump: return "bump(r=" + fmt_num(size_) + ")";
    case Shape::Tabulated: return "tabulated(" + std::to_string(grid_n_) + "x" + std::to_string(grid_n_) + ")";
  }
  return "?";
}

double Potential::profile(const Vec2& x) const {
  switch (shape_) {
    case Shape::Square:
      return (std::abs(x(0)) <= 0.5 * size_ && std::abs(x(1)) <= 0.5 * size_) ? 1.0 : 0.0;
    case Shape::Disk:
      return x.norm() <= size_ ? 1.0 : 0.0;
    case Shape::Bump:
      return bump_profile(x.norm(), size_);
    case Shape::Tabulated: {
      int n = grid_n_;
      int i = static_cast<int>(std::floor((x(0) + 0.5) * n));
      int j = static_cast<int>(std::floor((x(1) + 0.5) * n));
      if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
      return (*cells_)[std::size_t(i) * n + j];
    }
  }
  return 0.0;
}

cplx Potential::quad_fourier(const Vec2& q, int order) const {
  // Radial profile: 2 pi int_0^w s(rho) J0(2 pi |q| rho) rho d rho.
  const Rule& r = gauss_legendre_cached(order);
  const double w = size_, k = 2.0 * kPi * q.norm();
  double acc = integrate(r, 0.0, w, [&](double rho) {
    double j0 = k == 0.0 ? 1.0 : boost::math::cyl_bessel_j(0, k * rho);
    return bump_profile(rho, w) * j0 * rho;
  });
  return 2.0 * kPi * acc;
}

cplx Potential::profile_fourier(const Vec2& q) const {
  switch (shape_) {
    case Shape::Square:
      return size_ * size_ * sinc(size_ * q(0)) * sinc(size_ * q(1));
    case Shape::Disk: {
      double qn = q.norm();
      if (qn * size_ < 1e-9) return kPi * size_ * size_;
      return size_ * boost::math::cyl_bessel_j(1, 2.0 * kPi * size_ * qn) / qn;
    }
    case Shape::Bump: {
      cplx lo = quad_fourier(q, order_);
      cplx hi = quad_fourier(q, 2 * order_);
      if (std::abs(hi - lo) > 1e-10 * profile_mass())
        throw Error("quadrature non-convergence: bump Fourier coefficient at q=(" +
                    std::to_string(q(0)) + "," + std::to_string(q(1)) + ") changed by " +
                    std::to_string(std::abs(hi - lo)) + " under order doubling");
      return hi;
    }
    case Shape::Tabulated: {
      const int n = grid_n_;
      const double h = 1.0 / n;
      std::vector<cplx> e1(n), e2(n);
      for (int i = 0; i < n; ++i) {
        double c = -0.5 + (i + 0.5) * h;
        e1[i] = std::exp(cplx(0.0, -2.0 * kPi * q(0) * c));
        e2[i] = std::exp(cplx(0.0, -2.0 * kPi * q(1) * c));
      }
      cplx acc = 0.0;
      for (int i = 0; i < n; ++i) {
        cplx row = 0.0;
        for (int j = 0; j < n; ++j) row += (*cells_)[std::size_t(i) * n + j] * e2[j];
        acc += e1[i] * row;
      }
      return acc * h * h * sinc(h * q(0)) * sinc(h * q(1));
    }
  }
  return 0.0;
}

double Potential::profile_mass() const {
  switch (shape_) {
    case Shape::Square: return size_ * size_;
    case Shape::Disk: return kPi * size_ * size_;
    case Shape::Bump: {
      auto mass = [&](int order) {
        const Rule& r = gauss_legendre_cached(order);
        return 2.0 * kPi * integrate(r, 0.0, size_, [&](double rho) { return bump_profile(rho, size_) * rho; });
      };
      double lo = mass(order_), hi = mass(2 * order_);
      if (std::abs(hi - lo) > 1e-10 * std::abs(hi))
        throw Error("quadrature non-convergence: bump moment changed by " +
                    std::to_string(std::abs(hi - lo)) + " under order doubling");
      return hi;
    }
    case Shape::Tabulated: {
      double s = 0.0;
      for (double v : *cells_) s += v;
      return s / (double(grid_n_) * grid_n_);
    }
  }
  return 0.0;
}

Vec3 flux_moments(const Potential& pot) { return pot.amplitudes() * pot.profile_mass(); }

void validate(const Params& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 0.5)) throw Error("alpha must lie in (0, 0.5]");
  if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) throw Error("beta must be a finite non-negative number");
}

// ------------------------------------------------------------------ Flux

FluxDecomposition project_flux(const Vec3& phi, const Mat32& a) {
  Eigen::JacobiSVD<Mat32> svd(a, Eigen::ComputeThinU);
  if (!(svd.singularValues()(1) > 1e-12)) throw Error("linearization not rank 2");
  // Householder QR gives an orthonormal basis of Ran(A).
  Eigen::HouseholderQR<Mat32> qr(a);
  Eigen::Matrix3d q = qr.householderQ();
  Vec3 u1 = q.col(0), u2 = q.col(1);
  FluxDecomposition f;
  f.phi = phi;
  f.phi_par = u1 * u1.dot(phi) + u2 * u2.dot(phi);
  f.phi_perp = phi - f.phi_par;
  f.norm_perp = f.phi_perp.norm();
  return f;
}

GapConstants gap_constants(const Dispersion& disp, const FluxDecomposition& flux) {
  if (!(flux.norm_perp > 0.0)) throw Error("no transverse flux; Theorem 1 inapplicable");
  const double d = disp.exponent();
  GapConstants g;
  g.M = std::pow((flux.phi.norm() + 0.5 * flux.norm_perp) / disp.k0_lower(), 1.0 / d);
  g.K_rem = fit_remainder(disp);
  g.certified = disp.hypothesis_iii_strict();
  if (g.K_rem <= 1e-14)
    g.lambda0 = std::numeric_limits<double>::infinity();
  else
    g.lambda0 = std::pow(flux.norm_perp / (2.0 * g.K_rem * std::pow(g.M, d + 1.0)), d);
  return g;
}

double inf_check(const Dispersion& disp, const FluxDecomposition& flux, double lambda,
                 InfGrid grid) {
  if (lambda < 0.0) throw Error("inf_check: lambda must be non-negative");
  const Vec3 shift = lambda * flux.phi;
  double best = (disp(Vec2::Zero()) + shift).norm();
  if (lambda == 0.0) return best;
  const double d = disp.exponent();
  const double m = std::pow((flux.phi.norm() + 0.5 * flux.norm_perp) / disp.k0_lower(), 1.0 / d);
  const double scale = std::pow(lambda, 1.0 / d);
  const double r_lo = scale * 1e-3, r_hi = std::max(2.0 * m * scale, 10.0);
  const int na = grid.angles;
  std::vector<double> ang(na), c(na), s(na), fx(na), fy(na), fz(na);
  for (int j = 0; j < na; ++j) {
    ang[j] = 2.0 * kPi * j / na;
    c[j] = std::cos(ang[j]);
    s[j] = std::sin(ang[j]);
  }
  const auto& k = simd::kernels();
  for (int i = 0; i < grid.radii; ++i) {
    double r = r_lo * std::pow(r_hi / r_lo, grid.radii == 1 ? 0.0 : double(i) / (grid.radii - 1));
    disp.eval_ring(r, ang.data(), c.data(), s.data(), na, fx.data(), fy.data(), fz.data());
    best = std::min(best, k.min_shifted_norm(fx.data(), fy.data(), fz.data(), na, shift(0),
                                             shift(1), shift(2)));
  }
  return best;
}

}  // namespace pauligap
