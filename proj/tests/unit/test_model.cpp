#include <cmath>
#include <complex>

#include <Eigen/LU>

#include "doctest.h"

#include "pauligap/error.hpp"
#include "pauligap/model.hpp"

using namespace pauligap;

TEST_CASE("dispersion presets") {
  const auto d = Dispersion::dirac();
  CHECK(d(Vec2(0, 0)).norm() == 0.0);
  CHECK((d(Vec2(2 * kPi, 0)) - Vec3(2 * kPi, 0, 0)).norm() < 1e-15);

  // (1 + i)^2 = 2i, via std::complex as the oracle.
  const auto ml = Dispersion::multilayer(2);
  const std::complex<double> w = std::pow(std::complex<double>(1, 1), 2);
  CHECK((ml(Vec2(1, 1)) - Vec3(w.real(), w.imag(), 0)).norm() < 1e-14);
  CHECK((ml(Vec2(1, 1)) - Vec3(0, 2, 0)).norm() < 1e-14);
  CHECK_FALSE(ml.hypothesis_iii_strict());
  CHECK(Dispersion::multilayer(1).hypothesis_iii_strict());

  for (int layers = 1; layers <= 4; ++layers) {
    const auto m = Dispersion::multilayer(layers);
    const std::complex<double> z(0.3, -0.7), zn = std::pow(z, layers);
    CHECK((m(Vec2(z.real(), z.imag())) - Vec3(zn.real(), zn.imag(), 0)).norm() < 1e-14);
  }
}

TEST_CASE("sandwich bounds hold for presets") {
  CHECK(check_sandwich(Dispersion::dirac()) <= 1e-12);
  CHECK(check_sandwich(Dispersion::power(2.0)) <= 1e-12);
  CHECK(check_sandwich(Dispersion::power(1.5)) <= 1e-12);
  CHECK(check_sandwich(Dispersion::multilayer(3)) <= 1e-12);
  Mat32 a;
  a << 2, 0, 0, 1, 1, 0;
  CHECK(check_sandwich(Dispersion::homogeneous(1.0, a)) <= 1e-12);
}

TEST_CASE("flux moments") {
  CHECK((flux_moments(Potential::square(1.0, Vec3(0, 0, 1))) - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK(std::abs(flux_moments(Potential::disk(0.25, Vec3(0, 0, 1)))(2) - kPi / 16) < 1e-15);
  CHECK((flux_moments(Potential::square(1.0, Vec3(0.5, 0, 0.5))) - Vec3(0.5, 0, 0.5)).norm() < 1e-15);

  // Bump mass against an independent 1-D radial Simpson rule.
  const double w = 0.3;
  const int n = 20000;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = w * i / n;
    const double t = r / w;
    const double f = t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) * 2 * kPi * r : 0.0;
    s += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
  }
  s *= w / n / 3.0;
  CHECK(std::abs(flux_moments(Potential::bump(w, Vec3(0, 0, 1)))(2) - s) < 1e-9);

  // Tabulated cells: one lit cell of a 4x4 grid carries 1/16.
  std::vector<double> cells(16, 0.0);
  cells[5] = 1.0;
  CHECK(std::abs(flux_moments(Potential::tabulated(4, cells, Vec3(0, 0, 2)))(2) - 2.0 / 16) < 1e-15);
}

TEST_CASE("fourier transform at zero equals the flux") {
  for (const auto& pot : {Potential::square(0.5, Vec3(1, 0, 2)), Potential::disk(0.3, Vec3(0, 1, 0)),
                          Potential::bump(0.4, Vec3(0, 0, 1))}) {
    const CVec3 f0 = pot.fourier(Vec2(0, 0));
    CHECK((f0.real() - flux_moments(pot)).norm() < 1e-10);
    CHECK(f0.imag().norm() < 1e-14);
  }
}

TEST_CASE("project_flux") {
  Mat32 plane;
  plane << 1, 0, 0, 1, 0, 0;
  auto f = project_flux(Vec3(0.1, 0.2, 0.3), plane);
  CHECK((f.phi_par - Vec3(0.1, 0.2, 0)).norm() < 1e-15);
  CHECK((f.phi_perp - Vec3(0, 0, 0.3)).norm() < 1e-15);

  f = project_flux(Vec3::Zero(), plane);
  CHECK(f.phi_par.norm() == 0.0);
  CHECK(f.phi_perp.norm() == 0.0);

  // Oracle: least-squares projection P = A (A^T A)^{-1} A^T.
  Mat32 a;
  a << 1 / std::sqrt(2.0), 0, 0, 1, 1 / std::sqrt(2.0), 0;
  const Eigen::Matrix3d proj = a * (a.transpose() * a).inverse() * a.transpose();
  f = project_flux(Vec3(1, 0, 0), a);
  CHECK((f.phi_par - proj * Vec3(1, 0, 0)).norm() < 1e-14);
  CHECK((f.phi_par - Vec3(0.5, 0, 0.5)).norm() < 1e-14);
  CHECK((f.phi_perp - Vec3(0.5, 0, -0.5)).norm() < 1e-14);

  const auto again = project_flux(f.phi_par, a);
  CHECK(again.norm_perp < 1e-15);

  Mat32 rank1;
  rank1 << 1, 2, 0, 0, 0, 0;
  CHECK_THROWS_WITH_AS(project_flux(Vec3(1, 0, 0), rank1), "linearization not rank 2", Error);
}

TEST_CASE("gap constants") {
  const auto flux = project_flux(Vec3(0, 0, 1), Dispersion::dirac().linearization());
  const auto gc = gap_constants(Dispersion::dirac(), flux);
  CHECK(gc.M == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::isinf(gc.lambda0));

  const auto g2 = gap_constants(Dispersion::power(2.0), flux);
  CHECK(g2.M == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));

  const auto none = project_flux(Vec3(1, 0, 0), Dispersion::dirac().linearization());
  CHECK_THROWS_WITH_AS(gap_constants(Dispersion::dirac(), none),
                       "no transverse flux; Theorem 1 inapplicable", Error);
}

TEST_CASE("inf_check") {
  const auto d = Dispersion::dirac();
  const auto f001 = project_flux(Vec3(0, 0, 1), d.linearization());
  CHECK(inf_check(d, f001, 0.0) == 0.0);
  CHECK(inf_check(d, f001, 0.01) == doctest::Approx(0.01).epsilon(1e-12));
  // Minimizer p = (-0.01, 0) sits between grid radii; the grid value can
  // only exceed the exact infimum.
  const auto f101 = project_flux(Vec3(1, 0, 1), d.linearization());
  const double v = inf_check(d, f101, 0.01);
  CHECK(v >= 0.01 * (1 - 1e-12));
  CHECK(v <= 0.01 * (1 + 1e-3));

  // Infimum bound for lambda up to min(lambda0, 1).
  for (const auto& disp : {Dispersion::dirac(), Dispersion::power(2.0)}) {
    const auto fl = project_flux(Vec3(0.3, 0.1, 1), disp.linearization());
    const auto gc = gap_constants(disp, fl);
    const double lmax = std::min(gc.lambda0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double lam = lmax * i / 19.0;
      CHECK(inf_check(disp, fl, lam) >= 0.5 * lam * fl.norm_perp - 1e-12);
    }
  }
}

TEST_CASE("params validation") {
  CHECK_THROWS_WITH_AS(validate(Params{0.6, 0.2}), "alpha must lie in (0, 0.5]", Error);
  CHECK_THROWS_AS(validate(Params{0.1, -1.0}), Error);
  CHECK_NOTHROW(validate(Params{0.5, 0.0}));
}
