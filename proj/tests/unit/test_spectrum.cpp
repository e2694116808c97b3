#include <cmath>
#include <limits>

#include "doctest.h"
#include "pauligap/error.hpp"
#include "pauligap/spectrum.hpp"

using namespace pauligap;

TEST_CASE("eigensolve") {
  auto r = eigensolve(MatXc(0.01 * pauli(2)));
  CHECK(r.values(0) == doctest::Approx(-0.01));
  CHECK(r.values(1) == doctest::Approx(0.01));
  r = eigensolve(MatXc(sigma_dot(Vec3(3, 4, 0))));
  CHECK(r.values(0) == doctest::Approx(-5.0));
  CHECK(r.values(1) == doctest::Approx(5.0));

  EigenOptions eo;
  eo.spot_checks = 3;
  const auto h = assemble_fiber(Vec2(0.1, 0.2), 3, Dispersion::dirac(), Potential::square(1, Vec3(0, 0, 1)),
                                Params{0.2, 0.5});
  CHECK(eigensolve(h, eo).max_residual < 1e-10);
}

TEST_CASE("kgrid") {
  const auto ks = kgrid(4);
  REQUIRE(ks.size() == 16);
  CHECK(ks.front() == Vec2(-0.25, -0.25));
  CHECK(ks[1] == Vec2(-0.25, 0.0));
  CHECK(ks.back() == Vec2(0.5, 0.5));
  CHECK_THROWS_AS(kgrid(1), Error);
}

TEST_CASE("gap detection on a toy structure") {
  BandStructure bs;
  bs.k = {Vec2(0, 0)};
  VecX v(4);
  v << -1, -0.01, 0.01, 1;
  bs.bands = {v};
  bs.meta.params = Params{0.1, 0.2};
  const auto g = detect_gap(bs, 0.0);
  CHECK(g.lower == -0.01);
  CHECK(g.upper == 0.01);
  CHECK(g.width == doctest::Approx(0.02));
  CHECK(std::isnan(g.ratio));
  CHECK_THROWS_AS(detect_gap(bs, 5.0), Error);
}

TEST_CASE("free spectrum is gapless and symmetric") {
  const auto d = Dispersion::dirac();
  const auto bs = band_structure(d, Potential::square(1, Vec3(0, 0, 1)), Params{0.1, 0.0}, 2, 4);
  const auto g = detect_gap(bs, 0.0);
  CHECK(g.width <= 1e-12);
  for (const auto& ev : bs.bands)
    for (Eigen::Index i = 0; i < ev.size(); ++i) CHECK(std::abs(ev(i) + ev(ev.size() - 1 - i)) < 1e-12);
  double best = 1e300;
  Vec2 arg;
  for (std::size_t i = 0; i < bs.k.size(); ++i)
    for (Eigen::Index j = 0; j < bs.bands[i].size(); ++j)
      if (bs.bands[i](j) >= 0 && bs.bands[i](j) < best) {
        best = bs.bands[i](j);
        arg = bs.k[i];
      }
  CHECK(best < 1e-14);
  CHECK(arg.norm() == 0.0);
}

TEST_CASE("convergence check") {
  const auto d = Dispersion::dirac();
  const auto pot = Potential::square(1, Vec3(0, 0, 1));
  auto r = convergence_check(Vec2(0.2, 0.1), d, pot, Params{0.1, 0.0}, 3);
  CHECK(r.delta <= 1e-12);
  r = convergence_check(Vec2(0.2, 0.1), d, pot, Params{0.1, 0.2}, 2, std::numeric_limits<double>::infinity());
  CHECK(r.converged);
}

TEST_CASE("line fits") {
  const auto f = fit_loglog({1, 2, 4, 8}, {3, 12, 48, 192});
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.residual < 1e-14);
  CHECK_THROWS_AS(fit_line({1}, {2}), Error);
}

TEST_CASE("sweep with no alphas") {
  const auto r = sweep(Dispersion::dirac(), Potential::square(1, Vec3(0, 0, 1)), {}, {0.2}, 2, 4);
  CHECK(r.rows.empty());
  CHECK(r.alpha_slopes.empty());
}

TEST_CASE("kinetic minimum") {
  const auto km = kinetic_minimum(Dispersion::dirac(), 8, 2);
  CHECK(std::abs(km.value - kPi) < 1e-12);
  CHECK(std::min(std::abs(km.k(0)), std::abs(km.k(1))) == 0.0);
  CHECK(std::max(std::abs(km.k(0)), std::abs(km.k(1))) == 0.5);
  const auto k2 = kinetic_minimum(Dispersion::power(2.0), 8, 2);
  CHECK(k2.value >= kPi * kPi - 1e-9);
}

TEST_CASE("standard cell is converged at N=8") {
  // Reference from a direct N=16 solve at k=0: width 0.0039999363.
  const auto d = Dispersion::dirac();
  const auto pot = Potential::square(1, Vec3(0, 0, 1));
  const auto r = convergence_check(Vec2(0, 0), d, pot, Params{0.1, 0.2}, 8);
  CHECK(r.delta < 1e-6);
  const VecX ev = eigensolve(assemble_fiber(Vec2(0, 0), 8, d, pot, Params{0.1, 0.2})).values;
  double a = -1e9, b = 1e9;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0) a = std::max(a, ev(i));
    else b = std::min(b, ev(i));
  }
  CHECK(b - a == doctest::Approx(0.0039999363).epsilon(1e-7));
}
