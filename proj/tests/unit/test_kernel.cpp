#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "pauligap/error.hpp"
#include "pauligap/kernel.hpp"

using namespace pauligap;

namespace {

// Dirac kernel by an independent route: with rho = sqrt(r^2 + s^2),
//   scalar part  i S(r),   S(r)  = int_eps^inf e^{-rho} / rho ds
//   vector part -i S'(r) sigma . y^,  S'(r) = -r int_eps^inf e^{-rho}(rho + 1)/rho^3 ds
Mat2c dirac_oracle(const Vec2& delta, double eps) {
  const double r = delta.norm();
  boost::math::quadrature::exp_sinh<double> q;
  auto rho = [r](double t) { return std::sqrt(r * r + t * t); };
  const double s = q.integrate([&](double u) { double p = rho(eps + u); return std::exp(-p) / p; });
  const double sp = -r * q.integrate([&](double u) {
    double p = rho(eps + u);
    return std::exp(-p) * (p + 1) / (p * p * p);
  });
  const Vec2 y = delta / r;
  return kI * s * Mat2c::Identity() - kI * sp * (y(0) * pauli(0) + y(1) * pauli(1));
}

}  // namespace

TEST_CASE("envelope M_d") {
  CHECK(envelope_md(0.1, 1.0) == doctest::Approx(11.0).epsilon(1e-14));
  CHECK(envelope_md(0.5, 2.0) == doctest::Approx(1.6931471805599454).epsilon(1e-14));
  CHECK(envelope_md(2.0, 1.0) == 0.125);
  CHECK(envelope_md(2.0, 3.0) == 0.125);
}

TEST_CASE("Green symbol identity") {
  for (const auto& d : {Dispersion::dirac(), Dispersion::power(2.0), Dispersion::multilayer(3)}) {
    const GreenSymbol g(d);
    for (double rho : {1e-4, 0.3, 1.0, 17.0, 1e3})
      for (int a = 0; a < 8; ++a)
        CHECK(g.identity_residual(Vec2(rho * std::cos(a * 0.7), rho * std::sin(a * 0.7))) <= 1e-13);
  }
}

TEST_CASE("Dirac kernel against the one-dimensional oracle") {
  const auto d = Dispersion::dirac();
  for (double eps : {1e-3, 1e-2})
    for (double r : {0.02, 0.3, 1.0, 3.0}) {
      const Vec2 delta(0.6 * r, -0.8 * r);
      const auto s = eval_kernel(d, delta, eps);
      const Mat2c o = dirac_oracle(delta, eps);
      CHECK((s.value - o).norm() <= 2e-6 * (o.norm() + envelope_md(r, 1.0)));
    }
  // Unregularized limit: i K0(r) + i K1(r) sigma . y^.
  const double r = 0.7;
  const Mat2c k0 = kI * boost::math::cyl_bessel_k(0, r) * Mat2c::Identity() +
                   kI * boost::math::cyl_bessel_k(1, r) * pauli(0);
  CHECK((eval_kernel(d, Vec2(r, 0), 1e-4).value - k0).norm() < 1e-3 * k0.norm());
}

TEST_CASE("kernel reflection") {
  // K(-delta)^dagger is the (H0 + i)^{-1} kernel at delta; for odd F, K(-delta)
  // is also K(delta) with the sign of the sigma part flipped.
  KernelOptions plus;
  plus.plus_i = true;
  for (const auto& d : {Dispersion::dirac(), Dispersion::multilayer(2)}) {
    const Vec2 delta(0.3, -0.45);
    const Mat2c km = eval_kernel(d, -delta, 1e-2).value;
    const Mat2c kp = eval_kernel(d, delta, 1e-2, plus).value;
    CHECK((km.adjoint() - kp).norm() <= 1e-8 * kp.norm());
  }
  const auto d = Dispersion::dirac();
  const Vec2 delta(0.25, 0.1);
  const Mat2c kd = eval_kernel(d, delta, 1e-2).value;
  const Mat2c kn = eval_kernel(d, -delta, 1e-2).value;
  const Mat2c scalar = 0.5 * Mat2c::Identity() * kd.trace();
  CHECK((kn - (2.0 * scalar - kd)).norm() <= 1e-10 * kd.norm());
  // The conjugate transpose is a different matrix in general.
  CHECK((kn - kd.adjoint()).norm() > 1e-3 * kd.norm());
}

TEST_CASE("kernel preconditions") {
  CHECK_THROWS_AS(eval_kernel(Dispersion::dirac(), Vec2(0, 0), 1e-3), Error);
  CHECK_THROWS_AS(eval_kernel(Dispersion::dirac(), Vec2(1, 0), 2.0), Error);
  CHECK_THROWS_AS(eval_kernel(Dispersion::dirac(), Vec2(1, 0), 1e-5), Error);
}

TEST_CASE("power d=2 kernel under the logarithmic envelope") {
  // The sigma part of the symbol falls off like p^/|p|^2, whose transform has
  // a finite limit at the origin, so the kernel stays bounded; M_2 dominates.
  const auto d = Dispersion::power(2.0);
  std::vector<double> radii{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  const auto rep = decay_report(d, radii, 1e-3);
  double hi = 0.0;
  for (const auto& row : rep.rows) {
    CHECK(row.value_norm <= envelope_md(row.r, 2.0));
    hi = std::max(hi, row.value_norm);
  }
  CHECK(hi <= 2.0);
  CHECK(rep.rows.front().value_norm <= rep.rows.back().value_norm);
}
