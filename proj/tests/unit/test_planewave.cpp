#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "pauligap/error.hpp"
#include "pauligap/planewave.hpp"

using namespace pauligap;

namespace {

const Potential kSquare = Potential::square(1.0, Vec3(0, 0, 1));

}  // namespace

TEST_CASE("basis indexing") {
  BasisSet b(2);
  CHECK(b.modes() == 25);
  CHECK(b.dim() == 50);
  CHECK(b.mode(0) == std::array<int, 2>{-2, -2});
  CHECK(b.mode(1) == std::array<int, 2>{-2, -1});
  CHECK(b.zero_index() == 12);
  for (int i = 0; i < b.modes(); ++i) {
    const auto m = b.mode(i);
    CHECK(b.index_of(m[0], m[1]) == i);
  }
  CHECK(b.index_of(3, 0) == -1);
}

TEST_CASE("chi_alpha_fourier") {
  const Vec3 phi = flux_moments(kSquare);
  CHECK((chi_alpha_fourier(kSquare, {0, 0}, 0.3) - (0.09 * phi).cast<cplx>()).norm() < 1e-15);
  // sinc-product oracle: 0.25 sin(pi/2)/(pi/2)
  const double expect = 0.25 * std::sin(0.5 * kPi) / (0.5 * kPi);
  CHECK(std::abs(chi_alpha_fourier(kSquare, {1, 0}, 0.5)(2) - expect) < 1e-15);
  CHECK(expect == doctest::Approx(0.15915).epsilon(1e-4));
  for (const auto& pot : {kSquare, Potential::disk(0.3, Vec3(1, 0, 1)), Potential::bump(0.4, Vec3(0, 1, 0))}) {
    const CVec3 a = chi_alpha_fourier(pot, {2, -1}, 0.2);
    const CVec3 b = chi_alpha_fourier(pot, {-2, 1}, 0.2);
    CHECK((a - b.conjugate()).norm() < 1e-15);
  }
}

TEST_CASE("single mode fiber") {
  const auto h = assemble_fiber(Vec2(0, 0), 0, Dispersion::dirac(), kSquare, Params{0.1, 1.0});
  REQUIRE(h.entries.rows() == 2);
  CHECK((h.entries - 0.01 * pauli(2)).norm() < 1e-15);
  Eigen::SelfAdjointEigenSolver<MatXc> es(h.entries);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.01));
  CHECK(es.eigenvalues()(1) == doctest::Approx(0.01));
}

TEST_CASE("free fiber is block diagonal with +-|F|") {
  const auto d = Dispersion::dirac();
  const Vec2 k(0.2, -0.35);
  const auto h = assemble_free(k, 2, d);
  const auto& b = *h.basis;
  for (int i = 0; i < b.modes(); ++i)
    for (int j = 0; j < b.modes(); ++j)
      if (i != j) CHECK(h.block(i, j).norm() == 0.0);
  std::vector<double> expect;
  for (int i = 0; i < b.modes(); ++i) {
    const auto m = b.mode(i);
    const double f = d(2 * kPi * (Vec2(m[0], m[1]) - k)).norm();
    expect.push_back(f);
    expect.push_back(-f);
  }
  std::sort(expect.begin(), expect.end());
  Eigen::SelfAdjointEigenSolver<MatXc> es(h.entries);
  for (int i = 0; i < b.dim(); ++i) CHECK(std::abs(es.eigenvalues()(i) - expect[i]) < 1e-12);

  const auto h1 = assemble_free(Vec2(0, 0), 1, d);
  Eigen::SelfAdjointEigenSolver<Mat2c> blk(h1.block(h1.basis->index_of(1, 0), h1.basis->index_of(1, 0)));
  CHECK(blk.eigenvalues()(1) == doctest::Approx(2 * kPi).epsilon(1e-14));

  const auto hh = assemble_free(Vec2(0.5, 0), 1, d);
  Eigen::SelfAdjointEigenSolver<MatXc> e2(hh.entries);
  int hits = 0;
  for (int i = 0; i < e2.eigenvalues().size(); ++i)
    if (std::abs(std::abs(e2.eigenvalues()(i)) - kPi) < 1e-12) ++hits;
  CHECK(hits == 4);
}

TEST_CASE("assembled fiber structure") {
  const auto d = Dispersion::dirac();
  const auto pot = Potential::disk(0.3, Vec3(0.2, -0.4, 1.0));
  const Params p{0.2, 0.7};
  const Vec2 k(0.13, 0.41);
  const auto h = assemble_fiber(k, 3, d, pot, p);
  CHECK(hermitian_defect(h.entries) <= 1e-12);
  CHECK(std::abs(h.entries.trace()) < 1e-12);

  const auto& b = *h.basis;
  for (int i = 0; i < b.modes(); i += 5)
    for (int j = 0; j < b.modes(); j += 3) {
      const auto mi = b.mode(i), mj = b.mode(j);
      const CVec3 c = chi_alpha_fourier(pot, {mi[0] - mj[0], mi[1] - mj[1]}, p.alpha);
      Mat2c expect = p.beta * sigma_dot(c);
      if (i == j) expect += sigma_dot(d(2 * kPi * (Vec2(mi[0], mi[1]) - k)));
      CHECK((h.block(i, j) - expect).norm() < 1e-13);
    }

  // beta linearity
  const auto h0 = assemble_fiber(k, 3, d, pot, Params{0.2, 0.0}).entries;
  const auto h1 = assemble_fiber(k, 3, d, pot, Params{0.2, 1.0}).entries;
  const auto h2 = assemble_fiber(k, 3, d, pot, Params{0.2, 2.0}).entries;
  CHECK(((h2 - h1) - (h1 - h0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("block split") {
  const Params p{0.5, 0.3};
  const auto h = assemble_fiber(Vec2(0, 0), 1, Dispersion::dirac(), kSquare, p);
  const auto s = split_blocks(h);
  CHECK((s.p0 - 0.25 * 0.3 * pauli(2)).norm() < 1e-15);
  CHECK((join_blocks(s, h.basis->zero_index()) - h.entries).norm() == 0.0);

  // Coupling from m = 0 to m = (1, 0): beta * (0, 0, 0.25 * 2 / pi) sigma_3,
  // an adjoint pair with the (1, 0) -> 0 block.
  const int j = h.basis->index_of(1, 0);
  const Mat2c expect = p.beta * 0.25 * 2.0 / kPi * pauli(2);
  CHECK((h.block(h.basis->zero_index(), j) - expect).norm() < 1e-15);

  // P0 block identity at generic k.
  const Vec2 k(0.31, -0.12);
  const auto pot = Potential::disk(0.25, Vec3(0.1, 0.2, 0.9));
  const auto hk = assemble_fiber(k, 2, Dispersion::dirac(), pot, Params{0.3, 0.4});
  const Mat2c p0 = sigma_dot(Dispersion::dirac()(-2 * kPi * k)) + sigma_dot(Vec3(0.09 * 0.4 * flux_moments(pot)));
  CHECK((split_blocks(hk).p0 - p0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dimension guard") {
  CHECK_THROWS_AS(FiberAssembler(30, Dispersion::dirac(), kSquare, Params{0.1, 0.2}, 1000), Error);
}
