#include <cmath>

#include "pauligap/error.hpp"
#include "pauligap/kernel.hpp"
#include "pauligap/parallel.hpp"
#include "pauligap/quadrature.hpp"

namespace pauligap {

namespace {

using Harm = std::vector<std::array<cplx, 4>>;

Mat2c compose(const Harm& v, double phi) {
  KernelHarmonics h;
  h.v = v;
  return h.at(phi);
}

// Piecewise Chebyshev interpolant of the radial harmonics.
class RadialTable {
 public:
  RadialTable(const Dispersion& disp, double eps, std::vector<double> breaks, int nodes)
      : breaks_(std::move(breaks)), n_(nodes) {
    for (int j = 0; j < n_; ++j) {
      double t = kPi * (j + 0.5) / n_;
      x_.push_back(std::cos(t));
      w_.push_back((j % 2 ? -1.0 : 1.0) * std::sin(t));
    }
    std::vector<double> radii;
    for (std::size_t p = 0; p + 1 < breaks_.size(); ++p)
      for (int j = 0; j < n_; ++j)
        radii.push_back(0.5 * (breaks_[p] + breaks_[p + 1]) + 0.5 * (breaks_[p + 1] - breaks_[p]) * x_[j]);
    values_ = parallel_map<Harm>(radii.size(), [&](std::size_t i) {
      return kernel_harmonics(disp, radii[i], eps).v;
    });
    for (const auto& h : values_) width_ = std::max(width_, h.size());
    for (auto& h : values_) h.resize(width_, std::array<cplx, 4>{});
  }

  Harm operator()(double r) const {
    std::size_t p = 0;
    while (p + 2 < breaks_.size() && r > breaks_[p + 1]) ++p;
    const double a = breaks_[p], b = breaks_[p + 1];
    const double t = (2.0 * r - a - b) / (b - a);
    Harm out(width_, std::array<cplx, 4>{});
    const Harm* base = &values_[p * n_];
    for (int j = 0; j < n_; ++j)
      if (t == x_[j]) return base[j];
    double den = 0.0;
    std::vector<double> c(n_);
    for (int j = 0; j < n_; ++j) {
      c[j] = w_[j] / (t - x_[j]);
      den += c[j];
    }
    for (int j = 0; j < n_; ++j) {
      const double cj = c[j] / den;
      for (std::size_t m = 0; m < width_; ++m)
        for (int k = 0; k < 4; ++k) out[m][k] += cj * base[j][m][k];
    }
    return out;
  }

 private:
  std::vector<double> breaks_;
  int n_;
  std::vector<double> x_, w_;
  std::vector<Harm> values_;
  std::size_t width_ = 0;
};

}  // namespace

LatticeSumReport lattice_sum_check(const Dispersion& disp, double eps, int gamma_max,
                                   const std::vector<Eigen::Vector2i>& ms,
                                   const std::vector<Vec2>& ks) {
  if (gamma_max < 0) throw Error("lattice_sum_check: gamma_max must be >= 0");
  const double half = gamma_max + 0.5;
  const double r_c = std::min(0.25, half);
  const double r_far = half * std::sqrt(2.0);

  std::vector<Vec2> qs;
  for (const auto& m : ms)
    for (const auto& k : ks) qs.push_back(m.cast<double>() - k);
  std::vector<Mat2c> acc(qs.size(), Mat2c::Zero());

  // Inner disk r <= r_c: graded Gauss-Legendre panels in r, trapezoid in phi.
  const Rule& g10 = gauss_legendre_cached(10);
  std::vector<double> rin, win;
  const int levels = 14;
  for (int j = 0; j <= levels; ++j) {
    double b = r_c * std::ldexp(1.0, -j), a = j == levels ? 0.0 : 0.5 * b;
    for (std::size_t i = 0; i < g10.x.size(); ++i) {
      rin.push_back(0.5 * (a + b) + 0.5 * (b - a) * g10.x[i]);
      win.push_back(0.5 * (b - a) * g10.w[i]);
    }
  }
  const auto inner = parallel_map<Harm>(rin.size(), [&](std::size_t i) {
    return kernel_harmonics(disp, rin[i], eps).v;
  });
  const int n_phi = 64;
  for (std::size_t i = 0; i < rin.size(); ++i) {
    for (int t = 0; t < n_phi; ++t) {
      const double phi = 2.0 * kPi * t / n_phi;
      const Mat2c kv = compose(inner[i], phi);
      const double w = win[i] * rin[i] * 2.0 * kPi / n_phi;
      for (std::size_t c = 0; c < qs.size(); ++c) {
        const double ph = -2.0 * kPi * rin[i] * (qs[c](0) * std::cos(phi) + qs[c](1) * std::sin(phi));
        acc[c] += w * std::exp(cplx(0.0, ph)) * kv;
      }
    }
  }

  // Outer part of the square: eight angular sectors, radial panels out to the
  // boundary, kernel from a Chebyshev table.
  if (half > r_c) {
    std::vector<double> breaks{r_c};
    while (breaks.back() * 2.0 < r_far) breaks.push_back(breaks.back() * 2.0);
    breaks.push_back(r_far);
    RadialTable table(disp, eps, breaks, 24);
    const Rule& gphi = gauss_legendre_cached(64);
    const Rule& grad = gauss_legendre_cached(12);
    for (int sct = 0; sct < 8; ++sct) {
      const double p0 = sct * kPi / 4.0, p1 = (sct + 1) * kPi / 4.0;
      for (std::size_t a = 0; a < gphi.x.size(); ++a) {
        const double phi = 0.5 * (p0 + p1) + 0.5 * (p1 - p0) * gphi.x[a];
        const double wphi = 0.5 * (p1 - p0) * gphi.w[a];
        const double big = half / std::max(std::abs(std::cos(phi)), std::abs(std::sin(phi)));
        const int segs = std::max(1, int(std::ceil((big - r_c) / 0.25)));
        const double h = (big - r_c) / segs;
        for (int s = 0; s < segs; ++s) {
          const double ra = r_c + s * h;
          for (std::size_t b = 0; b < grad.x.size(); ++b) {
            const double r = ra + 0.5 * h * (1.0 + grad.x[b]);
            const double w = wphi * 0.5 * h * grad.w[b] * r;
            const Mat2c kv = compose(table(r), phi);
            for (std::size_t c = 0; c < qs.size(); ++c) {
              const double ph = -2.0 * kPi * r * (qs[c](0) * std::cos(phi) + qs[c](1) * std::sin(phi));
              acc[c] += w * std::exp(cplx(0.0, ph)) * kv;
            }
          }
        }
      }
    }
  }

  LatticeSumReport rep;
  rep.eps = eps;
  rep.gamma_max = gamma_max;
  const GreenSymbol g(disp);
  std::size_t c = 0;
  for (const auto& m : ms) {
    for (const auto& k : ks) {
      const Vec2 p = 2.0 * kPi * qs[c];
      const Mat2c g0 = g(p);
      const Mat2c target = g0 * std::exp(-eps * std::sqrt(1.0 + p.squaredNorm()));
      const Mat2c lhs = acc[c] / (2.0 * kPi);
      for (int j = 0; j < 2; ++j) {
        LatticeCase lc;
        lc.m = m;
        lc.k = k;
        lc.j = j;
        lc.rel_error = (lhs.col(j) - target.col(j)).norm() / target.col(j).norm();
        lc.rel_error_unregularized = (lhs.col(j) - g0.col(j)).norm() / g0.col(j).norm();
        rep.max_rel_error = std::max(rep.max_rel_error, lc.rel_error);
        rep.cases.push_back(lc);
      }
      ++c;
    }
  }
  return rep;
}

}  // namespace pauligap
