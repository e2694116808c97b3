#include "pauligap/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "pauligap/error.hpp"
#include "pauligap/parallel.hpp"
#include "pauligap/quadrature.hpp"
#include "pauligap/simd/kernels.hpp"
#include "pauligap/spectrum.hpp"

namespace pauligap {

Mat2c GreenSymbol::operator()(const Vec2& p) const {
  const Vec3 f = disp_(p);
  Mat2c g = sigma_dot(f);
  g.diagonal().array() += kI;
  return g / (1.0 + f.squaredNorm());
}

double GreenSymbol::identity_residual(const Vec2& p) const {
  Mat2c a = sigma_dot(disp_(p));
  a.diagonal().array() -= kI;
  return (a * (*this)(p) - Mat2c::Identity()).norm();
}

double envelope_md(double r, double d) {
  if (!(r > 0.0)) throw Error("envelope_md: r must be positive");
  if (r >= 1.0) return 1.0 / (r * r * r);
  if (d == 2.0) return -std::log(r) + 1.0;
  return 1.0 / std::pow(r, 2.0 - d) + 1.0;
}

// ------------------------------------------------------------ harmonics

cplx KernelHarmonics::component(int c, double phi) const {
  cplx acc = v[0][c];
  cplx im(1.0, 0.0);
  for (std::size_t m = 1; m < v.size(); ++m) {
    im *= kI;
    if (v[m][c] == 0.0) continue;
    acc += 2.0 * im * (std::exp(cplx(0.0, double(m) * phi)) * v[m][c]).real();
  }
  return acc;
}

Mat2c KernelHarmonics::at(double phi) const {
  const cplx scalar = (plus_i ? -kI : kI) * component(0, phi);
  Mat2c k = Mat2c::Identity() * scalar;
  for (int c = 1; c <= 3; ++c) k += component(c, phi) * pauli(c - 1);
  return k;
}

namespace {

struct AngleTable {
  int n = 0;
  std::vector<double> ang, c, s;
  std::vector<std::vector<double>> cos_m, sin_m;  // m = 0..n/2
};

const AngleTable& angle_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<AngleTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto t = std::make_unique<AngleTable>();
    t->n = n;
    for (int j = 0; j < n; ++j) {
      double a = 2.0 * kPi * j / n;
      t->ang.push_back(a);
      t->c.push_back(std::cos(a));
      t->s.push_back(std::sin(a));
    }
    for (int m = 0; m <= n / 2; ++m) {
      std::vector<double> cm(n), sm(n);
      for (int j = 0; j < n; ++j) {
        // reduce m j mod n for accurate tables
        int idx = int((long(m) * j) % n);
        cm[j] = std::cos(2.0 * kPi * idx / n);
        sm[j] = std::sin(2.0 * kPi * idx / n);
      }
      t->cos_m.push_back(std::move(cm));
      t->sin_m.push_back(std::move(sm));
    }
    slot = std::move(t);
  }
  return *slot;
}

// Angular Fourier coefficients g_{c,m}(rho), m = 0..n/2-1, from an n-point
// trapezoid rule.
struct RingWork {
  std::vector<double> fx, fy, fz, g[4];
  void resize(int n) {
    fx.resize(n);
    fy.resize(n);
    fz.resize(n);
    for (auto& x : g) x.resize(n);
  }
};

void ring_harmonics(const Dispersion& disp, double rho, int n, RingWork& w,
                    std::vector<std::array<cplx, 4>>& out) {
  const AngleTable& t = angle_table(n);
  w.resize(n);
  disp.eval_ring(rho, t.ang.data(), t.c.data(), t.s.data(), n, w.fx.data(), w.fy.data(),
                 w.fz.data());
  const auto& k = simd::kernels();
  k.green_components(w.fx.data(), w.fy.data(), w.fz.data(), n, w.g[0].data(), w.g[1].data(),
                     w.g[2].data(), w.g[3].data());
  const int mm = n / 2;
  out.assign(mm, {});
  for (int m = 0; m < mm; ++m)
    for (int c = 0; c < 4; ++c) {
      double re, im;
      k.dual_dot(w.g[c].data(), t.cos_m[m].data(), t.sin_m[m].data(), n, &re, &im);
      out[m][c] = cplx(re, -im) / double(n);
    }
}

double harmonic_scale(const std::vector<std::array<cplx, 4>>& h) {
  double s = 0.0;
  for (const auto& a : h)
    for (const auto& x : a) s = std::max(s, std::abs(x));
  return s;
}

// Smallest angular resolution, by doubling from 8, at which the harmonics
// stop changing. Returns the finer of the last compared pair.
int resolve_angular(const Dispersion& disp, double rho, int max_doublings, double tol,
                    RingWork& w) {
  std::vector<std::array<cplx, 4>> lo, hi;
  int n = 8;
  ring_harmonics(disp, rho, n, w, lo);
  for (int dbl = 0; dbl < max_doublings; ++dbl) {
    ring_harmonics(disp, rho, 2 * n, w, hi);
    const double scale = std::max(harmonic_scale(hi), 1e-300);
    double diff = 0.0;
    for (std::size_t m = 0; m < hi.size(); ++m)
      for (int c = 0; c < 4; ++c) {
        cplx a = m < lo.size() ? lo[m][c] : cplx(0.0);
        diff = std::max(diff, std::abs(hi[m][c] - a));
      }
    // Harmonics beyond the coarse range must also be negligible.
    if (diff <= tol * scale) return 2 * n;
    n *= 2;
    lo.swap(hi);
  }
  std::ostringstream os;
  os << "kernel quadrature non-convergence: angular harmonics unresolved at rho=" << rho
     << " (region angular)";
  throw Error(os.str());
}

struct Panel {
  double a, b;
  int region;
};

const char* region_name(int r) {
  switch (r) {
    case 0: return "low |p| <= 1";
    case 1: return "middle 1 <= |p| <= 1/r";
    default: return "oscillatory tail |p| >= 1/r";
  }
}

std::vector<Panel> make_panels(double r, double eps, double rho_max, int level) {
  std::vector<double> br{0.0, 1.0};
  if (1.0 / r > 1.0) br.push_back(1.0 / r);
  br.push_back(rho_max);
  for (auto& x : br) x = std::min(x, rho_max);
  const double scale = std::ldexp(1.0, -level);
  const double h_osc = 2.0 * kPi / r, h_eps = 2.0 / eps;
  std::vector<Panel> out;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double a = br[i], b = br[i + 1];
    if (!(b > a)) continue;
    double x = a;
    while (x < b) {
      double h = std::min({h_osc, std::max(0.5 * x, 1e-6), h_eps}) * scale;
      double e = x + h;
      if (e >= b || b - e < 1e-3 * h) e = b;
      out.push_back({x, e, int(std::min<std::size_t>(i, 2))});
      x = e;
    }
  }
  return out;
}

}  // namespace

KernelHarmonics kernel_harmonics(const Dispersion& disp, double r, double eps,
                                 const KernelOptions& opts) {
  if (!(r > 0.0)) throw Error("eval_kernel: |delta| must be positive");
  if (!(eps >= 1e-4 && eps <= 1.0)) throw Error("eval_kernel: eps must lie in [1e-4, 1]");
  const double t_max = std::log(1.0 / opts.cut) / eps;
  const double rho_max = std::sqrt(std::max(t_max * t_max - 1.0, 1.0));
  const KronrodRule& kr = gauss_kronrod31();
  const double env = envelope_md(r, disp.exponent());

  KernelHarmonics out;
  out.r = r;
  out.eps = eps;
  out.plus_i = opts.plus_i;
  RingWork work;
  std::vector<std::array<cplx, 4>> gh;
  std::vector<double> bess;

  for (int level = 0; level <= opts.max_doublings; ++level) {
    const auto panels = make_panels(r, eps, rho_max, level);
    std::vector<std::array<cplx, 4>> acc_k, acc_g;
    double region_err[3] = {0.0, 0.0, 0.0};
    int max_n = 0;
    for (const Panel& p : panels) {
      const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
      const int n = resolve_angular(disp, mid, opts.max_doublings, opts.angular_tol, work);
      max_n = std::max(max_n, n);
      const std::size_t mm = std::size_t(n / 2);
      if (acc_k.size() < mm) {
        acc_k.resize(mm, {});
        acc_g.resize(mm, {});
      }
      std::vector<std::array<cplx, 4>> pk(mm, std::array<cplx, 4>{}), pg(mm, std::array<cplx, 4>{});
      for (std::size_t q = 0; q < kr.x.size(); ++q) {
        const double rho = mid + half * kr.x[q];
        ring_harmonics(disp, rho, n, work, gh);
        const double damp = rho * std::exp(-eps * std::sqrt(1.0 + rho * rho));
        const double floor = 1e-16 * harmonic_scale(gh);
        bess.assign(mm, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t m = 0; m < mm; ++m) {
          for (int c = 0; c < 4; ++c) {
            if (std::abs(gh[m][c]) <= floor) continue;
            if (std::isnan(bess[m])) bess[m] = boost::math::cyl_bessel_j(int(m), rho * r);
            const cplx term = damp * bess[m] * gh[m][c];
            pk[m][c] += kr.kronrod_w[q] * term;
            if (kr.gauss_w[q] != 0.0) pg[m][c] += kr.gauss_w[q] * term;
          }
        }
      }
      double perr = 0.0;
      for (std::size_t m = 0; m < mm; ++m)
        for (int c = 0; c < 4; ++c) {
          acc_k[m][c] += half * pk[m][c];
          acc_g[m][c] += half * pg[m][c];
          perr += (m == 0 ? 1.0 : 2.0) * half * std::abs(pk[m][c] - pg[m][c]);
        }
      region_err[p.region] += perr;
    }
    out.v = acc_k;
    out.max_angular_points = max_n;
    out.panels = long(panels.size());
    out.doublings = level;
    // Frobenius weight of the 2x2 basis matrices
    out.error = std::sqrt(2.0) * (region_err[0] + region_err[1] + region_err[2]);
    int worst = int(std::max_element(region_err, region_err + 3) - region_err);
    out.worst_region = region_name(worst);
    const double value = out.at(0.0).norm();
    if (out.error <= opts.rel_tol * (value + env)) return out;
  }
  throw Error("kernel quadrature non-convergence after " + std::to_string(opts.max_doublings) +
              " doublings; worst region: " + out.worst_region);
}

KernelSample eval_kernel(const Dispersion& disp, const Vec2& delta, double eps,
                         const KernelOptions& opts) {
  const double r = delta.norm();
  KernelHarmonics h = kernel_harmonics(disp, r, eps, opts);
  KernelSample s;
  s.delta = delta;
  s.r = r;
  s.eps = eps;
  s.value = h.at(std::atan2(delta(1), delta(0)));
  s.quadrature_error = h.error;
  s.worst_region = h.worst_region;
  s.doublings = h.doublings;
  return s;
}

// ---------------------------------------------------------------- decay

std::vector<double> default_decay_radii() {
  std::vector<double> r;
  for (int i = 0; i < 20; ++i) r.push_back(1e-3 * std::pow(100.0, i / 19.0));
  for (double x : {0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0}) r.push_back(x);
  return r;
}

DecayReport decay_report(const Dispersion& disp, const std::vector<double>& radii, double eps,
                         double stability_rmax, const KernelOptions& opts) {
  for (double r : radii)
    if (!(r >= 1e-3 && r <= 16.0)) throw Error("decay_report: radii must lie in [1e-3, 16]");
  DecayReport rep;
  rep.eps = eps;
  rep.d = disp.exponent();
  rep.rows = parallel_map<DecayRow>(radii.size(), [&](std::size_t i) {
    DecayRow row;
    row.r = radii[i];
    KernelSample s = eval_kernel(disp, Vec2(row.r, 0.0), eps, opts);
    row.value_norm = s.value.norm();
    row.quadrature_error = s.quadrature_error;
    row.envelope = envelope_md(row.r, rep.d);
    row.ratio = row.value_norm / row.envelope;
    if (stability_rmax > 0.0 && row.r >= 1e-2 && row.r <= stability_rmax) {
      KernelSample h = eval_kernel(disp, Vec2(row.r, 0.0), 0.5 * eps, opts);
      row.value_norm_half_eps = h.value.norm();
      row.stability = (h.value - s.value).norm() / s.value.norm();
    }
    return row;
  });
  std::vector<double> xs, ys, tail;
  for (const auto& row : rep.rows) {
    if (row.r <= 1e-1 + 1e-15) {
      xs.push_back(row.r);
      ys.push_back(row.value_norm);
    }
    rep.c_fit = std::max(rep.c_fit, row.ratio);
    if (row.r >= 1.0) tail.push_back(row.ratio);
    rep.max_stability = std::max(rep.max_stability, row.stability);
  }
  rep.short_points = int(xs.size());
  if (xs.size() >= 2) rep.short_slope = fit_loglog(xs, ys).slope;
  if (!tail.empty()) {
    std::vector<double> t = tail;
    std::sort(t.begin(), t.end());
    rep.median_tail_ratio = t.size() % 2 ? t[t.size() / 2] : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]);
    rep.max_tail_ratio = t.back();
    rep.tail_ok = rep.max_tail_ratio <= 10.0 * rep.median_tail_ratio;
  }
  return rep;
}

}  // namespace pauligap
