#include "pauligap/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "pauligap/error.hpp"
#include "pauligap/parallel.hpp"
#include "pauligap/simd/kernels.hpp"

namespace pauligap {

namespace {

std::string kdesc(const Vec2& k) {
  std::ostringstream os;
  os.precision(17);
  os << "k=(" << k(0) << ", " << k(1) << ")";
  return os.str();
}

double inverse_iteration_residual(const MatXc& h, double mu, double hnorm, std::mt19937_64& rng) {
  const Eigen::Index n = h.rows();
  std::normal_distribution<double> nd;
  VecXc v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
  v.normalize();
  MatXc shifted = h;
  shifted.diagonal().array() -= cplx(mu + 1e-12 * hnorm, 0.0);
  Eigen::PartialPivLU<MatXc> lu(shifted);
  for (int it = 0; it < 3; ++it) {
    v = lu.solve(v);
    v.normalize();
  }
  return (h * v - mu * v).norm() / hnorm;
}

}  // namespace

EigenResult eigensolve(const MatXc& h, const EigenOptions& opts) {
  Eigen::SelfAdjointEigenSolver<MatXc> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error("eigensolver did not converge (dim " + std::to_string(h.rows()) + ")");
  EigenResult r;
  r.values = es.eigenvalues();
  if (opts.spot_checks > 0 && r.values.size() > 0) {
    const double hnorm = std::max(std::abs(r.values(0)), std::abs(r.values(r.values.size() - 1)));
    if (hnorm > 0.0) {
      std::mt19937_64 rng(opts.seed);
      std::uniform_int_distribution<Eigen::Index> pick(0, r.values.size() - 1);
      for (int c = 0; c < opts.spot_checks; ++c)
        r.max_residual =
            std::max(r.max_residual, inverse_iteration_residual(h, r.values(pick(rng)), hnorm, rng));
    }
  }
  return r;
}

EigenResult eigensolve(const FiberMatrix& h, const EigenOptions& opts) {
  try {
    return eigensolve(h.entries, opts);
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + " at " + kdesc(h.k));
  }
}

std::vector<Vec2> kgrid(int n_k) {
  if (n_k < 2) throw Error("n_k must be >= 2");
  std::vector<Vec2> ks;
  ks.reserve(std::size_t(n_k) * n_k);
  for (int i = 0; i < n_k; ++i)
    for (int j = 0; j < n_k; ++j)
      ks.emplace_back(-0.5 + double(i + 1) / n_k, -0.5 + double(j + 1) / n_k);
  return ks;
}

BandStructure band_structure(const Dispersion& disp, const Potential& pot, const Params& params,
                             int cutoff, int n_k) {
  FiberAssembler asmb(cutoff, disp, pot, params);
  BandStructure bs;
  bs.k = kgrid(n_k);
  bs.bands = parallel_map<VecX>(bs.k.size(), [&](std::size_t i) {
    return eigensolve(asmb.assemble(bs.k[i])).values;
  });
  bs.meta.cutoff = cutoff;
  bs.meta.n_k = n_k;
  bs.meta.params = params;
  bs.meta.dispersion = disp.tag();
  bs.meta.potential = pot.tag();
  bs.meta.norm_perp = project_flux(flux_moments(pot), disp.linearization()).norm_perp;
  bs.meta.d_prime = disp.d_prime();
  return bs;
}

double GapReport::theorem_halfwidth(double c) const {
  return lambda * (0.5 * norm_perp - c * std::pow(alpha, d_prime) * beta);
}

GapReport detect_gap(const BandStructure& bs, double center) {
  if (bs.bands.empty()) throw Error("detect_gap: empty band structure");
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();
  for (const VecX& ev : bs.bands) {
    const double* beg = ev.data();
    const double* end = beg + ev.size();
    // An eigenvalue sitting on the center closes the gap from both sides.
    const double* lo = std::lower_bound(beg, end, center);
    const double* hi = std::upper_bound(beg, end, center);
    if (lo != end) b = std::min(b, *lo);
    if (hi != beg) a = std::max(a, *(hi - 1));
  }
  if (!std::isfinite(a) || !std::isfinite(b))
    throw Error("center energy outside the computed spectral window");
  GapReport g;
  g.lower = a;
  g.upper = b;
  g.center = center;
  g.width = std::max(b - a, 0.0);
  g.n_k = bs.meta.n_k;
  g.cutoff = bs.meta.cutoff;
  g.alpha = bs.meta.params.alpha;
  g.beta = bs.meta.params.beta;
  g.lambda = bs.meta.params.lambda();
  g.norm_perp = bs.meta.norm_perp;
  g.d_prime = bs.meta.d_prime;
  g.predicted_halfwidth_leading = 0.5 * g.lambda * g.norm_perp;
  const double denom = 2.0 * g.lambda * g.norm_perp;
  g.ratio = denom > 0.0 ? g.width / denom : std::numeric_limits<double>::quiet_NaN();
  return g;
}

namespace {

std::vector<double> nearest(const VecX& ev, double center, int count) {
  std::vector<double> v(ev.data(), ev.data() + ev.size());
  std::stable_sort(v.begin(), v.end(), [&](double x, double y) {
    return std::abs(x - center) < std::abs(y - center);
  });
  v.resize(std::min<std::size_t>(v.size(), count));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

ConvergenceResult convergence_check(const Vec2& k, const Dispersion& disp, const Potential& pot,
                                    const Params& params, int cutoff, double tol, double center) {
  if (cutoff < 2) throw Error("convergence_check needs N >= 2");
  if (tol < 0.0) tol = 1e-6 * std::max(1.0, params.lambda());
  auto lo = nearest(eigensolve(assemble_fiber(k, cutoff, disp, pot, params)).values, center, 8);
  auto hi = nearest(eigensolve(assemble_fiber(k, 2 * cutoff, disp, pot, params)).values, center, 8);
  ConvergenceResult r;
  for (std::size_t i = 0; i < lo.size(); ++i) r.delta = std::max(r.delta, std::abs(lo[i] - hi[i]));
  r.converged = r.delta <= tol;
  return r;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error("fit_line needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("fit_loglog: non-positive sample");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly);
}

SweepResult sweep(const Dispersion& disp, const Potential& pot, const std::vector<double>& alphas_in,
                  const std::vector<double>& betas_in, int cutoff, int n_k, double center) {
  auto dedupe = [](const std::vector<double>& v) {
    std::vector<double> out;
    for (double x : v)
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    return out;
  };
  const auto alphas = dedupe(alphas_in), betas = dedupe(betas_in);
  SweepResult res;
  res.norm_perp = project_flux(flux_moments(pot), disp.linearization()).norm_perp;
  res.d_prime = disp.d_prime();
  for (double a : alphas) {
    for (double b : betas) {
      SweepRow row;
      row.alpha = a;
      row.beta = b;
      row.cutoff = cutoff;
      row.n_k = n_k;
      auto t0 = std::chrono::steady_clock::now();
      try {
        if (!(b > 0.0)) throw Error("beta must be positive in a sweep");
        GapReport g = detect_gap(band_structure(disp, pot, Params{a, b}, cutoff, n_k), center);
        row.width = g.width;
        row.ratio = g.ratio;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.width = row.ratio = std::numeric_limits<double>::quiet_NaN();
      }
      row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      res.rows.push_back(row);
    }
  }
  for (double b : betas) {
    std::vector<double> xs, ys;
    for (const auto& r : res.rows)
      if (r.beta == b && r.error.empty() && r.width > 0.0) {
        xs.push_back(r.alpha);
        ys.push_back(r.width);
      }
    if (xs.size() < 2) continue;
    LineFit f = fit_loglog(xs, ys);
    res.alpha_slopes.push_back({b, f.slope, f.intercept, f.residual, int(xs.size())});
  }
  if (res.norm_perp > 0.0) {
    double sxy = 0.0, sxx = 0.0;
    for (const auto& r : res.rows) {
      if (!r.error.empty()) continue;
      double lam = r.alpha * r.alpha * r.beta;
      double x = std::pow(r.alpha, res.d_prime) * r.beta;
      double y = 0.5 * res.norm_perp - r.width / (2.0 * lam);
      sxy += x * y;
      sxx += x * x;
    }
    if (sxx > 0.0) res.c_fit = sxy / sxx;
  }
  return res;
}

KineticMin kinetic_minimum(const Dispersion& disp, int n_k, int cutoff) {
  if (cutoff < 1) throw Error("kinetic_minimum: Q0 empty for cutoff 0");
  const auto ks = kgrid(n_k);
  KineticMin best{std::numeric_limits<double>::infinity(), Vec2::Zero()};
  const bool linear = disp.kind() == DispersionKind::Dirac;
  std::vector<double> fx, fy, fz;
  for (int a = -cutoff; a <= cutoff; ++a)
    for (int b = -cutoff; b <= cutoff; ++b)
      if (a != 0 || b != 0) {
        fx.push_back(2.0 * kPi * a);
        fy.push_back(2.0 * kPi * b);
        fz.push_back(0.0);
      }
  const auto& kern = simd::kernels();
  for (const Vec2& k : ks) {
    double v = std::numeric_limits<double>::infinity();
    if (linear) {
      v = kern.min_shifted_norm(fx.data(), fy.data(), fz.data(), fx.size(), -2.0 * kPi * k(0),
                                -2.0 * kPi * k(1), 0.0);
    } else {
      for (std::size_t i = 0; i < fx.size(); ++i)
        v = std::min(v, disp(Vec2(fx[i] - 2.0 * kPi * k(0), fy[i] - 2.0 * kPi * k(1))).norm());
    }
    if (v < best.value) best = {v, k};
  }
  return best;
}

}  // namespace pauligap
