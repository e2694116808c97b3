#include "pauligap/feshbach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "pauligap/error.hpp"
#include "pauligap/parallel.hpp"
#include "pauligap/spectrum.hpp"

namespace pauligap {

namespace {

double hermitian_norm_2x2(const Mat2c& m) {
  Eigen::JacobiSVD<Mat2c> svd(m);
  return svd.singularValues()(0);
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

// ------------------------------------------------------------- direct route

FeshbachEval schur(const MatXc& h, int zero_mode, cplx z) {
  BlockSplit s = split_blocks(h, zero_mode);
  const Eigen::Index nq = s.q0.rows();
  FeshbachEval e;
  e.z = z;
  if (nq == 0) throw Error("Q0 empty");
  Eigen::SelfAdjointEigenSolver<MatXc> es(s.q0, Eigen::EigenvaluesOnly);
  const VecX& mu = es.eigenvalues();
  double qmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < mu.size(); ++i) qmin = std::min(qmin, std::abs(mu(i) - z));
  e.q0_min_singular = qmin;
  const double hnorm = std::max({std::abs(mu(0)), std::abs(mu(mu.size() - 1)), hermitian_norm_2x2(s.p0)});
  if (!(qmin > 1e-12 * hnorm))
    throw Error("singular Q0 block: Q0_min_singular=" + num(qmin));
  MatXc qz = s.q0;
  qz.diagonal().array() -= z;
  MatXc x = qz.partialPivLu().solve(MatXc(s.coupling.adjoint()));
  e.bp0 = s.coupling * x;
  e.fp0 = s.p0 - z * Mat2c::Identity() - e.bp0;
  e.bp0_norm = hermitian_norm_2x2(e.bp0);
  return e;
}

FeshbachEval schur(const FiberMatrix& h, cplx z) {
  return schur(h.entries, h.basis->zero_index(), z);
}

// ----------------------------------------------------------- spectral route

SchurReducer::SchurReducer(const MatXc& h, std::vector<int> p_rows) {
  const int n = int(h.rows());
  std::sort(p_rows.begin(), p_rows.end());
  std::vector<int> q_rows;
  for (int r = 0; r < n; ++r)
    if (!std::binary_search(p_rows.begin(), p_rows.end(), r)) q_rows.push_back(r);
  if (q_rows.empty()) throw Error("Q0 empty");
  const int np = int(p_rows.size()), nq = int(q_rows.size());
  p_.resize(np, np);
  MatXc c(np, nq), q(nq, nq);
  for (int a = 0; a < np; ++a) {
    for (int b = 0; b < np; ++b) p_(a, b) = h(p_rows[a], p_rows[b]);
    for (int b = 0; b < nq; ++b) c(a, b) = h(p_rows[a], q_rows[b]);
  }
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b) q(a, b) = h(q_rows[a], q_rows[b]);
  Eigen::SelfAdjointEigenSolver<MatXc> es(q);
  if (es.info() != Eigen::Success) throw Error("Q block eigensolver did not converge");
  mu_ = es.eigenvalues();
  w_ = c * es.eigenvectors();
}

MatXc SchurReducer::remainder(cplx z) const {
  VecXc inv(mu_.size());
  for (Eigen::Index i = 0; i < mu_.size(); ++i) inv(i) = 1.0 / (mu_(i) - z);
  return w_ * inv.asDiagonal() * w_.adjoint();
}

MatXc SchurReducer::fp(cplx z) const {
  MatXc f = p_ - remainder(z);
  f.diagonal().array() -= z;
  return f;
}

double SchurReducer::q_min_singular(cplx z) const {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < mu_.size(); ++i) m = std::min(m, std::abs(mu_(i) - z));
  return m;
}

double SchurReducer::det_fp(double z) const { return fp(cplx(z, 0.0)).determinant().real(); }

std::vector<double> SchurReducer::roots(double lo, double hi, int samples) const {
  std::vector<double> edges{lo};
  for (Eigen::Index i = 0; i < mu_.size(); ++i)
    if (mu_(i) > lo && mu_(i) < hi) edges.push_back(mu_(i));
  edges.push_back(hi);
  std::vector<double> out;
  const double span = hi - lo;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double e0 = edges[s], e1 = edges[s + 1];
    if (!(e1 > e0)) continue;
    const double pad = 1e-11 * std::max(1.0, std::max(std::abs(e0), std::abs(e1)));
    if (e1 - e0 <= 2.0 * pad) continue;
    const int n = std::max(50, int(samples * (e1 - e0) / span));
    std::vector<double> zs;
    zs.push_back(s == 0 ? e0 : e0 + pad);
    for (int i = 0; i < n; ++i) zs.push_back(e0 + (e1 - e0) * (i + 0.5) / n);
    zs.push_back(s + 2 == edges.size() ? e1 : e1 - pad);
    double fa = det_fp(zs[0]);
    for (std::size_t i = 1; i < zs.size(); ++i) {
      double fb = det_fp(zs[i]);
      if (fa == 0.0) {
        out.push_back(zs[i - 1]);
      } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
        double a = zs[i - 1], b = zs[i], ga = fa;
        for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
          double m = 0.5 * (a + b), gm = det_fp(m);
          if (gm == 0.0) {
            a = b = m;
            break;
          }
          if ((gm < 0.0) == (ga < 0.0)) {
            a = m;
            ga = gm;
          } else {
            b = m;
          }
        }
        out.push_back(0.5 * (a + b));
      }
      fa = fb;
    }
    if (fa == 0.0) out.push_back(zs.back());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ------------------------------------------------------------ free Q block

double q0_min_singular(const FiberMatrix& free, const Dispersion& disp, double z) {
  const BasisSet& b = *free.basis;
  if (b.cutoff() == 0) throw Error("Q₀ empty");
  const double window = disp.k0_lower() * std::pow(kPi, disp.exponent()) / 2.0;
  if (std::abs(z) > window)
    throw Error("|z| exceeds the window K0' pi^d / 2 = " + num(window));
  const int z0 = b.zero_index();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < b.modes(); ++i) {
    if (i == z0) continue;
    // block = sigma . v with real v, so det = -|v|^2
    double f = std::sqrt(std::max(0.0, -free.block(i, i).determinant().real()));
    best = std::min(best, std::abs(f - std::abs(z)));
  }
  return best;
}

// ------------------------------------------------------- factorized coupling

namespace {

// S(i, j) = alpha^2 s^(alpha (m_i - m_j)) for the unit-amplitude profile.
MatXc indicator_matrix(const FiberAssembler& asmb) {
  if (!asmb.potential().is_indicator()) throw Error("√χ Fourier data unavailable");
  const BasisSet& b = *asmb.basis();
  const int n = b.cutoff(), w = 4 * n + 1, modes = b.modes();
  const double a = asmb.params().alpha;
  std::vector<cplx> tab(std::size_t(w) * w);
  for (int p = 0; p < w; ++p)
    for (int q = 0; q < w; ++q)
      tab[std::size_t(p) * w + q] =
          a * a * asmb.potential().profile_fourier(Vec2(a * (p - 2 * n), a * (q - 2 * n)));
  MatXc s(modes, modes);
  for (int i = 0; i < modes; ++i) {
    auto mi = b.mode(i);
    for (int j = 0; j < modes; ++j) {
      auto mj = b.mode(j);
      s(i, j) = tab[std::size_t(mi[0] - mj[0] + 2 * n) * w + (mi[1] - mj[1] + 2 * n)];
    }
  }
  return s;
}

MatXc kron_spin(const MatXc& s, const Mat2c& m) {
  const Eigen::Index n = s.rows();
  MatXc out(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out.block<2, 2>(2 * i, 2 * j) = s(i, j) * m;
  return out;
}

std::vector<int> q_indices(const BasisSet& b) {
  std::vector<int> q;
  const int z = b.zero_index();
  for (int r = 0; r < b.dim(); ++r)
    if (r / 2 != z) q.push_back(r);
  return q;
}

MatXc select_rows(const MatXc& m, const std::vector<int>& rows) {
  MatXc out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = m.row(rows[i]);
  return out;
}

MatXc select_cols(const MatXc& m, const std::vector<int>& cols) {
  MatXc out(m.rows(), cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(i) = m.col(cols[i]);
  return out;
}

// (sigma . F_m - z)^{-1} for each Q mode in order.
std::vector<Mat2c> free_q_resolvent(const FiberAssembler& asmb, const Vec2& k, cplx z) {
  const BasisSet& b = *asmb.basis();
  std::vector<Mat2c> out;
  for (int i = 0; i < b.modes(); ++i) {
    if (i == b.zero_index()) continue;
    auto m = b.mode(i);
    Mat2c blk = sigma_dot(asmb.dispersion()(Vec2(2.0 * kPi * (m[0] - k(0)), 2.0 * kPi * (m[1] - k(1)))));
    blk.diagonal().array() -= z;
    out.push_back(blk.inverse());
  }
  return out;
}

// rows of x grouped in spin pairs, one block per pair
MatXc apply_block_diag(const std::vector<Mat2c>& blocks, const MatXc& x) {
  MatXc out(x.rows(), x.cols());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out.middleRows<2>(2 * i) = blocks[i] * x.middleRows<2>(2 * i);
  return out;
}

MatXc block_diag_matrix(const std::vector<Mat2c>& blocks) {
  MatXc out = MatXc::Zero(2 * blocks.size(), 2 * blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) out.block<2, 2>(2 * i, 2 * i) = blocks[i];
  return out;
}

void check_window(const FiberAssembler& asmb, cplx z) {
  const Dispersion& d = asmb.dispersion();
  const double window = d.k0_lower() * std::pow(kPi, d.exponent()) / 2.0;
  if (std::abs(z) > window) throw Error("|z| exceeds the window K0' pi^d / 2 = " + num(window));
}

}  // namespace

CouplingNorms coupling_norms(const FiberAssembler& asmb, const Vec2& k, cplx z) {
  check_window(asmb, z);
  if (asmb.basis()->cutoff() == 0) throw Error("Q₀ empty");
  const MatXc s = indicator_matrix(asmb);
  const auto q = q_indices(*asmb.basis());
  const auto r0 = free_q_resolvent(asmb, k, z);
  const Vec3 amp = asmb.params().beta == 0.0 ? Vec3::Zero().eval() : asmb.potential().amplitudes();
  const double beta = asmb.params().beta;
  const MatXc s_id = kron_spin(s, Mat2c::Identity());
  const MatXc y = apply_block_diag(r0, select_rows(s_id, q));  // R0 (S x I)[Q, :]
  CouplingNorms c;
  for (int j = 0; j < 3; ++j) {
    if (amp(j) == 0.0) continue;
    const MatXc t = select_cols(kron_spin(s, pauli(j)), q) * y;
    const double nj = spectral_norm(t);
    for (int l = 0; l < 3; ++l)
      c.wru(j, l) = beta * std::sqrt(std::abs(amp(j)) * std::abs(amp(l))) * nj;
  }
  c.sup_wru = c.wru.maxCoeff();
  c.neumann_ok = c.sup_wru < 1.0 / 3.0;
  return c;
}

NeumannReport neumann_check(const FiberAssembler& asmb, const Vec2& k, cplx z, int terms) {
  check_window(asmb, z);
  if (terms < 1) throw Error("neumann_check: terms must be >= 1");
  const MatXc s = indicator_matrix(asmb);
  const auto q = q_indices(*asmb.basis());
  const auto r0b = free_q_resolvent(asmb, k, z);
  const Vec3& amp = asmb.potential().amplitudes();
  const double beta = asmb.params().beta;
  const Eigen::Index nq = Eigen::Index(q.size());

  const MatXc s_id = kron_spin(s, Mat2c::Identity());
  const MatXc a_op = select_rows(s_id, q);  // (S x I)[Q, :]
  MatXc v = MatXc::Zero(nq, nq);            // U W^T
  MatXc v_exact = MatXc::Zero(nq, nq);      // Q (beta chi . sigma) Q
  for (int l = 0; l < 3; ++l) {
    if (amp(l) == 0.0) continue;
    const MatXc sl = kron_spin(s, pauli(l));
    v += beta * amp(l) * (a_op * select_cols(sl, q));
    v_exact += beta * amp(l) * select_cols(select_rows(sl, q), q);
  }

  NeumannReport rep;
  rep.terms = terms;
  rep.sup_wru = coupling_norms(asmb, k, z).sup_wru;
  const double vn = spectral_norm(v_exact);
  rep.factor_gap = vn > 0.0 ? spectral_norm(v - v_exact) / vn : 0.0;

  const MatXc r0 = block_diag_matrix(r0b);
  MatXc r0inv = MatXc::Zero(nq, nq);
  for (std::size_t i = 0; i < r0b.size(); ++i) r0inv.block<2, 2>(2 * i, 2 * i) = r0b[i].inverse();
  const MatXc r = (r0inv + v).partialPivLu().inverse();

  const MatXc x = v * r0;
  MatXc term = MatXc::Identity(nq, nq), sum = MatXc::Identity(nq, nq);
  for (int n = 1; n < terms; ++n) {
    term = (-1.0 * x * term).eval();
    sum += term;
  }
  const MatXc rn = r0 * sum;
  rep.error = spectral_norm(r - rn);
  rep.floor = 1e-12 * spectral_norm(r);
  const double sup = rep.sup_wru;
  if (3.0 * sup < 1.0) {
    rep.stated_bound = std::pow(sup, terms) / (1.0 - 3.0 * sup);
    double r0n = 0.0;
    for (const auto& b : r0b) r0n = std::max(r0n, hermitian_norm_2x2(b));
    const double amp_sum = amp.cwiseAbs().sum();
    const double un = std::sqrt(beta * amp_sum) * spectral_norm(a_op);
    const double wr = std::sqrt(beta * amp_sum) * spectral_norm(select_cols(s_id, q) * r0);
    rep.rigorous_bound = r0n * un * wr * std::pow(3.0 * sup, terms - 1) / (1.0 - 3.0 * sup);
  } else {
    rep.stated_bound = rep.rigorous_bound = std::numeric_limits<double>::infinity();
  }
  rep.within_bound = rep.error <= rep.rigorous_bound + rep.floor;
  return rep;
}

SqrtChiP0 sqrt_chi_p0_norm(const FiberAssembler& asmb) {
  const MatXc s = indicator_matrix(asmb);
  const int z = asmb.basis()->zero_index();
  const double an = asmb.potential().amplitudes().norm();
  SqrtChiP0 r;
  r.norm = std::sqrt(an) * s.col(z).norm();
  r.bound = asmb.params().alpha * std::sqrt(an * asmb.potential().profile_mass());
  return r;
}

double free_resolvent_sandwich(const FiberAssembler& asmb, const Vec2& k) {
  const MatXc s = indicator_matrix(asmb);
  const BasisSet& b = *asmb.basis();
  std::vector<Mat2c> g;
  for (int i = 0; i < b.modes(); ++i) {
    auto m = b.mode(i);
    Mat2c blk = sigma_dot(asmb.dispersion()(Vec2(2.0 * kPi * (m[0] - k(0)), 2.0 * kPi * (m[1] - k(1)))));
    blk.diagonal().array() -= kI;
    g.push_back(blk.inverse());
  }
  const MatXc s_id = kron_spin(s, Mat2c::Identity());
  const double an = asmb.potential().amplitudes().norm();
  return an * spectral_norm(s_id * apply_block_diag(g, s_id));
}

// --------------------------------------------------------------- root check

RootCheckReport feshbach_root_check(const FiberMatrix& h, const RootCheckOptions& opts) {
  RootCheckReport rep;
  const int z0 = h.basis->zero_index();
  SchurReducer red(h.entries, {2 * z0, 2 * z0 + 1});
  const VecX ev = eigensolve(h).values;
  std::vector<double> inside;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) >= opts.window_lo && ev(i) <= opts.window_hi) inside.push_back(ev(i));
  rep.eigenvalues_in_window = int(inside.size());
  std::vector<double> checked;
  for (double l : inside) {
    if (red.q_min_singular(l) <= 1e-8) continue;
    MatXc f = red.fp(l);
    const double fn = spectral_norm(f);
    const double ratio = fn == 0.0 ? 0.0 : std::abs(f.determinant()) / (fn * fn);
    rep.max_det_ratio = std::max(rep.max_det_ratio, ratio);
    checked.push_back(l);
  }
  rep.checked = int(checked.size());
  // Every sign-change root must be an eigenvalue. The converse direction is
  // covered by the determinant ratio, which also handles double roots.
  for (double r : red.roots(opts.window_lo, opts.window_hi)) {
    double d = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) d = std::min(d, std::abs(ev(i) - r));
    rep.max_root_distance = std::max(rep.max_root_distance, d);
  }
  rep.roots_ok = rep.max_det_ratio <= 1e-8 && rep.max_root_distance <= 1e-8;

  const double lambda = h.params.lambda();
  double t = opts.scan_halfwidth;
  if (t <= 0.0) {
    const double b0 = spectral_norm(red.remainder(0.0));
    t = 0.5 * lambda * opts.norm_perp - b0;
  }
  rep.scan_halfwidth = t;
  rep.scan_threshold = 0.5 * t;
  if (t > 0.0 && opts.scan_points >= 2) {
    rep.scan_min_singular = std::numeric_limits<double>::infinity();
    for (int i = 0; i < opts.scan_points; ++i) {
      const double z = -t + 2.0 * t * i / (opts.scan_points - 1);
      const MatXc f = red.fp(z);
      const double smin = min_singular_value(f);
      rep.scan_z.push_back(z);
      rep.scan_smin.push_back(smin);
      rep.scan_bp0.push_back(spectral_norm(red.remainder(z)));
      rep.scan_min_singular = std::min(rep.scan_min_singular, smin);
    }
    rep.scan_ok = rep.scan_min_singular >= rep.scan_threshold;
  }
  return rep;
}

// -------------------------------------------------------------- bp0 scaling

RandomSchurReport random_schur_trials(int trials, int n, int p, std::uint64_t seed, double lo,
                                      double hi, double tol) {
  if (p < 1 || p >= n) throw Error("random_schur_trials: need 1 <= p < n");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  RandomSchurReport rep;
  rep.trials = trials;
  const double scale = 1.0 / std::sqrt(double(n));
  std::vector<int> prow(p);
  for (int i = 0; i < p; ++i) prow[i] = i;
  for (int t = 0; t < trials; ++t) {
    MatXc a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = cplx(nd(rng), nd(rng)) * scale;
    const MatXc h = 0.5 * (a + a.adjoint());
    SchurReducer red(h, prow);
    const VecX ev = eigensolve(h).values;
    const auto rts = red.roots(lo, hi);
    rep.roots += int(rts.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double l = ev(i);
      if (l < lo || l > hi || red.q_min_singular(l) <= tol) continue;
      ++rep.eigenvalues;
      const MatXc f = red.fp(l);
      const double fn = spectral_norm(f);
      if (fn > 0.0) rep.max_det_ratio = std::max(rep.max_det_ratio, std::abs(f.determinant()) / std::pow(fn, p));
      double d = std::numeric_limits<double>::infinity();
      for (double r : rts) d = std::min(d, std::abs(r - l));
      rep.max_eig_to_root = std::max(rep.max_eig_to_root, d);
    }
    for (double r : rts) {
      double d = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < ev.size(); ++i) d = std::min(d, std::abs(ev(i) - r));
      rep.max_root_to_eig = std::max(rep.max_root_to_eig, d);
    }
  }
  rep.ok = rep.max_det_ratio <= tol && rep.max_eig_to_root <= tol && rep.max_root_to_eig <= tol;
  return rep;
}

std::vector<Vec2> default_bp0_kset() {
  std::vector<Vec2> ks;
  for (double a : {0.0, 0.25, 0.5})
    for (double b : {0.0, 0.25, 0.5}) ks.emplace_back(a, b);
  return ks;
}

Bp0Scaling bp0_scaling(const Dispersion& disp, const Potential& pot,
                       const std::vector<double>& betas, const std::vector<double>& alphas,
                       int cutoff, const std::vector<Vec2>& ks, cplx z) {
  if (ks.empty()) throw Error("bp0_scaling: empty k set");
  const double dp = disp.d_prime();
  std::vector<std::pair<double, double>> grid;
  for (double a : alphas)
    for (double b : betas) grid.emplace_back(a, b);
  Bp0Scaling out;
  out.cells = parallel_map<Bp0Cell>(grid.size(), [&](std::size_t c) {
    Bp0Cell cell;
    cell.alpha = grid[c].first;
    cell.beta = grid[c].second;
    try {
      FiberAssembler asmb(cutoff, disp, pot, Params{cell.alpha, cell.beta});
      for (const Vec2& k : ks) {
        cell.bp0_norm = std::max(cell.bp0_norm, schur(asmb.assemble(k), z).bp0_norm);
        if (pot.is_indicator())
          cell.sup_wru = std::max(cell.sup_wru, coupling_norms(asmb, k, z).sup_wru);
      }
      if (!pot.is_indicator()) cell.sup_wru = std::numeric_limits<double>::quiet_NaN();
      cell.in_regime = !(cell.sup_wru >= 1.0 / 3.0);
      cell.normalized = cell.bp0_norm / (std::pow(cell.alpha, 2.0 + dp) * cell.beta * cell.beta);
    } catch (const std::exception& e) {
      cell.error = e.what();
      cell.in_regime = false;
    }
    return cell;
  });

  auto usable = [](const Bp0Cell& c) { return c.error.empty() && c.in_regime && c.bp0_norm > 0.0; };
  for (const auto& c : out.cells) {
    if (!usable(c)) {
      ++out.excluded;
      continue;
    }
    out.uniform_c = std::max(out.uniform_c, c.normalized);
  }
  for (double b : betas) {
    std::vector<double> xs, ys;
    for (const auto& c : out.cells)
      if (c.beta == b && usable(c)) {
        xs.push_back(c.alpha);
        ys.push_back(c.bp0_norm);
      }
    if (xs.size() >= 2) {
      LineFit f = fit_loglog(xs, ys);
      out.alpha_slopes.emplace_back(b, f.slope);
      out.alpha_residuals.emplace_back(b, f.residual);
    }
  }
  for (double a : alphas) {
    std::vector<const Bp0Cell*> row;
    for (const auto& c : out.cells)
      if (c.alpha == a && usable(c)) row.push_back(&c);
    if (row.size() < 2) continue;
    std::vector<double> xs, ys;
    for (auto* c : row) {
      xs.push_back(c->beta);
      ys.push_back(c->bp0_norm);
    }
    out.beta_slopes.emplace_back(a, fit_loglog(xs, ys).slope);
    std::sort(row.begin(), row.end(), [](auto* x, auto* y) { return x->beta < y->beta; });
    const double r0 = row[0]->bp0_norm / (row[0]->beta * row[0]->beta);
    const double r1 = row[1]->bp0_norm / (row[1]->beta * row[1]->beta);
    out.beta_limit.emplace_back(a, std::abs(r0 - r1) / std::max(std::abs(r0), std::abs(r1)));
  }
  return out;
}

}  // namespace pauligap
