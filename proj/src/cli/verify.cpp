#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/LU>

#include "pauligap/cli/commands.hpp"
#include "pauligap/error.hpp"
#include "pauligap/feshbach.hpp"
#include "pauligap/kernel.hpp"
#include "pauligap/spectrum.hpp"

namespace pauligap::cli {

namespace {

struct Check {
  std::string module;
  std::string name;
  std::string status = "pass";  // pass | fail | skip | info
  Json measured = Json::object();
  std::string detail;
};

Check make(const std::string& module, const std::string& name) {
  Check c;
  c.module = module;
  c.name = name;
  return c;
}

void le(Check& c, const std::string& key, double v, double limit) {
  c.measured[key] = v;
  c.measured[key + "_limit"] = limit;
  if (!(v <= limit)) c.status = "fail";
}

void ge(Check& c, const std::string& key, double v, double limit) {
  c.measured[key] = v;
  c.measured[key + "_limit"] = limit;
  if (!(v >= limit)) c.status = "fail";
}

Check skip(const std::string& module, const std::string& name, const std::string& why) {
  Check c = make(module, name);
  c.status = "skip";
  c.detail = why;
  return c;
}

bool sigma3_only(const Vec3& a) { return a(0) == 0.0 && a(1) == 0.0 && a(2) != 0.0; }

double max_abs(const MatXc& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Json verify_suite(const RunConfig& cfg) {
  const Dispersion disp = cfg.dispersion();
  const Potential pot = cfg.potential();
  const Params p = cfg.params();
  validate(p);
  const int n = cfg.verify_cutoff;
  const int nk = cfg.verify_n_k;
  const Vec2 ktest(0.3, -0.2);
  const auto flux = project_flux(flux_moments(pot), disp.linearization());
  const double d = disp.exponent();
  const double kinetic_floor = std::pow(kPi, d) * disp.k0_lower();

  struct Entry {
    std::string module, name;
    std::function<Check()> fn;
  };
  std::vector<Entry> suite;
  auto add = [&](const char* module, const char* name, std::function<Check()> fn) {
    suite.push_back({module, name, std::move(fn)});
  };

  // model
  add("model", "sandwich", [&] {
    Check c = make("model", "sandwich");
    le(c, "max_violation", check_sandwich(disp), 1e-12);
    return c;
  });
  add("model", "flux_linearity", [&] {
    Check c = make("model", "flux_linearity");
    const Vec3 f1 = flux_moments(pot), f2 = flux_moments(pot.with_amplitudes(2.0 * pot.amplitudes()));
    le(c, "rel_error", (f2 - 2.0 * f1).norm() / std::max(f1.norm(), 1e-300), 1e-12);
    return c;
  });
  add("model", "projection_idempotent", [&] {
    Check c = make("model", "projection_idempotent");
    const auto again = project_flux(flux.phi_par, disp.linearization());
    le(c, "perp_of_parallel", again.norm_perp, 1e-12 * std::max(1.0, flux.phi.norm()));
    le(c, "parallel_change", (again.phi_par - flux.phi_par).norm(), 1e-12 * std::max(1.0, flux.phi.norm()));
    return c;
  });
  add("model", "flux_infimum", [&] {
    if (!(flux.norm_perp > 0.0)) return skip("model", "flux_infimum", "no transverse flux");
    const GapConstants gc = gap_constants(disp, flux);
    if (!gc.certified) return skip("model", "flux_infimum", "dispersion not strictly linearizable");
    Check c = make("model", "flux_infimum");
    const double lmax = std::min(gc.lambda0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      const double lam = lmax * i / 19.0;
      worst = std::min(worst, inf_check(disp, flux, lam) - 0.5 * lam * flux.norm_perp);
    }
    c.measured["lambda_max"] = lmax;
    ge(c, "min_margin", worst, -1e-12);
    return c;
  });

  // planewave
  add("planewave", "hermitian", [&] {
    Check c = make("planewave", "hermitian");
    const MatXc h = assemble_fiber(ktest, n, disp, pot, p).entries;
    le(c, "defect", hermitian_defect(h), 1e-12);
    return c;
  });
  add("planewave", "p0_block", [&] {
    Check c = make("planewave", "p0_block");
    const FiberMatrix h = assemble_fiber(ktest, n, disp, pot, p);
    const Mat2c expect = sigma_dot(disp(-2.0 * kPi * ktest)) + sigma_dot(Vec3(p.lambda() * flux.phi));
    const Mat2c got = split_blocks(h).p0;
    le(c, "error", (got - expect).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, expect.cwiseAbs().maxCoeff()));
    return c;
  });
  add("planewave", "beta_linearity", [&] {
    Check c = make("planewave", "beta_linearity");
    const Params p1{p.alpha, 1.0}, p2{p.alpha, 2.0}, p0{p.alpha, 0.0};
    const MatXc h1 = assemble_fiber(ktest, n, disp, pot, p1).entries;
    const MatXc h2 = assemble_fiber(ktest, n, disp, pot, p2).entries;
    const MatXc h0 = assemble_fiber(ktest, n, disp, pot, p0).entries;
    le(c, "error", max_abs((h2 - h1) - (h1 - h0)), 1e-12 * std::max(1.0, max_abs(h2)));
    return c;
  });
  add("planewave", "free_resolvent_identity", [&] {
    Check c = make("planewave", "free_resolvent_identity");
    const FiberMatrix f = assemble_free(ktest, n, disp);
    MatXc shifted = f.entries;
    shifted.diagonal().array() -= kI;
    const MatXc inv = Eigen::PartialPivLU<MatXc>(shifted).inverse();
    const GreenSymbol g(disp);
    MatXc expect = MatXc::Zero(inv.rows(), inv.cols());
    for (int i = 0; i < f.basis->modes(); ++i) {
      const auto m = f.basis->mode(i);
      expect.block<2, 2>(2 * i, 2 * i) = g(2.0 * kPi * (Vec2(m[0], m[1]) - ktest));
    }
    const double err = max_abs(inv - expect);
    le(c, "error", err, 1e-12);
    return c;
  });

  // spectrum
  add("spectrum", "eigen_residual", [&] {
    Check c = make("spectrum", "eigen_residual");
    EigenOptions eo;
    eo.spot_checks = 4;
    eo.seed = cfg.seed;
    le(c, "max_residual", eigensolve(assemble_fiber(ktest, n, disp, pot, p), eo).max_residual, 1e-10);
    return c;
  });
  add("spectrum", "free_symmetry", [&] {
    Check c = make("spectrum", "free_symmetry");
    const VecX ev = eigensolve(assemble_free(ktest, n, disp)).values;
    double err = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) err = std::max(err, std::abs(ev(i) + ev(ev.size() - 1 - i)));
    le(c, "error", err, 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff()));
    return c;
  });
  add("spectrum", "kinetic_bound", [&] {
    Check c = make("spectrum", "kinetic_bound");
    const KineticMin km = kinetic_minimum(disp, 2 * nk, std::max(n, 1));
    c.measured["k"] = {km.k(0), km.k(1)};
    ge(c, "minimum", km.value, kinetic_floor - 1e-9);
    return c;
  });

  // Gap at the verify resolution, shared by the next three checks.
  GapReport gap;
  double width_fine = 0.0;
  std::string gap_error;
  try {
    gap = detect_gap(band_structure(disp, pot, p, n, nk), cfg.center);
    width_fine = detect_gap(band_structure(disp, pot, p, n, 2 * nk), cfg.center).width;
  } catch (const std::exception& e) {
    gap_error = e.what();
  }
  add("spectrum", "gap", [&] {
    Check c = make("spectrum", "gap");
    if (!gap_error.empty()) throw Error(gap_error);
    c.measured["width"] = gap.width;
    c.measured["ratio"] = gap.ratio;
    if (p.beta == 0.0) {
      le(c, "free_width", gap.width, 1e-12);
    } else if (flux.norm_perp > 0.0 && std::pow(p.alpha, disp.d_prime()) * p.beta <= 0.05) {
      ge(c, "width_vs_bound", gap.width, p.lambda() * flux.norm_perp);
    } else {
      c.status = "info";
      c.detail = "outside the small-coupling regime";
    }
    return c;
  });
  add("spectrum", "gap_symmetry", [&] {
    if (!(p.beta > 0.0) || !sigma3_only(pot.amplitudes()))
      return skip("spectrum", "gap_symmetry", "needs beta > 0 and a sigma_3-only potential");
    if (!gap_error.empty()) throw Error(gap_error);
    Check c = make("spectrum", "gap_symmetry");
    le(c, "abs_a_plus_b", std::abs(gap.lower + gap.upper), 0.1 * gap.width);
    return c;
  });
  add("spectrum", "grid_refinement", [&] {
    if (!gap_error.empty()) throw Error(gap_error);
    Check c = make("spectrum", "grid_refinement");
    c.measured["width_coarse"] = gap.width;
    le(c, "width_fine", width_fine, gap.width + 1e-9);
    return c;
  });
  add("spectrum", "cutoff_convergence", [&] {
    Check c = make("spectrum", "cutoff_convergence");
    const auto conv = convergence_check(Vec2::Zero(), disp, pot, p, std::max(n, 2), -1.0, cfg.center);
    c.status = "info";
    c.measured["delta"] = conv.delta;
    c.measured["converged"] = conv.converged;
    return c;
  });

  // feshbach
  add("feshbach", "schur_random", [&] {
    Check c = make("feshbach", "schur_random");
    const RandomSchurReport r = random_schur_trials(50, 10, 2, cfg.seed);
    c.measured["eigenvalues"] = r.eigenvalues;
    c.measured["roots"] = r.roots;
    le(c, "max_det_ratio", r.max_det_ratio, 1e-8);
    le(c, "max_eig_to_root", r.max_eig_to_root, 1e-8);
    le(c, "max_root_to_eig", r.max_root_to_eig, 1e-8);
    return c;
  });
  add("feshbach", "fp0_hermitian", [&] {
    Check c = make("feshbach", "fp0_hermitian");
    const FeshbachEval ev = schur(assemble_fiber(ktest, n, disp, pot, p), cplx(cfg.z, 0.0));
    le(c, "defect", hermitian_defect(ev.fp0), 1e-12);
    return c;
  });
  add("feshbach", "free_fp0", [&] {
    Check c = make("feshbach", "free_fp0");
    const FeshbachEval ev = schur(assemble_free(ktest, n, disp), cplx(cfg.z, 0.0));
    Mat2c expect = sigma_dot(disp(-2.0 * kPi * ktest));
    expect.diagonal().array() -= cfg.z;
    le(c, "error", (ev.fp0 - expect).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, expect.norm()));
    return c;
  });
  add("feshbach", "q0_kinetic_bound", [&] {
    Check c = make("feshbach", "q0_kinetic_bound");
    const double q = q0_min_singular(assemble_free(Vec2(0.5, 0.0), std::max(n, 1), disp), disp, 0.0);
    ge(c, "q0_min_singular", q, kinetic_floor - 1e-9);
    return c;
  });
  add("feshbach", "sqrt_chi_p0", [&] {
    if (!pot.is_indicator()) return skip("feshbach", "sqrt_chi_p0", "needs an indicator potential");
    Check c = make("feshbach", "sqrt_chi_p0");
    const SqrtChiP0 s = sqrt_chi_p0_norm(FiberAssembler(n, disp, pot, p));
    le(c, "norm", s.norm, s.bound * (1.0 + 1e-12));
    return c;
  });
  add("feshbach", "coupling_beta_linear", [&] {
    if (!pot.is_indicator()) return skip("feshbach", "coupling_beta_linear", "needs an indicator potential");
    Check c = make("feshbach", "coupling_beta_linear");
    const double b = p.beta > 0.0 ? p.beta : 0.2;
    const double s1 = coupling_norms(FiberAssembler(n, disp, pot, Params{p.alpha, b}), ktest, cfg.z).sup_wru;
    const double s2 = coupling_norms(FiberAssembler(n, disp, pot, Params{p.alpha, 2 * b}), ktest, cfg.z).sup_wru;
    const double s0 = coupling_norms(FiberAssembler(n, disp, pot, Params{p.alpha, 0.0}), ktest, cfg.z).sup_wru;
    le(c, "ratio_error", std::abs(s2 / s1 - 2.0), 1e-10);
    le(c, "sup_wru_beta0", s0, 0.0);
    return c;
  });
  add("feshbach", "neumann", [&] {
    if (!pot.is_indicator() || !(p.beta > 0.0))
      return skip("feshbach", "neumann", "needs an indicator potential and beta > 0");
    const FiberAssembler asmb(n, disp, pot, p);
    if (!coupling_norms(asmb, ktest, cfg.z).neumann_ok)
      return skip("feshbach", "neumann", "sup_wru >= 1/3");
    Check c = make("feshbach", "neumann");
    const NeumannReport r = neumann_check(asmb, ktest, cfg.z, cfg.neumann_terms);
    c.measured["stated_bound"] = r.stated_bound;
    c.measured["sup_wru"] = r.sup_wru;
    le(c, "error", r.error, r.rigorous_bound + r.floor);
    return c;
  });

  // kernel
  add("kernel", "symbol_identity", [&] {
    Check c = make("kernel", "symbol_identity");
    const GreenSymbol g(disp);
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i)
      for (int a = 0; a < 16; ++a) {
        const double rho = std::pow(10.0, -4.0 + 7.0 * i / 40.0), t = 2.0 * kPi * a / 16.0;
        worst = std::max(worst, g.identity_residual(Vec2(rho * std::cos(t), rho * std::sin(t))));
      }
    le(c, "max_residual", worst, 1e-13);
    return c;
  });
  add("kernel", "envelope", [&] {
    Check c = make("kernel", "envelope");
    const DecayReport r = decay_report(disp, {0.01, 0.1, 0.5, 1.0, 2.0, 4.0}, cfg.eps);
    c.measured["c_fit"] = r.c_fit;
    c.measured["median_tail_ratio"] = r.median_tail_ratio;
    le(c, "max_tail_ratio", r.max_tail_ratio, 10.0 * r.median_tail_ratio);
    if (!std::isfinite(r.c_fit)) c.status = "fail";
    return c;
  });
  add("kernel", "reflection", [&] {
    Check c = make("kernel", "reflection");
    const Vec2 delta(0.3, 0.4);
    KernelOptions plus;
    plus.plus_i = true;
    const Mat2c km = eval_kernel(disp, -delta, cfg.eps).value;
    const Mat2c kp = eval_kernel(disp, delta, cfg.eps, plus).value;
    le(c, "rel_error", (km.adjoint() - kp).norm() / kp.norm(), 1e-8);
    return c;
  });

  Json checks = Json::array();
  int passed = 0, failed = 0, skipped = 0, info = 0;
  for (const auto& [module, name, f] : suite) {
    Check c;
    try {
      c = f();
    } catch (const std::exception& e) {
      c = make(module, name);
      c.status = "fail";
      c.detail = std::string("error: ") + e.what();
    }
    if (c.status == "pass") ++passed;
    else if (c.status == "fail") ++failed;
    else if (c.status == "skip") ++skipped;
    else ++info;
    Json j;
    j["module"] = c.module;
    j["name"] = c.name;
    j["status"] = c.status;
    j["measured"] = c.measured;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  Json out;
  out["cutoff"] = n;
  out["n_k"] = nk;
  out["gap_width"] = gap_error.empty() ? Json(gap.width) : Json(nullptr);
  out["checks"] = checks;
  out["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}, {"info", info}};
  return out;
}

}  // namespace pauligap::cli
