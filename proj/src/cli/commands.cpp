#include "pauligap/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "pauligap/cli/output.hpp"
#include "pauligap/error.hpp"
#include "pauligap/feshbach.hpp"
#include "pauligap/kernel.hpp"
#include "pauligap/parallel.hpp"
#include "pauligap/simd/kernels.hpp"
#include "pauligap/spectrum.hpp"

#ifndef PAULIGAP_VERSION
#define PAULIGAP_VERSION "dev"
#endif

namespace pauligap::cli {

namespace {

struct Context {
  const RunConfig& cfg;
  OutputDir& out;
  std::ostream& log;
  Json diagnostics = Json::object();
  Json fitted = Json::object();
  bool partial = false;
  int status = 0;
};

Json vec_json(const Vec3& v) { return Json::array({v(0), v(1), v(2)}); }
Json vec_json(const Vec2& v) { return Json::array({v(0), v(1)}); }

Json mat_json(const MatXc& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Json header(const std::string& kind) {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = kind;
  return j;
}

Json gap_json(const GapReport& g) {
  Json j;
  j["lower"] = g.lower;
  j["upper"] = g.upper;
  j["center"] = g.center;
  j["width"] = g.width;
  j["predicted_halfwidth_leading"] = g.predicted_halfwidth_leading;
  j["ratio"] = g.ratio;
  j["n_k"] = g.n_k;
  j["cutoff"] = g.cutoff;
  j["lambda"] = g.lambda;
  j["norm_perp"] = g.norm_perp;
  j["d_prime"] = g.d_prime;
  j["alpha"] = g.alpha;
  j["beta"] = g.beta;
  return j;
}

// ------------------------------------------------------------ bands

void cmd_bands(Context& c) {
  const auto disp = c.cfg.dispersion();
  const auto pot = c.cfg.potential();
  const Params p = c.cfg.params();
  validate(p);
  const BandStructure bs = band_structure(disp, pot, p, c.cfg.cutoff, c.cfg.n_k);

  std::string csv = "k1,k2,band_index,energy\n";
  for (std::size_t i = 0; i < bs.k.size(); ++i)
    for (Eigen::Index b = 0; b < bs.bands[i].size(); ++b)
      csv += fmt(bs.k[i](0)) + "," + fmt(bs.k[i](1)) + "," + std::to_string(b) + "," +
             fmt(bs.bands[i](b)) + "\n";
  c.out.write("bands.csv", csv);

  EigenOptions eo;
  eo.spot_checks = 4;
  eo.seed = c.cfg.seed;
  const double resid = eigensolve(assemble_fiber(bs.k.front(), c.cfg.cutoff, disp, pot, p), eo).max_residual;

  Json j = header("bands");
  j["dispersion"] = bs.meta.dispersion;
  j["potential"] = bs.meta.potential;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["cutoff"] = bs.meta.cutoff;
  j["n_k"] = bs.meta.n_k;
  j["dim"] = bs.bands.empty() ? 0 : int(bs.bands.front().size());
  j["k_points"] = bs.k.size();
  j["norm_perp"] = bs.meta.norm_perp;
  j["spot_check_residual"] = resid;
  c.out.write("bands.json", dump_json(j));
  c.diagnostics["spot_check_residual"] = resid;
}

// ------------------------------------------------------------ gap

void cmd_gap(Context& c) {
  const auto disp = c.cfg.dispersion();
  const auto pot = c.cfg.potential();
  const Params p = c.cfg.params();
  validate(p);
  const GapReport g = detect_gap(band_structure(disp, pot, p, c.cfg.cutoff, c.cfg.n_k), c.cfg.center);

  Json j = header("gap");
  j["report"] = gap_json(g);
  j["grid_note"] = "finite k-grid: the detected gap over-approximates the true gap";
  const auto flux = project_flux(flux_moments(pot), disp.linearization());
  j["flux"] = {{"phi", vec_json(flux.phi)},
               {"phi_par", vec_json(flux.phi_par)},
               {"phi_perp", vec_json(flux.phi_perp)},
               {"norm_perp", flux.norm_perp}};
  if (flux.norm_perp > 0.0) {
    const GapConstants gc = gap_constants(disp, flux);
    j["constants"] = {{"M", gc.M},
                      {"K_rem", gc.K_rem},
                      {"lambda0", std::isinf(gc.lambda0) ? Json("inf") : Json(gc.lambda0)},
                      {"certified", gc.certified}};
  } else {
    j["constants"] = nullptr;
  }
  if (c.cfg.cutoff >= 2) {
    const auto conv = convergence_check(Vec2::Zero(), disp, pot, p, c.cfg.cutoff, -1.0, c.cfg.center);
    j["convergence"] = {{"k", vec_json(Vec2(0.0, 0.0))}, {"delta", conv.delta}, {"converged", conv.converged}};
    c.diagnostics["convergence_delta_k0"] = conv.delta;
    c.diagnostics["converged"] = conv.converged;
  }
  c.out.write("gap.json", dump_json(j));
  c.fitted["width"] = g.width;
  c.fitted["ratio"] = g.ratio;
}

// ------------------------------------------------------------ sweep

void cmd_sweep(Context& c) {
  const auto disp = c.cfg.dispersion();
  const auto pot = c.cfg.potential();
  const SweepResult res = sweep(disp, pot, c.cfg.alphas, c.cfg.betas, c.cfg.cutoff, c.cfg.n_k, c.cfg.center);

  std::string csv = "alpha,beta,N,n_k,width,ratio,runtime_s\n";
  Json errors = Json::array();
  Json inclusion = Json::array();
  for (const auto& r : res.rows) {
    csv += fmt(r.alpha) + "," + fmt(r.beta) + "," + std::to_string(r.cutoff) + "," +
           std::to_string(r.n_k) + "," + fmt(r.width) + "," + fmt(r.ratio) + "," + fmt(r.runtime_s) + "\n";
    if (!r.error.empty()) {
      errors.push_back({{"alpha", r.alpha}, {"beta", r.beta}, {"error", r.error}});
      continue;
    }
    const double corr = std::pow(r.alpha, res.d_prime) * r.beta;
    if (corr <= 0.05)
      inclusion.push_back({{"alpha", r.alpha},
                           {"beta", r.beta},
                           {"width", r.width},
                           {"bound", r.alpha * r.alpha * r.beta * res.norm_perp},
                           {"holds", r.width >= r.alpha * r.alpha * r.beta * res.norm_perp}});
  }
  c.out.write("sweep.csv", csv);

  Json j = header("sweep_fit");
  j["norm_perp"] = res.norm_perp;
  j["d_prime"] = res.d_prime;
  Json slopes = Json::array();
  for (const auto& s : res.alpha_slopes)
    slopes.push_back({{"beta", s.beta}, {"slope", s.slope}, {"intercept", s.intercept},
                      {"residual", s.residual}, {"points", s.points}});
  j["alpha_slopes"] = slopes;
  j["c_fit"] = res.c_fit ? Json(*res.c_fit) : Json(nullptr);
  j["c_fit_note"] = "empirical: least squares of width = 2 lambda (|Phi_perp|/2 - C alpha^d' beta)";
  j["inclusion"] = inclusion;
  j["errors"] = errors;
  c.out.write("sweep_fit.json", dump_json(j));
  c.fitted["alpha_slopes"] = slopes;
  c.fitted["c_fit"] = j["c_fit"];
  if (!errors.empty()) {
    c.partial = true;
    c.status = 1;
    c.log << "sweep: " << errors.size() << " cell(s) failed\n";
  }
}

// ------------------------------------------------------------ feshbach

void cmd_feshbach(Context& c) {
  const auto disp = c.cfg.dispersion();
  const auto pot = c.cfg.potential();
  const Params p = c.cfg.params();
  validate(p);
  const FiberAssembler asmb(c.cfg.cutoff, disp, pot, p);
  const FiberMatrix h = asmb.assemble(c.cfg.k);
  const cplx z(c.cfg.z, 0.0);

  Json j = header("feshbach");
  j["k"] = vec_json(c.cfg.k);
  j["z"] = c.cfg.z;
  Json errors = Json::array();
  auto guarded = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back({{"step", what}, {"error", e.what()}});
    }
  };

  guarded("schur", [&] {
    const FeshbachEval ev = schur(h, z);
    j["fp0"] = mat_json(ev.fp0);
    j["bp0"] = mat_json(ev.bp0);
    j["bp0_norm"] = ev.bp0_norm;
    j["det_fp0"] = {ev.fp0.determinant().real(), ev.fp0.determinant().imag()};
  });
  guarded("q0", [&] {
    j["q0_min_singular"] = c.cfg.cutoff >= 1 ? Json(q0_min_singular(asmb.assemble_free(c.cfg.k), disp, c.cfg.z))
                                             : Json(nullptr);
  });
  guarded("coupling", [&] {
    if (!pot.is_indicator()) {
      j["coupling"] = nullptr;
      return;
    }
    const CouplingNorms cn = coupling_norms(asmb, c.cfg.k, z);
    Json t = Json::array();
    for (int a = 0; a < 3; ++a) t.push_back({cn.wru(a, 0), cn.wru(a, 1), cn.wru(a, 2)});
    j["coupling"] = {{"wru", t}, {"sup_wru", cn.sup_wru}, {"neumann_ok", cn.neumann_ok},
                     {"note", "truncated Q0: norms are lower bounds to the untruncated ones"}};
    c.fitted["sup_wru"] = cn.sup_wru;
    const SqrtChiP0 sp = sqrt_chi_p0_norm(asmb);
    j["sqrt_chi_p0"] = {{"norm", sp.norm}, {"bound", sp.bound}};
    j["free_resolvent_sandwich"] = free_resolvent_sandwich(asmb, c.cfg.k);
    if (cn.neumann_ok && p.beta > 0.0) {
      const NeumannReport nr = neumann_check(asmb, c.cfg.k, z, c.cfg.neumann_terms);
      j["neumann"] = {{"terms", nr.terms},         {"error", nr.error},
                      {"stated_bound", nr.stated_bound}, {"rigorous_bound", nr.rigorous_bound},
                      {"floor", nr.floor},         {"factor_gap", nr.factor_gap},
                      {"within_bound", nr.within_bound}};
    }
  });

  std::string scan_csv = "z,min_singular,bp0_norm\n";
  guarded("root_check", [&] {
    RootCheckOptions o;
    o.window_lo = c.cfg.window_lo;
    o.window_hi = c.cfg.window_hi;
    o.scan_points = c.cfg.scan_points;
    o.scan_halfwidth = c.cfg.scan_halfwidth;
    o.norm_perp = project_flux(flux_moments(pot), disp.linearization()).norm_perp;
    const RootCheckReport r = feshbach_root_check(h, o);
    j["root_check"] = {{"window", {o.window_lo, o.window_hi}},
                       {"eigenvalues_in_window", r.eigenvalues_in_window},
                       {"checked", r.checked},
                       {"max_det_ratio", r.max_det_ratio},
                       {"max_root_distance", r.max_root_distance},
                       {"roots_ok", r.roots_ok},
                       {"scan_halfwidth", r.scan_halfwidth},
                       {"scan_min_singular", r.scan_min_singular},
                       {"scan_threshold", r.scan_threshold},
                       {"scan_ok", r.scan_ok}};
    for (std::size_t i = 0; i < r.scan_z.size(); ++i)
      scan_csv += fmt(r.scan_z[i]) + "," + fmt(r.scan_smin[i]) + "," + fmt(r.scan_bp0[i]) + "\n";
  });
  c.out.write("feshbach_scan.csv", scan_csv);

  if (!c.cfg.bp0_alphas.empty() && !c.cfg.bp0_betas.empty()) {
    guarded("bp0_scaling", [&] {
      const Bp0Scaling s = bp0_scaling(disp, pot, c.cfg.bp0_betas, c.cfg.bp0_alphas, c.cfg.bp0_cutoff,
                                       default_bp0_kset(), z);
      std::string csv = "alpha,beta,bp0_norm,sup_wru,in_regime,normalized\n";
      for (const auto& cell : s.cells)
        csv += fmt(cell.alpha) + "," + fmt(cell.beta) + "," + fmt(cell.bp0_norm) + "," + fmt(cell.sup_wru) +
               "," + (cell.in_regime ? "1" : "0") + "," + fmt(cell.normalized) + "\n";
      c.out.write("bp0_scaling.csv", csv);
      auto pairs = [](const std::vector<std::pair<double, double>>& v) {
        Json a = Json::array();
        for (const auto& [x, y] : v) a.push_back({x, y});
        return a;
      };
      j["bp0_scaling"] = {{"alpha_slopes", pairs(s.alpha_slopes)},
                          {"beta_slopes", pairs(s.beta_slopes)},
                          {"beta_limit", pairs(s.beta_limit)},
                          {"uniform_c", s.uniform_c},
                          {"excluded", s.excluded}};
      c.fitted["bp0_alpha_slopes"] = pairs(s.alpha_slopes);
      c.fitted["bp0_beta_slopes"] = pairs(s.beta_slopes);
    });
  }
  j["errors"] = errors;
  c.out.write("feshbach.json", dump_json(j));
  if (!errors.empty()) {
    c.partial = true;
    c.status = 1;
    for (const auto& e : errors) c.log << "feshbach: " << e["step"].get<std::string>() << ": "
                                       << e["error"].get<std::string>() << "\n";
  }
}

// ------------------------------------------------------------ kernel

void cmd_kernel(Context& c) {
  const auto disp = c.cfg.dispersion();
  const auto radii = c.cfg.radii.empty() ? default_decay_radii() : c.cfg.radii;
  const DecayReport rep = decay_report(disp, radii, c.cfg.eps, c.cfg.stability_rmax);

  std::string csv = "r,value_norm,envelope,ratio,quadrature_error,value_norm_half_eps,stability\n";
  for (const auto& r : rep.rows)
    csv += fmt(r.r) + "," + fmt(r.value_norm) + "," + fmt(r.envelope) + "," + fmt(r.ratio) + "," +
           fmt(r.quadrature_error) + "," + fmt(r.value_norm_half_eps) + "," + fmt(r.stability) + "\n";
  c.out.write("kernel_decay.csv", csv);

  Json j = header("kernel");
  j["eps"] = rep.eps;
  j["d"] = rep.d;
  j["short_slope"] = rep.short_slope;
  j["short_points"] = rep.short_points;
  j["c_fit"] = rep.c_fit;
  j["median_tail_ratio"] = rep.median_tail_ratio;
  j["max_tail_ratio"] = rep.max_tail_ratio;
  j["tail_ok"] = rep.tail_ok;
  j["max_stability"] = rep.max_stability;
  if (c.cfg.lattice) {
    const LatticeSumReport ls = lattice_sum_check(disp, c.cfg.lattice_eps, c.cfg.lattice_gamma,
                                                  {Eigen::Vector2i(0, 0), Eigen::Vector2i(1, 0)},
                                                  {Vec2(0.0, 0.0), Vec2(0.25, 0.0)});
    Json cases = Json::array();
    for (const auto& lc : ls.cases)
      cases.push_back({{"m", {lc.m(0), lc.m(1)}}, {"k", vec_json(lc.k)}, {"j", lc.j},
                       {"rel_error", lc.rel_error}, {"rel_error_unregularized", lc.rel_error_unregularized}});
    j["lattice_sum"] = {{"eps", ls.eps}, {"gamma_max", ls.gamma_max}, {"max_rel_error", ls.max_rel_error},
                        {"cases", cases}};
    c.fitted["lattice_max_rel_error"] = ls.max_rel_error;
  }
  c.out.write("kernel.json", dump_json(j));
  c.fitted["kernel_c_fit"] = rep.c_fit;
  c.fitted["kernel_short_slope"] = rep.short_slope;
}

// ------------------------------------------------------------ verify

void cmd_verify(Context& c) {
  Json j = header("verify");
  const Json suite = verify_suite(c.cfg);
  for (auto it = suite.begin(); it != suite.end(); ++it) j[it.key()] = it.value();
  c.out.write("verify.json", dump_json(j));
  const int failed = suite["summary"]["failed"].get<int>();
  c.diagnostics["verify_failed"] = failed;
  if (failed > 0) {
    c.status = 3;
    c.log << "verify: " << failed << " check(s) failed\n";
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"bands", "gap", "sweep", "feshbach", "kernel", "verify"};
  return names;
}

int run_command(const std::string& command, const RunConfig& cfg, const Json& invocation,
                std::ostream& log) {
  OutputDir out(cfg.out_dir);
  Context c{cfg, out, log};
  const std::string started = utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();
  std::string error;
  try {
    if (command == "bands") cmd_bands(c);
    else if (command == "gap") cmd_gap(c);
    else if (command == "sweep") cmd_sweep(c);
    else if (command == "feshbach") cmd_feshbach(c);
    else if (command == "kernel") cmd_kernel(c);
    else if (command == "verify") cmd_verify(c);
    else throw Error("unknown command '" + command + "'");
  } catch (const std::exception& e) {
    error = e.what();
    c.partial = !out.inventory().empty();
    c.status = 1;
    log << "error: " << error << "\n";
  }

  Json m = header("manifest");
  m["tool"] = "pauligap";
  m["version"] = PAULIGAP_VERSION;
  m["command"] = command;
  m["invocation"] = invocation;
  m["config"] = cfg.echo();
  m["started"] = started;
  m["finished"] = utc_timestamp();
  m["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  m["threads"] = thread_count();
  m["simd"] = simd::kernels().name;
  m["diagnostics"] = c.diagnostics;
  m["fitted"] = c.fitted;
  m["status"] = c.status;
  m["error"] = error.empty() ? Json(nullptr) : Json(error);
  m["partial"] = c.partial;
  m["files"] = out.inventory();
  out.write("manifest.json", dump_json(m));
  return c.status;
}

}  // namespace pauligap::cli
