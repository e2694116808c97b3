// One line per acceptance criterion: [PASS] or [FAIL], the measured values
// and the pinned tolerance. Exit status is the number of failures.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "pauligap/cli/commands.hpp"
#include "pauligap/cli/output.hpp"
#include "pauligap/feshbach.hpp"
#include "pauligap/kernel.hpp"
#include "pauligap/spectrum.hpp"

using namespace pauligap;
using namespace pauligap::cli;
namespace fs = std::filesystem;

namespace {

fs::path g_root;
int g_failures = 0;

const char* kStandard = R"(
[dispersion]
kind = "dirac"

[potential]
shape = "square"
side = 1.0
amplitudes = [0, 0, 1]

[run]
alpha = 0.1
beta = 0.2
cutoff = 8
n_k = 32
)";

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunConfig config(const std::string& extra, const std::string& dir) {
  RunConfig c = parse_config(std::string(kStandard) + extra);
  c.out_dir = (g_root / dir).string();
  fs::remove_all(c.out_dir);
  return c;
}

void report(int id, bool pass, const std::string& what, double seconds) {
  std::printf("[%s] %d %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, what.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string str(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string str(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void criterion(int id, const std::function<std::pair<bool, std::string>()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::pair<bool, std::string> r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = {false, std::string("error: ") + e.what()};
  }
  report(id, r.first, r.second, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

}  // namespace

int main(int argc, char** argv) {
  g_root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "pauligap_acceptance";
  fs::create_directories(g_root);
  const Dispersion dirac = Dispersion::dirac();
  const Potential square = Potential::square(1.0, Vec3(0, 0, 1));

  // 1. Leading-order gap width at the standard cell, through the CLI path.
  criterion(1, [&] {
    const RunConfig c = config("", "c1_gap");
    std::ostringstream log;
    if (run_command("gap", c, Json::object(), log) != 0) return std::make_pair(false, "gap command failed: " + log.str());
    const Json g = Json::parse(slurp(fs::path(c.out_dir) / "gap.json"))["report"];
    const double w = g["width"].get<double>(), lam = 0.1 * 0.1 * 0.2;
    const double dev = std::abs(w / (2 * lam) - 1);
    return std::make_pair(dev <= 0.15, str("gap width w=%.6g, |w/(2 a^2 b)-1|=%.4f <= 0.15", w, dev));
  });

  // 2 and 3 share a 4x2 sweep at N=8, n_k=16.
  SweepResult sw;
  double sweep_seconds = 0.0;
  std::string sweep_error;
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      RunConfig c = config("", "c2_sweep");
      c.alphas = {0.05, 0.1, 0.15, 0.2};
      c.betas = {0.1, 0.2};
      c.n_k = 16;
      std::ostringstream log;
      if (run_command("sweep", c, Json::object(), log) != 0) sweep_error = "sweep command failed: " + log.str();
      const Json fit = Json::parse(slurp(fs::path(c.out_dir) / "sweep_fit.json"));
      std::istringstream csv(slurp(fs::path(c.out_dir) / "sweep.csv"));
      std::string line;
      std::getline(csv, line);
      while (std::getline(csv, line)) {
        SweepRow r;
        char comma;
        std::istringstream ls(line);
        ls >> r.alpha >> comma >> r.beta >> comma >> r.cutoff >> comma >> r.n_k >> comma >> r.width;
        sw.rows.push_back(r);
      }
      sw.norm_perp = fit["norm_perp"].get<double>();
      for (const auto& s : fit["alpha_slopes"])
        sw.alpha_slopes.push_back({s["beta"].get<double>(), s["slope"].get<double>(), 0, 0, 0});
    } catch (const std::exception& e) {
      sweep_error = e.what();
    }
    sweep_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  {
    bool ok = sweep_error.empty() && !sw.rows.empty();
    double worst = INFINITY;
    int cells = 0;
    for (const auto& r : sw.rows) {
      if (r.alpha * r.beta > 0.05) continue;
      ++cells;
      const double q = r.width / (r.alpha * r.alpha * r.beta * sw.norm_perp);
      worst = std::min(worst, q);
      ok = ok && q >= 1.0;
    }
    report(2, ok,
           sweep_error.empty() ? str("min w/(a^2 b |Phi_perp|) over %d cells = %.4f >= 1", cells, worst)
                               : "error: " + sweep_error,
           sweep_seconds);
  }
  {
    double slope = NAN;
    for (const auto& s : sw.alpha_slopes)
      if (s.beta == 0.2) slope = s.slope;
    report(3, std::abs(slope - 2.0) <= 0.1, str("alpha-slope of log w at beta=0.2: %.4f, |s-2| <= 0.1", slope), 0.0);
  }

  // 4. Free kinetic minimum over a 64x64 grid.
  criterion(4, [&] {
    const KineticMin km = kinetic_minimum(dirac, 64, 2);
    const bool edge = std::min(std::abs(km.k(0)), std::abs(km.k(1))) == 0.0 &&
                      std::max(std::abs(km.k(0)), std::abs(km.k(1))) == 0.5;
    const double err = std::abs(km.value - kPi);
    return std::make_pair(err <= 1e-9 && edge, str("min |F(2pi(m-k))| - pi = %.3g (<= 1e-9) at k=(%g, %g)", err,
                                                   km.k(0), km.k(1)));
  });

  // 5. Remainder scaling of ||B_P0(0)||.
  criterion(5, [&] {
    const Bp0Scaling s = bp0_scaling(dirac, square, {0.05, 0.1, 0.2}, {0.05, 0.1, 0.2, 0.4}, 8, default_bp0_kset());
    double as = NAN, bs = NAN;
    for (const auto& [b, v] : s.alpha_slopes)
      if (b == 0.2) as = v;
    for (const auto& [a, v] : s.beta_slopes)
      if (a == 0.1) bs = v;
    const bool ok = as >= 2.7 && as <= 3.3 && std::abs(bs - 2.0) <= 0.2;
    return std::make_pair(ok, str("alpha-exponent %.4f in [2.7, 3.3]; beta-exponent %.4f, |e-2| <= 0.2", as, bs));
  });

  // 6. Coupling norms.
  criterion(6, [&] {
    const Vec2 k(0, 0);
    const double s1 = coupling_norms(FiberAssembler(8, dirac, square, Params{0.1, 0.5}), k, 0.0).sup_wru;
    const double s2 = coupling_norms(FiberAssembler(8, dirac, square, Params{0.1, 1.0}), k, 0.0).sup_wru;
    const double lin = std::abs(s2 / s1 - 2.0);
    std::vector<double> as{0.1, 0.2, 0.4}, ss;
    for (double a : as) ss.push_back(coupling_norms(FiberAssembler(8, dirac, square, Params{a, 1.0}), k, 0.0).sup_wru);
    const double slope = fit_loglog(as, ss).slope;
    return std::make_pair(lin <= 1e-10 && slope >= 0.7,
                          str("beta-doubling ratio error %.2g <= 1e-10; alpha-slope %.4f >= 0.7", lin, slope));
  });

  // 7. Schur criterion on random Hermitian matrices.
  criterion(7, [&] {
    const RandomSchurReport r = random_schur_trials(50, 10, 2, 20240607);
    return std::make_pair(r.ok, str("50 trials, %d eigenvalues, %d roots: det ratio %.2g, eig->root %.2g, "
                                    "root->eig %.2g (all <= 1e-8)",
                                    r.eigenvalues, r.roots, r.max_det_ratio, r.max_eig_to_root, r.max_root_to_eig));
  });

  // 8. Kernel envelope.
  criterion(8, [&] {
    const DecayReport rep = decay_report(dirac, default_decay_radii(), 1e-3, 8.0);
    std::vector<double> short_r;
    for (const auto& row : rep.rows)
      if (row.r <= 0.1 + 1e-12) short_r.push_back(row.r);
    // The singularity exponent is read where r >> eps.
    const DecayReport fine = decay_report(dirac, short_r, 1e-4);
    const bool slope_ok = fine.short_slope >= -1.2 && fine.short_slope <= -0.8;
    const bool stab_ok = rep.max_stability <= 0.01;
    const bool ok = slope_ok && rep.tail_ok && std::isfinite(rep.c_fit) && stab_ok;
    double worst_r = 0.0;
    for (const auto& row : rep.rows)
      if (row.stability > 0.01) worst_r = std::max(worst_r, row.r);
    return std::make_pair(
        ok, str("short slope %.4f at eps=1e-4 (%.4f at eps=1e-3) in [-1.2, -0.8]; C_fit %.4f, tail max/median %.3f <= "
                "10; eps-halving change %.4f <= 0.01%s",
                fine.short_slope, rep.short_slope, rep.c_fit, rep.max_tail_ratio / rep.median_tail_ratio,
                rep.max_stability,
                worst_r > 0 ? str(" (exceeded for r <= %.3g)", worst_r).c_str() : ""));
  });

  // 9. Fiber identities.
  criterion(9, [&] {
    double free_err = 0.0;
    for (const Vec2& k : {Vec2(0, 0), Vec2(0.25, 0), Vec2(0.5, 0.5), Vec2(-0.3, 0.17)}) {
      const FiberMatrix f = assemble_free(k, 8, dirac);
      MatXc shifted = f.entries;
      shifted.diagonal().array() -= kI;
      const MatXc inv = Eigen::PartialPivLU<MatXc>(shifted).inverse();
      const GreenSymbol g(dirac);
      MatXc expect = MatXc::Zero(inv.rows(), inv.cols());
      for (int i = 0; i < f.basis->modes(); ++i) {
        const auto m = f.basis->mode(i);
        expect.block<2, 2>(2 * i, 2 * i) = g(2 * kPi * (Vec2(m[0], m[1]) - k));
      }
      for (Eigen::Index j = 0; j < inv.cols(); ++j) free_err = std::max(free_err, (inv.col(j) - expect.col(j)).norm());
    }
    const LatticeSumReport ls = lattice_sum_check(dirac, 1e-3, 6, {Eigen::Vector2i(0, 0), Eigen::Vector2i(1, 0)},
                                                  {Vec2(0, 0), Vec2(0.25, 0)});
    double unreg = 0.0;
    for (const auto& c : ls.cases) unreg = std::max(unreg, c.rel_error_unregularized);
    const bool ok = free_err <= 1e-12 && ls.max_rel_error <= 0.01;
    return std::make_pair(ok, str("free fiber resolvent error %.2g <= 1e-12; lattice sum |gamma|<=6, eps=1e-3: "
                                  "rel error %.3g <= 0.01 (vs unregularized G: %.3g)",
                                  free_err, ls.max_rel_error, unreg));
  });

  // 10. No first-order gap without transverse flux.
  criterion(10, [&] {
    RunConfig c = config("", "c10_degenerate");
    c.amplitudes = Vec3(1, 0, 0);
    std::ostringstream log;
    if (run_command("gap", c, Json::object(), log) != 0) return std::make_pair(false, "gap command failed: " + log.str());
    const double w = Json::parse(slurp(fs::path(c.out_dir) / "gap.json"))["report"]["width"].get<double>();
    const double limit = 0.2 * 0.1 * 0.1 * 0.2;
    return std::make_pair(w <= limit, str("Phi_perp=0 gap width %.6g <= %.6g", w, limit));
  });

  // 11. verify is byte-deterministic.
  criterion(11, [&] {
    const std::string extra = "[verify]\ncutoff = 3\nn_k = 6\n";
    RunConfig a = config(extra, "c11_a"), b = config(extra, "c11_b");
    std::ostringstream log;
    const int sa = run_command("verify", a, Json::object(), log);
    const int sb = run_command("verify", b, Json::object(), log);
    const Json ma = Json::parse(slurp(fs::path(a.out_dir) / "manifest.json"));
    int compared = 0;
    bool same = sa == sb;
    for (const auto& f : ma["files"]) {
      const std::string name = f["name"].get<std::string>();
      same = same && slurp(fs::path(a.out_dir) / name) == slurp(fs::path(b.out_dir) / name);
      ++compared;
    }
    // Manifests agree once wall-clock fields and the output path are dropped.
    auto strip = [](Json m) {
      for (const char* k : {"started", "finished", "runtime_s"}) m.erase(k);
      m["config"]["output"].erase("dir");
      return m;
    };
    const Json mb = Json::parse(slurp(fs::path(b.out_dir) / "manifest.json"));
    same = same && strip(ma) == strip(mb);
    ++compared;
    const Json v = Json::parse(slurp(fs::path(a.out_dir) / "verify.json"));
    return std::make_pair(same && compared > 0,
                          str("%d output file(s) identical across two runs (manifest without timestamps); verify status %d, %d check(s) failed",
                              compared, sa, v["summary"]["failed"].get<int>()));
  });

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
