#include "pauligap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pauligap/error.hpp"

namespace pauligap {

Rule gauss_legendre(int n) {
  if (n < 1) throw Error("gauss_legendre: n must be positive");
  Rule r;
  r.x.assign(n, 0.0);
  r.w.assign(n, 0.0);
  if (n == 1) {
    r.w[0] = 2.0;
    return r;
  }
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

const Rule& gauss_legendre_cached(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

const KronrodRule& gauss_kronrod31() {
  static const KronrodRule rule = [] {
    using K = boost::math::quadrature::gauss_kronrod<double, 31>;
    const auto& ka = K::abscissa();  // non-negative half, origin first
    const auto& kw = K::weights();
    const Rule g = gauss_legendre(15);
    KronrodRule r;
    auto push = [&](double x, double w) {
      r.x.push_back(x);
      r.kronrod_w.push_back(w);
      double gw = 0.0;
      for (std::size_t j = 0; j < g.x.size(); ++j)
        if (std::abs(g.x[j] - x) < 1e-12) gw = g.w[j];
      r.gauss_w.push_back(gw);
    };
    for (std::size_t i = ka.size() - 1; i >= 1; --i) push(-ka[i], kw[i]);
    for (std::size_t i = 0; i < ka.size(); ++i) push(ka[i], kw[i]);
    return r;
  }();
  return rule;
}

}  // namespace pauligap
