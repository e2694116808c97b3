#pragma once

#include <vector>

namespace pauligap {

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 1] (Newton on P_n).
Rule gauss_legendre(int n);

// Cached copy for repeated use; thread-safe after first call per n.
const Rule& gauss_legendre_cached(int n);

// 31-point Kronrod extension of the 15-point Gauss rule. gauss_w is zero on
// Kronrod-only nodes.
struct KronrodRule {
  std::vector<double> x;
  std::vector<double> kronrod_w;
  std::vector<double> gauss_w;
};
const KronrodRule& gauss_kronrod31();

// Map a [-1,1] rule onto [a,b] and return sum f(x_i) w_i.
template <class F>
double integrate(const Rule& r, double a, double b, F&& f) {
  double h = 0.5 * (b - a), c = 0.5 * (a + b), s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

}  // namespace pauligap
