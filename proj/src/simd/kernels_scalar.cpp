#include <cmath>
#include <limits>

#include "pauligap/simd/kernels.hpp"

namespace pauligap::simd {

namespace {

double min_shifted_norm(const double* fx, const double* fy, const double* fz, std::size_t n,
                        double sx, double sy, double sz) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double x = fx[i] + sx, y = fy[i] + sy, z = fz[i] + sz;
    double q = x * x + y * y + z * z;
    if (q < best) best = q;
  }
  return std::sqrt(best);
}

void green_components(const double* fx, const double* fy, const double* fz, std::size_t n,
                      double* g0, double* g1, double* g2, double* g3) {
  for (std::size_t i = 0; i < n; ++i) {
    double inv = 1.0 / (1.0 + fx[i] * fx[i] + fy[i] * fy[i] + fz[i] * fz[i]);
    g0[i] = inv;
    g1[i] = fx[i] * inv;
    g2[i] = fy[i] * inv;
    g3[i] = fz[i] * inv;
  }
}

void dual_dot(const double* v, const double* c, const double* s, std::size_t n, double* re,
              double* im) {
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a += v[i] * c[i];
    b += v[i] * s[i];
  }
  *re = a;
  *im = b;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable t{Isa::Scalar, "scalar", &min_shifted_norm, &green_components,
                             &dual_dot};
  return t;
}

}  // namespace pauligap::simd
