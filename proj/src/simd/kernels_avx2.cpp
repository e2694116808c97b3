// Built with -mavx2 -mfma. Keep this file free of inline library templates
// so no AVX2-compiled copy of a shared symbol can leak into other objects.
#include <immintrin.h>

#include <cstddef>

namespace pauligap::simd::avx2 {

double min_shifted_norm(const double* fx, const double* fy, const double* fz, std::size_t n,
                        double sx, double sy, double sz) {
  const __m256d vx = _mm256_set1_pd(sx), vy = _mm256_set1_pd(sy), vz = _mm256_set1_pd(sz);
  __m256d best = _mm256_set1_pd(__builtin_inf());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_add_pd(_mm256_loadu_pd(fx + i), vx);
    __m256d y = _mm256_add_pd(_mm256_loadu_pd(fy + i), vy);
    __m256d z = _mm256_add_pd(_mm256_loadu_pd(fz + i), vz);
    __m256d q = _mm256_fmadd_pd(z, z, _mm256_fmadd_pd(y, y, _mm256_mul_pd(x, x)));
    best = _mm256_min_pd(best, q);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, best);
  double b = lanes[0];
  for (int l = 1; l < 4; ++l) b = lanes[l] < b ? lanes[l] : b;
  for (; i < n; ++i) {
    double x = fx[i] + sx, y = fy[i] + sy, z = fz[i] + sz;
    double q = x * x + y * y + z * z;
    b = q < b ? q : b;
  }
  return __builtin_sqrt(b);
}

void green_components(const double* fx, const double* fy, const double* fz, std::size_t n,
                      double* g0, double* g1, double* g2, double* g3) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(fx + i), y = _mm256_loadu_pd(fy + i), z = _mm256_loadu_pd(fz + i);
    __m256d d = _mm256_fmadd_pd(z, z, _mm256_fmadd_pd(y, y, _mm256_fmadd_pd(x, x, one)));
    __m256d inv = _mm256_div_pd(one, d);
    _mm256_storeu_pd(g0 + i, inv);
    _mm256_storeu_pd(g1 + i, _mm256_mul_pd(x, inv));
    _mm256_storeu_pd(g2 + i, _mm256_mul_pd(y, inv));
    _mm256_storeu_pd(g3 + i, _mm256_mul_pd(z, inv));
  }
  for (; i < n; ++i) {
    double inv = 1.0 / (1.0 + fx[i] * fx[i] + fy[i] * fy[i] + fz[i] * fz[i]);
    g0[i] = inv;
    g1[i] = fx[i] * inv;
    g2[i] = fy[i] * inv;
    g3[i] = fz[i] * inv;
  }
}

void dual_dot(const double* v, const double* c, const double* s, std::size_t n, double* re,
              double* im) {
  __m256d a = _mm256_setzero_pd(), b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(v + i);
    a = _mm256_fmadd_pd(x, _mm256_loadu_pd(c + i), a);
    b = _mm256_fmadd_pd(x, _mm256_loadu_pd(s + i), b);
  }
  double la[4], lb[4];
  _mm256_storeu_pd(la, a);
  _mm256_storeu_pd(lb, b);
  double sa = (la[0] + la[1]) + (la[2] + la[3]);
  double sb = (lb[0] + lb[1]) + (lb[2] + lb[3]);
  for (; i < n; ++i) {
    sa += v[i] * c[i];
    sb += v[i] * s[i];
  }
  *re = sa;
  *im = sb;
}

}  // namespace pauligap::simd::avx2
