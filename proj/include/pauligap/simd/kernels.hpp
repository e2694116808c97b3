#pragma once

#include <cstddef>

namespace pauligap::simd {

enum class Isa { Scalar, Avx2 };

// Hot loops with a scalar reference and vector variants. All pointers are
// plain arrays of length n; no alignment requirement.
struct KernelTable {
  Isa isa;
  const char* name;
  // min_i |(fx_i, fy_i, fz_i) + (sx, sy, sz)|
  double (*min_shifted_norm)(const double* fx, const double* fy, const double* fz, std::size_t n,
                             double sx, double sy, double sz);
  // g0 = 1/(1+|F|^2), gi = F_i/(1+|F|^2)
  void (*green_components)(const double* fx, const double* fy, const double* fz, std::size_t n,
                           double* g0, double* g1, double* g2, double* g3);
  // re = sum v_i c_i, im = sum v_i s_i
  void (*dual_dot)(const double* v, const double* c, const double* s, std::size_t n, double* re,
                   double* im);
};

const KernelTable& scalar_kernels();
// nullptr when the ISA was not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa);

// Active table: best available unless overridden with select_isa.
const KernelTable& kernels();
// Returns false (and leaves the selection unchanged) if unavailable.
bool select_isa(Isa isa);
void reset_isa();

}  // namespace pauligap::simd
