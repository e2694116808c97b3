#include <atomic>

#include "pauligap/simd/kernels.hpp"

namespace pauligap::simd {

#if defined(PAULIGAP_HAVE_AVX2)
namespace avx2 {
double min_shifted_norm(const double*, const double*, const double*, std::size_t, double, double,
                        double);
void green_components(const double*, const double*, const double*, std::size_t, double*, double*,
                      double*, double*);
void dual_dot(const double*, const double*, const double*, std::size_t, double*, double*);
}  // namespace avx2
#endif

namespace {

const KernelTable* avx2_table() {
#if defined(PAULIGAP_HAVE_AVX2)
  static const KernelTable t{Isa::Avx2, "avx2", &avx2::min_shifted_norm, &avx2::green_components,
                             &avx2::dual_dot};
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &t : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* best() {
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &scalar_kernels();
    case Isa::Avx2: return avx2_table();
  }
  return nullptr;
}

const KernelTable& kernels() {
  const KernelTable* t = g_active.load();
  if (!t) {
    t = best();
    g_active = t;
  }
  return *t;
}

bool select_isa(Isa isa) {
  const KernelTable* t = kernels_for(isa);
  if (!t) return false;
  g_active = t;
  return true;
}

void reset_isa() { g_active = best(); }

}  // namespace pauligap::simd
