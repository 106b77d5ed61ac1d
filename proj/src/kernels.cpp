#include "perc/kernels.hpp"

namespace perc::kernels {

bool avx2_available() {
#if defined(PERC_KERNELS_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

FillRowFn select() {
#if defined(PERC_KERNELS_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  if (avx2_available()) return &fill_row_avx2;
#endif
  return &fill_row_scalar;
}

const FillRowFn g_active = select();

}  // namespace

FillRowFn active_fill_row() { return g_active; }

const char* active_fill_row_name() {
#if defined(PERC_KERNELS_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  if (g_active == &fill_row_avx2) return "avx2";
#endif
  return "scalar";
}

}  // namespace perc::kernels
