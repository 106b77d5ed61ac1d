#pragma once

#include <cstdint>

namespace perc::kernels {

// Fills packed occupancy bits for `count` consecutive sites of one lattice row.
// Site x0+i maps to bit i%64 of out[i/64] (LSB first); trailing bits of the
// last word are zero. row_key already folds in seed, replicate and y.
// All variants must produce bit-identical output.
using FillRowFn = void (*)(std::uint64_t row_key, std::int64_t x0, int count,
                           std::uint64_t thresh53, std::uint64_t* out);

void fill_row_scalar(std::uint64_t row_key, std::int64_t x0, int count,
                     std::uint64_t thresh53, std::uint64_t* out);

#if defined(__x86_64__) || defined(_M_X64)
void fill_row_avx2(std::uint64_t row_key, std::int64_t x0, int count,
                   std::uint64_t thresh53, std::uint64_t* out);
#endif

bool avx2_available();

// Kernel selected once at startup from cpu features.
FillRowFn active_fill_row();
const char* active_fill_row_name();

}  // namespace perc::kernels
