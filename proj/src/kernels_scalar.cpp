#include "perc/kernels.hpp"
#include "perc/rng.hpp"

namespace perc::kernels {

void fill_row_scalar(std::uint64_t row_key, std::int64_t x0, int count,
                     std::uint64_t thresh53, std::uint64_t* out) {
  int nwords = (count + 63) / 64;
  for (int w = 0; w < nwords; ++w) {
    std::uint64_t word = 0;
    int n = count - w * 64;
    if (n > 64) n = 64;
    for (int i = 0; i < n; ++i) {
      std::uint64_t a =
          row_key + static_cast<std::uint64_t>(x0 + w * 64 + i) * rng::kGolden;
      std::uint64_t bits = rng::mix64(a) >> 11;
      word |= static_cast<std::uint64_t>(bits < thresh53) << i;
    }
    out[w] = word;
  }
}

}  // namespace perc::kernels
