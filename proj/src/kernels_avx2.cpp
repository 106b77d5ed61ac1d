#include "perc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "perc/rng.hpp"

namespace perc::kernels {

namespace {

// 64-bit low multiply by a broadcast constant; AVX2 has no mullo_epi64.
inline __m256i mul64(__m256i a, std::uint64_t c) {
  __m256i b = _mm256_set1_epi64x(static_cast<long long>(c));
  __m256i lo = _mm256_mul_epu32(a, b);
  __m256i a_hi = _mm256_srli_epi64(a, 32);
  __m256i b_hi = _mm256_srli_epi64(b, 32);
  __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a, b_hi),
                                   _mm256_mul_epu32(a_hi, b));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64_vec(__m256i z) {
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mul64(z, 0xbf58476d1ce4e5b9ull);
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mul64(z, 0x94d049bb133111ebull);
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
  return z;
}

}  // namespace

void fill_row_avx2(std::uint64_t row_key, std::int64_t x0, int count,
                   std::uint64_t thresh53, std::uint64_t* out) {
  const std::uint64_t g = rng::kGolden;
  std::uint64_t base = row_key + static_cast<std::uint64_t>(x0) * g;
  __m256i arg = _mm256_add_epi64(
      _mm256_set1_epi64x(static_cast<long long>(base)),
      _mm256_set_epi64x(static_cast<long long>(3 * g),
                        static_cast<long long>(2 * g),
                        static_cast<long long>(g), 0));
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * g));
  // both sides are < 2^53, so a signed 64-bit compare is safe
  const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(thresh53));

  int nwords = (count + 63) / 64;
  int done = 0;
  for (int w = 0; w < nwords; ++w) {
    std::uint64_t word = 0;
    int n = count - w * 64;
    if (n > 64) n = 64;
    int i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256i bits = _mm256_srli_epi64(mix64_vec(arg), 11);
      __m256i lt = _mm256_cmpgt_epi64(thr, bits);
      unsigned m = static_cast<unsigned>(
          _mm256_movemask_pd(_mm256_castsi256_pd(lt)));
      word |= static_cast<std::uint64_t>(m) << i;
      arg = _mm256_add_epi64(arg, step);
    }
    for (; i < n; ++i) {
      std::uint64_t a =
          row_key + static_cast<std::uint64_t>(x0 + done + i) * g;
      word |= static_cast<std::uint64_t>((rng::mix64(a) >> 11) < thresh53)
              << i;
    }
    out[w] = word;
    done += n;
  }
}

}  // namespace perc::kernels

#endif
