#include "perc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace perc::rng {

double site_uniform(std::uint64_t seed, std::uint64_t replicate, Site site) {
  std::uint64_t key = stream_key(seed, replicate);
  return static_cast<double>(site_bits53(key, site.x, site.y)) * 0x1.0p-53;
}

std::uint64_t occupancy_threshold(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("occupancy_threshold: p outside [0,1]");
  // p * 2^53 is exact for doubles in [0,1]; ceil makes the integer compare
  // agree with (u < p) for the 53-bit uniforms, including the p*2^53-integral case.
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53)));
}

}  // namespace perc::rng
