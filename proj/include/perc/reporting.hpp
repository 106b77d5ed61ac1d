#pragma once

#include <cstdint>
#include <string>

namespace perc {

inline constexpr const char* kCsvHeader =
    "experiment,graph,param1,param2,p,n_samples,estimate,ci_lo,ci_hi,seed";

// %.10g under the C locale; equal doubles always print equal bytes
std::string format_double(double v);

struct CsvRow {
  std::string experiment;  // "name" or "name/quantity"
  std::string graph;       // graph name, or "-" when not graph-specific
  double param1 = 0.0, param2 = 0.0;
  double p = 0.0;
  std::uint64_t n_samples = 0;
  double estimate = 0.0, ci_lo = 0.0, ci_hi = 0.0;
  std::uint64_t seed = 0;

  std::string line() const;  // one CSV record, no trailing newline
};

}  // namespace perc
