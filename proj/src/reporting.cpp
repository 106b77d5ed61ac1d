#include "perc/reporting.hpp"

#include <cinttypes>
#include <cstdio>

namespace perc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string CsvRow::line() const {
  char tail[96];
  std::snprintf(tail, sizeof tail, "%" PRIu64 ",", n_samples);
  std::string s = experiment + "," + graph + "," + format_double(param1) +
                  "," + format_double(param2) + "," + format_double(p) + "," +
                  tail + format_double(estimate) + "," + format_double(ci_lo) +
                  "," + format_double(ci_hi) + ",";
  std::snprintf(tail, sizeof tail, "%" PRIu64, seed);
  return s + tail;
}

}  // namespace perc
