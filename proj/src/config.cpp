#include "perc/config.hpp"

#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "perc/kernels.hpp"
#include "perc/rng.hpp"

namespace perc {

Config::Config(const Rect& rect, double p, std::uint64_t seed,
               std::uint64_t rep)
    : rect_(rect),
      p_(p),
      seed_(seed),
      replicate_(rep),
      wpr_((rect.ncols() + 63) / 64),
      bits_(static_cast<std::size_t>(wpr_) * rect.nrows(), 0) {}

Config Config::sample(const Rect& rect, double p, std::uint64_t seed,
                      std::uint64_t replicate) {
  std::uint64_t thresh = rng::occupancy_threshold(p);
  Config c(rect, p, seed, replicate);
  std::uint64_t stream = rng::stream_key(seed, replicate);
  auto fill = kernels::active_fill_row();
  for (int ry = 0; ry < rect.nrows(); ++ry) {
    std::uint64_t row_key =
        stream + static_cast<std::uint64_t>(
                     static_cast<std::int64_t>(rect.y0 + ry)) *
                     rng::kRowSalt;
    fill(row_key, rect.x0, rect.ncols(), thresh,
         c.bits_.data() + static_cast<std::size_t>(ry) * c.wpr_);
  }
  return c;
}

Config Config::from_pattern(const Rect& rect, std::uint64_t pattern) {
  EnumCursor cur(rect);
  if (pattern >= cur.pattern_count())
    throw std::invalid_argument("from_pattern: pattern out of range");
  return cur.at(pattern);
}

int Config::occupied_count() const {
  int n = 0;
  for (std::uint64_t w : bits_) n += std::popcount(w);
  return n;
}

std::string Config::to_text() const {
  char head[128];
  std::snprintf(head, sizeof head, "rect %d %d %d %d %.17g %llu %llu\n",
                rect_.x0, rect_.x1, rect_.y0, rect_.y1, p_,
                static_cast<unsigned long long>(seed_),
                static_cast<unsigned long long>(replicate_));
  std::string out(head);
  for (int y = rect_.y1; y >= rect_.y0; --y) {
    for (int x = rect_.x0; x <= rect_.x1; ++x)
      out.push_back(occupied(Site{x, y}) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

Config Config::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  int x0, x1, y0, y1;
  double p;
  unsigned long long seed, rep;
  if (!(in >> tag >> x0 >> x1 >> y0 >> y1 >> p >> seed >> rep) ||
      tag != "rect")
    throw std::invalid_argument("Config::from_text: bad header");
  Config c(Rect(x0, x1, y0, y1), p, seed, rep);
  for (int y = y1; y >= y0; --y) {
    std::string row;
    if (!(in >> row) || static_cast<int>(row.size()) != c.rect_.ncols())
      throw std::invalid_argument("Config::from_text: bad row");
    for (int i = 0; i < c.rect_.ncols(); ++i) {
      if (row[i] != '0' && row[i] != '1')
        throw std::invalid_argument("Config::from_text: bad cell");
      if (row[i] == '1') {
        std::size_t ry = static_cast<std::size_t>(y - y0);
        c.bits_[ry * c.wpr_ + (i >> 6)] |= 1ull << (i & 63);
      }
    }
  }
  return c;
}

EnumCursor::EnumCursor(const Rect& rect) : c_(rect, -1.0, 0, 0), count_(0) {
  if (rect.site_count() > Config::kEnumerateCap)
    throw std::invalid_argument(
        "enumerate: rect has " + std::to_string(rect.site_count()) +
        " sites, cap is " + std::to_string(Config::kEnumerateCap));
  count_ = 1ull << rect.site_count();
}

const Config& EnumCursor::at(std::uint64_t pattern) {
  int w = c_.rect_.ncols();
  std::uint64_t colmask = (w == 64) ? ~0ull : ((1ull << w) - 1);
  for (int ry = 0; ry < c_.rect_.nrows(); ++ry)
    c_.bits_[ry] = (pattern >> (ry * w)) & colmask;
  return c_;
}

}  // namespace perc
