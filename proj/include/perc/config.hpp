#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "perc/lattice.hpp"

namespace perc {

// One occupancy configuration on a Rect. Immutable after construction.
// Bits are packed row-major with per-row word alignment, LSB = x0.
// Configs produced by enumeration carry p = -1 (no sampling provenance).
class Config {
 public:
  static constexpr int kEnumerateCap = 25;

  // occupied(s) <=> site_uniform(seed, replicate, s) < p
  static Config sample(const Rect& rect, double p, std::uint64_t seed,
                       std::uint64_t replicate);

  // pattern bits in row-major site order, bit i = site rect.site_at(i);
  // rect must have at most kEnumerateCap sites
  static Config from_pattern(const Rect& rect, std::uint64_t pattern);

  const Rect& rect() const { return rect_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t replicate() const { return replicate_; }
  bool enumerated() const { return p_ < 0.0; }

  bool occupied(Site s) const {
    std::int64_t rx = s.x - rect_.x0;
    std::int64_t ry = s.y - rect_.y0;
    return (bits_[ry * wpr_ + (rx >> 6)] >> (rx & 63)) & 1u;
  }
  int occupied_count() const;

  int words_per_row() const { return wpr_; }
  const std::vector<std::uint64_t>& words() const { return bits_; }

  // header line "rect x0 x1 y0 y1 p seed replicate", then one 0/1 row per
  // lattice row, top row (y = y1) first
  std::string to_text() const;
  static Config from_text(const std::string& text);

  friend bool operator==(const Config&, const Config&) = default;

 private:
  friend class EnumCursor;
  Config(const Rect& rect, double p, std::uint64_t seed, std::uint64_t rep);

  Rect rect_;
  double p_;
  std::uint64_t seed_, replicate_;
  int wpr_;
  std::vector<std::uint64_t> bits_;
};

// Reusable buffer over all occupancy patterns of a small rect; avoids one
// allocation per pattern in exhaustive loops.
class EnumCursor {
 public:
  explicit EnumCursor(const Rect& rect);  // throws past kEnumerateCap
  std::uint64_t pattern_count() const { return count_; }
  const Config& at(std::uint64_t pattern);

 private:
  Config c_;
  std::uint64_t count_;
};

// Single-pass range over all 2^N configurations of rect, pattern order.
class ConfigRange {
 public:
  explicit ConfigRange(const Rect& rect)
      : cur_(std::make_shared<EnumCursor>(rect)) {}

  class iterator {
   public:
    iterator(std::shared_ptr<EnumCursor> cur, std::uint64_t i)
        : cur_(std::move(cur)), i_(i) {}
    const Config& operator*() const { return cur_->at(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.i_ == b.i_;
    }

   private:
    std::shared_ptr<EnumCursor> cur_;
    std::uint64_t i_;
  };

  iterator begin() const { return iterator(cur_, 0); }
  iterator end() const { return iterator(nullptr, cur_->pattern_count()); }

 private:
  std::shared_ptr<EnumCursor> cur_;
};

inline ConfigRange enumerate_configs(const Rect& rect) {
  return ConfigRange(rect);
}

}  // namespace perc
