#include "perc/bitgrid.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace perc {

BitGrid::BitGrid(int ncols, int nrows)
    : ncols_(ncols),
      nrows_(nrows),
      wpr_((ncols + 63) / 64),
      tail_mask_((ncols % 64) ? ((1ull << (ncols % 64)) - 1) : ~0ull),
      bits_(static_cast<std::size_t>(wpr_) * nrows, 0) {
  if (ncols < 1 || nrows < 1)
    throw std::invalid_argument("BitGrid: empty dimensions");
}

BitGrid BitGrid::occupied_of(const Config& c) {
  BitGrid g(c.rect().ncols(), c.rect().nrows());
  g.bits_ = c.words();
  return g;
}

BitGrid BitGrid::vacant_of(const Config& c) {
  BitGrid g = occupied_of(c);
  for (auto& w : g.bits_) w = ~w;
  g.clear_tail();
  return g;
}

void BitGrid::clear_tail() {
  for (int y = 0; y < nrows_; ++y) bits_[idx(y, wpr_ - 1)] &= tail_mask_;
}

void BitGrid::set_column(int x) {
  for (int y = 0; y < nrows_; ++y) set(x, y);
}

void BitGrid::set_row(int y) {
  for (int w = 0; w < wpr_; ++w)
    bits_[idx(y, w)] = (w == wpr_ - 1) ? tail_mask_ : ~0ull;
}

void BitGrid::set_rect(int x0, int x1, int y0, int y1) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, ncols_ - 1);
  y1 = std::min(y1, nrows_ - 1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) set(x, y);
}

bool BitGrid::any() const {
  for (std::uint64_t w : bits_)
    if (w) return true;
  return false;
}

bool BitGrid::any_and(const BitGrid& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & o.bits_[i]) return true;
  return false;
}

int BitGrid::count() const {
  int n = 0;
  for (std::uint64_t w : bits_) n += std::popcount(w);
  return n;
}

bool BitGrid::empty_row(int y) const {
  for (int w = 0; w < wpr_; ++w)
    if (bits_[idx(y, w)]) return false;
  return true;
}

BitGrid& BitGrid::operator|=(const BitGrid& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

BitGrid& BitGrid::operator&=(const BitGrid& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

BitGrid BitGrid::and_not(const BitGrid& o) const {
  BitGrid r = *this;
  for (std::size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] &= ~o.bits_[i];
  return r;
}

namespace {

// row helpers: shift one bit toward larger/smaller x with cross-word carry
inline void shl_row(const std::uint64_t* in, std::uint64_t* out, int wpr,
                    std::uint64_t tail_mask) {
  std::uint64_t carry = 0;
  for (int w = 0; w < wpr; ++w) {
    std::uint64_t v = in[w];
    out[w] = (v << 1) | carry;
    carry = v >> 63;
  }
  out[wpr - 1] &= tail_mask;
}

inline void shr_row(const std::uint64_t* in, std::uint64_t* out, int wpr) {
  std::uint64_t carry = 0;
  for (int w = wpr - 1; w >= 0; --w) {
    std::uint64_t v = in[w];
    out[w] = (v >> 1) | (carry << 63);
    carry = v & 1;
  }
}

}  // namespace

BitGrid BitGrid::spread(GraphKind k) const {
  BitGrid out(ncols_, nrows_);
  std::vector<std::uint64_t> left(wpr_), right(wpr_);
  // horizontal components per row, then vertical/diagonal joins
  std::vector<std::uint64_t> horiz(bits_.size());
  for (int y = 0; y < nrows_; ++y) {
    const std::uint64_t* row = bits_.data() + idx(y, 0);
    shl_row(row, left.data(), wpr_, tail_mask_);
    shr_row(row, right.data(), wpr_);
    for (int w = 0; w < wpr_; ++w) {
      std::uint64_t h = left[w] | right[w];
      horiz[idx(y, w)] = h;
      out.bits_[idx(y, w)] |= h;
    }
  }
  for (int y = 0; y < nrows_; ++y) {
    for (int dy = -1; dy <= 1; dy += 2) {
      int ys = y + dy;
      if (ys < 0 || ys >= nrows_) continue;
      for (int w = 0; w < wpr_; ++w) {
        std::uint64_t v = bits_[idx(ys, w)];
        if (k == GraphKind::GStar) v |= horiz[idx(ys, w)];
        out.bits_[idx(y, w)] |= v;
      }
    }
  }
  return out;
}

BitGrid BitGrid::flipped_vertical() const {
  BitGrid out(ncols_, nrows_);
  for (int y = 0; y < nrows_; ++y)
    for (int w = 0; w < wpr_; ++w)
      out.bits_[out.idx(nrows_ - 1 - y, w)] = bits_[idx(y, w)];
  return out;
}

void BitGrid::for_each_set(const std::function<void(int, int)>& fn) const {
  for (int y = 0; y < nrows_; ++y) {
    for (int w = 0; w < wpr_; ++w) {
      std::uint64_t v = bits_[idx(y, w)];
      while (v) {
        int b = std::countr_zero(v);
        v &= v - 1;
        fn(w * 64 + b, y);
      }
    }
  }
}

BitGrid closure(const BitGrid& seed, const BitGrid& domain, GraphKind k) {
  BitGrid reach = seed;
  reach &= domain;
  BitGrid frontier = reach;
  while (frontier.any()) {
    BitGrid next = frontier.spread(k);
    next &= domain;
    next = next.and_not(reach);
    reach |= next;
    frontier = next;
  }
  return reach;
}

}  // namespace perc
