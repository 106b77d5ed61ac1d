#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "perc/config.hpp"
#include "perc/lattice.hpp"

namespace perc {

// W x H bit matrix with rect-relative coordinates (0,0 = bottom-left of the
// owning rect). Row-major, one aligned word run per row, LSB = x0.
class BitGrid {
 public:
  BitGrid(int ncols, int nrows);

  static BitGrid occupied_of(const Config& c);
  static BitGrid vacant_of(const Config& c);  // complement inside bounds

  int ncols() const { return ncols_; }
  int nrows() const { return nrows_; }

  bool test(int x, int y) const {
    return (bits_[idx(y, x >> 6)] >> (x & 63)) & 1u;
  }
  void set(int x, int y) { bits_[idx(y, x >> 6)] |= 1ull << (x & 63); }
  void set_column(int x);
  void set_row(int y);
  void set_rect(int x0, int x1, int y0, int y1);  // inclusive, clipped

  bool any() const;
  bool any_and(const BitGrid& o) const;
  int count() const;
  bool empty_row(int y) const;

  BitGrid& operator|=(const BitGrid& o);
  BitGrid& operator&=(const BitGrid& o);
  BitGrid and_not(const BitGrid& o) const;  // this & ~o
  friend bool operator==(const BitGrid&, const BitGrid&) = default;

  // one adjacency step from all set bits (result does not include the seed
  // unless a seed bit is a neighbor of another), clipped to bounds
  BitGrid spread(GraphKind k) const;

  BitGrid flipped_vertical() const;

  void for_each_set(const std::function<void(int x, int y)>& fn) const;

 private:
  std::size_t idx(int y, int w) const {
    return static_cast<std::size_t>(y) * wpr_ + w;
  }
  void clear_tail();

  int ncols_, nrows_, wpr_;
  std::uint64_t tail_mask_;
  std::vector<std::uint64_t> bits_;
};

// Reachable set: grow seed & domain through domain under k-adjacency.
BitGrid closure(const BitGrid& seed, const BitGrid& domain, GraphKind k);

}  // namespace perc
