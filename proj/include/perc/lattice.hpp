#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace perc {

// Two site-adjacency structures on the same vertex set Z^2.
// G uses the four axis neighbors, GStar additionally the four diagonals.
// Every face of G is close-packed in GStar, which is what makes
// occupied-G crossings and vacant-GStar crossings complementary.
enum class GraphKind { G, GStar };

constexpr GraphKind matching_of(GraphKind k) {
  return k == GraphKind::G ? GraphKind::GStar : GraphKind::G;
}

const char* graph_name(GraphKind k);
std::optional<GraphKind> graph_from_name(const std::string& s);

struct Site {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Site&, const Site&) = default;
};

// Axis-aligned rectangle of sites, all bounds inclusive.
// Rect(0, w, 0, h) holds (w+1)*(h+1) sites.
struct Rect {
  int x0, x1, y0, y1;

  Rect(int x0_, int x1_, int y0_, int y1_);
  static Rect box(int n) { return Rect(-n, n, -n, n); }  // [-n,n]^2

  int ncols() const { return x1 - x0 + 1; }
  int nrows() const { return y1 - y0 + 1; }
  std::int64_t site_count() const {
    return static_cast<std::int64_t>(ncols()) * nrows();
  }
  bool contains(Site s) const {
    return s.x >= x0 && s.x <= x1 && s.y >= y0 && s.y <= y1;
  }
  bool contains(const Rect& r) const {
    return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1;
  }
  // row-major index from (x0, y0)
  std::int64_t index_of(Site s) const {
    return static_cast<std::int64_t>(s.y - y0) * ncols() + (s.x - x0);
  }
  Site site_at(std::int64_t idx) const {
    return Site{x0 + static_cast<int>(idx % ncols()),
                y0 + static_cast<int>(idx / ncols())};
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Sites s with inner <= L-inf distance(s, center) <= outer,
// i.e. box_outer minus the interior of box_inner.
struct Annulus {
  Site center;
  int inner, outer;

  Annulus(Site center_, int inner_, int outer_);
  bool contains(Site s) const;
  Rect bounding() const;
};

bool adjacent(GraphKind k, Site a, Site b);

// Neighbor order is fixed (axis neighbors first) so callers iterating
// neighbors are deterministic.
std::vector<Site> neighbors(GraphKind k, Site s,
                            std::optional<Rect> clip = std::nullopt);

enum class BoundarySide { Inner, Outer };

// Boundary of box_n = [-n,n]^2 under kind k, sorted by (y, x).
// Inner: sites of the box with a neighbor outside.
// Outer: sites outside the box with a neighbor inside.
std::vector<Site> boundary(int n, BoundarySide side, GraphKind k);

}  // namespace perc
