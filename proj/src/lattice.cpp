#include "perc/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace perc {

namespace {

struct Offset {
  int dx, dy;
};

// axis neighbors first, then diagonals
constexpr Offset kOffsetsG[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr Offset kOffsetsGStar[8] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                     {1, 1},  {-1, 1}, {1, -1}, {-1, -1}};

int linf(Site a, Site b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

}  // namespace

const char* graph_name(GraphKind k) {
  return k == GraphKind::G ? "G" : "GStar";
}

std::optional<GraphKind> graph_from_name(const std::string& s) {
  if (s == "G") return GraphKind::G;
  if (s == "GStar") return GraphKind::GStar;
  return std::nullopt;
}

Rect::Rect(int x0_, int x1_, int y0_, int y1_)
    : x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
  if (x0 > x1 || y0 > y1)
    throw std::invalid_argument("Rect: empty bounds");
}

Annulus::Annulus(Site center_, int inner_, int outer_)
    : center(center_), inner(inner_), outer(outer_) {
  if (inner < 1 || outer <= inner)
    throw std::invalid_argument("Annulus: need 1 <= inner < outer");
}

bool Annulus::contains(Site s) const {
  int d = linf(s, center);
  return d >= inner && d <= outer;
}

Rect Annulus::bounding() const {
  return Rect(center.x - outer, center.x + outer, center.y - outer,
              center.y + outer);
}

bool adjacent(GraphKind k, Site a, Site b) {
  int dx = std::abs(a.x - b.x);
  int dy = std::abs(a.y - b.y);
  if (k == GraphKind::G) return dx + dy == 1;
  return std::max(dx, dy) == 1;
}

std::vector<Site> neighbors(GraphKind k, Site s, std::optional<Rect> clip) {
  std::vector<Site> out;
  out.reserve(k == GraphKind::G ? 4 : 8);
  const Offset* offs = k == GraphKind::G ? kOffsetsG : kOffsetsGStar;
  int n = k == GraphKind::G ? 4 : 8;
  for (int i = 0; i < n; ++i) {
    Site t{s.x + offs[i].dx, s.y + offs[i].dy};
    if (clip && !clip->contains(t)) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<Site> boundary(int n, BoundarySide side, GraphKind k) {
  if (n < 0) throw std::invalid_argument("boundary: n must be >= 0");
  std::vector<Site> out;
  Site origin{0, 0};
  auto in_box = [&](Site s) { return linf(s, origin) <= n; };
  // candidates live within one step of the box edge
  for (int y = -n - 1; y <= n + 1; ++y) {
    for (int x = -n - 1; x <= n + 1; ++x) {
      Site s{x, y};
      bool inside = in_box(s);
      if (side == BoundarySide::Inner && !inside) continue;
      if (side == BoundarySide::Outer && inside) continue;
      bool hit = false;
      for (Site t : neighbors(k, s)) {
        if (in_box(t) != inside) {
          hit = true;
          break;
        }
      }
      if (hit) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](Site a, Site b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  return out;
}

}  // namespace perc
