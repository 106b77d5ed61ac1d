#include "perc/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace perc {
namespace {

// neighbor steps sorted by (dy, dx); the crossing extractor explores
// downward-first so it hugs the vacant cluster below
constexpr int kLowFirstG[4][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
constexpr int kLowFirstGStar[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                      {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

struct RelBox {
  int x0, x1, y0, y1;
};

RelBox rel_box(const Rect& rect, const std::optional<Rect>& sub) {
  const Rect s = sub.value_or(rect);
  if (!rect.contains(s))
    throw std::invalid_argument("sub rect not inside the configuration rect");
  return {s.x0 - rect.x0, s.x1 - rect.x0, s.y0 - rect.y0, s.y1 - rect.y0};
}

BitGrid mask_of(const Config& c, const RelBox& b) {
  BitGrid m(c.rect().ncols(), c.rect().nrows());
  m.set_rect(b.x0, b.x1, b.y0, b.y1);
  return m;
}

BitGrid grid_of(const Config& c, Occupancy occ) {
  return occ == Occupancy::Occupied ? BitGrid::occupied_of(c)
                                    : BitGrid::vacant_of(c);
}

BitGrid path_bits(const SitePath& p, const Rect& rect) {
  BitGrid g(rect.ncols(), rect.nrows());
  for (Site s : p.sites()) {
    if (!rect.contains(s))
      throw std::invalid_argument("path site outside the configuration rect");
    g.set(s.x - rect.x0, s.y - rect.y0);
  }
  return g;
}

bool crossing_in(const BitGrid& domain, const RelBox& b, Direction dir,
                 GraphKind kind) {
  BitGrid start(domain.ncols(), domain.nrows());
  BitGrid target(domain.ncols(), domain.nrows());
  if (dir == Direction::Horizontal) {
    start.set_column(b.x0);
    target.set_column(b.x1);
  } else {
    start.set_row(b.y0);
    target.set_row(b.y1);
  }
  start &= domain;
  if (!start.any()) return false;
  return closure(start, domain, kind).any_and(target);
}

// Lowest left-right path through occ, as a relative site sequence.
// occ and vac must already be restricted to the box. The path is found by
// walking the occupied boundary of V, the vacant matching-kind cluster of the
// bottom row: every crossing must use that boundary to get past V, and the
// lowest one stays on it. Exploration is depth-first, lowest neighbor first;
// a start or branch that failed can never appear on the crossing, so visited
// marks are kept across starts.
std::optional<std::vector<Site>> lowest_rel(const BitGrid& occ,
                                            const BitGrid& vac, const RelBox& b,
                                            GraphKind kind) {
  const GraphKind m = matching_of(kind);
  BitGrid bottom(occ.ncols(), occ.nrows());
  bottom.set_row(b.y0);

  BitGrid seeds = bottom;
  seeds &= vac;
  BitGrid v = closure(seeds, vac, m);

  BitGrid cand = v.spread(m);
  cand |= bottom;
  cand &= occ;

  const int deg = kind == GraphKind::G ? 4 : 8;
  const auto* offs = kind == GraphKind::G ? kLowFirstG : kLowFirstGStar;
  const int w = occ.ncols(), h = occ.nrows();

  BitGrid visited(w, h);
  struct Frame {
    int x, y, ni;
  };
  std::vector<Frame> stack;

  for (int sy = b.y0; sy <= b.y1; ++sy) {
    if (!cand.test(b.x0, sy) || visited.test(b.x0, sy)) continue;
    stack.clear();
    stack.push_back({b.x0, sy, 0});
    visited.set(b.x0, sy);
    if (b.x0 == b.x1) return std::vector<Site>{Site{b.x0, sy}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.ni == deg) {
        stack.pop_back();
        continue;
      }
      const int nx = f.x + offs[f.ni][0];
      const int ny = f.y + offs[f.ni][1];
      ++f.ni;
      if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
      if (!cand.test(nx, ny) || visited.test(nx, ny)) continue;
      visited.set(nx, ny);
      stack.push_back({nx, ny, 0});
      if (nx == b.x1) {
        std::vector<Site> path;
        path.reserve(stack.size());
        for (const Frame& fr : stack) path.push_back(Site{fr.x, fr.y});
        return path;
      }
    }
  }
  return std::nullopt;
}

std::optional<SitePath> extremal_crossing(const Config& c, GraphKind kind,
                                          const std::optional<Rect>& sub,
                                          bool lowest) {
  const Rect& rect = c.rect();
  RelBox b = rel_box(rect, sub);
  const BitGrid box = mask_of(c, b);
  BitGrid occ = BitGrid::occupied_of(c);
  BitGrid vac = BitGrid::vacant_of(c);
  occ &= box;
  vac &= box;

  const int h = rect.nrows();
  if (!lowest) {
    occ = occ.flipped_vertical();
    vac = vac.flipped_vertical();
    b = RelBox{b.x0, b.x1, h - 1 - b.y1, h - 1 - b.y0};
  }
  auto rel = lowest_rel(occ, vac, b, kind);
  if (!rel) {
    if (crossing_in(occ, b, Direction::Horizontal, kind))
      throw std::logic_error("crossing exists but extraction failed on\n" +
                             c.to_text());
    return std::nullopt;
  }
  std::vector<Site> abs;
  abs.reserve(rel->size());
  for (Site s : *rel)
    abs.push_back(Site{rect.x0 + s.x,
                       lowest ? rect.y0 + s.y : rect.y0 + (h - 1 - s.y)});
  return SitePath(kind, std::move(abs));
}

int cut_delta(Site a, Site b, Site center) {
  // cut: horizontal half-line y = center.y + 1/2, x > center.x
  if (a.y == center.y && b.y == center.y + 1)
    return a.x + b.x > 2 * center.x ? 1 : 0;
  if (b.y == center.y && a.y == center.y + 1)
    return a.x + b.x > 2 * center.x ? -1 : 0;
  return 0;
}

}  // namespace

SitePath::SitePath(GraphKind k, std::vector<Site> sites)
    : kind_(k), sites_(std::move(sites)), sorted_(sites_) {
  std::sort(sorted_.begin(), sorted_.end());
  if (std::adjacent_find(sorted_.begin(), sorted_.end()) != sorted_.end())
    throw std::invalid_argument("path revisits a site");
  for (std::size_t i = 1; i < sites_.size(); ++i)
    if (!adjacent(kind_, sites_[i - 1], sites_[i]))
      throw std::invalid_argument("consecutive path sites not adjacent");
}

bool SitePath::contains(Site s) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), s);
}

bool has_crossing(const Config& c, const CrossingSpec& spec,
                  std::optional<Rect> sub) {
  const RelBox b = rel_box(c.rect(), sub);
  BitGrid domain = grid_of(c, spec.occupancy);
  domain &= mask_of(c, b);
  return crossing_in(domain, b, spec.direction, spec.kind);
}

DualityOutcome duality_witness(const Config& c) {
  const bool occ_h = has_crossing(
      c, {Direction::Horizontal, Occupancy::Occupied, GraphKind::G});
  const bool vac_v = has_crossing(
      c, {Direction::Vertical, Occupancy::Vacant, GraphKind::GStar});
  if (occ_h == vac_v)
    throw std::logic_error(std::string("complementary crossing pair ") +
                           (occ_h ? "both hold" : "both fail") + " on\n" +
                           c.to_text());
  return occ_h ? DualityOutcome::HorizontalOccupiedOnG
               : DualityOutcome::VerticalVacantOnGStar;
}

std::optional<SitePath> lowest_crossing(const Config& c, GraphKind kind,
                                        std::optional<Rect> sub) {
  return extremal_crossing(c, kind, sub, true);
}

std::optional<SitePath> highest_crossing(const Config& c, GraphKind kind,
                                         std::optional<Rect> sub) {
  return extremal_crossing(c, kind, sub, false);
}

int y_statistic(const SitePath& r, int line_x) {
  bool found = false;
  int y = 0;
  for (Site s : r.sites())
    if (s.x == line_x) {
      found = true;
      y = s.y;
    }
  if (!found) throw std::domain_error("path never touches the line");
  return y;
}

std::pair<int, int> x_extremes(const SitePath& r) {
  if (r.empty()) throw std::domain_error("empty path has no x extremes");
  int lo = r.sites()[0].x, hi = lo;
  for (Site s : r.sites()) {
    lo = std::min(lo, s.x);
    hi = std::max(hi, s.x);
  }
  return {lo, hi};
}

bool event_D(const Config& c, const SitePath& r_minus,
             const SitePath& r_tilde_minus, const Rect& strip, int target_y) {
  if (r_minus.kind() != r_tilde_minus.kind())
    throw std::invalid_argument("paths disagree on adjacency kind");
  const Rect& rect = c.rect();
  if (!rect.contains(strip))
    throw std::invalid_argument("strip not inside the configuration rect");
  if (target_y < strip.y0 || target_y > strip.y1)
    throw std::invalid_argument("target row outside the strip");
  const GraphKind kind = r_minus.kind();

  const BitGrid rbits = path_bits(r_minus, rect);
  BitGrid avoid = rbits;
  avoid |= path_bits(r_tilde_minus, rect);

  const RelBox b = rel_box(rect, strip);
  BitGrid domain = BitGrid::occupied_of(c);
  domain &= mask_of(c, b);
  domain = domain.and_not(avoid);

  BitGrid start = rbits.spread(kind);
  start &= domain;
  if (!start.any()) return false;

  BitGrid goal(rect.ncols(), rect.nrows());
  goal.set_row(target_y - rect.y0);
  return closure(start, domain, kind).any_and(goal);
}

EventsE events_E(const Config& c, GraphKind kind, int l1, int l2, int m) {
  if (l1 < 1 || l2 < 1) throw std::invalid_argument("need l1 >= 1, l2 >= 1");
  if (!(c.rect() == Rect(0, 2 * l1, 0, l2)))
    throw std::invalid_argument("configuration rect must be [0,2*l1]x[0,l2]");
  const int lx = l1 / 8;
  const Rect left(0, l1, 0, l2);
  const Rect strip(lx, 2 * l1 - lx, 0, l2);

  auto tail_past = [&](const SitePath& r) {
    const auto& s = r.sites();
    std::size_t last = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i].x == lx) last = i;
    return SitePath(kind,
                    std::vector<Site>(s.begin() + static_cast<std::ptrdiff_t>(
                                                      last),
                                      s.end()));
  };
  auto mirrored = [&](const SitePath& r) {
    std::vector<Site> out;
    out.reserve(r.size());
    for (Site s : r.sites()) out.push_back(Site{2 * l1 - s.x, s.y});
    return SitePath(kind, std::move(out));
  };

  EventsE e;
  if (auto r = lowest_crossing(c, kind, left);
      r && y_statistic(*r, lx) <= m) {
    const SitePath tail = tail_past(*r);
    e.e_minus = event_D(c, tail, mirrored(tail), strip, l2);
  }
  if (auto r = highest_crossing(c, kind, left);
      r && y_statistic(*r, lx) >= m) {
    const SitePath tail = tail_past(*r);
    e.e_plus = event_D(c, tail, mirrored(tail), strip, 0);
  }
  return e;
}

bool annulus_circuit(const Config& c, const Annulus& a, GraphKind kind,
                     Occupancy occupancy) {
  const Rect bound = a.bounding();
  if (!c.rect().contains(bound))
    throw std::invalid_argument("annulus not inside the configuration rect");
  const int w = bound.ncols(), h = bound.nrows();
  const auto at = [&](Site s) {
    return static_cast<std::size_t>(s.y - bound.y0) * w + (s.x - bound.x0);
  };

  std::vector<char> domain(static_cast<std::size_t>(w) * h, 0);
  const bool want = occupancy == Occupancy::Occupied;
  for (int y = bound.y0; y <= bound.y1; ++y)
    for (int x = bound.x0; x <= bound.x1; ++x) {
      const Site s{x, y};
      if (a.contains(s) && c.occupied(s) == want) domain[at(s)] = 1;
    }

  // A circuit winds around the center iff no consistent potential exists
  // when each edge crossing the cut x > center.x between rows center.y and
  // center.y + 1 shifts the potential by the crossing direction.
  std::vector<int> level(domain.size(), 0);
  std::vector<char> seen(domain.size(), 0);
  std::vector<Site> queue;
  for (int y = bound.y0; y <= bound.y1; ++y)
    for (int x = bound.x0; x <= bound.x1; ++x) {
      const Site root{x, y};
      if (!domain[at(root)] || seen[at(root)]) continue;
      seen[at(root)] = 1;
      level[at(root)] = 0;
      queue.clear();
      queue.push_back(root);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const Site u = queue[qi];
        for (Site v : neighbors(kind, u, bound)) {
          if (!domain[at(v)]) continue;
          const int lv = level[at(u)] + cut_delta(u, v, a.center);
          if (!seen[at(v)]) {
            seen[at(v)] = 1;
            level[at(v)] = lv;
            queue.push_back(v);
          } else if (level[at(v)] != lv) {
            return true;
          }
        }
      }
    }
  return false;
}

}  // namespace perc
