#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "perc/bitgrid.hpp"
#include "perc/config.hpp"
#include "perc/lattice.hpp"

namespace perc {

enum class Direction { Horizontal, Vertical };
enum class Occupancy { Occupied, Vacant };

struct CrossingSpec {
  Direction direction;
  Occupancy occupancy;
  GraphKind kind;
};

// Self-avoiding path; consecutive sites adjacent under kind().
class SitePath {
 public:
  SitePath(GraphKind k, std::vector<Site> sites);
  GraphKind kind() const { return kind_; }
  const std::vector<Site>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  bool contains(Site s) const;

 private:
  GraphKind kind_;
  std::vector<Site> sites_;
  std::vector<Site> sorted_;
};

// Is there a path of `occupancy` sites under `kind` from one side of `sub`
// (default: the whole rect) to the opposite side? Horizontal runs from
// x = x0 to x = x1, vertical from y = y0 to y = y1.
bool has_crossing(const Config& c, const CrossingSpec& spec,
                  std::optional<Rect> sub = std::nullopt);

enum class DualityOutcome { HorizontalOccupiedOnG, VerticalVacantOnGStar };

// In any rect exactly one of the two holds; anything else is an internal
// inconsistency and throws std::logic_error with the offending config.
DualityOutcome duality_witness(const Config& c);

// Lowest (resp. highest) horizontal occupied crossing under `kind`, as the
// crossing hugging the vacant matching-graph cluster attached to the bottom
// (resp. top) side. Equals the minimizer of (below-region size, lexicographic
// site set) over all crossings. Path runs from the x0 side to the x1 side.
// Whether a site belongs to the result is unaffected by the configuration
// strictly above (resp. below) it.
std::optional<SitePath> lowest_crossing(const Config& c, GraphKind kind,
                                        std::optional<Rect> sub = std::nullopt);
std::optional<SitePath> highest_crossing(const Config& c, GraphKind kind,
                                         std::optional<Rect> sub = std::nullopt);

// y of the last site of r (in path order) on the vertical line x = line_x;
// std::domain_error if r never touches the line
int y_statistic(const SitePath& r, int line_x);

// (min x, max x) over the path's sites; std::domain_error on empty paths
std::pair<int, int> x_extremes(const SitePath& r);

// Is there a path v0, v1, ..., vz with v1..vz occupied, inside `strip`, site-
// disjoint from r_minus and r_tilde_minus, ending at y = target_y, whose first
// step v0 -> v1 meets r_minus? v0 itself is unconstrained. A diagonal first
// step crossing a diagonal of r_minus has all four endpoints pairwise
// adjacent, so "meets" reduces to kind-adjacency between v1 and r_minus.
bool event_D(const Config& c, const SitePath& r_minus,
             const SitePath& r_tilde_minus, const Rect& strip, int target_y);

struct EventsE {
  bool e_minus = false;
  bool e_plus = false;
};

// On rect [0,2*l1] x [0,l2]: e_minus holds when the left half [0,l1] x [0,l2]
// has a lowest crossing r with y_statistic(r, floor(l1/8)) <= m and event_D
// holds for the tail of r past its last visit to that line, together with the
// tail's mirror image across x = l1, inside the strip
// [floor(l1/8), 2*l1 - floor(l1/8)] x [0,l2], reaching the top. e_plus is the
// symmetric statement with the highest crossing, y >= m, reaching the bottom.
EventsE events_E(const Config& c, GraphKind kind, int l1, int l2, int m);

// Cycle of sites of the requested occupancy, adjacent under `kind`, contained
// in the annulus, with nonzero winding number around the center.
bool annulus_circuit(const Config& c, const Annulus& a, GraphKind kind,
                     Occupancy occupancy);

}  // namespace perc
