#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perc/config.hpp"
#include "perc/geometry.hpp"
#include "perc/lattice.hpp"
#include "perc/oracle.hpp"

namespace perc {

struct Estimate {
  double p_hat = 0.0, ci_lo = 0.0, ci_hi = 0.0;
  std::uint64_t successes = 0, n_samples = 0, seed = 0;
  double sigma() const;  // normal-approximation standard error
};

Estimate wilson99(std::uint64_t successes, std::uint64_t n_samples,
                  std::uint64_t seed);

// Evaluates pred on sample(rect, p, seed, r) for r = 0..n_samples-1.
// Replicates are tallied in fixed blocks and the per-block integer counts are
// merged in block order, so the totals are identical for every worker count
// and schedule. workers <= 0 means one per hardware thread.
Estimate estimate_event(const Rect& rect, double p, const ConfigPredicate& pred,
                        std::uint64_t n_samples, std::uint64_t seed,
                        int workers = 1);

// has_crossing on Rect(0, w, 0, h)
Estimate estimate_crossing(const CrossingSpec& spec, int w, int h, double p,
                           std::uint64_t n_samples, std::uint64_t seed,
                           int workers = 1);

// a and b both occupied and joined by an occupied kind-path inside box
Estimate estimate_tau(GraphKind kind, double p, Site a, Site b,
                      const Rect& box, std::uint64_t n_samples,
                      std::uint64_t seed, int workers = 1);

struct NboxEstimate {
  int n = 0;
  std::uint64_t boundary_plus = 0;  // outer boundary size of box_n
  Estimate connection;  // origin to the border ring of box_n, inside box_n
  double value = 0.0, ci_lo = 0.0, ci_hi = 0.0;  // boundary_plus * connection
};
NboxEstimate estimate_Nbox(GraphKind kind, double p, int n,
                           std::uint64_t n_samples, std::uint64_t seed,
                           int workers = 1);

struct DecayFit {
  double rate = 0.0, intercept = 0.0;
  int points_used = 0;
};
// least-squares slope of -log(tau) against distance; nonpositive tau dropped
DecayFit fit_decay(const std::vector<std::pair<int, double>>& tau_by_distance);

// p whose n x n square crossing probability is closest to 1/2. The shared
// seed couples all probed p values, so the empirical crossing probability is
// monotone in p and bisection is exact on the empirical curve.
double pc_bisect(GraphKind kind, int n, std::uint64_t n_samples,
                 std::uint64_t seed, double tol, int workers = 1);

double kesten_epsilon(double delta1);

struct KestenConstants {
  double delta1 = 0.0, delta2 = 0.0, epsilon = 0.0, delta3 = 0.0;
  int n = 0, k = 0;
  double t = 0.0;
  const char* delta3_from = "delta1";  // which delta fed the delta3 formula
};
KestenConstants kesten_constants(double delta1, double delta2, int n, int k,
                                 double t);

// One crossing-probability amplification check on [0, l1 + l1/8] x [0, l2]:
// delta1, delta2 are the horizontal and vertical crossing estimates of
// [0,l1] x [0,l2]; lhs is the crossing estimate of the widened rectangle;
// rhs = (1-sqrt(1-delta1))^2 (1-sqrt(1-delta2))^2 * delta1. The crossing
// extension events e_minus / e_plus are measured on [0, 2*l1] x [0, l2] with
// the cut height m at the empirical (1-epsilon) quantile of Y conditioned on
// a crossing existing. All sigmas are delta-method propagations.
struct KestenReport {
  GraphKind kind = GraphKind::G;
  double p = 0.0;
  int l1 = 0, l2 = 0;
  bool small_l1 = false;  // l1 below 48, outside the bound's intended regime
  Estimate delta1, delta2;
  double epsilon = 0.0;
  int m = 0;
  double y_mass = 0.0;  // attained P[Y <= m | crossing exists]
  Estimate lhs;
  double rhs = 0.0, rhs_sigma = 0.0;
  double margin = 0.0, margin_sigma = 0.0;  // lhs - rhs
  Estimate e_minus, e_plus;
  double e_bound = 0.0, e_bound_sigma = 0.0;
  double e_minus_margin = 0.0, e_minus_margin_sigma = 0.0;
  double e_plus_margin = 0.0, e_plus_margin_sigma = 0.0;
  std::string to_json() const;
};
KestenReport kesten_bound_check(GraphKind kind, double p, int l1, int l2,
                                std::uint64_t n_samples, std::uint64_t seed,
                                int workers = 1);

// Circuit probability in the annulus, against the fourth power of the
// long-direction crossing of one side strip (same samples, same occupancy).
struct AnnulusReport {
  GraphKind kind = GraphKind::G;
  Occupancy occupancy = Occupancy::Occupied;
  double p = 0.0;
  int inner = 0, outer = 0;
  Estimate circuit, strip;
  double strip_pow4 = 0.0, strip_pow4_sigma = 0.0;
  double margin = 0.0, margin_sigma = 0.0;  // circuit - strip^4
  std::string to_json() const;
};
AnnulusReport annulus_circuit_estimate(GraphKind kind, Occupancy occupancy,
                                       double p, const Annulus& a,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed, int workers = 1);

// Crossing-scale decomposition margins, all probabilities of horizontal
// occupied crossings of width x height rects except `radial` (origin to the
// ring at L-inf distance 2n inside box_2n). n_samples = 0 switches to exact
// enumeration, which requires every involved rect to fit the enumeration cap
// (n = 1). Gated checks are inequalities expected to hold up to noise; the
// ungated ones are reported for comparison only. The width-doubling product
// pairs `half_taller` with `narrow_taller` because their columns are
// disjoint, so the two crossings are independent; squaring `narrow_taller`
// instead overlaps on one shared column, where positive correlation can push
// the doubled crossing above the square (it does at n = 1).
struct DecompositionReport {
  GraphKind kind = GraphKind::G;
  double p = 0.0;
  int n = 0;
  bool exact = false;
  Estimate narrow_tall;    // n x 2n
  Estimate narrow_taller;  // n x 4n
  Estimate half_taller;    // (n-1) x 4n, left half without the shared column
  Estimate wide_tall;      // 2n x 4n
  Estimate radial;
  struct Check {
    std::string name;
    double margin = 0.0, sigma = 0.0;
    bool gated = true;
  };
  std::vector<Check> checks;
  std::string to_json() const;
};
DecompositionReport decomposition_checks(GraphKind kind, double p, int n,
                                         std::uint64_t n_samples,
                                         std::uint64_t seed, int workers = 1);

}  // namespace perc
