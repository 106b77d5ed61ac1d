// Gate suite: every release-blocking property, one [PASS]/[FAIL] line each.
// Exact enumeration wherever a criterion is combinatorial, seeded Monte Carlo
// with explicit tolerances everywhere else. Exit status = number of failures.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "../support/brute.hpp"
#include "perc/bitgrid.hpp"
#include "perc/config.hpp"
#include "perc/geometry.hpp"
#include "perc/lattice.hpp"
#include "perc/mc.hpp"
#include "perc/oracle.hpp"
#include "perc/reporting.hpp"

using namespace perc;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

constexpr CrossingSpec kHG{Direction::Horizontal, Occupancy::Occupied,
                           GraphKind::G};
constexpr CrossingSpec kVVacStar{Direction::Vertical, Occupancy::Vacant,
                                 GraphKind::GStar};

// ---------------------------------------------------------------- criterion 1

Result check_duality() {
  const auto t0 = std::chrono::steady_clock::now();
  std::int64_t enumerated = 0;
  for (int cols = 1; cols <= 20; ++cols)
    for (int rows = 1; cols * rows <= 20; ++rows) {
      const Rect r(0, cols - 1, 0, rows - 1);
      const VerifyResult v = verify_duality(r);
      if (!v.ok)
        return {false, fmt("violation on a %dx%d rect", cols, rows)};
      enumerated += static_cast<std::int64_t>(1) << r.site_count();
    }

  const Rect big(0, 63, 0, 63);
  std::int64_t sampled = 0;
  for (double p : {0.3, 0.5, 0.7})
    for (std::uint64_t rep = 0; rep < 100000; ++rep) {
      const Config c = Config::sample(big, p, 11, rep);
      if (has_crossing(c, kHG) == has_crossing(c, kVVacStar))
        return {false, fmt("violation at p=%g replicate %" PRIu64, p, rep)};
      ++sampled;
    }
  return {true, fmt("%" PRId64 " exhaustive + %" PRId64 " sampled configs, %.1fs",
                    enumerated, sampled, seconds_since(t0))};
}

// ---------------------------------------------------------------- criterion 2

struct CalPredicate {
  const char* name;
  Rect rect;
  double p;
  ConfigPredicate pred;
};

std::vector<CalPredicate> calibration_predicates() {
  const auto cross = [](Direction d, Occupancy o, GraphKind k) {
    return [=](const Config& c) {
      return has_crossing(c, CrossingSpec{d, o, k});
    };
  };
  std::vector<CalPredicate> out;
  out.push_back({"hG 4x5", Rect(0, 3, 0, 4), 0.55,
                 cross(Direction::Horizontal, Occupancy::Occupied,
                       GraphKind::G)});
  out.push_back({"vS 4x5", Rect(0, 3, 0, 4), 0.45,
                 cross(Direction::Vertical, Occupancy::Occupied,
                       GraphKind::GStar)});
  out.push_back({"h vac S 4x5", Rect(0, 3, 0, 4), 0.5,
                 cross(Direction::Horizontal, Occupancy::Vacant,
                       GraphKind::GStar)});
  out.push_back({"vG 5x4", Rect(0, 4, 0, 3), 0.6,
                 cross(Direction::Vertical, Occupancy::Occupied,
                       GraphKind::G)});
  out.push_back({"count>=8", Rect(0, 3, 0, 3), 0.5, [](const Config& c) {
                   return c.occupied_count() >= 8;
                 }});
  out.push_back({"low y<=1", Rect(0, 3, 0, 3), 0.55, [](const Config& c) {
                   const auto r = lowest_crossing(c, GraphKind::G);
                   return r && y_statistic(*r, 0) <= 1;
                 }});
  out.push_back({"low exists S", Rect(0, 3, 0, 3), 0.45, [](const Config& c) {
                   return lowest_crossing(c, GraphKind::GStar).has_value();
                 }});
  out.push_back({"corner link", Rect(0, 4, 0, 2), 0.6, [](const Config& c) {
                   if (!c.occupied(Site{0, 0}) || !c.occupied(Site{4, 2}))
                     return false;
                   BitGrid seed(5, 3);
                   seed.set(0, 0);
                   const BitGrid occ = BitGrid::occupied_of(c);
                   return closure(seed, occ, GraphKind::G).test(4, 2);
                 }});
  out.push_back({"v vac G 3x3", Rect(0, 2, 0, 2), 0.35,
                 cross(Direction::Vertical, Occupancy::Vacant, GraphKind::G)});
  out.push_back({"high y>=2", Rect(0, 3, 0, 3), 0.6, [](const Config& c) {
                   const auto r = highest_crossing(c, GraphKind::GStar);
                   return r && y_statistic(*r, 3) >= 2;
                 }});
  return out;
}

Result check_calibration() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t master = 33;
  const auto preds = calibration_predicates();
  int worst = 100;
  const char* worst_name = "";
  std::string cover;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const CalPredicate& cp = preds[i];
    const double exact = exact_prob(cp.rect, cp.pred).eval(cp.p);
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const std::uint64_t seed =
          master * 1000003 + 7919 * static_cast<std::uint64_t>(i) + rep + 1;
      const Estimate e = estimate_event(cp.rect, cp.p, cp.pred, 10000, seed);
      covered += (e.ci_lo <= exact && exact <= e.ci_hi);
    }
    cover += fmt("%s%d", i ? "/" : "", covered);
    if (covered < worst) {
      worst = covered;
      worst_name = cp.name;
    }
  }
  return {worst >= 99,
          fmt("coverage %s of 100, worst %d (%s), %.1fs", cover.c_str(), worst,
              worst_name, seconds_since(t0))};
}

// ------------------------------------------------------------- criteria 3,4,5

struct Thresholds {
  double g = 0.0, gstar = 0.0;
};

Result check_threshold_sum(Thresholds& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out.g = pc_bisect(GraphKind::G, 64, 10000, 12, 1e-4);
  out.gstar = pc_bisect(GraphKind::GStar, 64, 10000, 12, 1e-4);
  const double sum = out.g + out.gstar;
  const bool pass = std::abs(sum - 1.0) <= 0.02 && out.g > 0.5;
  return {pass, fmt("p*(G)=%.5f p*(GStar)=%.5f sum=%.5f, %.1fs", out.g,
                    out.gstar, sum, seconds_since(t0))};
}

Result check_short_side_floor(const Thresholds& th) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (GraphKind k : {GraphKind::G, GraphKind::GStar}) {
    const double p = k == GraphKind::G ? th.g : th.gstar;
    for (int n : {8, 16, 32}) {
      const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied, k};
      const Estimate e = estimate_crossing(spec, n, 2 * n, p, 10000, 13);
      pass = pass && e.ci_lo > 1.0 / 25.0;
      detail += fmt("%s%s n=%d lo=%.3f", detail.empty() ? "" : ", ",
                    graph_name(k), n, e.ci_lo);
    }
  }
  detail += fmt(", %.1fs", seconds_since(t0));
  return {pass, detail};
}

Result check_long_side_window(const Thresholds& th) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (GraphKind k : {GraphKind::G, GraphKind::GStar}) {
    const double p = k == GraphKind::G ? th.g : th.gstar;
    for (int n : {16, 32, 64}) {
      const CrossingSpec spec{Direction::Vertical, Occupancy::Occupied, k};
      const Estimate e = estimate_crossing(spec, n, 2 * n, p, 10000, 14);
      pass = pass && e.ci_lo >= 0.01 && e.ci_hi <= 0.99;
      detail += fmt("%s%s n=%d [%.3f,%.3f]", detail.empty() ? "" : ", ",
                    graph_name(k), n, e.ci_lo, e.ci_hi);
    }
  }
  detail += fmt(", %.1fs", seconds_since(t0));
  return {pass, detail};
}

// --------------------------------------------- shared exhaustive radial sweep

// box_2 as 25-bit masks; origin cluster grown with a per-site neighbor table
struct MaskScan {
  GraphKind kind;
  std::array<std::uint32_t, 25> nbr{};
  std::uint32_t ring2 = 0;   // L-inf distance 2 (radial event target)
  std::uint32_t dist2 = 0;   // graph distance exactly 2 (implication source)
  int origin;
  // per half-slab rect: site indices inside box_2 and a 64-entry crossing table
  struct Slab {
    std::array<int, 6> sites{};
    std::array<bool, 64> crossed{};
  };
  std::array<Slab, 4> slabs;

  explicit MaskScan(GraphKind k) : kind(k) {
    const Rect b = Rect::box(2);
    origin = static_cast<int>(b.index_of(Site{0, 0}));
    for (std::int64_t i = 0; i < b.site_count(); ++i) {
      const Site s = b.site_at(i);
      for (std::int64_t j = 0; j < b.site_count(); ++j)
        if (bruteperc::adj(k, s, b.site_at(j)))
          nbr[static_cast<std::size_t>(i)] |= 1u << j;
      const int linf = std::max(std::abs(s.x), std::abs(s.y));
      const int graph_d =
          k == GraphKind::G ? std::abs(s.x) + std::abs(s.y) : linf;
      if (linf == 2) ring2 |= 1u << i;
      if (graph_d == 2) dist2 |= 1u << i;
    }
    const Rect rects[4] = {Rect(0, 1, -1, 1), Rect(-1, 0, -1, 1),
                           Rect(-1, 1, 0, 1), Rect(-1, 1, -1, 0)};
    for (int ri = 0; ri < 4; ++ri) {
      const Rect& r = rects[ri];
      const bool horizontal = r.ncols() < r.nrows();
      for (std::int64_t j = 0; j < r.site_count(); ++j)
        slabs[ri].sites[static_cast<std::size_t>(j)] =
            static_cast<int>(b.index_of(r.site_at(j)));
      for (std::uint32_t m = 0; m < 64; ++m) {
        const Config c = Config::from_pattern(r, m);
        slabs[ri].crossed[m] =
            bruteperc::crossing(c, k, horizontal, true, r);
      }
    }
  }

  std::uint32_t origin_cluster(std::uint32_t occ) const {
    if (!((occ >> origin) & 1)) return 0;
    std::uint32_t reach = 1u << origin, frontier = reach;
    while (frontier) {
      std::uint32_t grow = 0;
      while (frontier) {
        const int i = std::countr_zero(frontier);
        frontier &= frontier - 1;
        grow |= nbr[static_cast<std::size_t>(i)];
      }
      frontier = grow & occ & ~reach;
      reach |= frontier;
    }
    return reach;
  }

  bool slab_crossed(std::uint32_t occ) const {
    for (const Slab& s : slabs) {
      std::uint32_t m = 0;
      for (std::size_t j = 0; j < 6; ++j)
        m |= ((occ >> s.sites[j]) & 1u) << j;
      if (s.crossed[m]) return true;
    }
    return false;
  }
};

struct RadialSweep {
  PPolynomial radial{25, std::vector<std::uint64_t>(26, 0)};
  std::uint64_t sources = 0, violations = 0;
};

RadialSweep radial_sweep(GraphKind k) {
  const MaskScan scan(k);
  std::vector<std::uint64_t> coeffs(26, 0);
  RadialSweep out;
  for (std::uint32_t pat = 0; pat < (1u << 25); ++pat) {
    const std::uint32_t cluster = scan.origin_cluster(pat);
    if (cluster == 0) continue;
    if (cluster & scan.ring2)
      coeffs[static_cast<std::size_t>(std::popcount(pat))]++;
    if (cluster & scan.dist2) {
      ++out.sources;
      if (!scan.slab_crossed(pat)) ++out.violations;
    }
  }
  out.radial = PPolynomial(25, std::move(coeffs));
  return out;
}

// ---------------------------------------------------------------- criterion 6

Result check_decomposition(const std::array<RadialSweep, 2>& sweeps) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;

  for (GraphKind k : {GraphKind::G, GraphKind::GStar}) {
    const auto crossing_poly = [&](const Rect& r) {
      return exact_prob(r, [&](const Config& c) {
        return has_crossing(
            c, CrossingSpec{Direction::Horizontal, Occupancy::Occupied, k});
      });
    };
    const PPolynomial c12 = crossing_poly(Rect(0, 1, 0, 2));
    const PPolynomial c14 = crossing_poly(Rect(0, 1, 0, 4));
    const PPolynomial ch = crossing_poly(Rect(0, 0, 0, 4));
    const PPolynomial c24 = crossing_poly(Rect(0, 2, 0, 4));
    const PPolynomial& a2 = sweeps[k == GraphKind::G ? 0 : 1].radial;
    double worst = 1e9;
    for (double p : {0.3, 0.45}) {
      const double v12 = c12.eval(p), v14 = c14.eval(p), v24 = c24.eval(p);
      const double margins[] = {5 * v12 - v14, ch.eval(p) * v14 - v24,
                                625 * v12 * v12 - 25 * v24,
                                4 * v12 - a2.eval(p)};
      for (double m : margins) worst = std::min(worst, m);
    }
    pass = pass && worst >= -1e-12;
    detail += fmt("%sexact_%s min=%.3g", detail.empty() ? "" : ", ",
                  graph_name(k), worst);
  }

  for (GraphKind k : {GraphKind::G, GraphKind::GStar})
    for (double p : {0.3, 0.45}) {
      const DecompositionReport d =
          decomposition_checks(k, p, 8, 10000, 15, 1);
      double worst_units = 1e9;
      for (const auto& c : d.checks) {
        if (!c.gated) continue;
        const double units =
            c.sigma > 0 ? c.margin / c.sigma : (c.margin >= 0 ? 1e9 : -1e9);
        worst_units = std::min(worst_units, units);
      }
      pass = pass && worst_units >= -3.0;
      detail += fmt(", mc_%s p=%.2f min=%+.1fsigma", graph_name(k), p,
                    worst_units);
    }
  detail += fmt(", %.1fs", seconds_since(t0));
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 7

Result check_implications(const std::array<RadialSweep, 2>& sweeps) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;

  // quartered-height cover of a 1 x 4 tall rect
  for (GraphKind k : {GraphKind::G, GraphKind::GStar}) {
    const Rect tall(0, 1, 0, 4);
    const auto h = [&](const Rect& sub) {
      return [&, sub](const Config& c) {
        return has_crossing(
            c, CrossingSpec{Direction::Horizontal, Occupancy::Occupied, k},
            sub);
      };
    };
    const auto v = [&](const Rect& sub) {
      return [&, sub](const Config& c) {
        return has_crossing(
            c, CrossingSpec{Direction::Vertical, Occupancy::Occupied, k}, sub);
      };
    };
    const VerifyResult r = verify_implication(
        tall,
        [&](const Config& c) {
          return has_crossing(
              c, CrossingSpec{Direction::Horizontal, Occupancy::Occupied, k});
        },
        [&](const Config& c) {
          return h(Rect(0, 1, 0, 2))(c) || h(Rect(0, 1, 2, 4))(c) ||
                 h(Rect(0, 1, 1, 3))(c) || v(Rect(0, 1, 1, 2))(c) ||
                 v(Rect(0, 1, 2, 3))(c);
        });
    pass = pass && r.ok;
    detail += fmt("%scover_%s=%s", detail.empty() ? "" : ", ", graph_name(k),
                  r.ok ? "ok" : "FAIL");
  }

  for (std::size_t i = 0; i < 2; ++i) {
    pass = pass && sweeps[i].violations == 0;
    detail += fmt(", radial_%s=%" PRIu64 "/%" PRIu64 " bad",
                  i == 0 ? "G" : "GStar", sweeps[i].violations,
                  sweeps[i].sources);
  }

  // occupied vertical crossing forces a sideways extension of one barrier
  struct Barrier {
    GraphKind kind;
    Rect strip;
    std::vector<Site> r, rt;
  };
  const std::vector<Barrier> barriers{
      {GraphKind::G, Rect(0, 3, 0, 2), {{0, 1}, {1, 1}}, {{2, 1}, {3, 1}}},
      {GraphKind::GStar,
       Rect(0, 3, 0, 3),
       {{0, 1}, {1, 2}, {2, 1}},
       {{3, 1}, {2, 1}}},
  };
  for (const Barrier& b : barriers) {
    const SitePath rp(b.kind, b.r);
    const SitePath rtp(b.kind, b.rt);
    const VerifyResult r = verify_implication(
        b.strip,
        [&](const Config& c) {
          return has_crossing(c, CrossingSpec{Direction::Vertical,
                                              Occupancy::Occupied, b.kind});
        },
        [&](const Config& c) {
          return event_D(c, rp, rtp, b.strip, b.strip.y1) ||
                 event_D(c, rtp, rp, b.strip, b.strip.y1);
        });
    pass = pass && r.ok;
    detail += fmt(", barrier_%s=%s", graph_name(b.kind), r.ok ? "ok" : "FAIL");
  }
  detail += fmt(", %.1fs", seconds_since(t0));
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 8

Result check_amplification(const Thresholds& th) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (GraphKind k : {GraphKind::G, GraphKind::GStar}) {
    const double p = k == GraphKind::G ? th.g : th.gstar;
    const KestenReport r = kesten_bound_check(k, p, 48, 48, 10000, 16, 1);
    const double mu = r.margin_sigma > 0 ? r.margin / r.margin_sigma : 1e9;
    const double eu = r.e_minus_margin_sigma > 0
                          ? r.e_minus_margin / r.e_minus_margin_sigma
                          : 1e9;
    const double pu = r.e_plus_margin_sigma > 0
                          ? r.e_plus_margin / r.e_plus_margin_sigma
                          : 1e9;
    pass = pass && mu >= -3.0 && eu >= -3.0 && pu >= -3.0;
    detail += fmt("%s%s lhs=%.3f rhs=%.4f (%+.1fs.) E-=%+.1fs. E+=%+.1fs.",
                  detail.empty() ? "" : ", ", graph_name(k), r.lhs.p_hat,
                  r.rhs, mu, eu, pu);
  }
  detail += fmt(", %.1fs", seconds_since(t0));
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 9

Result check_closed_forms() {
  bool pass = kesten_epsilon(0.75) == 1.0 / 3.0;
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double d1 = i / 10.0;
    const double lhs = (1.0 - kesten_epsilon(d1)) * d1;
    const double rhs = 1.0 - std::sqrt(1.0 - d1);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  pass = pass && worst <= 1e-12;
  const double d3 = kesten_constants(0.75, 0.5, 3, 1, 1.0).delta3;
  const double d3_err = std::abs(d3 - (1.0 - std::pow(0.25, 1.0 / 3.0)));
  pass = pass && d3_err <= 1e-12;
  return {pass, fmt("eps(3/4)-1/3=%.3g, identity err=%.3g, delta3 err=%.3g",
                    kesten_epsilon(0.75) - 1.0 / 3.0, worst, d3_err)};
}

// --------------------------------------------------------------- criterion 10

Result check_circuit(const Thresholds& th) {
  const auto t0 = std::chrono::steady_clock::now();
  const AnnulusReport r = annulus_circuit_estimate(
      GraphKind::GStar, Occupancy::Vacant, th.g, Annulus(Site{0, 0}, 8, 24),
      10000, 17, 1);
  const double units = r.margin_sigma > 0 ? r.margin / r.margin_sigma : 1e9;
  return {units >= -3.0,
          fmt("circuit=%.4f strip^4=%.5f margin=%+.1fsigma, %.1fs",
              r.circuit.p_hat, r.strip_pow4, units, seconds_since(t0))};
}

// --------------------------------------------------------------- criterion 11

std::string experiment_csv(int workers) {
  std::string csv = std::string(kCsvHeader) + "\n";
  const auto row = [&](const char* name, double p1, double p2, double p,
                       const Estimate& e) {
    csv += CsvRow{name, "G", p1, p2, p, e.n_samples, e.p_hat, e.ci_lo, e.ci_hi,
                  e.seed}
               .line() +
           "\n";
  };
  const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied,
                          GraphKind::G};
  row("cross", 16, 8, 0.55, estimate_crossing(spec, 16, 8, 0.55, 3000, 18,
                                              workers));
  const KestenReport kr =
      kesten_bound_check(GraphKind::G, 0.59, 16, 16, 3000, 18, workers);
  row("kesten/delta1", 16, 16, 0.59, kr.delta1);
  row("kesten/lhs", 16, 16, 0.59, kr.lhs);
  row("kesten/e_minus", 16, 16, 0.59, kr.e_minus);
  const AnnulusReport ar =
      annulus_circuit_estimate(GraphKind::G, Occupancy::Vacant, 0.59,
                               Annulus(Site{0, 0}, 4, 12), 3000, 18, workers);
  row("annulus/circuit", 4, 12, 0.59, ar.circuit);
  const DecompositionReport dr =
      decomposition_checks(GraphKind::G, 0.45, 4, 3000, 18, workers);
  row("decomp/narrow_tall", 4, 0, 0.45, dr.narrow_tall);
  row("decomp/radial", 4, 0, 0.45, dr.radial);
  return csv;
}

Result check_determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string one = experiment_csv(1);
  const std::string four = experiment_csv(4);
  const std::string eight = experiment_csv(8);
  const bool pass = one == four && one == eight;
  return {pass, fmt("%zu-byte CSV identical for 1/4/8 workers: %s, %.1fs",
                    one.size(), pass ? "yes" : "NO", seconds_since(t0))};
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int idx, const char* name, const Result& r) {
    failures += !r.pass;
    std::printf("[%s] %2d %-22s %s\n", r.pass ? "PASS" : "FAIL", idx, name,
                r.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "duality", check_duality());
  report(2, "oracle-mc calibration", check_calibration());

  Thresholds th;
  report(3, "threshold sum", check_threshold_sum(th));
  report(4, "short-side floor", check_short_side_floor(th));
  report(5, "long-side window", check_long_side_window(th));

  const auto tsweep = std::chrono::steady_clock::now();
  const std::array<RadialSweep, 2> sweeps{radial_sweep(GraphKind::G),
                                          radial_sweep(GraphKind::GStar)};
  std::printf("     .. exhaustive radial sweeps done in %.1fs\n",
              seconds_since(tsweep));

  report(6, "decomposition margins", check_decomposition(sweeps));
  report(7, "exhaustive implications", check_implications(sweeps));
  report(8, "amplification bound", check_amplification(th));
  report(9, "closed forms", check_closed_forms());
  report(10, "circuit vs strips", check_circuit(th));
  report(11, "worker determinism", check_determinism());

  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures;
}
