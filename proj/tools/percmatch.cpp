#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "perc/geometry.hpp"
#include "perc/lattice.hpp"
#include "perc/mc.hpp"
#include "perc/oracle.hpp"
#include "perc/reporting.hpp"

namespace {

using namespace perc;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PERCMATCH_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 1;
}

std::vector<double> parse_grid(const std::string& s) {
  double a = 0, b = 0, step = 0;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &extra) != 3)
    throw std::invalid_argument("--p-grid expects a:b:step");
  if (!(step > 0) || a > b)
    throw std::invalid_argument("--p-grid must ascend with positive step");
  std::vector<double> ps;
  for (double v = a; v <= b + 0.5 * step; v += step) ps.push_back(v);
  for (double v : ps)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("--p-grid leaves [0,1]");
  return ps;
}

Estimate to_est(double value, double sig) {
  Estimate e;
  e.p_hat = value;
  e.ci_lo = value - sig;
  e.ci_hi = value + sig;
  return e;
}

struct Emitter {
  std::vector<CsvRow> rows;
  std::vector<nlohmann::ordered_json> reports;

  void add(std::string experiment, const std::string& graph, double param1,
           double param2, double p, const Estimate& e) {
    rows.push_back(CsvRow{std::move(experiment), graph, param1, param2, p,
                          e.n_samples, e.p_hat, e.ci_lo, e.ci_hi, e.seed});
  }
};

std::string json_path_for(const std::string& out) {
  const std::size_t slash = out.find_last_of('/');
  const std::size_t dot = out.find_last_of('.');
  if (dot != std::string::npos &&
      (slash == std::string::npos || dot > slash))
    return out.substr(0, dot) + ".json";
  return out + ".json";
}

void write_outputs(const Emitter& em, const std::string& out,
                   const nlohmann::ordered_json& invocation) {
  std::string csv = kCsvHeader;
  csv += '\n';
  for (const CsvRow& r : em.rows) {
    csv += r.line();
    csv += '\n';
  }
  if (out.empty()) {
    std::fputs(csv.c_str(), stdout);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << csv;
  if (!f) throw std::runtime_error("short write to " + out);

  nlohmann::ordered_json summary;
  summary["invocation"] = invocation;
  auto& jrows = summary["rows"] = nlohmann::ordered_json::array();
  for (const CsvRow& r : em.rows)
    jrows.push_back({{"experiment", r.experiment},
                     {"graph", r.graph},
                     {"param1", r.param1},
                     {"param2", r.param2},
                     {"p", r.p},
                     {"n_samples", r.n_samples},
                     {"estimate", r.estimate},
                     {"ci_lo", r.ci_lo},
                     {"ci_hi", r.ci_hi},
                     {"seed", r.seed}});
  summary["reports"] = em.reports;
  const std::string jpath = json_path_for(out);
  std::ofstream jf(jpath, std::ios::binary);
  if (!jf) throw std::runtime_error("cannot open " + jpath);
  jf << summary.dump(2) << '\n';
  if (!jf) throw std::runtime_error("short write to " + jpath);
}

// exhaustive checks; returns the number of failures and prints one line each
int run_verify() {
  int failures = 0;
  const auto report = [&](const std::string& name, bool ok,
                          const char* detail) {
    std::printf("[%s] %s%s%s\n", ok ? "ok" : "FAIL", name.c_str(),
                ok ? "" : ": ", ok ? "" : detail);
    if (!ok) ++failures;
  };

  for (int w = 0; w < 16; ++w)
    for (int h = 0; h < 16; ++h) {
      if ((w + 1) * (h + 1) > 16) continue;
      const Rect r(0, w, 0, h);
      const VerifyResult res = verify_duality(r);
      report("duality " + std::to_string(w + 1) + "x" + std::to_string(h + 1),
             res.ok, "crossing pair not complementary");
    }

  for (GraphKind kind : {GraphKind::G, GraphKind::GStar}) {
    const CrossingSpec horiz{Direction::Horizontal, Occupancy::Occupied, kind};
    const CrossingSpec vert{Direction::Vertical, Occupancy::Occupied, kind};
    const VerifyResult res = verify_implication(
        Rect(0, 1, 0, 4),
        [&](const Config& c) { return has_crossing(c, horiz); },
        [&](const Config& c) {
          return has_crossing(c, horiz, Rect(0, 1, 0, 2)) ||
                 has_crossing(c, horiz, Rect(0, 1, 2, 4)) ||
                 has_crossing(c, horiz, Rect(0, 1, 1, 3)) ||
                 has_crossing(c, vert, Rect(0, 1, 1, 2)) ||
                 has_crossing(c, vert, Rect(0, 1, 2, 3));
        });
    report(std::string("five-rectangle cover on ") + graph_name(kind), res.ok,
           "tall crossing missed by the five short crossings");
  }

  {
    const Rect strip(0, 3, 0, 2);
    const SitePath r(GraphKind::G, {{0, 1}, {1, 1}});
    const SitePath rt(GraphKind::G, {{2, 1}, {3, 1}});
    const VerifyResult res = verify_implication(
        strip,
        [&](const Config& c) {
          return has_crossing(c, {Direction::Vertical, Occupancy::Occupied,
                                  GraphKind::G});
        },
        [&](const Config& c) {
          return event_D(c, r, rt, strip, 2) || event_D(c, rt, r, strip, 2);
        });
    report("barrier extension on G", res.ok,
           "vertical crossing with neither extension event");
  }
  {
    const Rect strip(0, 3, 0, 3);
    const SitePath r(GraphKind::GStar, {{0, 1}, {1, 2}, {2, 1}});
    const SitePath rt(GraphKind::GStar, {{3, 1}, {2, 1}});
    const VerifyResult res = verify_implication(
        strip,
        [&](const Config& c) {
          return has_crossing(c, {Direction::Vertical, Occupancy::Occupied,
                                  GraphKind::GStar});
        },
        [&](const Config& c) {
          return event_D(c, r, rt, strip, 3) || event_D(c, rt, r, strip, 3);
        });
    report("barrier extension on GStar", res.ok,
           "vertical crossing with neither extension event");
  }

  std::printf("%s\n", failures == 0 ? "verify: all checks passed"
                                    : "verify: FAILURES above");
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "site percolation experiments on the square lattice and its "
      "close-packed companion"};
  app.set_help_flag("--help", "print usage and exit");
  app.set_config("--config", "", "flat key=value file; flags override it");

  std::string experiment, graph = "G", occupancy = "occupied", p_grid, out;
  int w = -1, h = -1, n = -1, l1 = -1, l2 = -1, inner = -1, outer = -1;
  int workers = 1;
  double p = -1.0, lambda = 2.0;
  std::uint64_t samples = 10000, seed = default_seed();
  bool verify = false;

  app.add_option("--experiment", experiment, "experiment to run")
      ->check(CLI::IsMember({"cross-prob", "duality-verify", "pc-bisect",
                             "nbox", "tau-decay", "kesten-check", "annulus",
                             "decomposition", "rsw-suite"}));
  app.add_option("--graph", graph, "adjacency: G (axis) or GStar (axis+diag)")
      ->check(CLI::IsMember({"G", "GStar"}));
  app.add_option("--w", w, "rect width (sites span 0..w)");
  app.add_option("--h", h, "rect height (sites span 0..h)");
  app.add_option("--n", n, "square side / box radius");
  app.add_option("--l1", l1, "base rect width");
  app.add_option("--l2", l2, "base rect height");
  app.add_option("--inner", inner, "annulus inner radius");
  app.add_option("--outer", outer, "annulus outer radius");
  app.add_option("--p", p, "occupation probability");
  app.add_option("--p-grid", p_grid, "sweep a:b:step inclusive");
  app.add_option("--lambda", lambda, "aspect ratio for rsw-suite");
  app.add_option("--occupancy", occupancy, "site state for annulus circuits")
      ->check(CLI::IsMember({"occupied", "vacant"}));
  app.add_option("--samples", samples, "replicates per estimate");
  app.add_option("--seed", seed, "base seed (default $PERCMATCH_SEED or 1)");
  app.add_option("--workers", workers,
                 "worker threads; <= 0 means hardware count");
  app.add_option("--out", out, "CSV path; a .json summary lands beside it");
  app.add_flag("--verify", verify, "run the exact suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify) return run_verify() == 0 ? 0 : 3;
    if (experiment.empty())
      throw std::invalid_argument("need --experiment or --verify");

    const GraphKind kind = *graph_from_name(graph);
    const Occupancy occ =
        occupancy == "occupied" ? Occupancy::Occupied : Occupancy::Vacant;
    const auto ps = [&]() -> std::vector<double> {
      if (!p_grid.empty()) return parse_grid(p_grid);
      if (p >= 0.0) return {p};
      throw std::invalid_argument("need --p or --p-grid");
    };

    Emitter em;
    int exit_code = 0;

    if (experiment == "cross-prob") {
      const int cw = w >= 0 ? w : n, ch = h >= 0 ? h : n;
      if (cw < 0 || ch < 0)
        throw std::invalid_argument("need --w/--h or --n");
      const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied,
                              kind};
      for (double pv : ps())
        em.add("cross-prob", graph, cw, ch, pv,
               estimate_crossing(spec, cw, ch, pv, samples, seed, workers));
    } else if (experiment == "duality-verify") {
      if (w < 0 || h < 0) throw std::invalid_argument("need --w and --h");
      const Rect rect(0, w, 0, h);
      const VerifyResult res = verify_duality(rect);
      Estimate e;
      e.p_hat = e.ci_lo = e.ci_hi = res.ok ? 1.0 : 0.0;
      e.n_samples = 1ull << rect.site_count();
      e.seed = seed;
      em.add("duality-verify", graph, w, h, 0.0, e);
      if (!res.ok) {
        std::fprintf(stderr, "duality violated by\n%s",
                     res.counterexample->to_text().c_str());
        exit_code = 3;
      }
    } else if (experiment == "pc-bisect") {
      const int side = n >= 16 ? n : 64;
      const double tol = 1e-4;
      const double pstar = pc_bisect(kind, side, samples, seed, tol, workers);
      Estimate e = to_est(pstar, tol);
      e.n_samples = samples;
      e.seed = seed;
      em.add("pc-bisect", graph, side, 0.0, pstar, e);
    } else if (experiment == "nbox") {
      if (n < 1) throw std::invalid_argument("need --n >= 1");
      for (double pv : ps()) {
        const NboxEstimate r =
            estimate_Nbox(kind, pv, n, samples, seed, workers);
        em.add("nbox/connection", graph, n, 0.0, pv, r.connection);
        Estimate scaled;
        scaled.p_hat = r.value;
        scaled.ci_lo = r.ci_lo;
        scaled.ci_hi = r.ci_hi;
        scaled.n_samples = r.connection.n_samples;
        scaled.seed = seed;
        em.add("nbox/scaled", graph, n, r.boundary_plus, pv, scaled);
      }
    } else if (experiment == "tau-decay") {
      const int radius = n >= 4 ? n : 16;
      std::vector<int> dists;
      for (int m : {radius / 4, radius / 2, 3 * radius / 4, radius})
        if (m > 0 && (dists.empty() || dists.back() != m)) dists.push_back(m);
      const Rect box = Rect::box(radius);
      for (double pv : ps()) {
        std::vector<std::pair<int, double>> points;
        for (int m : dists) {
          const Estimate e = estimate_tau(kind, pv, Site{0, 0}, Site{m, 0},
                                          box, samples, seed, workers);
          points.emplace_back(m, e.p_hat);
          em.add("tau-decay/tau", graph, m, radius, pv, e);
        }
        try {
          const DecayFit fit = fit_decay(points);
          Estimate e = to_est(fit.rate, 0.0);
          e.n_samples = samples;
          e.seed = seed;
          em.add("tau-decay/rate", graph, fit.points_used, fit.intercept, pv,
                 e);
        } catch (const std::invalid_argument& err) {
          std::fprintf(stderr, "tau-decay at p=%g: %s\n", pv, err.what());
        }
      }
    } else if (experiment == "kesten-check") {
      if (l1 < 8 || l2 < 1)
        throw std::invalid_argument("need --l1 >= 8 and --l2 >= 1");
      for (double pv : ps()) {
        const KestenReport r =
            kesten_bound_check(kind, pv, l1, l2, samples, seed, workers);
        em.add("kesten-check/delta1", graph, l1, l2, pv, r.delta1);
        em.add("kesten-check/delta2", graph, l1, l2, pv, r.delta2);
        em.add("kesten-check/lhs", graph, l1, l2, pv, r.lhs);
        em.add("kesten-check/e_minus", graph, l1, l2, pv, r.e_minus);
        em.add("kesten-check/e_plus", graph, l1, l2, pv, r.e_plus);
        const auto derived = [&](const char* name, double v, double sig) {
          Estimate e = to_est(v, sig);
          e.n_samples = samples;
          e.seed = seed;
          em.add(std::string("kesten-check/") + name, graph, l1, l2, pv, e);
        };
        derived("epsilon", r.epsilon, 0.0);
        derived("m", r.m, 0.0);
        derived("y_mass", r.y_mass, 0.0);
        derived("rhs", r.rhs, r.rhs_sigma);
        derived("margin", r.margin, r.margin_sigma);
        derived("e_bound", r.e_bound, r.e_bound_sigma);
        derived("e_minus_margin", r.e_minus_margin, r.e_minus_margin_sigma);
        derived("e_plus_margin", r.e_plus_margin, r.e_plus_margin_sigma);
        em.reports.push_back(nlohmann::ordered_json::parse(r.to_json()));
      }
    } else if (experiment == "annulus") {
      if (inner < 1 || outer <= inner)
        throw std::invalid_argument("need 1 <= --inner < --outer");
      const Annulus ann(Site{0, 0}, inner, outer);
      for (double pv : ps()) {
        const AnnulusReport r = annulus_circuit_estimate(
            kind, occ, pv, ann, samples, seed, workers);
        em.add("annulus/circuit", graph, inner, outer, pv, r.circuit);
        em.add("annulus/strip", graph, inner, outer, pv, r.strip);
        Estimate e4 = to_est(r.strip_pow4, r.strip_pow4_sigma);
        e4.n_samples = samples;
        e4.seed = seed;
        em.add("annulus/strip_pow4", graph, inner, outer, pv, e4);
        Estimate mg = to_est(r.margin, r.margin_sigma);
        mg.n_samples = samples;
        mg.seed = seed;
        em.add("annulus/margin", graph, inner, outer, pv, mg);
        em.reports.push_back(nlohmann::ordered_json::parse(r.to_json()));
      }
    } else if (experiment == "decomposition") {
      if (n < 1) throw std::invalid_argument("need --n >= 1");
      for (double pv : ps()) {
        const DecompositionReport r =
            decomposition_checks(kind, pv, n, samples, seed, workers);
        em.add("decomposition/narrow_tall", graph, n, 0.0, pv, r.narrow_tall);
        em.add("decomposition/narrow_taller", graph, n, 0.0, pv,
               r.narrow_taller);
        em.add("decomposition/half_taller", graph, n, 0.0, pv, r.half_taller);
        em.add("decomposition/wide_tall", graph, n, 0.0, pv, r.wide_tall);
        em.add("decomposition/radial", graph, n, 0.0, pv, r.radial);
        for (const auto& c : r.checks) {
          Estimate e = to_est(c.margin, c.sigma);
          e.n_samples = samples;
          e.seed = seed;
          em.add("decomposition/" + c.name, graph, n, c.gated ? 1.0 : 0.0, pv,
                 e);
        }
        em.reports.push_back(nlohmann::ordered_json::parse(r.to_json()));
      }
    } else if (experiment == "rsw-suite") {
      if (!(lambda > 0)) throw std::invalid_argument("need --lambda > 0");
      for (GraphKind k : {GraphKind::G, GraphKind::GStar}) {
        const std::string gname = graph_name(k);
        const double pstar = pc_bisect(k, 64, samples, seed, 1e-4, workers);
        Estimate pe = to_est(pstar, 1e-4);
        pe.n_samples = samples;
        pe.seed = seed;
        em.add("rsw-suite/pstar", gname, 64, 0.0, pstar, pe);
        for (int side : {16, 32, 64}) {
          const int len = static_cast<int>(std::lround(lambda * side));
          const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied,
                                  k};
          em.add("rsw-suite/crossing", gname, side, len, pstar,
                 estimate_crossing(spec, len, side, pstar, samples, seed,
                                   workers));
        }
      }
    }

    nlohmann::ordered_json invocation = {
        {"experiment", experiment}, {"graph", graph},       {"seed", seed},
        {"samples", samples},       {"workers", workers}};
    write_outputs(em, out, invocation);
    return exit_code;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
