#include "perc/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "perc/bitgrid.hpp"

namespace perc {
namespace {

constexpr std::uint64_t kBlock = 1024;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 64u));
}

// fn(replicate, tally) bumps n_counters per-block counters; totals are merged
// in block order, never in completion order
std::vector<std::uint64_t> tally_blocks(
    std::uint64_t n_samples, int workers, std::size_t n_counters,
    const std::function<void(std::uint64_t, std::uint64_t*)>& fn) {
  const std::uint64_t n_blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> per_block(n_blocks * n_counters, 0);
  std::atomic<std::uint64_t> next{0};
  auto drain = [&] {
    for (std::uint64_t b = next.fetch_add(1); b < n_blocks;
         b = next.fetch_add(1)) {
      std::uint64_t* tally = per_block.data() + b * n_counters;
      const std::uint64_t hi = std::min(n_samples, (b + 1) * kBlock);
      for (std::uint64_t r = b * kBlock; r < hi; ++r) fn(r, tally);
    }
  };
  const int nw = static_cast<int>(std::min<std::uint64_t>(
      resolve_workers(workers), std::max<std::uint64_t>(n_blocks, 1)));
  if (nw <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int i = 0; i < nw; ++i) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> totals(n_counters, 0);
  for (std::uint64_t b = 0; b < n_blocks; ++b)
    for (std::size_t k = 0; k < n_counters; ++k)
      totals[k] += per_block[b * n_counters + k];
  return totals;
}

void require_p(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p outside [0,1]");
}

void require_samples(std::uint64_t n) {
  if (n < 100) throw std::invalid_argument("need at least 100 samples");
}

bool sites_connected(const Config& c, GraphKind k, Site a, Site b) {
  if (!c.occupied(a) || !c.occupied(b)) return false;
  if (a == b) return true;
  const Rect& rect = c.rect();
  BitGrid from(rect.ncols(), rect.nrows());
  from.set(a.x - rect.x0, a.y - rect.y0);
  return closure(from, BitGrid::occupied_of(c), k)
      .test(b.x - rect.x0, b.y - rect.y0);
}

// origin occupied and joined to the border ring of its box
bool origin_to_ring(const Config& c, GraphKind k) {
  if (!c.occupied(Site{0, 0})) return false;
  const Rect& rect = c.rect();
  BitGrid from(rect.ncols(), rect.nrows());
  from.set(-rect.x0, -rect.y0);
  BitGrid ring(rect.ncols(), rect.nrows());
  ring.set_row(0);
  ring.set_row(rect.nrows() - 1);
  ring.set_column(0);
  ring.set_column(rect.ncols() - 1);
  return closure(from, BitGrid::occupied_of(c), k).any_and(ring);
}

double deriv(const std::function<double(double)>& f, double x) {
  const double h = 1e-6;
  const double a = std::clamp(x - h, 0.0, 1.0);
  const double b = std::clamp(x + h, 0.0, 1.0);
  return (f(b) - f(a)) / (b - a);
}

nlohmann::ordered_json qj(const Estimate& e) {
  return {{"estimate", e.p_hat},
          {"ci_lo", e.ci_lo},
          {"ci_hi", e.ci_hi},
          {"n_samples", e.n_samples}};
}

}  // namespace

double Estimate::sigma() const {
  if (n_samples == 0) return 0.0;
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_samples));
}

Estimate wilson99(std::uint64_t successes, std::uint64_t n_samples,
                  std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("empty sample");
  if (successes > n_samples)
    throw std::invalid_argument("more successes than samples");
  constexpr double z = 2.5758293035489004;  // 99.5th percentile of the normal
  const double n = static_cast<double>(n_samples);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
  Estimate e;
  e.p_hat = ph;
  e.ci_lo = std::max(0.0, center - half);
  e.ci_hi = std::min(1.0, center + half);
  e.successes = successes;
  e.n_samples = n_samples;
  e.seed = seed;
  return e;
}

Estimate estimate_event(const Rect& rect, double p, const ConfigPredicate& pred,
                        std::uint64_t n_samples, std::uint64_t seed,
                        int workers) {
  require_p(p);
  require_samples(n_samples);
  const auto totals = tally_blocks(
      n_samples, workers, 1, [&](std::uint64_t rep, std::uint64_t* tally) {
        tally[0] += pred(Config::sample(rect, p, seed, rep)) ? 1 : 0;
      });
  return wilson99(totals[0], n_samples, seed);
}

Estimate estimate_crossing(const CrossingSpec& spec, int w, int h, double p,
                           std::uint64_t n_samples, std::uint64_t seed,
                           int workers) {
  if (w < 0 || h < 0) throw std::invalid_argument("negative rect dimensions");
  return estimate_event(
      Rect(0, w, 0, h), p,
      [&](const Config& c) { return has_crossing(c, spec); }, n_samples, seed,
      workers);
}

Estimate estimate_tau(GraphKind kind, double p, Site a, Site b,
                      const Rect& box, std::uint64_t n_samples,
                      std::uint64_t seed, int workers) {
  if (!box.contains(a) || !box.contains(b))
    throw std::invalid_argument("endpoints outside box");
  return estimate_event(
      box, p, [&](const Config& c) { return sites_connected(c, kind, a, b); },
      n_samples, seed, workers);
}

NboxEstimate estimate_Nbox(GraphKind kind, double p, int n,
                           std::uint64_t n_samples, std::uint64_t seed,
                           int workers) {
  if (n < 1) throw std::invalid_argument("box radius below 1");
  NboxEstimate out;
  out.n = n;
  out.boundary_plus = boundary(n, BoundarySide::Outer, kind).size();
  out.connection = estimate_event(
      Rect::box(n), p,
      [&](const Config& c) { return origin_to_ring(c, kind); }, n_samples,
      seed, workers);
  const double s = static_cast<double>(out.boundary_plus);
  out.value = s * out.connection.p_hat;
  out.ci_lo = s * out.connection.ci_lo;
  out.ci_hi = s * out.connection.ci_hi;
  return out;
}

DecayFit fit_decay(const std::vector<std::pair<int, double>>& tau_by_distance) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& [m, tau] : tau_by_distance)
    if (tau > 0.0) xy.emplace_back(m, -std::log(tau));
  if (xy.size() < 3)
    throw std::invalid_argument("need at least 3 positive connectivity values");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(xy.size());
  const double det = k * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("distances must differ");
  DecayFit fit;
  fit.rate = (k * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.rate * sx) / k;
  fit.points_used = static_cast<int>(xy.size());
  return fit;
}

double pc_bisect(GraphKind kind, int n, std::uint64_t n_samples,
                 std::uint64_t seed, double tol, int workers) {
  if (n < 16) throw std::invalid_argument("square side below 16");
  if (tol < 1e-4) throw std::invalid_argument("tolerance below 1e-4");
  const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied, kind};
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const Estimate e = estimate_crossing(spec, n, n, mid, n_samples, seed,
                                         workers);
    (e.p_hat < 0.5 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double kesten_epsilon(double delta1) {
  if (!(delta1 > 0.0 && delta1 <= 1.0))
    throw std::invalid_argument("delta1 outside (0,1]");
  return (std::sqrt(1.0 - delta1) - (1.0 - delta1)) / delta1;
}

KestenConstants kesten_constants(double delta1, double delta2, int n, int k,
                                 double t) {
  if (!(delta1 > 0.0 && delta1 <= 1.0) || !(delta2 > 0.0 && delta2 <= 1.0))
    throw std::invalid_argument("deltas outside (0,1]");
  if (n < 2) throw std::invalid_argument("n below 2");
  if (k < 1) throw std::invalid_argument("k below 1");
  if (!(t > 0.0)) throw std::invalid_argument("t not positive");
  KestenConstants out;
  out.delta1 = delta1;
  out.delta2 = delta2;
  out.epsilon = kesten_epsilon(delta1);
  const double pairs = 0.5 * n * (n - 1);
  out.delta3 = 1.0 - std::pow(1.0 - delta1, 1.0 / pairs);
  out.n = n;
  out.k = k;
  out.t = t;
  return out;
}

KestenReport kesten_bound_check(GraphKind kind, double p, int l1, int l2,
                                std::uint64_t n_samples, std::uint64_t seed,
                                int workers) {
  require_p(p);
  require_samples(n_samples);
  if (l1 < 8) throw std::invalid_argument("l1 below 8");
  if (l2 < 1) throw std::invalid_argument("l2 below 1");
  const int lx = l1 / 8;
  const Rect big(0, 2 * l1, 0, l2);
  const Rect left(0, l1, 0, l2);
  const Rect wide(0, l1 + lx, 0, l2);

  KestenReport rep;
  rep.kind = kind;
  rep.p = p;
  rep.l1 = l1;
  rep.l2 = l2;
  rep.small_l1 = l1 < 48;

  // first pass: crossing frequencies and the conditional Y histogram
  const std::size_t hist0 = 3;
  const auto a = tally_blocks(
      n_samples, workers, hist0 + l2 + 1,
      [&](std::uint64_t r, std::uint64_t* tally) {
        const Config c = Config::sample(big, p, seed, r);
        if (const auto low = lowest_crossing(c, kind, left)) {
          tally[0] += 1;
          tally[hist0 + y_statistic(*low, lx)] += 1;
        }
        tally[1] += has_crossing(
            c, {Direction::Vertical, Occupancy::Occupied, kind}, left);
        tally[2] += has_crossing(
            c, {Direction::Horizontal, Occupancy::Occupied, kind}, wide);
      });
  rep.delta1 = wilson99(a[0], n_samples, seed);
  rep.delta2 = wilson99(a[1], n_samples, seed);
  rep.lhs = wilson99(a[2], n_samples, seed);

  const std::uint64_t exists = a[0];
  if (exists == 0) {
    rep.epsilon = 0.5;  // limit of the formula as delta1 -> 0
    rep.m = l2;
    rep.y_mass = 0.0;
  } else {
    rep.epsilon = kesten_epsilon(rep.delta1.p_hat);
    const double target = (1.0 - rep.epsilon) * static_cast<double>(exists);
    std::uint64_t cum = 0;
    rep.m = l2;
    for (int y = 0; y <= l2; ++y) {
      cum += a[hist0 + y];
      if (static_cast<double>(cum) + 1e-9 >= target) {
        rep.m = y;
        break;
      }
    }
    std::uint64_t mass = 0;
    for (int y = 0; y <= rep.m; ++y) mass += a[hist0 + y];
    rep.y_mass = static_cast<double>(mass) / static_cast<double>(exists);
  }

  // second pass, same seed: the extension events at the chosen cut height
  const auto b = tally_blocks(
      n_samples, workers, 2, [&](std::uint64_t r, std::uint64_t* tally) {
        const Config c = Config::sample(big, p, seed, r);
        const EventsE ev = events_E(c, kind, l1, l2, rep.m);
        tally[0] += ev.e_minus;
        tally[1] += ev.e_plus;
      });
  rep.e_minus = wilson99(b[0], n_samples, seed);
  rep.e_plus = wilson99(b[1], n_samples, seed);

  const double d1 = rep.delta1.p_hat, d2 = rep.delta2.p_hat;
  const auto amp = [](double x) { return 1.0 - std::sqrt(1.0 - x); };
  const auto rhs_of = [&](double x, double y) {
    return amp(x) * amp(x) * amp(y) * amp(y) * x;
  };
  rep.rhs = rhs_of(d1, d2);
  const double g1 = deriv([&](double x) { return rhs_of(x, d2); }, d1);
  const double g2 = deriv([&](double y) { return rhs_of(d1, y); }, d2);
  rep.rhs_sigma = std::hypot(g1 * rep.delta1.sigma(), g2 * rep.delta2.sigma());
  rep.margin = rep.lhs.p_hat - rep.rhs;
  rep.margin_sigma = std::hypot(rep.lhs.sigma(), rep.rhs_sigma);

  rep.e_bound = amp(d1) * amp(d2);
  const double h1 = deriv([&](double x) { return amp(x) * amp(d2); }, d1);
  const double h2 = deriv([&](double y) { return amp(d1) * amp(y); }, d2);
  rep.e_bound_sigma =
      std::hypot(h1 * rep.delta1.sigma(), h2 * rep.delta2.sigma());
  rep.e_minus_margin = rep.e_minus.p_hat - rep.e_bound;
  rep.e_minus_margin_sigma =
      std::hypot(rep.e_minus.sigma(), rep.e_bound_sigma);
  rep.e_plus_margin = rep.e_plus.p_hat - rep.e_bound;
  rep.e_plus_margin_sigma = std::hypot(rep.e_plus.sigma(), rep.e_bound_sigma);
  return rep;
}

std::string KestenReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = "kesten-check";
  j["graph"] = graph_name(kind);
  j["params"] = {{"p", p},
                 {"l1", l1},
                 {"l2", l2},
                 {"n_samples", lhs.n_samples},
                 {"seed", lhs.seed}};
  j["quantities"] = {{"delta1", qj(delta1)},
                     {"delta2", qj(delta2)},
                     {"lhs", qj(lhs)},
                     {"e_minus", qj(e_minus)},
                     {"e_plus", qj(e_plus)}};
  j["derived"] = {{"epsilon", epsilon},
                  {"m", m},
                  {"y_mass", y_mass},
                  {"rhs", rhs},
                  {"rhs_sigma", rhs_sigma},
                  {"e_bound", e_bound},
                  {"e_bound_sigma", e_bound_sigma}};
  j["margins"] = {
      {"lhs_minus_rhs", {{"margin", margin}, {"sigma", margin_sigma}}},
      {"e_minus_minus_bound",
       {{"margin", e_minus_margin}, {"sigma", e_minus_margin_sigma}}},
      {"e_plus_minus_bound",
       {{"margin", e_plus_margin}, {"sigma", e_plus_margin_sigma}}}};
  j["flags"] = {{"small_l1", small_l1}};
  return j.dump();
}

AnnulusReport annulus_circuit_estimate(GraphKind kind, Occupancy occupancy,
                                       double p, const Annulus& a,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed, int workers) {
  require_p(p);
  require_samples(n_samples);
  const Rect rect = a.bounding();
  const Rect strip(a.center.x - a.outer, a.center.x - a.inner,
                   a.center.y - a.outer, a.center.y + a.outer);
  const auto t = tally_blocks(
      n_samples, workers, 2, [&](std::uint64_t r, std::uint64_t* tally) {
        const Config c = Config::sample(rect, p, seed, r);
        tally[0] += annulus_circuit(c, a, kind, occupancy);
        tally[1] += has_crossing(
            c, {Direction::Vertical, occupancy, kind}, strip);
      });
  AnnulusReport rep;
  rep.kind = kind;
  rep.occupancy = occupancy;
  rep.p = p;
  rep.inner = a.inner;
  rep.outer = a.outer;
  rep.circuit = wilson99(t[0], n_samples, seed);
  rep.strip = wilson99(t[1], n_samples, seed);
  const double s = rep.strip.p_hat;
  rep.strip_pow4 = s * s * s * s;
  rep.strip_pow4_sigma = 4.0 * s * s * s * rep.strip.sigma();
  rep.margin = rep.circuit.p_hat - rep.strip_pow4;
  rep.margin_sigma = std::hypot(rep.circuit.sigma(), rep.strip_pow4_sigma);
  return rep;
}

std::string AnnulusReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = "annulus";
  j["graph"] = graph_name(kind);
  j["params"] = {{"occupancy",
                  occupancy == Occupancy::Occupied ? "occupied" : "vacant"},
                 {"p", p},
                 {"inner", inner},
                 {"outer", outer},
                 {"n_samples", circuit.n_samples},
                 {"seed", circuit.seed}};
  j["quantities"] = {{"circuit", qj(circuit)}, {"strip", qj(strip)}};
  j["derived"] = {{"strip_pow4", strip_pow4},
                  {"strip_pow4_sigma", strip_pow4_sigma}};
  j["margins"] = {{"circuit_minus_strip_pow4",
                   {{"margin", margin}, {"sigma", margin_sigma}}}};
  return j.dump();
}

DecompositionReport decomposition_checks(GraphKind kind, double p, int n,
                                         std::uint64_t n_samples,
                                         std::uint64_t seed, int workers) {
  require_p(p);
  if (n < 1) throw std::invalid_argument("n below 1");
  const Rect narrow_tall(0, n, 0, 2 * n);
  const Rect narrow_taller(0, n, 0, 4 * n);
  const Rect half_taller(0, n - 1, 0, 4 * n);
  const Rect wide_tall(0, 2 * n, 0, 4 * n);
  const Rect box = Rect::box(2 * n);
  const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied, kind};

  DecompositionReport rep;
  rep.kind = kind;
  rep.p = p;
  rep.n = n;
  rep.exact = n_samples == 0;

  const auto crossing_pred = [&](const Config& c) {
    return has_crossing(c, spec);
  };
  const auto radial_pred = [&](const Config& c) {
    return origin_to_ring(c, kind);
  };
  if (rep.exact) {
    for (const Rect& r : {narrow_tall, narrow_taller, wide_tall, box})
      if (r.site_count() > Config::kEnumerateCap)
        throw std::invalid_argument("exact mode only fits n = 1");
    const auto point = [&](const Rect& r, const ConfigPredicate& pred) {
      Estimate e;
      e.p_hat = e.ci_lo = e.ci_hi = exact_prob(r, pred).eval(p);
      e.seed = seed;
      return e;
    };
    rep.narrow_tall = point(narrow_tall, crossing_pred);
    rep.narrow_taller = point(narrow_taller, crossing_pred);
    rep.half_taller = point(half_taller, crossing_pred);
    rep.wide_tall = point(wide_tall, crossing_pred);
    rep.radial = point(box, radial_pred);
  } else {
    require_samples(n_samples);
    const auto run = [&](const Rect& r, const ConfigPredicate& pred) {
      return estimate_event(r, p, pred, n_samples, seed, workers);
    };
    rep.narrow_tall = run(narrow_tall, crossing_pred);
    rep.narrow_taller = run(narrow_taller, crossing_pred);
    rep.half_taller = run(half_taller, crossing_pred);
    rep.wide_tall = run(wide_tall, crossing_pred);
    rep.radial = run(box, radial_pred);
  }

  const double c12 = rep.narrow_tall.p_hat, s12 = rep.narrow_tall.sigma();
  const double c14 = rep.narrow_taller.p_hat, s14 = rep.narrow_taller.sigma();
  const double ch = rep.half_taller.p_hat, sh = rep.half_taller.sigma();
  const double c24 = rep.wide_tall.p_hat, s24 = rep.wide_tall.sigma();
  const double a2n = rep.radial.p_hat, sa = rep.radial.sigma();
  rep.checks = {
      {"five_rectangles", 5.0 * c12 - c14, std::hypot(5.0 * s12, s14), true},
      {"disjoint_split", ch * c14 - c24,
       std::hypot(std::hypot(c14 * sh, ch * s14), s24), true},
      {"iterated_doubling", 625.0 * c12 * c12 - 25.0 * c24,
       std::hypot(1250.0 * c12 * s12, 25.0 * s24), true},
      {"radial_to_crossing", 4.0 * c12 - a2n, std::hypot(4.0 * s12, sa),
       true},
      {"width_doubling_square", c14 * c14 - c24,
       std::hypot(2.0 * c14 * s14, s24), false},
      {"width_doubling_square_narrow", c12 * c12 - c24,
       std::hypot(2.0 * c12 * s12, s24), false}};
  return rep;
}

std::string DecompositionReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = "decomposition";
  j["graph"] = graph_name(kind);
  j["params"] = {{"p", p},
                 {"n", n},
                 {"n_samples", narrow_tall.n_samples},
                 {"seed", narrow_tall.seed},
                 {"exact", exact}};
  j["quantities"] = {{"narrow_tall", qj(narrow_tall)},
                     {"narrow_taller", qj(narrow_taller)},
                     {"half_taller", qj(half_taller)},
                     {"wide_tall", qj(wide_tall)},
                     {"radial", qj(radial)}};
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"margin", c.margin},
                   {"sigma", c.sigma},
                   {"gated", c.gated}});
  return j.dump();
}

}  // namespace perc
