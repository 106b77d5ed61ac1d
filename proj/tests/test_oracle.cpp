#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "perc/geometry.hpp"
#include "perc/oracle.hpp"
#include "support/brute.hpp"

using namespace perc;

TEST_CASE("two-site polynomials come out in closed form") {
  const Rect pair(0, 1, 0, 0);
  const PPolynomial both = exact_prob(
      pair, [](const Config& c) { return c.occupied_count() == 2; });
  CHECK(both.coeffs() == std::vector<std::uint64_t>{0, 0, 1});
  const PPolynomial not_all = exact_prob(
      pair, [](const Config& c) { return c.occupied_count() < 2; });
  for (double p : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    CHECK(both.eval(p) == doctest::Approx(p * p).epsilon(1e-14));
    CHECK(not_all.eval(p) == doctest::Approx(1 - p * p).epsilon(1e-14));
  }
  CHECK_THROWS_AS(both.eval(1.5), std::invalid_argument);
  CHECK_THROWS_AS(both.eval(-0.5), std::invalid_argument);
}

TEST_CASE("the constant-true polynomial sums the binomial weights") {
  const Rect r(0, 2, 0, 1);
  const PPolynomial one = exact_prob(r, [](const Config&) { return true; });
  CHECK(one.coeffs() == std::vector<std::uint64_t>{1, 6, 15, 20, 15, 6, 1});
  for (int i = 0; i <= 100; ++i)
    CHECK(one.eval(i / 100.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("crossing probability matches a hand count at one half") {
  const Rect r(0, 2, 0, 1);
  const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied,
                          GraphKind::G};
  const PPolynomial poly =
      exact_prob(r, [&](const Config& c) { return has_crossing(c, spec); });
  // independent count over all 64 patterns with the test-local detector
  int satisfied = 0;
  for (std::uint64_t pat = 0; pat < 64; ++pat) {
    const Config c = Config::from_pattern(r, pat);
    satisfied += bruteperc::crossing(c, GraphKind::G, true, true, r);
  }
  CHECK(poly.eval(0.5) == doctest::Approx(satisfied / 64.0).epsilon(1e-14));
  // complement count: vacant top/bottom x-sets with all pairs >= 2 apart
  CHECK(satisfied == 17);

  // nondecreasing in p
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = poly.eval(i / 100.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  CHECK(poly.eval(0.0) == 0.0);
  CHECK(poly.eval(1.0) == doctest::Approx(1.0));
}

TEST_CASE("increasing events are positively correlated") {
  const Rect r(0, 2, 0, 2);
  const CrossingSpec h{Direction::Horizontal, Occupancy::Occupied,
                       GraphKind::G};
  const CrossingSpec v{Direction::Vertical, Occupancy::Occupied, GraphKind::G};
  const PPolynomial ph =
      exact_prob(r, [&](const Config& c) { return has_crossing(c, h); });
  const PPolynomial pv =
      exact_prob(r, [&](const Config& c) { return has_crossing(c, v); });
  const PPolynomial pboth = exact_prob(r, [&](const Config& c) {
    return has_crossing(c, h) && has_crossing(c, v);
  });
  for (double p : {0.25, 0.5, 0.75})
    CHECK(pboth.eval(p) >= ph.eval(p) * pv.eval(p) - 1e-12);
}

TEST_CASE("implication checking returns counterexamples") {
  const Rect r(0, 2, 0, 1);
  const CrossingSpec spec{Direction::Horizontal, Occupancy::Occupied,
                          GraphKind::G};
  const auto crossing = [&](const Config& c) { return has_crossing(c, spec); };
  const auto occupied_any = [](const Config& c) {
    return c.occupied_count() > 0;
  };

  const VerifyResult ok = verify_implication(r, crossing, occupied_any);
  CHECK(ok.ok);
  CHECK_FALSE(ok.counterexample.has_value());

  const VerifyResult bad = verify_implication(r, occupied_any, crossing);
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.counterexample.has_value());
  CHECK(occupied_any(*bad.counterexample));
  CHECK_FALSE(crossing(*bad.counterexample));
}

TEST_CASE("exhaustive complementarity sweep stays clean") {
  for (const Rect r : {Rect(0, 3, 0, 2), Rect(0, 1, 0, 7)}) {
    const VerifyResult res = verify_duality(r);
    CHECK(res.ok);
  }
}

TEST_CASE("polynomial json round-trip") {
  const Rect r(0, 2, 0, 1);
  const PPolynomial poly = exact_prob(r, [](const Config& c) {
    return c.occupied(Site{1, 0}) || c.occupied(Site{1, 1});
  });
  const PPolynomial back = PPolynomial::from_json(poly.to_json());
  CHECK(back == poly);
  CHECK_THROWS(PPolynomial::from_json("{\"n_sites\": 2}"));
  CHECK_THROWS(PPolynomial::from_json("not json"));
  CHECK_THROWS_AS(PPolynomial(3, {1, 2}), std::invalid_argument);
}

TEST_CASE("enumeration refuses oversized rects") {
  CHECK_THROWS_AS(
      exact_prob(Rect(0, 12, 0, 1), [](const Config&) { return true; }),
      std::invalid_argument);
}
