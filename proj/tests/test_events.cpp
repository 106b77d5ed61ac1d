#include <cstdint>
#include <vector>

#include "doctest.h"
#include "perc/geometry.hpp"
#include "support/brute.hpp"

using namespace perc;

TEST_CASE("extension events agree with the path-chasing definition") {
  const Rect r(0, 3, 0, 3);
  struct Instance {
    GraphKind kind;
    std::vector<Site> r_minus, r_tilde;
    int target;
  };
  const std::vector<Instance> instances{
      {GraphKind::G, {{0, 1}, {1, 1}}, {{2, 2}, {3, 2}}, 3},
      {GraphKind::G, {{0, 2}, {1, 2}, {1, 3}}, {{3, 1}}, 0},
      {GraphKind::GStar, {{0, 1}, {1, 2}, {2, 1}}, {{3, 2}}, 3},
      {GraphKind::GStar, {{1, 1}, {2, 2}}, {{0, 3}, {1, 3}}, 0},
  };
  EnumCursor cur(r);
  for (const Instance& ins : instances) {
    const SitePath rp(ins.kind, ins.r_minus);
    const SitePath rt(ins.kind, ins.r_tilde);
    for (std::uint64_t pat = 0; pat < cur.pattern_count(); ++pat) {
      const Config& c = cur.at(pat);
      REQUIRE(event_D(c, rp, rt, r, ins.target) ==
              bruteperc::event_D(c, ins.kind, ins.r_minus, ins.r_tilde, r,
                                 ins.target));
    }
  }
}

TEST_CASE("the extension needs at least one site beyond the seed path") {
  // the seed path already touches the target row; with nothing else occupied
  // there is no occupied v1, so the event must fail
  const Rect r(0, 3, 0, 3);
  const std::vector<Site> seed{Site{0, 2}, Site{0, 3}};
  std::uint64_t pat = 0;
  for (Site s : seed) pat |= 1ull << r.index_of(s);
  const Config c = Config::from_pattern(r, pat);
  const SitePath rp(GraphKind::G, seed);
  const SitePath rt(GraphKind::G, {Site{3, 0}});
  CHECK_FALSE(event_D(c, rp, rt, r, 3));
  // one occupied site next to the seed on the target row flips it
  const Config c2 =
      Config::from_pattern(r, pat | 1ull << r.index_of(Site{1, 3}));
  CHECK(event_D(c2, rp, rt, r, 3));
}

TEST_CASE("paired extension events, exhaustively") {
  const int l1 = 2, l2 = 1;
  const Rect r(0, 2 * l1, 0, l2);
  EnumCursor cur(r);
  for (GraphKind k : {GraphKind::G, GraphKind::GStar})
    for (int m = -1; m <= l2 + 1; ++m)
      for (std::uint64_t pat = 0; pat < cur.pattern_count(); ++pat) {
        const Config& c = cur.at(pat);
        const EventsE got = events_E(c, k, l1, l2, m);
        const bruteperc::EventsE want = bruteperc::events_E(c, k, l1, l2, m);
        REQUIRE(got.e_minus == want.e_minus);
        REQUIRE(got.e_plus == want.e_plus);
      }
}

TEST_CASE("flipping the configuration swaps the paired events") {
  const int l1 = 2, l2 = 1;
  const Rect r(0, 2 * l1, 0, l2);
  EnumCursor cur(r);
  for (GraphKind k : {GraphKind::G, GraphKind::GStar})
    for (int m = 0; m <= l2; ++m)
      for (std::uint64_t pat = 0; pat < cur.pattern_count(); ++pat) {
        const Config& c = cur.at(pat);
        std::uint64_t fpat = 0;
        for (std::int64_t i = 0; i < r.site_count(); ++i) {
          const Site s = r.site_at(i);
          if (c.occupied(Site{s.x, l2 - s.y})) fpat |= 1ull << i;
        }
        const EventsE a = events_E(c, k, l1, l2, m);
        const EventsE b =
            events_E(Config::from_pattern(r, fpat), k, l1, l2, l2 - m);
        REQUIRE(a.e_plus == b.e_minus);
        REQUIRE(a.e_minus == b.e_plus);
      }
}

TEST_CASE("paired extension events on sampled wide rects") {
  SUBCASE("two rows, sparse enough for path chasing") {
    const int l1 = 8, l2 = 2;
    const Rect r(0, 2 * l1, 0, l2);
    for (GraphKind k : {GraphKind::G, GraphKind::GStar})
      for (double p : {0.40, 0.45})
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
          const Config c = Config::sample(r, p, 8811, rep);
          for (int m : {0, 1, 2}) {
            const EventsE got = events_E(c, k, l1, l2, m);
            const bruteperc::EventsE want =
                bruteperc::events_E(c, k, l1, l2, m);
            REQUIRE(got.e_minus == want.e_minus);
            REQUIRE(got.e_plus == want.e_plus);
          }
        }
  }
  SUBCASE("one row, denser") {
    const int l1 = 8, l2 = 1;
    const Rect r(0, 2 * l1, 0, l2);
    for (GraphKind k : {GraphKind::G, GraphKind::GStar})
      for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const Config c = Config::sample(r, 0.55, 1199, rep);
        for (int m : {0, 1}) {
          const EventsE got = events_E(c, k, l1, l2, m);
          const bruteperc::EventsE want = bruteperc::events_E(c, k, l1, l2, m);
          REQUIRE(got.e_minus == want.e_minus);
          REQUIRE(got.e_plus == want.e_plus);
        }
      }
  }
}
