#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "cedyn/errors.hpp"
#include "cedyn/orbit.hpp"
#include "cedyn/returns.hpp"
#include "cedyn/rng.hpp"

using namespace cedyn;

namespace {

std::int64_t q_eps_brute(double x, const EpsGeometry& g) {
  for (std::size_t i = 0; i < g.crit.size(); ++i)
    if (x == g.crit[i].position) return kDepthInf;
  for (std::int64_t k = 0;; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < g.crit.size(); ++i) {
      const double d = std::fabs(x - g.crit[i].position);
      if (d < std::exp(-static_cast<double>(k)) * g.radius[i]) ok = false;
    }
    if (ok) return k;
    REQUIRE(k < 1000);
  }
}

ReturnRecord synth(std::size_t ordinal, double log_P, double p_tilde = 0.0,
                   bool essential = false) {
  ReturnRecord r;
  r.ordinal = ordinal;
  r.S = ordinal * 10;  // any finite, increasing return times
  r.d = 1;
  r.log_P = log_P;
  r.p = p_tilde;
  r.p_tilde = p_tilde;
  r.essential = essential;
  return r;
}

}  // namespace

TEST_CASE("neighborhood geometry and depths at the standard example") {
  const EpsGeometry g(0.01, {{0.5, 2}});
  CHECK(g.radius[0] == Catch::Approx(0.1).epsilon(1e-15));
  CHECK(g.dc(0) == Catch::Approx(0.05).epsilon(1e-15));
  CHECK(g.in_neighborhood(0.45));
  CHECK_FALSE(g.in_neighborhood(0.7));

  CHECK(q_eps(0.7, g) == 0);
  CHECK(q_eps(0.52, g) == 2);
  CHECK(q_eps(0.5, g) == kDepthInf);
  CHECK_THROWS_AS(EpsGeometry(0.0, {{0.5, 2}}), InvalidConfig);
}

TEST_CASE("closed-form depth equals the brute-force scan") {
  const EpsGeometry g(0.003, {{0.4, 2}, {0.7, 3}});
  Rng rng(99);
  for (int i = 0; i < 10000; ++i) {
    double x;
    if (i % 3 == 0) {
      x = rng.uniform(0.0, 1.0);
    } else {  // stress the deep regime near one of the critical points
      const double c = (i % 2 == 0) ? 0.4 : 0.7;
      const double off = std::pow(10.0, rng.uniform(-30.0, -0.5));
      x = c + (rng.uniform() < 0.5 ? -off : off);
    }
    const std::int64_t got = q_eps(x, g);
    const std::int64_t want = q_eps_brute(x, g);
    if (got != want) {
      CAPTURE(x, got, want);
      FAIL("depth mismatch");
    }
  }
  SUCCEED("all probes matched");
}

TEST_CASE("the full logistic orbit never returns") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 4.0, 0, 200);
  const EpsGeometry g(0.01, od.crit);

  CHECK(return_sequence(od, g).empty());

  auto padded = return_sequence(od, g, 5);
  REQUIRE(padded.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(padded[i].ordinal == i + 1);
    CHECK(padded[i].S == kSInf);
    CHECK(padded[i].d == 0);
    CHECK_FALSE(padded[i].essential);
    CHECK_FALSE(padded[i].free);
  }
  CHECK(essential_returns(padded).empty());
  CHECK(free_returns(padded, od, g, 0.1).empty());
}

TEST_CASE("an escaped orbit cannot certify requested returns") {
  // x^2 family: just below the base parameter the image dips under 0 and the
  // orbit escapes instantly.
  const MapFamily fam = make_poly_family({0.0});
  const OrbitData od = critical_orbit(fam, -0.01, 0, 50);
  REQUIRE(od.escaped.has_value());
  const EpsGeometry g(0.01, od.crit);
  CHECK_THROWS_AS(return_sequence(od, g, 3), OrbitTooShort);
  CHECK(return_sequence(od, g).empty());  // collect-all mode reports what it saw
}

TEST_CASE("a critical hit before a return poisons the distortion sum") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 2.0, 0, 10);  // pinned at 0.5
  const EpsGeometry g(0.01, od.crit);
  CHECK_THROWS_AS(return_sequence(od, g), InfiniteDistortion);
}

TEST_CASE("return records at a chaotic parameter are internally consistent") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 3.99, 0, 3000);
  const EpsGeometry g(0.01, od.crit);
  auto records = return_sequence(od, g);
  REQUIRE(records.size() > 50);

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    CHECK(r.ordinal == i + 1);
    REQUIRE(r.S != kSInf);
    if (i > 0) CHECK(r.S > records[i - 1].S);
    CHECK(std::fabs(od.points[r.S] - 0.5) < 0.1);  // inside the neighborhood
    CHECK(r.d >= 1);
    CHECK(r.d == q_eps(od.points[r.S], g));
    CHECK(r.log_P == Catch::Approx(od.cum_deriv[r.S].logmag - std::log(od.crit_dist[r.S]))
                         .epsilon(1e-14));
    CHECK(r.p_tilde == std::min(r.p, static_cast<double>(r.d)));
    CHECK(r.p <= r.log_P);  // the distortion sum includes a positive term
  }

  // Return times nest as the neighborhood grows.
  const EpsGeometry g_small(0.001, od.crit);
  auto small = return_sequence(od, g_small);
  std::set<std::size_t> big_S;
  for (const auto& r : records) big_S.insert(r.S);
  for (const auto& r : small) CHECK(big_S.count(r.S) == 1);

  // The first return is always free; essential returns are free on this row.
  auto ess = essential_returns(records);
  auto free = free_returns(records, od, g, 0.1);
  REQUIRE_FALSE(free.empty());
  CHECK(free.front() == 1);
  std::set<std::size_t> free_set(free.begin(), free.end());
  for (std::size_t e : ess) {
    CAPTURE(e);
    CHECK(free_set.count(e) == 1);
  }
}

TEST_CASE("essential ordinals from hand-picked magnitude sequences") {
  auto run = [](std::vector<double> P) {
    std::vector<ReturnRecord> rec;
    for (std::size_t i = 0; i < P.size(); ++i) rec.push_back(synth(i + 1, std::log(P[i])));
    return essential_returns(rec);
  };
  CHECK(run({10.0, 2.0, 100.0}) == std::vector<std::size_t>{1, 3});
  CHECK(run({1.0, 3.0, 9.0}) == std::vector<std::size_t>{1, 2, 3});
  CHECK(run({5.0}) == std::vector<std::size_t>{1});
  std::vector<ReturnRecord> none;
  CHECK(essential_returns(none).empty());
}

TEST_CASE("running-max scan matches the quadratic-time definition") {
  Rng rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<ReturnRecord> rec;
    for (std::size_t i = 0; i < n; ++i) rec.push_back(synth(i + 1, rng.uniform(-8.0, 8.0)));

    std::vector<std::size_t> slow;
    constexpr double log3 = 1.0986122886681098;
    std::vector<double> v;
    for (const auto& r : rec) v.push_back(r.log_P - static_cast<double>(r.ordinal) * log3);
    for (std::size_t j = 0; j < n; ++j) {
      bool ess = true;
      for (std::size_t k = 0; k < j; ++k)
        if (v[j] < v[k]) ess = false;  // pairwise form of the growth condition
      if (ess) slow.push_back(j + 1);
    }
    const auto fast = essential_returns(rec);
    if (fast != slow) {
      CAPTURE(trial, n);
      FAIL("essential sets disagree");
    }
  }
  SUCCEED("all sequences matched");
}

TEST_CASE("depth sums over essential returns respect the threshold") {
  std::vector<ReturnRecord> rec;
  rec.push_back(synth(1, 1.0, 5.0, true));
  rec.push_back(synth(2, 1.0, 3.0, false));  // not essential: skipped
  rec.push_back(synth(3, 1.0, 7.0, true));
  CHECK(essential_depth_sum(rec, 4.0, 3) == Catch::Approx(12.0));
  CHECK(essential_depth_sum(rec, 4.0, 1) == Catch::Approx(5.0));   // horizon cut
  CHECK(essential_depth_sum(rec, 6.5, 3) == Catch::Approx(7.0));   // threshold cut
  CHECK(essential_depth_sum(rec, std::numeric_limits<double>::infinity(), 3) == 0.0);
  CHECK(essential_depth_sum({}, 0.0, 10) == 0.0);
}

TEST_CASE("free-return chains on synthetic records") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 3.99, 0, 3000);
  const EpsGeometry g(0.01, od.crit);
  auto records = return_sequence(od, g);
  REQUIRE_FALSE(records.empty());

  std::vector<ReturnRecord> single{records.front()};
  const auto idx = free_returns(single, od, g, 0.1);
  CHECK(idx == std::vector<std::size_t>{1});
  CHECK(single.front().free);

  std::vector<ReturnRecord> none;
  CHECK(free_returns(none, od, g, 0.1).empty());
  CHECK_THROWS_AS(free_returns(records, od, g, 0.0), InvalidConfig);
}
