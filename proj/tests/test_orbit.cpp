#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "cedyn/errors.hpp"
#include "cedyn/orbit.hpp"
#include "cedyn/rng.hpp"

using namespace cedyn;

namespace {
const double kLog4 = std::log(4.0);
}

TEST_CASE("full logistic orbit lands on the fixed point at zero") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 4.0, 0, 3);
  REQUIRE(od.points.size() == 4);
  CHECK(od.crit_position == 0.5);
  CHECK(od.points[0] == 1.0);
  CHECK(od.points[1] == 0.0);
  CHECK(od.points[2] == 0.0);
  CHECK(od.points[3] == 0.0);
  CHECK_FALSE(od.escaped.has_value());

  // |D_j| = 4^j with signs +,-,-,-
  const int signs[4] = {1, -1, -1, -1};
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(od.cum_deriv[j].sign == signs[j]);
    CHECK(od.cum_deriv[j].logmag ==
          Catch::Approx(static_cast<double>(j) * kLog4).margin(1e-13));
    CHECK(od.crit_dist[j] == 0.5);
  }
  CHECK(od.length() == 3);
}

TEST_CASE("derivative growth is exact for the full logistic map to n = 100") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 4.0, 0, 100);
  for (std::size_t n = 1; n <= 100; ++n) {
    const double expect = static_cast<double>(n) * kLog4;
    CHECK(std::fabs(od.cum_deriv[n].logmag - expect) <= 1e-12 * expect);
  }
}

TEST_CASE("cumulative derivatives satisfy the one-step recursion exactly") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 3.91, 0, 400);
  SignedLogReal D = SignedLogReal::one();
  for (std::size_t j = 0; j + 1 < od.points.size(); ++j) {
    D = D * SignedLogReal::from_linear(fam.jet(od.points[j], od.t).dfx);
    CHECK(D.sign == od.cum_deriv[j + 1].sign);
    CHECK(D.logmag == od.cum_deriv[j + 1].logmag);
  }
}

TEST_CASE("superattracting parameter keeps the orbit pinned with zero derivative") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 2.0, 0, 5);
  for (double x : od.points) CHECK(x == 0.5);
  CHECK(od.cum_deriv[0].sign == 1);
  for (std::size_t j = 1; j <= 5; ++j) CHECK(od.cum_deriv[j].is_zero());

  CHECK_THROWS_AS(summability_partial(od, 1), ZeroDerivativeOnOrbit);
  CHECK_THROWS_AS(nv_check(fam, 2.0, 0, 5), ZeroDerivativeOnOrbit);
  CHECK_THROWS_AS(ce_exponent(od, 1), ZeroDerivativeOnOrbit);
}

TEST_CASE("inverse-derivative sums converge to the known limit") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 4.0, 0, 40);
  const SummabilityResult s0 = summability_partial(od, 0);
  CHECK(s0.partial == Catch::Approx(1.0).epsilon(1e-15));  // the j = 0 term alone
  const SummabilityResult s5 = summability_partial(od, 5);
  CHECK(s5.partial == Catch::Approx(1.3330078125).epsilon(1e-14));
  const SummabilityResult s30 = summability_partial(od, 30);
  CHECK(std::fabs(s30.partial - 4.0 / 3.0) <= 1e-10);

  double prev = 0.0;
  for (std::size_t N = 0; N <= 40; ++N) {
    const double v = summability_partial(od, N).partial;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(summability_partial(od, 41), OrbitTooShort);
}

TEST_CASE("transversality sums are constant for the full logistic map") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 4.0, 0, 30);
  const auto prefix = transversality_prefix(fam, od);
  REQUIRE(prefix.size() == 31);
  CHECK(prefix[0] == Catch::Approx(0.25).epsilon(1e-15));  // M_0 = dF/dt at the critical point
  for (double m : prefix) CHECK(m == Catch::Approx(0.25).margin(1e-14));
  CHECK(transversality_sum(fam, 4.0, 0, 30) == Catch::Approx(0.25).margin(1e-14));
}

TEST_CASE("a parameter derivative certifies a nonzero limit") {
  const MapFamily fam = make_logistic();
  const NvResult nv = nv_check(fam, 4.0, 0, 30);
  CHECK(std::fabs(nv.a_c - 0.25) <= 1e-14);
  CHECK(nv.tail_bound < 1e-15);
  CHECK(nv.nonzero);
}

TEST_CASE("frozen families have zero parameter response") {
  // Zero direction vector: dF/dt = 0 identically, so a_c = 0 and the tail
  // machinery is bypassed.
  const double c = 300.0 / 19.0;
  const MapFamily fam = make_poly_family({0.28 * c, -0.55 * c}, {0.0, 0.0});
  CHECK(fam.dt_sup() == 0.0);
  const NvResult nv = nv_check(fam, fam.base(), 0, 10);
  CHECK(nv.a_c == 0.0);
  CHECK(nv.tail_bound == 0.0);
  CHECK_FALSE(nv.nonzero);
}

TEST_CASE("finite differences confirm the parameter gradient of the orbit") {
  // (xi_n)' = M_n * D_n where xi_n(t) = f_t^{n+1}(c(t)).
  const MapFamily fam = make_logistic();
  const double t = 3.9, h = 1e-7;
  const std::size_t n = 10;
  const OrbitData od = critical_orbit(fam, t, 0, n);
  const auto prefix = transversality_prefix(fam, od);
  const double grad = prefix[n] * od.cum_deriv[n].linear();
  const double fd =
      (critical_orbit(fam, t + h, 0, n).points[n] - critical_orbit(fam, t - h, 0, n).points[n]) /
      (2.0 * h);
  CHECK(fd == Catch::Approx(grad).epsilon(1e-5));
}

TEST_CASE("distortion sums match hand values and saturate at critical hits") {
  const MapFamily fam = make_logistic();
  // x = 1, a = 4: orbit 1 -> 0 -> 0; terms 1/0.5 + 4/0.5 = 10.
  const SignedLogReal d2 = distortion_sum(fam, 4.0, 1.0, 2);
  CHECK(d2.linear() == Catch::Approx(10.0).epsilon(1e-13));
  CHECK(distortion_sum(fam, 4.0, 1.0, 0).is_zero());
  // x = 0.5 hits the critical point at step 0: infinite.
  const SignedLogReal hit = distortion_sum(fam, 2.0, 0.5, 1);
  CHECK(std::isinf(hit.linear()));
  CHECK(hit.linear() > 0);
}

TEST_CASE("distortion sums grow with the horizon and match linear arithmetic") {
  const MapFamily fam = make_logistic();
  const double t = 3.97, x0 = 0.3;
  double prev = 0.0;
  for (std::size_t n = 0; n <= 40; ++n) {
    const double v = distortion_sum(fam, t, x0, n).linear();
    CHECK(v >= prev - 1e-12);
    prev = v;
  }

  // Linear-space recomputation.
  double x = x0, D = 1.0, sum = 0.0;
  const auto crit = fam.critical_points(t);
  for (std::size_t j = 0; j < 40; ++j) {
    sum += std::fabs(D) / dist_to_critical(x, crit);
    const Jet jt = fam.jet(x, t);
    D *= jt.dfx;
    x = clamp01(jt.f);
  }
  const SignedLogReal got = distortion_sum(fam, t, x0, 40);
  CHECK(got.logmag == Catch::Approx(std::log(sum)).epsilon(1e-12));
}

TEST_CASE("orbit-based distortion prefix agrees with the direct sum") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 3.93, 0, 60);
  const auto pre = distortion_log_prefix(od);
  REQUIRE(pre.size() == od.points.size() + 1);
  for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{33}, std::size_t{60}}) {
    const SignedLogReal direct = distortion_sum(fam, 3.93, od.points[0], n);
    CHECK(pre[n] == Catch::Approx(direct.logmag).epsilon(1e-12));
  }
  CHECK(pre[0] == -std::numeric_limits<double>::infinity());
}

TEST_CASE("growth exponents: exact rate at the full map, decay below it") {
  const MapFamily fam = make_logistic();
  const OrbitData od4 = critical_orbit(fam, 4.0, 0, 120);
  const CeResult ce = ce_exponent(od4, 20);
  CHECK(std::fabs(ce.rate - kLog4) <= 1e-12 * kLog4);

  const OrbitData od35 = critical_orbit(fam, 3.5, 0, 260);
  REQUIRE(od35.length() >= 200);
  CHECK(ce_exponent(od35, 50).rate < 0.0);  // attracting cycle

  // Window monotonicity: shrinking the candidate set cannot lower the min.
  const OrbitData od = critical_orbit(fam, 3.91, 0, 300);
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t n_min : {std::size_t{1}, std::size_t{10}, std::size_t{50}, std::size_t{150}}) {
    const double r = ce_exponent(od, n_min).rate;
    CHECK(r >= prev - 1e-15);
    prev = r;
  }
  CHECK_THROWS_AS(ce_exponent(od, 0), InvalidConfig);
  CHECK_THROWS_AS(ce_exponent(od, od.length() + 1), OrbitTooShort);
}

TEST_CASE("recurrence profiles weight close returns by elapsed time") {
  const MapFamily fam = make_logistic();
  const OrbitData od = critical_orbit(fam, 4.0, 0, 50);
  const RecurrenceResult r = recurrence_profile(od, 2.0);
  CHECK(r.best_C == Catch::Approx(0.5).epsilon(1e-15));  // dist 0.5 at n = 1
  CHECK(r.worst_n == 1);

  // beta-monotonicity at fixed orbit.
  const OrbitData od2 = critical_orbit(fam, 3.97, 0, 400);
  double prev = std::numeric_limits<double>::infinity();
  for (double beta : {4.0, 3.0, 2.0, 1.0, 0.5}) {
    const double c = recurrence_profile(od2, beta).best_C;
    CHECK(c <= prev + 1e-15);
    prev = c;
  }

  // An exact critical hit drives the profile to zero.
  const OrbitData odhit = critical_orbit(fam, 2.0, 0, 3);
  CHECK(recurrence_profile(odhit, 2.0).best_C == 0.0);
}

TEST_CASE("transversality gradient check across random parameters") {
  const MapFamily fam = make_logistic();
  Rng rng(2024);
  int tested = 0, attempts = 0;
  while (tested < 25 && ++attempts < 20000) {
    const double a = rng.uniform(3.6, 4.0);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(20));
    const OrbitData od = critical_orbit(fam, a, 0, n);
    if (od.escaped || od.points.size() <= n) continue;
    bool close = false;
    for (std::size_t j = 0; j <= n; ++j)
      if (od.crit_dist[j] <= 1e-3) close = true;
    if (close) continue;
    if (od.cum_deriv[n].logmag > std::log(1e5)) continue;  // FD noise dominates
    const double h = 1e-7;
    const double fd =
        (critical_orbit(fam, a + h, 0, n).points[n] - critical_orbit(fam, a - h, 0, n).points[n]) /
        (2.0 * h);
    const auto prefix = transversality_prefix(fam, od);
    const double grad = prefix[n] * od.cum_deriv[n].linear();
    CHECK(fd == Catch::Approx(grad).epsilon(1e-4).margin(1e-10));
    ++tested;
  }
  CHECK(tested == 25);
}
