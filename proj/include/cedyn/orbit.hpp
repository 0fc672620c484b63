#pragma once

// Critical-orbit evaluation and the statistics read off it: derivative
// growth, reciprocal-derivative sums, the parameter-transversality sum, the
// weighted distortion sum, and polynomial recurrence.
//
// Index convention used throughout: points[j] = f_t^{j+1}(c), so the orbit
// point f^n(c) for n >= 1 is points[n-1], while cum_deriv[j] = Df_t^j(f_t(c))
// starts at D_0 = 1 and is aligned with points.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "family.hpp"
#include "signed_log.hpp"

namespace cedyn {

struct OrbitData {
  double t = 0.0;
  std::size_t crit_index = 0;
  double crit_position = 0.0;
  std::vector<CriticalPoint> crit;        // critical set at t
  std::vector<double> points;             // points[j] = f^{j+1}(c)
  std::vector<SignedLogReal> cum_deriv;   // D_j = Df^j(f(c))
  std::vector<double> crit_dist;          // dist(points[j], crit)
  std::optional<std::size_t> escaped;     // j such that f^{j+1}(c) left [0,1]

  // Largest n with D_n available.
  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
};

inline OrbitData critical_orbit(const MapFamily& fam, double t, std::size_t crit_index,
                                std::size_t n_max) {
  OrbitData od;
  od.t = t;
  od.crit = fam.critical_points(t);
  if (crit_index >= od.crit.size())
    throw InvalidConfig("critical point index " + std::to_string(crit_index) +
                        " out of range (family has " + std::to_string(od.crit.size()) + ")");
  od.crit_index = crit_index;
  od.crit_position = od.crit[crit_index].position;
  od.points.reserve(n_max + 1);
  od.cum_deriv.reserve(n_max + 1);
  od.crit_dist.reserve(n_max + 1);

  SignedLogReal D = SignedLogReal::one();
  double x = od.crit_position;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Jet j = fam.jet(x, t);
    if (n > 0) D = D * SignedLogReal::from_linear(j.dfx);
    double next;
    try {
      next = clamp01(j.f);
    } catch (const EvaluationEscaped&) {
      od.escaped = n;
      break;
    }
    od.points.push_back(next);
    od.cum_deriv.push_back(D);
    od.crit_dist.push_back(dist_to_critical(next, od.crit));
    x = next;
  }
  return od;
}

struct SummabilityResult {
  double partial;     // sum_{n<=N} |D_n|^{-1}
  double tail_ratio;  // last term over the partial sum
};

inline SummabilityResult summability_partial(const OrbitData& od, std::size_t N) {
  if (N >= od.cum_deriv.size())
    throw OrbitTooShort("summability horizon exceeds computed orbit");
  double sum = 0.0, last = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    if (od.cum_deriv[n].is_zero())
      throw ZeroDerivativeOnOrbit("derivative vanished at step " + std::to_string(n));
    last = std::exp(-od.cum_deriv[n].logmag);
    sum += last;
  }
  return {sum, last / sum};
}

// M_n = sum_{j=0}^{n} dF/dt(f^j(c), t) / D_j for every n up to the orbit
// length.  The j = 0 term sits at the critical point itself.
inline std::vector<double> transversality_prefix(const MapFamily& fam, const OrbitData& od) {
  std::vector<double> M;
  M.reserve(od.points.size() + 1);
  double acc = fam.jet(od.crit_position, od.t).dft;  // j = 0, D_0 = 1
  M.push_back(acc);
  for (std::size_t j = 1; j < od.points.size(); ++j) {
    const SignedLogReal& D = od.cum_deriv[j];
    if (D.is_zero())
      throw ZeroDerivativeOnOrbit("derivative vanished at step " + std::to_string(j));
    const double dft = fam.jet(od.points[j - 1], od.t).dft;
    if (dft != 0.0) {
      const double mag = std::exp(std::log(std::fabs(dft)) - D.logmag);
      acc += (dft > 0.0 ? 1.0 : -1.0) * D.sign * mag;
    }
    M.push_back(acc);
  }
  return M;
}

inline double transversality_sum(const MapFamily& fam, double t, std::size_t crit_index,
                                 std::size_t n) {
  const OrbitData od = critical_orbit(fam, t, crit_index, n);
  if (od.length() < n) throw OrbitTooShort("orbit escaped before transversality horizon");
  return transversality_prefix(fam, od)[n];
}

struct NvResult {
  double a_c;         // truncated transversality sum M_N
  double tail_bound;  // dt_sup times a geometric tail estimate
  bool nonzero;       // |a_c| > tail_bound
};

// Certifies a nonzero transversality limit by comparing M_N against a bound
// on the discarded tail.  The tail assumes eventual geometric decay of
// |D_j|^{-1} at the net rate observed over the last (up to) 25 steps, with a
// 2x safety factor; windows with net contraction of |D_j| raise
// TailNotContracting since no decay rate can be read off them.
inline NvResult nv_from_orbit(const MapFamily& fam, const OrbitData& od, std::size_t N) {
  if (od.length() < N) throw OrbitTooShort("orbit escaped before transversality horizon");
  double a_c = fam.jet(od.crit_position, od.t).dft;  // j = 0, D_0 = 1
  for (std::size_t j = 1; j <= N; ++j) {
    const SignedLogReal& D = od.cum_deriv[j];
    if (D.is_zero())
      throw ZeroDerivativeOnOrbit("derivative vanished at step " + std::to_string(j));
    const double dft = fam.jet(od.points[j - 1], od.t).dft;
    if (dft != 0.0)
      a_c += (dft > 0.0 ? 1.0 : -1.0) * D.sign * std::exp(std::log(std::fabs(dft)) - D.logmag);
  }

  double tail_bound = 0.0;
  if (fam.dt_sup() > 0.0) {
    const std::size_t window = std::min<std::size_t>(25, N);
    if (window == 0) throw TailNotContracting("no ratios available to estimate the tail");
    const double mean_log_ratio =
        (od.cum_deriv[N - window].logmag - od.cum_deriv[N].logmag) / static_cast<double>(window);
    const double r = std::exp(mean_log_ratio);
    if (!(r < 1.0))
      throw TailNotContracting("no net derivative growth near the horizon");
    const double w_N = std::exp(-od.cum_deriv[N].logmag);
    tail_bound = fam.dt_sup() * 2.0 * w_N * r / (1.0 - r);
  }
  return {a_c, tail_bound, std::fabs(a_c) > tail_bound};
}

inline NvResult nv_check(const MapFamily& fam, double t, std::size_t crit_index, std::size_t N) {
  return nv_from_orbit(fam, critical_orbit(fam, t, crit_index, N), N);
}

// Weighted distortion sum A(x,t,n) = sum_{j<n} |Df^j(x)| / dist(f^j(x), crit).
// Returns the +inf sentinel when the orbit prefix hits a critical point
// exactly; n = 0 gives the empty sum.
inline SignedLogReal distortion_sum(const MapFamily& fam, double t, double x, std::size_t n) {
  const auto crit = fam.critical_points(t);
  LogSumAccumulator acc;
  SignedLogReal D = SignedLogReal::one();
  double y = x;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = dist_to_critical(y, crit);
    if (d == 0.0) return SignedLogReal{1, std::numeric_limits<double>::infinity()};
    if (D.is_zero()) break;  // all remaining terms vanish
    acc.add_log_term(D.logmag - std::log(d));
    const Jet jt = fam.jet(y, t);
    D = D * SignedLogReal::from_linear(jt.dfx);
    y = clamp01(jt.f);
  }
  return acc.value();
}

// log A(f(c), t, n) for n = 0..length+1, read directly off the orbit arrays.
// Matches distortion_sum(fam, t, f_t(c), n) term for term.
inline std::vector<double> distortion_log_prefix(const OrbitData& od) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> logA(od.points.size() + 1, -inf);
  LogSumAccumulator acc;
  for (std::size_t n = 1; n < logA.size(); ++n) {
    const std::size_t j = n - 1;
    if (od.crit_dist[j] == 0.0 && !od.cum_deriv[j].is_zero()) {
      for (std::size_t m = n; m < logA.size(); ++m) logA[m] = inf;
      return logA;
    }
    if (od.cum_deriv[j].is_zero()) {
      for (std::size_t m = n; m < logA.size(); ++m) logA[m] = logA[n - 1];
      return logA;
    }
    acc.add_log_term(od.cum_deriv[j].logmag - std::log(od.crit_dist[j]));
    logA[n] = acc.log_value();
  }
  return logA;
}

struct CeResult {
  double rate;       // min over the window of logmag(D_n)/n
  std::size_t at_n;  // smallest minimizer
};

inline CeResult ce_exponent(const OrbitData& od, std::size_t n_min) {
  const std::size_t len = od.length();
  if (n_min < 1) throw InvalidConfig("n_min must be at least 1");
  if (n_min > len) throw OrbitTooShort("orbit shorter than the growth window");
  double best = std::numeric_limits<double>::infinity();
  std::size_t at = n_min;
  for (std::size_t n = 1; n <= len; ++n) {
    if (od.cum_deriv[n].is_zero())
      throw ZeroDerivativeOnOrbit("derivative vanished at step " + std::to_string(n));
    if (n < n_min) continue;
    const double rate = od.cum_deriv[n].logmag / static_cast<double>(n);
    if (rate < best) {
      best = rate;
      at = n;
    }
  }
  return {best, at};
}

struct RecurrenceResult {
  double best_C;        // min over n of dist(f^n(c), crit) * n^beta
  std::size_t worst_n;  // smallest minimizer
};

inline RecurrenceResult recurrence_profile(const OrbitData& od, double beta) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t at = 1;
  for (std::size_t n = 1; n <= od.points.size(); ++n) {
    const double v = od.crit_dist[n - 1] * std::pow(static_cast<double>(n), beta);
    if (v < best) {
      best = v;
      at = n;
    }
  }
  return {best, at};
}

}  // namespace cedyn
