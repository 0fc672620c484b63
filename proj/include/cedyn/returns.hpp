#pragma once

// Returns of the critical orbit into the critical neighborhood
// B~(eps) = union_c B(c, eps^{1/ell(c)}), their depths, the derivative
// statistic P_j with its distortion-normalized exponent p_j, and the
// essential / free markings on the resulting records.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "defs.hpp"
#include "errors.hpp"
#include "orbit.hpp"
#include "signed_log.hpp"

namespace cedyn {

// Scale geometry of the critical neighborhood at a fixed eps: the component
// around c has radius eps^{1/ell(c)}, and D_c(eps) = eps / |B~(c;eps)|.
struct EpsGeometry {
  double eps;
  std::vector<CriticalPoint> crit;
  std::vector<double> radius;

  EpsGeometry(double eps_in, std::vector<CriticalPoint> crit_in)
      : eps(eps_in), crit(std::move(crit_in)) {
    if (!(eps > 0.0)) throw InvalidConfig("eps must be positive");
    radius.reserve(crit.size());
    for (const auto& c : crit) radius.push_back(std::pow(eps, 1.0 / c.order));
  }

  double dc(std::size_t i) const { return eps / (2.0 * radius[i]); }

  bool in_neighborhood(double x) const {
    for (std::size_t i = 0; i < crit.size(); ++i)
      if (std::fabs(x - crit[i].position) < radius[i]) return true;
    return false;
  }

  int nearest(double x) const {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < crit.size(); ++i) {
      const double d = std::fabs(x - crit[i].position);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }
};

// Depth of x: smallest k >= 0 with |x - c| >= e^{-k} eps^{1/ell(c)} for every
// c (the shrunk component B~(c; e^{-k ell} eps) has radius e^{-k} eps^{1/ell}).
// Exact critical hits get the kDepthInf sentinel.
inline std::int64_t q_eps(double x, const EpsGeometry& g) {
  std::int64_t q = 0;
  for (std::size_t i = 0; i < g.crit.size(); ++i) {
    const double d = std::fabs(x - g.crit[i].position);
    if (d == 0.0) return kDepthInf;
    const double r = g.radius[i];
    if (d >= r) continue;
    std::int64_t k = static_cast<std::int64_t>(std::ceil(std::log(r / d)));
    while (k > 0 && d >= std::exp(-static_cast<double>(k - 1)) * r) --k;
    while (d < std::exp(-static_cast<double>(k)) * r) ++k;
    q = std::max(q, k);
  }
  return q;
}

struct ReturnRecord {
  std::size_t ordinal = 0;  // 1-based position in the return sequence
  std::size_t S = kSInf;    // return time: points[S] lies in B~(eps)
  int nearest = -1;
  std::int64_t d = 0;  // depth of the return point; 0 for S = inf
  double log_P = std::numeric_limits<double>::quiet_NaN();
  double p = std::numeric_limits<double>::quiet_NaN();
  double p_tilde = std::numeric_limits<double>::quiet_NaN();
  bool essential = false;
  bool free = false;
};

// Detects returns points[S] in B~(eps) for S >= 1 and fills the per-return
// statistics: depth d_j, log P_j = log |D_{S_j}| - log dist(f^{S_j+1}(c), crit)
// and p_j = log P_j - log A(f(c), t, S_j).
//
// max_returns = 0 collects every return the orbit certifies.  A positive
// max_returns pads missing returns with S = inf records when the orbit ran to
// full length, and raises OrbitTooShort when it escaped early instead.
inline std::vector<ReturnRecord> return_sequence(const OrbitData& od, const EpsGeometry& g,
                                                 std::size_t max_returns = 0) {
  std::vector<ReturnRecord> out;
  const std::vector<double> logA = distortion_log_prefix(od);
  for (std::size_t s = 1; s < od.points.size(); ++s) {
    if (max_returns > 0 && out.size() == max_returns) break;
    const double x = od.points[s];
    if (!g.in_neighborhood(x)) continue;
    ReturnRecord r;
    r.ordinal = out.size() + 1;
    r.S = s;
    r.nearest = g.nearest(x);
    r.d = q_eps(x, g);
    r.log_P = od.cum_deriv[s].is_zero() ? -std::numeric_limits<double>::infinity()
                                        : od.cum_deriv[s].logmag - std::log(od.crit_dist[s]);
    if (std::isinf(logA[s]) && logA[s] > 0)
      throw InfiniteDistortion("distortion sum hit a critical point before return " +
                               std::to_string(r.ordinal));
    r.p = r.log_P - logA[s];  // logA[s] = -inf (empty sum) gives p = +inf
    r.p_tilde = r.d == kDepthInf ? r.p : std::min(r.p, static_cast<double>(r.d));
    out.push_back(r);
  }
  if (max_returns > 0 && out.size() < max_returns) {
    if (od.escaped)
      throw OrbitTooShort("orbit escaped before certifying " + std::to_string(max_returns) +
                          " returns");
    while (out.size() < max_returns) {
      ReturnRecord r;
      r.ordinal = out.size() + 1;
      out.push_back(r);  // S = inf, d = 0 by convention
    }
  }
  return out;
}

// Marks ordinals n with P_n >= 3^{n-k} P_k for all 1 <= k < n (ordinal 1 is
// vacuously essential).  Running-maximum scan over v_n = log P_n - n log 3;
// records past the first S = inf entry are never essential.
inline std::vector<std::size_t> essential_returns(std::vector<ReturnRecord>& records) {
  constexpr double log3 = 1.0986122886681098;
  std::vector<std::size_t> idx;
  double run_max = -std::numeric_limits<double>::infinity();
  bool first = true;
  for (auto& r : records) {
    r.essential = false;
    if (r.S == kSInf) break;
    const double v = r.log_P - static_cast<double>(r.ordinal) * log3;
    if (first || v >= run_max) {
      r.essential = true;
      idx.push_back(r.ordinal);
    }
    run_max = std::max(run_max, v);
    first = false;
  }
  return idx;
}

// Free returns: the chain i_1 = 1, i_{k+1} = first return past the binding
// window of i_k.  The window end S^ is the largest S with
// A(f^{S_i+2}(c), t, S - S_i) <= theta0 e^{(d_i - 1) ell(c')} / eps, where c'
// is the critical point returned to; an immediately exceeded threshold gives
// an empty window.  The chain stops when the window or the next return runs
// past the computed orbit.
inline std::vector<std::size_t> free_returns(std::vector<ReturnRecord>& records,
                                             const OrbitData& od, const EpsGeometry& g,
                                             double theta0) {
  if (!(theta0 > 0.0)) throw InvalidConfig("theta0 must be positive");
  for (auto& r : records) r.free = false;
  std::vector<std::size_t> idx;
  std::size_t finite = 0;
  while (finite < records.size() && records[finite].S != kSInf) ++finite;
  if (finite == 0) return idx;
  for (std::size_t i = 0; i < finite; ++i)
    if (records[i].S > od.length())
      throw OrbitTooShort("return records extend past the supplied orbit");

  std::size_t cur = 0;
  records[0].free = true;
  idx.push_back(records[0].ordinal);
  const std::size_t last_point = od.points.size() - 1;
  while (true) {
    const ReturnRecord& r = records[cur];
    const std::size_t Si = r.S;
    if (r.d == kDepthInf) break;  // threshold infinite: window never closes
    const int ell = g.crit[static_cast<std::size_t>(r.nearest)].order;
    const double log_thr = std::log(theta0) +
                           static_cast<double>(r.d - 1) * static_cast<double>(ell) -
                           std::log(g.eps);
    if (Si + 1 > last_point) break;  // window start past the orbit
    const SignedLogReal& base = od.cum_deriv[Si + 1];
    if (base.is_zero()) break;

    // Grow the window while the distortion sum stays under the threshold.
    LogSumAccumulator acc;
    std::size_t S_hat = Si;
    bool window_open = true;  // still under threshold at the orbit end
    for (std::size_t S = Si + 1; S <= last_point; ++S) {
      const double dist = od.crit_dist[S];
      const double term = dist == 0.0 ? std::numeric_limits<double>::infinity()
                                      : od.cum_deriv[S].logmag - base.logmag - std::log(dist);
      acc.add_log_term(term);
      if (acc.log_value() > log_thr) {
        S_hat = S - 1;
        window_open = false;
        break;
      }
      S_hat = S;
    }
    if (window_open) break;  // S^ not certified inside the orbit

    std::size_t next = cur + 1;
    while (next < finite && records[next].S <= S_hat) ++next;
    if (next >= finite) break;
    cur = next;
    records[cur].free = true;
    idx.push_back(records[cur].ordinal);
  }
  return idx;
}

// Total depth carried by essential returns: sum of p~_k over essential
// ordinals k <= n with p~_k > C0.
inline double essential_depth_sum(const std::vector<ReturnRecord>& records, double C0,
                                  std::size_t n) {
  double sum = 0.0;
  for (const auto& r : records) {
    if (r.ordinal > n || r.S == kSInf) break;
    if (r.essential && r.p_tilde > C0) sum += r.p_tilde;
  }
  return sum;
}

}  // namespace cedyn
