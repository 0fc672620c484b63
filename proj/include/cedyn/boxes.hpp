#pragma once

// Parameter-space counterparts of the phase-space machinery: the curves
// xi_m(t) = f_t^{m+1}(c(t)), pre-critical parameters, distortion-derived box
// radii, and sampled verification that a parameter box is lambda-bounded
// (xi_m a diffeomorphism with controlled derivative ratios, the truncated
// transversality sum pinned near its base value, and phase derivatives
// comparable across the box).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "family.hpp"
#include "orbit.hpp"
#include "returns.hpp"

namespace cedyn {

inline double xi(const MapFamily& fam, double t, std::size_t crit_index, std::size_t m) {
  const auto crit = fam.critical_points(t);
  if (crit_index >= crit.size()) throw InvalidConfig("critical point index out of range");
  double x = crit[crit_index].position;
  for (std::size_t j = 0; j <= m; ++j) x = clamp01(fam.jet(x, t).f);
  return x;
}

// Parameters t in [t_lo, t_hi] with xi_m(t) on a critical point while the
// earlier orbit f_t^j(c), 1 <= j <= m, stays clear of the critical set
// (within 1e-10).  Sign-change isolation on a uniform grid, bisection to
// 1e-14.
inline std::vector<double> find_precritical(const MapFamily& fam, double t_lo, double t_hi,
                                            std::size_t crit_source, std::size_t m,
                                            int grid = 4096) {
  if (!(t_lo < t_hi)) throw InvalidConfig("empty parameter range");
  if (t_lo < fam.t_min() || t_hi > fam.t_max())
    throw ParameterOutOfDomain("search range leaves the family domain");
  const std::size_t n_targets = fam.critical_points(0.5 * (t_lo + t_hi)).size();

  std::vector<double> roots;
  for (std::size_t tgt = 0; tgt < n_targets; ++tgt) {
    auto g = [&](double t) {
      return xi(fam, t, crit_source, m) - fam.critical_points(t)[tgt].position;
    };
    double prev_t = t_lo, prev_v = g(t_lo);
    for (int i = 1; i <= grid; ++i) {
      const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / grid;
      const double v = g(t);
      if (v == 0.0) {
        roots.push_back(t);
      } else if (prev_v == 0.0) {
        if (prev_t == t_lo) roots.push_back(prev_t);
      } else if ((prev_v < 0.0) != (v < 0.0)) {
        double a = prev_t, b = t, fa = prev_v;
        while (b - a > kRootTol) {
          const double mid = 0.5 * (a + b);
          const double fm = g(mid);
          if (fm == 0.0) {
            a = b = mid;
            break;
          }
          if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        roots.push_back(0.5 * (a + b));
      }
      prev_t = t;
      prev_v = v;
    }
  }
  std::sort(roots.begin(), roots.end());

  std::vector<double> out;
  for (double t : roots) {
    if (!out.empty() && t - out.back() < 4 * kRootTol) continue;
    const auto crit = fam.critical_points(t);
    bool avoid = true;
    double x = crit[crit_source].position;
    for (std::size_t j = 1; j <= m && avoid; ++j) {
      x = clamp01(fam.jet(x, t).f);
      if (dist_to_critical(x, crit) < 1e-10) avoid = false;
    }
    if (avoid) out.push_back(t);
  }
  return out;
}

struct BoxRadius {
  double radius;
  bool capped = false;   // m = 0: empty distortion sum, configured cap used
  bool clipped = false;  // shrunk to stay inside the parameter domain
};

inline BoxRadius box_radius(const MapFamily& fam, double t0, std::size_t crit_index,
                            std::size_t m, double theta, double m0_cap = 0.05) {
  if (!(theta > 0.0)) throw InvalidTheta("theta must be positive");
  const auto crit = fam.critical_points(t0);
  if (crit_index >= crit.size()) throw InvalidConfig("critical point index out of range");
  const double cv = clamp01(fam.jet(crit[crit_index].position, t0).f);
  const SignedLogReal A = distortion_sum(fam, t0, cv, m);
  BoxRadius out;
  if (A.is_zero()) {
    out.radius = m0_cap;
    out.capped = true;
  } else {
    if (std::isinf(A.logmag)) throw InfiniteDistortion("distortion sum infinite at the base");
    out.radius = std::exp(std::log(theta) - A.logmag);
  }
  const double to_edge = std::min(t0 - fam.t_min(), fam.t_max() - t0);
  if (out.radius > to_edge) {
    out.radius = to_edge;
    out.clipped = true;
  }
  return out;
}

struct ParameterBox {
  double center;
  double radius;
  std::size_t crit_index;
  std::size_t order;  // m
  double lambda;
  bool clipped = false;
};

struct BoxVerification {
  bool pass = false;
  bool monotone = false;
  bool degenerate = false;  // zero radius: nothing to compare
  double worst_xi_ratio = std::numeric_limits<double>::quiet_NaN();
  double worst_deriv_ratio = std::numeric_limits<double>::quiet_NaN();
  double m_abs_min = std::numeric_limits<double>::quiet_NaN();
  double m_abs_max = std::numeric_limits<double>::quiet_NaN();
};

// Samples the box and checks the three lambda-bounded conditions against the
// supplied base transversality value a_c_base.  xi' is estimated by central
// differences on a stencil kept inside the box.
inline BoxVerification verify_box(const MapFamily& fam, const ParameterBox& box, double a_c_base,
                                  std::size_t samples = 9) {
  if (samples < 3) throw InvalidConfig("need at least 3 samples");
  BoxVerification out;
  if (box.radius <= 0.0) {
    out.degenerate = true;
    out.pass = true;
    out.monotone = true;
    out.worst_xi_ratio = out.worst_deriv_ratio = 1.0;
    return out;
  }
  const double lo = box.center - box.radius, hi = box.center + box.radius;
  const double h = (hi - lo) / (static_cast<double>(samples) * 20.0);
  const std::size_t m = box.order;

  std::vector<double> vals(samples), primes(samples), Mabs(samples);
  std::vector<std::vector<double>> logD(samples);
  bool deriv_zero = false;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    vals[i] = xi(fam, t, box.crit_index, m);
    const double tc = std::min(std::max(t, lo + h), hi - h);
    primes[i] = (xi(fam, tc + h, box.crit_index, m) - xi(fam, tc - h, box.crit_index, m)) / (2.0 * h);
    const OrbitData od = critical_orbit(fam, t, box.crit_index, m);
    if (od.length() < m) throw EvaluationEscaped("orbit escaped inside the box");
    Mabs[i] = std::fabs(transversality_prefix(fam, od)[m]);
    logD[i].resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
      if (od.cum_deriv[k].is_zero()) deriv_zero = true;
      logD[i][k] = od.cum_deriv[k].logmag;
    }
  }

  bool inc = true, dec = true;
  for (std::size_t i = 0; i + 1 < samples; ++i) {
    if (!(vals[i + 1] > vals[i])) inc = false;
    if (!(vals[i + 1] < vals[i])) dec = false;
  }
  out.monotone = inc || dec;

  double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
  for (double p : primes) {
    pmin = std::min(pmin, std::fabs(p));
    pmax = std::max(pmax, std::fabs(p));
  }
  out.worst_xi_ratio = pmin > 0.0 ? pmax / pmin : std::numeric_limits<double>::infinity();

  double spread = 0.0;
  for (std::size_t k = 0; k <= m && !deriv_zero; ++k) {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (std::size_t i = 0; i < samples; ++i) {
      mn = std::min(mn, logD[i][k]);
      mx = std::max(mx, logD[i][k]);
    }
    spread = std::max(spread, mx - mn);
  }
  out.worst_deriv_ratio = deriv_zero ? std::numeric_limits<double>::infinity() : std::exp(spread);

  out.m_abs_min = *std::min_element(Mabs.begin(), Mabs.end());
  out.m_abs_max = *std::max_element(Mabs.begin(), Mabs.end());
  const double base = std::fabs(a_c_base);
  const bool m_ok = out.m_abs_min >= base / box.lambda && out.m_abs_max <= base * box.lambda;

  out.pass = out.monotone && out.worst_xi_ratio <= box.lambda && m_ok &&
             out.worst_deriv_ratio <= box.lambda;
  return out;
}

struct VerifiedBox {
  ParameterBox box;
  BoxVerification verification;
  std::size_t min_return_count = 0;  // returns of the orbit through step m+1
};

// Around each pre-critical parameter of order m <= m_max, grows the largest
// radius r <= min(eps, theta-derived cap) for which the box verifies
// lambda-bounded and xi_m keeps mapping the box into B~(eps); boxes whose
// sampled orbits always show more than n_cap returns are dropped.
inline std::vector<VerifiedBox> box_family(const MapFamily& fam, double t_lo, double t_hi,
                                           std::size_t crit_source, std::size_t m_max,
                                           std::size_t n_cap, double eps, double lambda,
                                           double theta) {
  if (!(eps > 0.0)) throw InvalidConfig("eps must be positive");
  if (!(lambda > 1.0)) throw InvalidConfig("lambda must exceed 1");
  std::vector<VerifiedBox> out;
  for (std::size_t m = 0; m <= m_max; ++m) {
    for (double t0 : find_precritical(fam, t_lo, t_hi, crit_source, m)) {
      const double a_c = transversality_sum(fam, t0, crit_source, m);
      const BoxRadius seed = box_radius(fam, t0, crit_source, m, theta);
      const double to_edge = std::min(t0 - fam.t_min(), fam.t_max() - t0);
      const double r_hi = std::min({eps, seed.radius, to_edge});
      if (!(r_hi > 0.0)) continue;

      auto sampled_ok = [&](double r) {
        ParameterBox cand{t0, r, crit_source, m, lambda, false};
        BoxVerification v;
        try {
          v = verify_box(fam, cand, a_c);
        } catch (const EvaluationEscaped&) {
          return false;
        }
        if (!v.pass) return false;
        for (int i = 0; i < 9; ++i) {
          const double t = t0 - r + 2.0 * r * i / 8.0;
          const EpsGeometry g(eps, fam.critical_points(t));
          if (!g.in_neighborhood(xi(fam, t, crit_source, m))) return false;
        }
        return true;
      };

      double r;
      if (sampled_ok(r_hi)) {
        r = r_hi;
      } else {
        double good = r_hi * 1e-12;
        if (!sampled_ok(good)) continue;
        double bad = r_hi;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (good + bad);
          (sampled_ok(mid) ? good : bad) = mid;
        }
        r = good;
      }

      ParameterBox box{t0, r, crit_source, m, lambda, r == to_edge};
      VerifiedBox vb{box, verify_box(fam, box, a_c), 0};
      std::size_t min_count = std::numeric_limits<std::size_t>::max();
      for (int i = 0; i < 9; ++i) {
        const double t = t0 - r + 2.0 * r * i / 8.0;
        const OrbitData od = critical_orbit(fam, t, crit_source, m);
        const EpsGeometry g(eps, od.crit);
        std::size_t count = 0;
        for (std::size_t j = 0; j <= m && j < od.points.size(); ++j)
          if (g.in_neighborhood(od.points[j])) ++count;
        min_count = std::min(min_count, count);
      }
      vb.min_return_count = min_count;
      if (min_count > n_cap) continue;
      out.push_back(vb);
    }
  }
  return out;
}

}  // namespace cedyn
