#pragma once

// Parameter classification: depth-budget membership (X), slow-recurrence
// membership (Y), derivative-growth and transversality verdicts, stratified
// density sweeps over parameter windows, empirical expansion constants, and
// the total-depth / expansion-chain diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "defs.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "orbit.hpp"
#include "returns.hpp"
#include "rng.hpp"

namespace cedyn {

enum class Status { Pass, Fail, Undet };

struct ClassifyConfig {
  double C = 20.0;
  double C0 = 5.0;
  double tau = 2.0;
  double tau0 = 1.5;
  double gamma = 0.5;
  double kappa = 0.5;
  double lambda = 1.5;
  double theta = 0.01;
  double theta0 = 0.1;
  double lambda_ce = 0.05;
  std::size_t n_min = 50;
  std::size_t n_max = 10000;
  std::size_t n_nv = 50;            // truncation for the transversality check
  std::size_t const_samples = 200;  // samples for expansion-constant estimates
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  double rho() const { return 1.0 - std::sqrt(gamma); }
  double rho1() const { return rho() / 4.0; }
  double rho2(int ell_max) const { return rho1() / (2.0 * ell_max); }

  void validate() const {
    if (!(C > 0.0)) throw InvalidConfig("C must be positive");
    if (!(C0 >= 0.0)) throw InvalidConfig("C0 must be nonnegative");
    if (!(tau > 1.0)) throw InvalidConfig("tau must exceed 1");
    if (!(tau0 > 1.0)) throw InvalidConfig("tau0 must exceed 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidConfig("gamma must lie in (0,1)");
    if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidConfig("kappa must lie in (0,1)");
    if (!(lambda > 1.0)) throw InvalidConfig("lambda must exceed 1");
    if (!(theta > 0.0)) throw InvalidTheta("theta must be positive");
    if (!(theta0 > 0.0)) throw InvalidTheta("theta0 must be positive");
    if (!(lambda_ce > 0.0)) throw InvalidConfig("lambda_ce must be positive");
    if (n_min < 1) throw InvalidConfig("n_min must be at least 1");
    if (n_max < n_min) throw InvalidConfig("n_max must be at least n_min");
  }
};

struct XMembership {
  bool pass = true;
  std::optional<std::size_t> fail_k;
  std::optional<std::size_t> fail_crit;
};

// t lies in the depth-budget set of order n iff for every critical point the
// depths of its first k returns sum to at most C*k, for all 1 <= k < n.
// Returns past the computed sequence contribute 0 by the no-further-return
// convention, which requires the orbit to have run to full length.
inline XMembership x_membership(const MapFamily& fam, double t, double eps, double C,
                                std::size_t n, std::size_t orbit_len) {
  XMembership out;
  const std::size_t n_crit = fam.critical_points(t).size();
  for (std::size_t ci = 0; ci < n_crit; ++ci) {
    const OrbitData od = critical_orbit(fam, t, ci, orbit_len);
    const EpsGeometry g(eps, od.crit);
    const auto records = return_sequence(od, g, 0);
    if (od.escaped && records.size() + 1 < n)
      throw OrbitTooShort("orbit escaped before certifying the depth budget horizon");
    double sum = 0.0;
    for (std::size_t k = 1; k < n && k <= records.size(); ++k) {
      const auto& r = records[k - 1];
      sum += r.d == kDepthInf ? std::numeric_limits<double>::infinity()
                              : static_cast<double>(r.d);
      if (sum > C * static_cast<double>(k)) {
        if (!out.fail_k || k < *out.fail_k) {
          out.fail_k = k;
          out.fail_crit = ci;
        }
        out.pass = false;
        break;
      }
    }
  }
  return out;
}

struct YMembership {
  bool pass = true;
  std::optional<std::size_t> fail_m;
  std::optional<std::size_t> fail_source;
  std::optional<std::size_t> fail_target;
};

// t lies in the slow-recurrence set of order m iff every orbit point
// f_t^{k+1}(c), 0 <= k < m, keeps distance eps^{1/ell(c')} (k+1)^{-tau} from
// every critical point c'.  Callers wanting the full membership chain check
// the depth budget first; C only names that precondition.
inline YMembership y_membership(const MapFamily& fam, double t, double eps, double C, double tau,
                                std::size_t m, std::size_t orbit_len) {
  (void)C;
  YMembership out;
  const std::size_t n_crit = fam.critical_points(t).size();
  std::vector<OrbitData> orbits;
  orbits.reserve(n_crit);
  for (std::size_t ci = 0; ci < n_crit; ++ci)
    orbits.push_back(critical_orbit(fam, t, ci, orbit_len));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t s = 0; s < n_crit; ++s) {
      if (k >= orbits[s].points.size())
        throw OrbitTooShort("orbit escaped before the recurrence horizon");
      const double x = orbits[s].points[k];
      const auto& crit = orbits[s].crit;
      for (std::size_t c = 0; c < crit.size(); ++c) {
        const double thr = std::pow(eps, 1.0 / crit[c].order) *
                           std::pow(static_cast<double>(k + 1), -tau);
        if (std::fabs(x - crit[c].position) < thr) {
          if (!out.fail_m) {
            out.fail_m = k;
            out.fail_source = s;
            out.fail_target = c;
          }
          out.pass = false;
          return out;
        }
      }
    }
  }
  return out;
}

struct CeVerdict {
  bool verdict = false;
  double rate = std::numeric_limits<double>::quiet_NaN();
  std::size_t at_n = 0;
  bool zero_derivative = false;
};

inline CeVerdict ce_verdict(const MapFamily& fam, double t, const ClassifyConfig& cfg) {
  CeVerdict out;
  const std::size_t n_crit = fam.critical_points(t).size();
  double rate = std::numeric_limits<double>::infinity();
  for (std::size_t ci = 0; ci < n_crit; ++ci) {
    const OrbitData od = critical_orbit(fam, t, ci, cfg.n_max);
    try {
      const CeResult r = ce_exponent(od, cfg.n_min);
      if (r.rate < rate) {
        rate = r.rate;
        out.at_n = r.at_n;
      }
    } catch (const ZeroDerivativeOnOrbit&) {
      out.zero_derivative = true;
      out.verdict = false;
      out.rate = -std::numeric_limits<double>::infinity();
      return out;
    }
  }
  out.rate = rate;
  out.verdict = rate >= cfg.lambda_ce;
  return out;
}

struct VerdictRow {
  double eps = 0.0;
  double t = 0.0;
  std::size_t x_pass_n = kSInf;  // largest certified depth-budget order
  std::size_t y_pass_m = kSInf;  // largest certified slow-recurrence order
  double ce_rate = std::numeric_limits<double>::quiet_NaN();
  bool ce_pass = false;
  double pr_best_C = std::numeric_limits<double>::quiet_NaN();
  bool nv_nonzero = false;
  Status x_st = Status::Undet, y_st = Status::Undet, ce_st = Status::Undet,
         nv_st = Status::Undet;
  std::optional<std::size_t> x_fail_k;

  Status overall() const {
    if (x_st == Status::Fail || y_st == Status::Fail || ce_st == Status::Fail ||
        nv_st == Status::Fail)
      return Status::Fail;
    if (x_st == Status::Undet || y_st == Status::Undet || ce_st == Status::Undet ||
        nv_st == Status::Undet)
      return Status::Undet;
    return Status::Pass;
  }
  bool undetermined() const { return overall() == Status::Undet; }
  bool pass() const { return overall() == Status::Pass; }
};

// Full verdict for a single parameter, sharing one orbit per critical point
// across all four checks.
inline VerdictRow classify_row(const MapFamily& fam, double t, double eps,
                               const ClassifyConfig& cfg) {
  VerdictRow row;
  row.t = t;
  row.eps = eps;
  const std::size_t n_crit = fam.critical_points(t).size();
  if (n_crit == 0) return row;  // nothing to classify: everything undetermined

  std::vector<OrbitData> orbits;
  std::vector<std::vector<ReturnRecord>> records;
  bool infinite_distortion = false;
  for (std::size_t ci = 0; ci < n_crit; ++ci) {
    orbits.push_back(critical_orbit(fam, t, ci, cfg.n_max));
    const EpsGeometry g(eps, orbits.back().crit);
    try {
      records.push_back(return_sequence(orbits.back(), g, 0));
    } catch (const InfiniteDistortion&) {
      infinite_distortion = true;
      records.emplace_back();
    }
  }

  // Depth budget.
  bool x_viol = false, x_escaped = false;
  std::size_t x_cap = kSInf;
  if (infinite_distortion) {
    x_escaped = true;
  } else {
    for (std::size_t ci = 0; ci < n_crit; ++ci) {
      double sum = 0.0;
      bool viol = false;
      for (const auto& r : records[ci]) {
        sum += r.d == kDepthInf ? std::numeric_limits<double>::infinity()
                                : static_cast<double>(r.d);
        if (sum > cfg.C * static_cast<double>(r.ordinal)) {
          viol = true;
          if (!row.x_fail_k || r.ordinal < *row.x_fail_k) row.x_fail_k = r.ordinal;
          break;
        }
      }
      x_viol = x_viol || viol;
      if (!viol && orbits[ci].escaped) {
        x_escaped = true;
        x_cap = std::min(x_cap, records[ci].size() + 1);
      }
    }
  }
  if (x_viol) {
    row.x_st = Status::Fail;
    row.x_pass_n = *row.x_fail_k;
  } else if (x_escaped) {
    row.x_st = Status::Undet;
    row.x_pass_n = x_cap;
  } else {
    row.x_st = Status::Pass;
  }

  // Slow recurrence.
  std::size_t horizon = kSInf;
  for (const auto& od : orbits) horizon = std::min(horizon, od.points.size());
  bool y_viol = false;
  std::size_t y_fail = kSInf;
  for (std::size_t ci = 0; ci < n_crit && !y_viol; ++ci) {
    const auto& od = orbits[ci];
    for (std::size_t k = 0; k < horizon && !y_viol; ++k) {
      const double decay = std::pow(static_cast<double>(k + 1), -cfg.tau);
      const double x = od.points[k];
      for (std::size_t c = 0; c < od.crit.size(); ++c) {
        const double thr = std::pow(eps, 1.0 / od.crit[c].order) * decay;
        if (std::fabs(x - od.crit[c].position) < thr) {
          y_viol = true;
          y_fail = std::min(y_fail, k);
          break;
        }
      }
    }
  }
  if (y_viol) {
    row.y_st = Status::Fail;
    row.y_pass_m = y_fail;
  } else if (horizon < cfg.n_max + 1) {
    row.y_st = Status::Undet;
    row.y_pass_m = horizon;
  } else {
    row.y_st = Status::Pass;
  }

  // Growth rate.
  double rate = std::numeric_limits<double>::infinity();
  bool ce_undet = false, ce_zero = false;
  for (const auto& od : orbits) {
    if (od.length() < cfg.n_min) {
      ce_undet = true;
      continue;
    }
    try {
      rate = std::min(rate, ce_exponent(od, cfg.n_min).rate);
    } catch (const ZeroDerivativeOnOrbit&) {
      ce_zero = true;
    }
  }
  if (ce_zero) {
    row.ce_st = Status::Fail;
    row.ce_rate = -std::numeric_limits<double>::infinity();
  } else if (ce_undet) {
    row.ce_st = Status::Undet;
  } else {
    row.ce_rate = rate;
    row.ce_pass = rate >= cfg.lambda_ce;
    row.ce_st = row.ce_pass ? Status::Pass : Status::Fail;
  }

  // Transversality.
  bool nv_undet = false, nv_all = true;
  for (const auto& od : orbits) {
    if (od.length() < cfg.n_nv) {
      nv_undet = true;
      continue;
    }
    try {
      nv_all = nv_all && nv_from_orbit(fam, od, cfg.n_nv).nonzero;
    } catch (const TailNotContracting&) {
      nv_undet = true;
    } catch (const ZeroDerivativeOnOrbit&) {
      nv_undet = true;
    }
  }
  if (!nv_all) {
    row.nv_st = Status::Fail;
    row.nv_nonzero = false;
  } else if (nv_undet) {
    row.nv_st = Status::Undet;
  } else {
    row.nv_nonzero = true;
    row.nv_st = Status::Pass;
  }

  // Recurrence profile (reported, not part of the conjunction).
  double best = std::numeric_limits<double>::infinity();
  for (const auto& od : orbits) best = std::min(best, recurrence_profile(od, cfg.tau).best_C);
  row.pr_best_C = best;
  return row;
}

struct ConstantsResult {
  double lambda_hat = std::numeric_limits<double>::quiet_NaN();
  double l_star_hat = std::numeric_limits<double>::quiet_NaN();
  double lambda_witness_x = 0.0, lambda_witness_t = 0.0;
  std::size_t lambda_witness_s = 0;
  double lstar_witness_x = 0.0, lstar_witness_t = 0.0;
  std::size_t lstar_witness_n = 0;
  std::size_t lambda_candidates = 0;
  std::size_t segments = 0;
  bool degenerate = false;  // neighborhood radii comparable to the whole interval
};

// Empirical expansion constants at scale eps.  Orbits start near critical
// values; while they avoid the eps-neighborhood, reciprocal derivatives are
// summed (largest sum = L*), and whenever a point lands in the doubled
// neighborhood the normalized derivative |Df^s(x)| D_c(eps) is a candidate
// for the expansion floor (smallest = Lambda).
inline ConstantsResult estimate_expansion_constants(const MapFamily& fam, double eps,
                                                    std::size_t sample_count, std::uint64_t seed,
                                                    bool param_jitter = true,
                                                    std::size_t step_cap = 10000) {
  if (!(eps > 0.0)) throw InvalidConfig("eps must be positive");
  Rng rng(seed);
  ConstantsResult res;
  double best_lambda = std::numeric_limits<double>::infinity();
  double best_lstar = -std::numeric_limits<double>::infinity();

  const double t0 = fam.base();
  const double t_lo = std::max(fam.t_min(), t0 - eps);
  const double t_hi = std::min(fam.t_max(), t0 + eps);

  for (std::size_t s = 0; s < sample_count; ++s) {
    const double t = param_jitter ? rng.uniform(t_lo, t_hi) : t0;
    const auto crit = fam.critical_points(t);
    if (crit.empty()) continue;
    const EpsGeometry g(eps, crit), g2(2.0 * eps, crit);
    for (double r : g2.radius)
      if (r >= 0.25) res.degenerate = true;

    const std::size_t cidx = crit.size() == 1 ? 0 : rng.below(crit.size());
    const double cv = clamp01(fam.jet(crit[cidx].position, t).f);
    const double x =
        rng.uniform(std::max(0.0, cv - 4.0 * eps), std::min(1.0, cv + 4.0 * eps));

    double y = x;
    SignedLogReal D = SignedLogReal::one();
    double sum_inv = 0.0;
    for (std::size_t j = 0; j <= step_cap; ++j) {
      if (D.is_zero()) break;  // landed exactly on a critical point: degenerate segment
      sum_inv += D.inv_magnitude();
      if (j >= 1 && g2.in_neighborhood(y)) {
        const int near = g2.nearest(y);
        const double cand = std::exp(D.logmag + std::log(g.dc(static_cast<std::size_t>(near))));
        ++res.lambda_candidates;
        if (cand < best_lambda) {
          best_lambda = cand;
          res.lambda_witness_x = x;
          res.lambda_witness_t = t;
          res.lambda_witness_s = j;
        }
      }
      if (g.in_neighborhood(y) || j == step_cap) {
        ++res.segments;
        if (sum_inv > best_lstar) {
          best_lstar = sum_inv;
          res.lstar_witness_x = x;
          res.lstar_witness_t = t;
          res.lstar_witness_n = j;
        }
        break;
      }
      const Jet jt = fam.jet(y, t);
      D = D * SignedLogReal::from_linear(jt.dfx);
      y = clamp01(jt.f);
    }
  }
  if (res.segments == 0 && res.lambda_candidates == 0)
    throw NoSegmentsFound("no qualifying orbit segments near the critical values");
  if (res.lambda_candidates > 0) res.lambda_hat = best_lambda;
  if (res.segments > 0) res.l_star_hat = best_lstar;
  return res;
}

struct EpsSummary {
  double eps = 0.0;
  std::size_t rows = 0;
  double fraction_pass = 0.0;
  double fraction_undetermined = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> exit_counts;  // (budget order, rows)
  double lambda_hat = std::numeric_limits<double>::quiet_NaN();
  bool lambda_ok = false;  // log lambda_hat >= ell_max * C
  bool constants_degenerate = false;
  bool one_sided = false;
};

struct SweepResult {
  std::vector<VerdictRow> rows;
  std::vector<EpsSummary> summaries;
};

// Stratified sweep: the (clipped) window around `center` is split into `grid`
// cells, one seeded uniform draw per cell.  Rows are computed independently
// per cell, so worker count never changes the output.
inline SweepResult density_sweep(const MapFamily& fam, double center,
                                 const std::vector<double>& eps_list, std::size_t grid,
                                 const ClassifyConfig& cfg) {
  cfg.validate();
  if (grid < 2) throw InvalidConfig("grid must be at least 2");
  if (eps_list.empty()) throw InvalidConfig("need at least one eps");

  SweepResult res;
  for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
    const double eps = eps_list[ei];
    if (!(eps > 0.0)) throw InvalidConfig("eps must be positive");
    const double lo = std::max(center - eps, fam.t_min());
    const double hi = std::min(center + eps, fam.t_max());
    if (!(lo < hi))
      throw ParameterOutOfDomain("sweep window does not intersect the parameter domain");

    std::vector<VerdictRow> rows(grid);
    const std::size_t workers = std::max<std::size_t>(1, cfg.threads);
    auto work = [&](std::size_t w) {
      for (std::size_t i = w; i < grid; i += workers) {
        Rng cell(Rng::derive(cfg.seed, (static_cast<std::uint64_t>(ei) << 32) | i));
        const double t = lo + (static_cast<double>(i) + cell.uniform()) * (hi - lo) /
                                  static_cast<double>(grid);
        rows[i] = classify_row(fam, t, eps, cfg);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }

    EpsSummary sum;
    sum.eps = eps;
    sum.rows = grid;
    sum.one_sided = (center - eps < fam.t_min()) || (center + eps > fam.t_max());
    std::map<std::size_t, std::size_t> exits;
    std::size_t n_pass = 0, n_undet = 0;
    for (const auto& r : rows) {
      if (r.pass()) ++n_pass;
      if (r.undetermined()) ++n_undet;
      if (r.x_st == Status::Fail && r.x_fail_k) ++exits[*r.x_fail_k];
    }
    sum.fraction_pass = static_cast<double>(n_pass) / static_cast<double>(grid);
    sum.fraction_undetermined = static_cast<double>(n_undet) / static_cast<double>(grid);
    for (const auto& [k, v] : exits) sum.exit_counts.emplace_back(k, v);
    try {
      const ConstantsResult cr = estimate_expansion_constants(
          fam, eps, cfg.const_samples, Rng::derive(cfg.seed, 0xE5717'000ULL + ei), true,
          cfg.n_max);
      sum.lambda_hat = cr.lambda_hat;
      sum.constants_degenerate = cr.degenerate;
      if (cr.lambda_hat > 0.0)
        sum.lambda_ok = std::log(cr.lambda_hat) >= fam.ell_max(center) * cfg.C;
    } catch (const NoSegmentsFound&) {
      sum.constants_degenerate = true;
    }

    res.summaries.push_back(std::move(sum));
    for (auto& r : rows) res.rows.push_back(r);
  }
  return res;
}

struct TotalDepthReport {
  bool x_boundary = false;  // t sits exactly at depth-budget order n
  std::size_t n = 0;
  double lhs = std::numeric_limits<double>::quiet_NaN();  // essential depth sum
  double rhs = std::numeric_limits<double>::quiet_NaN();  // (gamma C - C0) n
  bool part_i_holds = false;
  bool y_exit = false;  // t leaves the slow-recurrence chain at step m
  std::size_t m = 0;
  double p_at_exit = std::numeric_limits<double>::quiet_NaN();
  double rhs_exit = std::numeric_limits<double>::quiet_NaN();  // gamma tau log(m+1)
  bool part_ii_holds = false;
  bool exit_return_found = false;
};

// Diagnostic (never asserted): at a depth-budget exit of order n the
// essential returns should carry total depth >= (gamma C - C0) n, and at a
// slow-recurrence exit at step m the return at time m should carry
// p >= gamma tau log(m+1).  n = 0 autodetects the boundary order.
inline TotalDepthReport totaldepth_diagnostic(const MapFamily& fam, double t, double eps,
                                              const ClassifyConfig& cfg, std::size_t n = 0) {
  TotalDepthReport rep;
  const std::size_t n_crit = fam.critical_points(t).size();
  std::optional<std::size_t> exit_k, exit_crit;
  std::vector<OrbitData> orbits;
  std::vector<std::vector<ReturnRecord>> records;
  for (std::size_t ci = 0; ci < n_crit; ++ci) {
    orbits.push_back(critical_orbit(fam, t, ci, cfg.n_max));
    const EpsGeometry g(eps, orbits.back().crit);
    records.push_back(return_sequence(orbits.back(), g, 0));
    double sum = 0.0;
    for (const auto& r : records.back()) {
      sum += r.d == kDepthInf ? std::numeric_limits<double>::infinity()
                              : static_cast<double>(r.d);
      if (sum > cfg.C * static_cast<double>(r.ordinal)) {
        if (!exit_k || r.ordinal < *exit_k) {
          exit_k = r.ordinal;
          exit_crit = ci;
        }
        break;
      }
    }
  }

  if (exit_k && (n == 0 || n == *exit_k)) {
    rep.x_boundary = true;
    rep.n = *exit_k;
    auto& recs = records[*exit_crit];
    essential_returns(recs);
    rep.lhs = essential_depth_sum(recs, cfg.C0, rep.n);
    rep.rhs = (cfg.gamma * cfg.C - cfg.C0) * static_cast<double>(rep.n);
    rep.part_i_holds = rep.lhs >= rep.rhs;
    return rep;
  }
  if (n != 0) throw NotInBoundaryClass("parameter does not exit the depth budget at order n");

  // Slow-recurrence exit.
  YMembership y = y_membership(fam, t, eps, cfg.C, cfg.tau, cfg.n_max, cfg.n_max);
  if (!y.fail_m) throw NotInBoundaryClass("parameter exits neither membership chain");
  rep.y_exit = true;
  rep.m = *y.fail_m;
  rep.rhs_exit = cfg.gamma * cfg.tau * std::log(static_cast<double>(rep.m + 1));
  for (const auto& r : records[*y.fail_source]) {
    if (r.S == rep.m) {
      rep.exit_return_found = true;
      rep.p_at_exit = r.p;
      rep.part_ii_holds = r.p >= rep.rhs_exit;
      break;
    }
    if (r.S == kSInf || r.S > rep.m) break;
  }
  return rep;
}

struct ChainCheck {
  std::size_t ordinal;
  std::size_t S;
  double lhs_log;  // log |D_{S+1}|
  double rhs_log;  // m log Lambda - ell_max * depth sum
  bool holds;
};

// Expansion chain along return times: after the j-th return the derivative
// |Df^{S_j+1}(f(c))| should dominate Lambda^j e^{-ell_max sum of depths}.
inline std::vector<ChainCheck> expansion_chain_diagnostic(const OrbitData& od,
                                                          const std::vector<ReturnRecord>& records,
                                                          int ell_max, double lambda_hat) {
  std::vector<ChainCheck> out;
  if (!(lambda_hat > 0.0)) return out;
  const double logL = std::log(lambda_hat);
  double depth_sum = 0.0;
  std::size_t m = 0;
  for (const auto& r : records) {
    if (r.S == kSInf) break;
    ++m;
    depth_sum += r.d == kDepthInf ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(r.d);
    if (r.S + 1 > od.length()) break;
    ChainCheck c;
    c.ordinal = r.ordinal;
    c.S = r.S;
    c.lhs_log = od.cum_deriv[r.S + 1].logmag;
    c.rhs_log = static_cast<double>(m) * logL - static_cast<double>(ell_max) * depth_sum;
    c.holds = c.lhs_log >= c.rhs_log;
    out.push_back(c);
  }
  return out;
}

}  // namespace cedyn
