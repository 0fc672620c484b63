// Batch driver: every library operation behind one binary with CSV/JSON
// output suitable for scripting.  Usage errors exit 1, runtime failures 2.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cedyn/balls.hpp"
#include "cedyn/boxes.hpp"
#include "cedyn/classify.hpp"
#include "cedyn/errors.hpp"
#include "cedyn/family.hpp"
#include "cedyn/io.hpp"
#include "cedyn/orbit.hpp"
#include "cedyn/returns.hpp"
#include "cedyn/rng.hpp"

namespace {

using nlohmann::json;

const char* status_name(cedyn::Status s) {
  switch (s) {
    case cedyn::Status::Pass: return "pass";
    case cedyn::Status::Fail: return "fail";
    default: return "undetermined";
  }
}

json size_or_inf(std::size_t v) {
  if (v == cedyn::kSInf) return "inf";
  return v;
}

void add_config_flags(CLI::App* cmd, cedyn::ClassifyConfig& cfg) {
  cmd->add_option("--C", cfg.C, "depth budget slope");
  cmd->add_option("--C0", cfg.C0, "essential depth cutoff");
  cmd->add_option("--tau", cfg.tau, "recurrence decay exponent");
  cmd->add_option("--tau0", cfg.tau0, "secondary decay exponent");
  cmd->add_option("--gamma", cfg.gamma, "budget share parameter");
  cmd->add_option("--kappa", cfg.kappa, "measure-bound split parameter");
  cmd->add_option("--lambda-ce", cfg.lambda_ce, "required exponential growth rate");
  cmd->add_option("--theta", cfg.theta, "box radius scale");
  cmd->add_option("--theta0", cfg.theta0, "binding window scale");
  cmd->add_option("--n-min", cfg.n_min, "first step the growth rate is checked at");
  cmd->add_option("--n-max", cfg.n_max, "orbit length");
  cmd->add_option("--n-nv", cfg.n_nv, "transversality truncation");
  cmd->add_option("--const-samples", cfg.const_samples, "samples for expansion constants");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--threads", cfg.threads, "worker threads (output is thread-count invariant)");
}

cedyn::MapFamily load_family(const std::string& spec) {
  if (spec == "logistic") return cedyn::make_logistic();
  return cedyn::load_family_json(spec);
}

struct OrbitArgs {
  std::string family, out = "orbit.csv";
  double t = 0.0;
  std::size_t crit = 0, n = 1000;
};

struct ReturnsArgs {
  std::string family, out = "returns.csv";
  double t = 0.0, eps = 1e-3, theta0 = 0.1;
  std::size_t crit = 0, n = 10000, max_returns = 0;
};

struct ClassifyArgs {
  std::string family, out = "classify.json";
  double t = 0.0, eps = 1e-3, lambda_hat = 0.0;
  bool totaldepth = false;
};

struct SweepArgs {
  std::string family, out_rows = "rows.csv", out_summary = "summary.csv";
  double center = 0.0;
  std::vector<double> eps;
  std::size_t grid = 500;
};

struct BallsVerifyArgs {
  std::string in, out = "ball_report.json";
  std::int64_t N = 10;
  double kappa = 0.5;
};

struct BallsRandomArgs {
  std::string out = "ball_family.json";
  std::uint64_t seed = 0;
  std::size_t count = 10, height_cap = 4;
  double scale = 1.0;
};

struct BallsDeepArgs {
  std::string in, out = "intervals.csv";
  std::int64_t N = 10;
};

struct BoxesArgs {
  std::string family, range, out = "boxes.json";
  double eps = 1e-3, lambda = 1.5, theta = 0.01;
  std::size_t crit = 0, m_max = 3, n_cap = 10;
};

struct ConstantsArgs {
  std::string family, out = "constants.json";
  double eps = 1e-3;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  bool no_jitter = false;
};

void run_orbit(const OrbitArgs& a) {
  const cedyn::MapFamily fam = load_family(a.family);
  const cedyn::OrbitData od = cedyn::critical_orbit(fam, a.t, a.crit, a.n);
  cedyn::write_orbit_csv(a.out, fam, od);
  std::cout << "orbit: " << od.points.size() << " points"
            << (od.escaped ? " (escaped)" : "") << " -> " << a.out << "\n";
}

void run_returns(const ReturnsArgs& a) {
  const cedyn::MapFamily fam = load_family(a.family);
  const cedyn::OrbitData od = cedyn::critical_orbit(fam, a.t, a.crit, a.n);
  const cedyn::EpsGeometry g(a.eps, od.crit);
  auto records = cedyn::return_sequence(od, g, a.max_returns);
  cedyn::essential_returns(records);
  cedyn::free_returns(records, od, g, a.theta0);
  cedyn::write_returns_csv(a.out, records);
  std::cout << "returns: " << records.size() << " records -> " << a.out << "\n";
}

void run_classify(const ClassifyArgs& a, const cedyn::ClassifyConfig& cfg) {
  cfg.validate();
  const cedyn::MapFamily fam = load_family(a.family);
  const cedyn::VerdictRow row = cedyn::classify_row(fam, a.t, a.eps, cfg);
  json out{{"t", row.t},
           {"eps", row.eps},
           {"x", status_name(row.x_st)},
           {"x_pass_n", size_or_inf(row.x_pass_n)},
           {"y", status_name(row.y_st)},
           {"y_pass_m", size_or_inf(row.y_pass_m)},
           {"ce", status_name(row.ce_st)},
           {"ce_rate", row.ce_rate},
           {"nv", status_name(row.nv_st)},
           {"nv_nonzero", row.nv_nonzero},
           {"pr_best_C", row.pr_best_C},
           {"overall", status_name(row.overall())}};
  if (a.totaldepth) {
    try {
      const cedyn::TotalDepthReport rep = cedyn::totaldepth_diagnostic(fam, a.t, a.eps, cfg);
      json d;
      if (rep.x_boundary) {
        d = {{"kind", "depth_budget_exit"}, {"n", rep.n},           {"lhs", rep.lhs},
             {"rhs", rep.rhs},              {"holds", rep.part_i_holds}};
      } else {
        d = {{"kind", "recurrence_exit"},
             {"m", rep.m},
             {"p_at_exit", rep.p_at_exit},
             {"rhs", rep.rhs_exit},
             {"holds", rep.part_ii_holds},
             {"exit_return_found", rep.exit_return_found}};
      }
      out["totaldepth"] = d;
    } catch (const cedyn::NotInBoundaryClass& e) {
      out["totaldepth"] = {{"kind", "not_on_boundary"}, {"detail", e.what()}};
    }
  }
  if (a.lambda_hat > 0.0) {
    json chains = json::array();
    const auto crit = fam.critical_points(a.t);
    for (std::size_t ci = 0; ci < crit.size(); ++ci) {
      const cedyn::OrbitData od = cedyn::critical_orbit(fam, a.t, ci, cfg.n_max);
      const cedyn::EpsGeometry g(a.eps, od.crit);
      const auto records = cedyn::return_sequence(od, g, 0);
      const auto checks = cedyn::expansion_chain_diagnostic(
          od, records, fam.ell_max(a.t), a.lambda_hat);
      json arr = json::array();
      for (const auto& c : checks)
        arr.push_back({{"ordinal", c.ordinal},
                       {"S", c.S},
                       {"lhs_log", c.lhs_log},
                       {"rhs_log", c.rhs_log},
                       {"holds", c.holds}});
      chains.push_back({{"crit", ci}, {"checks", arr}});
    }
    out["expansion_chain"] = chains;
  }
  cedyn::write_atomic(a.out, out.dump(2) + "\n");
  std::cout << "classify: " << status_name(row.overall()) << " -> " << a.out << "\n";
}

void run_sweep(const SweepArgs& a, const cedyn::ClassifyConfig& cfg) {
  const cedyn::MapFamily fam = load_family(a.family);
  const cedyn::SweepResult res = cedyn::density_sweep(fam, a.center, a.eps, a.grid, cfg);
  cedyn::write_rows_csv(a.out_rows, res.rows);
  cedyn::write_summary_csv(a.out_summary, res.summaries);
  for (const auto& s : res.summaries)
    std::cout << "eps=" << cedyn::fmt(s.eps) << " pass=" << cedyn::fmt(s.fraction_pass)
              << " undetermined=" << cedyn::fmt(s.fraction_undetermined) << "\n";
  std::cout << "sweep: " << res.rows.size() << " rows -> " << a.out_rows << ", "
            << a.out_summary << "\n";
}

void run_balls_verify(const BallsVerifyArgs& a) {
  const std::vector<cedyn::Ball> fam = cedyn::load_ball_family_json(a.in);
  const cedyn::SpecialResult sr = cedyn::is_special(fam);
  json out{{"count", fam.size()}, {"special", sr.special}};
  if (!sr.special) {
    out["violation"] = {sr.violation->first, sr.violation->second};
    std::cout << "balls verify: not special -> " << a.out << "\n";
  } else {
    const cedyn::Strata st = cedyn::strata(fam);
    out["height"] = st.height();
    json levels = json::array();
    for (const auto& lvl : st.levels) levels.push_back(lvl.size());
    out["level_sizes"] = levels;
    const cedyn::LemmaBoundResult lb = cedyn::lemma_bound_check(fam, a.N, a.kappa);
    out["N"] = a.N;
    out["kappa"] = a.kappa;
    out["measure"] = lb.measure;
    out["bound"] = lb.bound;
    out["pass"] = lb.pass;
    out["K"] = lb.K;
    std::cout << "balls verify: special, measure=" << cedyn::fmt(lb.measure)
              << " bound=" << cedyn::fmt(lb.bound) << " pass=" << (lb.pass ? 1 : 0) << " -> "
              << a.out << "\n";
  }
  cedyn::write_atomic(a.out, out.dump(2) + "\n");
}

void run_balls_random(const BallsRandomArgs& a) {
  const auto fam = cedyn::random_special_family(a.seed, a.count, a.height_cap, a.scale);
  cedyn::write_ball_family_json(a.out, fam);
  std::cout << "balls random: " << fam.size() << " balls -> " << a.out << "\n";
}

void run_balls_deepset(const BallsDeepArgs& a) {
  const std::vector<cedyn::Ball> fam = cedyn::load_ball_family_json(a.in);
  const cedyn::DeepSetResult ds = cedyn::deep_set(fam, a.N);
  std::ostringstream ss;
  ss << "left,right\n";
  for (const auto& iv : ds.set.intervals)
    ss << cedyn::fmt(iv.first) << ',' << cedyn::fmt(iv.second) << '\n';
  cedyn::write_atomic(a.out, ss.str());
  std::cout << "balls deepset: " << ds.set.intervals.size()
            << " intervals, measure=" << cedyn::fmt(ds.set.total_measure)
            << (ds.depth_infinite ? " (center hit)" : "") << " -> " << a.out << "\n";
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == s.size())
    throw CLI::ValidationError("--range", "expected lo:hi");
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--range", "expected lo:hi with numeric bounds");
  }
}

void run_boxes(const BoxesArgs& a) {
  const cedyn::MapFamily fam = load_family(a.family);
  const auto [t_lo, t_hi] = parse_range(a.range);
  const auto boxes =
      cedyn::box_family(fam, t_lo, t_hi, a.crit, a.m_max, a.n_cap, a.eps, a.lambda, a.theta);
  cedyn::BallFamily as_balls;
  for (const auto& vb : boxes)
    if (!vb.box.clipped && vb.box.radius > 0.0)
      as_balls.push_back({vb.box.center, vb.box.radius});
  json report{{"checked", as_balls.size()}};
  const cedyn::SpecialResult sr = cedyn::is_special(as_balls);
  report["special"] = sr.special;
  if (sr.special) {
    report["height"] = cedyn::strata(as_balls).height();
  } else {
    report["violation"] = {sr.violation->first, sr.violation->second};
  }
  cedyn::write_boxes_json(a.out, boxes, report);
  std::cout << "boxes: " << boxes.size() << " boxes, "
            << (sr.special ? "special as a ball family" : "NOT special as a ball family")
            << " -> " << a.out << "\n";
}

void run_constants(const ConstantsArgs& a) {
  const cedyn::MapFamily fam = load_family(a.family);
  const cedyn::ConstantsResult r =
      cedyn::estimate_expansion_constants(fam, a.eps, a.samples, a.seed, !a.no_jitter);
  json out{{"eps", a.eps},
           {"lambda_hat", r.lambda_hat},
           {"l_star_hat", r.l_star_hat},
           {"lambda_witness", {{"x", r.lambda_witness_x}, {"t", r.lambda_witness_t},
                               {"s", r.lambda_witness_s}}},
           {"lstar_witness", {{"x", r.lstar_witness_x}, {"t", r.lstar_witness_t},
                              {"n", r.lstar_witness_n}}},
           {"lambda_candidates", r.lambda_candidates},
           {"segments", r.segments},
           {"degenerate", r.degenerate}};
  cedyn::write_atomic(a.out, out.dump(2) + "\n");
  std::cout << "constants: lambda_hat=" << cedyn::fmt(r.lambda_hat)
            << " l_star_hat=" << cedyn::fmt(r.l_star_hat) << " -> " << a.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical-orbit statistics and parameter classification"};
  app.require_subcommand(1);

  cedyn::ClassifyConfig cfg;

  OrbitArgs orbit_a;
  auto* orbit_cmd = app.add_subcommand("orbit", "iterate a critical orbit and dump statistics");
  orbit_cmd->add_option("--family", orbit_a.family, "family JSON")->required();
  orbit_cmd->add_option("--t", orbit_a.t, "parameter")->required();
  orbit_cmd->add_option("--crit", orbit_a.crit, "critical point index");
  orbit_cmd->add_option("--n", orbit_a.n, "orbit length");
  orbit_cmd->add_option("--out", orbit_a.out, "output CSV");

  ReturnsArgs ret_a;
  auto* ret_cmd = app.add_subcommand("returns", "return times, depths, and return classes");
  ret_cmd->add_option("--family", ret_a.family, "family JSON")->required();
  ret_cmd->add_option("--t", ret_a.t, "parameter")->required();
  ret_cmd->add_option("--crit", ret_a.crit, "critical point index");
  ret_cmd->add_option("--eps", ret_a.eps, "neighborhood scale")->required();
  ret_cmd->add_option("--n", ret_a.n, "orbit length");
  ret_cmd->add_option("--max-returns", ret_a.max_returns, "pad/truncate to this many records");
  ret_cmd->add_option("--theta0", ret_a.theta0, "binding window scale");
  ret_cmd->add_option("--out", ret_a.out, "output CSV");

  ClassifyArgs cls_a;
  auto* cls_cmd = app.add_subcommand("classify", "full verdict for one parameter");
  cls_cmd->add_option("--family", cls_a.family, "family JSON")->required();
  cls_cmd->add_option("--t", cls_a.t, "parameter")->required();
  cls_cmd->add_option("--eps", cls_a.eps, "neighborhood scale")->required();
  cls_cmd->add_flag("--totaldepth", cls_a.totaldepth, "attach the boundary-class diagnostic");
  cls_cmd->add_option("--lambda-hat", cls_a.lambda_hat,
                      "attach the expansion-chain diagnostic using this constant");
  cls_cmd->add_option("--out", cls_a.out, "output JSON");
  add_config_flags(cls_cmd, cfg);

  SweepArgs sweep_a;
  auto* sweep_cmd = app.add_subcommand("sweep", "stratified density sweep over a window");
  sweep_cmd->add_option("--family", sweep_a.family, "family JSON")->required();
  sweep_cmd->add_option("--center", sweep_a.center, "window center")->required();
  sweep_cmd->add_option("--eps", sweep_a.eps, "neighborhood scales")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--grid", sweep_a.grid, "cells per window");
  sweep_cmd->add_option("--out", sweep_a.out_rows, "per-parameter CSV");
  sweep_cmd->add_option("--summary", sweep_a.out_summary, "per-eps CSV");
  add_config_flags(sweep_cmd, cfg);

  auto* balls_cmd = app.add_subcommand("balls", "special families of balls");
  balls_cmd->require_subcommand(1);
  BallsVerifyArgs bv_a;
  auto* bv_cmd = balls_cmd->add_subcommand("verify", "nesting conditions and the measure bound");
  bv_cmd->add_option("--in", bv_a.in, "ball family JSON")->required();
  bv_cmd->add_option("--N", bv_a.N, "total depth threshold");
  bv_cmd->add_option("--kappa", bv_a.kappa, "split parameter");
  bv_cmd->add_option("--out", bv_a.out, "output JSON");
  BallsRandomArgs br_a;
  auto* br_cmd = balls_cmd->add_subcommand("random", "generate a random special family");
  br_cmd->add_option("--seed", br_a.seed, "RNG seed");
  br_cmd->add_option("--count", br_a.count, "number of balls");
  br_cmd->add_option("--height,--height-cap", br_a.height_cap, "maximum nesting height");
  br_cmd->add_option("--scale", br_a.scale, "root radius scale");
  br_cmd->add_option("--out", br_a.out, "output JSON");
  BallsDeepArgs bd_a;
  auto* bd_cmd = balls_cmd->add_subcommand("deepset", "exact deep-set intervals");
  bd_cmd->add_option("--in", bd_a.in, "ball family JSON")->required();
  bd_cmd->add_option("--N", bd_a.N, "total depth threshold");
  bd_cmd->add_option("--out", bd_a.out, "output CSV");

  BoxesArgs box_a;
  auto* box_cmd = app.add_subcommand("boxes", "verified parameter boxes");
  box_cmd->require_subcommand(1);
  auto* bf_cmd = box_cmd->add_subcommand("find", "locate pre-critical parameters and grow boxes");
  bf_cmd->add_option("--family", box_a.family, "family JSON")->required();
  bf_cmd->add_option("--range", box_a.range, "parameter window lo:hi")->required();
  bf_cmd->add_option("--crit", box_a.crit, "source critical point index");
  bf_cmd->add_option("--m-max", box_a.m_max, "largest pre-critical order");
  bf_cmd->add_option("--n-cap", box_a.n_cap, "return budget per box");
  bf_cmd->add_option("--eps", box_a.eps, "neighborhood scale");
  bf_cmd->add_option("--lambda", box_a.lambda, "comparability factor");
  bf_cmd->add_option("--theta", box_a.theta, "radius scale");
  bf_cmd->add_option("--out", box_a.out, "output JSON");

  ConstantsArgs con_a;
  auto* con_cmd = app.add_subcommand("constants", "empirical expansion constants");
  con_cmd->add_option("--family", con_a.family, "family JSON")->required();
  con_cmd->add_option("--eps", con_a.eps, "neighborhood scale")->required();
  con_cmd->add_option("--samples", con_a.samples, "orbit samples");
  con_cmd->add_option("--seed", con_a.seed, "RNG seed");
  con_cmd->add_flag("--no-param-jitter", con_a.no_jitter, "hold t at the family base");
  con_cmd->add_option("--out", con_a.out, "output JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (orbit_cmd->parsed()) run_orbit(orbit_a);
    if (ret_cmd->parsed()) run_returns(ret_a);
    if (cls_cmd->parsed()) run_classify(cls_a, cfg);
    if (sweep_cmd->parsed()) run_sweep(sweep_a, cfg);
    if (bv_cmd->parsed()) run_balls_verify(bv_a);
    if (br_cmd->parsed()) run_balls_random(br_a);
    if (bd_cmd->parsed()) run_balls_deepset(bd_a);
    if (bf_cmd->parsed()) run_boxes(box_a);
    if (con_cmd->parsed()) run_constants(con_a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
