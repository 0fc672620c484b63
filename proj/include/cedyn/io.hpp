#pragma once

// Serialization: CSV/JSON writers for orbit, return, sweep, ball, and box
// data, plus JSON loaders for family and ball-family descriptions.  All
// writes go through a temp file and a rename so readers never see partial
// output, and floating-point fields round-trip exactly.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "balls.hpp"
#include "boxes.hpp"
#include "classify.hpp"
#include "defs.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "orbit.hpp"
#include "returns.hpp"

namespace cedyn {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt(std::size_t v) {
  return v == kSInf ? std::string("inf") : std::to_string(v);
}

inline std::string fmt_depth(std::int64_t d) {
  return d == kDepthInf ? std::string("inf") : std::to_string(d);
}

inline void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidConfig("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw InvalidConfig("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

inline void write_orbit_csv(const std::string& path, const MapFamily& fam, const OrbitData& od) {
  std::ostringstream ss;
  ss << "n,x,sign_D,log_D,crit_dist,partial_W,M_n\n";
  double w = 0.0;
  double m_acc = 0.0;
  bool m_dead = false;
  for (std::size_t n = 0; n < od.points.size(); ++n) {
    const SignedLogReal& D = od.cum_deriv[n];
    w += D.inv_magnitude();
    if (n == 0) {
      m_acc = fam.jet(od.crit_position, od.t).dft;
    } else if (!m_dead) {
      if (D.is_zero()) {
        m_dead = true;
      } else {
        const double dft = fam.jet(od.points[n - 1], od.t).dft;
        if (dft != 0.0)
          m_acc +=
              (dft > 0.0 ? 1.0 : -1.0) * D.sign * std::exp(std::log(std::fabs(dft)) - D.logmag);
      }
    }
    ss << n << ',' << fmt(od.points[n]) << ',' << D.sign << ',' << fmt(D.logmag) << ','
       << fmt(od.crit_dist[n]) << ',' << fmt(w) << ','
       << (m_dead ? "nan" : fmt(m_acc)) << '\n';
  }
  write_atomic(path, ss.str());
}

inline void write_returns_csv(const std::string& path, const std::vector<ReturnRecord>& records) {
  std::ostringstream ss;
  ss << "ordinal,S,nearest,d,log_P,p,p_tilde,essential,free\n";
  for (const auto& r : records) {
    ss << r.ordinal << ',' << fmt(r.S) << ',' << r.nearest << ',' << fmt_depth(r.d) << ','
       << fmt(r.log_P) << ',' << fmt(r.p) << ',' << fmt(r.p_tilde) << ','
       << (r.essential ? 1 : 0) << ',' << (r.free ? 1 : 0) << '\n';
  }
  write_atomic(path, ss.str());
}

inline void write_rows_csv(const std::string& path, const std::vector<VerdictRow>& rows) {
  std::ostringstream ss;
  ss << "eps,t,x_pass_n,y_pass_m,ce_rate,ce_verdict,pr_best_C,nv_nonzero,undetermined\n";
  for (const auto& r : rows) {
    ss << fmt(r.eps) << ',' << fmt(r.t) << ',' << fmt(r.x_pass_n) << ',' << fmt(r.y_pass_m)
       << ',' << fmt(r.ce_rate) << ',' << (r.ce_pass ? 1 : 0) << ',' << fmt(r.pr_best_C) << ','
       << (r.nv_nonzero ? 1 : 0) << ',' << (r.undetermined() ? 1 : 0) << '\n';
  }
  write_atomic(path, ss.str());
}

inline std::string pack_exit_counts(const std::vector<std::pair<std::size_t, std::size_t>>& ec) {
  std::string s;
  for (std::size_t i = 0; i < ec.size(); ++i) {
    if (i) s += '|';
    s += std::to_string(ec[i].first) + ':' + std::to_string(ec[i].second);
  }
  return s;
}

inline void write_summary_csv(const std::string& path, const std::vector<EpsSummary>& summaries) {
  std::ostringstream ss;
  ss << "eps,rows,fraction_pass,fraction_undetermined,lambda_hat,lambda_ge_exp_lmaxC,"
        "constants_degenerate,one_sided,exit_counts\n";
  for (const auto& s : summaries) {
    ss << fmt(s.eps) << ',' << s.rows << ',' << fmt(s.fraction_pass) << ','
       << fmt(s.fraction_undetermined) << ',' << fmt(s.lambda_hat) << ','
       << (s.lambda_ok ? 1 : 0) << ',' << (s.constants_degenerate ? 1 : 0) << ','
       << (s.one_sided ? 1 : 0) << ',' << pack_exit_counts(s.exit_counts) << '\n';
  }
  write_atomic(path, ss.str());
}

inline MapFamily load_family_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open family file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("bad family JSON in " + path + ": " + e.what());
  }
  const std::string kind = j.value("kind", "");
  MapFamily fam = [&]() {
    if (kind == "logistic") return make_logistic();
    if (kind == "poly") {
      if (!j.contains("coeffs")) throw InvalidConfig("poly family needs coeffs");
      const std::vector<double> coeffs = j["coeffs"].get<std::vector<double>>();
      const std::vector<double> direction =
          j.value("direction", std::vector<double>{});
      const double half_width = j.value("half_width", 0.01);
      const double base = j.value("base", 0.0);
      return make_poly_family(coeffs, direction, half_width, base);
    }
    throw InvalidConfig("unknown family kind '" + kind + "'");
  }();
  if (j.contains("rescale")) fam = rescale_parameter(fam, j["rescale"].get<double>());
  return fam;
}

inline std::vector<Ball> load_ball_family_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open ball family file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("bad ball family JSON in " + path + ": " + e.what());
  }
  const nlohmann::json& arr = j.is_array() ? j : j.at("balls");
  std::vector<Ball> out;
  for (const auto& b : arr) {
    Ball ball{b.at("center").get<double>(), b.at("radius").get<double>()};
    if (!(ball.radius > 0.0)) throw InvalidConfig("ball radius must be positive");
    out.push_back(ball);
  }
  return out;
}

inline void write_ball_family_json(const std::string& path, const std::vector<Ball>& balls) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : balls) arr.push_back({{"center", b.center}, {"radius", b.radius}});
  write_atomic(path, nlohmann::json{{"balls", arr}}.dump(2) + "\n");
}

inline void write_boxes_json(const std::string& path, const std::vector<VerifiedBox>& boxes,
                             const nlohmann::json& special_report = nlohmann::json()) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& vb : boxes) {
    arr.push_back({{"center", vb.box.center},
                   {"radius", vb.box.radius},
                   {"order", vb.box.order},
                   {"crit", vb.box.crit_index},
                   {"lambda", vb.box.lambda},
                   {"clipped", vb.box.clipped},
                   {"min_return_count", vb.min_return_count},
                   {"verified",
                    {{"pass", vb.verification.pass},
                     {"monotone", vb.verification.monotone},
                     {"degenerate", vb.verification.degenerate},
                     {"worst_xi_ratio", vb.verification.worst_xi_ratio},
                     {"worst_deriv_ratio", vb.verification.worst_deriv_ratio},
                     {"m_abs_min", vb.verification.m_abs_min},
                     {"m_abs_max", vb.verification.m_abs_max}}}});
  }
  nlohmann::json out{{"boxes", arr}};
  if (!special_report.is_null()) out["ball_family_check"] = special_report;
  write_atomic(path, out.dump(2) + "\n");
}

}  // namespace cedyn
