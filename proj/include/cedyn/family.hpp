#pragma once

// One-parameter families of interval self-maps of [0,1] with interior
// critical points.  A family exposes jet evaluation (value, two x-derivatives,
// parameter derivative) and its critical set per parameter; everything
// downstream works through that interface.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace cedyn {

inline constexpr double kBoundaryTol = 1e-12;   // slack outside [0,1] before escape
inline constexpr double kRootTol = 1e-14;       // bisection width for root isolation
inline constexpr double kMultiplicityTol = 1e-9;

struct Jet {
  double f;     // F(x,t)
  double dfx;   // dF/dx
  double dfxx;  // d2F/dx2
  double dft;   // dF/dt
};

struct CriticalPoint {
  double position;  // in (0,1)
  int order;        // local degree ell(c) >= 2
};

inline double clamp01(double x) {
  if (x < 0.0) {
    if (x < -kBoundaryTol) throw EvaluationEscaped("point left [0,1]");
    return 0.0;
  }
  if (x > 1.0) {
    if (x > 1.0 + kBoundaryTol) throw EvaluationEscaped("point left [0,1]");
    return 1.0;
  }
  return x;
}

class MapFamily {
 public:
  using JetFn = std::function<Jet(double, double)>;
  using CritFn = std::function<std::vector<CriticalPoint>(double)>;

  MapFamily(std::string name, JetFn jet_fn, CritFn crit_fn, double t_min, double t_max,
            double base, double dt_sup)
      : name_(std::move(name)),
        jet_fn_(std::move(jet_fn)),
        crit_fn_(std::move(crit_fn)),
        t_min_(t_min),
        t_max_(t_max),
        base_(base),
        dt_sup_(dt_sup) {}

  // Jet at (x, t).  x slightly outside [0,1] is pulled back to the boundary;
  // beyond the tolerance raises EvaluationEscaped, t outside the configured
  // window raises ParameterOutOfDomain.
  Jet jet(double x, double t) const {
    if (t < t_min_ || t > t_max_)
      throw ParameterOutOfDomain("parameter " + std::to_string(t) + " outside [" +
                                 std::to_string(t_min_) + ", " + std::to_string(t_max_) + "]");
    return jet_fn_(clamp01(x), t);
  }

  std::vector<CriticalPoint> critical_points(double t) const { return crit_fn_(t); }

  int ell_max(double t) const {
    int m = 2;
    for (const auto& c : crit_fn_(t)) m = std::max(m, c.order);
    return m;
  }
  int ell_min(double t) const {
    const auto crit = crit_fn_(t);
    if (crit.empty()) return 2;
    int m = crit.front().order;
    for (const auto& c : crit) m = std::min(m, c.order);
    return m;
  }

  const std::string& name() const { return name_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double base() const { return base_; }
  double dt_sup() const { return dt_sup_; }
  bool contains(double t) const { return t >= t_min_ && t <= t_max_; }

 private:
  std::string name_;
  JetFn jet_fn_;
  CritFn crit_fn_;
  double t_min_, t_max_, base_, dt_sup_;
};

inline double dist_to_critical(double x, const std::vector<CriticalPoint>& crit) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : crit) d = std::min(d, std::fabs(x - c.position));
  return d;
}

// a x (1 - x) on parameter window [0,4]; sup |dF/dt| = max x(1-x) = 1/4.
inline MapFamily make_logistic() {
  auto jet = [](double x, double a) -> Jet {
    return {a * x * (1.0 - x), a * (1.0 - 2.0 * x), -2.0 * a, x * (1.0 - x)};
  };
  auto crit = [](double) { return std::vector<CriticalPoint>{{0.5, 2}}; };
  return MapFamily("logistic", jet, crit, 0.0, 4.0, 4.0, 0.25);
}

struct NondegeneracyResult {
  bool nondegenerate;
  double discriminant;  // of P', 1 when deg P' <= 1
};

namespace detail {

// P_a(x) = sum_{i=1..n} a_i x^i + (1 - sum a_i) x^{n+1}; fixes 0 and 1.
inline poly::Coeffs pinned_poly(const std::vector<double>& a) {
  poly::Coeffs c(a.size() + 2, 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i + 1] = a[i];
    s += a[i];
  }
  c[a.size() + 1] = 1.0 - s;
  return c;
}

// Direction polynomial: moving coefficients along u keeps 0 and 1 fixed, so
// the top coefficient absorbs -sum u_i.
inline poly::Coeffs direction_poly(const std::vector<double>& u) {
  poly::Coeffs c(u.size() + 2, 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    c[i + 1] = u[i];
    s += u[i];
  }
  c[u.size() + 1] = -s;
  return c;
}

inline std::vector<CriticalPoint> poly_critical_points(const poly::Coeffs& p) {
  const poly::Coeffs dp = poly::derivative(p);
  std::vector<CriticalPoint> out;
  for (double r : poly::roots_by_bisection(dp, 0.0, 1.0, 2048, kRootTol)) {
    const auto j = poly::eval2(p, r);
    if (std::fabs(j.d2) < kMultiplicityTol)
      throw DegenerateCritical("critical point of order > 2 near x = " + std::to_string(r));
    out.push_back({r, 2});
  }
  // Sign-stable double roots of P' never show a sign change; they sit on
  // roots of P'' where P' also vanishes.
  for (double r : poly::roots_by_bisection(poly::derivative(dp), 0.0, 1.0, 2048, kRootTol)) {
    if (std::fabs(poly::eval(dp, r)) < kMultiplicityTol)
      throw DegenerateCritical("double critical point near x = " + std::to_string(r));
  }
  return out;
}

}  // namespace detail

inline NondegeneracyResult is_nondegenerate(const std::vector<double>& coeffs) {
  const poly::Coeffs dp = poly::derivative(detail::pinned_poly(coeffs));
  if (poly::degree(dp) <= 1) return {true, 1.0};
  const double disc = poly::discriminant(dp);
  double norm = 1.0;
  for (double c : dp) norm = std::max(norm, std::fabs(c));
  const double thr = 1e-12 * std::pow(norm, 2 * (poly::degree(dp) - 1));
  return {std::fabs(disc) > thr, disc};
}

// Family t -> P_{a + (t-base) u} restricted to [0,1].  The family is affine in
// t, so jets reduce to two fixed polynomial evaluations.  Construction
// validates, on sampled parameters, that the maps stay interval maps (1e4
// x-probes), that interior critical points are simple, and that their count
// does not change across the window.
inline MapFamily make_poly_family(const std::vector<double>& coeffs,
                                  std::vector<double> direction = {},
                                  double half_width = 0.01, double base = 0.0) {
  if (coeffs.empty()) throw InvalidConfig("poly family needs at least one coefficient");
  if (direction.empty()) {
    direction.assign(coeffs.size(), 0.0);
    direction[0] = 1.0;
  }
  if (direction.size() != coeffs.size())
    throw InvalidConfig("direction length must match coefficient length");
  if (half_width <= 0.0) throw InvalidConfig("parameter half-width must be positive");

  const poly::Coeffs p0 = detail::pinned_poly(coeffs);
  const poly::Coeffs dir = detail::direction_poly(direction);
  const poly::Coeffs dp0 = poly::derivative(p0);
  const poly::Coeffs ddir = poly::derivative(dir);
  const poly::Coeffs ddp0 = poly::derivative(dp0);
  const poly::Coeffs dddir = poly::derivative(ddir);

  auto poly_at = [p0, dir, base](double t) {
    poly::Coeffs c = p0;
    const double s = t - base;
    for (std::size_t i = 0; i < c.size() && i < dir.size(); ++i) c[i] += s * dir[i];
    return c;
  };

  // The base map must stay inside [0,1]; perturbed parameters may leave and
  // are caught dynamically when an orbit escapes.
  {
    const poly::Coeffs pb = poly_at(base);
    for (int i = 0; i <= 10000; ++i) {
      const double x = i / 10000.0;
      const double v = poly::eval(pb, x);
      if (v < -kBoundaryTol || v > 1.0 + kBoundaryTol)
        throw NotIntervalMap("image leaves [0,1] at x = " + std::to_string(x));
    }
  }

  // Interior critical points must be simple at every sampled parameter;
  // poly_critical_points raises DegenerateCritical otherwise.  Their count
  // may change across the window (one can slide in through a boundary).
  const double t_lo = base - half_width, t_hi = base + half_width;
  for (int k = 0; k <= 8; ++k) {
    const double t = t_lo + (t_hi - t_lo) * k / 8.0;
    (void)detail::poly_critical_points(poly_at(t));
  }

  double dt_sup = 0.0;
  for (int i = 0; i <= 10000; ++i) dt_sup = std::max(dt_sup, std::fabs(poly::eval(dir, i / 10000.0)));
  dt_sup *= 1.01;

  auto jet = [p0, dir, dp0, ddir, ddp0, dddir, base](double x, double t) -> Jet {
    const double s = t - base;
    return {poly::eval(p0, x) + s * poly::eval(dir, x),
            poly::eval(dp0, x) + s * poly::eval(ddir, x),
            poly::eval(ddp0, x) + s * poly::eval(dddir, x), poly::eval(dir, x)};
  };
  auto crit = [poly_at](double t) { return detail::poly_critical_points(poly_at(t)); };
  return MapFamily("poly", jet, crit, t_lo, t_hi, base, dt_sup);
}

// Reparametrize t -> base + kappa (t - base); shrinks the parameter
// derivative by kappa and stretches the window accordingly.
inline MapFamily rescale_parameter(const MapFamily& fam, double kappa) {
  if (!(kappa > 0.0)) throw InvalidConfig("kappa must be positive");
  const double b = fam.base();
  auto inner = [fam, b, kappa](double t) { return b + kappa * (t - b); };
  auto jet = [fam, inner, kappa](double x, double t) {
    Jet j = fam.jet(x, inner(t));
    j.dft *= kappa;
    return j;
  };
  auto crit = [fam, inner](double t) { return fam.critical_points(inner(t)); };
  const double lo = b + (fam.t_min() - b) / kappa;
  const double hi = b + (fam.t_max() - b) / kappa;
  return MapFamily(fam.name() + "/rescaled", jet, crit, lo, hi, b, kappa * fam.dt_sup());
}

}  // namespace cedyn
