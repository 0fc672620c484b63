#pragma once

// Dense univariate polynomials over double: Horner evaluation with two
// derivatives, sign-change root isolation, and the Sylvester-matrix
// discriminant used to detect degenerate critical points.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace cedyn::poly {

// Coefficients low-to-high: p(x) = sum c[k] x^k.
using Coeffs = std::vector<double>;

inline Coeffs trimmed(Coeffs c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

inline int degree(const Coeffs& c) {
  for (std::size_t i = c.size(); i-- > 0;)
    if (c[i] != 0.0) return static_cast<int>(i);
  return -1;
}

inline Coeffs derivative(const Coeffs& c) {
  if (c.size() <= 1) return {0.0};
  Coeffs d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

inline double eval(const Coeffs& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

struct Jet2 {
  double f, d1, d2;
};

inline Jet2 eval2(const Coeffs& c, double x) {
  double v = 0.0, d = 0.0, s = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    s = s * x + d;
    d = d * x + v;
    v = v * x + c[i];
  }
  return {v, d, 2.0 * s};
}

// Roots of p in the open interval (lo, hi), isolated by sign changes on a
// uniform grid and refined by bisection to width `tol`.  Even-multiplicity
// roots do not change sign and are not found here; callers that care run the
// discriminant check separately.
inline std::vector<double> roots_by_bisection(const Coeffs& p, double lo, double hi,
                                              int grid = 2048, double tol = 1e-14) {
  std::vector<double> roots;
  double prev_x = lo, prev_v = eval(p, lo);
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / grid;
    const double v = eval(p, x);
    if (prev_v == 0.0 && prev_x > lo) {
      roots.push_back(prev_x);
    } else if (v != 0.0 && ((prev_v < 0.0) != (v < 0.0))) {
      double a = prev_x, b = x, fa = prev_v;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = eval(p, m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_v = v;
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (r <= lo || r >= hi) continue;
    if (!out.empty() && r - out.back() < 4 * tol) continue;
    out.push_back(r);
  }
  return out;
}

// Determinant by partial-pivot elimination; good enough for the small
// Sylvester matrices that arise from low-degree families.
inline double determinant(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

inline double resultant(const Coeffs& pc, const Coeffs& qc) {
  const Coeffs p = trimmed(pc), q = trimmed(qc);
  const int m = degree(p), n = degree(q);
  if (m < 0 || n < 0) return 0.0;
  if (m == 0 && n == 0) return 1.0;
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<double>> syl(size, std::vector<double>(size, 0.0));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) syl[row][row + k] = p[static_cast<std::size_t>(m - k)];
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) syl[n + row][row + k] = q[static_cast<std::size_t>(n - k)];
  return determinant(std::move(syl));
}

// disc(p) = (-1)^{d(d-1)/2} Res(p, p') / lc(p).  Degree <= 1 has no
// multiple-root obstruction; reported as 1.
inline double discriminant(const Coeffs& pc) {
  const Coeffs p = trimmed(pc);
  const int d = degree(p);
  if (d <= 1) return 1.0;
  const double res = resultant(p, derivative(p));
  const double sign = (static_cast<long>(d) * (d - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * res / p[static_cast<std::size_t>(d)];
}

}  // namespace cedyn::poly
