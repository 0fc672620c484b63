#pragma once

// Sign-and-log representation for real numbers whose magnitudes overflow
// double, plus a max-factored accumulator for sums of positive log-scale
// terms. Derivative products along long orbits live here.

#include <cmath>
#include <limits>

namespace cedyn {

inline constexpr double kLogOverflow = 700.0;  // exp() still finite below this

// Value = sign * exp(logmag).  sign == 0 encodes exact zero (logmag ignored,
// kept at -inf for normal-form comparisons).
struct SignedLogReal {
  int sign = 0;
  double logmag = -std::numeric_limits<double>::infinity();

  static SignedLogReal from_linear(double x) {
    if (x == 0.0) return {};
    return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
  }
  static SignedLogReal one() { return {1, 0.0}; }
  static SignedLogReal from_log(int sign, double logmag) { return {sign, logmag}; }

  bool is_zero() const { return sign == 0; }

  // Linear-space value; saturates to +-inf past the overflow threshold.
  double linear() const {
    if (sign == 0) return 0.0;
    if (logmag >= kLogOverflow) return sign * std::numeric_limits<double>::infinity();
    return sign * std::exp(logmag);
  }

  // exp(-logmag), the magnitude of the reciprocal; 0 for huge magnitudes.
  double inv_magnitude() const {
    if (sign == 0) return std::numeric_limits<double>::infinity();
    if (logmag <= -kLogOverflow) return std::numeric_limits<double>::infinity();
    return std::exp(-logmag);
  }

  SignedLogReal operator*(const SignedLogReal& o) const {
    if (sign == 0 || o.sign == 0) return {};
    return {sign * o.sign, logmag + o.logmag};
  }
  SignedLogReal mul_linear(double x) const { return *this * from_linear(x); }
};

// Accumulates sum(exp(log_term_i)) for log-scale terms, factoring out the
// running maximum so the partial sums never overflow.  The represented sum is
// exp(max) * acc.  Terms are nonnegative by construction.
class LogSumAccumulator {
 public:
  void add_log_term(double log_term) {
    if (std::isinf(log_term) && log_term > 0) {
      infinite_ = true;
      return;
    }
    if (count_ == 0 || log_term > max_) {
      if (count_ > 0) acc_ *= std::exp(max_ - log_term);
      max_ = log_term;
      acc_ += 1.0;
    } else {
      acc_ += std::exp(log_term - max_);
    }
    ++count_;
  }

  bool empty() const { return count_ == 0 && !infinite_; }
  bool infinite() const { return infinite_; }

  // log of the accumulated sum; -inf for the empty sum, +inf if a term hit an
  // exact pole.
  double log_value() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    if (count_ == 0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(acc_);
  }

  SignedLogReal value() const {
    if (!infinite_ && count_ == 0) return {};
    return {1, log_value()};
  }

 private:
  double max_ = 0.0;
  double acc_ = 0.0;
  long count_ = 0;
  bool infinite_ = false;
};

}  // namespace cedyn
