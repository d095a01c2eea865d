#pragma once

#include <cmath>
#include <limits>

namespace degest {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log C(n, k) for 0 <= k <= n.
inline double lchoose(double n, double k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// log P(X = k) for X ~ Binomial(n, p). Handles the degenerate p = 0 and p = 1.
inline double log_binomial_pmf(int k, int n, double p) {
  if (k < 0 || k > n) return kNegInf;
  if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return k == n ? 0.0 : kNegInf;
  return lchoose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
}

/// Streaming max-shifted log-sum-exp accumulator. Terms are added in a fixed
/// order so results are deterministic.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (empty_) {
      max_ = log_term;
      sum_ = 1.0;
      empty_ = false;
    } else if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  bool empty() const { return empty_; }

  double log_value() const { return empty_ ? kNegInf : max_ + std::log(sum_); }

  double value() const { return empty_ ? 0.0 : std::exp(log_value()); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
  bool empty_ = true;
};

}  // namespace degest
