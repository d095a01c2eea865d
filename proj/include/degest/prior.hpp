#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "degest/types.hpp"

namespace degest {

/// A degree distribution usable as a Bayes prior: Poisson(lambda), a
/// power law proportional to d^(-exponent) on [d_min, d_max], or an explicit
/// pmf over 0..d_max. The pmf is evaluable at every d >= 0 (zero outside the
/// support). Explicit pmfs must sum to 1 within 1e-9 unless deliberately
/// flagged unnormalized (sup-norm perturbation studies need that).
class DegreePrior {
 public:
  enum class Kind { Poisson, PowerLaw, Explicit };

  static DegreePrior poisson(double lambda);
  static DegreePrior power_law(double exponent, int d_min, int d_max);
  static DegreePrior explicit_pmf(Vec pmf, bool allow_unnormalized = false);
  static DegreePrior point_mass(int d);

  Kind kind() const noexcept { return kind_; }
  double pmf(int d) const;
  double log_pmf(int d) const;

  /// Smallest degree with positive mass.
  int support_min() const noexcept { return support_min_; }
  /// Largest degree with positive mass; empty for the Poisson.
  std::optional<int> support_max() const noexcept { return support_max_; }

  /// Relative tail tolerance used when posterior sums are truncated.
  double truncation_tol() const noexcept { return truncation_tol_; }
  void set_truncation_tol(double tol) { truncation_tol_ = tol; }

  bool unnormalized() const noexcept { return unnormalized_; }

  /// Sum of squared pmf values over d >= from (tails truncated at the
  /// truncation tolerance for the Poisson).
  double tail_pmf_sq_sum(int from) const;

  double poisson_lambda() const { return lambda_; }
  double power_law_exponent() const { return exponent_; }

  const std::string& label() const noexcept { return label_; }

 private:
  DegreePrior() = default;

  Kind kind_ = Kind::Poisson;
  double lambda_ = 0.0;
  double exponent_ = 0.0;
  double log_norm_ = 0.0;  // power law normalizer
  Vec pmf_;                // explicit
  int support_min_ = 0;
  std::optional<int> support_max_;
  double truncation_tol_ = 1e-12;
  bool unnormalized_ = false;
  std::string label_;
};

/// Reads rows "d,probability" (a "d,probability" header row is allowed).
DegreePrior load_pmf_csv(std::istream& in, bool allow_unnormalized = false);
DegreePrior load_pmf_csv_file(const std::string& path, bool allow_unnormalized = false);

/// Parses "kind=poisson lambda=5", "kind=powerlaw m=2 dmin=1 dmax=31" or
/// "kind=explicit file=pmf.csv [unnormalized=1]".
DegreePrior parse_prior_spec(const std::string& args);

/// Conditional pmf of the observed degree given the true degree. The
/// binomial kernel is the induced-subgraph-sampling default; other designs
/// plug in through log_pmf.
struct SamplingKernel {
  std::function<double(int d_star, int d)> log_pmf;
  std::string label;

  static SamplingKernel binomial(double p);
};

}  // namespace degest
