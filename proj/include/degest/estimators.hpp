#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "degest/prior.hpp"
#include "degest/sampler.hpp"
#include "degest/types.hpp"

namespace degest {

/// Per-node degree estimates aligned with SampleResult order.
struct EstimateVector {
  Vec values;
  std::string tag;
  bool used_fallback = false;  // multivariate solve failed, univariate used
};

/// Method of moments: observed degree scaled up by 1/p.
Vec mme(const VecXi& d_star, double p);

/// Bias-corrected plug-in of the optimal linear scalar:
///   d*^2 / (p (d* + 1 - p)) + (1 - p)/p.
Vec univariate_risk_minimizer(const VecXi& d_star, double p);
double urm_scalar(int d_star, double p);

/// The risk-optimal linear coefficient c* = d0 / (p d0 + 1 - p).
double optimal_univariate_coefficient(double d0, double p);

/// Linear shrinkage of the whole observed degree vector:
///   (1/p) d* d*^T (d* d*^T + D*)^{-1} d*,
/// where D* is the common-neighbor matrix of the sampled subgraph. Isolated
/// sample nodes (d* = 0) are excluded from the linear system and receive the
/// univariate estimate. If the solve on the non-isolated block breaks down,
/// the whole vector falls back to univariate estimates and the result is
/// flagged.
EstimateVector multivariate_risk_minimizer(const SampleResult& s);

/// Same estimator computed through an explicit matrix inverse; kept as an
/// independent route for verification.
Vec multivariate_risk_minimizer_via_inverse(const SampleResult& s);

struct BayesEval {
  double value = 0.0;
  int last_degree = 0;       // largest degree accumulated
  bool stopped_by_cap = false;  // hit the cap instead of tail convergence
};

/// Posterior mean of the true degree given d* under the binomial
/// observation kernel:
///   sum_{d >= d*} d C(d,d*) (1-p)^d pi(d) / sum_{d >= d*} C(d,d*) (1-p)^d pi(d).
/// Terms are accumulated in log space; for unbounded priors the sum stops
/// once the term-to-sum ratio stays below the prior's truncation tolerance
/// for five consecutive terms, or at cap_degree when one is given.
/// Throws NumericError when the prior has no mass at or above d*.
BayesEval bayes_posterior_mean(int d_star, double p, const DegreePrior& prior,
                               std::optional<int> cap_degree = std::nullopt);

double bayes_estimate(int d_star, double p, const DegreePrior& prior);

/// Poisson-prior closed form: d* + lambda (1 - p).
double bayes_poisson_closed_form(int d_star, double p, double lambda);

/// Bayes rule applied to an estimated prior. The two-argument form uses the
/// binomial kernel; the kernel overload accepts any observation design.
double empirical_bayes_estimate(int d_star, double p, const DegreePrior& est_prior);
double empirical_bayes_estimate(int d_star, double p, const DegreePrior& est_prior,
                                const SamplingKernel& kernel,
                                std::optional<int> cap_degree = std::nullopt);

/// Mean-degree estimate from the sample: N |E(G*)| / C(n, 2). Requires n >= 2.
double estimate_lambda_hat(const SampleResult& s, int parent_num_nodes);

/// A named estimator configuration, runnable against any sample.
struct EstimatorSpec {
  enum class Kind { Mme, Urm, Mrm, Bayes, BayesPoisson, BayesPoissonLambdaHat };

  Kind kind = Kind::Mme;
  std::string tag = "mme";
  std::optional<DegreePrior> prior;  // Bayes
  double lambda = 0.0;               // BayesPoisson

  static EstimatorSpec make_mme();
  static EstimatorSpec make_urm();
  static EstimatorSpec make_mrm();
  static EstimatorSpec make_bayes(DegreePrior prior, std::string tag = {});
  static EstimatorSpec make_bayes_poisson(double lambda, std::string tag = {});
  static EstimatorSpec make_bayes_poisson_lambda_hat(std::string tag = {});
};

/// Memo of posterior means by observed degree; valid for one (prior, p, cap)
/// combination. Safe for concurrent use: the cached function is pure, so a
/// duplicated computation stores the identical value.
class PosteriorCache {
 public:
  template <typename Compute>
  double get_or_compute(int d_star, Compute compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(d_star);
      if (it != map_.end()) return it->second;
    }
    const double value = compute();
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(d_star, value);
    return value;
  }

 private:
  std::mutex mu_;
  std::unordered_map<int, double> map_;
};

/// Runs one estimator on a sample. parent_num_nodes, when known, caps Bayes
/// sums at N-1 and feeds the lambda-hat estimator.
EstimateVector run_estimator(const EstimatorSpec& spec, const SampleResult& s,
                             std::optional<int> parent_num_nodes = std::nullopt,
                             PosteriorCache* cache = nullptr);

/// Parses a comma-separated estimator list, e.g.
///   "mme,urm,mrm,bayes(kind=poisson lambda=99.9),bayes(kind=poisson lambda=auto)".
/// Prior parameters inside bayes(...) are space-separated key=value pairs:
/// kind=poisson lambda=L | kind=powerlaw m=M dmin=A dmax=B | kind=explicit
/// file=PATH, plus optional tag=NAME.
std::vector<EstimatorSpec> parse_estimator_list(const std::string& text);

}  // namespace degest
