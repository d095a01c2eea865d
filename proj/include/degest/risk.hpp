#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "degest/estimators.hpp"
#include "degest/graph.hpp"
#include "degest/sampler.hpp"
#include "degest/types.hpp"

namespace degest {

enum class UnivariateEstimator { Mme, Urm, BayesPoisson };

/// Exact l2 risk of a single-node estimator at true degree d0: the estimate
/// error squared, averaged over d* ~ Binomial(d0, p) by full enumeration.
/// `lambda` applies to the Poisson-prior Bayes estimator only. d0 <= 10^4.
double exact_univariate_risk(UnivariateEstimator est, int d0, double p, double lambda = 0.0);

struct Prop1Result {
  bool condition_holds = false;  // d0 > (1 - p) / p
  double risk_urm = 0.0;
  double risk_mme = 0.0;
};
Prop1Result check_prop1(int d0, double p);

/// Monte Carlo l2 distances between estimates and the true degrees of the
/// sampled nodes, per replicate and estimator.
struct RiskReport {
  struct EstimatorRisks {
    std::string tag;
    Vec per_replicate;
    double mean = 0.0;
  };
  std::vector<EstimatorRisks> per_estimator;
  int replicates = 0;
  double p = 0.0;
  std::uint64_t seed = 0;

  // metadata for serialization
  std::string graph_id;
  std::string model;
  int parent_nodes = 0;
  double pe_or_s = 0.0;
  double m_exponent = 0.0;  // NaN when not applicable

  int empty_samples = 0;
  double accepted_fraction = 1.0;
  std::vector<char> accepted;  // per replicate (restricted runs)
};

using SamplePredicate = std::function<bool(const SampleResult&)>;

RiskReport monte_carlo_l2_risk(const Graph& g, double p,
                               const std::vector<EstimatorSpec>& estimators, int replicates,
                               std::uint64_t seed, int threads = 1);

/// Same estimate restricted to a graph class: replicates whose sample fails
/// the predicate contribute a zero distance (the indicator sits inside the
/// expectation) and the acceptance fraction is recorded.
RiskReport restricted_monte_carlo_risk(const Graph& g, double p,
                                       const std::vector<EstimatorSpec>& estimators,
                                       int replicates, std::uint64_t seed,
                                       const SamplePredicate& membership, int threads = 1);

/// CSV with columns graph_id, model, N, p_e_or_s, m, p, estimator, replicate,
/// l2_distance; one summary row per estimator (replicate column "mean").
void write_risk_report_csv(const RiskReport& report, std::ostream& out);

/// Membership result for the two sampled-graph classes that guarantee the
/// multivariate estimator's restricted-risk dominance.
struct ClassMembership {
  bool in_g1 = false;
  bool in_g2 = false;
  double max_feasible_alpha0 = 0.0;  // min_i |1^T v_i| / sqrt(n)
  double g2_lhs = 0.0;
  double g2_rhs = 0.0;
  double lambda_min = 0.0;  // smallest eigenvalue of the chosen D matrix
  bool has_isolated = false;
  int n = 0;
  std::int64_t num_edges = 0;
};

enum class DMatrixChoice { SampledDStar, TrueD0 };

/// Eigenvector overlaps use |1^T v_i| since eigenvector signs are arbitrary.
/// `true_degrees` are the parent degrees of the sampled nodes. TrueD0 needs
/// the parent graph to build its common-neighbor matrix.
ClassMembership check_prop2_class(const SampleResult& s, double alpha0,
                                  const VecXi& true_degrees, DMatrixChoice choice,
                                  const Graph* parent = nullptr);

/// Core computation on explicit parts; lets callers feed hypothetical
/// observed vectors.
ClassMembership check_prop2_from_parts(const VecXi& d_star, const MatXi& cnm_sampled,
                                       std::int64_t subgraph_edges, double alpha0,
                                       double true_norm_sq, double lambda_min, double p);

struct Prop3Result {
  bool cond6_applicable = false;  // d0 <= (N-1)/2
  bool cond6_holds = false;
  double lhs6_mc = 0.0;            // Monte Carlo mean of sum_{d>=d*} pi(d)^2
  double lhs6_first_realized = 0.0;  // the summand at the first replicate's d*
  double rhs6 = 0.0;
  bool cond7_all = false;      // tail-weighted mean >= p in every replicate
  double cond7_fraction = 0.0;
  double lhs7_min = 0.0;
  bool cond7_all_capped = false;  // same with the denominator capped at N-1
  double cond7_fraction_capped = 0.0;
  int replicates = 0;
  int d0 = 0;
};

/// Conditions (tail not too thick / not too thin) under which the Bayes
/// estimator dominates the scale-up estimator. The expectation in the first
/// condition is taken over samples forced to contain the node; the second is
/// evaluated per replicate with both denominator readings (unbounded
/// geometric closed form, and capped at N-1).
Prop3Result check_prop3_conditions(const DegreePrior& prior, const Graph& g, int node,
                                   double p, int replicates, std::uint64_t seed);

struct Prop4Result {
  double lhs_num = 0.0;    // |S0(perturbed) - S0(prior)|
  double bound_num = 0.0;  // eps (1-p)^d* / p^(d*+1)
  double lhs_den = 0.0;    // |S1(perturbed) - S1(prior)|
  double bound_den = 0.0;  // eps (1-p)^d* (d*+1-p) / p^(d*+2)
  double lhs_ratio = 0.0;  // |EB - B| / B
  double bound_ratio = 0.0;
  bool holds_num = false;
  bool holds_den = false;
  bool holds_ratio = false;
  double bayes_value = 0.0;
  double eb_value = 0.0;
};

/// Numerical check of the plug-in approximation bounds for an estimated
/// prior within sup-norm epsilon of the true one.
Prop4Result eb_approximation_check(const DegreePrior& prior, const DegreePrior& perturbed,
                                   double epsilon, int d_star, double p);

struct DominanceInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// True-degree interval on which the Poisson-prior Bayes estimator beats the
/// scale-up estimator in exact risk:
///   lambda + ((1+p)/p) (1/2 -+ sqrt(lambda p/(1+p) + 1/4)).
/// These are the exact roots of the risk difference; verified against
/// binomial enumeration.
DominanceInterval poisson_bayes_dominance_interval(double lambda, double p);

}  // namespace degest
