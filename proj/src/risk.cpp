#include "degest/risk.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "degest/csv.hpp"
#include "degest/numeric.hpp"
#include "degest/parallel.hpp"
#include "degest/rng.hpp"

namespace degest {

namespace {

double estimate_at(UnivariateEstimator est, int d_star, double p, double lambda) {
  switch (est) {
    case UnivariateEstimator::Mme:
      return d_star / p;
    case UnivariateEstimator::Urm:
      return urm_scalar(d_star, p);
    case UnivariateEstimator::BayesPoisson:
      return bayes_poisson_closed_form(d_star, p, lambda);
  }
  throw ConfigError("unknown univariate estimator");
}

}  // namespace

double exact_univariate_risk(UnivariateEstimator est, int d0, double p, double lambda) {
  if (d0 < 0 || d0 > 10'000)
    throw ConfigError("exact_univariate_risk: d0 must lie in [0, 10^4]");
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("exact_univariate_risk: p must lie in (0, 1]");
  double risk = 0.0;
  for (int k = 0; k <= d0; ++k) {
    const double lw = log_binomial_pmf(k, d0, p);
    if (lw == kNegInf) continue;
    const double err = estimate_at(est, k, p, lambda) - d0;
    risk += std::exp(lw) * err * err;
  }
  return risk;
}

Prop1Result check_prop1(int d0, double p) {
  Prop1Result r;
  r.condition_holds = d0 > (1.0 - p) / p;
  r.risk_urm = exact_univariate_risk(UnivariateEstimator::Urm, d0, p);
  r.risk_mme = exact_univariate_risk(UnivariateEstimator::Mme, d0, p);
  return r;
}

namespace {

RiskReport run_monte_carlo(const Graph& g, double p, const std::vector<EstimatorSpec>& estimators,
                           int replicates, std::uint64_t seed, int threads,
                           const SamplePredicate* membership) {
  if (replicates < 1) throw ConfigError("monte carlo risk: replicates must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("monte carlo risk: p must lie in [0, 1]");

  const int n_est = static_cast<int>(estimators.size());
  const VecXi parent_deg = degree_vector(g);

  std::vector<Vec> dist(static_cast<std::size_t>(n_est), Vec::Zero(replicates));
  std::vector<char> accepted(static_cast<std::size_t>(replicates), 1);
  std::vector<char> empty(static_cast<std::size_t>(replicates), 0);
  std::vector<PosteriorCache> caches(static_cast<std::size_t>(n_est));

  parallel_for_index(replicates, threads, [&](int r) {
    const SampleResult sample = induced_subgraph_sample(g, p, derive_seed(seed, static_cast<std::uint64_t>(r)));
    empty[static_cast<std::size_t>(r)] = sample.n() == 0 ? 1 : 0;
    if (membership && !(*membership)(sample)) {
      accepted[static_cast<std::size_t>(r)] = 0;
      return;  // indicator zeroes the contribution
    }
    if (sample.n() == 0) return;

    Vec d0(sample.n());
    for (int i = 0; i < sample.n(); ++i) d0[i] = parent_deg[sample.parent_ids[static_cast<std::size_t>(i)]];

    for (int e = 0; e < n_est; ++e) {
      const EstimateVector est =
          run_estimator(estimators[static_cast<std::size_t>(e)], sample, g.num_nodes(),
                        &caches[static_cast<std::size_t>(e)]);
      dist[static_cast<std::size_t>(e)][r] = (est.values - d0).norm();
    }
  });

  RiskReport report;
  report.replicates = replicates;
  report.p = p;
  report.seed = seed;
  report.parent_nodes = g.num_nodes();
  for (int e = 0; e < n_est; ++e) {
    RiskReport::EstimatorRisks er;
    er.tag = estimators[static_cast<std::size_t>(e)].tag;
    er.per_replicate = std::move(dist[static_cast<std::size_t>(e)]);
    double sum = 0.0;
    for (int r = 0; r < replicates; ++r) sum += er.per_replicate[r];  // fixed order
    er.mean = sum / replicates;
    report.per_estimator.push_back(std::move(er));
  }
  report.empty_samples = static_cast<int>(std::count(empty.begin(), empty.end(), 1));
  report.accepted = accepted;
  report.accepted_fraction =
      static_cast<double>(std::count(accepted.begin(), accepted.end(), 1)) / replicates;
  return report;
}

}  // namespace

RiskReport monte_carlo_l2_risk(const Graph& g, double p,
                               const std::vector<EstimatorSpec>& estimators, int replicates,
                               std::uint64_t seed, int threads) {
  return run_monte_carlo(g, p, estimators, replicates, seed, threads, nullptr);
}

RiskReport restricted_monte_carlo_risk(const Graph& g, double p,
                                       const std::vector<EstimatorSpec>& estimators,
                                       int replicates, std::uint64_t seed,
                                       const SamplePredicate& membership, int threads) {
  return run_monte_carlo(g, p, estimators, replicates, seed, threads, &membership);
}

void write_risk_report_csv(const RiskReport& report, std::ostream& out) {
  out << "graph_id,model,N,p_e_or_s,m,p,estimator,replicate,l2_distance\n";
  const std::string meta = csv_field(report.graph_id) + "," + csv_field(report.model) + "," +
                           std::to_string(report.parent_nodes) + "," + fmt_num(report.pe_or_s) +
                           "," + (std::isnan(report.m_exponent) ? "" : fmt_num(report.m_exponent)) +
                           "," + fmt_num(report.p) + ",";
  for (const auto& er : report.per_estimator) {
    for (int r = 0; r < report.replicates; ++r)
      out << meta << csv_field(er.tag) << "," << r << "," << fmt_num(er.per_replicate[r]) << "\n";
    out << meta << csv_field(er.tag) << ",mean," << fmt_num(er.mean) << "\n";
  }
  out << meta << "_run,empty_samples," << report.empty_samples << "\n";
  out << meta << "_run,accepted_fraction," << fmt_num(report.accepted_fraction) << "\n";
}

ClassMembership check_prop2_from_parts(const VecXi& d_star, const MatXi& cnm_sampled,
                                       std::int64_t subgraph_edges, double alpha0,
                                       double true_norm_sq, double lambda_min, double p) {
  const int n = static_cast<int>(d_star.size());
  if (n < 1) throw ConfigError("prop2 membership needs at least one sampled node");
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0)) throw ConfigError("prop2: alpha0 must lie in [0, 1]");

  ClassMembership cm;
  cm.n = n;
  cm.num_edges = subgraph_edges;
  cm.lambda_min = lambda_min;
  cm.has_isolated = (d_star.array() < 1).any();

  const Vec ds = d_star.cast<double>();
  const Mat m = ds * ds.transpose() + cnm_sampled.cast<double>();
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) throw NumericError("prop2: eigen decomposition failed");

  // Eigenvector sign is arbitrary; the overlap condition is a magnitude one.
  double min_overlap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    min_overlap = std::min(min_overlap, std::abs(es.eigenvectors().col(i).sum()));
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  cm.max_feasible_alpha0 = min_overlap / sqrt_n;

  constexpr double kTol = 1e-12;
  const bool g1_geom = min_overlap >= sqrt_n * alpha0 - kTol;

  const double e = static_cast<double>(subgraph_edges);
  const double denom = n > 1 ? e * (2.0 * e / (n - 1) + n) : e * n;  // n=1 forces e=0
  cm.g2_lhs = denom > 0.0 ? n * n * n * alpha0 * alpha0 / denom
                          : (alpha0 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  cm.g2_rhs = 1.0 - (1.0 - p) * lambda_min / true_norm_sq;

  cm.in_g1 = !cm.has_isolated && g1_geom;
  cm.in_g2 = !cm.has_isolated && cm.g2_lhs >= cm.g2_rhs - kTol;
  return cm;
}

ClassMembership check_prop2_class(const SampleResult& s, double alpha0,
                                  const VecXi& true_degrees, DMatrixChoice choice,
                                  const Graph* parent) {
  const VecXi d_star = observed_degrees(s);
  std::vector<int> all(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i) all[static_cast<std::size_t>(i)] = i;
  const MatXi cnm_sampled = common_neighbor_matrix(s.subgraph, all);

  double lambda_min = 0.0;
  if (choice == DMatrixChoice::SampledDStar) {
    Eigen::SelfAdjointEigenSolver<Mat> es(cnm_sampled.cast<double>());
    if (es.info() != Eigen::Success) throw NumericError("prop2: eigen decomposition failed");
    lambda_min = es.eigenvalues().minCoeff();
  } else {
    if (!parent) throw ConfigError("prop2: the true-D choice requires the parent graph");
    const MatXi cnm_true = common_neighbor_matrix(*parent, s.parent_ids);
    Eigen::SelfAdjointEigenSolver<Mat> es(cnm_true.cast<double>());
    if (es.info() != Eigen::Success) throw NumericError("prop2: eigen decomposition failed");
    lambda_min = es.eigenvalues().minCoeff();
  }

  const double norm_sq = true_degrees.cast<double>().squaredNorm();
  return check_prop2_from_parts(d_star, cnm_sampled, s.subgraph.num_edges(), alpha0, norm_sq,
                                lambda_min, s.p);
}

namespace {

struct TailSums {
  double log_s0 = kNegInf;  // log sum_{d>=d*} C(d,d*) (1-p)^d pi(d)
  double log_s1 = kNegInf;  // log sum_{d>=d*} d C(d,d*) (1-p)^d pi(d)
};

// Uncancelled tail sums used by the proposition checkers; the (1-p)^d factor
// is kept so absolute magnitudes can be compared against the closed-form
// bounds.
TailSums bayes_tail_sums(const DegreePrior& prior, int d_star, double p,
                         std::optional<int> cap) {
  LogSumExp s0, s1;
  const int lo = std::max(d_star, prior.support_min());
  std::optional<int> hi = prior.support_max();
  if (cap && (!hi || *cap < *hi)) hi = *cap;
  const bool unbounded = !prior.support_max().has_value();
  const double log_tol = std::log(prior.truncation_tol());
  const double log1mp = p < 1.0 ? std::log1p(-p) : kNegInf;
  int consecutive_small = 0;
  constexpr int kEmergencyCap = 5'000'000;

  for (int d = lo; !hi || d <= *hi; ++d) {
    if (d - lo > kEmergencyCap) throw NumericError("tail sums failed to converge");
    double lw;
    if (p >= 1.0)
      lw = d == 0 && d_star == 0 ? 0.0 : kNegInf;
    else
      lw = lchoose(d, d_star) + d * log1mp;
    const double lp = prior.log_pmf(d);
    const double lterm = lp == kNegInf || lw == kNegInf ? kNegInf : lw + lp;
    s0.add(lterm);
    if (d > 0 && lterm != kNegInf) s1.add(lterm + std::log(static_cast<double>(d)));

    if (unbounded && !s0.empty()) {
      if (lterm == kNegInf || lterm - s0.log_value() < log_tol) {
        if (++consecutive_small >= 5) break;
      } else {
        consecutive_small = 0;
      }
    }
  }
  return {s0.log_value(), s1.log_value()};
}

// log sum_{d>=d*} C(d,d*) (1-p)^d without the prior: either the geometric
// closed form (1-p)^d* / p^(d*+1), or the capped partial sum.
double log_binomial_tail_norm(int d_star, double p, std::optional<int> cap) {
  if (!cap) return d_star * std::log1p(-p) - (d_star + 1) * std::log(p);
  LogSumExp s;
  const double log1mp = std::log1p(-p);
  for (int d = d_star; d <= *cap; ++d) s.add(lchoose(d, d_star) + d * log1mp);
  return s.log_value();
}

}  // namespace

Prop3Result check_prop3_conditions(const DegreePrior& prior, const Graph& g, int node,
                                   double p, int replicates, std::uint64_t seed) {
  if (replicates < 1) throw ConfigError("prop3: replicates must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("prop3: p must lie in (0, 1)");
  const int n_parent = g.num_nodes();
  const int d0 = g.degree(node);

  Prop3Result res;
  res.replicates = replicates;
  res.d0 = d0;
  res.cond6_applicable = d0 <= (n_parent - 1) / 2.0;

  const int forced[] = {node};
  double sum_tail_sq = 0.0;
  double min_lhs7 = std::numeric_limits<double>::infinity();
  int hold7 = 0, hold7_capped = 0;

  for (int r = 0; r < replicates; ++r) {
    const SampleResult s =
        induced_subgraph_sample_forced(g, p, derive_seed(seed, static_cast<std::uint64_t>(r)), forced);
    const auto it = std::lower_bound(s.parent_ids.begin(), s.parent_ids.end(), node);
    const int idx = static_cast<int>(it - s.parent_ids.begin());
    const int d_star = s.subgraph.degree(idx);

    const double tail_sq = prior.tail_pmf_sq_sum(d_star);
    if (r == 0) res.lhs6_first_realized = tail_sq;
    sum_tail_sq += tail_sq;

    const TailSums sums = bayes_tail_sums(prior, d_star, p, n_parent - 1);
    const double lhs7 = std::exp(sums.log_s0 - log_binomial_tail_norm(d_star, p, std::nullopt));
    const double lhs7_capped =
        std::exp(sums.log_s0 - log_binomial_tail_norm(d_star, p, n_parent - 1));
    min_lhs7 = std::min(min_lhs7, lhs7);
    if (lhs7 >= p - 1e-12) ++hold7;
    if (lhs7_capped >= p - 1e-12) ++hold7_capped;
  }

  res.lhs6_mc = sum_tail_sq / replicates;
  const double gap = n_parent - 1.0 - d0;
  res.rhs6 = gap > 0.0 ? p * (1.0 - p) * d0 / (gap * gap)
                       : std::numeric_limits<double>::infinity();
  res.cond6_holds = res.cond6_applicable && res.lhs6_mc <= res.rhs6;
  res.cond7_fraction = static_cast<double>(hold7) / replicates;
  res.cond7_all = hold7 == replicates;
  res.cond7_fraction_capped = static_cast<double>(hold7_capped) / replicates;
  res.cond7_all_capped = hold7_capped == replicates;
  res.lhs7_min = min_lhs7;
  return res;
}

Prop4Result eb_approximation_check(const DegreePrior& prior, const DegreePrior& perturbed,
                                   double epsilon, int d_star, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("prop4: p must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("prop4: epsilon must be > 0");

  // Validate the sup-norm premise over the union of supports (Poisson tails
  // are scanned until both pmfs drop far below epsilon).
  int horizon = 0;
  for (const auto* pr : {&prior, &perturbed})
    if (pr->support_max()) horizon = std::max(horizon, *pr->support_max());
  if (!prior.support_max() || !perturbed.support_max()) {
    int d = horizon;
    while (prior.pmf(d) > epsilon * 1e-6 || perturbed.pmf(d) > epsilon * 1e-6 || d < 1) ++d;
    horizon = d + 5;
  }
  double sup = 0.0;
  for (int d = 0; d <= horizon; ++d) sup = std::max(sup, std::abs(prior.pmf(d) - perturbed.pmf(d)));
  if (!(sup < epsilon))
    throw ConfigError("prop4: priors differ by " + std::to_string(sup) +
                      " in sup norm, not within epsilon=" + std::to_string(epsilon));

  const TailSums base = bayes_tail_sums(prior, d_star, p, std::nullopt);
  const TailSums pert = bayes_tail_sums(perturbed, d_star, p, std::nullopt);
  const double s0 = std::exp(base.log_s0);
  const double s1 = base.log_s1 == kNegInf ? 0.0 : std::exp(base.log_s1);
  const double s0_hat = std::exp(pert.log_s0);
  const double s1_hat = pert.log_s1 == kNegInf ? 0.0 : std::exp(pert.log_s1);

  Prop4Result res;
  res.lhs_num = std::abs(s0_hat - s0);
  res.lhs_den = std::abs(s1_hat - s1);
  const double pow_p = std::pow(p, d_star + 1);
  const double pow_q = std::pow(1.0 - p, d_star);
  res.bound_num = epsilon * pow_q / pow_p;
  res.bound_den = epsilon * pow_q * (d_star + 1.0 - p) / (pow_p * p);
  res.bayes_value = s1 / s0;
  res.eb_value = s1_hat / s0_hat;
  res.lhs_ratio = std::abs(res.eb_value - res.bayes_value) / res.bayes_value;
  res.bound_ratio = epsilon * pow_q / (pow_p * s1) +
                    epsilon * pow_q * (d_star + 1.0 - p) / (pow_p * p * s0);
  res.holds_num = res.lhs_num < res.bound_num;
  res.holds_den = res.lhs_den < res.bound_den;
  res.holds_ratio = res.lhs_ratio < res.bound_ratio;
  return res;
}

DominanceInterval poisson_bayes_dominance_interval(double lambda, double p) {
  if (!(lambda >= 0.0)) throw ConfigError("prop5: lambda must be >= 0");
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("prop5: p must lie in (0, 1]");
  // Roots in d0 of the exact risk difference
  //   p(1-p) d0 + (1-p)^2 (d0-lambda)^2 - d0 (1-p)/p,
  // i.e. (d0-lambda)^2 = d0 (1+p)/p.
  const double c = (1.0 + p) / p;
  const double half_width = c * std::sqrt(lambda / c + 0.25);
  return {lambda + 0.5 * c - half_width, lambda + 0.5 * c + half_width};
}

}  // namespace degest
