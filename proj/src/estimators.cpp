#include "degest/estimators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degest/numeric.hpp"

namespace degest {

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("sampling probability must lie in (0, 1]");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Vec mme(const VecXi& d_star, double p) {
  check_p(p);
  return d_star.cast<double>() / p;
}

double urm_scalar(int d_star, double p) {
  const double ds = d_star;
  return ds * ds / (p * (ds + 1.0 - p)) + (1.0 - p) / p;
}

Vec univariate_risk_minimizer(const VecXi& d_star, double p) {
  check_p(p);
  Vec out(d_star.size());
  for (Eigen::Index i = 0; i < d_star.size(); ++i) out[i] = urm_scalar(d_star[i], p);
  return out;
}

double optimal_univariate_coefficient(double d0, double p) {
  check_p(p);
  if (d0 < 0) throw ConfigError("optimal_univariate_coefficient: d0 must be >= 0");
  const double den = p * d0 + 1.0 - p;
  if (den == 0.0) return 1.0;  // d0 = 0 at p = 1; continuous limit
  return d0 / den;
}

namespace {

struct MrmSystem {
  std::vector<int> active;  // subgraph indices with d* >= 1
  Vec d_active;
  Mat m;  // d* d*^T + D* on the active block
};

MrmSystem mrm_system(const SampleResult& s, const VecXi& d_star) {
  MrmSystem sys;
  for (int i = 0; i < s.n(); ++i)
    if (d_star[i] >= 1) sys.active.push_back(i);
  const auto k = static_cast<Eigen::Index>(sys.active.size());
  if (k == 0) return sys;
  sys.d_active.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) sys.d_active[i] = d_star[sys.active[static_cast<std::size_t>(i)]];
  const MatXi cnm = common_neighbor_matrix(s.subgraph, sys.active);
  sys.m = sys.d_active * sys.d_active.transpose() + cnm.cast<double>();
  return sys;
}

}  // namespace

EstimateVector multivariate_risk_minimizer(const SampleResult& s) {
  check_p(s.p);
  const VecXi d_star = observed_degrees(s);
  EstimateVector out;
  out.tag = "mrm";
  out.values = univariate_risk_minimizer(d_star, s.p);  // isolated-node fallback

  const MrmSystem sys = mrm_system(s, d_star);
  if (sys.active.empty()) return out;

  Eigen::LDLT<Mat> ldlt(sys.m);
  bool ok = ldlt.info() == Eigen::Success;
  Vec x;
  if (ok) {
    const Vec diag = ldlt.vectorD();
    const double dmax = diag.cwiseAbs().maxCoeff();
    const double dmin = diag.cwiseAbs().minCoeff();
    if (!(dmax > 0.0) || dmin < 1e-12 * dmax) ok = false;  // singular block
  }
  if (ok) {
    x = ldlt.solve(sys.d_active);
    const double resid = (sys.m * x - sys.d_active).cwiseAbs().maxCoeff();
    if (!x.allFinite() || !(resid <= 1e-6 * std::max(1.0, sys.d_active.cwiseAbs().maxCoeff())))
      ok = false;
  }
  if (!ok) {
    out.used_fallback = true;  // whole vector reverts to univariate estimates
    return out;
  }

  const double shrink = sys.d_active.dot(x) / s.p;
  for (std::size_t i = 0; i < sys.active.size(); ++i)
    out.values[sys.active[i]] = shrink * sys.d_active[static_cast<Eigen::Index>(i)];
  return out;
}

Vec multivariate_risk_minimizer_via_inverse(const SampleResult& s) {
  check_p(s.p);
  const VecXi d_star = observed_degrees(s);
  Vec out = univariate_risk_minimizer(d_star, s.p);
  const MrmSystem sys = mrm_system(s, d_star);
  if (sys.active.empty()) return out;
  const Mat inv = sys.m.inverse();
  const Vec shrunk = sys.d_active * sys.d_active.transpose() * inv * sys.d_active / s.p;
  for (std::size_t i = 0; i < sys.active.size(); ++i)
    out[sys.active[i]] = shrunk[static_cast<Eigen::Index>(i)];
  return out;
}

namespace {

/// Shared posterior-mean accumulator over log weights. `log_weight(d)` must
/// return the log observation weight of true degree d (prior excluded).
template <typename LogWeight>
BayesEval accumulate_posterior(int d_star, const DegreePrior& prior,
                               std::optional<int> cap_degree, LogWeight log_weight) {
  LogSumExp num, den;
  BayesEval eval;

  const int lo = std::max(d_star, prior.support_min());
  const std::optional<int> prior_hi = prior.support_max();
  std::optional<int> hi = prior_hi;
  if (cap_degree && (!hi || *cap_degree < *hi)) hi = *cap_degree;
  const bool cap_binding = cap_degree && (!prior_hi || *cap_degree < *prior_hi);
  const bool unbounded = !prior_hi.has_value();

  const double log_tol = std::log(prior.truncation_tol());
  int consecutive_small = 0;
  bool tail_converged = false;
  constexpr int kEmergencyCap = 5'000'000;

  for (int d = lo; !hi || d <= *hi; ++d) {
    if (d - lo > kEmergencyCap)
      throw NumericError("bayes estimate: posterior sum failed to converge");
    const double lp = prior.log_pmf(d);
    const double lterm = lp == kNegInf ? kNegInf : log_weight(d) + lp;
    den.add(lterm);
    if (d > 0 && lterm != kNegInf) num.add(lterm + std::log(static_cast<double>(d)));
    eval.last_degree = d;

    // Tail-convergence rule applies only to unbounded priors: a bounded
    // support may legitimately contain runs of zero-mass degrees.
    if (unbounded && !num.empty()) {
      const double log_num_term = lterm == kNegInf ? kNegInf : lterm + std::log(static_cast<double>(d));
      if (log_num_term - num.log_value() < log_tol) {
        if (++consecutive_small >= 5) {
          tail_converged = true;
          break;
        }
      } else {
        consecutive_small = 0;
      }
    }
  }

  if (den.empty())
    throw NumericError("bayes estimate: prior has no mass at or above observed degree " +
                       std::to_string(d_star));
  eval.stopped_by_cap = cap_binding && !tail_converged;
  eval.value = num.empty() ? 0.0 : std::exp(num.log_value() - den.log_value());
  return eval;
}

}  // namespace

BayesEval bayes_posterior_mean(int d_star, double p, const DegreePrior& prior,
                               std::optional<int> cap_degree) {
  check_p(p);
  if (d_star < 0) throw ConfigError("bayes estimate: d* must be >= 0");

  if (p == 1.0) {
    // Full observation: posterior concentrates on d*.
    if (prior.pmf(d_star) <= 0.0)
      throw NumericError("bayes estimate: prior has no mass at observed degree " +
                         std::to_string(d_star));
    return {static_cast<double>(d_star), d_star, false};
  }

  // C(d, d*) (1-p)^(d - d*); the constant factors p^d* and (1-p)^d* cancel
  // between numerator and denominator.
  const double log1mp = std::log1p(-p);
  return accumulate_posterior(d_star, prior, cap_degree, [&](int d) {
    return lchoose(d, d_star) + (d - d_star) * log1mp;
  });
}

double bayes_estimate(int d_star, double p, const DegreePrior& prior) {
  return bayes_posterior_mean(d_star, p, prior).value;
}

double bayes_poisson_closed_form(int d_star, double p, double lambda) {
  check_p(p);
  if (lambda < 0) throw ConfigError("bayes_poisson_closed_form: lambda must be >= 0");
  return d_star + lambda * (1.0 - p);
}

double empirical_bayes_estimate(int d_star, double p, const DegreePrior& est_prior) {
  return bayes_posterior_mean(d_star, p, est_prior).value;
}

double empirical_bayes_estimate(int d_star, double p, const DegreePrior& est_prior,
                                const SamplingKernel& kernel,
                                std::optional<int> cap_degree) {
  check_p(p);
  if (d_star < 0) throw ConfigError("bayes estimate: d* must be >= 0");
  return accumulate_posterior(d_star, est_prior, cap_degree,
                              [&](int d) { return kernel.log_pmf(d_star, d); })
      .value;
}

double estimate_lambda_hat(const SampleResult& s, int parent_num_nodes) {
  const double n = s.n();
  if (n < 2) throw NumericError("estimate_lambda_hat: need at least 2 sampled nodes");
  return parent_num_nodes * static_cast<double>(s.subgraph.num_edges()) / (n * (n - 1.0) / 2.0);
}

EstimatorSpec EstimatorSpec::make_mme() { return {Kind::Mme, "mme", std::nullopt, 0.0}; }
EstimatorSpec EstimatorSpec::make_urm() { return {Kind::Urm, "urm", std::nullopt, 0.0}; }
EstimatorSpec EstimatorSpec::make_mrm() { return {Kind::Mrm, "mrm", std::nullopt, 0.0}; }

EstimatorSpec EstimatorSpec::make_bayes(DegreePrior prior, std::string tag) {
  EstimatorSpec spec;
  spec.kind = Kind::Bayes;
  spec.tag = tag.empty() ? "bayes[" + prior.label() + "]" : std::move(tag);
  spec.prior = std::move(prior);
  return spec;
}

EstimatorSpec EstimatorSpec::make_bayes_poisson(double lambda, std::string tag) {
  EstimatorSpec spec;
  spec.kind = Kind::BayesPoisson;
  spec.lambda = lambda;
  if (tag.empty()) {
    std::ostringstream os;
    os << "bayes_pois(" << lambda << ")";
    spec.tag = os.str();
  } else {
    spec.tag = std::move(tag);
  }
  return spec;
}

EstimatorSpec EstimatorSpec::make_bayes_poisson_lambda_hat(std::string tag) {
  EstimatorSpec spec;
  spec.kind = Kind::BayesPoissonLambdaHat;
  spec.tag = tag.empty() ? "bayes_pois(lhat)" : std::move(tag);
  return spec;
}

EstimateVector run_estimator(const EstimatorSpec& spec, const SampleResult& s,
                             std::optional<int> parent_num_nodes, PosteriorCache* cache) {
  const VecXi d_star = observed_degrees(s);
  EstimateVector out;
  out.tag = spec.tag;

  switch (spec.kind) {
    case EstimatorSpec::Kind::Mme:
      out.values = mme(d_star, s.p);
      return out;
    case EstimatorSpec::Kind::Urm:
      out.values = univariate_risk_minimizer(d_star, s.p);
      return out;
    case EstimatorSpec::Kind::Mrm: {
      EstimateVector mrm = multivariate_risk_minimizer(s);
      mrm.tag = spec.tag;
      return mrm;
    }
    case EstimatorSpec::Kind::Bayes: {
      const std::optional<int> cap =
          parent_num_nodes ? std::optional<int>(*parent_num_nodes - 1) : std::nullopt;
      out.values.resize(d_star.size());
      for (Eigen::Index i = 0; i < d_star.size(); ++i) {
        const int ds = d_star[i];
        auto compute = [&] { return bayes_posterior_mean(ds, s.p, *spec.prior, cap).value; };
        out.values[i] = cache ? cache->get_or_compute(ds, compute) : compute();
      }
      return out;
    }
    case EstimatorSpec::Kind::BayesPoisson: {
      out.values.resize(d_star.size());
      for (Eigen::Index i = 0; i < d_star.size(); ++i)
        out.values[i] = bayes_poisson_closed_form(d_star[i], s.p, spec.lambda);
      return out;
    }
    case EstimatorSpec::Kind::BayesPoissonLambdaHat: {
      if (!parent_num_nodes)
        throw ConfigError("lambda-hat estimator requires the parent graph size");
      const double lambda = s.n() >= 2 ? estimate_lambda_hat(s, *parent_num_nodes) : 0.0;
      out.values.resize(d_star.size());
      for (Eigen::Index i = 0; i < d_star.size(); ++i)
        out.values[i] = bayes_poisson_closed_form(d_star[i], s.p, lambda);
      return out;
    }
  }
  throw ConfigError("unknown estimator kind");
}

namespace {

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

EstimatorSpec parse_bayes_spec(const std::string& args) {
  std::string kind, tag, file;
  double lambda = -1.0;
  bool lambda_auto = false;
  double m = 0.0;
  int dmin = -1, dmax = -1;
  bool unnormalized = false;

  for (const auto& raw : split_top_level(args, ' ')) {
    const std::string kv = trim(raw);
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("bayes spec: expected key=value, got \"" + kv + "\"");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      if (key == "kind") kind = value;
      else if (key == "lambda") {
        if (value == "auto") lambda_auto = true;
        else lambda = std::stod(value);
      } else if (key == "m") m = std::stod(value);
      else if (key == "dmin") dmin = std::stoi(value);
      else if (key == "dmax") dmax = std::stoi(value);
      else if (key == "file") file = value;
      else if (key == "tag") tag = value;
      else if (key == "unnormalized") unnormalized = value == "1" || value == "true";
      else throw ConfigError("bayes spec: unknown key \"" + key + "\"");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("bayes spec: malformed value for key \"" + key + "\"");
    }
  }

  if (kind == "poisson") {
    if (lambda_auto) return EstimatorSpec::make_bayes_poisson_lambda_hat(tag);
    if (lambda < 0) throw ConfigError("bayes spec: poisson prior needs lambda=<value> or lambda=auto");
    return EstimatorSpec::make_bayes_poisson(lambda, tag);
  }
  if (kind == "powerlaw") {
    if (!(m > 1.0) || dmin < 1 || dmax < dmin)
      throw ConfigError("bayes spec: powerlaw prior needs m>1, 1<=dmin<=dmax");
    return EstimatorSpec::make_bayes(DegreePrior::power_law(m, dmin, dmax), tag);
  }
  if (kind == "explicit") {
    if (file.empty()) throw ConfigError("bayes spec: explicit prior needs file=<path>");
    return EstimatorSpec::make_bayes(load_pmf_csv_file(file, unnormalized), tag);
  }
  throw ConfigError("bayes spec: kind must be poisson, powerlaw or explicit");
}

}  // namespace

std::vector<EstimatorSpec> parse_estimator_list(const std::string& text) {
  std::vector<EstimatorSpec> specs;
  for (const auto& raw : split_top_level(text, ',')) {
    const std::string token = trim(raw);
    if (token.empty()) continue;
    if (token == "mme") specs.push_back(EstimatorSpec::make_mme());
    else if (token == "urm") specs.push_back(EstimatorSpec::make_urm());
    else if (token == "mrm") specs.push_back(EstimatorSpec::make_mrm());
    else if (token.rfind("bayes(", 0) == 0 && token.back() == ')')
      specs.push_back(parse_bayes_spec(token.substr(6, token.size() - 7)));
    else
      throw ConfigError("unknown estimator \"" + token + "\"");
  }
  if (specs.empty()) throw ConfigError("estimator list is empty");
  return specs;
}

}  // namespace degest
