#include "degest/prior.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "degest/numeric.hpp"

namespace degest {

DegreePrior DegreePrior::poisson(double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("poisson prior: lambda must be >= 0");
  DegreePrior pr;
  pr.kind_ = Kind::Poisson;
  pr.lambda_ = lambda;
  pr.support_min_ = 0;
  pr.support_max_ = lambda == 0.0 ? std::optional<int>(0) : std::nullopt;
  std::ostringstream label;
  label << "poisson(" << lambda << ")";
  pr.label_ = label.str();
  return pr;
}

DegreePrior DegreePrior::power_law(double exponent, int d_min, int d_max) {
  if (d_min < 1 || d_min > d_max) throw ConfigError("power-law prior: need 1 <= d_min <= d_max");
  DegreePrior pr;
  pr.kind_ = Kind::PowerLaw;
  pr.exponent_ = exponent;
  pr.support_min_ = d_min;
  pr.support_max_ = d_max;
  double norm = 0.0;
  for (int d = d_min; d <= d_max; ++d)
    norm += std::exp(-exponent * std::log(static_cast<double>(d)));
  pr.log_norm_ = std::log(norm);
  std::ostringstream label;
  label << "powerlaw(m=" << exponent << ",[" << d_min << "," << d_max << "])";
  pr.label_ = label.str();
  return pr;
}

DegreePrior DegreePrior::explicit_pmf(Vec pmf, bool allow_unnormalized) {
  if (pmf.size() == 0) throw ConfigError("explicit prior: empty pmf");
  double sum = 0.0;
  for (Eigen::Index d = 0; d < pmf.size(); ++d) {
    if (!(pmf[d] >= 0.0)) throw ConfigError("explicit prior: negative mass at d=" + std::to_string(d));
    sum += pmf[d];
  }
  if (!allow_unnormalized && std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("explicit prior: pmf sums to " + std::to_string(sum) +
                      ", expected 1 within 1e-9 (pass allow_unnormalized to override)");
  DegreePrior pr;
  pr.kind_ = Kind::Explicit;
  pr.pmf_ = std::move(pmf);
  pr.unnormalized_ = allow_unnormalized;
  int lo = 0;
  while (lo < pr.pmf_.size() && pr.pmf_[lo] == 0.0) ++lo;
  int hi = static_cast<int>(pr.pmf_.size()) - 1;
  while (hi >= 0 && pr.pmf_[hi] == 0.0) --hi;
  if (hi < 0) throw ConfigError("explicit prior: all-zero pmf");
  pr.support_min_ = lo;
  pr.support_max_ = hi;
  pr.label_ = "explicit[0.." + std::to_string(pr.pmf_.size() - 1) + "]";
  return pr;
}

DegreePrior DegreePrior::point_mass(int d) {
  if (d < 0) throw ConfigError("point mass: degree must be >= 0");
  Vec pmf = Vec::Zero(d + 1);
  pmf[d] = 1.0;
  DegreePrior pr = explicit_pmf(std::move(pmf));
  pr.label_ = "pointmass(" + std::to_string(d) + ")";
  return pr;
}

double DegreePrior::log_pmf(int d) const {
  if (d < 0) return kNegInf;
  switch (kind_) {
    case Kind::Poisson:
      if (lambda_ == 0.0) return d == 0 ? 0.0 : kNegInf;
      return -lambda_ + d * std::log(lambda_) - std::lgamma(d + 1.0);
    case Kind::PowerLaw:
      if (d < support_min_ || d > *support_max_) return kNegInf;
      return -exponent_ * std::log(static_cast<double>(d)) - log_norm_;
    case Kind::Explicit:
      if (d >= pmf_.size() || pmf_[d] == 0.0) return kNegInf;
      return std::log(pmf_[d]);
  }
  return kNegInf;
}

double DegreePrior::pmf(int d) const {
  if (kind_ == Kind::Explicit) return d >= 0 && d < pmf_.size() ? pmf_[d] : 0.0;
  const double lp = log_pmf(d);
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

double DegreePrior::tail_pmf_sq_sum(int from) const {
  const int lo = std::max(from, support_min_);
  double total = 0.0;
  if (support_max_) {
    for (int d = lo; d <= *support_max_; ++d) {
      const double q = pmf(d);
      total += q * q;
    }
    return total;
  }
  // Poisson: accumulate until the squared-pmf terms are negligible.
  int consecutive_small = 0;
  for (int d = lo; consecutive_small < 5; ++d) {
    const double q = pmf(d);
    total += q * q;
    if (d > lambda_ && (total == 0.0 || q * q < truncation_tol_ * total))
      ++consecutive_small;
    else
      consecutive_small = 0;
  }
  return total;
}

DegreePrior load_pmf_csv(std::istream& in, bool allow_unnormalized) {
  std::string line;
  std::vector<std::pair<int, double>> rows;
  int max_d = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("pmf line " + std::to_string(line_no) + ": expected \"d,probability\"");
    const std::string dfield = line.substr(0, comma);
    const std::string pfield = line.substr(comma + 1);
    if (line_no == 1 && dfield == "d") continue;  // header row
    try {
      const int d = std::stoi(dfield);
      const double prob = std::stod(pfield);
      if (d < 0) throw ConfigError("pmf line " + std::to_string(line_no) + ": negative degree");
      rows.emplace_back(d, prob);
      max_d = std::max(max_d, d);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("pmf line " + std::to_string(line_no) + ": malformed row");
    }
  }
  if (rows.empty()) throw ConfigError("pmf file: no rows");
  Vec pmf = Vec::Zero(max_d + 1);
  for (const auto& [d, prob] : rows) pmf[d] = prob;
  return DegreePrior::explicit_pmf(std::move(pmf), allow_unnormalized);
}

DegreePrior load_pmf_csv_file(const std::string& path, bool allow_unnormalized) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pmf file: " + path);
  return load_pmf_csv(in, allow_unnormalized);
}

DegreePrior parse_prior_spec(const std::string& args) {
  std::string kind, file;
  double lambda = -1.0, m = 0.0;
  int dmin = -1, dmax = -1;
  bool unnormalized = false;

  std::istringstream in(args);
  std::string kv;
  while (in >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("prior spec: expected key=value, got \"" + kv + "\"");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      if (key == "kind") kind = value;
      else if (key == "lambda") lambda = std::stod(value);
      else if (key == "m") m = std::stod(value);
      else if (key == "dmin") dmin = std::stoi(value);
      else if (key == "dmax") dmax = std::stoi(value);
      else if (key == "file") file = value;
      else if (key == "unnormalized") unnormalized = value == "1" || value == "true";
      else throw ConfigError("prior spec: unknown key \"" + key + "\"");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("prior spec: malformed value for key \"" + key + "\"");
    }
  }
  if (kind == "poisson") {
    if (lambda < 0) throw ConfigError("prior spec: poisson needs lambda=<value>");
    return DegreePrior::poisson(lambda);
  }
  if (kind == "powerlaw") {
    if (!(m > 1.0) || dmin < 1 || dmax < dmin)
      throw ConfigError("prior spec: powerlaw needs m>1, 1<=dmin<=dmax");
    return DegreePrior::power_law(m, dmin, dmax);
  }
  if (kind == "explicit") {
    if (file.empty()) throw ConfigError("prior spec: explicit needs file=<path>");
    return load_pmf_csv_file(file, unnormalized);
  }
  throw ConfigError("prior spec: kind must be poisson, powerlaw or explicit");
}

SamplingKernel SamplingKernel::binomial(double p) {
  SamplingKernel k;
  k.label = "binomial";
  k.log_pmf = [p](int d_star, int d) { return log_binomial_pmf(d_star, d, p); };
  return k;
}

}  // namespace degest
