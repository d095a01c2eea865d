#include <doctest.h>

#include <cmath>
#include <sstream>

#include "degest/numeric.hpp"
#include "degest/prior.hpp"

using namespace degest;

TEST_CASE("poisson prior pmf normalizes and handles lambda = 0") {
  const DegreePrior pr = DegreePrior::poisson(4.5);
  double total = 0.0;
  for (int d = 0; d < 200; ++d) total += pr.pmf(d);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(pr.support_max().has_value());

  const DegreePrior zero = DegreePrior::poisson(0.0);
  CHECK(zero.pmf(0) == 1.0);
  CHECK(zero.pmf(1) == 0.0);
  CHECK(zero.support_max() == 0);

  CHECK_THROWS_AS(DegreePrior::poisson(-1.0), ConfigError);
}

TEST_CASE("power-law prior is normalized on its support and zero outside") {
  const DegreePrior pr = DegreePrior::power_law(2.0, 2, 9);
  CHECK(pr.pmf(0) == 0.0);
  CHECK(pr.pmf(1) == 0.0);
  CHECK(pr.pmf(10) == 0.0);
  double total = 0.0;
  for (int d = 2; d <= 9; ++d) total += pr.pmf(d);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pr.pmf(2) / pr.pmf(4) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(DegreePrior::power_law(2.0, 0, 5), ConfigError);
}

TEST_CASE("explicit prior validation") {
  Vec pmf(3);
  pmf << 0.2, 0.3, 0.5;
  const DegreePrior pr = DegreePrior::explicit_pmf(pmf);
  CHECK(pr.pmf(1) == 0.3);
  CHECK(pr.pmf(7) == 0.0);
  CHECK(pr.support_min() == 0);
  CHECK(pr.support_max() == 2);

  Vec bad(2);
  bad << 0.4, 0.4;
  CHECK_THROWS_AS(DegreePrior::explicit_pmf(bad), ConfigError);
  CHECK_NOTHROW(DegreePrior::explicit_pmf(bad, /*allow_unnormalized=*/true));

  Vec neg(2);
  neg << -0.1, 1.1;
  CHECK_THROWS_AS(DegreePrior::explicit_pmf(neg, true), ConfigError);

  const DegreePrior point = DegreePrior::point_mass(5);
  CHECK(point.pmf(5) == 1.0);
  CHECK(point.support_min() == 5);
  CHECK(point.support_max() == 5);
}

TEST_CASE("binomial kernel rows sum to one") {
  for (double p : {0.1, 0.5, 0.9}) {
    const SamplingKernel kernel = SamplingKernel::binomial(p);
    for (int d : {0, 1, 2, 5, 17, 60}) {
      double total = 0.0;
      for (int d_star = 0; d_star <= d; ++d_star)
        total += std::exp(kernel.log_pmf(d_star, d));
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("tail_pmf_sq_sum matches direct summation") {
  const DegreePrior uni = DegreePrior::explicit_pmf(Vec::Constant(10, 0.1));
  CHECK(uni.tail_pmf_sq_sum(0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(uni.tail_pmf_sq_sum(5) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(uni.tail_pmf_sq_sum(10) == 0.0);

  const DegreePrior po = DegreePrior::poisson(3.0);
  double direct = 0.0;
  for (int d = 2; d < 300; ++d) direct += po.pmf(d) * po.pmf(d);
  CHECK(po.tail_pmf_sq_sum(2) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("pmf csv loader") {
  std::istringstream in("d,probability\n0,0.25\n2,0.75\n");
  const DegreePrior pr = load_pmf_csv(in);
  CHECK(pr.pmf(0) == 0.25);
  CHECK(pr.pmf(1) == 0.0);
  CHECK(pr.pmf(2) == 0.75);

  std::istringstream bad("0;0.5\n");
  CHECK_THROWS_AS(static_cast<void>(load_pmf_csv(bad)), ConfigError);
}

TEST_CASE("parse_prior_spec") {
  const DegreePrior po = parse_prior_spec("kind=poisson lambda=7.5");
  CHECK(po.kind() == DegreePrior::Kind::Poisson);
  CHECK(po.poisson_lambda() == 7.5);

  const DegreePrior pl = parse_prior_spec("kind=powerlaw m=2 dmin=1 dmax=31");
  CHECK(pl.kind() == DegreePrior::Kind::PowerLaw);
  CHECK(pl.support_max() == 31);

  CHECK_THROWS_AS(parse_prior_spec("kind=banana"), ConfigError);
  CHECK_THROWS_AS(parse_prior_spec("kind=poisson"), ConfigError);
  CHECK_THROWS_AS(parse_prior_spec("kind=poisson lambda=oops"), ConfigError);
}
