#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wdro/dro.hpp"
#include "wdro/feasibility.hpp"
#include "wdro/market_sim.hpp"

using namespace wdro;

namespace {

SampleMoments moments_of(std::initializer_list<double> means) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(means.size()));
  Eigen::Index i = 0;
  for (double v : means) m(i++) = v;
  return SampleMoments{m, Eigen::MatrixXd::Zero(m.size(), m.size())};
}

}  // namespace

TEST_CASE("mu_max is the best asset mean") {
  CHECK(feasibility::mu_max(moments_of({0.01, 0.02, 0.03})) == doctest::Approx(0.03));
  CHECK(feasibility::mu_max(moments_of({0.05})) == doctest::Approx(0.05));
}

TEST_CASE("mu_max converges to 0.30 on the default simulated market") {
  auto model = market_sim::MarketModel::with_defaults(10);
  CHECK(feasibility::mu_max(market_sim::true_moments(model)) == doctest::Approx(0.30));
  auto sample = market_sim::generate(model, 200000, 3);
  CHECK(feasibility::mu_max(compute_moments(sample)) ==
        doctest::Approx(0.30).epsilon(0.02));
}

TEST_CASE("eps_max single asset closed case") {
  auto report = feasibility::eps_max(moments_of({0.05}), 0.02, 2);
  CHECK(report.eps_max == doctest::Approx(0.03).epsilon(1e-6));
  CHECK(report.mu_max == doctest::Approx(0.05));
  CHECK(report.achieving_portfolio.weights()(0) == doctest::Approx(1.0));
}

TEST_CASE("eps_max with equal means diversifies") {
  auto report = feasibility::eps_max(moments_of({0.02, 0.02}), 0.01, 2);
  CHECK(report.eps_max == doctest::Approx(0.01 * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(report.achieving_portfolio.weights()(0) == doctest::Approx(0.5).epsilon(1e-4));
  // grid-search reference for the same ratio
  const double grid = oracles::grid_eps_ratio(moments_of({0.02, 0.02}).mean, 0.01);
  CHECK(report.eps_max == doctest::Approx(grid).epsilon(1e-4));
}

TEST_CASE("eps_max at the boundary and above it") {
  auto mom = moments_of({0.01, 0.02, 0.035});
  auto at_max = feasibility::eps_max(mom, 0.035, 2);
  CHECK(at_max.eps_max == doctest::Approx(0.0));
  CHECK(at_max.achieving_portfolio.weights()(2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(feasibility::eps_max(mom, 0.035 + 1e-6, 2),
                  feasibility::MuAboveMax);
}

TEST_CASE("bisection and analytic paths agree") {
  rng::engine eng(400);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(rng::bounded(eng, 4));
    Eigen::VectorXd mean(m);
    for (Eigen::Index j = 0; j < m; ++j)
      mean(j) = 0.06 * rng::uniform_open01(eng) - 0.01;
    SampleMoments mom{mean, Eigen::MatrixXd::Zero(m, m)};
    const double mu = mean.maxCoeff() - 0.015;
    for (int p : {1, 2, 3}) {
      auto slow = feasibility::eps_max(mom, mu, p);
      auto fast = feasibility::eps_max_analytic(mom, mu, p);
      CHECK(slow.eps_max == doctest::Approx(fast.eps_max).epsilon(1e-6));
    }
  }
}

TEST_CASE("eps_max is non-increasing in mu and scales exactly in p") {
  auto sample = market_sim::generate(market_sim::MarketModel::with_defaults(5),
                                     60, 9001);
  auto mom = compute_moments(sample);
  const double hi = feasibility::mu_max(mom);
  const double lo = mom.mean.minCoeff();
  double last = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 6; ++i) {
    const double mu = lo + (hi - lo) * i / 6.0;
    auto rep = feasibility::eps_max(mom, mu, 2);
    CHECK(rep.eps_max <= last + 1e-9);
    last = rep.eps_max;
    // same gamma for every p: the ratio of eps_max across p is c2/cp exactly
    auto rep3 = feasibility::eps_max_analytic(mom, mu, 3);
    CHECK(rep3.eps_max * dro::c_factor(3) ==
          doctest::Approx(rep.eps_max * dro::c_factor(2)).epsilon(1e-6));
  }
}

TEST_CASE("diversification lower bound") {
  auto sample = market_sim::generate(market_sim::MarketModel::with_defaults(6),
                                     40, 52);
  auto mom = compute_moments(sample);
  const Eigen::Index m = mom.assets();
  const Eigen::VectorXd ew = Eigen::VectorXd::Constant(m, 1.0 / double(m));
  const double mu = 0.5 * mom.mean.mean();
  for (int p : {1, 2}) {
    auto rep = feasibility::eps_max_analytic(mom, mu, p);
    const double bound =
        (mom.mean.dot(ew) - mu) * std::sqrt(double(m)) / dro::c_factor(p);
    CHECK(rep.eps_max >= bound - 1e-12);
  }
}

TEST_CASE("solver feasibility flips across the eps_max boundary") {
  auto sample = market_sim::generate(market_sim::MarketModel::with_defaults(4),
                                     30, 31415);
  auto mom = compute_moments(sample);
  const double mu = 0.6 * feasibility::mu_max(mom);
  auto rep = feasibility::eps_max(mom, mu, 2);
  REQUIRE(rep.eps_max > 0.0);

  DroConfig cfg;
  cfg.mu = mu;
  cfg.epsilon = 0.999 * rep.eps_max;
  auto inside = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                               dro::ProblemKind::MeanVariance);
  CHECK(inside.status == SolveStatus::Optimal);

  cfg.epsilon = 1.01 * rep.eps_max + 1e-6;
  auto outside = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                                dro::ProblemKind::MeanVariance);
  CHECK(outside.status == SolveStatus::Infeasible);
}
