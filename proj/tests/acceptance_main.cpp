// Acceptance suite: ten end-to-end checks, one line of output each. Run bare
// for the whole list or with --criterion <n> for a single one (that is how
// ctest registers them).

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "wdro/backtest.hpp"
#include "wdro/confidence.hpp"
#include "wdro/dro.hpp"
#include "wdro/feasibility.hpp"
#include "wdro/market_sim.hpp"
#include "wdro/rng.hpp"

using namespace wdro;

// Reference level recorded from the seeded bootstrap run in criterion 8.
#ifndef WDRO_ACC_CONF_GOLDEN
#define WDRO_ACC_CONF_GOLDEN 71.0
#endif

namespace {

struct Check {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

ReturnSample fixture_sample(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  return market_sim::generate(market_sim::MarketModel::with_defaults(m), n, seed);
}

socp::SolverSettings tight(double tol) {
  socp::SolverSettings st;
  st.tol = tol;
  return st;
}

// ---------------------------------------------------------------------------
// 1. closed-form coefficient values

Check criterion_1() {
  Check c;
  c.expect(dro::c_factor(2) == 1.0, "c_factor(2) must equal 1 exactly");
  c.expect(std::abs(dro::c_factor(3) - (1.0 / 3.0 + 2.0 / std::sqrt(3.0))) <= 1e-12,
           "c_factor(3) must equal 1/3 + 2/sqrt(3) within 1e-12");
  return c;
}

// ---------------------------------------------------------------------------
// 2. zero-radius reduction to plain SAA on 20 seeded fixtures

double plain_saa_markowitz(const SampleMoments& mom, double mu) {
  const Eigen::Index m = mom.assets();
  const Eigen::MatrixXd L = dro::covariance_factor(mom.covariance);
  socp::ConicProgram p;
  p.c = Eigen::VectorXd::Zero(m + 1);
  p.c(m) = 1.0;
  p.A = Eigen::MatrixXd::Zero(1 + m + 1 + m + 1, m + 1);
  p.b = Eigen::VectorXd::Zero(p.A.rows());
  p.A.row(0).head(m).setOnes();
  p.b(0) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) p.A(1 + j, j) = -1.0;
  p.A.row(1 + m).head(m) = -mom.mean.transpose();
  p.b(1 + m) = -mu;
  p.A(2 + m, m) = -1.0;
  p.A.block(3 + m, 0, m, m) = -L;
  p.cones = {{socp::ConeKind::Zero, 1},
             {socp::ConeKind::Nonneg, m + 1},
             {socp::ConeKind::SecondOrder, m + 1}};
  const auto rep = socp::solve(p, 1e-10, 400000);
  if (rep.status != socp::SolverStatus::Optimal)
    throw dro::SolverFailed("plain Markowitz reference did not solve");
  return rep.objective * rep.objective;
}

double plain_saa_cvar(const ReturnSample& sample, double mu, double alpha) {
  const Eigen::Index m = sample.assets();
  const Eigen::Index n = sample.periods();
  const Eigen::VectorXd mean = compute_moments(sample).mean;
  socp::ConicProgram p;
  p.c = Eigen::VectorXd::Zero(m + 1 + n);
  p.c(m) = 1.0;
  p.c.tail(n).setConstant(1.0 / (alpha * static_cast<double>(n)));
  const Eigen::Index rows = 1 + m + 1 + 2 * n;
  p.A = Eigen::MatrixXd::Zero(rows, m + 1 + n);
  p.b = Eigen::VectorXd::Zero(rows);
  p.A.row(0).head(m).setOnes();
  p.b(0) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) p.A(1 + j, j) = -1.0;
  p.A.row(1 + m).head(m) = -mean.transpose();
  p.b(1 + m) = -mu;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index r = 2 + m + i;  // w_i + <x, xi_i> + tau >= 0
    p.A.row(r).head(m) = -sample.returns().row(i);
    p.A(r, m) = -1.0;
    p.A(r, m + 1 + i) = -1.0;
    r = 2 + m + n + i;  // w_i >= 0
    p.A(r, m + 1 + i) = -1.0;
  }
  p.cones = {{socp::ConeKind::Zero, 1}, {socp::ConeKind::Nonneg, m + 1 + 2 * n}};
  const auto rep = socp::solve(p, 1e-10, 400000);
  if (rep.status != socp::SolverStatus::Optimal)
    throw dro::SolverFailed("plain CVaR reference did not solve");
  return rep.objective;
}

Check criterion_2() {
  Check c;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index m = 2 + (i % 4);           // up to 5 assets
    const Eigen::Index n = 20 + 10 * (i % 4);     // up to 50 rows
    auto sample = fixture_sample(m, n, 8800 + static_cast<std::uint64_t>(i));
    auto mom = compute_moments(sample);
    DroConfig cfg;
    cfg.epsilon = 0.0;
    cfg.mu = 0.5 * mom.mean.mean();
    cfg.alpha = 0.05;

    auto mv = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                             dro::ProblemKind::MeanVariance, tight(1e-10));
    c.expect(mv.status == SolveStatus::Optimal, "mean-variance fixture unsolved");
    if (mv.status == SolveStatus::Optimal)
      c.expect(std::abs(mv.objective - plain_saa_markowitz(mom, cfg.mu)) <= 1e-6,
               "mean-variance eps=0 deviates from plain SAA > 1e-6");

    auto cv = dro::solve_dro(dro::build_mean_cvar_socp(sample, cfg),
                             dro::ProblemKind::MeanCVaR, tight(1e-10));
    c.expect(cv.status == SolveStatus::Optimal, "mean-CVaR fixture unsolved");
    if (cv.status == SolveStatus::Optimal)
      c.expect(std::abs(cv.objective -
                        plain_saa_cvar(sample, cfg.mu, cfg.alpha)) <= 1e-6,
               "mean-CVaR eps=0 deviates from plain SAA > 1e-6");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 3. objective equivalence against the simplex-grid brute force

Check criterion_3() {
  Check c;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index m = (i % 2 == 0) ? 3 : 4;
    const Eigen::Index n = 20 + 5 * (i % 3);
    auto sample = fixture_sample(m, n, 9900 + static_cast<std::uint64_t>(i));
    auto mom = compute_moments(sample);
    DroConfig cfg;
    cfg.epsilon = (i % 2 == 0) ? 0.01 : 0.005;
    cfg.mu = 0.01;
    cfg.alpha = 0.05;

    auto mv = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                             dro::ProblemKind::MeanVariance, tight(1e-9));
    auto mv_grid = oracles::grid_mean_variance(mom, cfg.epsilon, cfg.mu);
    c.expect(mv.status == SolveStatus::Optimal && mv_grid.feasible,
             "mean-variance fixture unsolved");
    if (mv.status == SolveStatus::Optimal && mv_grid.feasible)
      c.expect(std::abs(mv.objective - mv_grid.objective) <= 1e-3,
               "mean-variance objective vs grid oracle > 1e-3");

    auto cv = dro::solve_dro(dro::build_mean_cvar_socp(sample, cfg),
                             dro::ProblemKind::MeanCVaR, tight(1e-9));
    auto cv_grid = oracles::grid_mean_cvar(sample, cfg.epsilon, cfg.mu, cfg.alpha);
    c.expect(cv.status == SolveStatus::Optimal && cv_grid.feasible,
             "mean-CVaR fixture unsolved");
    if (cv.status == SolveStatus::Optimal && cv_grid.feasible)
      c.expect(std::abs(cv.objective - cv_grid.objective) <= 1e-3,
               "mean-CVaR objective vs grid oracle > 1e-3");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 4. feasibility boundary behaviour

Check criterion_4() {
  Check c;
  for (int i = 0; i < 6; ++i) {
    const Eigen::Index m = 2 + (i % 4);
    auto sample = fixture_sample(m, 30, 7100 + static_cast<std::uint64_t>(i));
    auto mom = compute_moments(sample);
    const double cap = feasibility::mu_max(mom);
    const double mu = 0.6 * cap;
    auto fr = feasibility::eps_max(mom, mu, 2);
    c.expect(fr.eps_max > 0.0, "fixture has empty radius range");

    DroConfig cfg;
    cfg.mu = mu;
    cfg.epsilon = 0.999 * fr.eps_max;
    auto inside = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                                 dro::ProblemKind::MeanVariance);
    c.expect(inside.status == SolveStatus::Optimal,
             "solver infeasible strictly inside the boundary");

    cfg.epsilon = 1.01 * fr.eps_max + 1e-6;
    auto outside = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                                  dro::ProblemKind::MeanVariance);
    c.expect(outside.status == SolveStatus::Infeasible,
             "solver optimal strictly outside the boundary");

    auto at_cap = feasibility::eps_max(mom, cap, 2);
    c.expect(at_cap.eps_max == 0.0, "eps_max(mu_max) must be 0");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 5. constraint satisfaction on the simulated market

Check criterion_5() {
  Check c;
  const auto model = market_sim::MarketModel::with_defaults(10);
  const double mu = 0.25;
  int ok_cvar = 0;
  int ok_var = 0;
  const int runs = 50;
  for (int run = 0; run < runs; ++run) {
    auto sample = market_sim::generate(model, 300,
                                       rng::derive_seed(505, static_cast<std::uint64_t>(run)));
    auto mom = compute_moments(sample);
    double cap = 0.0;
    try {
      cap = feasibility::eps_max_analytic(mom, mu, 2).eps_max;
    } catch (const feasibility::MuAboveMax&) {
      continue;
    }
    DroConfig cfg;
    cfg.mu = mu;
    cfg.alpha = 0.05;
    cfg.epsilon = 0.4 * cap;
    try {
      auto cv = dro::solve_dro(dro::build_mean_cvar_socp(sample, cfg),
                               dro::ProblemKind::MeanCVaR);
      if (cv.status == SolveStatus::Optimal &&
          market_sim::true_return(model, *cv.portfolio) >= mu)
        ++ok_cvar;
      auto mv = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                               dro::ProblemKind::MeanVariance);
      if (mv.status == SolveStatus::Optimal &&
          market_sim::true_return(model, *mv.portfolio) >= mu)
        ++ok_var;
    } catch (const dro::SolverFailed&) {
    }
  }
  c.expect(ok_cvar >= 45, "CVaR satisfaction fraction below 0.90: " +
                              std::to_string(ok_cvar) + "/50");
  c.expect(ok_var >= 45, "variance satisfaction fraction below 0.90: " +
                             std::to_string(ok_var) + "/50");
  return c;
}

// ---------------------------------------------------------------------------
// 6. monotone radius response

Check criterion_6() {
  Check c;
  const auto model = market_sim::MarketModel::with_defaults(10);
  const double mu = 0.25;
  const int runs = 50;
  const int grid_points = 10;
  double rho_cvar = 0.0;
  double rho_var = 0.0;
  int counted = 0;
  for (int run = 0; run < runs; ++run) {
    auto sample = market_sim::generate(model, 30,
                                       rng::derive_seed(606, static_cast<std::uint64_t>(run)));
    auto mom = compute_moments(sample);
    double cap = 0.0;
    try {
      cap = feasibility::eps_max_analytic(mom, mu, 2).eps_max;
    } catch (const feasibility::MuAboveMax&) {
      continue;
    }
    if (cap <= 0.0) continue;
    std::vector<double> eps_grid, r_cvar, r_var, j_cvar, j_var;
    for (int g = 0; g < grid_points; ++g) {
      const double f = 0.05 + 0.90 * g / (grid_points - 1);
      DroConfig cfg;
      cfg.mu = mu;
      cfg.alpha = 0.05;
      cfg.epsilon = f * cap;
      try {
        auto cv = dro::solve_dro(dro::build_mean_cvar_socp(sample, cfg),
                                 dro::ProblemKind::MeanCVaR, tight(1e-9));
        auto mv = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                                 dro::ProblemKind::MeanVariance, tight(1e-9));
        if (cv.status != SolveStatus::Optimal || mv.status != SolveStatus::Optimal)
          continue;
        eps_grid.push_back(cfg.epsilon);
        r_cvar.push_back(market_sim::true_return(model, *cv.portfolio));
        r_var.push_back(market_sim::true_return(model, *mv.portfolio));
        j_cvar.push_back(cv.objective);
        j_var.push_back(mv.objective);
      } catch (const dro::SolverFailed&) {
      }
    }
    if (eps_grid.size() < static_cast<std::size_t>(grid_points)) continue;
    for (std::size_t g = 1; g < eps_grid.size(); ++g) {
      c.expect(j_cvar[g] >= j_cvar[g - 1] - 1e-9,
               "CVaR objective decreased along the radius grid");
      c.expect(j_var[g] >= j_var[g - 1] - 1e-9,
               "variance objective decreased along the radius grid");
    }
    rho_cvar += oracles::spearman_rho(eps_grid, r_cvar);
    rho_var += oracles::spearman_rho(eps_grid, r_var);
    ++counted;
  }
  c.expect(counted >= 40, "too few usable runs: " + std::to_string(counted));
  if (counted > 0) {
    rho_cvar /= counted;
    rho_var /= counted;
    c.expect(rho_cvar > 0.5, "mean Spearman rho (CVaR) = " + std::to_string(rho_cvar));
    c.expect(rho_var > 0.5, "mean Spearman rho (variance) = " + std::to_string(rho_var));
  }
  return c;
}

// ---------------------------------------------------------------------------
// 7. Gaussian CVaR closed form against Monte Carlo

Check criterion_7() {
  Check c;
  const auto model = market_sim::MarketModel::with_defaults(5);
  rng::engine eng(70);
  for (int i = 0; i < 5; ++i) {
    Eigen::VectorXd w(5);
    for (int j = 0; j < 5; ++j) w(j) = rng::uniform_open01(eng);
    w /= w.sum();
    auto x = validate_portfolio(w);
    const double analytic = market_sim::true_cvar_gaussian(model, x, 0.05);
    const double mc = oracles::mc_cvar_gaussian(
        market_sim::true_return(model, x), market_sim::true_variance(model, x),
        0.05, 10000000, 7000 + static_cast<std::uint64_t>(i));
    c.expect(std::abs(analytic - mc) <= 0.01 * std::abs(mc),
             "analytic CVaR off Monte Carlo by more than 1%");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 8. bootstrap determinism, golden value, trivial levels

Check criterion_8() {
  Check c;
  auto sample = market_sim::generate(market_sim::MarketModel::with_defaults(10),
                                     300, 42);
  auto mom = compute_moments(sample);
  DroConfig cfg;
  cfg.mu = 0.25;
  cfg.epsilon = 0.4 * feasibility::eps_max(mom, cfg.mu, 2).eps_max;
  auto first = confidence::expected_confidence(
      sample, cfg, dro::ProblemKind::MeanVariance, 100, 0.7, 42);
  auto second = confidence::expected_confidence(
      sample, cfg, dro::ProblemKind::MeanVariance, 100, 0.7, 42);
  c.expect(first.level_percent == second.level_percent,
           "fixed-seed level changed between runs");
  c.expect(first.per_replicate == second.per_replicate,
           "fixed-seed flags changed between runs");
  c.expect(first.level_percent == WDRO_ACC_CONF_GOLDEN,
           "level deviates from the recorded reference value");
  c.expect(first.level_percent >= 0.0 && first.level_percent <= 100.0,
           "level outside [0, 100]");

  Eigen::MatrixXd rows(20, 2);
  rows.rowwise() = Eigen::RowVector2d(0.02, 0.03);
  ReturnSample constant(rows);
  DroConfig easy;
  easy.mu = 0.01;
  auto full = confidence::expected_confidence(
      constant, easy, dro::ProblemKind::MeanVariance, 20, 0.7, 3);
  c.expect(full.level_percent == 100.0, "constant-data level must be 100.0");
  DroConfig hard;
  hard.mu = 0.05;
  auto zero = confidence::expected_confidence(
      constant, hard, dro::ProblemKind::MeanVariance, 20, 0.7, 3);
  c.expect(zero.level_percent == 0.0, "unattainable-mu level must be 0.0");
  return c;
}

// ---------------------------------------------------------------------------
// 9. backtest fixture pipeline

Check criterion_9() {
  Check c;
  const std::string path = std::string(WDRO_FIXTURE_DIR) + "/returns_6x300.csv";
  std::ifstream probe(path);
  if (!probe) {
    c.expect(false, "fixture file missing: " + path);
    return c;
  }
  auto data = read_returns_csv_file(path);
  c.expect(data.assets() == 6 && data.periods() == 300,
           "fixture is not 6 assets x 300 days");

  using backtest::EpsRule;
  using backtest::EpsRuleKind;
  using backtest::Strategy;
  using backtest::StrategyKind;
  auto strategy = [](StrategyKind kind,
                     std::optional<EpsRule> rule = std::nullopt) {
    Strategy s;
    s.kind = kind;
    s.cfg.alpha = 0.05;
    s.eps_rule = rule;
    return s;
  };
  const std::vector<Strategy> strategies{
      strategy(StrategyKind::CVaRWass, EpsRule{EpsRuleKind::Fixed, 0.0}),
      strategy(StrategyKind::CVaRSAA),
      strategy(StrategyKind::VarWass, EpsRule{EpsRuleKind::Fixed, 0.0}),
      strategy(StrategyKind::VarSAA),
      strategy(StrategyKind::EW),
  };
  const Eigen::Index window = 60;
  const double mu = 0.002;

  auto report1 = backtest::run_backtest(data, strategies, window, mu);
  auto report2 = backtest::run_backtest(data, strategies, window, mu);
  std::ostringstream csv1, csv2;
  backtest::write_metrics_csv(report1, csv1);
  backtest::write_metrics_csv(report2, csv2);
  c.expect(csv1.str() == csv2.str(), "metric CSVs differ between runs");

  const auto& ew = report1.strategies.at(4);
  c.expect(ew.avg_assets == 6.0, "EW avg_assets must be exactly 6.0");

  Eigen::MatrixXd w(2, 2);
  w << 0.5, 0.5, 0.5, 0.5;
  Eigen::MatrixXd r(2, 2);
  r << 0.0, 0.0, 0.10, 0.00;
  c.expect(std::abs(backtest::turnover(w, r) - 1.0 / 21.0) <= 1e-12,
           "hand turnover example off by more than 1e-12");

  const auto& cw = report1.strategies.at(0);
  const auto& cs = report1.strategies.at(1);
  const auto& vw = report1.strategies.at(2);
  const auto& vs = report1.strategies.at(3);
  c.expect((cw.daily_weights - cs.daily_weights).cwiseAbs().maxCoeff() <= 1e-6,
           "zero-radius CVaR weights differ from SAA weights");
  c.expect((vw.daily_weights - vs.daily_weights).cwiseAbs().maxCoeff() <= 1e-6,
           "zero-radius variance weights differ from SAA weights");
  return c;
}

// ---------------------------------------------------------------------------
// 10. solver property suite

Check criterion_10() {
  Check c;
  rng::engine eng(1010);

  const auto random_box_lp = [&](Eigen::Index n, Eigen::Index extra) {
    socp::ConicProgram p;
    p.c.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
      p.c(j) = 2.0 * rng::uniform_open01(eng) - 1.0;
    Eigen::VectorXd z0(n);
    for (Eigen::Index j = 0; j < n; ++j) z0(j) = rng::uniform_open01(eng);
    const Eigen::Index rows = 2 * n + extra;
    p.A = Eigen::MatrixXd::Zero(rows, n);
    p.b = Eigen::VectorXd::Zero(rows);
    for (Eigen::Index j = 0; j < n; ++j) {
      p.A(j, j) = 1.0;
      p.b(j) = 1.0 + rng::uniform_open01(eng);
      p.A(n + j, j) = -1.0;
    }
    for (Eigen::Index i = 0; i < extra; ++i) {
      for (Eigen::Index j = 0; j < n; ++j)
        p.A(2 * n + i, j) = 2.0 * rng::uniform_open01(eng) - 1.0;
      p.b(2 * n + i) = p.A.row(2 * n + i).dot(z0) + 0.2 + rng::uniform_open01(eng);
    }
    p.cones = {{socp::ConeKind::Nonneg, rows}};
    return p;
  };

  // 34 scaling-invariance instances
  for (int i = 0; i < 34; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng::bounded(eng, 5));
    auto prog = random_box_lp(n, 2);
    const double tol = 1e-9;
    auto rep1 = socp::solve(prog, tol, 400000);
    auto scaled = prog;
    scaled.c *= std::pow(10.0, 2.0 * rng::uniform_open01(eng) - 1.0);
    auto rep2 = socp::solve(scaled, tol, 400000);
    c.expect(rep1.status == socp::SolverStatus::Optimal &&
                 rep2.status == socp::SolverStatus::Optimal,
             "scaling instance unsolved");
    if (rep1.status == socp::SolverStatus::Optimal &&
        rep2.status == socp::SolverStatus::Optimal)
      c.expect((rep1.z - rep2.z).cwiseAbs().maxCoeff() <= 10 * tol,
               "argmin moved by more than 10*tol under objective scaling");
  }

  // 33 vertex-enumeration instances
  for (int i = 0; i < 33; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng::bounded(eng, 5));
    auto prog = random_box_lp(n, 3);
    auto rep = socp::solve(prog, 1e-9, 400000);
    c.expect(rep.status == socp::SolverStatus::Optimal, "LP instance unsolved");
    if (rep.status != socp::SolverStatus::Optimal) continue;
    auto expect = oracles::vertex_enumeration_lp(prog.A, prog.b, prog.c);
    c.expect(expect.has_value(), "vertex enumeration found no vertex");
    if (expect)
      c.expect(std::abs(rep.objective - *expect) <= 1e-5,
               "LP objective differs from vertex enumeration by more than 1e-5");
  }

  // 33 infeasibility certificates
  for (int i = 0; i < 33; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng::bounded(eng, 5));
    auto prog = random_box_lp(n, 1);
    // contradictory halfspace pair: a'z <= b0 and a'z >= b0 + delta
    Eigen::RowVectorXd a(n);
    for (Eigen::Index j = 0; j < n; ++j) a(j) = 2.0 * rng::uniform_open01(eng) - 1.0;
    const double b0 = rng::uniform_open01(eng);
    const double delta = 0.1 + rng::uniform_open01(eng);
    const Eigen::Index rows = prog.A.rows();
    prog.A.conservativeResize(rows + 2, Eigen::NoChange);
    prog.b.conservativeResize(rows + 2);
    prog.A.row(rows) = a;
    prog.b(rows) = b0;
    prog.A.row(rows + 1) = -a;
    prog.b(rows + 1) = -(b0 + delta);
    prog.cones = {{socp::ConeKind::Nonneg, rows + 2}};
    auto rep = socp::solve(prog);
    c.expect(rep.status == socp::SolverStatus::Infeasible,
             "contradictory program not certified infeasible");
    if (rep.dual_ray)
      c.expect((prog.A.transpose() * *rep.dual_ray).norm() <= 1e-7,
               "infeasibility ray violates A'y ~ 0");
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[i + 1]);
  }

  struct Entry {
    int id;
    const char* name;
    Check (*run)();
  };
  const Entry entries[] = {
      {1, "c_factor closed forms", criterion_1},
      {2, "zero-radius SAA reduction (20 fixtures)", criterion_2},
      {3, "grid-oracle objective equivalence (10 fixtures)", criterion_3},
      {4, "feasibility boundary flips", criterion_4},
      {5, "constraint satisfaction >= 0.90 on simulated market", criterion_5},
      {6, "radius monotonicity and Spearman trend", criterion_6},
      {7, "Gaussian CVaR vs 1e7-draw Monte Carlo", criterion_7},
      {8, "bootstrap determinism, golden and trivial levels", criterion_8},
      {9, "backtest fixture pipeline", criterion_9},
      {10, "solver property suite (100 instances)", criterion_10},
  };

  int failures = 0;
  for (const auto& e : entries) {
    if (only != 0 && e.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = e.run();
    } catch (const std::exception& ex) {
      result.ok = false;
      result.note = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s  criterion %2d: %s (%.1fs)%s%s\n",
                result.ok ? "PASS" : "FAIL", e.id, e.name, secs,
                result.ok ? "" : " -- ", result.ok ? "" : result.note.c_str());
    std::fflush(stdout);
    if (!result.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
