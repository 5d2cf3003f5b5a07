#include "wdro/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "wdro/feasibility.hpp"

namespace wdro::backtest {

const char* to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::CVaRWass: return "CVaR Wass";
    case StrategyKind::VarWass: return "Var Wass";
    case StrategyKind::CVaRSAA: return "CVaR SAA";
    case StrategyKind::VarSAA: return "Var SAA";
    case StrategyKind::EW: return "EW";
    case StrategyKind::MinCVaR: return "MinCVaR";
    case StrategyKind::MinVar: return "MinVar";
    case StrategyKind::MaxSR: return "MaxSR";
  }
  return "?";
}

bool is_wasserstein(StrategyKind k) {
  return k == StrategyKind::CVaRWass || k == StrategyKind::VarWass;
}

std::string Strategy::display_name() const {
  if (!label.empty()) return label;
  std::string name = to_string(kind);
  if (eps_rule) {
    switch (eps_rule->kind) {
      case EpsRuleKind::MaxFact: name += " MaxFact"; break;
      case EpsRuleKind::ThreeQuarterMaxFact: name += " 3MaxFact/4"; break;
      case EpsRuleKind::HalfMaxFact: name += " MaxFact/2"; break;
      case EpsRuleKind::Fixed:
        name += " Fixed(" + format_csv_double(eps_rule->fixed_value) + ")";
        break;
    }
  }
  return name;
}

double turnover(const Eigen::MatrixXd& weights_path,
                const Eigen::MatrixXd& aligned_returns) {
  if (weights_path.rows() != aligned_returns.rows() ||
      weights_path.cols() != aligned_returns.cols())
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "weights and returns shapes disagree");
  const Eigen::Index days = weights_path.rows();
  if (days <= 1) return 0.0;
  double total = 0.0;
  for (Eigen::Index t = 0; t + 1 < days; ++t) {
    Eigen::VectorXd drifted = weights_path.row(t).transpose().cwiseProduct(
        (aligned_returns.row(t + 1).transpose().array() + 1.0).matrix());
    const double mass = drifted.sum();
    if (mass > 0.0)
      drifted /= mass;
    else
      drifted = weights_path.row(t).transpose();  // total wipeout; hold weights
    total += (weights_path.row(t + 1).transpose() - drifted).cwiseAbs().sum();
  }
  return total / static_cast<double>(days - 1);
}

double empirical_cvar(const std::vector<double>& losses, double alpha) {
  if (losses.empty())
    throw ValidationError(ValidationError::Code::EmptySample, "no losses");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError(ValidationError::Code::BadConfig,
                          "alpha must lie in (0,1)");
  std::vector<double> sorted(losses);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t t = sorted.size();
  // minimizer of tau + (1/(alpha T)) sum (loss - tau)+ is the
  // ceil((1-alpha)T)-th smallest loss
  auto k = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(t) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, t);
  const double tau = sorted[k - 1];
  double excess = 0.0;
  for (std::size_t i = k; i < t; ++i) excess += sorted[i] - tau;
  return tau + excess / (alpha * static_cast<double>(t));
}

double avg_assets(const Eigen::MatrixXd& weights_path, double threshold) {
  if (!(threshold > 0.0))
    throw ValidationError(ValidationError::Code::BadConfig,
                          "threshold must be > 0");
  if (weights_path.rows() == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index t = 0; t < weights_path.rows(); ++t)
    total += (weights_path.row(t).array() >= threshold).count();
  return total / static_cast<double>(weights_path.rows());
}

namespace {

Portfolio clean_portfolio(const Eigen::VectorXd& raw) {
  Eigen::VectorXd x = raw.cwiseMax(0.0);
  const double total = x.sum();
  if (!(total > 0.0))
    throw dro::SolverFailed("degenerate portfolio weights");
  return validate_portfolio(x / total);
}

// Minimizes x'Sx over {y : constraint_row'y = constraint_rhs, y >= 0} through
// the epigraph of sqrt(x'Sx + pad^2). The constant pad keeps the cone away
// from its vertex when S is singular along feasible directions and does not
// move the argmin.
Eigen::VectorXd minimize_quadratic_on_slice(const SampleMoments& moments,
                                            const Eigen::VectorXd& constraint_row,
                                            double constraint_rhs,
                                            const char* label) {
  const Eigen::Index m = moments.assets();
  const Eigen::MatrixXd L = dro::covariance_factor(moments.covariance);
  const double pad = std::sqrt(
      std::max(moments.covariance.trace() / static_cast<double>(m), 1e-12));
  socp::ConicProgram prog;
  prog.c = Eigen::VectorXd::Zero(m + 1);
  prog.c(m) = 1.0;
  const Eigen::Index rows = 1 + m + (m + 2);
  prog.A = Eigen::MatrixXd::Zero(rows, m + 1);
  prog.b = Eigen::VectorXd::Zero(rows);
  prog.A.row(0).head(m) = constraint_row.transpose();
  prog.b(0) = constraint_rhs;
  for (Eigen::Index j = 0; j < m; ++j) prog.A(1 + j, j) = -1.0;
  prog.A(1 + m, m) = -1.0;
  prog.A.block(2 + m, 0, m, m) = -L;
  prog.b(2 + 2 * m) = pad;
  prog.cones = {{socp::ConeKind::Zero, 1},
                {socp::ConeKind::Nonneg, m},
                {socp::ConeKind::SecondOrder, m + 2}};
  const socp::SolveReport rep = socp::solve(prog);
  if (rep.status != socp::SolverStatus::Optimal)
    throw dro::SolverFailed(std::string(label) + " subproblem did not solve");
  return rep.z.head(m);
}

Portfolio solve_min_variance(const SampleMoments& moments) {
  return clean_portfolio(minimize_quadratic_on_slice(
      moments, Eigen::VectorXd::Ones(moments.assets()), 1.0, "MinVar"));
}

// Rockafellar-Uryasev LP: min tau + (1/(alpha N)) sum w_i over the simplex
// with w_i >= -<x, xi_i> - tau, w_i >= 0.
Portfolio solve_min_cvar(const ReturnSample& window_sample, double alpha) {
  const Eigen::Index m = window_sample.assets();
  const Eigen::Index N = window_sample.periods();
  socp::ConicProgram prog;
  prog.c = Eigen::VectorXd::Zero(m + 1 + N);
  prog.c(m) = 1.0;
  prog.c.tail(N).setConstant(1.0 / (alpha * static_cast<double>(N)));
  const Eigen::Index rows = 1 + m + 2 * N;
  prog.A = Eigen::MatrixXd::Zero(rows, m + 1 + N);
  prog.b = Eigen::VectorXd::Zero(rows);
  prog.A.row(0).head(m).setOnes();
  prog.b(0) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) prog.A(1 + j, j) = -1.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    // w_i + <x, xi_i> + tau >= 0
    Eigen::Index r = 1 + m + i;
    prog.A.row(r).head(m) = -window_sample.returns().row(i);
    prog.A(r, m) = -1.0;
    prog.A(r, m + 1 + i) = -1.0;
    // w_i >= 0
    r = 1 + m + N + i;
    prog.A(r, m + 1 + i) = -1.0;
  }
  prog.cones = {{socp::ConeKind::Zero, 1},
                {socp::ConeKind::Nonneg, m + 2 * N}};
  const socp::SolveReport rep = socp::solve(prog);
  if (rep.status != socp::SolverStatus::Optimal)
    throw dro::SolverFailed("MinCVaR subproblem did not solve");
  return clean_portfolio(rep.z.head(m));
}

// Homogenized Sharpe maximization: min y'Sigma y s.t. mhat'y = 1, y >= 0,
// then renormalize y onto the simplex.
Portfolio solve_max_sharpe(const SampleMoments& moments) {
  return clean_portfolio(
      minimize_quadratic_on_slice(moments, moments.mean, 1.0, "MaxSR"));
}

}  // namespace

Portfolio baseline_weights(StrategyKind kind, const ReturnSample& window_sample,
                           double alpha, bool* degenerate_sharpe) {
  if (degenerate_sharpe) *degenerate_sharpe = false;
  const Eigen::Index m = window_sample.assets();
  switch (kind) {
    case StrategyKind::EW:
      return validate_portfolio(
          Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)));
    case StrategyKind::MinVar:
      return solve_min_variance(compute_moments(window_sample));
    case StrategyKind::MinCVaR:
      return solve_min_cvar(window_sample, alpha);
    case StrategyKind::MaxSR: {
      const SampleMoments moments = compute_moments(window_sample);
      if (moments.mean.maxCoeff() <= 0.0) {
        // no direction of positive expected return; Sharpe undefined
        if (degenerate_sharpe) *degenerate_sharpe = true;
        return solve_min_variance(moments);
      }
      return solve_max_sharpe(moments);
    }
    default:
      throw ValidationError(ValidationError::Code::BadConfig,
                            "not a baseline strategy kind");
  }
}

namespace {

struct DayFit {
  Portfolio weights;
  bool infeasible = false;
  bool fallback = false;
  double eps = std::numeric_limits<double>::quiet_NaN();
  double eps_max = std::numeric_limits<double>::quiet_NaN();
  double mu_max = std::numeric_limits<double>::quiet_NaN();
};

DayFit fit_strategy(const Strategy& strat, const ReturnSample& window_sample,
                    const SampleMoments& moments, double mu,
                    const Portfolio& previous) {
  const StrategyKind kind = strat.kind;
  if (!is_wasserstein(kind) && kind != StrategyKind::CVaRSAA &&
      kind != StrategyKind::VarSAA) {
    bool degenerate = false;
    Portfolio w = baseline_weights(kind, window_sample, strat.cfg.alpha, &degenerate);
    return DayFit{std::move(w), false, degenerate};
  }

  DroConfig cfg = strat.cfg;
  cfg.mu = mu;
  cfg.epsilon = 0.0;

  DayFit fit{previous};
  if (is_wasserstein(kind)) {
    fit.mu_max = feasibility::mu_max(moments);
    if (mu > fit.mu_max + 1e-12) {
      fit.infeasible = true;
      return fit;
    }
    const feasibility::FeasibilityReport fr =
        feasibility::eps_max_analytic(moments, mu, cfg.p);
    fit.eps_max = fr.eps_max;
    switch (strat.eps_rule->kind) {
      case EpsRuleKind::MaxFact:
        // the feasible set at eps_max is exactly the achieving portfolio
        fit.eps = fr.eps_max;
        fit.weights = fr.achieving_portfolio;
        return fit;
      case EpsRuleKind::ThreeQuarterMaxFact: fit.eps = 0.75 * fr.eps_max; break;
      case EpsRuleKind::HalfMaxFact: fit.eps = 0.5 * fr.eps_max; break;
      case EpsRuleKind::Fixed: fit.eps = strat.eps_rule->fixed_value; break;
    }
    cfg.epsilon = fit.eps;
  }

  try {
    RobustSolution sol;
    if (kind == StrategyKind::CVaRWass || kind == StrategyKind::CVaRSAA)
      sol = dro::solve_dro(dro::build_mean_cvar_socp(window_sample, cfg),
                           dro::ProblemKind::MeanCVaR);
    else
      sol = dro::solve_dro(dro::build_mean_variance_socp(moments, cfg),
                           dro::ProblemKind::MeanVariance);
    if (sol.status == SolveStatus::Optimal)
      fit.weights = *sol.portfolio;
    else
      fit.infeasible = true;
  } catch (const dro::SolverFailed&) {
    fit.infeasible = true;  // unconverged day handled like an infeasible one
  }
  return fit;
}

}  // namespace

BacktestReport run_backtest(const ReturnSample& data,
                            const std::vector<Strategy>& strategies,
                            Eigen::Index window, double mu,
                            double asset_threshold) {
  const Eigen::Index total = data.periods();
  const Eigen::Index m = data.assets();
  if (window < m + 1)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "window must be at least m+1");
  if (total < window + 1)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "need at least window+1 rows of data");
  for (const auto& s : strategies) {
    if (is_wasserstein(s.kind) != s.eps_rule.has_value())
      throw ValidationError(ValidationError::Code::BadConfig,
                            "eps_rule must be present exactly for Wasserstein "
                            "strategies");
    s.cfg.validate();
  }

  const Eigen::Index days = total - window;
  BacktestReport report;
  report.window = window;
  report.mu = mu;
  report.alpha = strategies.empty() ? 0.05 : strategies.front().cfg.alpha;
  for (Eigen::Index t = window; t < total; ++t)
    report.oos_labels.push_back(
        data.period_labels().empty()
            ? "t" + std::to_string(t)
            : data.period_labels()[static_cast<std::size_t>(t)]);

  const Eigen::VectorXd ew = Eigen::VectorXd::Constant(m, 1.0 / double(m));

  for (const auto& strat : strategies) {
    StrategyResult res;
    res.name = strat.display_name();
    res.daily_weights.resize(days, m);
    res.wealth_path.assign(1, 1.0);
    Portfolio prev = validate_portfolio(ew);

    for (Eigen::Index d = 0; d < days; ++d) {
      const Eigen::Index t = window + d;
      const ReturnSample window_sample = data.rows(t - window, window);
      const SampleMoments moments = compute_moments(window_sample);
      DayFit fit = [&]() {
        try {
          return fit_strategy(strat, window_sample, moments, mu, prev);
        } catch (const dro::SolverFailed&) {
          DayFit fallback{prev};
          fallback.infeasible = true;
          return fallback;
        }
      }();

      if (fit.infeasible) res.infeasible_days.push_back(d);
      if (fit.fallback) res.fallback_days.push_back(d);
      if (is_wasserstein(strat.kind)) {
        res.daily_eps.push_back(fit.eps);
        res.daily_eps_max.push_back(fit.eps_max);
        res.daily_mu_max.push_back(fit.mu_max);
      }
      res.daily_weights.row(d) = fit.weights.weights().transpose();
      const double realized = fit.weights.weights().dot(data.returns().row(t));
      res.realized_returns.push_back(realized);
      res.wealth_path.push_back(res.wealth_path.back() * (1.0 + realized));
      prev = std::move(fit.weights);
    }

    const double n_days = static_cast<double>(days);
    double mean = 0.0;
    for (double r : res.realized_returns) mean += r;
    mean /= n_days;
    double var = 0.0;
    for (double r : res.realized_returns) var += (r - mean) * (r - mean);
    var /= n_days;  // population convention, matching the biased covariance
    res.mean = mean;
    res.std_dev = std::sqrt(var);
    res.sharpe = res.std_dev > 0.0 ? mean / res.std_dev : 0.0;
    res.turnover = turnover(res.daily_weights,
                            data.returns().middleRows(window, days));
    res.avg_assets = avg_assets(res.daily_weights, asset_threshold);
    std::vector<double> losses(res.realized_returns.size());
    std::transform(res.realized_returns.begin(), res.realized_returns.end(),
                   losses.begin(), [](double r) { return -r; });
    res.cvar05 = empirical_cvar(losses, 0.05);
    report.strategies.push_back(std::move(res));
  }
  return report;
}

void write_metrics_csv(const BacktestReport& report, std::ostream& out) {
  out << "strategy,mean,std_dev,sharpe,turnover,avg_assets,cvar05\n";
  for (const auto& s : report.strategies) {
    out << s.name << ',' << format_csv_double(s.mean) << ','
        << format_csv_double(s.std_dev) << ',' << format_csv_double(s.sharpe)
        << ',' << format_csv_double(s.turnover) << ','
        << format_csv_double(s.avg_assets) << ',' << format_csv_double(s.cvar05)
        << '\n';
  }
}

void write_wealth_csv(const BacktestReport& report, std::ostream& out) {
  out << "date";
  for (const auto& s : report.strategies) out << ',' << s.name;
  out << '\n';
  if (report.strategies.empty()) return;
  const std::size_t days = report.oos_labels.size();
  out << "start";
  for (const auto& s : report.strategies)
    out << ',' << format_csv_double(s.wealth_path.at(0));
  out << '\n';
  for (std::size_t d = 0; d < days; ++d) {
    out << report.oos_labels[d];
    for (const auto& s : report.strategies)
      out << ',' << format_csv_double(s.wealth_path.at(d + 1));
    out << '\n';
  }
}

void write_detail_json(const BacktestReport& report, std::ostream& out) {
  nlohmann::json root;
  root["window"] = report.window;
  root["mu"] = report.mu;
  root["alpha"] = report.alpha;
  root["dates"] = report.oos_labels;
  auto& strategies = root["strategies"] = nlohmann::json::array();
  for (const auto& s : report.strategies) {
    nlohmann::json js;
    js["name"] = s.name;
    js["mean"] = s.mean;
    js["std_dev"] = s.std_dev;
    js["sharpe"] = s.sharpe;
    js["turnover"] = s.turnover;
    js["avg_assets"] = s.avg_assets;
    js["cvar05"] = s.cvar05;
    js["wealth_path"] = s.wealth_path;
    js["realized_returns"] = s.realized_returns;
    js["infeasible_days"] = s.infeasible_days;
    js["fallback_days"] = s.fallback_days;
    if (!s.daily_eps.empty()) {
      js["daily_eps"] = s.daily_eps;
      js["daily_eps_max"] = s.daily_eps_max;
      js["daily_mu_max"] = s.daily_mu_max;
    }
    auto& weights = js["daily_weights"] = nlohmann::json::array();
    for (Eigen::Index d = 0; d < s.daily_weights.rows(); ++d) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < s.daily_weights.cols(); ++j)
        row.push_back(s.daily_weights(d, j));
      weights.push_back(std::move(row));
    }
    strategies.push_back(std::move(js));
  }
  out << root.dump(2) << '\n';
}

}  // namespace wdro::backtest
