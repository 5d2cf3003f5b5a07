#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wdro/dro.hpp"
#include "wdro/model.hpp"

namespace wdro::backtest {

/// Rolling-horizon daily-rebalancing evaluation with a fixed-length sliding
/// estimation window, the robust strategies and their non-robust baselines.

enum class StrategyKind {
  CVaRWass,
  VarWass,
  CVaRSAA,
  VarSAA,
  EW,
  MinCVaR,
  MinVar,
  MaxSR,
};

enum class EpsRuleKind { MaxFact, ThreeQuarterMaxFact, HalfMaxFact, Fixed };

struct EpsRule {
  EpsRuleKind kind = EpsRuleKind::Fixed;
  double fixed_value = 0.0;  ///< used when kind == Fixed
};

struct Strategy {
  StrategyKind kind;
  DroConfig cfg;                    ///< mu/alpha/p; epsilon ignored unless Fixed rule
  std::optional<EpsRule> eps_rule;  ///< present iff kind is CVaRWass or VarWass
  std::string label;                ///< empty => derived from kind and rule

  std::string display_name() const;
};

const char* to_string(StrategyKind k);

bool is_wasserstein(StrategyKind k);

struct StrategyResult {
  std::string name;
  double mean = 0.0;
  double std_dev = 0.0;
  double sharpe = 0.0;
  double turnover = 0.0;
  double avg_assets = 0.0;
  double cvar05 = 0.0;
  std::vector<double> wealth_path;       ///< size T_oos + 1, starts at 1
  std::vector<double> realized_returns;  ///< size T_oos
  Eigen::MatrixXd daily_weights;         ///< T_oos x m
  std::vector<double> daily_eps;         ///< Wasserstein kinds, else empty
  std::vector<double> daily_eps_max;     ///< Wasserstein kinds, else empty
  std::vector<double> daily_mu_max;      ///< Wasserstein kinds, else empty
  std::vector<Eigen::Index> infeasible_days;  ///< out-of-sample day indices
  std::vector<Eigen::Index> fallback_days;    ///< degenerate MaxSR days etc.
};

struct BacktestReport {
  Eigen::Index window = 0;
  double mu = 0.0;
  double alpha = 0.05;
  std::vector<std::string> oos_labels;  ///< period labels of evaluated days
  std::vector<StrategyResult> strategies;
};

inline constexpr double kDefaultAssetThreshold = 1e-4;

/// Drifted-weight turnover: mean over t of sum_j |w(t+1,j) - w+(t,j)| where
/// w+(t,j) = w(t,j)(1 + r(t+1,j)) / sum_k w(t,k)(1 + r(t+1,k)).
double turnover(const Eigen::MatrixXd& weights_path,
                const Eigen::MatrixXd& aligned_returns);

/// Exact empirical CVaR: min over tau of tau + (1/(alpha*T)) sum (loss-tau)+,
/// the minimizer being the ceil((1-alpha)T)-th smallest loss.
double empirical_cvar(const std::vector<double>& losses, double alpha);

/// Mean count of weights >= threshold across days.
double avg_assets(const Eigen::MatrixXd& weights_path, double threshold);

/// Non-robust baseline allocations on an estimation window. MaxSR with no
/// positive sample mean is degenerate and falls back to MinVar; the caller
/// learns about it through the flag.
Portfolio baseline_weights(StrategyKind kind, const ReturnSample& window_sample,
                           double alpha = 0.05, bool* degenerate_sharpe = nullptr);

/// Runs every strategy through the data with the given sliding window:
/// day t in [window, T) is traded with weights fitted on rows [t-window, t).
/// Wasserstein strategies recompute the feasibility boundary each day and set
/// epsilon per their rule. Days whose fit problem is infeasible keep the
/// previous day's weights and are listed in the result (equal weights seed
/// the very first day).
BacktestReport run_backtest(const ReturnSample& data,
                            const std::vector<Strategy>& strategies,
                            Eigen::Index window, double mu,
                            double asset_threshold = kDefaultAssetThreshold);

/// Table-style metrics CSV: strategy,mean,std_dev,sharpe,turnover,avg_assets,cvar05.
void write_metrics_csv(const BacktestReport& report, std::ostream& out);
/// Wealth-path CSV: date column then one cumulative-wealth column per strategy.
void write_wealth_csv(const BacktestReport& report, std::ostream& out);
/// Full per-day detail (weights, epsilon, boundary values, flags) as JSON.
void write_detail_json(const BacktestReport& report, std::ostream& out);

}  // namespace wdro::backtest
