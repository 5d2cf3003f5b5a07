#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wdro {

/// Thrown when an input violates a documented invariant. The code names the
/// violated invariant so callers (and tests) can distinguish failure modes.
class ValidationError : public std::runtime_error {
 public:
  enum class Code {
    EmptySample,
    NonFiniteValue,
    LabelSizeMismatch,
    SumNotOne,
    NegativeWeight,
    DimensionMismatch,
    BadConfig,
    CsvFormat,
  };

  ValidationError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// N x m matrix of per-period fractional asset returns, one row per period.
/// Construction validates: N >= 1, m >= 1, all entries finite, label vectors
/// either empty or of matching length. Immutable after construction.
class ReturnSample {
 public:
  ReturnSample(Eigen::MatrixXd returns,
               std::vector<std::string> asset_labels = {},
               std::vector<std::string> period_labels = {});

  const Eigen::MatrixXd& returns() const { return returns_; }
  const std::vector<std::string>& asset_labels() const { return asset_labels_; }
  const std::vector<std::string>& period_labels() const { return period_labels_; }

  Eigen::Index periods() const { return returns_.rows(); }
  Eigen::Index assets() const { return returns_.cols(); }

  /// Sample restricted to rows [first, first+count).
  ReturnSample rows(Eigen::Index first, Eigen::Index count) const;

 private:
  Eigen::MatrixXd returns_;
  std::vector<std::string> asset_labels_;
  std::vector<std::string> period_labels_;
};

/// Long-only portfolio on the simplex: weights sum to 1 within 1e-8 and no
/// weight is below -1e-8. Construct through validate_portfolio.
class Portfolio {
 public:
  const Eigen::VectorXd& weights() const { return weights_; }
  Eigen::Index assets() const { return weights_.size(); }
  double norm2() const { return weights_.norm(); }

 private:
  friend Portfolio validate_portfolio(const Eigen::VectorXd& weights);
  explicit Portfolio(Eigen::VectorXd w) : weights_(std::move(w)) {}
  Eigen::VectorXd weights_;
};

inline constexpr double kPortfolioSumTol = 1e-8;
inline constexpr double kPortfolioWeightFloor = -1e-8;

/// Checks the simplex invariants; throws ValidationError with code
/// DimensionMismatch, SumNotOne or NegativeWeight.
Portfolio validate_portfolio(const Eigen::VectorXd& weights);

/// Ambiguity-set and constraint parameters shared by both portfolio problems.
struct DroConfig {
  double epsilon = 0.0;  ///< Wasserstein radius, >= 0
  int p = 2;             ///< Wasserstein order, integer >= 1
  int q = 2;             ///< ground-metric norm index (portfolio instances use 2)
  double alpha = 0.05;   ///< CVaR tail level in (0,1)
  double mu = 0.0;       ///< target expected per-period return

  /// Throws ValidationError(BadConfig) when a bound is violated.
  void validate() const;
};

/// Sample mean vector and biased covariance (divisor N).
struct SampleMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  Eigen::Index assets() const { return mean.size(); }
};

/// mean_j = (1/N) sum_i returns(i,j);
/// covariance = (1/N) sum_i (row_i - mean)(row_i - mean)^T.
SampleMoments compute_moments(const ReturnSample& sample);

enum class SolveStatus { Optimal, Infeasible, NumericalLimit };

const char* to_string(SolveStatus s);

/// Outcome of one robust portfolio solve.
struct RobustSolution {
  SolveStatus status = SolveStatus::NumericalLimit;
  std::optional<Portfolio> portfolio;         ///< present when status == Optimal
  std::optional<double> tau;                  ///< CVaR auxiliary, mean-CVaR only
  double objective = std::numeric_limits<double>::quiet_NaN();
  /// Value of mhat'x - eps*||x|| at the solution.
  double robust_constraint_value = std::numeric_limits<double>::quiet_NaN();
};

/// Returns-CSV format: header `date,<label1>,...,<labelm>`, then one row per
/// period: ISO-8601 date followed by m decimal fractional returns. Missing or
/// non-numeric cells are rejected (ValidationError::Code::CsvFormat).
ReturnSample read_returns_csv(std::istream& in);
ReturnSample read_returns_csv_file(const std::string& path);
void write_returns_csv(const ReturnSample& sample, std::ostream& out);
void write_returns_csv_file(const ReturnSample& sample, const std::string& path);

/// Fixed 12-significant-digit float formatting used by every CSV writer, so
/// repeated runs produce byte-identical files.
std::string format_csv_double(double v);

}  // namespace wdro
