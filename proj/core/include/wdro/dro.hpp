#pragma once

#include <optional>
#include <stdexcept>

#include "wdro/model.hpp"
#include "wdro/socp.hpp"

namespace wdro::dro {

/// Robust-mean and robust-variance evaluators plus the two portfolio SOCP
/// builders. The evaluators accept precomputed per-sample values of a
/// q-Lipschitz integrand together with its Lipschitz constant, so they apply
/// beyond the portfolio instances.

class BoundedSupportRequiresP1 : public std::runtime_error {
 public:
  BoundedSupportRequiresP1()
      : std::runtime_error("support bound is only valid for Wasserstein order p=1") {}
};

class SolverFailed : public std::runtime_error {
 public:
  explicit SolverFailed(const std::string& what) : std::runtime_error(what) {}
};

class CovarianceNotPSD : public std::runtime_error {
 public:
  explicit CovarianceNotPSD(const std::string& what) : std::runtime_error(what) {}
};

/// Order-dependent coefficient 1/p + (p-1)/p^(1/(p-1)); equals 1 at p=1
/// (limit convention) and at p=2.
double c_factor(int p);

struct RobustBoundInput {
  Eigen::VectorXd values;  ///< F(x, xi_i) or G(x, xi_i), one per sample point
  double gamma = 0.0;      ///< Lipschitz constant of the integrand in xi
  double epsilon = 0.0;    ///< Wasserstein radius
  int p = 2;               ///< Wasserstein order
  /// sup over the support (upper bounds) or inf (lower bounds); only usable
  /// with p = 1.
  std::optional<double> support_bound;
};

/// Worst-case mean over the decision-dependent ball:
///   with support bound (p=1): min(sample mean + eps*gamma, bound);
///   without:                  sample mean + eps*gamma*c_factor(p).
double robust_mean_upper(const RobustBoundInput& in);

/// Best-case mean; mirror image of robust_mean_upper.
double robust_mean_lower(const RobustBoundInput& in);

/// Worst-case variance (p=2): (sqrt(biased sample variance) + eps*gamma)^2.
double robust_variance_upper(const Eigen::VectorXd& values, double gamma,
                             double epsilon);

enum class ProblemKind { MeanVariance, MeanCVaR };

/// Matrix L with L'L equal to the covariance, tolerant of the rank-deficient
/// matrices biased sample covariances produce for N < m: eigenvalues below
/// 1e-12 trigger a ridge of 1e-10*trace/m before factoring. Genuinely
/// indefinite input throws CovarianceNotPSD.
Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& covariance);

/// Epigraph SOCP for the robust mean-variance problem:
///   variables (x, u, v), minimize u + eps*v
///   s.t. ||L x|| <= u (L'L = covariance), ||x|| <= v,
///        mhat'x - eps*v >= mu, sum x = 1, x >= 0.
/// The squared objective is recovered at reporting time. Requires p = q = 2.
socp::ConicProgram build_mean_variance_socp(const SampleMoments& moments,
                                            const DroConfig& cfg);

/// SOCP for the robust mean-CVaR problem:
///   variables (x, tau, v, u_1..u_N), minimize (eps/alpha)*v + (1/N) sum u_i
///   s.t. u_i >= tau, u_i >= -<x,xi_i>/alpha + (1-1/alpha)*tau,
///        ||x|| <= v, mhat'x - eps*v >= mu, sum x = 1, x >= 0.
/// Requires p = q = 2.
socp::ConicProgram build_mean_cvar_socp(const ReturnSample& sample,
                                        const DroConfig& cfg);

/// Solves a program produced by one of the builders and extracts the
/// portfolio-level solution. The mean-variance objective is reported squared.
/// Throws SolverFailed when the conic solver stops at its iteration limit;
/// solver infeasibility maps to status Infeasible.
RobustSolution solve_dro(const socp::ConicProgram& prog, ProblemKind kind,
                         const socp::SolverSettings& settings = {});

}  // namespace wdro::dro
