#pragma once

#include <cstdint>

#include "wdro/model.hpp"

namespace wdro::market_sim {

/// Synthetic single-factor Gaussian market: the return of asset i is
/// psi + zeta_i with psi ~ N(0, psi_std^2) systematic and
/// zeta_i ~ N(means_i, idio_stds_i^2) idiosyncratic, all independent.
/// Defaults follow the convention means_i = i*3% and idio_stds_i = i*2.5%
/// (asset indices starting at 1), i.e. assets ordered from low return and
/// volatility to high. The percent figures are standard deviations, not
/// variances; override the fields for other conventions.
struct MarketModel {
  Eigen::Index m = 10;
  double psi_std = 0.02;
  Eigen::VectorXd means;      ///< empty => i*0.03
  Eigen::VectorXd idio_stds;  ///< empty => i*0.025

  /// Model with defaults materialized; validates sizes and signs.
  static MarketModel with_defaults(Eigen::Index m = 10, double psi_std = 0.02);
  void validate() const;
};

/// N rows of psi*1 + zeta. Deterministic per seed; draw order is one psi then
/// zeta_1..zeta_m per row, one engine draw per normal.
ReturnSample generate(const MarketModel& model, Eigen::Index n_periods,
                      std::uint64_t seed);

/// mean = means; covariance = psi_std^2 * ones + diag(idio_stds^2).
SampleMoments true_moments(const MarketModel& model);

/// R(x) = means'x.
double true_return(const MarketModel& model, const Portfolio& x);

/// V(x) = x' Sigma x against the true covariance.
double true_variance(const MarketModel& model, const Portfolio& x);

/// CVaR_alpha of the Gaussian loss -<x, xi>:
///   -R(x) + sqrt(V(x)) * pdf(Phi^-1(1-alpha)) / alpha.
double true_cvar_gaussian(const MarketModel& model, const Portfolio& x,
                          double alpha);

}  // namespace wdro::market_sim
