#include "wdro/market_sim.hpp"

#include <cmath>

#include "wdro/rng.hpp"

namespace wdro::market_sim {

MarketModel MarketModel::with_defaults(Eigen::Index m, double psi_std) {
  MarketModel model;
  model.m = m;
  model.psi_std = psi_std;
  model.means = Eigen::VectorXd::LinSpaced(m, 1.0, static_cast<double>(m)) * 0.03;
  model.idio_stds =
      Eigen::VectorXd::LinSpaced(m, 1.0, static_cast<double>(m)) * 0.025;
  model.validate();
  return model;
}

void MarketModel::validate() const {
  if (m < 1)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "market needs at least one asset");
  if (!(psi_std >= 0.0))
    throw ValidationError(ValidationError::Code::BadConfig,
                          "psi_std must be >= 0");
  if (!means.size() || !idio_stds.size())
    throw ValidationError(ValidationError::Code::BadConfig,
                          "means/idio_stds not materialized; use with_defaults "
                          "or fill the fields");
  if (means.size() != m || idio_stds.size() != m)
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "means/idio_stds length must equal m");
  if (!means.allFinite() || !idio_stds.allFinite() || idio_stds.minCoeff() < 0.0)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "means must be finite and idio_stds nonnegative");
}

ReturnSample generate(const MarketModel& model, Eigen::Index n_periods,
                      std::uint64_t seed) {
  model.validate();
  if (n_periods < 1)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "need at least one period");
  rng::engine eng(seed);
  Eigen::MatrixXd returns(n_periods, model.m);
  for (Eigen::Index i = 0; i < n_periods; ++i) {
    const double psi = rng::normal(eng, 0.0, model.psi_std);
    for (Eigen::Index j = 0; j < model.m; ++j)
      returns(i, j) = psi + rng::normal(eng, model.means(j), model.idio_stds(j));
  }
  return ReturnSample(std::move(returns));
}

SampleMoments true_moments(const MarketModel& model) {
  model.validate();
  Eigen::MatrixXd cov =
      Eigen::MatrixXd::Constant(model.m, model.m, model.psi_std * model.psi_std);
  cov += model.idio_stds.array().square().matrix().asDiagonal();
  return SampleMoments{model.means, std::move(cov)};
}

double true_return(const MarketModel& model, const Portfolio& x) {
  model.validate();
  if (x.assets() != model.m)
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "portfolio size does not match market");
  return model.means.dot(x.weights());
}

double true_variance(const MarketModel& model, const Portfolio& x) {
  const SampleMoments mom = true_moments(model);
  if (x.assets() != model.m)
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "portfolio size does not match market");
  return x.weights().dot(mom.covariance * x.weights());
}

double true_cvar_gaussian(const MarketModel& model, const Portfolio& x,
                          double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError(ValidationError::Code::BadConfig,
                          "alpha must lie in (0,1)");
  const double r = true_return(model, x);
  const double v = std::max(true_variance(model, x), 0.0);
  if (v == 0.0) return -r;  // deterministic loss
  const double z = rng::normal_inv_cdf(1.0 - alpha);
  return -r + std::sqrt(v) * rng::normal_pdf(z) / alpha;
}

}  // namespace wdro::market_sim
