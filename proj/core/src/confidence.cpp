#include "wdro/confidence.hpp"

#include <cmath>

#include "json.hpp"
#include "wdro/rng.hpp"

namespace wdro::confidence {

const char* to_string(ReplicateOutcome o) {
  switch (o) {
    case ReplicateOutcome::Satisfied: return "Satisfied";
    case ReplicateOutcome::Violated: return "Violated";
    case ReplicateOutcome::Infeasible: return "Infeasible";
  }
  return "?";
}

std::string ConfidenceReport::to_json() const {
  nlohmann::json j;
  j["epsilon"] = epsilon;
  j["replicates"] = replicates;
  j["n_train"] = n_train;
  j["n_valid"] = n_valid;
  j["level_percent"] = level_percent;
  j["seed"] = seed;
  j["all_infeasible"] = all_infeasible;
  j["train_rows_below_assets"] = train_rows_below_assets;
  auto& flags = j["per_replicate"] = nlohmann::json::array();
  for (ReplicateOutcome o : per_replicate) flags.push_back(to_string(o));
  return j.dump(2);
}

ConfidenceReport expected_confidence(const ReturnSample& sample,
                                     const DroConfig& cfg, dro::ProblemKind kind,
                                     int replicates, double train_fraction,
                                     std::uint64_t seed) {
  cfg.validate();
  if (replicates < 1)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "need at least one replicate");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ValidationError(ValidationError::Code::BadConfig,
                          "train fraction must lie in (0,1)");
  const Eigen::Index n = sample.periods();
  const Eigen::Index m = sample.assets();
  const Eigen::Index n_train = static_cast<Eigen::Index>(
      std::ceil(train_fraction * static_cast<double>(n)));
  const Eigen::Index n_valid = n - n_train;
  if (n_valid < 1)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "train fraction leaves no validation rows");

  ConfidenceReport report;
  report.epsilon = cfg.epsilon;
  report.replicates = replicates;
  report.n_train = n_train;
  report.n_valid = n_valid;
  report.seed = seed;
  report.train_rows_below_assets = n_train < m;
  report.per_replicate.reserve(static_cast<std::size_t>(replicates));

  int satisfied = 0;
  int infeasible = 0;
  for (int k = 0; k < replicates; ++k) {
    rng::engine eng(rng::derive_seed(seed, static_cast<std::uint64_t>(k)));
    Eigen::MatrixXd resampled(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
      resampled.row(i) = sample.returns().row(static_cast<Eigen::Index>(
          rng::bounded(eng, static_cast<std::uint64_t>(n))));

    ReturnSample train(resampled.topRows(n_train));
    const Eigen::VectorXd valid_mean =
        resampled.bottomRows(n_valid).colwise().mean();

    ReplicateOutcome outcome = ReplicateOutcome::Infeasible;
    try {
      RobustSolution sol;
      if (kind == dro::ProblemKind::MeanVariance)
        sol = dro::solve_dro(dro::build_mean_variance_socp(compute_moments(train), cfg),
                             kind);
      else
        sol = dro::solve_dro(dro::build_mean_cvar_socp(train, cfg), kind);
      if (sol.status == SolveStatus::Optimal) {
        const double oos = valid_mean.dot(sol.portfolio->weights());
        outcome = oos >= cfg.mu ? ReplicateOutcome::Satisfied
                                : ReplicateOutcome::Violated;
      }
    } catch (const dro::SolverFailed&) {
      // an unconverged training problem counts against the level, like an
      // infeasible one
      outcome = ReplicateOutcome::Infeasible;
    }
    if (outcome == ReplicateOutcome::Satisfied) ++satisfied;
    if (outcome == ReplicateOutcome::Infeasible) ++infeasible;
    report.per_replicate.push_back(outcome);
  }

  report.level_percent =
      100.0 * static_cast<double>(satisfied) / static_cast<double>(replicates);
  report.all_infeasible = (infeasible == replicates);
  return report;
}

}  // namespace wdro::confidence
