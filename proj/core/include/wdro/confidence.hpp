#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wdro/dro.hpp"
#include "wdro/model.hpp"

namespace wdro::confidence {

/// Bootstrap estimate of the probability that a robust solution satisfies the
/// expected-return constraint out-of-sample.

enum class ReplicateOutcome { Satisfied, Violated, Infeasible };

const char* to_string(ReplicateOutcome o);

struct ConfidenceReport {
  double epsilon = 0.0;
  int replicates = 0;  ///< K
  Eigen::Index n_train = 0;
  Eigen::Index n_valid = 0;
  double level_percent = 0.0;  ///< 100 * |Satisfied| / K
  std::vector<ReplicateOutcome> per_replicate;
  std::uint64_t seed = 0;
  bool all_infeasible = false;
  /// n_train < m; the estimate still runs but deserves a warning upstream.
  bool train_rows_below_assets = false;

  std::string to_json() const;
};

inline constexpr int kDefaultReplicates = 200;
inline constexpr double kDefaultTrainFraction = 0.7;

/// For each of K replicates: resample N rows with replacement (replicate
/// seeds derived from `seed` by index, see rng.hpp), take the first
/// ceil(train_fraction*N) rows as the training set and the rest as the
/// validation set, solve the robust problem of the given kind on the training
/// set at cfg.epsilon, and mark Satisfied when the validation-sample mean
/// return of the solution reaches cfg.mu. Replicates whose training problem
/// is infeasible count as Infeasible (never Satisfied). Deterministic given
/// all arguments.
ConfidenceReport expected_confidence(const ReturnSample& sample,
                                     const DroConfig& cfg,
                                     dro::ProblemKind kind,
                                     int replicates = kDefaultReplicates,
                                     double train_fraction = kDefaultTrainFraction,
                                     std::uint64_t seed = 0);

}  // namespace wdro::confidence
