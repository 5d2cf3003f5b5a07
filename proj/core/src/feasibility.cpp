#include "wdro/feasibility.hpp"

#include <cmath>

#include "wdro/dro.hpp"

namespace wdro::feasibility {

double mu_max(const SampleMoments& moments) {
  if (moments.mean.size() < 1)
    throw ValidationError(ValidationError::Code::EmptySample, "empty moments");
  return moments.mean.maxCoeff();
}

namespace {

Portfolio vertex_portfolio(Eigen::Index m, Eigen::Index j) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  x(j) = 1.0;
  return validate_portfolio(x);
}

// max over the simplex of mhat'x - t_coeff*||x||, solved as a small SOCP.
struct TrialResult {
  double value;
  Eigen::VectorXd x;
};

TrialResult solve_trial(const Eigen::VectorXd& mean, double t_coeff) {
  const Eigen::Index m = mean.size();
  socp::ConicProgram prog;
  prog.c = Eigen::VectorXd::Zero(m + 1);
  prog.c.head(m) = -mean;
  prog.c(m) = t_coeff;
  const Eigen::Index rows = 1 + m + (m + 1);
  prog.A = Eigen::MatrixXd::Zero(rows, m + 1);
  prog.b = Eigen::VectorXd::Zero(rows);
  prog.A.row(0).head(m).setOnes();
  prog.b(0) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) prog.A(1 + j, j) = -1.0;
  prog.A(1 + m, m) = -1.0;
  prog.A.block(2 + m, 0, m, m) = -Eigen::MatrixXd::Identity(m, m);
  prog.cones = {{socp::ConeKind::Zero, 1},
                {socp::ConeKind::Nonneg, m},
                {socp::ConeKind::SecondOrder, m + 1}};
  socp::SolverSettings settings;
  settings.tol = 1e-10;
  const socp::SolveReport rep = socp::solve(prog, settings);
  if (rep.status != socp::SolverStatus::Optimal)
    throw dro::SolverFailed("feasibility trial subproblem did not solve");
  Eigen::VectorXd x = rep.z.head(m).cwiseMax(0.0);
  x /= x.sum();
  return TrialResult{-rep.objective, std::move(x)};
}

}  // namespace

FeasibilityReport eps_max(const SampleMoments& moments, double mu, int p) {
  const double mm = mu_max(moments);
  const double cp = dro::c_factor(p);
  const Eigen::Index m = moments.assets();
  Eigen::Index best_vertex = 0;
  moments.mean.maxCoeff(&best_vertex);

  if (mu > mm + 1e-12)
    throw MuAboveMax("target mu exceeds the attainable maximum expected return");
  if (mu >= mm)
    return FeasibilityReport{mm, 0.0, vertex_portfolio(m, best_vertex), 0};

  // eps_max is the largest t with  max_x mhat'x - t*cp*||x|| >= mu; the trial
  // value is non-increasing in t, so bisect. The upper bracket follows from
  // mhat'x - mu <= sqrt(m)*(max_j mhat_j - mu)*||x||.
  double lo = 0.0;
  double hi = std::sqrt(static_cast<double>(m)) * (mm - mu) / cp;
  TrialResult best = solve_trial(moments.mean, 0.0);
  int iterations = 0;
  while (iterations < 60 && (hi - lo) > 1e-9 * std::max(hi, 1e-300)) {
    const double mid = 0.5 * (lo + hi);
    TrialResult trial = solve_trial(moments.mean, mid * cp);
    ++iterations;
    if (trial.value >= mu) {
      lo = mid;
      best = std::move(trial);
    } else {
      hi = mid;
    }
  }
  return FeasibilityReport{mm, lo, validate_portfolio(best.x), iterations};
}

FeasibilityReport eps_max_analytic(const SampleMoments& moments, double mu, int p) {
  const double mm = mu_max(moments);
  const double cp = dro::c_factor(p);
  const Eigen::Index m = moments.assets();
  if (mu > mm + 1e-12)
    throw MuAboveMax("target mu exceeds the attainable maximum expected return");

  const Eigen::VectorXd gain = (moments.mean.array() - mu).max(0.0);
  const double norm = gain.norm();
  if (norm <= 0.0) {
    Eigen::Index best_vertex = 0;
    moments.mean.maxCoeff(&best_vertex);
    return FeasibilityReport{mm, 0.0, vertex_portfolio(m, best_vertex), 0};
  }
  return FeasibilityReport{mm, norm / cp, validate_portfolio(gain / gain.sum()), 0};
}

}  // namespace wdro::feasibility
