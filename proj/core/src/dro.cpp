#include "wdro/dro.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace wdro::dro {

double c_factor(int p) {
  if (p < 1)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "Wasserstein order p must be >= 1");
  if (p == 1) return 1.0;  // limit of the expression as p -> 1
  const double pd = static_cast<double>(p);
  return 1.0 / pd + (pd - 1.0) / std::pow(pd, 1.0 / (pd - 1.0));
}

namespace {

void check_bound_input(const RobustBoundInput& in) {
  if (in.values.size() < 1)
    throw ValidationError(ValidationError::Code::EmptySample,
                          "robust bound needs at least one value");
  if (!in.values.allFinite())
    throw ValidationError(ValidationError::Code::NonFiniteValue,
                          "robust bound values must be finite");
  if (!(in.gamma >= 0.0))
    throw ValidationError(ValidationError::Code::BadConfig, "gamma must be >= 0");
  if (!(in.epsilon >= 0.0))
    throw ValidationError(ValidationError::Code::BadConfig, "epsilon must be >= 0");
  if (in.support_bound && in.p != 1) throw BoundedSupportRequiresP1();
}

}  // namespace

double robust_mean_upper(const RobustBoundInput& in) {
  check_bound_input(in);
  const double mean = in.values.mean();
  if (in.support_bound)
    return std::min(mean + in.epsilon * in.gamma, *in.support_bound);
  return mean + in.epsilon * in.gamma * c_factor(in.p);
}

double robust_mean_lower(const RobustBoundInput& in) {
  check_bound_input(in);
  const double mean = in.values.mean();
  if (in.support_bound)
    return std::max(mean - in.epsilon * in.gamma, *in.support_bound);
  return mean - in.epsilon * in.gamma * c_factor(in.p);
}

double robust_variance_upper(const Eigen::VectorXd& values, double gamma,
                             double epsilon) {
  if (values.size() < 1)
    throw ValidationError(ValidationError::Code::EmptySample,
                          "robust variance needs at least one value");
  if (!(gamma >= 0.0) || !(epsilon >= 0.0))
    throw ValidationError(ValidationError::Code::BadConfig,
                          "gamma and epsilon must be >= 0");
  const double n = static_cast<double>(values.size());
  const Eigen::VectorXd centered = values.array() - values.mean();
  const double biased_var = std::max(centered.squaredNorm() / n, 0.0);
  const double root = std::sqrt(biased_var) + epsilon * gamma;
  return root * root;
}

Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& covariance) {
  const Eigen::Index m = covariance.rows();
  if (m < 1 || covariance.cols() != m)
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "covariance must be square and nonempty");
  Eigen::MatrixXd sym = 0.5 * (covariance + covariance.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw CovarianceNotPSD("eigendecomposition of covariance failed");
  const double scale = sym.trace() / static_cast<double>(m);
  const double lambda_min = eig.eigenvalues().minCoeff();
  if (lambda_min < -1e-10 * std::max(1.0, scale))
    throw CovarianceNotPSD("covariance has a significantly negative eigenvalue");
  double ridge = 0.0;
  if (lambda_min < 1e-12) ridge = 1e-10 * scale;
  const Eigen::VectorXd lifted =
      (eig.eigenvalues().array() + ridge).max(0.0).sqrt();
  return lifted.asDiagonal() * eig.eigenvectors().transpose();
}

namespace {

void require_p2q2(const DroConfig& cfg) {
  cfg.validate();
  if (cfg.p != 2 || cfg.q != 2)
    throw ValidationError(ValidationError::Code::BadConfig,
                          "portfolio SOCP builders require p = q = 2");
}

}  // namespace

// Variable layout: z = (x_1..x_m, u, v). Rows: simplex equality; x >= 0 (m);
// robust mean row; SOC (u, Lx); SOC (v, x).
socp::ConicProgram build_mean_variance_socp(const SampleMoments& moments,
                                            const DroConfig& cfg) {
  require_p2q2(cfg);
  const Eigen::Index m = moments.assets();
  if (moments.covariance.rows() != m || moments.covariance.cols() != m)
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "moments mean/covariance sizes disagree");
  const Eigen::MatrixXd L = covariance_factor(moments.covariance);

  const Eigen::Index n = m + 2;
  const Eigen::Index u_idx = m;
  const Eigen::Index v_idx = m + 1;
  const Eigen::Index rows = 1 + (m + 1) + 2 * (m + 1);

  socp::ConicProgram prog;
  prog.c = Eigen::VectorXd::Zero(n);
  prog.c(u_idx) = 1.0;
  prog.c(v_idx) = cfg.epsilon;
  prog.A = Eigen::MatrixXd::Zero(rows, n);
  prog.b = Eigen::VectorXd::Zero(rows);

  prog.A.row(0).head(m).setOnes();
  prog.b(0) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) prog.A(1 + j, j) = -1.0;
  const Eigen::Index robust = 1 + m;
  prog.A.row(robust).head(m) = -moments.mean.transpose();
  prog.A(robust, v_idx) = cfg.epsilon;
  prog.b(robust) = -cfg.mu;

  const Eigen::Index soc_u = robust + 1;
  prog.A(soc_u, u_idx) = -1.0;
  prog.A.block(soc_u + 1, 0, m, m) = -L;
  const Eigen::Index soc_v = soc_u + m + 1;
  prog.A(soc_v, v_idx) = -1.0;
  prog.A.block(soc_v + 1, 0, m, m) = -Eigen::MatrixXd::Identity(m, m);

  prog.cones = {{socp::ConeKind::Zero, 1},
                {socp::ConeKind::Nonneg, m + 1},
                {socp::ConeKind::SecondOrder, m + 1},
                {socp::ConeKind::SecondOrder, m + 1}};
  return prog;
}

// Variable layout: z = (x_1..x_m, tau, v, u_1..u_N). Rows: simplex equality;
// x >= 0 (m); u_i >= tau (N); u_i >= -<x,xi_i>/alpha + (1-1/alpha) tau (N);
// robust mean row; SOC (v, x).
socp::ConicProgram build_mean_cvar_socp(const ReturnSample& sample,
                                        const DroConfig& cfg) {
  require_p2q2(cfg);
  const Eigen::Index m = sample.assets();
  const Eigen::Index N = sample.periods();
  const double alpha = cfg.alpha;
  const Eigen::VectorXd mean = compute_moments(sample).mean;

  const Eigen::Index n = m + 2 + N;
  const Eigen::Index tau_idx = m;
  const Eigen::Index v_idx = m + 1;
  const Eigen::Index rows = 1 + m + 2 * N + 1 + (m + 1);

  socp::ConicProgram prog;
  prog.c = Eigen::VectorXd::Zero(n);
  prog.c(v_idx) = cfg.epsilon / alpha;
  prog.c.tail(N).setConstant(1.0 / static_cast<double>(N));
  prog.A = Eigen::MatrixXd::Zero(rows, n);
  prog.b = Eigen::VectorXd::Zero(rows);

  prog.A.row(0).head(m).setOnes();
  prog.b(0) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) prog.A(1 + j, j) = -1.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Index r = 1 + m + i;
    prog.A(r, tau_idx) = 1.0;
    prog.A(r, m + 2 + i) = -1.0;
  }
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Index r = 1 + m + N + i;
    prog.A.row(r).head(m) = -sample.returns().row(i) / alpha;
    prog.A(r, tau_idx) = 1.0 - 1.0 / alpha;
    prog.A(r, m + 2 + i) = -1.0;
  }
  const Eigen::Index robust = 1 + m + 2 * N;
  prog.A.row(robust).head(m) = -mean.transpose();
  prog.A(robust, v_idx) = cfg.epsilon;
  prog.b(robust) = -cfg.mu;

  const Eigen::Index soc_v = robust + 1;
  prog.A(soc_v, v_idx) = -1.0;
  prog.A.block(soc_v + 1, 0, m, m) = -Eigen::MatrixXd::Identity(m, m);

  prog.cones = {{socp::ConeKind::Zero, 1},
                {socp::ConeKind::Nonneg, m + 2 * N + 1},
                {socp::ConeKind::SecondOrder, m + 1}};
  return prog;
}

namespace {

struct Layout {
  Eigen::Index m = 0;
  Eigen::Index robust_row = 0;
};

Layout derive_layout(const socp::ConicProgram& prog, ProblemKind kind) {
  Layout lay;
  if (kind == ProblemKind::MeanVariance) {
    if (prog.cones.size() != 4)
      throw ValidationError(ValidationError::Code::DimensionMismatch,
                            "not a mean-variance program");
    lay.m = prog.cones[3].dim - 1;
    lay.robust_row = 1 + lay.m;
  } else {
    if (prog.cones.size() != 3)
      throw ValidationError(ValidationError::Code::DimensionMismatch,
                            "not a mean-CVaR program");
    lay.m = prog.cones[2].dim - 1;
    const Eigen::Index N = prog.n_var() - lay.m - 2;
    lay.robust_row = 1 + lay.m + 2 * N;
  }
  return lay;
}

}  // namespace

RobustSolution solve_dro(const socp::ConicProgram& prog, ProblemKind kind,
                         const socp::SolverSettings& settings) {
  const Layout lay = derive_layout(prog, kind);
  const socp::SolveReport rep = socp::solve(prog, settings);

  RobustSolution sol;
  if (rep.status == socp::SolverStatus::Infeasible) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  if (rep.status == socp::SolverStatus::MaxIterations)
    throw SolverFailed("conic solver hit its iteration limit");

  // clamp stray negatives from the first-order solve, renormalize onto the
  // simplex, then validate
  Eigen::VectorXd x = rep.z.head(lay.m).cwiseMax(0.0);
  const double total = x.sum();
  if (!(total > 0.0)) throw SolverFailed("solver returned a degenerate portfolio");
  x /= total;
  sol.portfolio = validate_portfolio(x);
  if (kind == ProblemKind::MeanCVaR) sol.tau = rep.z(lay.m);

  sol.objective = rep.objective;
  if (kind == ProblemKind::MeanVariance)
    sol.objective = rep.objective * rep.objective;

  const Eigen::VectorXd mean = -prog.A.row(lay.robust_row).head(lay.m).transpose();
  const double epsilon = prog.A(lay.robust_row, lay.m + 1);
  sol.robust_constraint_value = mean.dot(x) - epsilon * x.norm();
  sol.status = SolveStatus::Optimal;
  return sol;
}

}  // namespace wdro::dro
