#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wdro::socp {

/// Self-contained first-order conic solver. Standard form:
///
///   minimize    c'z
///   subject to  A z + s = b,   s in K,
///
/// where K is the Cartesian product of the listed cone blocks, in order.
/// A SecondOrder block of dimension d holds (t, u) with ||u||_2 <= t.

enum class ConeKind { Zero, Nonneg, SecondOrder };

struct ConeBlock {
  ConeKind kind;
  Eigen::Index dim;
};

class MalformedProgram : public std::runtime_error {
 public:
  explicit MalformedProgram(const std::string& what) : std::runtime_error(what) {}
};

struct ConicProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<ConeBlock> cones;

  Eigen::Index n_var() const { return c.size(); }
  Eigen::Index n_con() const { return b.size(); }

  /// Throws MalformedProgram when dimensions or cone sizes are inconsistent.
  void validate() const;
};

enum class SolverStatus { Optimal, Infeasible, MaxIterations };

const char* to_string(SolverStatus s);

/// Residuals are unnormalized:
///   primal = ||A z + s - b||_2, dual = ||A'y + c||_2, gap = |c'z + b'y|.
struct SolveReport {
  SolverStatus status = SolverStatus::MaxIterations;
  Eigen::VectorXd z;  ///< primal variables
  Eigen::VectorXd y;  ///< dual variables (one per constraint row)
  Eigen::VectorXd s;  ///< slack vector, in K at optimality
  double objective = std::numeric_limits<double>::quiet_NaN();
  double primal_residual = std::numeric_limits<double>::quiet_NaN();
  double dual_residual = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  /// Primal-infeasibility certificate: y_ray in K* with b'y_ray = -1 and
  /// ||A' y_ray|| <= tol. Present when status == Infeasible.
  std::optional<Eigen::VectorXd> dual_ray;
};

struct SolverSettings {
  double tol = 1e-7;
  int max_iter = 200000;
  double relaxation = 1.5;   ///< over-relaxation parameter in (0,2)
  int check_interval = 25;   ///< residual test cadence, iterations
  bool equilibrate = true;   ///< Ruiz scaling of A (cone-block uniform rows)
  /// Active-set refinement once the iterate is near-feasible; a refined point
  /// is only accepted when its recomputed residuals beat tol.
  bool polish = true;
};

/// Operator-splitting iteration on the homogeneous self-dual embedding of the
/// primal-dual pair. Deterministic given inputs. Returns Optimal with all
/// residuals <= tol, Infeasible with a certificate ray, or MaxIterations.
SolveReport solve(const ConicProgram& prog, const SolverSettings& settings = {});
SolveReport solve(const ConicProgram& prog, double tol, int max_iter);

struct ResidualTriple {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

/// Recomputes the report's residuals from scratch, directly from the
/// definitions above; shares no code with the solve loop.
ResidualTriple certify(const ConicProgram& prog, const SolveReport& report);

/// Euclidean projection of one cone block (in place over the span).
void project_cone_block(Eigen::Ref<Eigen::VectorXd> span, ConeKind kind);

/// Plain-text dump (one line per matrix row) for external cross-checking.
void dump_program(const ConicProgram& prog, std::ostream& out);

}  // namespace wdro::socp
