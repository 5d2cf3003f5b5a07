#include "wdro/socp.hpp"

#include <Eigen/LU>
#include <cmath>
#include <ostream>

namespace wdro::socp {

void ConicProgram::validate() const {
  if (c.size() < 1) throw MalformedProgram("program has no variables");
  if (A.cols() != c.size())
    throw MalformedProgram("A column count does not match objective length");
  if (A.rows() != b.size())
    throw MalformedProgram("A row count does not match right-hand side length");
  Eigen::Index total = 0;
  for (const auto& blk : cones) {
    if (blk.dim < 1) throw MalformedProgram("cone block with dimension < 1");
    total += blk.dim;
  }
  if (total != b.size())
    throw MalformedProgram("cone dimensions do not sum to constraint count");
  if (!A.allFinite() || !b.allFinite() || !c.allFinite())
    throw MalformedProgram("program data contains a non-finite entry");
}

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal: return "Optimal";
    case SolverStatus::Infeasible: return "Infeasible";
    case SolverStatus::MaxIterations: return "MaxIterations";
  }
  return "?";
}

void project_cone_block(Eigen::Ref<Eigen::VectorXd> span, ConeKind kind) {
  switch (kind) {
    case ConeKind::Zero:
      span.setZero();
      return;
    case ConeKind::Nonneg:
      span = span.cwiseMax(0.0);
      return;
    case ConeKind::SecondOrder: {
      const double t = span(0);
      const double nu = span.tail(span.size() - 1).norm();
      if (nu <= t) return;
      if (nu <= -t) {
        span.setZero();
        return;
      }
      const double beta = 0.5 * (t + nu);
      span(0) = beta;
      span.tail(span.size() - 1) *= beta / nu;
      return;
    }
  }
}

namespace {

// Ruiz equilibration of A. Rows belonging to one second-order block share a
// scale factor (the cone is not invariant to per-row scaling); Zero/Nonneg
// rows scale individually. Returns diagonal scalings (row, col).
struct Scaling {
  Eigen::VectorXd row;
  Eigen::VectorXd col;
};

Scaling equilibrate(Eigen::MatrixXd& A, const std::vector<ConeBlock>& cones,
                    int sweeps) {
  const Eigen::Index mm = A.rows();
  const Eigen::Index n = A.cols();
  Scaling sc{Eigen::VectorXd::Ones(mm), Eigen::VectorXd::Ones(n)};

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    Eigen::Index off = 0;
    for (const auto& blk : cones) {
      if (blk.kind == ConeKind::SecondOrder) {
        const double peak =
            A.middleRows(off, blk.dim).cwiseAbs().maxCoeff();
        if (peak > 0.0) {
          const double f = 1.0 / std::sqrt(peak);
          A.middleRows(off, blk.dim) *= f;
          sc.row.segment(off, blk.dim) *= f;
        }
      } else {
        for (Eigen::Index i = off; i < off + blk.dim; ++i) {
          const double peak = A.row(i).cwiseAbs().maxCoeff();
          if (peak > 0.0) {
            const double f = 1.0 / std::sqrt(peak);
            A.row(i) *= f;
            sc.row(i) *= f;
          }
        }
      }
      off += blk.dim;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double peak = A.col(j).cwiseAbs().maxCoeff();
      if (peak > 0.0) {
        const double f = 1.0 / std::sqrt(peak);
        A.col(j) *= f;
        sc.col(j) *= f;
      }
    }
  }
  return sc;
}

}  // namespace

namespace {

struct Candidate {
  Eigen::VectorXd z, y, s;
  double pres = std::numeric_limits<double>::infinity();
  double dres = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  double max_residual() const { return std::max({pres, dres, gap}); }
};

Eigen::VectorXd project_primal_cone(const ConicProgram& prog,
                                    const Eigen::VectorXd& raw) {
  Eigen::VectorXd s = raw;
  Eigen::Index off = 0;
  for (const auto& blk : prog.cones) {
    project_cone_block(s.segment(off, blk.dim), blk.kind);
    off += blk.dim;
  }
  return s;
}

Eigen::VectorXd project_dual_cone_vec(const ConicProgram& prog,
                                      const Eigen::VectorXd& raw) {
  Eigen::VectorXd y = raw;
  Eigen::Index off = 0;
  for (const auto& blk : prog.cones) {
    if (blk.kind != ConeKind::Zero)
      project_cone_block(y.segment(off, blk.dim), blk.kind);
    off += blk.dim;
  }
  return y;
}

Candidate evaluate(const ConicProgram& prog, Eigen::VectorXd z, Eigen::VectorXd y,
                   Eigen::VectorXd s) {
  Candidate c;
  c.pres = (prog.A * z + s - prog.b).norm();
  c.dres = (prog.A.transpose() * y + prog.c).norm();
  c.gap = std::abs(prog.c.dot(z) + prog.b.dot(y));
  c.z = std::move(z);
  c.y = std::move(y);
  c.s = std::move(s);
  return c;
}

// Least-squares correction of x0 toward M x = rhs (minimum-norm step, keeps
// the untouched coordinates of a near-solution in place).
Eigen::VectorXd nearest_solution(const Eigen::MatrixXd& m,
                                 const Eigen::VectorXd& rhs,
                                 const Eigen::VectorXd& x0) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  return x0 + cod.solve(rhs - m * x0);
}

// Active-set refinement. Classifies each cone block from the current ADMM
// candidate, freezes second-order boundary directions, and solves the
// resulting primal/dual equality systems; Gauss-Newton rounds refresh the
// boundary directions. Around that inner solve runs a small active-set loop:
// rows whose multiplier comes out distinctly negative are released, and when
// the dual system stays inconsistent its residual is a descent direction
// whose ratio test picks the row to hold next. The caller accepts a result
// only on the strength of its recomputed residuals, so a wrong ending set is
// harmless.
Candidate polish(const ConicProgram& prog, const Candidate& cand,
                 double tol) {
  const Eigen::Index n = prog.n_var();
  enum class BlockState { Inactive, Vertex, Boundary };

  std::vector<BlockState> state(prog.cones.size());
  std::vector<Eigen::Index> offsets(prog.cones.size());
  {
    Eigen::Index off = 0;
    for (std::size_t bi = 0; bi < prog.cones.size(); ++bi) {
      const auto& blk = prog.cones[bi];
      offsets[bi] = off;
      switch (blk.kind) {
        case ConeKind::Zero:
          state[bi] = BlockState::Vertex;
          break;
        case ConeKind::Nonneg:
          state[bi] = BlockState::Boundary;  // handled per row below
          break;
        case ConeKind::SecondOrder: {
          const double ns = cand.s.segment(off, blk.dim).norm();
          const double ny = cand.y.segment(off, blk.dim).norm();
          if (ny <= 1e-3 * std::max(ns, 1e-12))
            state[bi] = BlockState::Inactive;
          else if (ns <= 1e-3 * ny)
            state[bi] = BlockState::Vertex;
          else
            state[bi] = BlockState::Boundary;
          break;
        }
      }
      off += blk.dim;
    }
  }

  // Dual support: Zero rows and vertex second-order rows (always held) plus
  // every Nonneg row (held when it looks active). Boundary second-order
  // blocks contribute one scale unknown each.
  std::vector<Eigen::Index> dual_rows;
  std::vector<char> held;
  std::vector<char> nonneg;  // rows that may pivot in and out
  std::vector<std::size_t> boundary_blocks;
  for (std::size_t bi = 0; bi < prog.cones.size(); ++bi) {
    const auto& blk = prog.cones[bi];
    const Eigen::Index off = offsets[bi];
    if (blk.kind == ConeKind::Nonneg) {
      for (Eigen::Index i = off; i < off + blk.dim; ++i) {
        dual_rows.push_back(i);
        held.push_back(cand.y(i) >= cand.s(i));
        nonneg.push_back(1);
      }
    } else if (state[bi] == BlockState::Vertex) {
      for (Eigen::Index i = off; i < off + blk.dim; ++i) {
        dual_rows.push_back(i);
        held.push_back(1);
        nonneg.push_back(0);
      }
    } else if (blk.kind == ConeKind::SecondOrder &&
               state[bi] == BlockState::Boundary) {
      boundary_blocks.push_back(bi);
    }
  }

  const auto nd = static_cast<Eigen::Index>(dual_rows.size());
  const auto nb = static_cast<Eigen::Index>(boundary_blocks.size());
  const int rounds = nb > 0 ? 3 : 1;

  std::vector<Eigen::VectorXd> dirs(boundary_blocks.size());
  for (std::size_t k = 0; k < boundary_blocks.size(); ++k) {
    const auto bi = boundary_blocks[k];
    const Eigen::VectorXd tail =
        cand.s.segment(offsets[bi] + 1, prog.cones[bi].dim - 1);
    const double norm = tail.norm();
    dirs[k] = norm > 1e-14 ? (tail / norm).eval()
                           : Eigen::VectorXd::Zero(tail.size());
  }

  Eigen::VectorXd z = cand.z;
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(nb);
  for (Eigen::Index k = 0; k < nb; ++k)
    rho(k) = cand.y(offsets[boundary_blocks[static_cast<std::size_t>(k)]]);
  Eigen::VectorXd ye(nd);
  for (Eigen::Index i = 0; i < nd; ++i)
    ye(i) = cand.y(dual_rows[static_cast<std::size_t>(i)]);

  Eigen::MatrixXd ap;  // primal equality rows of the current held set
  Eigen::VectorXd dual_residual_vec(n);

  // One KKT Newton step for the current held set: unknowns (dz, ye, rho),
  // curvature of the boundary cones rho * A_u' (I - w w') A_u / ||u|| in the
  // stationarity rows, all solved jointly in least squares (anchored, so rank
  // deficiencies from redundant rows stay harmless). Quadratic in the
  // candidate error, which lets the caller polish from coarse iterates.
  const auto solve_held = [&](int newton_rounds) {
    for (int round = 0; round < newton_rounds; ++round) {
      Eigen::Index ne = 0;
      for (char h : held) ne += h != 0;
      ap.resize(ne + nb, n);
      Eigen::VectorXd bp(ne + nb);
      Eigen::Index r = 0;
      for (Eigen::Index i = 0; i < nd; ++i) {
        if (!held[static_cast<std::size_t>(i)]) continue;
        ap.row(r) = prog.A.row(dual_rows[static_cast<std::size_t>(i)]);
        bp(r) = prog.b(dual_rows[static_cast<std::size_t>(i)]);
        ++r;
      }
      for (Eigen::Index k = 0; k < nb; ++k) {
        const auto bi = boundary_blocks[static_cast<std::size_t>(k)];
        const Eigen::Index off = offsets[bi];
        const Eigen::Index d = prog.cones[bi].dim - 1;
        const auto& w = dirs[static_cast<std::size_t>(k)];
        ap.row(ne + k) =
            prog.A.row(off) - w.transpose() * prog.A.middleRows(off + 1, d);
        bp(ne + k) = prog.b(off) - w.dot(prog.b.segment(off + 1, d));
      }

      const Eigen::Index nu = n + ne + nb;  // unknowns: dz, ye, rho
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nu, nu);
      Eigen::VectorXd rhs(nu);

      // stationarity rows: curvature * dz + A_E' ye + g_k rho_k = -c
      for (Eigen::Index k = 0; k < nb; ++k) {
        const auto bi = boundary_blocks[static_cast<std::size_t>(k)];
        const Eigen::Index off = offsets[bi];
        const Eigen::Index d = prog.cones[bi].dim - 1;
        const auto& w = dirs[static_cast<std::size_t>(k)];
        const Eigen::VectorXd tail =
            prog.b.segment(off + 1, d) - prog.A.middleRows(off + 1, d) * z;
        const double tail_norm = std::max(tail.norm(), 1e-12);
        const double rho_bar = std::max(rho(k), 0.0);
        if (rho_bar > 0.0) {
          const Eigen::MatrixXd au = prog.A.middleRows(off + 1, d);
          Eigen::MatrixXd proj_au = au;
          proj_au -= w * (w.transpose() * au);
          kkt.topLeftCorner(n, n) +=
              (rho_bar / tail_norm) * au.transpose() * proj_au;
        }
        kkt.block(0, n + ne + k, n, 1) =
            prog.A.row(off).transpose() -
            prog.A.middleRows(off + 1, d).transpose() * w;
      }
      {
        Eigen::Index col = 0;
        for (Eigen::Index i = 0; i < nd; ++i) {
          if (!held[static_cast<std::size_t>(i)]) continue;
          kkt.block(0, n + col, n, 1) =
              prog.A.row(dual_rows[static_cast<std::size_t>(i)]).transpose();
          ++col;
        }
      }
      rhs.head(n) = -prog.c;

      // primal rows: A_act dz = residual of the held equalities
      kkt.block(n, 0, ne + nb, n) = ap;
      rhs.segment(n, ne + nb) = bp - ap * z;

      Eigen::VectorXd anchor = Eigen::VectorXd::Zero(nu);
      {
        Eigen::Index col = 0;
        for (Eigen::Index i = 0; i < nd; ++i)
          if (held[static_cast<std::size_t>(i)]) anchor(n + col++) = ye(i);
      }
      anchor.tail(nb) = rho;
      const Eigen::VectorXd sol = nearest_solution(kkt, rhs, anchor);

      z += sol.head(n);
      {
        Eigen::Index col = 0;
        ye.setZero();
        for (Eigen::Index i = 0; i < nd; ++i)
          if (held[static_cast<std::size_t>(i)]) ye(i) = sol(n + col++);
      }
      rho = sol.tail(nb);

      // refresh boundary directions from the new primal point
      for (Eigen::Index k = 0; k < nb; ++k) {
        const auto bi = boundary_blocks[static_cast<std::size_t>(k)];
        const Eigen::Index off = offsets[bi];
        const Eigen::Index d = prog.cones[bi].dim - 1;
        const Eigen::VectorXd tail =
            prog.b.segment(off + 1, d) - prog.A.middleRows(off + 1, d) * z;
        const double norm = tail.norm();
        if (norm > 1e-14) dirs[static_cast<std::size_t>(k)] = tail / norm;
      }

      // dual stationarity misfit at the refreshed directions
      dual_residual_vec = -prog.c;
      for (Eigen::Index i = 0; i < nd; ++i)
        if (held[static_cast<std::size_t>(i)])
          dual_residual_vec -=
              prog.A.row(dual_rows[static_cast<std::size_t>(i)]).transpose() * ye(i);
      for (Eigen::Index k = 0; k < nb; ++k) {
        const auto bi = boundary_blocks[static_cast<std::size_t>(k)];
        const Eigen::Index off = offsets[bi];
        const Eigen::Index d = prog.cones[bi].dim - 1;
        dual_residual_vec -=
            rho(k) * (prog.A.row(off).transpose() -
                      prog.A.middleRows(off + 1, d).transpose() *
                          dirs[static_cast<std::size_t>(k)]);
      }
    }
  };

  // full candidate from the current working state
  const auto assemble = [&]() {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(prog.n_con());
    for (Eigen::Index i = 0; i < nd; ++i)
      y(dual_rows[static_cast<std::size_t>(i)]) = ye(i);
    for (Eigen::Index k = 0; k < nb; ++k) {
      const auto bi = boundary_blocks[static_cast<std::size_t>(k)];
      const Eigen::Index off = offsets[bi];
      const Eigen::Index d = prog.cones[bi].dim - 1;
      y(off) = rho(k);
      y.segment(off + 1, d) = -rho(k) * dirs[static_cast<std::size_t>(k)];
    }
    // evaluate honestly: slacks projected onto K, duals onto K*
    const Eigen::VectorXd s = project_primal_cone(prog, prog.b - prog.A * z);
    return evaluate(prog, z, project_dual_cone_vec(prog, y), s);
  };

  Candidate best = cand;
  for (int pivots = 0; pivots < 12; ++pivots) {
    solve_held(pivots == 0 ? rounds : 1);
    Candidate now = assemble();
    if (now.max_residual() < best.max_residual()) best = std::move(now);
    if (best.max_residual() <= tol) return best;

    // drop pivot: release the most negative held multiplier
    Eigen::Index worst = -1;
    double worst_val = -1e-9 * (1.0 + ye.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < nd; ++i)
      if (held[static_cast<std::size_t>(i)] && nonneg[static_cast<std::size_t>(i)] &&
          ye(i) < worst_val) {
        worst_val = ye(i);
        worst = i;
      }
    if (worst >= 0) {
      held[static_cast<std::size_t>(worst)] = 0;
      ye(worst) = 0.0;
      continue;
    }

    // add pivot: a leftover dual residual projected onto the equality null
    // space is a feasible descent direction; walk to the blocking row
    if (dual_residual_vec.norm() <= 1e-12 * (1.0 + prog.c.norm())) break;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ap);
    // subtract the row-space component: min-norm solution of ap x = ap r
    Eigen::VectorXd d =
        dual_residual_vec - cod.solve(ap * dual_residual_vec);
    const double dnorm = d.norm();
    if (dnorm <= 1e-10 * dual_residual_vec.norm()) break;

    const Eigen::VectorXd slack = prog.b - prog.A * z;
    const Eigen::VectorXd along = prog.A * d;
    Eigen::Index blocking = -1;
    double step = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < nd; ++i) {
      if (held[static_cast<std::size_t>(i)] || !nonneg[static_cast<std::size_t>(i)])
        continue;
      const Eigen::Index row = dual_rows[static_cast<std::size_t>(i)];
      if (along(row) <= 1e-12 * dnorm) continue;
      const double ratio = std::max(slack(row), 0.0) / along(row);
      if (ratio < step) {
        step = ratio;
        blocking = i;
      }
    }
    if (blocking < 0) break;
    z += step * d;
    held[static_cast<std::size_t>(blocking)] = 1;
  }

  return best;
}

}  // namespace

SolveReport solve(const ConicProgram& prog, const SolverSettings& settings) {
  prog.validate();
  if (!(settings.tol > 0.0)) throw MalformedProgram("tolerance must be > 0");
  if (settings.max_iter < 1) throw MalformedProgram("max_iter must be >= 1");

  const Eigen::Index n = prog.n_var();
  const Eigen::Index mm = prog.n_con();
  const Eigen::Index dim = n + mm + 1;

  Eigen::MatrixXd As = prog.A;
  Scaling sc{Eigen::VectorXd::Ones(mm), Eigen::VectorXd::Ones(n)};
  if (settings.equilibrate) sc = equilibrate(As, prog.cones, 10);
  const Eigen::VectorXd bs = sc.row.asDiagonal() * prog.b;
  const Eigen::VectorXd cs = sc.col.asDiagonal() * prog.c;

  // Homogeneous self-dual embedding: find (u, v) with v = Q u,
  // u in R^n x K* x R+, v in {0}^n x K x R+, Q skew-symmetric from (A, b, c).
  // Iterate: linear solve against (I + Q), cone projection, dual update.
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(dim, dim);
  M.block(0, n, n, mm) = As.transpose();
  M.block(n, 0, mm, n) = -As;
  M.col(dim - 1).head(n) = cs;
  M.col(dim - 1).segment(n, mm) = bs;
  M.row(dim - 1).head(n) = -cs.transpose();
  M.row(dim - 1).segment(n, mm) = -bs.transpose();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);

  Eigen::VectorXd u = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  u(dim - 1) = 1.0;
  v(dim - 1) = 1.0;

  const auto project_dual_cone = [&](Eigen::Ref<Eigen::VectorXd> w) {
    Eigen::Index off = n;
    for (const auto& blk : prog.cones) {
      // dual of the Zero cone is free; Nonneg and SecondOrder are self-dual
      if (blk.kind != ConeKind::Zero)
        project_cone_block(w.segment(off, blk.dim), blk.kind);
      off += blk.dim;
    }
    w(dim - 1) = std::max(w(dim - 1), 0.0);
  };

  SolveReport report;
  report.z = Eigen::VectorXd::Zero(n);
  report.y = Eigen::VectorXd::Zero(mm);
  report.s = Eigen::VectorXd::Zero(mm);

  const double alpha = settings.relaxation;
  Eigen::VectorXd utilde(dim), relaxed(dim);

  const auto fill_report = [&](const Candidate& cand, int iters_done,
                               SolverStatus status) {
    report.z = cand.z;
    report.y = cand.y;
    report.s = cand.s;
    report.primal_residual = cand.pres;
    report.dual_residual = cand.dres;
    report.gap = cand.gap;
    report.objective = prog.c.dot(cand.z);
    report.iterations = iters_done;
    report.status = status;
  };

  // polish is re-attempted only once the plain iterate has halved its
  // residual since the previous attempt
  double last_polish_at = 1e-3;

  const auto converged = [&](int iters_done) -> bool {
    const double tau = u(dim - 1);
    if (tau > 1e-11) {
      // accelerated iterates may sit slightly outside the cones; measuring
      // the projected candidate keeps the reported residuals honest
      Candidate cand = evaluate(
          prog, sc.col.cwiseProduct(u.head(n)) / tau,
          project_dual_cone_vec(prog, sc.row.cwiseProduct(u.segment(n, mm)) / tau),
          project_primal_cone(prog, v.segment(n, mm).cwiseQuotient(sc.row) / tau));
      const double raw = cand.max_residual();
      if (raw <= settings.tol) {
        fill_report(cand, iters_done, SolverStatus::Optimal);
        return true;
      }
      if (settings.polish && raw <= last_polish_at) {
        last_polish_at = 0.1 * raw;
        Candidate refined = polish(prog, cand, settings.tol);
        if (refined.max_residual() <= settings.tol) {
          fill_report(refined, iters_done, SolverStatus::Optimal);
          return true;
        }
      }
      fill_report(cand, iters_done, SolverStatus::MaxIterations);
    }
    // primal-infeasibility ray: y in K* with b'y = -1, ||A'y|| <= tol
    Eigen::VectorXd ray =
        project_dual_cone_vec(prog, sc.row.cwiseProduct(u.segment(n, mm)));
    const double t = -prog.b.dot(ray);
    if (t > 1e-12) {
      ray /= t;
      if ((prog.A.transpose() * ray).norm() <= settings.tol) {
        report.status = SolverStatus::Infeasible;
        report.dual_ray = std::move(ray);
        report.iterations = iters_done;
        return true;
      }
    }
    return false;
  };

  for (int k = 1; k <= settings.max_iter; ++k) {
    utilde = lu.solve(u + v);
    relaxed = alpha * utilde + (1.0 - alpha) * u;
    Eigen::VectorXd next = relaxed - v;
    project_dual_cone(next);
    v += next - relaxed;
    u = std::move(next);
    if (k % settings.check_interval == 0 || k == settings.max_iter) {
      if (converged(k)) return report;
    }
  }
  report.status = SolverStatus::MaxIterations;
  report.iterations = settings.max_iter;
  return report;
}

SolveReport solve(const ConicProgram& prog, double tol, int max_iter) {
  SolverSettings s;
  s.tol = tol;
  s.max_iter = max_iter;
  return solve(prog, s);
}

ResidualTriple certify(const ConicProgram& prog, const SolveReport& report) {
  ResidualTriple r;
  r.primal = (prog.A * report.z + report.s - prog.b).norm();
  r.dual = (prog.A.transpose() * report.y + prog.c).norm();
  r.gap = std::abs(prog.c.dot(report.z) + prog.b.dot(report.y));
  return r;
}

void dump_program(const ConicProgram& prog, std::ostream& out) {
  out << "n_var " << prog.n_var() << " n_con " << prog.n_con() << '\n';
  out << "cones";
  for (const auto& blk : prog.cones) {
    switch (blk.kind) {
      case ConeKind::Zero: out << " zero:"; break;
      case ConeKind::Nonneg: out << " nonneg:"; break;
      case ConeKind::SecondOrder: out << " soc:"; break;
    }
    out << blk.dim;
  }
  out << '\n' << "c";
  for (Eigen::Index j = 0; j < prog.n_var(); ++j) out << ' ' << prog.c(j);
  out << '\n' << "b";
  for (Eigen::Index i = 0; i < prog.n_con(); ++i) out << ' ' << prog.b(i);
  out << '\n';
  for (Eigen::Index i = 0; i < prog.n_con(); ++i) {
    out << "A" << i;
    for (Eigen::Index j = 0; j < prog.n_var(); ++j) out << ' ' << prog.A(i, j);
    out << '\n';
  }
}

}  // namespace wdro::socp
