#pragma once

#include <stdexcept>

#include "wdro/model.hpp"
#include "wdro/socp.hpp"

namespace wdro::feasibility {

/// Feasibility boundary of the robust expected-return constraint over the
/// long-only simplex: the largest target mu that admits any feasible
/// portfolio, and for a given mu the largest radius eps that keeps the
/// problem feasible.

class MuAboveMax : public std::runtime_error {
 public:
  explicit MuAboveMax(const std::string& what) : std::runtime_error(what) {}
};

struct FeasibilityReport {
  double mu_max = 0.0;
  double eps_max = 0.0;
  Portfolio achieving_portfolio;  ///< argmax of the eps_max program
  int bisection_iterations = 0;
};

/// max over the simplex of mhat'x = max_j mhat_j.
double mu_max(const SampleMoments& moments);

/// sup over the simplex of (mhat'x - mu) / (||x|| * c_factor(p)), computed by
/// bisection on t: each trial solves max mhat'x - t*c_factor(p)*||x|| over the
/// simplex through the conic solver and tests the value against mu. Relative
/// tolerance 1e-9, 60-iteration cap. Throws MuAboveMax when mu exceeds
/// mu_max beyond 1e-12.
FeasibilityReport eps_max(const SampleMoments& moments, double mu, int p);

/// Closed form of the same supremum: with a = mhat - mu*1,
///   eps_max = ||max(a,0)||_2 / c_factor(p),
/// attained at x proportional to max(a,0) (vertex of the best asset when no
/// entry is positive). Used where eps_max is evaluated many times per second;
/// agreement with the bisection path is covered by tests.
FeasibilityReport eps_max_analytic(const SampleMoments& moments, double mu, int p);

}  // namespace wdro::feasibility
