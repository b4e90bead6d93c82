#pragma once

#include <string_view>
#include <vector>

#include "tubestab/grid.hpp"
#include "tubestab/model.hpp"

namespace tubestab {

struct SteadyStateResult {
  Profile profile;
  double residual_norm = 0.0;  ///< infinity norm of steady_residual(profile)
  int iterations = 0;          ///< convergence checks performed
  int newton_steps = 0;        ///< accepted Newton updates
  bool converged = false;
};

/// Discrete residual of D C'' - v C' - k C^n = 0 with the closed-loop
/// boundary rows (D/v) C'(0) - (1 - alpha) C(0) and C'(l).
/// Throws NegativeBase for negative values when n is not an integer.
std::vector<double> steady_residual(const ClosedLoopSetup& setup, const Profile& p);

struct SteadyOptions {
  double tol = 1e-10;
  int max_iter = 50;
  int max_halvings = 20;
};

/// Damped Newton on the discrete steady-state system. The Jacobian is the
/// bordered tridiagonal linear part with -k n C^(n-1) added on the diagonal.
/// A trial step is halved until the residual norm decreases and the iterate
/// stays nonnegative (to -1e-12 for integer n, exactly for fractional n).
/// Returns a non-converged result when max_iter steps or the line search
/// are exhausted; throws SingularJacobian if a linear solve fails.
SteadyStateResult solve_steady(const ClosedLoopSetup& setup, const Profile& guess,
                               SteadyOptions opts = {});

/// "zero" if the profile vanishes to 1e-8 (the size a 1e-10 residual can
/// leave behind), otherwise "nontrivial".
std::string_view steady_branch(const Profile& steady);

}  // namespace tubestab
