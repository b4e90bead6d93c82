#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tubestab/discretization.hpp"
#include "tubestab/grid.hpp"
#include "tubestab/model.hpp"
#include "tubestab/numerics.hpp"

namespace tubestab {

enum class SimForm {
  Deviation,  ///< integrate xi = C - Cbar with r(xi) = k Cbar^n - k (xi + Cbar)^n
  Raw,        ///< integrate C with -k C^n and subtract Cbar afterwards
};

struct SimConfig {
  Grid grid{1.0, 201};
  double dt = 0.05;
  double t_final = 2000.0;
  std::size_t snapshot_stride = 100;
  SimForm form = SimForm::Deviation;
  /// Stop once ||xi(t)|| < norm_floor_ratio * ||xi0||.
  double norm_floor_ratio = 1e-13;
};

struct Snapshot {
  double time;
  Profile deviation;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> norms;  ///< trapezoidal L2 norm of xi(t)
  std::vector<Snapshot> snapshots;
  Profile steady;
  std::size_t invariant_violations = 0;
  double tol_inv = 0.0;
  double norm_floor = 0.0;
};

/// Crank-Nicolson pair for xi' = A_h xi. Interior rows of the implicit
/// matrix are I - dt/2 A_h and of the explicit one I + dt/2 A_h; the two
/// boundary rows are the discrete inlet/outlet constraints, enforced at the
/// new time level.
class CrankNicolsonOperator {
 public:
  CrankNicolsonOperator(const ClosedLoopSetup& setup, const Grid& grid, double dt);

  const DiscreteOperator& spatial() const noexcept { return op_; }
  double dt() const noexcept { return dt_; }

  /// Right-hand side (I + dt/2 A_h) xi plus dt * forcing on interior rows,
  /// zero on the boundary rows.
  std::vector<double> explicit_part(std::span<const double> xi,
                                    std::span<const double> forcing) const;

  void solve_in_place(std::span<double> rhs) const { implicit_.solve_in_place(rhs); }

  const BorderedTridiagonal& implicit_matrix() const noexcept { return implicit_matrix_; }

 private:
  DiscreteOperator op_;
  double dt_;
  BorderedTridiagonal implicit_matrix_;
  BorderedFactorization implicit_;
};

CrankNicolsonOperator step_operator(const ClosedLoopSetup& setup, const Grid& grid, double dt);

/// Closed-loop reaction term r(xi) = k Cbar^n - k (xi + Cbar)^n per node.
std::vector<double> reaction_increment(const ReactorParams& params, std::span<const double> xi,
                                       std::span<const double> steady);

/// One IMEX step: trapezoidal linear part, reaction evaluated at the
/// midpoint of xi^n and a predictor solution. Advances xi in place.
void imex_step(const CrankNicolsonOperator& cn, const ReactorParams& params,
               std::span<const double> steady, std::vector<double>& xi);

/// Integrates the closed loop from xi0 about the steady profile. Records
/// ||xi|| at every step, a snapshot every cfg.snapshot_stride steps and at
/// the final time, and counts nodes where C = xi + Cbar leaves
/// [-tol_inv, M phi + tol_inv], tol_inv = 1e-8 max(M phi).
/// Throws NonFiniteState and NegativeConcentration (fractional n only).
/// k = 0 is accepted and integrates the linear closed loop.
TrajectoryRecord simulate(const ClosedLoopSetup& setup, const Profile& steady, const Profile& xi0,
                          const SimConfig& cfg);

struct SnapshotBounds {
  double time;
  double min_concentration;
  double max_ratio;  ///< max over x of C(x,t) / (M phi(x))
  bool violated;
};

struct InvarianceSummary {
  std::vector<SnapshotBounds> snapshots;
  std::size_t violating_snapshots = 0;
  double tol_inv = 0.0;
  bool ok() const noexcept { return violating_snapshots == 0; }
};

InvarianceSummary invariance_report(const TrajectoryRecord& record, const ClosedLoopSetup& setup);

/// Residuals of C_max = M phi as a super-solution: the interior slack
/// -D C'' + v C' + k C^n (should be >= 0) and the two boundary identities.
struct SupersolutionReport {
  double min_interior_slack;
  double inlet_residual_exact;   ///< (D/v) C'(0) - (1-alpha) C(0), exact derivative
  double outlet_residual_exact;  ///< C'(l), exact derivative
  double inlet_residual_fd;      ///< same with one-sided second-order stencils
  double outlet_residual_fd;
};

SupersolutionReport supersolution_check(const ClosedLoopSetup& setup, const Grid& grid);

}  // namespace tubestab
