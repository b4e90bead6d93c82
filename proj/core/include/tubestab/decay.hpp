#pragma once

#include <optional>

#include "tubestab/model.hpp"
#include "tubestab/numerics.hpp"
#include "tubestab/pde_sim.hpp"

namespace tubestab {

/// Decay characteristics for one gain: the spectral bound lambda0, the
/// Lipschitz constant L of the reaction term on the invariant set, the
/// certified exponent lambda_T = lambda0/K^2 + L and, when a trajectory was
/// simulated, the fitted Lyapunov exponent lambda_num.
struct DecayReport {
  double alpha = 0.0;
  double lambda0 = 0.0;
  double lipschitz_L = 0.0;
  double lambda_T = 0.0;
  std::optional<double> lambda_num;
  bool certificate_holds = false;  ///< L < -lambda0 / K^2
  double omega = 0.0;              ///< -lambda_T
  double K = 1.0;
};

/// L = k n (M (l^2 v (1-alpha) + 2 D l) / (v (1-alpha)))^(n-1) = k n (M phi(l))^(n-1).
double lipschitz_constant(const ClosedLoopSetup& setup);

/// Inverse of lipschitz_constant in M: the amplitude giving the target L.
double amplitude_for_lipschitz(const ReactorParams& params, double alpha, double lipschitz_L);

/// Assembles lambda_T = lambda0/K^2 + L, omega and the certificate. The
/// semigroup generated by the closed-loop operator is a contraction, so K = 1
/// for this reactor. Throws InvalidSpectrum if lambda0 >= 0.
DecayReport theoretical_rate(const ClosedLoopSetup& setup, double lambda0, double K = 1.0);

/// Least-squares slope of ln ||xi(t)|| over the trailing window_fraction of
/// the samples whose norm exceeds the record's norm floor.
/// Throws InsufficientData if fewer than 10 samples fall in the window.
LineFit lyapunov_exponent(const TrajectoryRecord& record, double window_fraction = 0.5);

}  // namespace tubestab
