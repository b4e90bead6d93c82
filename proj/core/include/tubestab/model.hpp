#pragma once

#include <string>
#include <vector>

#include "tubestab/grid.hpp"

namespace tubestab {

/// Physical constants of the axial-dispersion tubular reactor
///   dC/dt = D C'' - v C' - k C^n,  x in (0, l).
struct ReactorParams {
  double D = 0.0025;  ///< axial dispersion coefficient, m^2/s
  double v = 0.01;    ///< flow rate, m/s
  double l = 1.0;     ///< reactor length, m
  double k = 0.001;   ///< reaction rate constant, 1/(s mol^(n-1))
  double n = 2.0;     ///< reaction order

  /// Reference constants of the published experiment.
  static ReactorParams experiment_defaults() { return {}; }
};

/// Reactor closed by the inlet feedback u(t) = alpha * C(0, t), together with
/// the amplitude M of the invariant set 0 <= C <= M phi.
struct ClosedLoopSetup {
  ReactorParams params;
  double alpha = 0.0;
  double m_amplitude = 1.0;
};

/// Scaling of the experiment's initial data xi0 = mu * M* * phi.
struct InitialDataSpec {
  double mu = 0.9;
  double alpha_max = 0.95;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Lists every violated stabilization hypothesis (n > 1, alpha < 1, positive
/// constants, M > 0). Never throws.
ValidationReport validate(const ClosedLoopSetup& setup);
ValidationReport validate(const ReactorParams& params);

/// Throws InvalidArgument listing all violations when the setup is invalid.
void require_valid(const ClosedLoopSetup& setup);
void require_valid(const ReactorParams& params);
void require_valid(const InitialDataSpec& spec);

/// Invariant-set weight phi(x) = -(x - l)^2 + l^2 + 2 D l / (v (1 - alpha)).
/// Positive and nondecreasing on [0, l] for alpha < 1; satisfies the
/// closed-loop inlet relation and phi'(l) = 0.
double phi(const ClosedLoopSetup& setup, double x);
double phi(const ReactorParams& params, double alpha, double x);
double phi_derivative(const ReactorParams& params, double x);
double phi_second_derivative();

/// Amplitude used to build the experiment's initial data:
///   M* = (-lambda0(alpha_max) / (k n))^(1/(n-1)) * v(1-alpha) / (2 l^2 v (1-alpha) + 4 D l).
/// It makes M* phi(l) independent of alpha.
double m_star(const ReactorParams& params, double alpha, const InitialDataSpec& spec,
              double lambda0_at_alpha_max);

/// xi0(x) = mu * M* * phi(x) sampled on the grid.
Profile initial_data(const ClosedLoopSetup& setup, const InitialDataSpec& spec,
                     double lambda0_at_alpha_max, const Grid& grid);

}  // namespace tubestab
