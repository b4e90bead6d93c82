#include "tubestab/decay.hpp"

#include <cmath>
#include <vector>

#include "tubestab/errors.hpp"

namespace tubestab {

double lipschitz_constant(const ClosedLoopSetup& setup) {
  require_valid(setup);
  const ReactorParams& p = setup.params;
  const double a = p.v * (1.0 - setup.alpha);
  const double inner = setup.m_amplitude * (p.l * p.l * a + 2.0 * p.D * p.l) / a;
  return p.k * p.n * std::pow(inner, p.n - 1.0);
}

double amplitude_for_lipschitz(const ReactorParams& p, double alpha, double lipschitz_L) {
  require_valid(p);
  if (!(lipschitz_L > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "target Lipschitz constant must be positive");
  }
  return std::pow(lipschitz_L / (p.k * p.n), 1.0 / (p.n - 1.0)) / phi(p, alpha, p.l);
}

DecayReport theoretical_rate(const ClosedLoopSetup& setup, double lambda0, double K) {
  if (!(lambda0 < 0.0)) {
    throw Error(ErrorKind::InvalidSpectrum, "theoretical rate needs lambda0 < 0");
  }
  if (!(K >= 1.0)) throw Error(ErrorKind::InvalidArgument, "growth constant K must be >= 1");
  DecayReport r;
  r.alpha = setup.alpha;
  r.lambda0 = lambda0;
  r.K = K;
  r.lipschitz_L = lipschitz_constant(setup);
  const double spectral_part = K == 1.0 ? lambda0 : lambda0 / (K * K);
  r.lambda_T = spectral_part + r.lipschitz_L;
  r.omega = -r.lambda_T;
  r.certificate_holds = r.lipschitz_L < -spectral_part;
  return r;
}

LineFit lyapunov_exponent(const TrajectoryRecord& record, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "window fraction must lie in (0, 1]");
  }
  std::vector<double> t, y;
  for (std::size_t i = 0; i < record.norms.size(); ++i) {
    if (record.norms[i] > record.norm_floor && record.norms[i] > 0.0) {
      t.push_back(record.times[i]);
      y.push_back(std::log(record.norms[i]));
    }
  }
  const auto keep = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(t.size())));
  if (keep < 10) {
    throw Error(ErrorKind::InsufficientData, "fewer than 10 samples above the norm floor");
  }
  const std::size_t first = t.size() - keep;
  return fit_line(std::span(t).subspan(first), std::span(y).subspan(first));
}

}  // namespace tubestab
