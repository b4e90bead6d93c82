#include "tubestab/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "tubestab/errors.hpp"

namespace tubestab {

Grid::Grid(double l, std::size_t n_points) : l_(l), n_(n_points), h_(0.0) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    throw Error(ErrorKind::InvalidArgument, "grid length must be positive");
  }
  if (n_points < 3) {
    throw Error(ErrorKind::InvalidArgument, "grid needs at least 3 points");
  }
  h_ = l / static_cast<double>(n_points - 1);
}

Profile::Profile(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument, "profile length does not match its grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "profile value is not finite");
  }
}

Profile::Profile(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

Profile Profile::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid.x(i));
  return Profile(grid, std::move(values));
}

ValidationReport validate(const ReactorParams& p) {
  ValidationReport r;
  if (!(p.D > 0.0)) r.violations.emplace_back("D > 0");
  if (!(p.v > 0.0)) r.violations.emplace_back("v > 0");
  if (!(p.l > 0.0)) r.violations.emplace_back("l > 0");
  if (!(p.k > 0.0)) r.violations.emplace_back("k > 0");
  if (!(p.n > 1.0)) r.violations.emplace_back("n > 1");
  return r;
}

ValidationReport validate(const ClosedLoopSetup& setup) {
  ValidationReport r = validate(setup.params);
  if (!(setup.alpha < 1.0)) r.violations.emplace_back("alpha < 1");
  if (!(setup.m_amplitude > 0.0)) r.violations.emplace_back("M > 0");
  return r;
}

namespace {

[[noreturn]] void throw_report(const ValidationReport& r) {
  std::ostringstream os;
  os << "violated hypotheses:";
  for (const auto& v : r.violations) os << " [" << v << "]";
  throw Error(ErrorKind::InvalidArgument, os.str());
}

}  // namespace

void require_valid(const ClosedLoopSetup& setup) {
  if (auto r = validate(setup); !r.ok()) throw_report(r);
}

void require_valid(const ReactorParams& params) {
  if (auto r = validate(params); !r.ok()) throw_report(r);
}

void require_valid(const InitialDataSpec& spec) {
  ValidationReport r;
  if (!(spec.mu > 0.0 && spec.mu < 1.0)) r.violations.emplace_back("0 < mu < 1");
  if (!(spec.alpha_max < 1.0)) r.violations.emplace_back("alpha_max < 1");
  if (!r.ok()) throw_report(r);
}

double phi(const ReactorParams& p, double alpha, double x) {
  if (!(alpha < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "phi is defined for alpha < 1 only");
  }
  if (!(x >= 0.0 && x <= p.l)) {
    std::ostringstream os;
    os << "x=" << x << " outside [0, " << p.l << "]";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
  const double s = x - p.l;
  return -s * s + p.l * p.l + 2.0 * p.D * p.l / (p.v * (1.0 - alpha));
}

double phi(const ClosedLoopSetup& setup, double x) { return phi(setup.params, setup.alpha, x); }

double phi_derivative(const ReactorParams& p, double x) { return 2.0 * (p.l - x); }

double phi_second_derivative() { return -2.0; }

double m_star(const ReactorParams& p, double alpha, const InitialDataSpec& spec,
              double lambda0_at_alpha_max) {
  if (!(lambda0_at_alpha_max < 0.0)) {
    throw Error(ErrorKind::InvalidSpectrum, "lambda0(alpha_max) must be negative");
  }
  if (!(alpha < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "m_star requires alpha < 1");
  }
  (void)spec;  // alpha_max enters only through lambda0_at_alpha_max
  const double base = std::pow(-lambda0_at_alpha_max / (p.k * p.n), 1.0 / (p.n - 1.0));
  const double a = p.v * (1.0 - alpha);
  return base * a / (2.0 * p.l * p.l * a + 4.0 * p.D * p.l);
}

Profile initial_data(const ClosedLoopSetup& setup, const InitialDataSpec& spec,
                     double lambda0_at_alpha_max, const Grid& grid) {
  require_valid(spec);
  const double scale =
      spec.mu * m_star(setup.params, setup.alpha, spec, lambda0_at_alpha_max);
  return Profile::sample(grid, [&](double x) { return scale * phi(setup, x); });
}

}  // namespace tubestab
