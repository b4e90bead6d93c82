#include "tubestab/discretization.hpp"

#include <cmath>

#include "tubestab/errors.hpp"

namespace tubestab {

DiscreteOperator::DiscreteOperator(const ReactorParams& p, double alpha, const Grid& grid)
    : grid_(grid) {
  if (std::abs(grid.length() - p.l) > 1e-12 * p.l) {
    throw Error(ErrorKind::InvalidArgument, "grid length differs from reactor length");
  }
  const double h = grid.spacing();
  lo_ = p.D / (h * h) + p.v / (2.0 * h);
  mid_ = -2.0 * p.D / (h * h);
  up_ = p.D / (h * h) - p.v / (2.0 * h);

  const double dv = p.D / p.v;
  in0_ = -3.0 * dv / (2.0 * h) - (1.0 - alpha);
  in1_ = 4.0 * dv / (2.0 * h);
  in2_ = -dv / (2.0 * h);

  out0_ = 3.0 / (2.0 * h);
  out1_ = -4.0 / (2.0 * h);
  out2_ = 1.0 / (2.0 * h);
}

double DiscreteOperator::inlet_residual(std::span<const double> xi) const noexcept {
  return in0_ * xi[0] + in1_ * xi[1] + in2_ * xi[2];
}

double DiscreteOperator::outlet_residual(std::span<const double> xi) const noexcept {
  const std::size_t n = xi.size();
  return out0_ * xi[n - 1] + out1_ * xi[n - 2] + out2_ * xi[n - 3];
}

std::vector<double> DiscreteOperator::apply(std::span<const double> xi) const {
  const std::size_t n = grid_.size();
  if (xi.size() != n) throw Error(ErrorKind::InvalidArgument, "vector does not match the grid");
  std::vector<double> out(n);
  out[0] = inlet_residual(xi);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = interior(xi, i);
  out[n - 1] = outlet_residual(xi);
  return out;
}

BorderedTridiagonal DiscreteOperator::matrix() const {
  const std::size_t n = grid_.size();
  BorderedTridiagonal a(n);
  a.diag[0] = in0_;
  a.upper[0] = in1_;
  a.first_row_extra = in2_;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a.lower[i - 1] = lo_;
    a.diag[i] = mid_;
    a.upper[i] = up_;
  }
  a.diag[n - 1] = out0_;
  a.lower[n - 2] = out1_;
  a.last_row_extra = out2_;
  return a;
}

bool is_integer_order(double n) noexcept { return std::floor(n) == n; }

double reaction_power(double c, double n) {
  if (c < 0.0 && !is_integer_order(n)) {
    throw Error(ErrorKind::NegativeBase, "negative concentration with fractional reaction order");
  }
  if (n == 2.0) return c * c;
  return std::pow(c, n);
}

}  // namespace tubestab
