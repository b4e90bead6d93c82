#pragma once

#include <span>
#include <vector>

#include "tubestab/grid.hpp"
#include "tubestab/model.hpp"
#include "tubestab/numerics.hpp"

namespace tubestab {

/// Finite-difference form of A xi = D xi'' - v xi' on a uniform grid.
///
/// Interior rows use second-order central differences. Row 0 holds the
/// closed-loop inlet relation (D/v) xi'(0) - (1 - alpha) xi(0) and row N-1
/// the outlet relation xi'(l), both with one-sided second-order stencils, so
/// the assembled matrix is a BorderedTridiagonal.
class DiscreteOperator {
 public:
  DiscreteOperator(const ReactorParams& params, double alpha, const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }

  /// (A_h xi)_i for an interior node 0 < i < N-1.
  double interior(std::span<const double> xi, std::size_t i) const noexcept {
    return lo_ * xi[i - 1] + mid_ * xi[i] + up_ * xi[i + 1];
  }

  double inlet_residual(std::span<const double> xi) const noexcept;
  double outlet_residual(std::span<const double> xi) const noexcept;

  /// Interior rows hold A_h xi, rows 0 and N-1 the boundary residuals.
  std::vector<double> apply(std::span<const double> xi) const;

  /// Matrix of apply().
  BorderedTridiagonal matrix() const;

 private:
  Grid grid_;
  double lo_, mid_, up_;
  double in0_, in1_, in2_;     // inlet stencil on xi_0, xi_1, xi_2
  double out0_, out1_, out2_;  // outlet stencil on xi_{N-1}, xi_{N-2}, xi_{N-3}
};

/// c^n, with negative c allowed only for integer n.
double reaction_power(double c, double n);
bool is_integer_order(double n) noexcept;

}  // namespace tubestab
