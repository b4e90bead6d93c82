#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "tubestab/grid.hpp"
#include "tubestab/model.hpp"

namespace tubestab {

/// Self-adjoint form of the closed-loop eigenproblem. With
/// y(x) = exp(-delta x) xi(x) the problem A xi = lambda xi becomes
///   -D y'' = theta y,  y'(0) = gamma y(0),  y'(l) = -delta y(l),
/// where lambda = -D delta^2 - theta.
struct TransformedBVP {
  double gamma;  ///< (v/D)(1/2 - alpha), 1/m
  double delta;  ///< v/(2D), 1/m
  double l;
  double D;
};

enum class Branch { Trig, Zero, Exponential };

std::string_view to_string(Branch b) noexcept;

struct Eigenvalue {
  double lambda;  ///< eigenvalue of A, 1/s
  double theta;   ///< eigenvalue of the transformed operator, 1/s
  double q;       ///< wavenumber, 1/m (0 on the Zero branch)
  Branch branch;
};

struct Spectrum {
  double alpha;
  std::vector<Eigenvalue> eigenvalues;  ///< strictly decreasing lambda
  Eigenvalue principal;
};

/// alpha* = 1/2 + D/(v l + 2D): the gain where lambda0 crosses -v^2/(4D).
double critical_alpha(const ReactorParams& params);

TransformedBVP transform(const ReactorParams& params, double alpha);

/// Boundary-condition determinant on the trigonometric branch,
///   (q^2 - delta gamma) sin(ql) - q (gamma + delta) cos(ql).
/// Its zeros with cos(ql) != 0 are those of the tan form.
double trig_determinant(const TransformedBVP& bvp, double q);

/// S(q) = R(q) - exp(2ql), R(q) = (q-gamma)(q-delta) / ((q+gamma)(q+delta)).
double exponential_determinant(const TransformedBVP& bvp, double q);

/// dS/dq at q = 0; negative values guarantee an exponential-branch root.
/// Only meaningful for gamma < 0.
double exponential_slope_at_zero(const TransformedBVP& bvp);

/// Scale-free residual of the determinant condition belonging to eig.branch.
double determinant_residual(const TransformedBVP& bvp, const Eigenvalue& eig);

/// The `count` smallest positive wavenumbers of the trigonometric branch.
std::vector<double> trig_branch_roots(const TransformedBVP& bvp, int count);

/// All roots of exp(2ql) = R(q) on (0, -gamma), ascending. Empty if gamma >= 0.
std::vector<double> exponential_branch_roots(const TransformedBVP& bvp);

/// Largest root of the exponential branch, if any.
std::optional<double> exponential_branch_root(const TransformedBVP& bvp);

Eigenvalue make_eigenvalue(const ReactorParams& params, double q, Branch branch);

/// lambda0(alpha) = sup of the spectrum. Throws Unsupported for alpha > 1.
Eigenvalue principal_eigenvalue(const ReactorParams& params, double alpha);

/// Principal eigenvalue followed by further eigenvalues, `count` in total.
Spectrum compute_spectrum(const ReactorParams& params, double alpha, int count = 1);

/// Eigenfunction xi(x) = exp(delta x) y(x) sampled on the grid, with unit
/// trapezoidal L2 norm and xi(l) > 0.
Profile eigenfunction(const ReactorParams& params, const Eigenvalue& eig, double alpha,
                      const Grid& grid);

/// Weights writing -A xi = (1/rho) (-(p xi')' + q xi).
struct SturmLiouvilleWeights {
  std::function<double(double)> rho;
  std::function<double(double)> p;
  std::function<double(double)> q;
};

SturmLiouvilleWeights sturm_liouville_weights(const ReactorParams& params);

}  // namespace tubestab
