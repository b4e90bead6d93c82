#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tubestab/grid.hpp"

namespace tubestab {

/// Interval [lo, hi] known to enclose a sign change of some scalar function.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  /// Evaluates f at both ends. Throws InvalidBracket if lo >= hi or there is
  /// no sign change.
  static Bracket make(const std::function<double(double)>& f, double lo, double hi);
};

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 200;
};

/// Safeguarded root finder: Illinois-type false position steps, falling back
/// to bisection whenever a step fails to halve the bracket. The iterate never
/// leaves the initial bracket.
double find_root(const std::function<double(double)>& f, const Bracket& bracket,
                 RootOptions opts = {});

/// Thomas factorization of a tridiagonal matrix, reusable for many right-hand
/// sides. `lower` and `upper` have n-1 entries; lower[i] sits at (i+1, i).
class TridiagonalFactorization {
 public:
  TridiagonalFactorization() = default;
  TridiagonalFactorization(std::span<const double> lower, std::span<const double> diag,
                           std::span<const double> upper);

  std::vector<double> solve(std::span<const double> rhs) const;
  void solve_in_place(std::span<double> x) const;

  std::size_t size() const noexcept { return inv_pivot_.size(); }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_prime_;
  std::vector<double> inv_pivot_;
};

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/// Tridiagonal matrix plus one extra entry in each of the first and last
/// rows: (0, 2) and (n-1, n-3). This is the shape produced by one-sided
/// second-order boundary stencils. Solved by eliminating the extra entries
/// against the neighbouring interior row and then running Thomas.
struct BorderedTridiagonal {
  std::vector<double> lower;  // n-1
  std::vector<double> diag;   // n
  std::vector<double> upper;  // n-1
  double first_row_extra = 0.0;
  double last_row_extra = 0.0;

  explicit BorderedTridiagonal(std::size_t n)
      : lower(n - 1, 0.0), diag(n, 0.0), upper(n - 1, 0.0) {}

  std::size_t size() const noexcept { return diag.size(); }

  /// y = A x.
  std::vector<double> multiply(std::span<const double> x) const;
};

class BorderedFactorization {
 public:
  explicit BorderedFactorization(const BorderedTridiagonal& a);

  std::vector<double> solve(std::span<const double> rhs) const;
  void solve_in_place(std::span<double> x) const;

 private:
  double first_factor_ = 0.0;
  double last_factor_ = 0.0;
  TridiagonalFactorization tri_;
};

/// Trapezoidal approximation of (int_0^l p(x)^2 dx)^(1/2).
double l2_norm(const Profile& p);
double l2_norm(std::span<const double> values, double spacing);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

/// Ordinary least squares y ~ slope * t + intercept.
LineFit fit_line(std::span<const double> t, std::span<const double> y);

}  // namespace tubestab
