#include "tubestab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tubestab/errors.hpp"

namespace tubestab {

namespace {

bool same_sign(double a, double b) { return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0); }

constexpr double kPivotFloor = 1e-300;

}  // namespace

Bracket Bracket::make(const std::function<double(double)>& f, double lo, double hi) {
  if (!(lo < hi)) {
    throw Error(ErrorKind::InvalidBracket, "bracket requires lo < hi");
  }
  Bracket b{lo, hi, f(lo), f(hi)};
  if (!std::isfinite(b.f_lo) || !std::isfinite(b.f_hi) || same_sign(b.f_lo, b.f_hi)) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << b.f_lo
       << ", f(hi)=" << b.f_hi;
    throw Error(ErrorKind::InvalidBracket, os.str());
  }
  return b;
}

double find_root(const std::function<double(double)>& f, const Bracket& bracket,
                 RootOptions opts) {
  if (!(bracket.lo < bracket.hi) || same_sign(bracket.f_lo, bracket.f_hi)) {
    throw Error(ErrorKind::InvalidBracket, "bracket does not enclose a sign change");
  }
  if (!(opts.tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "root tolerance must be positive");
  }

  double lo = bracket.lo, hi = bracket.hi;
  double f_lo = bracket.f_lo, f_hi = bracket.f_hi;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  // Secant weights, halved on repeated retention (Illinois).
  double w_lo = f_lo, w_hi = f_hi;
  int last_side = 0;
  bool force_bisect = false;

  auto best = [&] { return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi; };

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    const double width = hi - lo;
    if (width <= opts.tol) return best();

    const double mid = lo + 0.5 * width;
    double x = mid;
    if (!force_bisect) {
      const double secant = (lo * w_hi - hi * w_lo) / (w_hi - w_lo);
      if (secant > lo && secant < hi) x = secant;
    }
    if (x <= lo || x >= hi) return best();  // bracket is at floating-point resolution

    const double fx = f(x);
    if (fx == 0.0) return x;
    if (!std::isfinite(fx)) {
      std::ostringstream os;
      os << "non-finite function value at x=" << x;
      throw Error(ErrorKind::NoConvergence, os.str());
    }

    if (same_sign(fx, f_lo)) {
      lo = x;
      f_lo = w_lo = fx;
      if (last_side == -1) w_hi *= 0.5;
      last_side = -1;
    } else {
      hi = x;
      f_hi = w_hi = fx;
      if (last_side == +1) w_lo *= 0.5;
      last_side = +1;
    }
    force_bisect = (hi - lo) > 0.5 * width;
  }
  if (hi - lo <= opts.tol) return best();
  std::ostringstream os;
  os << "root finder hit the iteration cap (" << opts.max_iter << ") with bracket width "
     << (hi - lo);
  throw Error(ErrorKind::NoConvergence, os.str());
}

TridiagonalFactorization::TridiagonalFactorization(std::span<const double> lower,
                                                   std::span<const double> diag,
                                                   std::span<const double> upper) {
  const std::size_t n = diag.size();
  if (n == 0 || lower.size() + 1 != n || upper.size() + 1 != n) {
    throw Error(ErrorKind::InvalidArgument, "inconsistent tridiagonal dimensions");
  }
  lower_.assign(lower.begin(), lower.end());
  upper_prime_.resize(n - 1);
  inv_pivot_.resize(n);

  double pivot = diag[0];
  for (std::size_t i = 0;; ++i) {
    if (!(std::abs(pivot) >= kPivotFloor)) {
      std::ostringstream os;
      os << "pivot " << pivot << " at row " << i;
      throw Error(ErrorKind::SingularMatrix, os.str());
    }
    inv_pivot_[i] = 1.0 / pivot;
    if (i + 1 == n) break;
    upper_prime_[i] = upper[i] * inv_pivot_[i];
    pivot = diag[i + 1] - lower[i] * upper_prime_[i];
  }
}

void TridiagonalFactorization::solve_in_place(std::span<double> x) const {
  const std::size_t n = inv_pivot_.size();
  if (x.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "right-hand side has the wrong length");
  }
  // Forward sweep
  x[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) {
    x[i] = (x[i] - lower_[i - 1] * x[i - 1]) * inv_pivot_[i];
  }
  // Back substitution
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= upper_prime_[i] * x[i + 1];
  }
}

std::vector<double> TridiagonalFactorization::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  return TridiagonalFactorization(lower, diag, upper).solve(rhs);
}

std::vector<double> BorderedTridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "vector has the wrong length");
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += lower[i - 1] * x[i - 1];
    if (i + 1 < n) s += upper[i] * x[i + 1];
    y[i] = s;
  }
  if (n >= 3) {
    y[0] += first_row_extra * x[2];
    y[n - 1] += last_row_extra * x[n - 3];
  }
  return y;
}

namespace {

struct Reduced {
  std::vector<double> lower, diag, upper;
  double first_factor = 0.0;
  double last_factor = 0.0;
};

Reduced eliminate_extras(const BorderedTridiagonal& a) {
  const std::size_t n = a.size();
  if (n < 3) {
    throw Error(ErrorKind::InvalidArgument, "bordered system needs at least 3 rows");
  }
  Reduced r{a.lower, a.diag, a.upper};
  if (a.first_row_extra != 0.0) {
    // Row 1 holds x2 through upper[1].
    if (!(std::abs(a.upper[1]) >= kPivotFloor)) {
      throw Error(ErrorKind::SingularMatrix, "cannot eliminate first-row extra entry");
    }
    r.first_factor = a.first_row_extra / a.upper[1];
    r.diag[0] -= r.first_factor * a.lower[0];
    r.upper[0] -= r.first_factor * a.diag[1];
  }
  if (a.last_row_extra != 0.0) {
    // Row n-2 holds x_{n-3} through lower[n-3].
    if (!(std::abs(a.lower[n - 3]) >= kPivotFloor)) {
      throw Error(ErrorKind::SingularMatrix, "cannot eliminate last-row extra entry");
    }
    r.last_factor = a.last_row_extra / a.lower[n - 3];
    r.lower[n - 2] -= r.last_factor * a.diag[n - 2];
    r.diag[n - 1] -= r.last_factor * a.upper[n - 2];
  }
  return r;
}

}  // namespace

BorderedFactorization::BorderedFactorization(const BorderedTridiagonal& a) {
  const Reduced r = eliminate_extras(a);
  first_factor_ = r.first_factor;
  last_factor_ = r.last_factor;
  tri_ = TridiagonalFactorization(r.lower, r.diag, r.upper);
}

void BorderedFactorization::solve_in_place(std::span<double> x) const {
  const std::size_t n = tri_.size();
  if (x.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "right-hand side has the wrong length");
  }
  x[0] -= first_factor_ * x[1];
  x[n - 1] -= last_factor_ * x[n - 2];
  tri_.solve_in_place(x);
}

std::vector<double> BorderedFactorization::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

double l2_norm(std::span<const double> values, double spacing) {
  if (values.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "l2_norm needs at least 2 samples");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i] * values[i];
  sum += 0.5 * (values.front() * values.front() + values.back() * values.back());
  return std::sqrt(sum * spacing);
}

double l2_norm(const Profile& p) { return l2_norm(p.values(), p.grid().spacing()); }

LineFit fit_line(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) {
    throw Error(ErrorKind::InvalidArgument, "fit_line: t and y differ in length");
  }
  if (t.size() < 2) {
    throw Error(ErrorKind::DegenerateInput, "fit_line needs at least 2 samples");
  }
  const double n = static_cast<double>(t.size());
  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    t_mean += t[i];
    y_mean += y[i];
  }
  t_mean /= n;
  y_mean /= n;

  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dt = t[i] - t_mean;
    stt += dt * dt;
    sty += dt * (y[i] - y_mean);
  }
  if (stt == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "fit_line: all abscissae are equal");
  }
  LineFit fit;
  fit.slope = sty / stt;
  fit.intercept = y_mean - fit.slope * t_mean;
  double ss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (fit.slope * t[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace tubestab
