#include "tubestab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tubestab/errors.hpp"
#include "tubestab/numerics.hpp"

namespace tubestab {

namespace {

constexpr double kZeroBranchGap = 1e-10;
constexpr double kRootResidual = 1e-9;
constexpr double kConsistencyResidual = 1e-6;
constexpr double kUnitGainTol = 1e-12;

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

// sin(ql)/q, continuous at q = 0.
double sin_over_q(double q, double l) {
  const double ql = q * l;
  if (std::abs(ql) < 1e-4) return l * (1.0 - ql * ql / 6.0);
  return std::sin(ql) / q;
}

// (exp(2ql) - 1)/q, continuous at q = 0.
double expm1_over_q(double q, double l) {
  if (q == 0.0) return 2.0 * l;
  return std::expm1(2.0 * q * l) / q;
}

// Trig determinant divided by q; at q = 0 it is the Zero-branch determinant.
double trig_reduced(const TransformedBVP& b, double q) {
  return (q * q - b.delta * b.gamma) * sin_over_q(q, b.l) -
         (b.gamma + b.delta) * std::cos(q * b.l);
}

// Exponential determinant (q-g)(q-d) - e^{2ql}(q+g)(q+d), divided by q.
double exp_reduced(const TransformedBVP& b, double q) {
  return -expm1_over_q(q, b.l) * (q * q + b.gamma * b.delta) -
         (b.gamma + b.delta) * (1.0 + std::exp(2.0 * q * b.l));
}

// gamma + delta/(1 + delta l): vanishes exactly at alpha*.
double zero_branch_gap(const TransformedBVP& b) {
  return b.gamma + b.delta / (1.0 + b.delta * b.l);
}

// Ascending roots of f found by a uniform sign scan over [0, q_end].
std::vector<double> scan_roots(const std::function<double(double)>& f, double step, double q_end,
                               std::size_t max_roots, bool skip_origin) {
  std::vector<double> roots;
  const long first = skip_origin ? 1 : 0;
  double q_prev = static_cast<double>(first) * step;
  double f_prev = f(q_prev);
  for (long j = first + 1; roots.size() < max_roots; ++j) {
    const double q = std::min(static_cast<double>(j) * step, q_end);
    const double fq = f(q);
    if (fq == 0.0) {
      roots.push_back(q);
    } else if (opposite(f_prev, fq)) {
      roots.push_back(find_root(f, Bracket{q_prev, q, f_prev, fq}));
    }
    q_prev = q;
    f_prev = fq;
    if (q >= q_end) break;
  }
  return roots;
}

}  // namespace

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::Trig: return "trig";
    case Branch::Zero: return "zero";
    case Branch::Exponential: return "exponential";
  }
  return "unknown";
}

double critical_alpha(const ReactorParams& p) { return 0.5 + p.D / (p.v * p.l + 2.0 * p.D); }

TransformedBVP transform(const ReactorParams& p, double alpha) {
  require_valid(p);
  return {(p.v / p.D) * (0.5 - alpha), p.v / (2.0 * p.D), p.l, p.D};
}

double trig_determinant(const TransformedBVP& b, double q) {
  return (q * q - b.delta * b.gamma) * std::sin(q * b.l) -
         q * (b.gamma + b.delta) * std::cos(q * b.l);
}

double exponential_determinant(const TransformedBVP& b, double q) {
  const double r = ((q - b.gamma) * (q - b.delta)) / ((q + b.gamma) * (q + b.delta));
  return r - std::exp(2.0 * q * b.l);
}

double exponential_slope_at_zero(const TransformedBVP& b) {
  return exp_reduced(b, 0.0) / (b.gamma * b.delta);
}

double determinant_residual(const TransformedBVP& b, const Eigenvalue& eig) {
  const double q = eig.q;
  switch (eig.branch) {
    case Branch::Trig: {
      const double a = q * q - b.delta * b.gamma;
      const double c = q * (b.gamma + b.delta);
      const double scale = std::abs(a) + std::abs(c);
      return std::abs(trig_determinant(b, q)) / (scale > 0.0 ? scale : 1.0);
    }
    case Branch::Exponential: {
      const double left = (q - b.gamma) * (q - b.delta);
      const double right = std::exp(2.0 * q * b.l) * (q + b.gamma) * (q + b.delta);
      const double scale = std::abs(left) + std::abs(right);
      return std::abs(left - right) / (scale > 0.0 ? scale : 1.0);
    }
    case Branch::Zero: {
      const double scale = std::abs(b.gamma) * (1.0 + b.delta * b.l) + b.delta;
      return std::abs(b.gamma * (1.0 + b.delta * b.l) + b.delta) / scale;
    }
  }
  return 0.0;
}

std::vector<double> trig_branch_roots(const TransformedBVP& b, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "root count must be >= 1");
  const double step = 1e-3 * std::numbers::pi / b.l;
  const double q_end = (count + 3) * std::numbers::pi / b.l;
  auto g = [&b](double q) { return trig_reduced(b, q); };
  // At alpha* the reduced form vanishes at q = 0, which is the Zero branch
  // rather than a trigonometric mode.
  const bool at_zero_branch = std::abs(zero_branch_gap(b)) < kZeroBranchGap;
  auto roots = scan_roots(g, step, q_end, static_cast<std::size_t>(count), at_zero_branch);
  std::erase_if(roots, [](double q) { return q <= 0.0; });
  if (roots.size() < static_cast<std::size_t>(count)) {
    std::ostringstream os;
    os << "found " << roots.size() << " of " << count << " trigonometric roots";
    throw Error(ErrorKind::NoConvergence, os.str());
  }
  for (double q : roots) {
    const Eigenvalue e{0.0, 0.0, q, Branch::Trig};
    if (determinant_residual(b, e) >= kRootResidual) {
      std::ostringstream os;
      os << "trigonometric root q=" << q << " has residual " << determinant_residual(b, e);
      throw Error(ErrorKind::NoConvergence, os.str());
    }
  }
  return roots;
}

std::vector<double> exponential_branch_roots(const TransformedBVP& b) {
  if (b.gamma >= 0.0) return {};
  const double span = -b.gamma;
  auto e = [&b](double q) { return exp_reduced(b, q); };
  const bool at_zero_branch = std::abs(zero_branch_gap(b)) < kZeroBranchGap;
  auto roots = scan_roots(e, 1e-3 * span, span * (1.0 - 1e-9), 16, at_zero_branch);
  std::erase_if(roots, [](double q) { return q <= 0.0; });
  for (double q : roots) {
    const Eigenvalue ev{0.0, 0.0, q, Branch::Exponential};
    if (determinant_residual(b, ev) >= kRootResidual) {
      std::ostringstream os;
      os << "exponential root q=" << q << " has residual " << determinant_residual(b, ev);
      throw Error(ErrorKind::NoConvergence, os.str());
    }
  }
  return roots;
}

std::optional<double> exponential_branch_root(const TransformedBVP& b) {
  auto roots = exponential_branch_roots(b);
  if (roots.empty()) return std::nullopt;
  return roots.back();
}

Eigenvalue make_eigenvalue(const ReactorParams& p, double q, Branch branch) {
  const double delta = p.v / (2.0 * p.D);
  const double shift = p.D * delta * delta;  // v^2/(4D)
  switch (branch) {
    case Branch::Trig: return {-shift - p.D * q * q, p.D * q * q, q, branch};
    // -D delta^2 + D q^2 written to avoid cancellation near q = delta.
    case Branch::Exponential: return {p.D * (q - delta) * (q + delta), -p.D * q * q, q, branch};
    case Branch::Zero: return {-shift, 0.0, 0.0, branch};
  }
  return {};
}

Eigenvalue principal_eigenvalue(const ReactorParams& p, double alpha) {
  require_valid(p);
  if (alpha > 1.0 + kUnitGainTol) {
    throw Error(ErrorKind::Unsupported,
                "alpha > 1 gives a positive principal eigenvalue (destabilizing gain)");
  }
  const TransformedBVP b = transform(p, alpha);
  if (std::abs(alpha - 1.0) <= kUnitGainTol) {
    Eigenvalue e{0.0, -p.D * b.delta * b.delta, b.delta, Branch::Exponential};
    return e;
  }
  const double gap = zero_branch_gap(b);
  if (std::abs(gap) < kZeroBranchGap) return make_eigenvalue(p, 0.0, Branch::Zero);
  if (gap > 0.0) return make_eigenvalue(p, trig_branch_roots(b, 1).front(), Branch::Trig);

  auto q = exponential_branch_root(b);
  if (!q) {
    throw Error(ErrorKind::NoConvergence, "no exponential-branch root found above alpha*");
  }
  return make_eigenvalue(p, *q, Branch::Exponential);
}

Spectrum compute_spectrum(const ReactorParams& p, double alpha, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "eigenvalue count must be >= 1");
  const Eigenvalue principal = principal_eigenvalue(p, alpha);
  const TransformedBVP b = transform(p, alpha);

  std::vector<Eigenvalue> eigs{principal};
  if (principal.branch == Branch::Exponential && std::abs(alpha - 1.0) > kUnitGainTol) {
    auto roots = exponential_branch_roots(b);
    roots.pop_back();  // the largest is the principal one
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
      eigs.push_back(make_eigenvalue(p, *it, Branch::Exponential));
    }
  }
  const int missing = count - static_cast<int>(eigs.size());
  if (missing > 0) {
    for (double q : trig_branch_roots(b, count)) {
      if (principal.branch == Branch::Trig && q == principal.q) continue;
      eigs.push_back(make_eigenvalue(p, q, Branch::Trig));
      if (static_cast<int>(eigs.size()) == count) break;
    }
  }
  eigs.resize(std::min<std::size_t>(eigs.size(), static_cast<std::size_t>(count)));
  std::stable_sort(eigs.begin(), eigs.end(),
                   [](const Eigenvalue& a, const Eigenvalue& c) { return a.lambda > c.lambda; });
  return {alpha, std::move(eigs), principal};
}

Profile eigenfunction(const ReactorParams& p, const Eigenvalue& eig, double alpha,
                      const Grid& grid) {
  if (std::abs(grid.length() - p.l) > 1e-12 * p.l) {
    throw Error(ErrorKind::InvalidArgument, "grid length differs from reactor length");
  }
  const TransformedBVP b = transform(p, alpha);
  const double residual = determinant_residual(b, eig);
  const Eigenvalue expected = make_eigenvalue(p, eig.q, eig.branch);
  const double lambda_scale = std::abs(expected.lambda) + p.D * b.delta * b.delta;
  if (!(residual < kConsistencyResidual) ||
      std::abs(expected.lambda - eig.lambda) > 1e-9 * lambda_scale) {
    std::ostringstream os;
    os << "eigenvalue (" << to_string(eig.branch) << ", q=" << eig.q << ") is not in the spectrum"
       << " for alpha=" << alpha << " (residual " << residual << ")";
    throw Error(ErrorKind::InconsistentInput, os.str());
  }

  const double q = eig.q, g = b.gamma;
  std::function<double(double)> y;
  switch (eig.branch) {
    case Branch::Trig: y = [=](double x) { return q * std::cos(q * x) + g * std::sin(q * x); }; break;
    case Branch::Exponential:
      y = [=](double x) { return (q + g) * std::exp(q * x) + (q - g) * std::exp(-q * x); };
      break;
    case Branch::Zero: y = [=](double x) { return g * x + 1.0; }; break;
  }
  const double delta = b.delta;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    values[i] = std::exp(delta * x) * y(x);
  }
  const double norm = l2_norm(values, grid.spacing());
  const double sign = values.back() < 0.0 ? -1.0 : 1.0;
  for (double& v : values) v *= sign / norm;
  return Profile(grid, std::move(values));
}

SturmLiouvilleWeights sturm_liouville_weights(const ReactorParams& p) {
  const double D = p.D, ratio = p.v / p.D;
  return {
      [=](double x) { return std::exp(-ratio * x); },
      [=](double x) { return D * std::exp(-ratio * x); },
      [](double) { return 0.0; },
  };
}

}  // namespace tubestab
