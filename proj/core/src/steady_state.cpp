#include "tubestab/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tubestab/discretization.hpp"
#include "tubestab/errors.hpp"
#include "tubestab/numerics.hpp"

namespace tubestab {

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> residual(const DiscreteOperator& op, const ReactorParams& p,
                             std::span<const double> c) {
  std::vector<double> r = op.apply(c);
  for (std::size_t i = 1; i + 1 < c.size(); ++i) r[i] -= p.k * reaction_power(c[i], p.n);
  return r;
}

}  // namespace

std::vector<double> steady_residual(const ClosedLoopSetup& setup, const Profile& p) {
  const DiscreteOperator op(setup.params, setup.alpha, p.grid());
  return residual(op, setup.params, p.values());
}

SteadyStateResult solve_steady(const ClosedLoopSetup& setup, const Profile& guess,
                               SteadyOptions opts) {
  require_valid(setup.params);
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

  const ReactorParams& p = setup.params;
  const DiscreteOperator op(p, setup.alpha, guess.grid());
  const BorderedTridiagonal linear = op.matrix();
  const std::size_t n = guess.size();
  const double floor = is_integer_order(p.n) ? -1e-12 : 0.0;

  std::vector<double> c(guess.values().begin(), guess.values().end());
  std::vector<double> f = residual(op, p, c);
  double norm = inf_norm(f);

  SteadyStateResult out{guess, norm, 0, 0, false};
  for (;;) {
    ++out.iterations;
    if (norm < opts.tol) {
      out.converged = true;
      break;
    }
    if (out.newton_steps >= opts.max_iter) break;

    BorderedTridiagonal jac = linear;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      jac.diag[i] -= p.k * p.n * reaction_power(c[i], p.n - 1.0);
    }
    std::vector<double> step(f.size());
    std::transform(f.begin(), f.end(), step.begin(), [](double v) { return -v; });
    try {
      BorderedFactorization(jac).solve_in_place(step);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SingularMatrix) {
        throw Error(ErrorKind::SingularJacobian, e.what());
      }
      throw;
    }

    bool accepted = false;
    double scale = 1.0;
    std::vector<double> trial(n);
    for (int h = 0; h <= opts.max_halvings && !accepted; ++h, scale *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = c[i] + scale * step[i];
      if (*std::min_element(trial.begin(), trial.end()) < floor) continue;
      std::vector<double> f_trial = residual(op, p, trial);
      const double trial_norm = inf_norm(f_trial);
      if (trial_norm < norm) {
        c.swap(trial);
        f.swap(f_trial);
        norm = trial_norm;
        accepted = true;
      }
    }
    if (!accepted) break;
    ++out.newton_steps;
  }
  out.profile = Profile(guess.grid(), std::move(c));
  out.residual_norm = norm;
  return out;
}

std::string_view steady_branch(const Profile& steady) {
  for (double v : steady.values()) {
    if (std::abs(v) > 1e-8) return "nontrivial";
  }
  return "zero";
}

}  // namespace tubestab
