#include "tubestab/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tubestab/errors.hpp"

namespace tubestab {

namespace {

BorderedTridiagonal implicit_matrix_for(const DiscreteOperator& op, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
  BorderedTridiagonal a = op.matrix();
  const std::size_t n = a.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a.lower[i - 1] *= -0.5 * dt;
    a.diag[i] = 1.0 - 0.5 * dt * a.diag[i];
    a.upper[i] *= -0.5 * dt;
  }
  return a;
}

std::vector<double> m_phi(const ClosedLoopSetup& setup, const Grid& grid) {
  std::vector<double> bound(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bound[i] = setup.m_amplitude * phi(setup, grid.x(i));
  }
  return bound;
}

// The integrator also accepts k = 0, the purely linear closed loop.
void require_simulable(const ClosedLoopSetup& setup) {
  if (setup.params.k == 0.0) {
    ClosedLoopSetup reacting = setup;
    reacting.params.k = 1.0;
    require_valid(reacting);
  } else {
    require_valid(setup);
  }
}

double tolerance_for(std::span<const double> bound) {
  return 1e-8 * *std::max_element(bound.begin(), bound.end());
}

}  // namespace

CrankNicolsonOperator::CrankNicolsonOperator(const ClosedLoopSetup& setup, const Grid& grid,
                                             double dt)
    : op_(setup.params, setup.alpha, grid),
      dt_(dt),
      implicit_matrix_(implicit_matrix_for(op_, dt)),
      implicit_(implicit_matrix_) {}

std::vector<double> CrankNicolsonOperator::explicit_part(std::span<const double> xi,
                                                         std::span<const double> forcing) const {
  const std::size_t n = xi.size();
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rhs[i] = xi[i] + 0.5 * dt_ * op_.interior(xi, i) + dt_ * forcing[i];
  }
  return rhs;
}

CrankNicolsonOperator step_operator(const ClosedLoopSetup& setup, const Grid& grid, double dt) {
  return CrankNicolsonOperator(setup, grid, dt);
}

std::vector<double> reaction_increment(const ReactorParams& p, std::span<const double> xi,
                                       std::span<const double> steady) {
  const bool integer = is_integer_order(p.n);
  std::vector<double> r(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    double c = xi[i] + steady[i];
    double cbar = steady[i];
    if (!integer) {
      c = std::max(c, 0.0);
      cbar = std::max(cbar, 0.0);
    }
    r[i] = p.k * reaction_power(cbar, p.n) - p.k * reaction_power(c, p.n);
  }
  return r;
}

void imex_step(const CrankNicolsonOperator& cn, const ReactorParams& p,
               std::span<const double> steady, std::vector<double>& xi) {
  const std::size_t n = xi.size();
  const std::vector<double> r_now = reaction_increment(p, xi, steady);
  std::vector<double> predictor = cn.explicit_part(xi, r_now);
  cn.solve_in_place(predictor);

  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (xi[i] + predictor[i]);
  const std::vector<double> r_mid = reaction_increment(p, mid, steady);

  std::vector<double> next = cn.explicit_part(xi, r_mid);
  cn.solve_in_place(next);
  xi.swap(next);
}

TrajectoryRecord simulate(const ClosedLoopSetup& setup, const Profile& steady, const Profile& xi0,
                          const SimConfig& cfg) {
  require_simulable(setup);
  if (!(xi0.grid() == cfg.grid) || !(steady.grid() == cfg.grid)) {
    throw Error(ErrorKind::InvalidArgument, "initial and steady profiles must use the sim grid");
  }
  if (!(cfg.dt > 0.0) || !(cfg.t_final >= cfg.dt) || cfg.snapshot_stride < 1) {
    throw Error(ErrorKind::InvalidArgument, "need dt > 0, t_final >= dt, snapshot_stride >= 1");
  }

  const ReactorParams& p = setup.params;
  const Grid& grid = cfg.grid;
  const std::size_t n = grid.size();
  const CrankNicolsonOperator cn(setup, grid, cfg.dt);
  const std::vector<double> bound = m_phi(setup, grid);
  const std::vector<double> cbar(steady.values().begin(), steady.values().end());
  const std::vector<double> zero(n, 0.0);
  const bool raw = cfg.form == SimForm::Raw;
  const bool integer = is_integer_order(p.n);

  TrajectoryRecord rec{{}, {}, {}, steady, 0, tolerance_for(bound), 0.0};

  // Integrated state: xi (deviation form) or C (raw form).
  std::vector<double> state(xi0.values().begin(), xi0.values().end());
  if (raw) {
    for (std::size_t i = 0; i < n; ++i) state[i] += cbar[i];
  }
  std::vector<double> xi(n);

  auto deviation = [&] {
    for (std::size_t i = 0; i < n; ++i) xi[i] = raw ? state[i] - cbar[i] : state[i];
  };
  auto check = [&](double t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(state[i])) {
        std::ostringstream os;
        os << "state became non-finite at t=" << t << ", node " << i;
        throw Error(ErrorKind::NonFiniteState, os.str());
      }
      const double c = raw ? state[i] : state[i] + cbar[i];
      if (c < -rec.tol_inv && !integer) {
        std::ostringstream os;
        os << "concentration " << c << " at t=" << t << ", node " << i;
        throw Error(ErrorKind::NegativeConcentration, os.str());
      }
      if (c < -rec.tol_inv || c > bound[i] + rec.tol_inv) ++rec.invariant_violations;
    }
  };

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  rec.times.reserve(steps + 1);
  rec.norms.reserve(steps + 1);

  check(0.0);
  deviation();
  const double norm0 = l2_norm(xi, grid.spacing());
  rec.norm_floor = cfg.norm_floor_ratio * norm0;
  rec.times.push_back(0.0);
  rec.norms.push_back(norm0);
  rec.snapshots.push_back({0.0, Profile(grid, xi)});

  for (std::size_t step = 1; step <= steps; ++step) {
    const double t = static_cast<double>(step) * cfg.dt;
    imex_step(cn, p, raw ? std::span<const double>(zero) : std::span<const double>(cbar), state);
    check(t);
    deviation();
    const double norm = l2_norm(xi, grid.spacing());
    rec.times.push_back(t);
    rec.norms.push_back(norm);

    const bool halt = norm < rec.norm_floor;
    if (step % cfg.snapshot_stride == 0 || step == steps || halt) {
      rec.snapshots.push_back({t, Profile(grid, xi)});
    }
    if (halt) break;
  }
  return rec;
}

InvarianceSummary invariance_report(const TrajectoryRecord& record, const ClosedLoopSetup& setup) {
  InvarianceSummary out;
  if (record.snapshots.empty()) return out;
  const Grid& grid = record.snapshots.front().deviation.grid();
  const std::vector<double> bound = m_phi(setup, grid);
  out.tol_inv = tolerance_for(bound);
  for (const Snapshot& s : record.snapshots) {
    SnapshotBounds b{s.time, std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(), false};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double c = s.deviation[i] + record.steady[i];
      b.min_concentration = std::min(b.min_concentration, c);
      b.max_ratio = std::max(b.max_ratio, c / bound[i]);
      if (c < -out.tol_inv || c > bound[i] + out.tol_inv) b.violated = true;
    }
    if (b.violated) ++out.violating_snapshots;
    out.snapshots.push_back(b);
  }
  return out;
}

SupersolutionReport supersolution_check(const ClosedLoopSetup& setup, const Grid& grid) {
  require_valid(setup);
  const ReactorParams& p = setup.params;
  const double m = setup.m_amplitude;
  SupersolutionReport r{};
  r.min_interior_slack = std::numeric_limits<double>::infinity();
  std::vector<double> c(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    c[i] = m * phi(setup, x);
    const double slack = -p.D * m * phi_second_derivative() + p.v * m * phi_derivative(p, x) +
                         p.k * reaction_power(c[i], p.n);
    r.min_interior_slack = std::min(r.min_interior_slack, slack);
  }
  r.inlet_residual_exact =
      (p.D / p.v) * m * phi_derivative(p, 0.0) - (1.0 - setup.alpha) * m * phi(setup, 0.0);
  r.outlet_residual_exact = m * phi_derivative(p, p.l);
  const DiscreteOperator op(p, setup.alpha, grid);
  r.inlet_residual_fd = op.inlet_residual(c);
  r.outlet_residual_fd = op.outlet_residual(c);
  return r;
}

}  // namespace tubestab
