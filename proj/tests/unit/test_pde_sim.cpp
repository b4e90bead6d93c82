#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "tubestab/decay.hpp"
#include "tubestab/discretization.hpp"
#include "tubestab/errors.hpp"
#include "tubestab/numerics.hpp"
#include "tubestab/pde_sim.hpp"
#include "tubestab/spectral.hpp"

using namespace tubestab;
using tubestab::testing::euler_oracle;
using tubestab::testing::max_abs;
using tubestab::testing::max_abs_diff;

namespace {

const ReactorParams kParams = ReactorParams::experiment_defaults();

double lambda_max() { return principal_eigenvalue(kParams, 0.95).lambda; }

// Setup with M = mu M*(alpha) and the matching initial data.
struct Case {
  ClosedLoopSetup setup;
  Profile xi0;
};

Case default_case(double alpha, const Grid& g) {
  const InitialDataSpec spec;
  const double lam = lambda_max();
  ClosedLoopSetup s{kParams, alpha, spec.mu * m_star(kParams, alpha, spec, lam)};
  return {s, initial_data(s, spec, lam, g)};
}

std::vector<double> to_vector(const Profile& p) { return {p.values().begin(), p.values().end()}; }

}  // namespace

TEST_CASE("discrete operator on the principal eigenfunction") {
  const double alpha = 0.9;
  const Eigenvalue e = principal_eigenvalue(kParams, alpha);
  auto error = [&](std::size_t n) {
    const Grid g(1.0, n);
    const Profile xi = eigenfunction(kParams, e, alpha, g);
    const DiscreteOperator op(kParams, alpha, g);
    const auto axi = op.apply(xi.values());
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) worst = std::max(worst, std::abs(axi[i] - e.lambda * xi[i]));
    return worst;
  };
  CHECK(error(101) / error(201) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("discrete operator on constants and on phi") {
  const ClosedLoopSetup s{kParams, 0.3, 1.0};
  const Grid g(1.0, 51);
  const DiscreteOperator op(kParams, s.alpha, g);
  const std::vector<double> c(g.size(), 2.5);
  const auto ac = op.apply(c);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(std::abs(ac[i]) < 1e-12);
  const Profile ph = Profile::sample(g, [&](double x) { return phi(s, x); });
  CHECK(std::abs(op.outlet_residual(ph.values())) < 1e-12);
  CHECK(std::abs(op.inlet_residual(ph.values())) < 1e-12);
}

TEST_CASE("zero deviation stays at the equilibrium") {
  SimConfig cfg;
  cfg.grid = Grid(1.0, 41);
  cfg.t_final = 50.0;
  const ClosedLoopSetup s{kParams, 0.0, 1.0};
  const auto rec = simulate(s, Profile(cfg.grid), Profile(cfg.grid), cfg);
  for (double n : rec.norms) CHECK(n < 1e-12);
  CHECK(rec.invariant_violations == 0);
}

TEST_CASE("one IMEX step agrees with a fine explicit Euler integration") {
  const Grid g(1.0, 41);
  for (double alpha : {-1.0, 0.0, 0.9}) {
    CAPTURE(alpha);
    const Case c = default_case(alpha, g);
    const double dt = 0.05;
    const auto cn = step_operator(c.setup, g, dt);
    const std::vector<double> steady(g.size(), 0.0);
    std::vector<double> xi = to_vector(c.xi0);
    imex_step(cn, kParams, steady, xi);
    const auto oracle = euler_oracle(c.setup, steady, to_vector(c.xi0), g.spacing(), dt, 1000);
    CHECK(max_abs_diff(xi, oracle) / max_abs(oracle) < 1e-6);
  }
}

TEST_CASE("time stepping is at least second order on a smooth problem") {
  const Grid g(1.0, 51);
  Case c = default_case(0.0, g);
  c.setup.m_amplitude *= 20.0;  // stronger reaction
  std::vector<double> scaled = to_vector(c.xi0);
  for (double& v : scaled) v *= 20.0;
  const Profile xi0(g, scaled);
  auto terminal = [&](double dt) {
    SimConfig cfg;
    cfg.grid = g;
    cfg.dt = dt;
    cfg.t_final = 10.0;
    cfg.snapshot_stride = 1000000;
    return to_vector(simulate(c.setup, Profile(g), xi0, cfg).snapshots.back().deviation);
  };
  const double dt = 0.2;
  const auto ref = terminal(dt / 16);
  const double e1 = max_abs_diff(terminal(dt), ref);
  const double e2 = max_abs_diff(terminal(dt / 2), ref);
  CHECK(e1 / e2 >= 1.9);
}

TEST_CASE("linear closed loop decays at the principal eigenvalue") {
  SimConfig cfg;  // N = 201, dt = 0.05, t_final = 2000
  for (double alpha : {0.5}) {
    ClosedLoopSetup s{kParams, alpha, 1.0};
    s.params.k = 0.0;
    const Profile xi0 = Profile::sample(cfg.grid, [&](double x) { return 0.1 * phi(s, x); });
    const auto rec = simulate(s, Profile(cfg.grid), xi0, cfg);
    const double slope = lyapunov_exponent(rec).slope;
    CHECK(std::abs(slope - principal_eigenvalue(kParams, alpha).lambda) < 2e-4);
  }
}

TEST_CASE("invariance report flags a planted violation") {
  SimConfig cfg;
  cfg.grid = Grid(1.0, 41);
  cfg.dt = 0.5;
  cfg.t_final = 5.0;
  cfg.snapshot_stride = 2;
  Case c = default_case(0.0, cfg.grid);
  std::vector<double> v = to_vector(c.xi0);
  v[20] = 1.5 * c.setup.m_amplitude * phi(c.setup, cfg.grid.x(20));
  const auto rec = simulate(c.setup, Profile(cfg.grid), Profile(cfg.grid, v), cfg);
  const auto report = invariance_report(rec, c.setup);
  REQUIRE_FALSE(report.snapshots.empty());
  CHECK(report.snapshots.front().violated);
  CHECK(report.snapshots.front().max_ratio == doctest::Approx(1.5));
  CHECK_FALSE(report.ok());
  CHECK(rec.invariant_violations >= 1);
}

TEST_CASE("invariance report on vanishing initial data") {
  SimConfig cfg;
  cfg.grid = Grid(1.0, 41);
  cfg.t_final = 20.0;
  const ClosedLoopSetup s{kParams, 0.0, 1.0};
  const auto rec = simulate(s, Profile(cfg.grid), Profile(cfg.grid), cfg);
  const auto report = invariance_report(rec, s);
  CHECK(report.ok());
  for (const auto& b : report.snapshots) {
    CHECK(b.min_concentration == 0.0);
    CHECK(b.max_ratio == 0.0);
  }
}

TEST_CASE("default initial data stays in the invariant set") {
  SimConfig cfg;
  cfg.t_final = 300.0;
  for (double alpha : {-10.0, 0.0, 0.9}) {
    const Case c = default_case(alpha, cfg.grid);
    const auto rec = simulate(c.setup, Profile(cfg.grid), c.xi0, cfg);
    CHECK(rec.invariant_violations == 0);
    CHECK(invariance_report(rec, c.setup).ok());
  }
}

TEST_CASE("M phi is a super-solution") {
  const ClosedLoopSetup s{kParams, 0.0, 1.0};
  const auto r = supersolution_check(s, Grid(1.0, 201));
  const double at_outlet = 2 * kParams.D + kParams.k * 1.5 * 1.5;
  CHECK(r.min_interior_slack == doctest::Approx(at_outlet).epsilon(1e-12));
  CHECK(std::abs(r.inlet_residual_exact) < 1e-12);
  CHECK(std::abs(r.outlet_residual_exact) < 1e-12);
  CHECK(std::abs(r.inlet_residual_fd) < 1e-10);
  CHECK(std::abs(r.outlet_residual_fd) < 1e-10);
  for (double alpha : {-10.0, 0.5, 0.95}) {
    CHECK(supersolution_check({kParams, alpha, 0.3}, Grid(1.0, 101)).min_interior_slack > 0.0);
  }
}

TEST_CASE("simulation is deterministic") {
  SimConfig cfg;
  cfg.t_final = 100.0;
  const Case c = default_case(0.5, cfg.grid);
  const auto a = simulate(c.setup, Profile(cfg.grid), c.xi0, cfg);
  const auto b = simulate(c.setup, Profile(cfg.grid), c.xi0, cfg);
  CHECK(a.norms == b.norms);
  CHECK(a.times == b.times);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].deviation == b.snapshots[i].deviation);
  }
}

TEST_CASE("raw and deviation forms agree") {
  SimConfig cfg;
  cfg.t_final = 100.0;
  const Case c = default_case(0.0, cfg.grid);
  const auto dev = simulate(c.setup, Profile(cfg.grid), c.xi0, cfg);
  cfg.form = SimForm::Raw;
  const auto raw = simulate(c.setup, Profile(cfg.grid), c.xi0, cfg);
  REQUIRE(dev.norms.size() == raw.norms.size());
  for (std::size_t i = 0; i < dev.norms.size(); ++i) {
    CHECK(raw.norms[i] == doctest::Approx(dev.norms[i]).epsilon(1e-12));
  }
}

TEST_CASE("late-time decay is monotone") {
  SimConfig cfg;
  const Case c = default_case(0.0, cfg.grid);
  const auto rec = simulate(c.setup, Profile(cfg.grid), c.xi0, cfg);
  REQUIRE(rec.norms.size() > 100);
  for (std::size_t i = rec.norms.size() / 2; i < rec.norms.size(); ++i) {
    CHECK(rec.norms[i] < rec.norms[i - 1]);
  }
}

TEST_CASE("records are consistent") {
  SimConfig cfg;
  cfg.grid = Grid(1.0, 41);
  cfg.dt = 0.1;
  cfg.t_final = 10.0;
  cfg.snapshot_stride = 30;
  const Case c = default_case(0.0, cfg.grid);
  const auto rec = simulate(c.setup, Profile(cfg.grid), c.xi0, cfg);
  CHECK(rec.times.size() == rec.norms.size());
  CHECK(rec.times.size() == 101);
  for (std::size_t i = 1; i < rec.times.size(); ++i) CHECK(rec.times[i] > rec.times[i - 1]);
  CHECK(rec.snapshots.size() == 5);  // t = 0, 3, 6, 9 and the final time
  CHECK(rec.snapshots.back().time == doctest::Approx(10.0));
  CHECK(rec.norms.front() == doctest::Approx(l2_norm(c.xi0)));
}

TEST_CASE("fractional order rejects negative concentrations") {
  SimConfig cfg;
  cfg.grid = Grid(1.0, 21);
  cfg.t_final = 1.0;
  ClosedLoopSetup s{kParams, 0.0, 1.0};
  s.params.n = 1.5;
  std::vector<double> v(cfg.grid.size(), 0.01);
  v[10] = -0.01;
  try {
    simulate(s, Profile(cfg.grid), Profile(cfg.grid, v), cfg);
    FAIL("expected NegativeConcentration");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeConcentration);
  }
}

TEST_CASE("invalid configurations") {
  SimConfig cfg;
  cfg.grid = Grid(1.0, 21);
  const ClosedLoopSetup s{kParams, 0.0, 1.0};
  cfg.dt = 0.0;
  CHECK_THROWS_AS(simulate(s, Profile(cfg.grid), Profile(cfg.grid), cfg), Error);
  cfg.dt = 0.05;
  CHECK_THROWS_AS(simulate(s, Profile(Grid(1.0, 11)), Profile(cfg.grid), cfg), Error);
}
