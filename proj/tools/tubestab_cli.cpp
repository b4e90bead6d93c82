// Command-line front end: spectrum, steady, simulate, decay and sweep.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tubestab/config.hpp"
#include "tubestab/csv.hpp"
#include "tubestab/decay.hpp"
#include "tubestab/errors.hpp"
#include "tubestab/spectral.hpp"
#include "tubestab/steady_state.hpp"
#include "tubestab/sweep.hpp"

namespace ts = tubestab;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  unsigned workers = 0;
  std::vector<std::string> sets;

  std::optional<std::string> alpha;
  std::optional<std::string> alphas;
  std::optional<std::string> nx;
  std::optional<std::string> dt;
  std::optional<std::string> t_final;

  int num_eigs = 1;
  std::string guess = "zero";
  std::string form = "deviation";
  std::string output;
  std::size_t snapshots = 20;
  std::optional<double> m;
  double fit_window = 0.5;
  bool simulate = false;
};

ts::SweepSpec build_spec(const Options& o) {
  ts::ConfigOverrides overrides;
  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ts::Error(ts::ErrorKind::ParseError, "--set expects key=value, got '" + kv + "'");
    }
    overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.alpha) overrides.emplace_back("alpha", *o.alpha);
  if (o.alphas) overrides.emplace_back("alpha", *o.alphas);
  if (o.nx) overrides.emplace_back("nx", *o.nx);
  if (o.dt) overrides.emplace_back("dt", *o.dt);
  if (o.t_final) overrides.emplace_back("t_final", *o.t_final);

  ts::SweepSpec spec = ts::load_config(o.config, overrides);
  spec.outputs = o.out;
  spec.workers = o.workers;
  spec.m_amplitude = o.m;
  spec.fit_window = o.fit_window;
  if (o.guess == "phi") spec.guess = ts::SteadyGuess::Phi;
  spec.sim.form = o.form == "raw" ? ts::SimForm::Raw : ts::SimForm::Deviation;
  return spec;
}

double single_alpha(const ts::SweepSpec& spec) {
  if (!spec.alphas_from_config || spec.alphas.size() != 1) {
    throw ts::Error(ts::ErrorKind::InvalidArgument,
                    "exactly one gain required: pass --alpha or set 'alpha' in the config");
  }
  return spec.alphas.front();
}

double lambda0_at_alpha_max(const ts::SweepSpec& spec) {
  return ts::principal_eigenvalue(spec.base.params, spec.initial.alpha_max).lambda;
}

int cmd_spectrum(const Options& o) {
  const ts::SweepSpec spec = build_spec(o);
  const double alpha = single_alpha(spec);
  ts::write_spectrum_csv(std::cout, ts::compute_spectrum(spec.base.params, alpha, o.num_eigs));
  return 0;
}

int cmd_steady(const Options& o) {
  const ts::SweepSpec spec = build_spec(o);
  const double alpha = single_alpha(spec);
  const ts::ClosedLoopSetup setup{spec.base.params, alpha, 1.0};
  const ts::Grid& grid = spec.sim.grid;
  ts::Profile guess(grid);
  if (spec.guess == ts::SteadyGuess::Phi) {
    const double m = spec.initial.mu *
                     ts::m_star(spec.base.params, alpha, spec.initial, lambda0_at_alpha_max(spec));
    guess = ts::Profile::sample(grid, [&](double x) { return m * ts::phi(setup, x); });
  }
  const ts::SteadyStateResult r = ts::solve_steady(setup, guess);
  std::cerr << "# steady_branch=" << ts::steady_branch(r.profile)
            << " guess=" << o.guess << " converged=" << (r.converged ? "true" : "false")
            << " residual=" << ts::format_number(r.residual_norm)
            << " newton_steps=" << r.newton_steps << '\n';
  if (o.output.empty()) {
    ts::write_profile_csv(std::cout, r.profile);
  } else {
    auto os = ts::open_output(o.output);
    ts::write_profile_csv(os, r.profile);
  }
  return r.converged ? 0 : 1;
}

int cmd_simulate(const Options& o) {
  ts::SweepSpec spec = build_spec(o);
  const double alpha = single_alpha(spec);
  const auto steps = static_cast<std::size_t>(std::ceil(spec.sim.t_final / spec.sim.dt - 1e-9));
  spec.sim.snapshot_stride = std::max<std::size_t>(1, steps / std::max<std::size_t>(1, o.snapshots));

  const ts::GainRun run = ts::run_gain(spec, alpha, lambda0_at_alpha_max(spec));
  std::filesystem::create_directories(spec.outputs);
  {
    auto os = ts::open_output(spec.outputs / "norms.csv");
    ts::write_norms_csv(os, run.record);
  }
  {
    auto os = ts::open_output(spec.outputs / "snapshots.csv");
    ts::write_snapshots_csv(os, run.record);
  }
  std::cerr << "# steady_branch=" << ts::steady_branch(run.steady.profile)
            << " M=" << ts::format_number(run.setup.m_amplitude)
            << " steps=" << run.record.times.size() - 1
            << " invariant_violations=" << run.record.invariant_violations << '\n';
  std::cout << ts::kDecayHeader << '\n' << ts::decay_row(run.report) << '\n';
  return 0;
}

int cmd_decay(const Options& o) {
  const ts::SweepSpec spec = build_spec(o);
  const double alpha = single_alpha(spec);
  ts::DecayReport report;
  if (o.simulate) {
    report = ts::run_gain(spec, alpha, lambda0_at_alpha_max(spec)).report;
  } else {
    ts::ClosedLoopSetup setup{spec.base.params, alpha, 1.0};
    setup.m_amplitude = spec.m_amplitude.value_or(
        spec.initial.mu *
        ts::m_star(spec.base.params, alpha, spec.initial, lambda0_at_alpha_max(spec)));
    report = ts::theoretical_rate(setup, ts::principal_eigenvalue(spec.base.params, alpha).lambda);
  }
  std::cout << ts::kDecayHeader << '\n' << ts::decay_row(report) << '\n';
  return 0;
}

int cmd_sweep(const Options& o) {
  const ts::SweepSpec spec = build_spec(o);
  const auto rows = ts::run_sweep(spec);
  std::cout << ts::kDecayHeader << '\n';
  int status = 0;
  for (const auto& row : rows) {
    if (row.ok()) {
      std::cout << ts::decay_row(row.report) << '\n';
    } else {
      std::cerr << "alpha " << ts::format_number(row.alpha) << " failed: " << *row.error << '\n';
      status = 2;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis and simulation of a feedback-controlled tubular reactor"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config, "key = value configuration file");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--workers", o.workers, "parallel gains in a sweep (0 = all cores)");
  app.add_option("--set", o.sets, "override any config key: --set D=0.003");
  app.add_option("--nx", o.nx, "grid points");
  app.add_option("--dt", o.dt, "time step [s]");
  app.add_option("--tfinal", o.t_final, "time horizon [s]");
  app.add_option("--guess", o.guess, "steady-state Newton guess")
      ->check(CLI::IsMember({"zero", "phi"}));
  app.add_option("--m", o.m, "invariant-set amplitude M (default mu*M*)");
  app.add_option("--fit-window", o.fit_window, "trailing fraction of samples used for lambda_num");

  auto* spectrum = app.add_subcommand("spectrum", "closed-loop eigenvalues as CSV");
  spectrum->add_option("--alpha", o.alpha, "feedback gain");
  spectrum->add_option("--num-eigs", o.num_eigs, "number of eigenvalues")->check(CLI::PositiveNumber);

  auto* steady = app.add_subcommand("steady", "steady-state profile as x,value CSV");
  steady->add_option("--alpha", o.alpha, "feedback gain");
  steady->add_option("-o,--output", o.output, "write CSV here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "simulate one gain; writes norms.csv, snapshots.csv");
  simulate->add_option("--alpha", o.alpha, "feedback gain");
  simulate->add_option("--snapshots", o.snapshots, "number of stored snapshots");
  simulate->add_option("--form", o.form, "integrated variable")
      ->check(CLI::IsMember({"deviation", "raw"}));

  auto* decay = app.add_subcommand("decay", "one DecayReport row as CSV");
  decay->add_option("--alpha", o.alpha, "feedback gain");
  decay->add_flag("--simulate", o.simulate, "also simulate and fit lambda_num");

  auto* sweep = app.add_subcommand("sweep", "alpha sweep: table1.csv, norm curves, plot scripts");
  sweep->add_option("--alphas", o.alphas, "comma-separated gains (default: -10,-1,0,0.5,0.75,0.9)");
  sweep->add_option("--form", o.form, "integrated variable")
      ->check(CLI::IsMember({"deviation", "raw"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) return cmd_spectrum(o);
    if (*steady) return cmd_steady(o);
    if (*simulate) return cmd_simulate(o);
    if (*decay) return cmd_decay(o);
    if (*sweep) return cmd_sweep(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
