#include "tubestab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <thread>

#include "tubestab/csv.hpp"
#include "tubestab/errors.hpp"
#include "tubestab/spectral.hpp"

namespace tubestab {

namespace {

struct RowOutcome {
  std::optional<GainRun> run;
  std::string error;
};

const char* form_name(SimForm f) { return f == SimForm::Raw ? "raw" : "deviation"; }
const char* guess_name(SteadyGuess g) { return g == SteadyGuess::Phi ? "phi" : "zero"; }

}  // namespace

GainRun run_gain(const SweepSpec& spec, double alpha, double lambda0_at_alpha_max) {
  const ReactorParams& p = spec.base.params;
  const Grid& grid = spec.sim.grid;

  ClosedLoopSetup setup{p, alpha, 1.0};
  const double default_m = spec.initial.mu * m_star(p, alpha, spec.initial, lambda0_at_alpha_max);
  setup.m_amplitude = spec.m_amplitude.value_or(default_m);
  require_valid(setup);

  const Profile xi0 = initial_data(setup, spec.initial, lambda0_at_alpha_max, grid);
  const Profile guess = spec.guess == SteadyGuess::Phi
                            ? Profile::sample(grid, [&](double x) { return default_m * phi(p, alpha, x); })
                            : Profile(grid);
  SteadyStateResult steady = solve_steady(setup, guess);
  if (!steady.converged) {
    throw Error(ErrorKind::NoConvergence, "steady-state Newton iteration did not converge");
  }
  TrajectoryRecord record = simulate(setup, steady.profile, xi0, spec.sim);
  InvarianceSummary invariance = invariance_report(record, setup);

  const Eigenvalue principal = principal_eigenvalue(p, alpha);
  DecayReport report = theoretical_rate(setup, principal.lambda);
  report.lambda_num = lyapunov_exponent(record, spec.fit_window).slope;
  return {setup, std::move(steady), std::move(record), report, std::move(invariance)};
}

std::string norm_curve_name(double alpha) { return "norms_" + format_number(alpha) + ".csv"; }

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  std::filesystem::create_directories(spec.outputs);

  const double lambda0_max = principal_eigenvalue(spec.base.params, spec.initial.alpha_max).lambda;

  const std::size_t count = spec.alphas.size();
  std::vector<RowOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        outcomes[i].run = run_gain(spec, spec.alphas[i], lambda0_max);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  unsigned workers = spec.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : spec.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<SweepRow> rows(count);
  auto table = open_output(spec.outputs / "table1.csv");
  auto decay = open_output(spec.outputs / "decay_vs_alpha.csv");
  auto meta = open_output(spec.outputs / "metadata.txt");
  table << kDecayHeader << '\n';
  decay << "alpha,lambda_num,lambda0,lambda_T\n";

  const ReactorParams& p = spec.base.params;
  meta << "D = " << format_number(p.D) << "\nv = " << format_number(p.v)
       << "\nl = " << format_number(p.l) << "\nk = " << format_number(p.k)
       << "\nn = " << format_number(p.n) << "\nmu = " << format_number(spec.initial.mu)
       << "\nalpha_max = " << format_number(spec.initial.alpha_max)
       << "\nlambda0_alpha_max = " << format_number(lambda0_max)
       << "\nnx = " << spec.sim.grid.size() << "\ndt = " << format_number(spec.sim.dt)
       << "\nt_final = " << format_number(spec.sim.t_final)
       << "\nform = " << form_name(spec.sim.form) << "\nsteady_guess = " << guess_name(spec.guess)
       << "\nfit_window = " << format_number(spec.fit_window) << '\n';

  for (std::size_t i = 0; i < count; ++i) {
    SweepRow& row = rows[i];
    row.alpha = spec.alphas[i];
    const std::string a = format_number(row.alpha);
    if (!outcomes[i].run) {
      row.error = outcomes[i].error;
      table << a << ",,,,,error,\n";
      decay << a << ",,,\n";
      meta << "alpha " << a << ": error = " << *row.error << '\n';
      continue;
    }
    const GainRun& run = *outcomes[i].run;
    row.report = run.report;
    row.m_amplitude = run.setup.m_amplitude;
    row.steady_branch = steady_branch(run.steady.profile);
    row.invariant_violations = run.record.invariant_violations;
    row.norm_curve_path = norm_curve_name(row.alpha);

    table << decay_row(row.report) << '\n';
    decay << a << ',' << format_number(*row.report.lambda_num) << ','
          << format_number(row.report.lambda0) << ',' << format_number(row.report.lambda_T)
          << '\n';
    auto norms = open_output(spec.outputs / row.norm_curve_path);
    write_norms_csv(norms, run.record, run.record.norms.front());
    meta << "alpha " << a << ": M = " << format_number(row.m_amplitude)
         << ", steady_branch = " << row.steady_branch
         << ", newton_steps = " << run.steady.newton_steps
         << ", steps = " << (run.record.times.size() - 1)
         << ", invariant_violations = " << row.invariant_violations << '\n';
  }
  emit_plots(rows, spec.outputs);
  return rows;
}

std::vector<std::filesystem::path> emit_plots(const std::vector<SweepRow>& rows,
                                              const std::filesystem::path& outputs) {
  if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "no sweep rows to plot");
  const auto fig1 = outputs / "fig1_norms.gp";
  const auto fig2 = outputs / "fig2_decay.gp";
  {
    auto os = open_output(fig1);
    os << "# Run from this directory: gnuplot fig1_norms.gp\n"
          "set datafile separator ','\n"
          "set terminal pngcairo size 900,600\n"
          "set output 'fig1_norms.png'\n"
          "set logscale y\n"
          "set xlabel 't [s]'\n"
          "set ylabel '||xi(t)|| / ||xi(0)||'\n"
          "set key outside right\n";
    bool first = true;
    for (const SweepRow& r : rows) {
      if (!r.ok()) continue;
      os << (first ? "plot " : ", \\\n     ") << "'" << r.norm_curve_path
         << "' skip 1 using 1:2 with lines title 'alpha = " << format_number(r.alpha) << "'";
      first = false;
    }
    os << (first ? "print 'no successful rows'\n" : "\n");
  }
  {
    auto os = open_output(fig2);
    os << "# Run from this directory: gnuplot fig2_decay.gp\n"
          "# Stored rates are signed; the plot shows decay rates -lambda.\n"
          "set datafile separator ','\n"
          "set terminal pngcairo size 900,600\n"
          "set output 'fig2_decay.png'\n"
          "set xlabel 'alpha'\n"
          "set ylabel 'decay rate [1/s]'\n"
          "plot 'decay_vs_alpha.csv' skip 1 using 1:(-$2) with linespoints title '-lambda_{Num}', \\\n"
          "     'decay_vs_alpha.csv' skip 1 using 1:(-$3) with linespoints title '-lambda_0', \\\n"
          "     'decay_vs_alpha.csv' skip 1 using 1:(-$4) with linespoints title '-lambda_T'\n";
  }
  return {fig1, fig2};
}

}  // namespace tubestab
