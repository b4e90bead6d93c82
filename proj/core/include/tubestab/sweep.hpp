#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tubestab/config.hpp"
#include "tubestab/decay.hpp"
#include "tubestab/pde_sim.hpp"
#include "tubestab/steady_state.hpp"

namespace tubestab {

/// Full pipeline for one gain.
struct GainRun {
  ClosedLoopSetup setup;
  SteadyStateResult steady;
  TrajectoryRecord record;
  DecayReport report;
  InvarianceSummary invariance;
};

/// Builds the setup for `alpha` (M defaults to mu M*(alpha)), the initial
/// data, the steady state and the trajectory, and assembles the report.
GainRun run_gain(const SweepSpec& spec, double alpha, double lambda0_at_alpha_max);

struct SweepRow {
  double alpha = 0.0;
  DecayReport report;
  std::string norm_curve_path;  ///< relative to the output directory
  std::string steady_branch;
  double m_amplitude = 0.0;
  std::size_t invariant_violations = 0;
  std::optional<std::string> error;  ///< set when this gain failed

  bool ok() const noexcept { return !error.has_value(); }
};

/// File name of the rescaled norm curve for a gain, e.g. "norms_0.5.csv".
std::string norm_curve_name(double alpha);

/// Runs every gain (concurrently when spec.workers != 1), then writes, in
/// input order: table1.csv, norms_<alpha>.csv (rescaled to start at 1),
/// decay_vs_alpha.csv, metadata.txt and the two plot scripts.
/// A failing gain is recorded in its row; the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Writes fig1_norms.gp (log-scale norm overlay) and fig2_decay.gp
/// (-lambda_num, -lambda0, -lambda_T against alpha). Scripts only use
/// paths relative to `outputs`. Returns the written paths.
std::vector<std::filesystem::path> emit_plots(const std::vector<SweepRow>& rows,
                                              const std::filesystem::path& outputs);

}  // namespace tubestab
