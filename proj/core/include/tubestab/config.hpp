#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tubestab/model.hpp"
#include "tubestab/pde_sim.hpp"

namespace tubestab {

enum class SteadyGuess { Zero, Phi };

/// Everything an experiment run needs. Defaults reproduce the published
/// setup: k=0.001, v=0.01, l=1, D=0.0025, n=2, mu=0.9, alpha_max=0.95,
/// N=201, dt=0.05 s, t_final=2000 s and the six Table 1 gains.
struct SweepSpec {
  std::vector<double> alphas{-10.0, -1.0, 0.0, 0.5, 0.75, 0.9};
  bool alphas_from_config = false;  ///< alphas came from a file or override
  ClosedLoopSetup base;
  SimConfig sim;
  InitialDataSpec initial;
  std::filesystem::path outputs = ".";

  std::optional<double> m_amplitude;  ///< default: mu * M*(alpha)
  double fit_window = 0.5;
  SteadyGuess guess = SteadyGuess::Zero;
  unsigned workers = 0;  ///< 0 = hardware concurrency
};

/// Ordered key/value overrides applied after the file.
using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Keys accepted by config files and overrides.
std::span<const std::string_view> config_keys() noexcept;

/// Applies `key = value` lines to spec. Blank lines and '#' comments are
/// ignored; `alpha` takes a comma-separated list. Throws ParseError (with the
/// line number) or UnknownKey.
void apply_config_text(SweepSpec& spec, std::string_view text, std::string_view source = "config");

void apply_override(SweepSpec& spec, std::string_view key, std::string_view value);

/// Defaults, then the file (if path is non-empty), then the overrides.
SweepSpec load_config(const std::filesystem::path& path, const ConfigOverrides& overrides);

/// Throws InvalidArgument unless the alpha list is non-empty, duplicate-free
/// and every alpha < 1, and the remaining fields are consistent.
void validate_sweep(const SweepSpec& spec);

double parse_real(std::string_view text);

}  // namespace tubestab
