#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>

#include "tubestab/decay.hpp"
#include "tubestab/grid.hpp"
#include "tubestab/pde_sim.hpp"
#include "tubestab/spectral.hpp"

namespace tubestab {

/// Shortest round-trip decimal form; '.' separator regardless of locale.
std::string format_number(double value);

inline constexpr const char* kDecayHeader = "alpha,lambda_num,lambda0,L,lambda_T,certificate,omega";

std::string decay_row(const DecayReport& r);

void write_spectrum_csv(std::ostream& os, const Spectrum& s);
void write_profile_csv(std::ostream& os, const Profile& p);
/// `t,l2_norm`; norms are divided by `scale` (1 keeps them as is).
void write_norms_csv(std::ostream& os, const TrajectoryRecord& rec, double scale = 1.0);
/// Long format `t,x,value` of the deviation snapshots.
void write_snapshots_csv(std::ostream& os, const TrajectoryRecord& rec);

/// Opens a file for writing in binary mode ('\n' line ends); throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace tubestab
