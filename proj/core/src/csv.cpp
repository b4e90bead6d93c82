#include "tubestab/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "tubestab/errors.hpp"

namespace tubestab {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error(ErrorKind::IoError, "number formatting failed");
  return std::string(buf, end);
}

std::string decay_row(const DecayReport& r) {
  std::string s = format_number(r.alpha);
  s += ',';
  if (r.lambda_num) s += format_number(*r.lambda_num);
  s += ',' + format_number(r.lambda0);
  s += ',' + format_number(r.lipschitz_L);
  s += ',' + format_number(r.lambda_T);
  s += r.certificate_holds ? ",true," : ",false,";
  s += format_number(r.omega);
  return s;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "k,branch,q,theta,lambda\n";
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const Eigenvalue& e = s.eigenvalues[k];
    os << k << ',' << to_string(e.branch) << ',' << format_number(e.q) << ','
       << format_number(e.theta) << ',' << format_number(e.lambda) << '\n';
  }
}

void write_profile_csv(std::ostream& os, const Profile& p) {
  os << "x,value\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << format_number(p.grid().x(i)) << ',' << format_number(p[i]) << '\n';
  }
}

void write_norms_csv(std::ostream& os, const TrajectoryRecord& rec, double scale) {
  os << "t,l2_norm\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    const double v = scale == 1.0 ? rec.norms[i] : rec.norms[i] / scale;
    os << format_number(rec.times[i]) << ',' << format_number(v) << '\n';
  }
}

void write_snapshots_csv(std::ostream& os, const TrajectoryRecord& rec) {
  os << "t,x,value\n";
  for (const Snapshot& s : rec.snapshots) {
    const std::string t = format_number(s.time);
    for (std::size_t i = 0; i < s.deviation.size(); ++i) {
      os << t << ',' << format_number(s.deviation.grid().x(i)) << ','
         << format_number(s.deviation[i]) << '\n';
    }
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace tubestab
