#include "tubestab/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tubestab/errors.hpp"

namespace tubestab {

namespace {

constexpr std::array<std::string_view, 11> kKeys{"D",  "v",         "l",  "k",  "n",      "alpha",
                                                 "mu", "alpha_max", "nx", "dt", "t_final"};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_real(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void set_value(SweepSpec& spec, std::string_view key, std::string_view value) {
  if (key == "D") spec.base.params.D = parse_real(value);
  else if (key == "v") spec.base.params.v = parse_real(value);
  else if (key == "l") spec.base.params.l = parse_real(value);
  else if (key == "k") spec.base.params.k = parse_real(value);
  else if (key == "n") spec.base.params.n = parse_real(value);
  else if (key == "alpha") {
    spec.alphas = parse_list(value);
    spec.alphas_from_config = true;
  } else if (key == "mu") spec.initial.mu = parse_real(value);
  else if (key == "alpha_max") spec.initial.alpha_max = parse_real(value);
  else if (key == "nx") {
    const double nx = parse_real(value);
    if (!(nx >= 3.0) || std::floor(nx) != nx) {
      throw Error(ErrorKind::ParseError, "nx must be an integer >= 3");
    }
    spec.sim.grid = Grid(spec.sim.grid.length(), static_cast<std::size_t>(nx));
  } else if (key == "dt") spec.sim.dt = parse_real(value);
  else if (key == "t_final") spec.sim.t_final = parse_real(value);
  else throw Error(ErrorKind::UnknownKey, "unknown key '" + std::string(key) + "'");
}

// Grid length follows l; the grid is rebuilt once all keys are applied.
void sync_grid(SweepSpec& spec) {
  if (spec.base.params.l > 0.0 && spec.sim.grid.length() != spec.base.params.l) {
    spec.sim.grid = Grid(spec.base.params.l, spec.sim.grid.size());
  }
}

}  // namespace

std::span<const std::string_view> config_keys() noexcept { return kKeys; }

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::ParseError, "not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

void apply_config_text(SweepSpec& spec, std::string_view text, std::string_view source) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto where = [&] {
      std::ostringstream os;
      os << source << " line " << line_no;
      return os.str();
    };
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ParseError, where() + ": expected 'key = value', got '" +
                                             std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      set_value(spec, key, value);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnknownKey) {
        throw Error(ErrorKind::UnknownKey, where() + ": unknown key '" + std::string(key) + "'");
      }
      throw Error(e.kind(), where() + ": " + e.what());
    }
  }
  sync_grid(spec);
}

void apply_override(SweepSpec& spec, std::string_view key, std::string_view value) {
  set_value(spec, key, value);
  sync_grid(spec);
}

SweepSpec load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  SweepSpec spec;
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(spec, buf.str(), path.string());
  }
  for (const auto& [key, value] : overrides) apply_override(spec, key, value);
  return spec;
}

void validate_sweep(const SweepSpec& spec) {
  std::vector<std::string> problems;
  if (spec.alphas.empty()) problems.emplace_back("alpha list is empty");
  std::set<double> seen;
  for (double a : spec.alphas) {
    if (!(a < 1.0)) problems.push_back("alpha " + std::to_string(a) + " is not < 1");
    if (!seen.insert(a).second) problems.push_back("duplicate alpha " + std::to_string(a));
  }
  if (auto r = validate(spec.base.params); !r.ok()) {
    for (auto& v : r.violations) problems.push_back(v);
  }
  if (!(spec.initial.mu > 0.0 && spec.initial.mu < 1.0)) problems.emplace_back("0 < mu < 1");
  if (!(spec.initial.alpha_max < 1.0)) problems.emplace_back("alpha_max < 1");
  if (!(spec.sim.dt > 0.0) || !(spec.sim.t_final >= spec.sim.dt)) {
    problems.emplace_back("need dt > 0 and t_final >= dt");
  }
  if (!(spec.fit_window > 0.0 && spec.fit_window <= 1.0)) problems.emplace_back("fit window in (0, 1]");
  if (spec.m_amplitude && !(*spec.m_amplitude > 0.0)) problems.emplace_back("M > 0");
  if (!problems.empty()) {
    std::string msg = "invalid run configuration:";
    for (auto& p : problems) msg += " [" + p + "]";
    throw Error(ErrorKind::InvalidArgument, msg);
  }
}

}  // namespace tubestab
