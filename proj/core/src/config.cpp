#include "mwqi/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "mwqi/constants.hpp"
#include "mwqi/errors.hpp"

namespace mwqi {
namespace {

struct NumericKey {
  const char* name;
  bool angular_frequency;  // also accepted as <name>_hz
  std::function<double&(SimulationConfig&)> field;
};

const std::vector<NumericKey>& numeric_keys() {
  static const std::vector<NumericKey> keys = {
      {"omega_m", true, [](SimulationConfig& c) -> double& { return c.params.omega_m; }},
      {"q_factor", false, [](SimulationConfig& c) -> double& { return c.params.q_factor; }},
      {"omega_w", true, [](SimulationConfig& c) -> double& { return c.params.omega_w; }},
      {"omega_o", true, [](SimulationConfig& c) -> double& { return c.params.omega_o; }},
      {"kappa_w_in", true, [](SimulationConfig& c) -> double& { return c.params.kappa_w_in; }},
      {"kappa_w_int", true, [](SimulationConfig& c) -> double& { return c.params.kappa_w_int; }},
      {"kappa_o_in", true, [](SimulationConfig& c) -> double& { return c.params.kappa_o_in; }},
      {"kappa_o_int", true, [](SimulationConfig& c) -> double& { return c.params.kappa_o_int; }},
      {"g_w", true, [](SimulationConfig& c) -> double& { return c.params.g_w; }},
      {"g_o", true, [](SimulationConfig& c) -> double& { return c.params.g_o; }},
      {"t_eom", false, [](SimulationConfig& c) -> double& { return c.params.t_eom; }},
      {"optical_power", false, [](SimulationConfig& c) -> double& { return c.params.optical_power; }},
      {"microwave_drive", true, [](SimulationConfig& c) -> double& { return c.params.microwave_drive; }},
      {"delta_w", true, [](SimulationConfig& c) -> double& { return c.params.delta_w; }},
      {"delta_o", true, [](SimulationConfig& c) -> double& { return c.params.delta_o; }},
      {"mass_kg", false, [](SimulationConfig& c) -> double& { return c.params.mass_kg; }},
      {"optical_cavity_length_m", false,
       [](SimulationConfig& c) -> double& { return c.params.optical_cavity_length_m; }},
      {"eta", false, [](SimulationConfig& c) -> double& { return c.eta; }},
      {"modes", false, [](SimulationConfig& c) -> double& { return c.modes; }},
      {"sideband_omega", true, [](SimulationConfig& c) -> double& { return c.sideband_omega; }},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view text, std::string_view key, int line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ConfigError("malformed number '" + std::string(text) + "' for key '" + std::string(key) + "'", line);
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::optional<double> parse_optional(std::string_view text, std::string_view key, int line) {
  if (text == "none") return std::nullopt;
  return parse_number(text, key, line);
}

void apply(SimulationConfig& c, std::string_view key, std::string_view value, int line) {
  for (const auto& k : numeric_keys()) {
    if (key == k.name) {
      k.field(c) = parse_number(value, key, line);
      return;
    }
    if (k.angular_frequency && key == std::string(k.name) + "_hz") {
      k.field(c) = constants::two_pi * parse_number(value, key, line);
      return;
    }
  }
  if (key == "cooperativity_w") {
    c.params.cooperativity_w = parse_optional(value, key, line);
  } else if (key == "cooperativity_o") {
    c.params.cooperativity_o = parse_optional(value, key, line);
  } else if (key == "optical_wavelength_m") {
    const double lambda = parse_number(value, key, line);
    if (!(lambda > 0.0)) throw ConfigError("optical_wavelength_m must be positive", line);
    c.params.omega_o = constants::two_pi * constants::speed_of_light / lambda;
  } else if (key == "t_background") {
    c.background_temperature = parse_number(value, key, line);
    c.n_background.reset();
  } else if (key == "n_background") {
    c.n_background = parse_optional(value, key, line);
  } else if (key == "fidelity") {
    try {
      c.fidelity = parse_fidelity(value);
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), line);
    }
  } else if (key == "background_model") {
    if (value == "exact") {
      c.background_model = BackgroundModel::exact;
    } else if (value == "approximate") {
      c.background_model = BackgroundModel::approximate;
    } else {
      throw ConfigError("background_model must be 'exact' or 'approximate'", line);
    }
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'", line);
  }
}

// Canonical name, so that omega_m and omega_m_hz count as the same key.
std::string canonical_key(std::string_view key) {
  constexpr std::string_view suffix = "_hz";
  if (key.size() > suffix.size() && key.substr(key.size() - suffix.size()) == suffix) {
    return std::string(key.substr(0, key.size() - suffix.size()));
  }
  if (key == "optical_wavelength_m") return "omega_o";
  return std::string(key);
}

}  // namespace

SimulationConfig fig2_preset() {
  SimulationConfig c;
  PhysicalParams& p = c.params;
  p.omega_m = constants::two_pi * 10e6;
  p.q_factor = 30e3;
  p.omega_w = constants::two_pi * 10e9;
  p.omega_o = constants::two_pi * constants::speed_of_light / 1064e-9;
  p.kappa_w_in = 0.2 * p.omega_m;
  p.kappa_w_int = 0.0;
  p.kappa_o_in = 0.1 * p.omega_m;
  p.kappa_o_int = 0.0;
  p.g_w = constants::two_pi * 0.327;
  p.g_o = constants::two_pi * 115.512;
  p.t_eom = 0.030;
  p.delta_w = p.omega_m;
  p.delta_o = -p.omega_m;
  p.cooperativity_w = 5181.95;
  p.cooperativity_o = 668.43;
  p.mass_kg = 10e-12;
  p.optical_cavity_length_m = 1e-3;
  // Drive settings that realise the cooperativities, so switching to the
  // drive path (cooperativity_* = none) lands on the same point.
  const DriveSettings d = drives_for_cooperativity(p, *p.cooperativity_w, *p.cooperativity_o);
  p.optical_power = d.optical_power;
  p.microwave_drive = d.microwave_drive;

  c.eta = 0.07;
  c.background_temperature = 293.0;
  c.modes = 1e6;
  return c;
}

SimulationConfig preset(std::string_view name) {
  if (name == "fig2") return fig2_preset();
  throw ConfigError("unknown preset '" + std::string(name) + "' (available: fig2)");
}

SimulationConfig parse_config(std::string_view text, const SimulationConfig& base) {
  SimulationConfig c = base;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError("missing value for key '" + std::string(key) + "'", line_no);
    if (!seen.insert(canonical_key(key)).second) {
      throw ConfigError("key '" + std::string(key) + "' given more than once", line_no);
    }
    apply(c, key, value, line_no);
  }
  return c;
}

SimulationConfig load_config_file(const std::string& path, const SimulationConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

std::string to_config_text(const SimulationConfig& config) {
  std::ostringstream out;
  SimulationConfig copy = config;
  out << "# resolved configuration; angular frequencies in rad/s\n";
  for (const auto& k : numeric_keys()) {
    out << k.name << " = " << format_number(k.field(copy)) << "\n";
  }
  auto optional_text = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("none"); };
  out << "cooperativity_w = " << optional_text(config.params.cooperativity_w) << "\n";
  out << "cooperativity_o = " << optional_text(config.params.cooperativity_o) << "\n";
  out << "t_background = " << format_number(config.background_temperature) << "\n";
  if (config.n_background) out << "n_background = " << format_number(*config.n_background) << "\n";
  out << "background_model = " << (config.background_model == BackgroundModel::exact ? "exact" : "approximate")
      << "\n";
  out << "fidelity = " << to_string(config.fidelity) << "\n";
  return out.str();
}

double background_occupancy(const SimulationConfig& config) {
  if (config.n_background) return *config.n_background;
  return planck_occupancy(config.params.omega_w, config.background_temperature);
}

ConverterRates converter_rates(const PhysicalParams& p) {
  return ConverterRates{p.kappa_w(), p.kappa_o(), p.gamma_m()};
}

KappaRatios kappa_ratios(const PhysicalParams& p) {
  return KappaRatios{p.kappa_w_in / p.kappa_w(), p.kappa_o_in / p.kappa_o()};
}

}  // namespace mwqi
