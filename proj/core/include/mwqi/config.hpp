#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mwqi/eom_converter.hpp"
#include "mwqi/physics_params.hpp"
#include "mwqi/qi_receiver.hpp"

namespace mwqi {

/// Everything needed to evaluate an operating point: device, scenario and
/// model choice.
struct SimulationConfig {
  PhysicalParams params;

  double eta = 0.07;
  double background_temperature = 293.0;
  std::optional<double> n_background;  ///< overrides background_temperature
  double modes = 1e6;
  BackgroundModel background_model = BackgroundModel::exact;

  Fidelity fidelity = Fidelity::lossless_narrowband;
  double sideband_omega = 0.0;  ///< rad/s, spectral fidelity only
};

/// Device of the 10 ng resonator design at the detection operating point
/// (gamma_w = 5181.95, gamma_o = 668.43, eta = 0.07, T_B = 293 K).
SimulationConfig fig2_preset();

/// Named preset; throws ConfigError for unknown names.
SimulationConfig preset(std::string_view name);

/// Applies `key = value` lines onto base. '#' starts a comment. Keys ending
/// in _hz are the matching angular-frequency key divided by 2 pi. Unknown
/// keys, repeated keys and malformed values raise ConfigError with the line.
SimulationConfig parse_config(std::string_view text, const SimulationConfig& base = SimulationConfig{});

SimulationConfig load_config_file(const std::string& path, const SimulationConfig& base = SimulationConfig{});

/// Fully resolved configuration in the format parse_config reads; parsing the
/// text onto any base reproduces the config exactly.
std::string to_config_text(const SimulationConfig& config);

/// n_B: the explicit occupancy, or Planck occupancy at omega_w and T_B.
double background_occupancy(const SimulationConfig& config);

ConverterRates converter_rates(const PhysicalParams& p);
KappaRatios kappa_ratios(const PhysicalParams& p);

}  // namespace mwqi
