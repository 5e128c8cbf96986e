#pragma once

#include <optional>
#include <string>

#include "mwqi/config.hpp"
#include "mwqi/eom_converter.hpp"
#include "mwqi/gaussian_source.hpp"
#include "mwqi/physics_params.hpp"
#include "mwqi/qi_receiver.hpp"

namespace mwqi::cli {

/// Full pipeline at one (gamma_w, gamma_o). Stages after the stability check
/// are left empty for unstable points; `error` explains a stage that could
/// not be evaluated (e.g. undefined normalization).
struct PointEvaluation {
  double gamma_w = 0.0;
  double gamma_o = 0.0;
  ThermalOccupancies occ{};
  StabilityReport stability{};
  std::optional<IoCoefficients> coefficients;
  std::optional<JointSourceState> state;
  std::optional<NormalizedMeasures> measures;
  std::optional<ReceiverStats> receiver;
  std::string error;
};

/// Cooperativities of the config: the direct inputs, or derived from the drives.
std::pair<double, double> config_cooperativities(const SimulationConfig& config);

TargetScenario scenario(const SimulationConfig& config);

PointEvaluation evaluate_point(const SimulationConfig& config, double gamma_w, double gamma_o,
                               bool with_receiver);

}  // namespace mwqi::cli
