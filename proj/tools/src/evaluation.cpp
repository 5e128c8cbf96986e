#include "mwqi/cli/evaluation.hpp"

#include "mwqi/errors.hpp"

namespace mwqi::cli {

std::pair<double, double> config_cooperativities(const SimulationConfig& config) {
  const DerivedRates r = derive_rates(config.params);
  return {r.cooperativity_w, r.cooperativity_o};
}

TargetScenario scenario(const SimulationConfig& config) {
  TargetScenario t;
  t.eta = config.eta;
  t.n_background = background_occupancy(config);
  t.modes = config.modes;
  t.background_model = config.background_model;
  return t;
}

PointEvaluation evaluate_point(const SimulationConfig& config, double gamma_w, double gamma_o,
                               bool with_receiver) {
  PointEvaluation e;
  e.gamma_w = gamma_w;
  e.gamma_o = gamma_o;
  e.occ = occupancies(config.params, config.background_temperature);
  e.occ.n_background = background_occupancy(config);

  const ConverterRates rates = converter_rates(config.params);
  e.stability = stability(gamma_w, gamma_o, rates);
  if (!e.stability.stable) return e;

  try {
    e.coefficients = coefficients(config.fidelity, gamma_w, gamma_o, rates, kappa_ratios(config.params),
                                  config.sideband_omega);
  } catch (const SingularOperatingPoint& ex) {
    e.stability.stable = false;
    e.error = ex.what();
    return e;
  }
  e.state = source_moments(*e.coefficients, e.occ);

  try {
    e.measures = normalized_measures(*e.state);
  } catch (const DomainError& ex) {
    e.error = ex.what();
  }
  if (with_receiver) {
    e.receiver = receiver_moments(*e.state, *e.coefficients, e.occ, scenario(config));
  }
  return e;
}

}  // namespace mwqi::cli
