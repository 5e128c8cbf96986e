#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mwqi/cli/evaluation.hpp"
#include "mwqi/cli/sweep.hpp"
#include "mwqi/config.hpp"

namespace mwqi::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_config = 2, exit_unstable = 3 };

struct SourceRow {
  double gamma_w = 0.0;
  double gamma_o = 0.0;
  bool stable = false;
  std::optional<double> metric_e;
  std::optional<double> e_n;
  std::optional<double> i_fwd;
  std::optional<double> i_rev;
  std::optional<double> d_w_o;
  std::optional<double> d_o_w;
};

struct DetectionCurvePoint {
  double m = 0.0;
  double snr_qi = 0.0;
  double snr_coh = 0.0;
  double log10_p_qi = 0.0;
  double log10_p_coh = 0.0;
  std::optional<double> f;  ///< empty when snr_coh = 0
};

struct AdvantageRow {
  double x = 0.0;  ///< gamma_w, or eta for an eta sweep
  double y = 0.0;  ///< gamma_o (unused for an eta sweep)
  bool stable = false;
  std::optional<double> f;
};

/// Rows in grid order: gamma_w outer, gamma_o inner.
std::vector<SourceRow> sweep_source(const SimulationConfig& config, const Axis& gamma_w, const Axis& gamma_o,
                                    unsigned threads);
std::vector<AdvantageRow> sweep_advantage(const SimulationConfig& config, const Axis& gamma_w, const Axis& gamma_o,
                                          unsigned threads);
/// eta sweep at the config's cooperativities.
std::vector<AdvantageRow> sweep_advantage_eta(const SimulationConfig& config, const Axis& eta, unsigned threads);
/// Throws SingularOperatingPoint when the config's operating point is unstable.
std::vector<DetectionCurvePoint> detection_curve(const SimulationConfig& config, const Axis& modes);

void write_source_csv(std::ostream& out, const std::vector<SourceRow>& rows);
void write_advantage_csv(std::ostream& out, const std::vector<AdvantageRow>& rows, bool eta_sweep);
void write_detection_csv(std::ostream& out, const std::vector<DetectionCurvePoint>& rows);

/// Human-readable report of every derived quantity at the config's point.
std::string point_report(const SimulationConfig& config, const PointEvaluation& e);

/// Floating-point CSV field: 12 significant digits, '.' decimal, no locale.
std::string csv_number(double v);

/// Entry point behind the mwqi binary; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mwqi::cli
