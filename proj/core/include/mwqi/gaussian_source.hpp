#pragma once

#include <complex>
#include <optional>

#include "mwqi/eom_converter.hpp"
#include "mwqi/physics_params.hpp"

namespace mwqi {

/// Zero-mean two-mode Gaussian state of the propagating microwave (w) and
/// optical (o) outputs. The covariance matrix, in (x_w, p_w, x_o, p_o) with
/// vacuum variance 1/2, is
///   [[V11, 0, V13, 0], [0, V11, 0, -V13], [V13, 0, V33, 0], [0, -V13, 0, V33]].
struct JointSourceState {
  double n_w = 0.0;
  double n_o = 0.0;
  complex cross{};  ///< <d_w d_o>
  double v11 = 0.5;
  double v33 = 0.5;
  double v13 = 0.0;  ///< |<d_w d_o>|
  /// True when <d_w d_o> had a non-negligible imaginary part and the optical
  /// mode was phase-rotated to reach the real normal form.
  bool phase_rotated = false;
  /// Converter that produced the state, when built by source_moments().
  std::optional<IoCoefficients> converter;
  ThermalOccupancies occupancies{};
};

/// Builds a state from its moments and checks physicality.
JointSourceState make_state(double n_w, double n_o, complex cross);

JointSourceState source_moments(const IoCoefficients& c, const ThermalOccupancies& occ);

struct SymplecticSpectrum {
  double nu_minus = 0.5;
  double nu_plus = 0.5;
  double zeta_minus = 0.5;  ///< smallest eigenvalue after partial transposition
};

double entanglement_metric(const JointSourceState& s);
/// Von Neumann entropy (bits) of a thermal mode with symplectic eigenvalue x.
double entropy_h(double x);
SymplecticSpectrum symplectic_spectrum(const JointSourceState& s);

double log_negativity(const JointSourceState& s);
/// I(o>w) = h(V11) - h(nu-) - h(nu+).
double coherent_information(const JointSourceState& s);
/// I(o<w) = h(V33) - h(nu-) - h(nu+).
double reverse_coherent_information(const JointSourceState& s);

enum class DiscordDirection {
  w_given_o,  ///< D(w|o): optical mode measured
  o_given_w,  ///< D(o|w): microwave mode measured
};

double discord(const JointSourceState& s, DiscordDirection direction);

struct SourceMeasures {
  double metric_e = 0.0;
  double e_n = 0.0;
  double i_fwd = 0.0;
  double i_rev = 0.0;
  double d_w_given_o = 0.0;
  double d_o_given_w = 0.0;
  double zeta_minus = 0.5;
  double nu_minus = 0.5;
  double nu_plus = 0.5;
};

SourceMeasures evaluate_measures(const JointSourceState& s);

/// Measures per emitted microwave photon (raw values retained).
struct NormalizedMeasures {
  SourceMeasures raw;
  double e_n = 0.0;
  double i_fwd = 0.0;
  double i_rev = 0.0;
  double d_w_given_o = 0.0;
  double d_o_given_w = 0.0;
};

NormalizedMeasures normalized_measures(const JointSourceState& s);

}  // namespace mwqi
