#pragma once

#include <complex>

#include "mwqi/eom_converter.hpp"
#include "mwqi/gaussian_source.hpp"
#include "mwqi/physics_params.hpp"

namespace mwqi {

/// Background seen by the receiver when the target is present.
enum class BackgroundModel {
  exact,        ///< n_B / (1 - eta): no passive signature
  approximate,  ///< n_B
};

struct TargetScenario {
  double eta = 0.0;           ///< roundtrip transmissivity, 0 <= eta < 1
  double n_background = 0.0;  ///< n_B under target absence
  double modes = 1.0;         ///< M = t_m W_m
  BackgroundModel background_model = BackgroundModel::exact;
};

void validate(const TargetScenario& t);

struct ErrorProbability {
  double value = 0.5;   ///< may underflow to 0 for huge SNR
  double log10 = 0.0;   ///< always finite for finite SNR
};

/// Conditional single-mode-pair statistics of the photon-count difference
/// N_+ - N_- behind the 50-50 beam splitter, plus the M-mode figures.
struct ReceiverStats {
  double mean_plus_h0 = 0.0;
  double mean_minus_h0 = 0.0;
  double mean_plus_h1 = 0.0;
  double mean_minus_h1 = 0.0;
  double var_diff_h0 = 0.0;
  double var_diff_h1 = 0.0;
  double n_return_h0 = 0.0;  ///< <d_eta,o^+ d_eta,o> under H0
  double n_return_h1 = 0.0;
  complex return_idler_h1{};  ///< <d_eta,o^+ d_o> under H1 (zero under H0)

  double modes = 1.0;
  double snr_qi = 0.0;
  double snr_coh = 0.0;
  ErrorProbability p_qi{};
  ErrorProbability p_coh{};
  double advantage_f = 0.0;  ///< NaN when snr_coh = 0
};

/// Moments and detection figures. The receiver converter is c; it must be
/// the converter that produced s.
ReceiverStats receiver_moments(const JointSourceState& s, const IoCoefficients& c,
                               const ThermalOccupancies& occ, const TargetScenario& t);

/// M-mode SNR from the single-pair moments.
double snr_qi(const ReceiverStats& stats, double modes);
/// erfc(sqrt(snr / 8)) / 2.
ErrorProbability error_probability(double snr);
/// 4 eta M n_w / (2 n_B + 1).
double snr_coherent(const TargetScenario& t, double n_w);
ErrorProbability p_coherent(const TargetScenario& t, double n_w);
/// SNR_QI / SNR_coh. Throws when snr_coh is not positive.
double advantage_figure(const ReceiverStats& stats);

struct ThresholdResult {
  double value = 0.0;
  bool never_entangled = false;  ///< value < 0: returns never entangled
};

/// Background occupancy above which return and retained modes are separable.
ThresholdResult entanglement_threshold(const JointSourceState& s, double eta);

/// Longest target range (km) whose matching idler fiber stays within the
/// loss budget.
double max_idler_range(double fiber_loss_db_per_km, double budget_db, double fiber_speed_fraction);

}  // namespace mwqi
