#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mwqi {

/// Raw device and environment parameters of the electro-opto-mechanical
/// converter. Angular frequencies and rates are in rad/s, temperatures in K,
/// powers in W.
struct PhysicalParams {
  double omega_m = 0.0;   ///< mechanical resonance
  double q_factor = 0.0;  ///< mechanical quality factor
  double omega_w = 0.0;   ///< microwave cavity resonance
  double omega_o = 0.0;   ///< optical cavity resonance

  double kappa_w_in = 0.0;
  double kappa_w_int = 0.0;
  double kappa_o_in = 0.0;
  double kappa_o_int = 0.0;

  double g_w = 0.0;  ///< single-photon electromechanical coupling
  double g_o = 0.0;  ///< single-photon optomechanical coupling

  double t_eom = 0.0;            ///< converter temperature
  double optical_power = 0.0;    ///< P_o
  double microwave_drive = 0.0;  ///< drive amplitude E_w (rad/s)

  double delta_w = 0.0;  ///< effective microwave detuning, nominally +omega_m
  double delta_o = 0.0;  ///< effective optical detuning, nominally -omega_m

  /// Direct cooperativity inputs. When both are set they take precedence over
  /// the drive-power path in derive_rates().
  std::optional<double> cooperativity_w;
  std::optional<double> cooperativity_o;

  // Descriptive only; not used by any computation.
  double mass_kg = 0.0;
  double optical_cavity_length_m = 0.0;

  double kappa_w() const { return kappa_w_in + kappa_w_int; }
  double kappa_o() const { return kappa_o_in + kappa_o_int; }
  double gamma_m() const { return omega_m / q_factor; }
};

struct ThermalOccupancies {
  double n_w = 0.0;      ///< microwave input bath at T_EOM
  double n_o = 0.0;      ///< optical input bath at T_EOM
  double n_b = 0.0;      ///< mechanical bath at T_EOM
  double n_w_int = 0.0;  ///< microwave intrinsic-loss bath
  double n_o_int = 0.0;  ///< optical intrinsic-loss bath
  double n_background = 0.0;  ///< target-region background at omega_w, T_B
};

struct DerivedRates {
  double gamma_m = 0.0;
  double coupling_w = 0.0;  ///< G_w = g_w sqrt(N_w)
  double coupling_o = 0.0;  ///< G_o = g_o sqrt(N_o)
  double photons_w = 0.0;   ///< intracavity pump photons N_w
  double photons_o = 0.0;   ///< intracavity pump photons N_o
  double cooperativity_w = 0.0;
  double cooperativity_o = 0.0;
};

/// Drive settings that realise a requested pair of cooperativities.
struct DriveSettings {
  double optical_power = 0.0;
  double microwave_drive = 0.0;
};

/// Mean thermal occupancy [exp(hbar omega / k_B T) - 1]^-1; 0 at T = 0.
/// Throws DomainError for non-finite input, omega <= 0 or T < 0.
double planck_occupancy(double omega, double temperature);

/// Checks the hard invariants (throws DomainError) and returns soft regime
/// warnings, e.g. detunings away from the red/blue sideband.
std::vector<std::string> validate(const PhysicalParams& p);

DerivedRates derive_rates(const PhysicalParams& p);

/// Inverse of derive_rates' drive path: P_o and E_w giving (gamma_w, gamma_o).
DriveSettings drives_for_cooperativity(const PhysicalParams& p, double cooperativity_w,
                                       double cooperativity_o);

ThermalOccupancies occupancies(const PhysicalParams& p, double background_temperature);

}  // namespace mwqi
