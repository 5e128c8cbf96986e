#include "mwqi/physics_params.hpp"

#include <cmath>
#include <string>

#include "mwqi/constants.hpp"
#include "mwqi/errors.hpp"

namespace mwqi {
namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw DomainError(std::string(name) + " must be finite");
}

void require_positive(double value, const char* name) {
  require_finite(value, name);
  if (value <= 0.0) throw DomainError(std::string(name) + " must be positive");
}

void require_non_negative(double value, const char* name) {
  require_finite(value, name);
  if (value < 0.0) throw DomainError(std::string(name) + " must be non-negative");
}

// Drive frequency of the optical pump, omega_o - Delta_0,o, expressed through
// the effective detuning.
double optical_drive_frequency(const PhysicalParams& p) {
  double omega_d = p.omega_o - p.delta_o;
  if (omega_d <= 0.0) throw DomainError("optical drive frequency omega_o - delta_o must be positive");
  return omega_d;
}

}  // namespace

double planck_occupancy(double omega, double temperature) {
  if (!std::isfinite(omega) || !std::isfinite(temperature)) {
    throw DomainError("planck_occupancy: non-finite argument");
  }
  if (omega <= 0.0) throw DomainError("planck_occupancy: omega must be positive");
  if (temperature < 0.0) throw DomainError("planck_occupancy: temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  double x = constants::hbar * omega / (constants::boltzmann * temperature);
  // expm1 keeps full precision in the classical limit x -> 0; for huge x it
  // overflows to inf and the occupancy correctly becomes 0.
  return 1.0 / std::expm1(x);
}

std::vector<std::string> validate(const PhysicalParams& p) {
  require_positive(p.omega_m, "omega_m");
  require_positive(p.q_factor, "q_factor");
  require_positive(p.omega_w, "omega_w");
  require_positive(p.omega_o, "omega_o");
  require_positive(p.kappa_w_in, "kappa_w_in");
  require_positive(p.kappa_o_in, "kappa_o_in");
  require_non_negative(p.kappa_w_int, "kappa_w_int");
  require_non_negative(p.kappa_o_int, "kappa_o_int");
  require_positive(p.g_w, "g_w");
  require_positive(p.g_o, "g_o");
  require_non_negative(p.t_eom, "t_eom");
  require_non_negative(p.optical_power, "optical_power");
  require_non_negative(p.microwave_drive, "microwave_drive");
  require_finite(p.delta_w, "delta_w");
  require_finite(p.delta_o, "delta_o");
  if (p.cooperativity_w) require_non_negative(*p.cooperativity_w, "cooperativity_w");
  if (p.cooperativity_o) require_non_negative(*p.cooperativity_o, "cooperativity_o");
  if (p.cooperativity_w.has_value() != p.cooperativity_o.has_value()) {
    throw DomainError("cooperativity_w and cooperativity_o must be given together");
  }

  std::vector<std::string> warnings;
  constexpr double tolerance = 1e-6;
  if (std::abs(p.delta_w - p.omega_m) > tolerance * p.omega_m) {
    warnings.push_back("delta_w differs from +omega_m; the beam-splitter (red sideband) model assumes equality");
  }
  if (std::abs(p.delta_o + p.omega_m) > tolerance * p.omega_m) {
    warnings.push_back("delta_o differs from -omega_m; the down-conversion (blue sideband) model assumes equality");
  }
  return warnings;
}

DerivedRates derive_rates(const PhysicalParams& p) {
  validate(p);
  DerivedRates r;
  r.gamma_m = p.gamma_m();
  const double kappa_w = p.kappa_w();
  const double kappa_o = p.kappa_o();

  if (p.cooperativity_w && p.cooperativity_o) {
    r.cooperativity_w = *p.cooperativity_w;
    r.cooperativity_o = *p.cooperativity_o;
    r.coupling_w = std::sqrt(r.cooperativity_w * kappa_w * r.gamma_m);
    r.coupling_o = std::sqrt(r.cooperativity_o * kappa_o * r.gamma_m);
    r.photons_w = (r.coupling_w * r.coupling_w) / (p.g_w * p.g_w);
    r.photons_o = (r.coupling_o * r.coupling_o) / (p.g_o * p.g_o);
    return r;
  }

  const double drive_o_sq =
      2.0 * p.optical_power * p.kappa_o_in / (constants::hbar * optical_drive_frequency(p));
  const double drive_w_sq = p.microwave_drive * p.microwave_drive;
  r.photons_w = drive_w_sq / (kappa_w * kappa_w + p.delta_w * p.delta_w);
  r.photons_o = drive_o_sq / (kappa_o * kappa_o + p.delta_o * p.delta_o);
  r.coupling_w = p.g_w * std::sqrt(r.photons_w);
  r.coupling_o = p.g_o * std::sqrt(r.photons_o);
  r.cooperativity_w = r.coupling_w * r.coupling_w / (kappa_w * r.gamma_m);
  r.cooperativity_o = r.coupling_o * r.coupling_o / (kappa_o * r.gamma_m);
  return r;
}

DriveSettings drives_for_cooperativity(const PhysicalParams& p, double cooperativity_w,
                                       double cooperativity_o) {
  validate(p);
  require_non_negative(cooperativity_w, "cooperativity_w");
  require_non_negative(cooperativity_o, "cooperativity_o");
  const double gamma_m = p.gamma_m();
  const double kappa_w = p.kappa_w();
  const double kappa_o = p.kappa_o();

  const double photons_w = cooperativity_w * kappa_w * gamma_m / (p.g_w * p.g_w);
  const double photons_o = cooperativity_o * kappa_o * gamma_m / (p.g_o * p.g_o);

  DriveSettings d;
  d.microwave_drive = std::sqrt(photons_w * (kappa_w * kappa_w + p.delta_w * p.delta_w));
  const double drive_o_sq = photons_o * (kappa_o * kappa_o + p.delta_o * p.delta_o);
  d.optical_power = drive_o_sq * constants::hbar * optical_drive_frequency(p) / (2.0 * p.kappa_o_in);
  return d;
}

ThermalOccupancies occupancies(const PhysicalParams& p, double background_temperature) {
  validate(p);
  ThermalOccupancies occ;
  occ.n_w = planck_occupancy(p.omega_w, p.t_eom);
  occ.n_o = planck_occupancy(p.omega_o, p.t_eom);
  occ.n_b = planck_occupancy(p.omega_m, p.t_eom);
  // Intrinsic-loss baths share the converter temperature.
  occ.n_w_int = occ.n_w;
  occ.n_o_int = occ.n_o;
  occ.n_background = planck_occupancy(p.omega_w, background_temperature);
  return occ;
}

}  // namespace mwqi
