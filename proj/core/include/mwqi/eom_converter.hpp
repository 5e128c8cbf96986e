#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace mwqi {

using complex = std::complex<double>;

enum class Fidelity { lossless_narrowband, lossy_narrowband, full_spectral };

std::string_view to_string(Fidelity f);
/// Accepts "lossless", "lossy", "spectral" (and the full enum names).
Fidelity parse_fidelity(std::string_view text);

/// In-coupling fractions kappa_j^in / kappa_j; the intrinsic fractions are
/// the complements.
struct KappaRatios {
  double w_in = 1.0;
  double o_in = 1.0;

  double w_int() const { return 1.0 - w_in; }
  double o_int() const { return 1.0 - o_in; }
  bool operator==(const KappaRatios&) const = default;
};

struct ConverterRates {
  double kappa_w = 0.0;
  double kappa_o = 0.0;
  double gamma_m = 0.0;
  bool operator==(const ConverterRates&) const = default;
};

/// Output fields in terms of the converter inputs:
///   d_w = A_w c_w,in - B c_o,in^+ - C_w b - D_w c_o,int^+ - E_w c_w,int
///   d_o = A_o c_o,in + B^* c_w,in^+ - C_o b^+ + D_o c_w,int^+ + E_o c_o,int
struct IoCoefficients {
  complex a_w{1.0, 0.0};
  complex a_o{1.0, 0.0};
  complex b{};
  complex c_w{};
  complex c_o{};
  complex d_w{};
  complex d_o{};
  complex e_w{};
  complex e_o{};

  double omega = 0.0;
  Fidelity fidelity = Fidelity::lossless_narrowband;

  // Design point the coefficients were evaluated at. Two IoCoefficients
  // describe the same converter only when all of these match.
  double gamma_w = 0.0;
  double gamma_o = 0.0;
  KappaRatios ratios{};
  ConverterRates rates{};

  bool operator==(const IoCoefficients&) const = default;
};

/// [d_w, d_w^+]; equals 1 for a valid map.
double commutator_w(const IoCoefficients& c);
/// [d_o, d_o^+]; equals 1 for a valid map.
double commutator_o(const IoCoefficients& c);
/// [d_w, d_o]; vanishes for a valid map.
complex cross_commutator(const IoCoefficients& c);

IoCoefficients coefficients_lossless(double gamma_w, double gamma_o);
IoCoefficients coefficients_lossy(double gamma_w, double gamma_o, const KappaRatios& ratios);
IoCoefficients coefficients_spectral(double gamma_w, double gamma_o, const ConverterRates& rates,
                                     const KappaRatios& ratios, double omega);

/// Dispatches on fidelity. rates and omega are ignored by the narrowband
/// models; ratios are ignored by the lossless model.
IoCoefficients coefficients(Fidelity fidelity, double gamma_w, double gamma_o,
                            const ConverterRates& rates, const KappaRatios& ratios, double omega = 0.0);

struct StabilityReport {
  bool stable = false;
  double margin = 0.0;  ///< -max Re(lambda) of the drift matrix, rad/s
  bool narrowband_condition = false;  ///< gamma_o < 1 + gamma_w
};

using DriftMatrix = std::array<std::array<complex, 3>, 3>;

/// Drift matrix of (c_w, c_o^+, b).
DriftMatrix drift_matrix(double gamma_w, double gamma_o, const ConverterRates& rates);

/// Monic characteristic polynomial lambda^3 + a2 lambda^2 + a1 lambda + a0.
struct Cubic {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
};

Cubic characteristic_cubic(double gamma_w, double gamma_o, const ConverterRates& rates);
bool routh_hurwitz_stable(const Cubic& p);
/// Roots of a real monic cubic.
std::array<complex, 3> cubic_roots(const Cubic& p);

StabilityReport stability(double gamma_w, double gamma_o, const ConverterRates& rates);

}  // namespace mwqi
