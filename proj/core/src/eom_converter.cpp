#include "mwqi/eom_converter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "mwqi/errors.hpp"

namespace mwqi {
namespace {

constexpr double singular_tolerance = 1e-9;
const complex I{0.0, 1.0};

void check_cooperativities(double gamma_w, double gamma_o) {
  if (!std::isfinite(gamma_w) || gamma_w < 0.0) throw DomainError("gamma_w must be finite and >= 0");
  if (!std::isfinite(gamma_o) || gamma_o < 0.0) throw DomainError("gamma_o must be finite and >= 0");
}

void check_ratios(const KappaRatios& r) {
  if (!(r.w_in >= 0.0 && r.w_in <= 1.0)) throw DomainError("kappa_w_in / kappa_w must lie in [0, 1]");
  if (!(r.o_in >= 0.0 && r.o_in <= 1.0)) throw DomainError("kappa_o_in / kappa_o must lie in [0, 1]");
}

void check_rates(const ConverterRates& r) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(r.kappa_w)) throw DomainError("kappa_w must be positive");
  if (!positive(r.kappa_o)) throw DomainError("kappa_o must be positive");
  if (!positive(r.gamma_m)) throw DomainError("gamma_m must be positive");
}

double narrowband_denominator(double gamma_w, double gamma_o) {
  double den = 1.0 + gamma_w - gamma_o;
  if (std::abs(den) < singular_tolerance * (1.0 + gamma_w + gamma_o)) {
    std::ostringstream msg;
    msg << "singular operating point: gamma_o = 1 + gamma_w (gamma_w = " << gamma_w
        << ", gamma_o = " << gamma_o << ")";
    throw SingularOperatingPoint(msg.str());
  }
  return den;
}

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

std::string_view to_string(Fidelity f) {
  switch (f) {
    case Fidelity::lossless_narrowband: return "lossless";
    case Fidelity::lossy_narrowband: return "lossy";
    case Fidelity::full_spectral: return "spectral";
  }
  return "unknown";
}

Fidelity parse_fidelity(std::string_view text) {
  if (text == "lossless" || text == "lossless_narrowband") return Fidelity::lossless_narrowband;
  if (text == "lossy" || text == "lossy_narrowband") return Fidelity::lossy_narrowband;
  if (text == "spectral" || text == "full_spectral") return Fidelity::full_spectral;
  throw DomainError("unknown fidelity '" + std::string(text) + "' (expected lossless, lossy or spectral)");
}

double commutator_w(const IoCoefficients& c) {
  return std::norm(c.a_w) - std::norm(c.b) + std::norm(c.c_w) - std::norm(c.d_w) + std::norm(c.e_w);
}

double commutator_o(const IoCoefficients& c) {
  return std::norm(c.a_o) - std::norm(c.b) - std::norm(c.c_o) - std::norm(c.d_o) + std::norm(c.e_o);
}

complex cross_commutator(const IoCoefficients& c) {
  return c.a_w * std::conj(c.b) + c.b * c.a_o + c.c_w * c.c_o + c.d_w * c.e_o - c.e_w * c.d_o;
}

IoCoefficients coefficients_lossless(double gamma_w, double gamma_o) {
  check_cooperativities(gamma_w, gamma_o);
  const double den = narrowband_denominator(gamma_w, gamma_o);
  IoCoefficients c;
  c.a_w = (1.0 - (gamma_w + gamma_o)) / den;
  c.a_o = (1.0 + (gamma_w + gamma_o)) / den;
  c.b = 2.0 * std::sqrt(gamma_w * gamma_o) / den;
  c.c_w = 2.0 * I * std::sqrt(gamma_w) / den;
  c.c_o = 2.0 * I * std::sqrt(gamma_o) / den;
  c.fidelity = Fidelity::lossless_narrowband;
  c.gamma_w = gamma_w;
  c.gamma_o = gamma_o;
  return c;
}

IoCoefficients coefficients_lossy(double gamma_w, double gamma_o, const KappaRatios& ratios) {
  check_cooperativities(gamma_w, gamma_o);
  check_ratios(ratios);
  const double den = narrowband_denominator(gamma_w, gamma_o);
  const double rw = ratios.w_in;
  const double ro = ratios.o_in;
  const double sw = std::sqrt(rw);
  const double so = std::sqrt(ro);
  const double iw = std::sqrt(ratios.w_int());
  const double io = std::sqrt(ratios.o_int());
  const double root = std::sqrt(gamma_w * gamma_o);

  IoCoefficients c;
  c.a_w = ((1.0 - 2.0 * rw) * (gamma_o - 1.0) - gamma_w) / den;
  c.a_o = (-(1.0 - 2.0 * ro) * (gamma_w + 1.0) + gamma_o) / den;
  c.b = 2.0 * so * sw * root / den;
  c.c_w = sw * 2.0 * I * std::sqrt(gamma_w) / den;
  c.c_o = so * 2.0 * I * std::sqrt(gamma_o) / den;
  c.d_w = 2.0 * io * sw * root / den;
  c.d_o = 2.0 * so * iw * root / den;
  c.e_w = 2.0 * iw * sw * (gamma_o - 1.0) / den;
  c.e_o = 2.0 * io * so * (gamma_w + 1.0) / den;
  c.fidelity = Fidelity::lossy_narrowband;
  c.gamma_w = gamma_w;
  c.gamma_o = gamma_o;
  c.ratios = ratios;
  return c;
}

IoCoefficients coefficients_spectral(double gamma_w, double gamma_o, const ConverterRates& rates,
                                     const KappaRatios& ratios, double omega) {
  check_cooperativities(gamma_w, gamma_o);
  check_ratios(ratios);
  check_rates(rates);
  if (!std::isfinite(omega)) throw DomainError("sideband frequency omega must be finite");

  const complex tw = 1.0 - I * omega / rates.kappa_w;
  const complex to = 1.0 - I * omega / rates.kappa_o;
  const complex tb = 1.0 - I * omega / rates.gamma_m;
  const complex twc = std::conj(tw);
  const complex toc = std::conj(to);
  const complex tbc = std::conj(tb);

  const complex den = tw * (to * tb - gamma_o) + gamma_w * to;
  const complex denc = std::conj(den);
  const double scale = std::abs(tw) * std::abs(to) * std::abs(tb) + gamma_o * std::abs(tw) +
                       gamma_w * std::abs(to);
  if (std::abs(den) < singular_tolerance * scale) {
    std::ostringstream msg;
    msg << "singular input-output denominator at omega = " << omega << " rad/s (gamma_w = " << gamma_w
        << ", gamma_o = " << gamma_o << ")";
    throw SingularOperatingPoint(msg.str());
  }

  const double rw = ratios.w_in;
  const double ro = ratios.o_in;
  const double sw = std::sqrt(rw);
  const double so = std::sqrt(ro);
  const double iw = std::sqrt(ratios.w_int());
  const double io = std::sqrt(ratios.o_int());
  const double root = std::sqrt(gamma_w * gamma_o);

  IoCoefficients c;
  c.a_w = ((tw - 2.0 * rw) * (gamma_o - to * tb) - gamma_w * to) / den;
  c.a_o = (-(toc - 2.0 * ro) * (gamma_w + twc * tbc) + gamma_o * twc) / denc;
  c.b = 2.0 * so * sw * root / den;
  c.c_w = sw * 2.0 * I * std::sqrt(gamma_w) * to / den;
  c.c_o = so * 2.0 * I * std::sqrt(gamma_o) * twc / denc;
  c.d_w = 2.0 * io * sw * root / den;
  c.d_o = 2.0 * so * iw * root / denc;
  c.e_w = 2.0 * iw * sw * (gamma_o - to * tb) / den;
  c.e_o = 2.0 * io * so * (gamma_w + twc * tbc) / denc;
  c.omega = omega;
  c.fidelity = Fidelity::full_spectral;
  c.gamma_w = gamma_w;
  c.gamma_o = gamma_o;
  c.ratios = ratios;
  c.rates = rates;
  return c;
}

IoCoefficients coefficients(Fidelity fidelity, double gamma_w, double gamma_o,
                            const ConverterRates& rates, const KappaRatios& ratios, double omega) {
  switch (fidelity) {
    case Fidelity::lossless_narrowband: return coefficients_lossless(gamma_w, gamma_o);
    case Fidelity::lossy_narrowband: return coefficients_lossy(gamma_w, gamma_o, ratios);
    case Fidelity::full_spectral: return coefficients_spectral(gamma_w, gamma_o, rates, ratios, omega);
  }
  throw DomainError("unknown fidelity");
}

DriftMatrix drift_matrix(double gamma_w, double gamma_o, const ConverterRates& rates) {
  check_cooperativities(gamma_w, gamma_o);
  check_rates(rates);
  const double g_w = std::sqrt(gamma_w * rates.kappa_w * rates.gamma_m);
  const double g_o = std::sqrt(gamma_o * rates.kappa_o * rates.gamma_m);
  DriftMatrix a{};
  a[0] = {complex(-rates.kappa_w), complex(0.0), -I * g_w};
  a[1] = {complex(0.0), complex(-rates.kappa_o), I * g_o};
  a[2] = {-I * g_w, -I * g_o, complex(-rates.gamma_m)};
  return a;
}

Cubic characteristic_cubic(double gamma_w, double gamma_o, const ConverterRates& rates) {
  const DriftMatrix a = drift_matrix(gamma_w, gamma_o, rates);
  const complex trace = a[0][0] + a[1][1] + a[2][2];
  const complex minors = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) +
                         (a[0][0] * a[2][2] - a[0][2] * a[2][0]) +
                         (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
  const complex det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                      a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                      a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  // The matrix is similar to a real one, so the coefficients are real.
  return Cubic{-trace.real(), minors.real(), -det.real()};
}

bool routh_hurwitz_stable(const Cubic& p) {
  return p.a2 > 0.0 && p.a0 > 0.0 && p.a2 * p.a1 > p.a0;
}

std::array<complex, 3> cubic_roots(const Cubic& p) {
  const double s = std::max({std::abs(p.a2), std::sqrt(std::abs(p.a1)), std::cbrt(std::abs(p.a0))});
  if (s == 0.0) return {complex(0.0), complex(0.0), complex(0.0)};

  // mu = lambda / s; all coefficients now have modulus <= 1, so every root
  // satisfies |mu| <= 2.
  const double b2 = p.a2 / s;
  const double b1 = p.a1 / (s * s);
  const double b0 = p.a0 / (s * s * s);
  auto poly = [&](double x) { return ((x + b2) * x + b1) * x + b0; };

  double lo = -2.5;
  double hi = 2.5;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    double mid = 0.5 * (lo + hi);
    if (poly(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double d = (3.0 * r + 2.0 * b2) * r + b1;
    if (d == 0.0) break;
    double step = poly(r) / d;
    if (!std::isfinite(step) || std::abs(step) > 1e-6) break;
    r -= step;
  }

  const double c1 = b2 + r;
  const double c0 = b1 + r * c1;
  complex q1;
  complex q2;
  const double disc = 0.25 * c1 * c1 - c0;
  if (disc >= 0.0) {
    double q = -0.5 * c1 - sign(c1) * std::sqrt(disc);
    q1 = q;
    q2 = q != 0.0 ? c0 / q : 0.0;
  } else {
    double im = std::sqrt(-disc);
    q1 = complex(-0.5 * c1, im);
    q2 = complex(-0.5 * c1, -im);
  }
  return {complex(r * s), q1 * s, q2 * s};
}

StabilityReport stability(double gamma_w, double gamma_o, const ConverterRates& rates) {
  const Cubic p = characteristic_cubic(gamma_w, gamma_o, rates);
  const auto roots = cubic_roots(p);
  double max_re = roots[0].real();
  for (const auto& z : roots) max_re = std::max(max_re, z.real());

  StabilityReport report;
  report.narrowband_condition = gamma_o < 1.0 + gamma_w;
  report.margin = -max_re;
  const bool rh = routh_hurwitz_stable(p);
  const double rate_scale = std::max({rates.kappa_w, rates.kappa_o, rates.gamma_m});
  if (rh != (report.margin > 0.0) || std::abs(report.margin) <= 1e-12 * rate_scale) {
    // A root within roundoff of the imaginary axis is marginal, not stable.
    report.margin = 0.0;
    report.stable = false;
  } else {
    report.stable = rh;
  }
  return report;
}

}  // namespace mwqi
