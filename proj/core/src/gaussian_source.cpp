#include "mwqi/gaussian_source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "mwqi/errors.hpp"

namespace mwqi {
namespace {

constexpr double physical_tolerance = 1e-9;
constexpr double near_real_tolerance = 1e-9;

// Returns an empty string when the moments describe a physical state.
std::string physicality_problem(const JointSourceState& s, const SymplecticSpectrum& spec) {
  std::ostringstream msg;
  if (!(std::isfinite(s.n_w) && std::isfinite(s.n_o) && std::isfinite(s.cross.real()) &&
        std::isfinite(s.cross.imag()))) {
    return "non-finite second moments";
  }
  if (s.n_w < 0.0 || s.n_o < 0.0) {
    msg << "negative occupancy (n_w = " << s.n_w << ", n_o = " << s.n_o << ")";
    return msg.str();
  }
  const double bound = std::sqrt(std::max(s.n_w, s.n_o) * (1.0 + std::min(s.n_w, s.n_o)));
  if (std::abs(s.cross) > bound + physical_tolerance * std::max(1.0, bound)) {
    msg << "|<d_w d_o>| = " << std::abs(s.cross) << " exceeds the quantum bound " << bound;
    return msg.str();
  }
  if (spec.nu_minus < 0.5 - physical_tolerance) {
    msg << "symplectic eigenvalue nu- = " << spec.nu_minus << " violates the uncertainty principle";
    return msg.str();
  }
  return {};
}

JointSourceState fill_state(double n_w, double n_o, complex cross) {
  JointSourceState s;
  s.n_w = n_w;
  s.n_o = n_o;
  s.cross = cross;
  s.v11 = n_w + 0.5;
  s.v33 = n_o + 0.5;
  s.v13 = std::abs(cross);
  s.phase_rotated = std::abs(cross.imag()) >= near_real_tolerance * std::abs(cross);
  return s;
}

}  // namespace

JointSourceState make_state(double n_w, double n_o, complex cross) {
  JointSourceState s = fill_state(n_w, n_o, cross);
  std::string problem;
  try {
    problem = physicality_problem(s, symplectic_spectrum(s));
  } catch (const ConsistencyError& e) {
    problem = e.what();
  }
  if (!problem.empty()) throw DomainError("unphysical source state: " + problem);
  return s;
}

JointSourceState source_moments(const IoCoefficients& c, const ThermalOccupancies& occ) {
  const double scale = std::norm(c.a_w) + std::norm(c.a_o) + std::norm(c.b) + std::norm(c.c_w) +
                       std::norm(c.c_o) + std::norm(c.d_w) + std::norm(c.d_o) + std::norm(c.e_w) +
                       std::norm(c.e_o);
  const double tol = 1e-9 * std::max(1.0, scale);
  if (std::abs(commutator_w(c) - 1.0) > tol || std::abs(commutator_o(c) - 1.0) > tol ||
      std::abs(cross_commutator(c)) > tol) {
    throw ConsistencyError("input-output coefficients do not preserve the commutators");
  }

  const double n_w = std::norm(c.a_w) * occ.n_w + std::norm(c.b) * (occ.n_o + 1.0) +
                     std::norm(c.c_w) * occ.n_b + std::norm(c.d_w) * (occ.n_o_int + 1.0) +
                     std::norm(c.e_w) * occ.n_w_int;
  const double n_o = std::norm(c.a_o) * occ.n_o + std::norm(c.b) * (occ.n_w + 1.0) +
                     std::norm(c.c_o) * (occ.n_b + 1.0) + std::norm(c.d_o) * (occ.n_w_int + 1.0) +
                     std::norm(c.e_o) * occ.n_o_int;
  const complex cross = c.a_w * std::conj(c.b) * (occ.n_w + 1.0) - c.b * c.a_o * occ.n_o +
                        c.c_w * c.c_o * (occ.n_b + 1.0) - c.d_w * c.e_o * occ.n_o_int -
                        c.e_w * c.d_o * (occ.n_w_int + 1.0);

  JointSourceState s = fill_state(n_w, n_o, cross);
  std::string problem;
  try {
    problem = physicality_problem(s, symplectic_spectrum(s));
  } catch (const ConsistencyError& e) {
    problem = e.what();
  }
  if (!problem.empty()) throw ConsistencyError("source_moments produced an unphysical state: " + problem);
  s.converter = c;
  s.occupancies = occ;
  return s;
}

double entanglement_metric(const JointSourceState& s) {
  const double denom = std::sqrt(s.n_w * s.n_o);
  const double mag = std::abs(s.cross);
  if (denom == 0.0) {
    if (mag == 0.0) return 0.0;
    throw DomainError("impossible state: nonzero <d_w d_o> with a vacuum mode");
  }
  return mag / denom;
}

double entropy_h(double x) {
  if (!(x >= 0.5 - physical_tolerance)) {
    throw DomainError("entropy_h: argument " + std::to_string(x) + " is below 1/2");
  }
  const double m = x - 0.5;
  if (m <= 0.0) return 0.0;
  // (m+1) log(m+1) - m log m, rearranged to avoid cancellation for large m.
  double nats;
  if (m > 1.0) {
    nats = std::log(m) + (m + 1.0) * std::log1p(1.0 / m);
  } else {
    nats = (m + 1.0) * std::log1p(m) - m * std::log(m);
  }
  return nats / std::numbers::ln2;
}

SymplecticSpectrum symplectic_spectrum(const JointSourceState& s) {
  const double a = s.v11;
  const double b = s.v33;
  const double c = s.v13;
  const double det_root = a * b - c * c;  // sqrt(det V) = nu- nu+ = zeta- zeta+

  double rad = (a + b) * (a + b) - 4.0 * c * c;
  if (rad < -physical_tolerance * (a + b) * (a + b) || det_root <= 0.0) {
    std::ostringstream msg;
    msg << "negative radicand in symplectic spectrum (V11 = " << a << ", V33 = " << b << ", V13 = " << c
        << ")";
    throw ConsistencyError(msg.str());
  }
  rad = std::max(rad, 0.0);

  SymplecticSpectrum out;
  const double delta = a * a + b * b - 2.0 * c * c;
  out.nu_plus = std::sqrt(0.5 * (delta + std::abs(a - b) * std::sqrt(rad)));
  out.nu_minus = det_root / out.nu_plus;

  const double delta_pt = a * a + b * b + 2.0 * c * c;
  const double zeta_plus =
      std::sqrt(0.5 * (delta_pt + (a + b) * std::sqrt((a - b) * (a - b) + 4.0 * c * c)));
  out.zeta_minus = det_root / zeta_plus;
  return out;
}

double log_negativity(const JointSourceState& s) {
  const double zeta = symplectic_spectrum(s).zeta_minus;
  return std::max(0.0, -std::log2(2.0 * zeta));
}

double coherent_information(const JointSourceState& s) {
  const auto sp = symplectic_spectrum(s);
  return entropy_h(s.v11) - entropy_h(sp.nu_minus) - entropy_h(sp.nu_plus);
}

double reverse_coherent_information(const JointSourceState& s) {
  const auto sp = symplectic_spectrum(s);
  return entropy_h(s.v33) - entropy_h(sp.nu_minus) - entropy_h(sp.nu_plus);
}

double discord(const JointSourceState& s, DiscordDirection direction) {
  const auto sp = symplectic_spectrum(s);
  // Measured mode m, unmeasured mode u.
  const bool optical_measured = direction == DiscordDirection::w_given_o;
  const double vm = optical_measured ? s.v33 : s.v11;
  const double vu = optical_measured ? s.v11 : s.v33;
  const double conditional = vu - s.v13 * s.v13 / (vm + 0.5);
  return entropy_h(vm) - entropy_h(sp.nu_minus) - entropy_h(sp.nu_plus) + entropy_h(conditional);
}

SourceMeasures evaluate_measures(const JointSourceState& s) {
  SourceMeasures m;
  const auto sp = symplectic_spectrum(s);
  m.nu_minus = sp.nu_minus;
  m.nu_plus = sp.nu_plus;
  m.zeta_minus = sp.zeta_minus;
  m.metric_e = entanglement_metric(s);
  m.e_n = log_negativity(s);
  m.i_fwd = coherent_information(s);
  m.i_rev = reverse_coherent_information(s);
  m.d_w_given_o = discord(s, DiscordDirection::w_given_o);
  m.d_o_given_w = discord(s, DiscordDirection::o_given_w);
  return m;
}

NormalizedMeasures normalized_measures(const JointSourceState& s) {
  if (!(s.n_w > 0.0)) throw DomainError("undefined normalization: n_w = 0");
  NormalizedMeasures out;
  out.raw = evaluate_measures(s);
  out.e_n = out.raw.e_n / s.n_w;
  out.i_fwd = out.raw.i_fwd / s.n_w;
  out.i_rev = out.raw.i_rev / s.n_w;
  out.d_w_given_o = out.raw.d_w_given_o / s.n_w;
  out.d_o_given_w = out.raw.d_o_given_w / s.n_w;
  return out;
}

}  // namespace mwqi
