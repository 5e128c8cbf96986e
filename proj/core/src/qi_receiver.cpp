#include "mwqi/qi_receiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mwqi/errors.hpp"
#include "mwqi/special_functions.hpp"

namespace mwqi {
namespace {

struct CountMoments {
  double mean_plus = 0.0;
  double mean_minus = 0.0;
  double var_diff = 0.0;
};

// Beam splitter a_+- = (d_eta,o +- d_o)/sqrt(2) fed with return occupancy
// n_return, idler occupancy n_idler and correlation x = <d_eta,o^+ d_o>.
// All phase-sensitive moments vanish, so each output is thermal and the
// count difference has variance Var N_+ + Var N_- - 2 |<a_+^+ a_->|^2.
CountMoments count_moments(double n_return, double n_idler, complex x) {
  CountMoments m;
  m.mean_plus = 0.5 * (n_return + n_idler + 2.0 * x.real());
  m.mean_minus = 0.5 * (n_return + n_idler - 2.0 * x.real());
  const double diff = n_return - n_idler;
  m.var_diff = m.mean_plus * (m.mean_plus + 1.0) + m.mean_minus * (m.mean_minus + 1.0) -
               0.5 * (diff * diff + 4.0 * x.imag() * x.imag());
  const double scale = m.mean_plus * (m.mean_plus + 1.0) + m.mean_minus * (m.mean_minus + 1.0);
  if (m.var_diff < -1e-9 * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << "negative count-difference variance " << m.var_diff;
    throw ConsistencyError(msg.str());
  }
  if (m.var_diff < 0.0) m.var_diff = 0.0;
  return m;
}

}  // namespace

void validate(const TargetScenario& t) {
  if (!(std::isfinite(t.eta) && t.eta >= 0.0 && t.eta < 1.0)) {
    throw DomainError("eta must satisfy 0 <= eta < 1");
  }
  if (!(std::isfinite(t.n_background) && t.n_background >= 0.0)) {
    throw DomainError("background occupancy must be finite and >= 0");
  }
  if (!(std::isfinite(t.modes) && t.modes >= 1.0)) throw DomainError("mode count M must be >= 1");
}

ReceiverStats receiver_moments(const JointSourceState& s, const IoCoefficients& c,
                               const ThermalOccupancies& occ, const TargetScenario& t) {
  validate(t);
  if (!s.converter || !(*s.converter == c)) {
    throw DomainError("receiver converter must be identical to the converter that produced the source state");
  }

  // Receiver converter noise: everything in d_eta,o except the return leg.
  const double k = std::norm(c.a_o) * occ.n_o + std::norm(c.c_o) * (occ.n_b + 1.0) +
                   std::norm(c.d_o) * (occ.n_w_int + 1.0) + std::norm(c.e_o) * occ.n_o_int;
  const double b2 = std::norm(c.b);

  const double n_b_h1 =
      t.background_model == BackgroundModel::exact ? t.n_background / (1.0 - t.eta) : t.n_background;
  const double n_r_h0 = t.n_background;
  const double n_r_h1 = t.eta * s.n_w + (1.0 - t.eta) * n_b_h1;

  ReceiverStats r;
  r.n_return_h0 = b2 * (n_r_h0 + 1.0) + k;
  r.n_return_h1 = b2 * (n_r_h1 + 1.0) + k;
  r.return_idler_h1 = std::sqrt(t.eta) * c.b * s.cross;

  const CountMoments h0 = count_moments(r.n_return_h0, s.n_o, complex(0.0));
  const CountMoments h1 = count_moments(r.n_return_h1, s.n_o, r.return_idler_h1);
  r.mean_plus_h0 = h0.mean_plus;
  r.mean_minus_h0 = h0.mean_minus;
  r.var_diff_h0 = h0.var_diff;
  r.mean_plus_h1 = h1.mean_plus;
  r.mean_minus_h1 = h1.mean_minus;
  r.var_diff_h1 = h1.var_diff;

  r.modes = t.modes;
  r.snr_qi = snr_qi(r, t.modes);
  r.snr_coh = snr_coherent(t, s.n_w);
  r.p_qi = error_probability(r.snr_qi);
  r.p_coh = error_probability(r.snr_coh);
  r.advantage_f = r.snr_coh > 0.0 ? r.snr_qi / r.snr_coh : std::numeric_limits<double>::quiet_NaN();
  return r;
}

double snr_qi(const ReceiverStats& stats, double modes) {
  if (!(std::isfinite(modes) && modes >= 1.0)) throw DomainError("mode count M must be >= 1");
  const double denom = std::sqrt(stats.var_diff_h0) + std::sqrt(stats.var_diff_h1);
  const double delta = (stats.mean_plus_h1 - stats.mean_minus_h1) - (stats.mean_plus_h0 - stats.mean_minus_h0);
  if (!(denom > 0.0)) {
    // Noiseless and identical under both hypotheses (e.g. an undriven
    // converter at zero temperature): nothing to detect.
    if (delta == 0.0) return 0.0;
    throw DomainError("degenerate statistics: both count-difference variances vanish");
  }
  return 4.0 * modes * delta * delta / (denom * denom);
}

ErrorProbability error_probability(double snr) {
  if (!(snr >= 0.0) || std::isinf(snr)) throw DomainError("SNR must be finite and >= 0");
  const double ln_p = log_erfc(std::sqrt(snr / 8.0)) - std::numbers::ln2;
  return ErrorProbability{std::exp(ln_p), ln_p / std::numbers::ln10};
}

double snr_coherent(const TargetScenario& t, double n_w) {
  if (!(std::isfinite(t.eta) && t.eta >= 0.0 && t.eta < 1.0)) throw DomainError("eta must satisfy 0 <= eta < 1");
  if (!(std::isfinite(t.n_background) && t.n_background >= 0.0)) {
    throw DomainError("background occupancy must be finite and >= 0");
  }
  if (!(std::isfinite(t.modes) && t.modes >= 0.0)) throw DomainError("mode count M must be >= 0");
  if (!(std::isfinite(n_w) && n_w >= 0.0)) throw DomainError("signal occupancy must be finite and >= 0");
  return 4.0 * t.eta * t.modes * n_w / (2.0 * t.n_background + 1.0);
}

ErrorProbability p_coherent(const TargetScenario& t, double n_w) {
  return error_probability(snr_coherent(t, n_w));
}

double advantage_figure(const ReceiverStats& stats) {
  if (!(stats.snr_coh > 0.0)) throw DomainError("advantage figure undefined: coherent SNR is zero");
  return stats.snr_qi / stats.snr_coh;
}

ThresholdResult entanglement_threshold(const JointSourceState& s, double eta) {
  if (!(std::isfinite(eta) && eta >= 0.0 && eta < 1.0)) throw DomainError("eta must satisfy 0 <= eta < 1");
  if (!(s.n_o > 0.0)) throw DomainError("entanglement threshold needs n_o > 0");
  ThresholdResult r;
  r.value = eta * (std::norm(s.cross) / s.n_o - s.n_w);
  r.never_entangled = r.value < 0.0;
  return r;
}

double max_idler_range(double fiber_loss_db_per_km, double budget_db, double fiber_speed_fraction) {
  if (!(std::isfinite(fiber_loss_db_per_km) && fiber_loss_db_per_km > 0.0)) {
    throw DomainError("fiber loss must be positive");
  }
  if (!(std::isfinite(budget_db) && budget_db >= 0.0)) throw DomainError("loss budget must be >= 0");
  if (!(std::isfinite(fiber_speed_fraction) && fiber_speed_fraction > 0.0)) {
    throw DomainError("fiber speed fraction must be positive");
  }
  // Idler must wait the signal roundtrip 2R/c, i.e. travel 2R * fraction in
  // fiber, and that length may lose at most budget_db.
  return budget_db / (2.0 * fiber_speed_fraction * fiber_loss_db_per_km);
}

}  // namespace mwqi
