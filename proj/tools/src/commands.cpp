#include "mwqi/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "mwqi/errors.hpp"

namespace mwqi::cli {
namespace {

std::string field(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

std::optional<double> finite_or_empty(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

std::string complex_text(complex z) {
  std::ostringstream s;
  s << csv_number(z.real()) << (z.imag() < 0.0 ? " - " : " + ") << csv_number(std::abs(z.imag())) << "i";
  return s.str();
}

}  // namespace

std::string csv_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

std::vector<SourceRow> sweep_source(const SimulationConfig& config, const Axis& gamma_w, const Axis& gamma_o,
                                    unsigned threads) {
  const auto xs = gamma_w.values();
  const auto ys = gamma_o.values();
  return parallel_map<SourceRow>(xs.size() * ys.size(), threads, [&](std::size_t i) {
    const double gw = xs[i / ys.size()];
    const double go = ys[i % ys.size()];
    const PointEvaluation e = evaluate_point(config, gw, go, false);
    SourceRow r;
    r.gamma_w = gw;
    r.gamma_o = go;
    r.stable = e.stability.stable;
    if (e.measures) {
      r.metric_e = e.measures->raw.metric_e;
      r.e_n = e.measures->e_n;
      r.i_fwd = e.measures->i_fwd;
      r.i_rev = e.measures->i_rev;
      r.d_w_o = e.measures->d_w_given_o;
      r.d_o_w = e.measures->d_o_given_w;
    }
    return r;
  });
}

std::vector<AdvantageRow> sweep_advantage(const SimulationConfig& config, const Axis& gamma_w, const Axis& gamma_o,
                                          unsigned threads) {
  const auto xs = gamma_w.values();
  const auto ys = gamma_o.values();
  return parallel_map<AdvantageRow>(xs.size() * ys.size(), threads, [&](std::size_t i) {
    const double gw = xs[i / ys.size()];
    const double go = ys[i % ys.size()];
    const PointEvaluation e = evaluate_point(config, gw, go, true);
    AdvantageRow r;
    r.x = gw;
    r.y = go;
    r.stable = e.stability.stable;
    if (e.receiver) r.f = finite_or_empty(e.receiver->advantage_f);
    return r;
  });
}

std::vector<AdvantageRow> sweep_advantage_eta(const SimulationConfig& config, const Axis& eta, unsigned threads) {
  const auto [gw, go] = config_cooperativities(config);
  const auto etas = eta.values();
  return parallel_map<AdvantageRow>(etas.size(), threads, [&](std::size_t i) {
    SimulationConfig c = config;
    c.eta = etas[i];
    const PointEvaluation e = evaluate_point(c, gw, go, true);
    AdvantageRow r;
    r.x = etas[i];
    r.stable = e.stability.stable;
    if (e.receiver) r.f = finite_or_empty(e.receiver->advantage_f);
    return r;
  });
}

std::vector<DetectionCurvePoint> detection_curve(const SimulationConfig& config, const Axis& modes) {
  const auto [gw, go] = config_cooperativities(config);
  const PointEvaluation e = evaluate_point(config, gw, go, true);
  if (!e.stability.stable || !e.receiver) {
    std::ostringstream msg;
    msg << "operating point gamma_w = " << gw << ", gamma_o = " << go << " is unstable (margin "
        << e.stability.margin << " rad/s)";
    throw SingularOperatingPoint(msg.str());
  }
  std::vector<DetectionCurvePoint> rows;
  for (double m : modes.values()) {
    TargetScenario t = scenario(config);
    t.modes = m;
    DetectionCurvePoint p;
    p.m = m;
    p.snr_qi = snr_qi(*e.receiver, m);
    p.snr_coh = snr_coherent(t, e.state->n_w);
    p.log10_p_qi = error_probability(p.snr_qi).log10;
    p.log10_p_coh = error_probability(p.snr_coh).log10;
    if (p.snr_coh > 0.0) p.f = p.snr_qi / p.snr_coh;
    rows.push_back(p);
  }
  return rows;
}

void write_source_csv(std::ostream& out, const std::vector<SourceRow>& rows) {
  out << "Gamma_w,Gamma_o,stable,metric_E,E_N_per_photon,I_fwd_per_photon,I_rev_per_photon,"
         "D_w_o_per_photon,D_o_w_per_photon\n";
  for (const auto& r : rows) {
    out << csv_number(r.gamma_w) << ',' << csv_number(r.gamma_o) << ',' << (r.stable ? 1 : 0) << ','
        << field(r.metric_e) << ',' << field(r.e_n) << ',' << field(r.i_fwd) << ',' << field(r.i_rev) << ','
        << field(r.d_w_o) << ',' << field(r.d_o_w) << '\n';
  }
}

void write_advantage_csv(std::ostream& out, const std::vector<AdvantageRow>& rows, bool eta_sweep) {
  out << (eta_sweep ? "eta,F\n" : "Gamma_w,Gamma_o,F\n");
  for (const auto& r : rows) {
    out << csv_number(r.x) << ',';
    if (!eta_sweep) out << csv_number(r.y) << ',';
    out << field(r.f) << '\n';
  }
}

void write_detection_csv(std::ostream& out, const std::vector<DetectionCurvePoint>& rows) {
  out << "M,snr_qi,snr_coh,log10_p_qi,log10_p_coh,F\n";
  for (const auto& r : rows) {
    out << csv_number(r.m) << ',' << csv_number(r.snr_qi) << ',' << csv_number(r.snr_coh) << ','
        << csv_number(r.log10_p_qi) << ',' << csv_number(r.log10_p_coh) << ',' << field(r.f) << '\n';
  }
}

std::string point_report(const SimulationConfig& config, const PointEvaluation& e) {
  std::ostringstream s;
  auto line = [&](const char* name, const std::string& value, const char* unit = "") {
    s << "  " << name << " = " << value;
    if (*unit) s << " " << unit;
    s << "\n";
  };
  auto num = [](double v) { return csv_number(v); };

  s << "[configuration]\n" << to_config_text(config) << "\n";

  const DerivedRates rates = derive_rates(config.params);
  s << "[derived rates]\n";
  line("gamma_m", num(rates.gamma_m), "rad/s");
  line("G_w", num(rates.coupling_w), "rad/s");
  line("G_o", num(rates.coupling_o), "rad/s");
  line("N_w", num(rates.photons_w), "pump photons");
  line("N_o", num(rates.photons_o), "pump photons");
  line("Gamma_w", num(e.gamma_w));
  line("Gamma_o", num(e.gamma_o));
  for (const auto& w : validate(config.params)) s << "  warning: " << w << "\n";

  s << "[thermal occupancies]\n";
  line("n_w_T", num(e.occ.n_w), "photons");
  line("n_o_T", num(e.occ.n_o), "photons");
  line("n_b_T", num(e.occ.n_b), "phonons");
  line("n_w_int", num(e.occ.n_w_int), "photons");
  line("n_o_int", num(e.occ.n_o_int), "photons");
  line("n_B", num(e.occ.n_background), "photons");

  s << "[stability]\n";
  line("stable", e.stability.stable ? "yes" : "no");
  line("margin", num(e.stability.margin), "rad/s");
  line("narrowband_condition", e.stability.narrowband_condition ? "yes" : "no");
  if (!e.error.empty()) s << "  note: " << e.error << "\n";
  if (!e.coefficients) return s.str();

  const IoCoefficients& c = *e.coefficients;
  s << "[input-output coefficients, " << to_string(c.fidelity) << ", omega = " << num(c.omega) << " rad/s]\n";
  line("A_w", complex_text(c.a_w));
  line("A_o", complex_text(c.a_o));
  line("B", complex_text(c.b));
  line("C_w", complex_text(c.c_w));
  line("C_o", complex_text(c.c_o));
  line("D_w", complex_text(c.d_w));
  line("D_o", complex_text(c.d_o));
  line("E_w", complex_text(c.e_w));
  line("E_o", complex_text(c.e_o));

  const JointSourceState& st = *e.state;
  s << "[source moments]\n";
  line("n_w", num(st.n_w), "photons");
  line("n_o", num(st.n_o), "photons");
  line("<d_w d_o>", complex_text(st.cross));
  line("V11", num(st.v11));
  line("V33", num(st.v33));
  line("V13", num(st.v13));
  if (st.phase_rotated) s << "  note: complex <d_w d_o>; optical mode phase-rotated to the real normal form\n";

  if (e.measures) {
    const NormalizedMeasures& m = *e.measures;
    s << "[source measures]\n";
    line("metric_E", num(m.raw.metric_e));
    line("nu_minus", num(m.raw.nu_minus));
    line("nu_plus", num(m.raw.nu_plus));
    line("zeta_minus", num(m.raw.zeta_minus));
    line("E_N", num(m.raw.e_n), "ebits");
    line("I_fwd", num(m.raw.i_fwd), "qubits");
    line("I_rev", num(m.raw.i_rev), "qubits");
    line("D_w_given_o", num(m.raw.d_w_given_o), "bits");
    line("D_o_given_w", num(m.raw.d_o_given_w), "bits");
    line("E_N_per_photon", num(m.e_n), "ebits/photon");
    line("I_fwd_per_photon", num(m.i_fwd), "qubits/photon");
    line("I_rev_per_photon", num(m.i_rev), "qubits/photon");
    line("D_w_o_per_photon", num(m.d_w_given_o), "bits/photon");
    line("D_o_w_per_photon", num(m.d_o_given_w), "bits/photon");
  }

  if (e.receiver) {
    const ReceiverStats& r = *e.receiver;
    s << "[target scenario]\n";
    line("eta", num(config.eta));
    line("n_B", num(e.occ.n_background), "photons");
    if (st.n_o > 0.0) {
      const ThresholdResult th = entanglement_threshold(st, config.eta);
      line("n_B_thresh", num(th.value), "photons");
      if (th.never_entangled) s << "  note: negative threshold, return and idler are never entangled\n";
    } else {
      line("n_B_thresh", "none");
      s << "  note: no idler photons, threshold undefined\n";
    }
    line("M", num(r.modes), "mode pairs");
    line("background_model", config.background_model == BackgroundModel::exact ? "exact" : "approximate");

    s << "[receiver statistics, per mode pair]\n";
    line("n_return_H0", num(r.n_return_h0), "photons");
    line("n_return_H1", num(r.n_return_h1), "photons");
    line("<N+>_H0", num(r.mean_plus_h0), "photons");
    line("<N->_H0", num(r.mean_minus_h0), "photons");
    line("<N+>_H1", num(r.mean_plus_h1), "photons");
    line("<N->_H1", num(r.mean_minus_h1), "photons");
    line("var_diff_H0", num(r.var_diff_h0), "photons^2");
    line("var_diff_H1", num(r.var_diff_h1), "photons^2");

    s << "[detection, M mode pairs]\n";
    line("snr_qi", num(r.snr_qi));
    line("snr_coh", num(r.snr_coh));
    line("p_qi", num(r.p_qi.value));
    line("log10_p_qi", num(r.p_qi.log10));
    line("p_coh", num(r.p_coh.value));
    line("log10_p_coh", num(r.p_coh.log10));
    line("F", std::isfinite(r.advantage_f) ? num(r.advantage_f) : std::string("undefined (snr_coh = 0)"));
  }
  return s.str();
}

}  // namespace mwqi::cli
