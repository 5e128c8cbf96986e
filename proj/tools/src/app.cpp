#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mwqi/cli/commands.hpp"
#include "mwqi/errors.hpp"

namespace mwqi::cli {
namespace {

struct CommonOptions {
  std::string preset = "fig2";
  std::string config_path;
  std::string fidelity;
  std::string out_path = "-";
  unsigned threads = 0;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--preset", o.preset, "Built-in parameter preset")->check(CLI::IsMember({"fig2"}));
  sub->add_option("--config", o.config_path, "key = value file applied on top of the preset");
  sub->add_option("--fidelity", o.fidelity, "Converter model")->check(CLI::IsMember({"lossless", "lossy", "spectral"}));
  sub->add_option("--out", o.out_path, "Output path, '-' for stdout");
  sub->add_option("--threads", o.threads, "Worker threads, 0 = auto (MWQI_THREADS, then hardware)");
}

SimulationConfig resolve(const CommonOptions& o) {
  SimulationConfig c = preset(o.preset);
  if (!o.config_path.empty()) c = load_config_file(o.config_path, c);
  if (!o.fidelity.empty()) c.fidelity = parse_fidelity(o.fidelity);
  return c;
}

// Collects output in memory and writes it only after the command succeeded.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& stdout_stream) : path_(path), stdout_(stdout_stream) {
    if (path_ != "-") {
      file_.open(path_, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file '" + path_ + "'");
    }
  }
  std::ostream& stream() { return buffer_; }
  void commit() {
    std::ostream& target = path_ == "-" ? stdout_ : file_;
    target << buffer_.str();
    target.flush();
    if (!target) throw std::runtime_error("failed writing output '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ostream& stdout_;
  std::ofstream file_;
  std::ostringstream buffer_;
};

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Microwave quantum illumination with an electro-opto-mechanical converter", "mwqi"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* source = app.add_subcommand("source", "Source-quality measures over a (Gamma_w, Gamma_o) grid");
  std::string source_gw = "0:10000:41";
  std::string source_go = "0:10000:41";
  add_common(source, common);
  source->add_option("--gamma-w", source_gw, "Gamma_w axis min:max:count[:log]");
  source->add_option("--gamma-o", source_go, "Gamma_o axis min:max:count[:log]");

  auto* detect = app.add_subcommand("detect", "Error probabilities versus mode count M");
  std::string detect_m = "1e4:1e9:51:log";
  double eta = 0.0;
  double n_background = 0.0;
  double t_background = 0.0;
  add_common(detect, common);
  detect->add_option("--modes", detect_m, "M axis min:max:count[:log]");
  auto* detect_eta = detect->add_option("--eta", eta, "Roundtrip transmissivity");
  auto* detect_nb = detect->add_option("--n-background", n_background, "Background occupancy n_B");
  auto* detect_tb = detect->add_option("--t-background", t_background, "Background temperature (K)");

  auto* advantage = app.add_subcommand("advantage", "Advantage figure F over (Gamma_w, Gamma_o) or eta");
  std::string adv_gw = "0:10000:41";
  std::string adv_go = "0:10000:41";
  std::string adv_eta;
  add_common(advantage, common);
  advantage->add_option("--gamma-w", adv_gw, "Gamma_w axis min:max:count[:log]");
  advantage->add_option("--gamma-o", adv_go, "Gamma_o axis min:max:count[:log]");
  advantage->add_option("--eta-sweep", adv_eta, "Sweep eta instead, min:max:count[:log]");

  auto* point = app.add_subcommand("point", "Report every derived quantity at one operating point");
  double point_gw = 0.0;
  double point_go = 0.0;
  std::string echo_path;
  add_common(point, common);
  auto* point_gw_opt = point->add_option("--gamma-w", point_gw, "Override Gamma_w");
  auto* point_go_opt = point->add_option("--gamma-o", point_go, "Override Gamma_o");
  auto* point_eta = point->add_option("--eta", eta, "Roundtrip transmissivity");
  auto* point_nb = point->add_option("--n-background", n_background, "Background occupancy n_B");
  auto* point_tb = point->add_option("--t-background", t_background, "Background temperature (K)");
  point->add_option("--echo-config", echo_path, "Write the resolved configuration to this path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    SimulationConfig config = resolve(common);
    auto apply_scenario = [&](CLI::Option* eta_opt, CLI::Option* nb_opt, CLI::Option* tb_opt) {
      if (*eta_opt) config.eta = eta;
      if (*tb_opt) {
        config.background_temperature = t_background;
        config.n_background.reset();
      }
      if (*nb_opt) config.n_background = n_background;
    };

    std::optional<Axis> axis_w, axis_o, axis_x;
    try {
      if (source->parsed()) {
        axis_w = parse_axis("Gamma_w", source_gw);
        axis_o = parse_axis("Gamma_o", source_go);
      } else if (advantage->parsed()) {
        if (!adv_eta.empty()) {
          axis_x = parse_axis("eta", adv_eta);
        } else {
          axis_w = parse_axis("Gamma_w", adv_gw);
          axis_o = parse_axis("Gamma_o", adv_go);
        }
      } else if (detect->parsed()) {
        axis_x = parse_axis("M", detect_m);
        if (axis_x->min < 1.0) throw std::invalid_argument("M axis must start at >= 1");
      }
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }

    const unsigned threads = resolve_threads(common.threads);
    std::unique_ptr<Sink> sink;
    try {
      sink = std::make_unique<Sink>(common.out_path, out);
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }

    int status = exit_ok;
    if (source->parsed()) {
      validate(config.params);
      write_source_csv(sink->stream(), sweep_source(config, *axis_w, *axis_o, threads));
    } else if (advantage->parsed()) {
      validate(config.params);
      validate(scenario(config));
      if (axis_x) {
        if (axis_x->min < 0.0 || axis_x->max >= 1.0) {
          err << "error: eta sweep must stay within [0, 1)\n";
          return exit_usage;
        }
        write_advantage_csv(sink->stream(), sweep_advantage_eta(config, *axis_x, threads), true);
      } else {
        write_advantage_csv(sink->stream(), sweep_advantage(config, *axis_w, *axis_o, threads), false);
      }
    } else if (detect->parsed()) {
      apply_scenario(detect_eta, detect_nb, detect_tb);
      validate(scenario(config));
      write_detection_csv(sink->stream(), detection_curve(config, *axis_x));
    } else if (point->parsed()) {
      apply_scenario(point_eta, point_nb, point_tb);
      if (*point_gw_opt || *point_go_opt) {
        const auto [gw, go] = config_cooperativities(config);
        config.params.cooperativity_w = *point_gw_opt ? point_gw : gw;
        config.params.cooperativity_o = *point_go_opt ? point_go : go;
      }
      validate(scenario(config));
      const auto [gw, go] = config_cooperativities(config);
      const PointEvaluation e = evaluate_point(config, gw, go, true);
      sink->stream() << point_report(config, e);
      if (!echo_path.empty()) {
        std::ofstream echo(echo_path, std::ios::binary | std::ios::trunc);
        echo << to_config_text(config);
        if (!echo) {
          err << "error: cannot write '" << echo_path << "'\n";
          return exit_usage;
        }
      }
      if (!e.stability.stable) {
        err << "error: unstable operating point (stability margin " << csv_number(e.stability.margin)
            << " rad/s)\n";
        status = exit_unstable;
      }
    }
    try {
      sink->commit();
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
    return status;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const SingularOperatingPoint& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  }
}

}  // namespace mwqi::cli
