#include <cstdio>
#include <exception>

#include "CLI11.hpp"
#include "commands.hpp"
#include "srgkit/error.hpp"

namespace {

void add_common(CLI::App* cmd, srgtool::Overrides& o) {
  cmd->add_option("--out", o.out, "Write artifacts here instead of a fresh run directory");
  cmd->add_option("--mode", o.mode, "incremental | non-incremental")
      ->check(CLI::IsMember({"incremental", "non-incremental", "nonincremental", "srg", "sg0"}));
  cmd->add_option("--raster", o.raster, "Columns of the region raster")->check(CLI::Range(64, 1 << 15));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srgtool: scaled relative graph analysis of feedback interconnections"};
  app.require_subcommand(1);
  app.footer(std::string("Artifacts go under $") + srgtool::kOutputEnv +
             " (default ./srgtool-runs), one directory per run.\n"
             "Exit status: 0 bounded, 2 no bound or inconclusive, 1 error.");

  srgtool::Overrides o;
  std::string config;
  std::optional<std::string> opt_config, tf;
  std::vector<std::string> kappas;

  auto* analyze = app.add_subcommand("analyze", "Analyze the interconnection described by a config");
  analyze->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--kappa", kappas, "Linearization gain NAME=VALUE (repeatable)");
  analyze->add_option("--word", o.word, "Override the config word");
  analyze->add_flag("--plain", o.plain, "Use plain instead of extended LTI SRGs");
  add_common(analyze, o);

  auto* nyquist = app.add_subcommand("nyquist", "Nyquist curve and closed-loop verdict of a loop transfer function");
  nyquist->add_option("config", opt_config, "Config file (uses 'loop' or 'plant')")->check(CLI::ExistingFile);
  nyquist->add_option("--tf", tf, "Loop transfer function text");
  add_common(nyquist, o);

  auto* srgcmd = app.add_subcommand("srg", "Region of a transfer function or of a word");
  srgcmd->add_option("config", opt_config, "Config file (uses 'word')")->check(CLI::ExistingFile);
  srgcmd->add_option("--tf", tf, "Transfer function text");
  srgcmd->add_option("--word", o.word, "Word over the config operators");
  srgcmd->add_flag("--plain", o.plain, "Plain instead of extended LTI SRGs");
  add_common(srgcmd, o);

  auto* simulate = app.add_subcommand("simulate", "Run the scenario in the config 'simulation' section");
  simulate->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  add_common(simulate, o);

  srgtool::DuffingArgs da;
  auto* duffing = app.add_subcommand("duffing_bound", "Amplitude bound of the PD-controlled Duffing oscillator");
  duffing->add_option("--alpha", da.alpha, "Linear stiffness")->capture_default_str();
  duffing->add_option("--beta", da.beta, "Cubic stiffness")->capture_default_str();
  duffing->add_option("--delta", da.delta, "Damping")->capture_default_str();
  duffing->add_option("--kp", da.kp, "Proportional gain")->capture_default_str();
  duffing->add_option("--kd", da.kd, "Derivative gain")->capture_default_str();
  duffing->add_option("--dmax", da.d_max, "Disturbance bound")->capture_default_str();
  add_common(duffing, o);

  std::string circle_tf;
  double k1 = 0.0, k2 = 1.0;
  auto* circle = app.add_subcommand("circle", "Classical and generalized circle criteria side by side");
  circle->add_option("--tf", circle_tf, "Plant transfer function")->required();
  circle->add_option("--k1", k1, "Lower sector bound")->required();
  circle->add_option("--k2", k2, "Upper sector bound")->required();
  add_common(circle, o);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& kv : kappas) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw srg::Error(srg::ErrorCode::InvalidArgument, "--kappa expects NAME=VALUE");
      o.kappa[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    if (*analyze) return srgtool::cmd_analyze(config, o);
    if (*nyquist) return srgtool::cmd_nyquist(opt_config, tf, o);
    if (*srgcmd) return srgtool::cmd_srg(opt_config, tf, o);
    if (*simulate) return srgtool::cmd_simulate(config, o);
    if (*duffing) return srgtool::cmd_duffing_bound(da, o);
    if (*circle) return srgtool::cmd_circle(circle_tf, k1, k2, o);
  } catch (const srg::Error& e) {
    std::fprintf(stderr, "srgtool: %s\n", e.what());
    return srgtool::kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "srgtool: %s\n", e.what());
    return srgtool::kExitError;
  }
  return srgtool::kExitError;
}
