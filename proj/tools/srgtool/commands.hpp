#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "srgkit/analysis/report.hpp"

namespace srgtool {

// Exit codes shared by every subcommand.
inline constexpr int kExitStable = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoBound = 2;

inline constexpr const char* kOutputEnv = "SRGTOOL_OUTPUT_DIR";

// Per-run artifact directory; the manifest is written by finish().
class RunDir {
 public:
  RunDir(const std::string& command, const std::string& tag, const std::optional<std::string>& explicit_dir);

  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path write(const std::string& name, const std::string& content);
  void note(const std::string& key, const nlohmann::json& value) { extra_[key] = value; }
  void finish(int exit_code);

 private:
  std::string command_;
  std::filesystem::path dir_;
  std::vector<std::string> artifacts_;
  nlohmann::json extra_ = nlohmann::json::object();
};

struct Overrides {
  std::optional<std::string> mode;
  std::map<std::string, double> kappa;
  std::optional<int> raster;
  std::optional<std::string> word;
  bool plain = false;
  std::optional<std::string> out;
};

void apply_overrides(ProjectConfig& c, const Overrides& o);

int exit_code_for(srg::analysis::Verdict v);

// Runs the analysis named in the config; no files are written.
srg::analysis::AnalysisReport run_analysis(const ProjectConfig& c);

int cmd_analyze(const std::string& config_path, const Overrides& o);
int cmd_nyquist(const std::optional<std::string>& config_path, const std::optional<std::string>& tf_text,
                const Overrides& o);
int cmd_srg(const std::optional<std::string>& config_path, const std::optional<std::string>& tf_text,
            const Overrides& o);
int cmd_simulate(const std::string& config_path, const Overrides& o);

struct DuffingArgs {
  double alpha = -1.0, beta = 1.0, delta = 0.3, kp = 5.0, kd = 5.0, d_max = 1.0;
};
int cmd_duffing_bound(const DuffingArgs& a, const Overrides& o);
int cmd_circle(const std::string& tf_text, double k1, double k2, const Overrides& o);

}  // namespace srgtool
