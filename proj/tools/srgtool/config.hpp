#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "srgkit/lang/expr.hpp"
#include "srgkit/lti/nyquist.hpp"
#include "srgkit/mode.hpp"
#include "srgkit/sim/simulate.hpp"

namespace srgtool {

using nlohmann::json;

// Line numbers of every key and array element, keyed by JSON pointer.
std::map<std::string, int> key_lines(const std::string& text);

struct OutputSpec {
  std::string report = "report.json";
  bool plots = true;
  bool csv = true;
};

struct SimulationSpec {
  std::string plant;
  std::optional<std::string> controller;
  std::optional<std::string> phi_plant, phi_ctrl, phi_act;
  srg::sim::Signal r = srg::sim::zero_signal();
  srg::sim::Signal d = srg::sim::zero_signal();
  double T = 10.0;
  double h = 1e-3;
  std::vector<double> probes;  // times reported in the summary
};

struct ProjectConfig {
  std::string source;  // file path or "<string>"
  srg::lang::OperatorTable table;
  std::string analysis = "word";  // word | lure | controlled_lure | lure_controller | generalized_circle
  std::string word;
  std::string plant, controller, nonlinearity, loop;
  srg::Mode mode = srg::Mode::Incremental;
  std::map<std::string, double> kappa;
  srg::geom::GeomSettings geometry;
  srg::lti::FrequencyGrid grid;
  bool extended = true;
  bool tau_continuous = false;
  OutputSpec outputs;
  std::optional<SimulationSpec> simulation;
};

// Throws srg::Error(Config) with "<source>:<line>: message" on schema violations.
ProjectConfig parse_config(const std::string& text, const std::string& source = "<string>");
ProjectConfig load_config(const std::string& path);

}  // namespace srgtool
