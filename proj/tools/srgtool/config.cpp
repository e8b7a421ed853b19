#include "config.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "srgkit/error.hpp"
#include "srgkit/lang/pipeline.hpp"
#include "srgkit/lti/transfer_function.hpp"
#include "srgkit/nonlin/nonlinearity.hpp"

namespace srgtool {

using srg::Error;
using srg::ErrorCode;

namespace {

std::string escape_token(const std::string& k) {
  std::string out;
  for (char c : k) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

std::map<std::string, int> key_lines(const std::string& text) {
  struct Frame {
    bool object;
    std::string path;
    int index = 0;
    bool expect_key = true;
    bool started = false;  // current array element already recorded
    std::string key;
  };
  std::map<std::string, int> lines;
  std::vector<Frame> stack;
  int line = 1;
  const std::size_t n = text.size();

  auto value_start = [&]() -> std::string {
    if (stack.empty()) return "";
    Frame& f = stack.back();
    if (f.object) return f.path + "/" + escape_token(f.key);
    std::string p = f.path + "/" + std::to_string(f.index);
    if (!f.started) {
      lines.emplace(p, line);
      f.started = true;
    }
    return p;
  };

  for (std::size_t i = 0; i < n; ++i) {
    char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      --i;
    } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      i += 2;
      while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) {
        if (text[i] == '\n') ++line;
        ++i;
      }
      ++i;
    } else if (c == '"') {
      int start_line = line;
      std::string s;
      for (++i; i < n && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < n) {
          s += text[++i];
        } else {
          if (text[i] == '\n') ++line;
          s += text[i];
        }
      }
      if (!stack.empty() && stack.back().object && stack.back().expect_key) {
        stack.back().key = s;
        lines.emplace(stack.back().path + "/" + escape_token(s), start_line);
      } else {
        value_start();
      }
    } else if (c == ':') {
      if (!stack.empty()) stack.back().expect_key = false;
    } else if (c == ',') {
      if (!stack.empty()) {
        Frame& f = stack.back();
        if (f.object) {
          f.expect_key = true;
        } else {
          ++f.index;
          f.started = false;
        }
      }
    } else if (c == '{' || c == '[') {
      std::string p = value_start();
      stack.push_back(Frame{c == '{', p, 0, true, false, {}});
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      value_start();
      while (i + 1 < n && !std::strchr(",]}\n \t\r", text[i + 1])) ++i;
    }
  }
  return lines;
}

namespace {

class Schema {
 public:
  Schema(std::map<std::string, int> lines, std::string source) : lines_(std::move(lines)), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    std::string p = path;
    while (true) {
      auto it = lines_.find(p);
      if (it != lines_.end()) {
        throw Error(ErrorCode::Config, source_ + ":" + std::to_string(it->second) + ": " + msg);
      }
      auto slash = p.rfind('/');
      if (slash == std::string::npos || p.empty()) break;
      p = p.substr(0, slash);
    }
    throw Error(ErrorCode::Config, source_ + ": " + msg);
  }

  void keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(path, "expected an object at '" + display(path) + "'");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.count(it.key())) {
        fail(path + "/" + escape_token(it.key()), "unknown key '" + it.key() + "' in '" + display(path) + "'");
      }
    }
  }

  double number(const json& obj, const std::string& path, const std::string& key, double fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "/" + key, "'" + key + "' must be a number");
    return v.get<double>();
  }

  double required_number(const json& obj, const std::string& path, const std::string& key) const {
    if (!obj.contains(key)) fail(path, "missing '" + key + "'");
    return number(obj, path, key, 0.0);
  }

  std::string string(const json& obj, const std::string& path, const std::string& key,
                     const std::string& fallback = {}) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(path + "/" + key, "'" + key + "' must be a string");
    return v.get<std::string>();
  }

  bool boolean(const json& obj, const std::string& path, const std::string& key, bool fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(path + "/" + key, "'" + key + "' must be true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const json& v, const std::string& path, std::size_t count = 0) const {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(path + "/" + std::to_string(i), "expected a number");
      out.push_back(v[i].get<double>());
    }
    if (count && out.size() != count) fail(path, "expected " + std::to_string(count) + " numbers");
    return out;
  }

  static std::string display(const std::string& path) { return path.empty() ? "/" : path; }

 private:
  std::map<std::string, int> lines_;
  std::string source_;
};

srg::nonlin::Interval interval_of(const Schema& sc, const json& v, const std::string& path) {
  auto xs = sc.numbers(v, path, 2);
  if (xs[0] > xs[1]) sc.fail(path, "interval bounds out of order");
  return {xs[0], xs[1]};
}

srg::geom::Region region_of(const Schema& sc, const json& v, const std::string& path,
                            const srg::geom::GeomSettings& gs) {
  sc.keys(v, path, {"disk", "point", "right_half_disk", "interval"});
  if (v.size() != 1) sc.fail(path, "a region needs exactly one of disk, point, right_half_disk, interval");
  if (v.contains("disk")) {
    auto iv = interval_of(sc, v["disk"], path + "/disk");
    return srg::geom::disk_region(iv.lo, iv.hi, gs);
  }
  if (v.contains("point")) return srg::geom::point_region(sc.required_number(v, path, "point"), gs);
  if (v.contains("right_half_disk")) return srg::geom::right_half_disk(sc.required_number(v, path, "right_half_disk"), gs);
  auto iv = interval_of(sc, v["interval"], path + "/interval");
  return srg::geom::real_interval(iv.lo, iv.hi, gs);
}

srg::nonlin::Nonlinearity nonlinearity_of(const Schema& sc, const json& v, const std::string& path) {
  sc.keys(v, path, {"nonlinearity", "level", "width", "gain", "beta", "amplitude", "k", "x", "y", "sector",
                    "incr_sector", "inflatable"});
  std::string kind = sc.string(v, path, "nonlinearity");
  srg::nonlin::Nonlinearity phi;
  if (kind == "saturation") {
    phi = srg::nonlin::saturation(sc.number(v, path, "level", 1.0));
  } else if (kind == "deadzone") {
    phi = srg::nonlin::deadzone(sc.required_number(v, path, "width"));
  } else if (kind == "sine") {
    phi = srg::nonlin::sine(sc.number(v, path, "gain", 1.0));
  } else if (kind == "cubic") {
    phi = srg::nonlin::cubic(sc.number(v, path, "beta", 1.0), sc.number(v, path, "amplitude", 1e9));
  } else if (kind == "slope_increase") {
    phi = srg::nonlin::slope_increase();
  } else if (kind == "linear") {
    phi = srg::nonlin::linear(sc.required_number(v, path, "k"));
  } else if (kind == "table") {
    if (!v.contains("x") || !v.contains("y")) sc.fail(path, "a table needs 'x' and 'y'");
    auto xs = sc.numbers(v["x"], path + "/x");
    auto ys = sc.numbers(v["y"], path + "/y", xs.size());
    phi = srg::nonlin::tabulated(xs, ys);
  } else {
    sc.fail(path + "/nonlinearity", "unknown nonlinearity '" + kind + "'");
  }
  if (v.contains("sector")) phi.sector = interval_of(sc, v["sector"], path + "/sector");
  if (v.contains("incr_sector")) phi.incr_sector = interval_of(sc, v["incr_sector"], path + "/incr_sector");
  phi.inflatable = sc.boolean(v, path, "inflatable", phi.inflatable);
  return phi;
}

srg::sim::Signal signal_of(const Schema& sc, const json& v, const std::string& path) {
  if (!v.is_array()) sc.fail(path, "a signal is a list of step/pulse terms");
  srg::sim::Signal s = srg::sim::zero_signal();
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    sc.keys(v[i], p, {"step", "pulse"});
    if (v[i].size() != 1) sc.fail(p, "a signal term is one of step, pulse");
    if (v[i].contains("step")) {
      auto a = sc.numbers(v[i]["step"], p + "/step", 2);
      s = srg::sim::sum_signals(s, srg::sim::step_signal(a[0], a[1]));
    } else {
      auto a = sc.numbers(v[i]["pulse"], p + "/pulse", 3);
      s = srg::sim::sum_signals(s, srg::sim::pulse_signal(a[0], a[1], a[2]));
    }
  }
  return s;
}

void require_kind(const Schema& sc, const ProjectConfig& c, const std::string& name, const std::string& path,
                  srg::lang::Operator::Kind kind, const char* what) {
  if (!c.table.has(name)) sc.fail(path, "undefined operator '" + name + "'");
  if (c.table.at(name).kind != kind) sc.fail(path, "operator '" + name + "' is not " + what);
}

void require_static(const Schema& sc, const ProjectConfig& c, const std::string& name, const std::string& path) {
  if (!c.table.has(name)) sc.fail(path, "undefined operator '" + name + "'");
  if (c.table.at(name).kind == srg::lang::Operator::Kind::Lti) sc.fail(path, "operator '" + name + "' is linear");
}

}  // namespace

ProjectConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, source + ": " + e.what());
  }
  Schema sc(key_lines(text), source);
  sc.keys(root, "", {"operators", "analysis", "word", "plant", "controller", "nonlinearity", "loop", "mode", "kappa",
                     "geometry", "assertions", "outputs", "simulation"});

  ProjectConfig c;
  c.source = source;

  if (root.contains("geometry")) {
    const json& g = root["geometry"];
    sc.keys(g, "/geometry", {"raster", "boundary_samples", "tolerance", "w_min", "w_max", "points_per_sign",
                             "extended"});
    c.geometry.raster = int(sc.number(g, "/geometry", "raster", c.geometry.raster));
    c.geometry.boundary_samples = int(sc.number(g, "/geometry", "boundary_samples", c.geometry.boundary_samples));
    c.geometry.tolerance = sc.number(g, "/geometry", "tolerance", c.geometry.tolerance);
    c.grid.w_min = sc.number(g, "/geometry", "w_min", c.grid.w_min);
    c.grid.w_max = sc.number(g, "/geometry", "w_max", c.grid.w_max);
    c.grid.points_per_sign = int(sc.number(g, "/geometry", "points_per_sign", c.grid.points_per_sign));
    c.extended = sc.boolean(g, "/geometry", "extended", true);
    if (c.geometry.raster < 64) sc.fail("/geometry/raster", "raster must be at least 64");
  }

  if (!root.contains("operators")) sc.fail("", "missing 'operators'");
  const json& ops = root["operators"];
  if (!ops.is_object()) sc.fail("/operators", "'operators' must be an object");
  // Words may reference each other; resolve until no progress.
  std::vector<std::string> pending;
  for (auto it = ops.begin(); it != ops.end(); ++it) {
    const std::string path = "/operators/" + escape_token(it.key());
    const json& v = it.value();
    if (it.key() == srg::lang::kIdentity) sc.fail(path, "'1' is reserved for the identity");
    if (!v.is_object()) sc.fail(path, "operator spec must be an object");
    try {
      if (v.contains("tf")) {
        sc.keys(v, path, {"tf"});
        auto tf = srg::lti::parse_tf(sc.string(v, path, "tf"));
        tf.set_label(it.key());
        c.table.add_lti(it.key(), tf);
      } else if (v.contains("word")) {
        sc.keys(v, path, {"word"});
        pending.push_back(it.key());
      } else if (v.contains("nonlinearity")) {
        auto phi = nonlinearity_of(sc, v, path);
        phi.label = it.key();
        c.table.add_nonlinearity(it.key(), phi);
      } else if (v.contains("region")) {
        sc.keys(v, path, {"region"});
        const json& r = v["region"];
        sc.keys(r, path + "/region", {"srg", "sg0"});
        if (!r.contains("srg")) sc.fail(path + "/region", "a declared region needs 'srg'");
        auto srg_r = region_of(sc, r["srg"], path + "/region/srg", c.geometry);
        std::optional<srg::geom::Region> sg0;
        if (r.contains("sg0")) sg0 = region_of(sc, r["sg0"], path + "/region/sg0", c.geometry);
        c.table.add_region(it.key(), srg_r, sg0);
      } else if (v.contains("cubic_bounds")) {
        sc.keys(v, path, {"cubic_bounds"});
        const json& b = v["cubic_bounds"];
        sc.keys(b, path + "/cubic_bounds", {"amplitude", "beta"});
        auto cb = srg::nonlin::cubic_bounds(sc.required_number(b, path + "/cubic_bounds", "amplitude"), c.geometry,
                                            sc.number(b, path + "/cubic_bounds", "beta", 1.0));
        c.table.add_region(it.key(), cb.srg, cb.sg0);
      } else {
        sc.fail(path, "operator needs one of tf, word, nonlinearity, region, cubic_bounds");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Config) throw;
      sc.fail(path, e.what());
    }
  }
  while (!pending.empty()) {
    std::vector<std::string> next;
    std::string last_error;
    for (const auto& name : pending) {
      const std::string path = "/operators/" + escape_token(name) + "/word";
      try {
        auto e = srg::lang::parse_expr(ops[name]["word"].get<std::string>());
        auto tf = srg::lang::fold_lti(e, c.table);
        tf.set_label(name);
        c.table.add_lti(name, tf);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnknownName) sc.fail(path, e.what());
        next.push_back(name);
        last_error = e.what();
      }
    }
    if (next.size() == pending.size()) {
      sc.fail("/operators/" + escape_token(next.front()) + "/word", last_error);
    }
    pending = std::move(next);
  }

  c.analysis = sc.string(root, "", "analysis", "word");
  static const std::set<std::string> kinds = {"word", "lure", "controlled_lure", "lure_controller",
                                              "generalized_circle"};
  if (!kinds.count(c.analysis)) sc.fail("/analysis", "unknown analysis '" + c.analysis + "'");
  c.word = sc.string(root, "", "word");
  c.plant = sc.string(root, "", "plant");
  c.controller = sc.string(root, "", "controller");
  c.nonlinearity = sc.string(root, "", "nonlinearity");
  c.loop = sc.string(root, "", "loop");

  if (!c.word.empty()) {
    try {
      srg::lang::check_names(srg::lang::parse_expr(c.word), c.table);
    } catch (const Error& e) {
      sc.fail("/word", e.what());
    }
  }
  using K = srg::lang::Operator::Kind;
  if (c.analysis == "word" && c.word.empty() && !root.contains("simulation") && c.loop.empty()) {
    sc.fail("", "a word analysis needs 'word'");
  }
  if (c.analysis != "word") {
    if (c.plant.empty()) sc.fail("", "'" + c.analysis + "' needs 'plant'");
    require_kind(sc, c, c.plant, "/plant", K::Lti, "a transfer function");
    if (c.nonlinearity.empty()) sc.fail("", "'" + c.analysis + "' needs 'nonlinearity'");
    require_static(sc, c, c.nonlinearity, "/nonlinearity");
    if (c.analysis == "controlled_lure" || c.analysis == "lure_controller") {
      if (c.controller.empty()) sc.fail("", "'" + c.analysis + "' needs 'controller'");
      require_kind(sc, c, c.controller, "/controller", K::Lti, "a transfer function");
    }
  }
  if (!c.loop.empty()) require_kind(sc, c, c.loop, "/loop", K::Lti, "a transfer function");

  if (root.contains("mode")) {
    try {
      c.mode = srg::parse_mode(sc.string(root, "", "mode"));
    } catch (const Error& e) {
      sc.fail("/mode", e.what());
    }
  }

  if (root.contains("kappa")) {
    const json& k = root["kappa"];
    if (!k.is_object()) sc.fail("/kappa", "'kappa' maps operator names to gains");
    for (auto it = k.begin(); it != k.end(); ++it) {
      std::string p = "/kappa/" + escape_token(it.key());
      require_static(sc, c, it.key(), p);
      if (!it.value().is_number()) sc.fail(p, "kappa must be a number");
      c.kappa[it.key()] = it.value().get<double>();
    }
  }

  if (root.contains("assertions")) {
    const json& a = root["assertions"];
    sc.keys(a, "/assertions", {"inflatable", "tau_continuous", "causal"});
    c.tau_continuous = sc.boolean(a, "/assertions", "tau_continuous", false);
    for (const char* section : {"inflatable", "causal"}) {
      if (!a.contains(section)) continue;
      const json& m = a[section];
      std::string sp = std::string("/assertions/") + section;
      if (!m.is_object()) sc.fail(sp, std::string("'") + section + "' maps operator names to booleans");
      for (auto it = m.begin(); it != m.end(); ++it) {
        std::string p = sp + "/" + escape_token(it.key());
        if (!c.table.has(it.key())) sc.fail(p, "undefined operator '" + it.key() + "'");
        if (!it.value().is_boolean()) sc.fail(p, "expected true or false");
        auto& op = c.table.mutable_at(it.key());
        if (std::string(section) == "causal") {
          op.causal = it.value().get<bool>();
        } else {
          if (op.kind == K::Lti) sc.fail(p, "inflatability applies to nonlinear operators");
          op.nl.inflatable = it.value().get<bool>();
        }
      }
    }
  }

  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    sc.keys(o, "/outputs", {"report", "plots", "csv"});
    c.outputs.report = sc.string(o, "/outputs", "report", c.outputs.report);
    c.outputs.plots = sc.boolean(o, "/outputs", "plots", true);
    c.outputs.csv = sc.boolean(o, "/outputs", "csv", true);
  }

  if (root.contains("simulation")) {
    const json& s = root["simulation"];
    const std::string p = "/simulation";
    sc.keys(s, p, {"plant", "controller", "phi_plant", "phi_ctrl", "phi_act", "r", "d", "T", "h", "probes"});
    SimulationSpec sim;
    sim.plant = sc.string(s, p, "plant");
    if (sim.plant.empty()) sc.fail(p, "simulation needs 'plant'");
    require_kind(sc, c, sim.plant, p + "/plant", K::Lti, "a transfer function");
    if (s.contains("controller")) {
      sim.controller = sc.string(s, p, "controller");
      require_kind(sc, c, *sim.controller, p + "/controller", K::Lti, "a transfer function");
    }
    auto nl = [&](const char* key, std::optional<std::string>& slot) {
      if (!s.contains(key)) return;
      slot = sc.string(s, p, key);
      require_kind(sc, c, *slot, p + "/" + key, K::Nonlinear, "an evaluable nonlinearity");
    };
    nl("phi_plant", sim.phi_plant);
    nl("phi_ctrl", sim.phi_ctrl);
    nl("phi_act", sim.phi_act);
    if (s.contains("r")) sim.r = signal_of(sc, s["r"], p + "/r");
    if (s.contains("d")) sim.d = signal_of(sc, s["d"], p + "/d");
    sim.T = sc.number(s, p, "T", sim.T);
    sim.h = sc.number(s, p, "h", sim.h);
    if (!(sim.h > 0.0) || !(sim.T > sim.h)) sc.fail(p, "need 0 < h < T");
    if (s.contains("probes")) sim.probes = sc.numbers(s["probes"], p + "/probes");
    c.simulation = std::move(sim);
  }
  return c;
}

ProjectConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace srgtool
