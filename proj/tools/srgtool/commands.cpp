#include "commands.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>

#include "srgkit/analysis/canonical.hpp"
#include "srgkit/analysis/duffing.hpp"
#include "srgkit/error.hpp"
#include "srgkit/geom/io.hpp"
#include "srgkit/lang/pipeline.hpp"
#include "srgkit/lti/srg.hpp"
#include "srgkit/nonlin/nonlinearity.hpp"

namespace srgtool {

namespace fs = std::filesystem;
using nlohmann::json;
using srg::Error;
using srg::ErrorCode;
using srg::analysis::AnalysisReport;
using srg::analysis::Verdict;

namespace {

const char* kFills[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::string timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string plot_report(const AnalysisReport& r, const std::vector<std::complex<double>>& overlay) {
  srg::geom::SvgPlot plot;
  int k = 0;
  for (const auto& nr : r.regions) {
    const char* color = kFills[k++ % std::size(kFills)];
    plot.add_region(nr.region, color, color, nr.name);
  }
  if (!overlay.empty()) plot.add_polyline(overlay, "#222222", "Nyquist");
  return plot.render();
}

}  // namespace

RunDir::RunDir(const std::string& command, const std::string& tag, const std::optional<std::string>& explicit_dir)
    : command_(command) {
  if (explicit_dir) {
    dir_ = *explicit_dir;
  } else {
    const char* env = std::getenv(kOutputEnv);
    fs::path base = env && *env ? fs::path(env) : fs::path("srgtool-runs");
    std::string name = command + (tag.empty() ? "" : "-" + tag) + "-" + timestamp() + "-" + std::to_string(::getpid());
    dir_ = base / name;
  }
  fs::create_directories(dir_);
}

fs::path RunDir::write(const std::string& name, const std::string& content) {
  fs::path p = dir_ / name;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::Config, "cannot write " + p.string());
  out << content;
  artifacts_.push_back(name);
  return p;
}

void RunDir::finish(int exit_code) {
  json m;
  m["command"] = command_;
  m["exit_code"] = exit_code;
  m["artifacts"] = artifacts_;
  for (auto it = extra_.begin(); it != extra_.end(); ++it) m[it.key()] = it.value();
  std::ofstream(dir_ / "manifest.json") << m.dump(2) << "\n";
}

void apply_overrides(ProjectConfig& c, const Overrides& o) {
  if (o.mode) c.mode = srg::parse_mode(*o.mode);
  for (const auto& [name, k] : o.kappa) {
    if (!c.table.has(name)) throw Error(ErrorCode::UnknownName, "--kappa names undefined operator '" + name + "'");
    c.kappa[name] = k;
  }
  if (o.raster) c.geometry.raster = *o.raster;
  if (o.word) c.word = *o.word;
  if (o.plain) c.extended = false;
}

int exit_code_for(Verdict v) { return v == Verdict::StableBounded ? kExitStable : kExitNoBound; }

AnalysisReport run_analysis(const ProjectConfig& c) {
  if (c.analysis == "word") {
    if (c.word.empty()) throw Error(ErrorCode::Config, c.source + ": no word to analyze");
    srg::lang::AnalyzeOptions opt;
    opt.mode = c.mode;
    opt.bound.extended = c.extended;
    opt.bound.collapse = c.extended;
    opt.bound.geometry = c.geometry;
    opt.bound.grid = c.grid;
    opt.kappa = c.kappa;
    opt.tau_continuous = c.tau_continuous;
    return srg::lang::analyze_interconnection(srg::lang::parse_expr(c.word), c.table, opt);
  }
  srg::analysis::CanonicalOptions opt;
  opt.geometry = c.geometry;
  opt.grid = c.grid;
  const auto& G = c.table.at(c.plant).tf;
  const auto& phi = c.table.at(c.nonlinearity).nl;
  if (c.analysis == "lure") return srg::analysis::lure(G, phi, c.mode, opt);
  if (c.analysis == "generalized_circle") return srg::analysis::generalized_circle(G, phi, c.mode, opt);
  const auto& K = c.table.at(c.controller).tf;
  auto it = c.kappa.find(c.nonlinearity);
  double kappa = it != c.kappa.end() ? it->second : srg::lang::default_kappa(phi, c.mode);
  if (c.analysis == "controlled_lure") return srg::analysis::controlled_lure(G, K, phi, kappa, c.mode, opt);
  return srg::analysis::lure_controller(G, K, phi, kappa, c.mode, opt);
}

int cmd_analyze(const std::string& config_path, const Overrides& o) {
  auto c = load_config(config_path);
  apply_overrides(c, o);
  RunDir run("analyze", stem_of(config_path), o.out);
  auto r = run_analysis(c);
  run.write(c.outputs.report, srg::analysis::report_to_json(r) + "\n");
  if (c.outputs.plots) {
    std::vector<std::complex<double>> overlay;
    std::string overlay_name = !c.loop.empty() ? c.loop : c.plant;
    if (!overlay_name.empty()) {
      overlay = srg::lti::nyquist_curve(c.table.at(overlay_name).tf, c.grid).positive_branch();
    }
    run.write("regions.svg", plot_report(r, overlay));
  }
  int code = exit_code_for(r.verdict);
  run.note("config", config_path);
  run.note("verdict", srg::analysis::to_string(r.verdict));
  run.finish(code);
  std::printf("%s  verdict=%s domain=%s r_m=%.6g gain_bound=%.6g\n", stem_of(config_path).c_str(),
              srg::analysis::to_string(r.verdict), srg::analysis::to_string(r.domain), r.r_m, r.gain_bound);
  for (const auto& n : r.notes) std::printf("  note: %s\n", n.c_str());
  std::printf("  output: %s\n", run.path().c_str());
  return code;
}

namespace {

srg::lti::TransferFunction tf_from(const std::optional<std::string>& config_path,
                                   const std::optional<std::string>& tf_text, const Overrides& o,
                                   std::optional<ProjectConfig>& cfg) {
  if (tf_text) return srg::lti::parse_tf(*tf_text);
  if (!config_path) throw Error(ErrorCode::Config, "give --tf or a config file");
  cfg = load_config(*config_path);
  apply_overrides(*cfg, o);
  std::string name = !cfg->loop.empty() ? cfg->loop : cfg->plant;
  if (name.empty()) throw Error(ErrorCode::Config, *config_path + ": no 'loop' or 'plant' transfer function");
  return cfg->table.at(name).tf;
}

}  // namespace

int cmd_nyquist(const std::optional<std::string>& config_path, const std::optional<std::string>& tf_text,
                const Overrides& o) {
  std::optional<ProjectConfig> cfg;
  auto L = tf_from(config_path, tf_text, o, cfg);
  auto grid = cfg ? cfg->grid : srg::lti::FrequencyGrid{};
  RunDir run("nyquist", config_path ? stem_of(*config_path) : "tf", o.out);
  auto curve = srg::lti::nyquist_curve(L, grid);
  auto v = srg::lti::nyquist_criterion(L, grid);
  run.write("nyquist.csv", srg::lti::nyquist_csv(curve));
  srg::geom::SvgPlot plot;
  std::vector<std::complex<double>> finite;
  for (auto z : curve.samples) {
    if (std::abs(z) < 1e6) finite.push_back(z);
  }
  plot.add_polyline(finite, "#4c72b0", "L(s)");
  plot.add_marker({-1.0, 0.0}, "#c44e52", "-1");
  run.write("nyquist.svg", plot.render());
  json j = {{"tf", L.to_string()}, {"n_p", v.n_p}, {"n_n", v.n_n}, {"n_z", v.n_z}, {"stable", v.stable()}};
  run.write("verdict.json", j.dump(2) + "\n");
  int code = v.stable() ? kExitStable : kExitNoBound;
  run.finish(code);
  std::printf("L(s) = %s\n  n_p=%d n_n=%d n_z=%d  closed loop %s\n  output: %s\n", L.to_string().c_str(), v.n_p,
              v.n_n, v.n_z, v.stable() ? "stable" : "unstable", run.path().c_str());
  return code;
}

int cmd_srg(const std::optional<std::string>& config_path, const std::optional<std::string>& tf_text,
            const Overrides& o) {
  srg::geom::Region region;
  std::string what;
  srg::Mode mode = o.mode ? srg::parse_mode(*o.mode) : srg::Mode::Incremental;
  if (tf_text) {
    auto f = srg::lti::parse_tf(*tf_text);
    region = o.plain ? srg::lti::srg_lti(f) : srg::lti::extended_srg(f);
    what = f.to_string();
  } else {
    if (!config_path) throw Error(ErrorCode::Config, "give --tf or a config file");
    auto c = load_config(*config_path);
    apply_overrides(c, o);
    if (c.word.empty()) throw Error(ErrorCode::Config, *config_path + ": no word; pass --word");
    srg::lang::BoundOptions opt;
    opt.extended = c.extended;
    opt.collapse = c.extended;  // folding would hide the closed loop behind a plain SRG
    opt.geometry = c.geometry;
    opt.grid = c.grid;
    auto v = srg::lang::srg_bound(srg::lang::parse_expr(c.word), c.table, c.mode, opt);
    region = v.region;
    mode = c.mode;
    what = c.word;
  }
  RunDir run("srg", config_path ? stem_of(*config_path) : "tf", o.out);
  double radius = srg::geom::region_radius(region);
  run.write("region.json", srg::geom::region_to_json(region, 2) + "\n");
  srg::geom::SvgPlot plot;
  plot.add_region(region, kFills[0], kFills[0], what);
  run.write("region.svg", plot.render());
  run.note("subject", what);
  run.note("extended", !o.plain);
  run.note("radius", number_or_null(radius));
  int code = std::isfinite(radius) ? kExitStable : kExitNoBound;
  run.finish(code);
  std::printf("%s (%s, %s)\n  radius=%.6g\n  output: %s\n", what.c_str(), srg::to_string(mode),
              o.plain ? "plain" : "extended", radius, run.path().c_str());
  return code;
}

int cmd_simulate(const std::string& config_path, const Overrides& o) {
  auto c = load_config(config_path);
  apply_overrides(c, o);
  if (!c.simulation) throw Error(ErrorCode::Config, config_path + ": no 'simulation' section");
  const auto& s = *c.simulation;
  srg::sim::LoopSpec spec;
  spec.G = c.table.at(s.plant).tf;
  if (s.controller) spec.K = c.table.at(*s.controller).tf;
  if (s.phi_plant) spec.phi_plant = c.table.at(*s.phi_plant).nl;
  if (s.phi_ctrl) spec.phi_ctrl = c.table.at(*s.phi_ctrl).nl;
  if (s.phi_act) spec.phi_act = c.table.at(*s.phi_act).nl;
  spec.r = s.r;
  spec.d = s.d;
  spec.T = s.T;
  spec.h = s.h;
  RunDir run("simulate", stem_of(config_path), o.out);
  auto tr = srg::sim::simulate_loop(spec);
  if (c.outputs.csv) run.write("trajectory.csv", tr.to_csv());
  const auto& y = tr.at("y");
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  json probes = json::object();
  std::printf("%s  T=%g h=%g  max|y|=%.6g\n", stem_of(config_path).c_str(), s.T, s.h, peak);
  for (double t : s.probes) {
    std::size_t i = std::min(y.size() - 1, std::size_t(std::llround(t / s.h)));
    probes[std::to_string(t)] = y[i];
    std::printf("  y(%g) = %.6g\n", t, y[i]);
  }
  json summary = {{"max_abs_y", peak}, {"probes", probes}, {"T", s.T}, {"h", s.h}};
  run.write("summary.json", summary.dump(2) + "\n");
  run.note("config", config_path);
  run.finish(kExitStable);
  std::printf("  output: %s\n", run.path().c_str());
  return kExitStable;
}

int cmd_duffing_bound(const DuffingArgs& a, const Overrides& o) {
  srg::analysis::DuffingParams p;
  p.alpha = a.alpha;
  p.beta = a.beta;
  p.delta = a.delta;
  p.k_p = a.kp;
  p.k_d = a.kd;
  p.d_max = a.d_max;
  double bound = srg::analysis::duffing_amplitude_bound(p);
  RunDir run("duffing_bound", "", o.out);
  json j = {{"alpha", p.alpha}, {"beta", p.beta}, {"delta", p.delta}, {"kp", p.k_p},
            {"kd", p.k_d},       {"d_max", p.d_max}, {"amplitude_bound", bound}};
  run.write("bound.json", j.dump(2) + "\n");
  run.finish(kExitStable);
  std::printf("amplitude bound ||y||_inf <= %.6g\n  output: %s\n", bound, run.path().c_str());
  return kExitStable;
}

int cmd_circle(const std::string& tf_text, double k1, double k2, const Overrides& o) {
  if (!(k1 < k2)) throw Error(ErrorCode::InvalidInterval, "need k1 < k2");
  auto G = srg::lti::parse_tf(tf_text);
  auto phi = srg::nonlin::linear(0.5 * (k1 + k2));
  phi.sector = srg::nonlin::Interval{k1, k2};
  phi.incr_sector = phi.sector;
  phi.label = "sector";
  srg::analysis::CanonicalOptions opt;
  if (o.raster) opt.geometry.raster = *o.raster;
  srg::Mode mode = o.mode ? srg::parse_mode(*o.mode) : srg::Mode::NonIncremental;
  auto classical = srg::analysis::classical_circle(G, k1, k2);
  auto general = srg::analysis::generalized_circle(G, phi, mode, opt);
  RunDir run("circle", "tf", o.out);
  json j = {{"tf", G.to_string()},
            {"k1", k1},
            {"k2", k2},
            {"classical", {{"stable", classical.stable}, {"case", classical.sector_case}, {"n_p", classical.n_p},
                           {"margin", classical.margin}, {"reason", classical.reason}}},
            {"generalized", json::parse(srg::analysis::report_to_json(general))}};
  run.write("circle.json", j.dump(2) + "\n");
  run.write("circle.svg", plot_report(general, srg::lti::nyquist_curve(G).positive_branch()));
  bool gen_ok = general.verdict == Verdict::StableBounded;
  int code = gen_ok ? kExitStable : kExitNoBound;
  run.finish(code);
  std::printf("G(s) = %s, sector [%g, %g]\n", G.to_string().c_str(), k1, k2);
  std::printf("  classical:   %s (case %d, margin %.4g)%s%s\n", classical.stable ? "stable" : "not certified",
              classical.sector_case, classical.margin, classical.reason.empty() ? "" : "  ",
              classical.reason.c_str());
  std::printf("  generalized: %s (r_m %.4g, gain bound %.4g)\n", srg::analysis::to_string(general.verdict),
              general.r_m, general.gain_bound);
  std::printf("  output: %s\n", run.path().c_str());
  return code;
}

}  // namespace srgtool
