#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "config.hpp"
#include "srgkit/error.hpp"

using srgtool::parse_config;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const srg::Error& e) {
    EXPECT_EQ(e.code(), srg::ErrorCode::Config);
    return e.what();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return {};
}

const char* kMinimal = R"j({
  "operators": {
    "L": {"tf": "1/(s+1)"}
  },
  "word": "(1+L^-1)^-1"
})j";

}  // namespace

TEST(KeyLines, TracksNestedKeysAndElements) {
  const std::string text = "{\n  \"a\": {\n    \"b\": 1,\n    \"c\": [\n      2,\n      {\"d\": 3}\n    ]\n  }\n}\n";
  auto lines = srgtool::key_lines(text);
  EXPECT_EQ(lines.at("/a"), 2);
  EXPECT_EQ(lines.at("/a/b"), 3);
  EXPECT_EQ(lines.at("/a/c"), 4);
  EXPECT_EQ(lines.at("/a/c/0"), 5);
  EXPECT_EQ(lines.at("/a/c/1"), 6);
  EXPECT_EQ(lines.at("/a/c/1/d"), 6);
}

TEST(KeyLines, SkipsComments) {
  auto lines = srgtool::key_lines("// \"x\": 1\n{\n  /* \"y\":\n */ \"z\": 2\n}\n");
  EXPECT_EQ(lines.count("/x"), 0u);
  EXPECT_EQ(lines.count("/y"), 0u);
  EXPECT_EQ(lines.at("/z"), 4);
}

TEST(Config, MinimalParses) {
  auto c = parse_config(kMinimal);
  EXPECT_EQ(c.analysis, "word");
  EXPECT_TRUE(c.table.has("L"));
  EXPECT_EQ(c.mode, srg::Mode::Incremental);
}

TEST(Config, UnknownKeyReportsLine) {
  auto msg = config_error("{\n  \"operators\": {\n    \"L\": {\"tf\": \"1/(s+1)\", \"colour\": 1}\n  },\n  \"word\": \"L\"\n}");
  EXPECT_NE(msg.find("t.cfg:3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("colour"), std::string::npos) << msg;
  auto top = config_error("{\n  \"operators\": {\"L\": {\"tf\": \"1/(s+1)\"}},\n  \"word\": \"L\",\n  \"wrod\": 2\n}");
  EXPECT_NE(top.find("t.cfg:4:"), std::string::npos) << top;
}

TEST(Config, UndefinedNamesRejected) {
  auto msg = config_error("{\n  \"operators\": {\"L\": {\"tf\": \"1/(s+1)\"}},\n  \"word\": \"L K\"\n}");
  EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
  config_error(R"j({"operators": {"L": {"tf": "1/(s+1)"}}, "word": "L", "kappa": {"phi": 1}})j");
  config_error(R"j({"operators": {"L": {"tf": "1/(s+1)"}}, "analysis": "lure", "plant": "L", "nonlinearity": "L"})j");
}

TEST(Config, BadValuesRejected) {
  auto tf = config_error("{\n  \"operators\": {\n    \"L\": {\"tf\": \"1/(s+\"}\n  },\n  \"word\": \"L\"\n}");
  EXPECT_NE(tf.find("t.cfg:3:"), std::string::npos) << tf;
  config_error(R"j({"operators": {"L": {"tf": "1/(s+1)"}}, "word": "L", "mode": "sideways"})j");
  config_error(R"j({"operators": {"p": {"nonlinearity": "sigmoid"}}, "word": "p"})j");
  config_error(R"j({"operators": {"p": {"nonlinearity": "saturation", "sector": [1, 0]}}, "word": "p"})j");
  config_error(R"j({"operators": {"L": {"tf": "1/(s+1)"}}, "word": "L", "geometry": {"raster": "big"}})j");
  config_error("{ not json");
}

TEST(Config, WordOperatorsResolveInAnyOrder) {
  auto c = parse_config(R"j({
    "operators": {
      "A": {"word": "(G^-1+K)^-1"},
      "G": {"tf": "1/(s^2+0.3*s-1)"},
      "K": {"tf": "5+5*s/(s/100+1)"}
    },
    "word": "A"
  })j");
  auto G = c.table.at("G").tf, K = c.table.at("K").tf, A = c.table.at("A").tf;
  srg::lti::Complex s(0.2, 1.7);
  EXPECT_NEAR(std::abs(A(s) - G(s) / (1.0 + G(s) * K(s))), 0.0, 1e-10);
  auto cyc = config_error(R"j({"operators": {"A": {"word": "B"}, "B": {"word": "A"}}, "word": "A"})j");
  EXPECT_FALSE(cyc.empty());
}

TEST(Config, AssertionsAndOverrides) {
  auto c = parse_config(R"j({
    "operators": {"G": {"tf": "1/(s+1)"}, "p": {"nonlinearity": "saturation"}},
    "word": "(1 + G p)^-1",
    "assertions": {"tau_continuous": true, "inflatable": {"p": false}, "causal": {"G": true}},
    "kappa": {"p": 0.25}
  })j");
  EXPECT_TRUE(c.tau_continuous);
  EXPECT_FALSE(c.table.at("p").nl.inflatable);
  EXPECT_DOUBLE_EQ(c.kappa.at("p"), 0.25);
  srgtool::Overrides o;
  o.mode = "non-incremental";
  o.kappa["p"] = 0.75;
  o.plain = true;
  srgtool::apply_overrides(c, o);
  EXPECT_EQ(c.mode, srg::Mode::NonIncremental);
  EXPECT_DOUBLE_EQ(c.kappa.at("p"), 0.75);
  EXPECT_FALSE(c.extended);
}

TEST(Config, BundledConfigsLoad) {
  for (const char* name : {"duffing", "duffing_range", "pendulum_k1", "pendulum_k2", "pitfall", "saturation"}) {
    auto path = std::string(SRGKIT_CONFIG_DIR) + "/" + name + ".cfg";
    EXPECT_NO_THROW(srgtool::load_config(path)) << path;
  }
}

TEST(Commands, AnalyzeWritesReportAndManifest) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "srgtool_cli_test";
  fs::remove_all(dir);
  fs::path cfg = fs::temp_directory_path() / "srgtool_cli_test.cfg";
  std::ofstream(cfg) << kMinimal;
  srgtool::Overrides o;
  o.out = dir.string();
  o.raster = 512;
  EXPECT_EQ(srgtool::cmd_analyze(cfg.string(), o), srgtool::kExitStable);
  EXPECT_TRUE(fs::exists(dir / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "regions.svg"));
  std::ifstream m(dir / "manifest.json");
  std::string manifest((std::istreambuf_iterator<char>(m)), {});
  EXPECT_NE(manifest.find("\"exit_code\": 0"), std::string::npos) << manifest;
  fs::remove_all(dir);
  fs::remove(cfg);
}
