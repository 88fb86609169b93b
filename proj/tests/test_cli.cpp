#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <sys/wait.h>

#include "bergman/cli.hpp"

using namespace bergman;
namespace fs = std::filesystem;

namespace {

const detail::FieldInfo& field(const std::string& name) {
  for (const auto& f : config_fields())
    if (name == f.name) return f;
  throw std::runtime_error("no field " + name);
}

ExperimentConfig lemma2_config() {
  ExperimentConfig c;
  c.command = "lemma2";
  c.delta = 1.0;
  c.t = 3.0;
  c.r0 = 1.0;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Shell {
  int status;
  std::string output;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string(BERGMAN_LAB_PATH) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WEXITSTATUS(raw), out};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "bergman_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  ExperimentConfig c;
  c.command = "theorem1";
  c.alpha = 3.0;
  c.p = 0.5;
  c.q = 0.5;
  c.beta = 1.0;
  c.family = "extremal";
  c.radii = std::vector<double>{0.9, 0.99};
  c.max_k = 4;
  c.threads = 3;
  c.seed = 99;
  const auto back = config_from_json(to_json(c));
  EXPECT_EQ(back, c);
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
}

TEST(Config, RejectsUnknownAndMistypedFields) {
  EXPECT_THROW(config_from_json(Json{{"command", "lemma2"}, {"bogus", 1}}), LabError);
  EXPECT_THROW(config_from_json(Json{{"command", "lemma2"}, {"delta", "one"}}), LabError);
  EXPECT_THROW(config_from_json(Json{{"command", "levi"}, {"count", 2.5}}), LabError);
  EXPECT_THROW(config_from_json(Json{{"delta", 1.0}}), LabError);
  EXPECT_THROW(config_from_json(Json::array()), LabError);
}

TEST(Config, ValidateRejectsInapplicableField) {
  auto c = lemma2_config();
  EXPECT_NO_THROW(validate(c));
  c.sigma = 2.0;
  EXPECT_THROW(validate(c), LabError);
  auto d = lemma2_config();
  d.command = "nope";
  EXPECT_THROW(validate(d), LabError);
  auto e = lemma2_config();
  e.format = "xml";
  EXPECT_THROW(validate(e), LabError);
}

TEST(Config, SetFieldFromText) {
  ExperimentConfig c;
  set_field_from_text(c, field("alpha"), "2.5");
  set_field_from_text(c, field("max_k"), "7");
  set_field_from_text(c, field("radii"), "0.9,0.99");
  set_field_from_text(c, field("family"), "monomials");
  set_field_from_text(c, field("seed"), "12");
  EXPECT_EQ(c.alpha, 2.5);
  EXPECT_EQ(c.max_k, 7);
  EXPECT_EQ(c.radii, (std::vector<double>{0.9, 0.99}));
  EXPECT_EQ(c.family, "monomials");
  EXPECT_EQ(c.seed, 12u);
  EXPECT_THROW(set_field_from_text(c, field("alpha"), "2.5x"), LabError);
  EXPECT_THROW(set_field_from_text(c, field("max_k"), "1.5"), LabError);
  EXPECT_THROW(set_field_from_text(c, field("seed"), "-1"), LabError);
}

TEST(Config, EveryFieldHasDistinctName) {
  std::set<std::string> names;
  for (const auto& f : config_fields()) EXPECT_TRUE(names.insert(f.name).second) << f.name;
  EXPECT_EQ(names.count("command"), 0u);
}

TEST(ExitStatus, Mapping) {
  EXPECT_EQ(exit_status(Verdict::Bounded), 0);
  EXPECT_EQ(exit_status(Verdict::Pass), 0);
  EXPECT_EQ(exit_status(Verdict::GrowthDetected), 2);
  EXPECT_EQ(exit_status(Verdict::Fail), 2);
  EXPECT_EQ(exit_status(Verdict::Inconclusive), 3);
  EXPECT_EQ(kUsageStatus, 1);
}

TEST(Run, Lemma2WritesReport) {
  auto c = lemma2_config();
  c.out = scratch("lemma2.json").string();
  const auto r = run(c);
  ASSERT_EQ(r.status, 0) << r.error;
  const auto j = Json::parse(slurp(c.out));
  for (const char* key : {"config", "samples", "max_ratio", "tail_slope", "grid_stability", "verdict", "walltime_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_NEAR(j["max_ratio"].get<double>(), 1.0 / 3.0, 0.02 / 3.0);
  EXPECT_EQ(j["verdict"], "Bounded");
  EXPECT_EQ(j["config"]["command"], "lemma2");
}

TEST(Run, CsvHeader) {
  auto c = lemma2_config();
  c.format = "csv";
  c.out = scratch("lemma2.csv").string();
  ASSERT_EQ(run(c).status, 0);
  const auto text = slurp(c.out);
  EXPECT_EQ(text.substr(0, text.find('\n')), "r,ratio");
}

TEST(Run, ViolationProbeAndUsageErrors) {
  ExperimentConfig c;
  c.command = "lemma1b";
  c.t = 1.0;
  c.sigma = 2.5;
  c.violate = true;
  c.out = scratch("violate.json").string();
  EXPECT_EQ(run(c).status, 2);
  c.violate = false;
  EXPECT_EQ(run(c).status, 1);
}

TEST(Run, ThreadCountDoesNotChangeReport) {
  auto c = lemma2_config();
  c.out = scratch("t1.json").string();
  const auto a = run(c);
  c.threads = 8;
  c.out = scratch("t8.json").string();
  auto b = run(c);
  ASSERT_TRUE(a.report && b.report);
  b.report->walltime_ms = a.report->walltime_ms;
  EXPECT_TRUE(same_report(*a.report, *b.report));
  EXPECT_EQ(to_json(*a.report, false).dump(), to_json(*b.report, false).dump());
}

TEST(Binary, HelpListsEveryCommand) {
  const auto r = shell("--help");
  EXPECT_EQ(r.status, 0);
  for (const auto& name : command_names()) EXPECT_NE(r.output.find(name), std::string::npos) << name;
}

TEST(Binary, ExampleInvocations) {
  const auto out = scratch("bin_lemma2.json");
  EXPECT_EQ(shell("lemma2 --delta 1 --t 3 --r0 1 --out " + out.string()).status, 0);
  const auto j = Json::parse(slurp(out));
  EXPECT_NEAR(j["max_ratio"].get<double>(), 1.0 / 3.0, 0.02 / 3.0);
  EXPECT_EQ(shell("lemma1b --t 1 --sigma 2.5 --violate --out " + scratch("bin_v.json").string()).status, 2);
  EXPECT_EQ(shell("lemma2 --nonsense 3").status, 1);
  EXPECT_EQ(shell("lemma2 --sigma 3").status, 1);
}

TEST(Binary, FlagsOverrideConfigFile) {
  const auto cfg = scratch("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"command": "lemma2", "delta": 1.0, "t": 3.0, "r0": 0.5})";
  }
  const auto out = scratch("cfg_out.json");
  ASSERT_EQ(shell("lemma2 --config " + cfg.string() + " --r0 1 --out " + out.string()).status, 0);
  const auto j = Json::parse(slurp(out));
  EXPECT_EQ(j["config"]["r0"], 1.0);
  EXPECT_EQ(j["config"]["delta"], 1.0);
  {
    std::ofstream f(cfg);
    f << R"({"command": "lemma2", "unknown_field": 1})";
  }
  EXPECT_EQ(shell("lemma2 --config " + cfg.string()).status, 1);
}
