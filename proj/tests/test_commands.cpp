#include "hetdss/commands.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hetdss::cli;
namespace fs = std::filesystem;

namespace {

fs::path data(const char* name) { return fs::path(HETDSS_DATA_DIR) / name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hetdss_test_commands";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

int run_cli(const std::string& args) {
  const int status = std::system((std::string(HETDSS_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv("DSS_MAX_SCENARIOS", value, 1); }
  ~EnvGuard() { unsetenv("DSS_MAX_SCENARIOS"); }
};

}  // namespace

TEST(Commands, EvaluateWorkedExample) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_evaluate({data("fig2.json")}, out, err), kExitInfeasible);
  EXPECT_NE(out.str().find("storage cost C_s = 68"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("repair cost C_r = 43/12"), std::string::npos);
  EXPECT_NE(out.str().find("bound Q = 2"), std::string::npos);
  EXPECT_NE(out.str().find("B <= Q: no"), std::string::npos);

  std::ostringstream json, err2;
  EvaluateOptions o{data("fig2.json")};
  o.json = true;
  cmd_evaluate(o, json, err2);
  EXPECT_NE(json.str().find("\"exact\": \"43/12\""), std::string::npos) << json.str();
  EXPECT_NE(json.str().find("\"feasible\": false"), std::string::npos);
}

TEST(Commands, InputErrors) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_evaluate({"/nonexistent.json"}, out, err), kExitInputError);
  // no operating point
  EXPECT_EQ(cmd_evaluate({data("fig5_hetero.json")}, out, err), kExitInputError);
  EXPECT_NE(err.str().find("alphas"), std::string::npos);

  ParetoOptions p;
  p.spec = data("fig5_hetero.json");
  p.mode = "homogeneous";
  EXPECT_EQ(cmd_pareto(p, out, err), kExitInputError);
  p.mode = "general";
  p.grid = "1:0.1:3";
  EXPECT_EQ(cmd_pareto(p, out, err), kExitInputError);
}

TEST(Commands, ScenarioCeilingFromEnvironment) {
  std::ostringstream out, err;
  EXPECT_EQ(resolve_max_scenarios(7), 7U);
  {
    EnvGuard env("100");
    EXPECT_EQ(resolve_max_scenarios(std::nullopt), 100U);
    EXPECT_EQ(cmd_evaluate({data("fig2.json")}, out, err), kExitInputError);
    EXPECT_NE(err.str().find("360"), std::string::npos) << err.str();
    EvaluateOptions o{data("fig2.json")};
    o.max_scenarios = 1000;
    EXPECT_EQ(cmd_evaluate(o, out, err), kExitInfeasible);
  }
  {
    EnvGuard env("lots");
    EXPECT_THROW(resolve_max_scenarios(std::nullopt), std::invalid_argument);
  }
}

TEST(Commands, Bound) {
  std::ostringstream out, err;
  BoundCommandOptions o;
  o.spec = data("fig2.json");
  o.oracle = true;
  EXPECT_EQ(cmd_bound(o, out, err), kExitOk);
  EXPECT_NE(out.str().find("scenarios: 360"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("Q = 2"), std::string::npos);
  EXPECT_NE(out.str().find("agrees with"), std::string::npos);

  std::ostringstream one, err2;
  o.oracle = false;
  o.selector.sequence = std::vector<std::size_t>{0, 1, 2};
  o.selector.choices = std::vector<std::size_t>{0, 0, 0};
  cmd_bound(o, one, err2);
  EXPECT_NE(one.str().find("term = 5"), std::string::npos) << one.str();

  o.selector.sequence = std::vector<std::size_t>{0, 1, 4};
  EXPECT_EQ(cmd_bound(o, one, err2), kExitInputError);
}

TEST(Commands, ParetoCsv) {
  std::ostringstream out, err;
  ParetoOptions p;
  p.spec = data("fig5_hetero.json");
  EXPECT_EQ(cmd_pareto(p, out, err), kExitOk) << err.str();
  const std::string csv = out.str();
  EXPECT_EQ(lines(csv), 11U);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "lambda,C_s,C_r,Q,alpha_0,alpha_1,alpha_2,alpha_3,beta_0_0_1,beta_0_0_2,beta_0_0_3,beta_1_0_0,"
            "beta_1_0_3,beta_2_0_0,beta_2_0_1,beta_3_0_1,beta_3_0_2,pareto");
  EXPECT_NE(csv.find("\n0.001,111,3,1,"), std::string::npos) << csv;

  std::ostringstream single, err2;
  p.grid = "1:1:1";
  p.out = scratch("single.csv");
  p.export_lp = scratch("single.lp");
  EXPECT_EQ(cmd_pareto(p, single, err2), kExitOk) << err2.str();
  EXPECT_EQ(lines(slurp(*p.out)), 2U);
  EXPECT_NE(slurp(*p.export_lp).find("min:"), std::string::npos);
}

TEST(Commands, Flowgraph) {
  std::ostringstream out, err;
  FlowgraphOptions f;
  f.spec = data("fig2.json");
  f.selector.sequence = std::vector<std::size_t>{0, 1, 2};
  f.selector.choices = std::vector<std::size_t>{0, 0, 0};
  EXPECT_EQ(cmd_flowgraph(f, out, err), kExitOk);
  EXPECT_NE(out.str().find("digraph"), std::string::npos);

  std::ostringstream report, err2;
  f.dot = scratch("worked.dot");
  EXPECT_EQ(cmd_flowgraph(f, report, err2), kExitOk);
  EXPECT_NE(report.str().find("vertices: 18, edges: 21"), std::string::npos) << report.str();
  EXPECT_NE(report.str().find("max-flow = 4, scenario term = 5"), std::string::npos);
  EXPECT_EQ(slurp(*f.dot), out.str());
}

TEST(Commands, GridParsing) {
  EXPECT_EQ(parse_grid("1:1:1"), std::vector<double>{1});
  EXPECT_EQ(parse_grid("0.01:100:5").size(), 5U);
  EXPECT_THROW(parse_grid("1:2"), std::invalid_argument);
  EXPECT_THROW(parse_grid("a:b:c"), std::invalid_argument);
}

TEST(Commands, Executable) {
  EXPECT_EQ(run_cli("evaluate " + data("fig2.json").string()), kExitInfeasible);
  EXPECT_EQ(run_cli("pareto " + data("fig5_hetero.json").string() + " --grid 1:1:1"), kExitOk);
  EXPECT_EQ(run_cli("pareto " + data("fig5_homog.json").string() + " --mode homogeneous --k 2 --d 3"), kExitOk);
  EXPECT_EQ(run_cli("bound " + data("fig2.json").string() + " --max-scenarios 5"), kExitInputError);
  EXPECT_EQ(run_cli("flowgraph " + data("fig2.json").string() + " --sequence 0,1,2 --choices 0,0,0"), kExitOk);
  EXPECT_NE(run_cli("frobnicate"), kExitOk);
}
