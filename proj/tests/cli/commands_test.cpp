#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sle/cli/commands.hpp"

using namespace sle::cli;
using Json = nlohmann::json;

namespace {

RunConfig config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  return cfg;
}

struct MainResult {
  int code;
  std::string out;
  std::string err;
};

MainResult run(std::vector<const char*> args) {
  args.insert(args.begin(), "sle");
  std::ostringstream out, err;
  int code = run_main(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("derive-constants") {
  auto r = run_command(config("derive-constants"));
  CHECK(r.exit_code == 0);
  auto j = Json::parse(r.report);
  CHECK(j["kappa"] == "8/3");
  CHECK(j["alpha"] == "5/8");
  CHECK_FALSE(j.contains("defects"));

  auto cfg = config("derive-constants");
  cfg.emit_defects = true;
  r = run_command(cfg);
  CHECK(r.report.find("a*(3*k-8)/x1^4") != std::string::npos);
  j = Json::parse(r.report);
  CHECK(j["defects"][0]["status"] == "defect");
  CHECK(j["defects"][0]["level"] == 1);

  cfg.emit_defects = false;
  cfg.format = Format::Csv;
  r = run_command(cfg);
  CHECK(r.report == "kappa,alpha\n8/3,5/8\n");
}

TEST_CASE("verify defaults are all exact") {
  auto r = run_command(config("verify"));
  CHECK(r.exit_code == 0);
  auto j = Json::parse(r.report);
  CHECK(j["status"] == "pass");
  CHECK(j["params"]["tower_height"] == 4);
  for (const auto& c : j["checks"]) {
    CHECK(c["status"] == "exact-zero");
    CHECK(c["defect"] == "0");
  }
}

TEST_CASE("verify with a wrong alpha names the failing checks") {
  auto cfg = config("verify");
  cfg.alpha = "1/2";
  cfg.tower_height = 2;
  auto r = run_command(cfg);
  CHECK(r.exit_code == 1);
  CHECK(r.diagnostics.find("failed: evolution (level 2)") != std::string::npos);
  CHECK(r.diagnostics.find("failed: degeneracy (level 2)") != std::string::npos);
  auto j = Json::parse(r.report);
  CHECK(j["status"] == "fail");
  bool level1_clean = true;
  for (const auto& c : j["checks"]) {
    if (c["level"] == 1 && c["check"] == "evolution") level1_clean = c["status"] == "exact-zero";
  }
  CHECK(level1_clean);
}

TEST_CASE("verify subset at tower height 2") {
  auto cfg = config("verify");
  cfg.tower_height = 2;
  cfg.format = Format::Csv;
  auto r = run_command(cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.report.rfind("level,check,status,defect\n", 0) == 0);
  CHECK(r.report.find(",defect,") == std::string::npos);
}

TEST_CASE("simulate emits a stable trace csv") {
  auto cfg = config("simulate");
  cfg.seed = 1;
  cfg.n_steps = 3000;
  auto a = run_command(cfg);
  auto b = run_command(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.report == b.report);
  CHECK(a.report.rfind("t,re,im\n", 0) == 0);
  cfg.seed = 2;
  CHECK(run_command(cfg).report != a.report);
}

TEST_CASE("restriction report fields") {
  auto cfg = config("restriction");
  cfg.n_paths = 100;
  cfg.n_steps = 4000;
  auto r = run_command(cfg);
  auto j = Json::parse(r.report);
  for (const char* key : {"experiment", "params", "estimate", "stderr", "analytic", "n_paths", "seed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["seed"] == kDefaultSeed);
  CHECK(j["params"]["hull"] == "slit:1:0.5");
  CHECK(j["analytic"].get<double>() == doctest::Approx(0.93264).epsilon(1e-5));
}

TEST_CASE("invalid hulls are rejected with an error report") {
  auto cfg = config("restriction");
  cfg.hull = "disk:1:2";
  auto r = run_command(cfg);
  CHECK(r.exit_code == 2);
  auto j = Json::parse(r.report);
  CHECK(j["status"] == "error");
  CHECK(j["error"].get<std::string>().find("r < x") != std::string::npos);
  cfg.hull = "slit:-1:1";
  CHECK(run_command(cfg).exit_code == 2);
}

TEST_CASE("bad parameters and unknown commands") {
  auto cfg = config("verify");
  cfg.alpha = "five";
  CHECK(run_command(cfg).exit_code == 2);
  cfg = config("exponent");
  cfg.kappa = "8";
  CHECK(run_command(cfg).exit_code == 2);
  cfg = config("b1-limit");
  cfg.kappa = "6";
  CHECK(run_command(cfg).exit_code == 2);
  cfg = config("restriction");
  cfg.n_paths = 0;
  CHECK(run_command(cfg).exit_code == 2);
  CHECK(run_command(config("dance")).exit_code == 2);
}

TEST_CASE("exponent and b1-limit csv tables") {
  auto cfg = config("exponent");
  cfg.n_paths = 100;
  cfg.n_steps = 2000;
  cfg.eps_grid = {0.2, 0.4, 0.8};
  cfg.format = Format::Csv;
  auto r = run_command(cfg);
  CHECK(r.report.rfind("eps,p_hat,stderr\n", 0) == 0);
  cfg.command = "b1-limit";
  r = run_command(cfg);
  CHECK(r.report.rfind("eps,p_hat,stderr,", 0) == 0);
}

TEST_CASE("argument parsing") {
  auto r = run({"derive-constants", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "kappa,alpha\n8/3,5/8\n");
  r = run({"verify", "--tower-height", "2", "--alpha", "1/2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("failed: evolution (level 2)") != std::string::npos);
  r = run({"restriction", "--hull", "disk:1:1"});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["status"] == "error");
  r = run({"simulate", "--format", "xml"});
  CHECK(r.code != 0);
  r = run({});
  CHECK(r.code != 0);

  auto path = std::filesystem::temp_directory_path() / "sle_cli_test_report.json";
  std::string arg = path.string();
  r = run({"derive-constants", "--output", arg.c_str()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(Json::parse(text.str())["alpha"] == "5/8");
  std::filesystem::remove(path);
}

TEST_CASE("reports do not depend on the worker count") {
  for (const char* command : {"restriction", "exponent", "b1-limit"}) {
    auto cfg = config(command);
    cfg.n_paths = 40;
    cfg.n_steps = 2000;
    cfg.threads = 1;
    auto one = run_command(cfg);
    cfg.threads = 4;
    auto four = run_command(cfg);
    CHECK(one.report == four.report);
  }
}
