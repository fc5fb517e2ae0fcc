#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(MILDSOL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mildsol_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const json& cfg) {
  const fs::path p = dir / "config.json";
  std::ofstream out(p);
  out << cfg.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate accepts a good config and rejects bad ones") {
  const fs::path dir = fresh_dir("validate");
  const fs::path good = write_config(
      dir, json{{"scenario", "contraction_check"}, {"alpha", 1.5}});
  CHECK(run_cli("validate " + good.string()) == 0);

  CHECK(run_cli("validate " + (dir / "missing.json").string()) == 1);

  const fs::path unknown_scenario =
      write_config(dir, json{{"scenario", "warp_drive"}});
  CHECK(run_cli("validate " + unknown_scenario.string()) == 1);

  const fs::path unknown_field = write_config(
      dir, json{{"scenario", "example1"}, {"betta", 0.1}});
  CHECK(run_cli("validate " + unknown_field.string()) == 1);

  const fs::path out_of_range = write_config(
      dir, json{{"scenario", "contraction_check"}, {"alpha", 2.7}});
  CHECK(run_cli("validate " + out_of_range.string()) == 1);
}

TEST_CASE("contraction_check run writes a complete report") {
  const fs::path dir = fresh_dir("contraction");
  const fs::path cfg = write_config(dir, json{{"scenario", "contraction_check"},
                                              {"CM", 1.0},
                                              {"alpha", 1.5},
                                              {"omega", -2.0},
                                              {"L_f", 0.1},
                                              {"k_l1", 1.0}});
  CHECK(run_cli("run " + cfg.string() + " --out " + dir.string()) == 0);
  const json rep = json::parse(slurp(dir / "report.json"));
  CHECK(rep.at("contraction").at("verdict") == "contractive");
  CHECK(std::abs(rep.at("contraction").at("Lambda").get<double>() - 0.3047) <
        1e-3);
  CHECK(rep.at("formula_consistency_rel").get<double>() <= 1e-12);
}

TEST_CASE("identity_check run passes its tolerance") {
  const fs::path dir = fresh_dir("identity");
  const fs::path cfg =
      write_config(dir, json{{"scenario", "identity_check"}});
  CHECK(run_cli("run " + cfg.string() + " --out " + dir.string()) == 0);
  const json rep = json::parse(slurp(dir / "report.json"));
  CHECK(rep.at("pass").get<bool>());
  CHECK(rep.at("max_rel_error").get<double>() <= 1e-6);
  CHECK(fs::exists(dir / "identity.csv"));
}

TEST_CASE("numerical failure exits with code 2") {
  const fs::path dir = fresh_dir("numfail");
  // an impossible tolerance forces the dual-route check to fail numerically
  const fs::path cfg = write_config(
      dir, json{{"scenario", "mlf_validate"}, {"tolerance", 1e-12}});
  CHECK(run_cli("run " + cfg.string() + " --out " + dir.string()) == 2);
  // the completed report records the failing measurement
  const json rep = json::parse(slurp(dir / "report.json"));
  CHECK_FALSE(rep.at("pass").get<bool>());
}

TEST_CASE("fixed seed reruns are byte identical") {
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  const json cfg{{"scenario", "theorem2_check"},
                 {"alpha", 1.5},
                 {"omega", -1.0},
                 {"W", {{"gamma0", 1.0}, {"gamma1", 1.0}, {"theta", 0.5}}},
                 {"h", "one_plus_t"},
                 {"seed", 31}};
  const fs::path cfg_a = write_config(dir_a, cfg);
  const fs::path cfg_b = write_config(dir_b, cfg);
  CHECK(run_cli("run " + cfg_a.string() + " --out " + dir_a.string()) == 0);
  CHECK(run_cli("run " + cfg_b.string() + " --out " + dir_b.string()) == 0);
  CHECK(slurp(dir_a / "report.json") == slurp(dir_b / "report.json"));
  CHECK(slurp(dir_a / "beta.csv") == slurp(dir_b / "beta.csv"));
}

TEST_CASE("config errors do not leave partial artifacts") {
  const fs::path dir = fresh_dir("partial");
  const fs::path cfg = write_config(
      dir, json{{"scenario", "example1"}, {"alpha", 0.5}});  // out of range
  CHECK(run_cli("run " + cfg.string() + " --out " + dir.string()) == 1);
  CHECK_FALSE(fs::exists(dir / "report.json"));
  CHECK_FALSE(fs::exists(dir / "solution.csv"));
}
