// Drives the command-line binary end to end; the binary path and the data
// directory come from the environment (set by the test harness).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string cli_path() {
  const char* p = std::getenv("TODAFORGE_CLI");
  REQUIRE(p != nullptr);
  return p;
}

std::string data_dir() {
  const char* p = std::getenv("TODAFORGE_DATA");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string out_file = std::filesystem::temp_directory_path() / "todaforge_cli_out.txt";
  const std::string cmd = (env_prefix.empty() ? "" : env_prefix + " ") + "'" + cli_path() + "' " +
                          args + " > '" + out_file + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

}  // namespace

TEST_CASE("check: valid scalar problem exits 0 with troyanov report") {
  const RunResult r = run("check '" + data_dir() + "/a1_triangle.json'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"troyanov\"") != std::string::npos);
  CHECK(r.output.find("\"verdict\": true") != std::string::npos);
}

TEST_CASE("check: generated non-existence family exits 1") {
  const RunResult r = run("check '" + data_dir() + "/d_generator_n2.json'");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("\"assumption_d\"") != std::string::npos);
  CHECK(r.output.find("\"lt_condition\"") != std::string::npos);
}

TEST_CASE("check: malformed json exits 2") {
  CHECK(run("check '" + data_dir() + "/malformed.json'").exit_code == 2);
  CHECK(run("check '" + data_dir() + "/bad_schema.json'").exit_code == 2);
  CHECK(run("check /nonexistent/file.json").exit_code == 2);
}

TEST_CASE("cartan: known matrices print with verification") {
  const RunResult r = run("cartan G2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"identity_ok\": true") != std::string::npos);
  CHECK(r.output.find("\"entry_bound_ok\": true") != std::string::npos);
  CHECK(run("cartan A3").exit_code == 0);
}

TEST_CASE("cartan: unknown family exits 2") {
  CHECK(run("cartan H2").exit_code == 2);
  CHECK(run("cartan E9").exit_code == 2);
}

TEST_CASE("pohozaev: scalar case lists the two roots with witnesses") {
  const RunResult r = run("pohozaev A1 --mu 1.0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("sigma_1,residual,witness_index") != std::string::npos);
  CHECK(r.output.find("\n0,0,0\n") != std::string::npos);
  CHECK(r.output.find("\n1,") != std::string::npos);
}

TEST_CASE("pohozaev: rank-2 sweep carries witnesses everywhere") {
  const RunResult r = run("pohozaev A2 --mu 1.0 1.0 --box 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("# A2 local-mass identity: s1^2 + s2^2 - s1 s2 = mu1 s1 + mu2 s2") !=
        std::string::npos);
}

TEST_CASE("solve: radial benchmark produces reports and passes contracts") {
  const std::filesystem::path out = std::filesystem::temp_directory_path() / "todaforge_solve";
  std::filesystem::create_directories(out);
  const RunResult r = run("solve '" + data_dir() + "/radial.json' --out-dir '" + out.string() + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"all_pass\": true") != std::string::npos);
  CHECK(std::filesystem::exists(out / "fields.csv"));
  CHECK(std::filesystem::exists(out / "report.json"));
  CHECK(std::filesystem::exists(out / "history.csv"));
  std::ifstream fields(out / "fields.csv");
  std::string header;
  std::getline(fields, header);
  CHECK(header == "x,y,u_1");
}

TEST_CASE("solve: missing solver block exits 2") {
  CHECK(run("solve '" + data_dir() + "/no_solver_block.json'").exit_code == 2);
}

TEST_CASE("identical reruns are byte-identical") {
  const RunResult a = run("check '" + data_dir() + "/d_generator_n2.json'");
  const RunResult b = run("check '" + data_dir() + "/d_generator_n2.json'");
  CHECK(a.output == b.output);
  const RunResult c = run("pohozaev G2 --mu 0.9 0.7 --box 4");
  const RunResult d = run("pohozaev G2 --mu 0.9 0.7 --box 4");
  CHECK(c.output == d.output);
}

TEST_CASE("worker count does not change the solve output") {
  const std::string out = std::filesystem::temp_directory_path() / "todaforge_threads";
  std::filesystem::create_directories(out);
  const std::string args =
      "solve '" + data_dir() + "/radial.json' --max-iters 40 --out-dir '" + out + "'";
  const RunResult one = run(args, "TODA_FORGE_THREADS=1");
  const RunResult four = run(args, "TODA_FORGE_THREADS=4");
  CHECK(one.exit_code == four.exit_code);
  CHECK(one.output == four.output);
}
