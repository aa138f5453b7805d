#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef ZOROFA_CLI_PATH
#error "ZOROFA_CLI_PATH must point at the command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(ZOROFA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / tag) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits cleanly, bad invocations exit with a usage error") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("sparse-bench --help") == 0);
  CHECK(run_cli("") == 2);                       // a subcommand is required
  CHECK(run_cli("sparse-bench --no-such-flag") == 2);
  CHECK(run_cli("single-run") == 2);             // --problem is required
  CHECK(run_cli("single-run --problem rosex --algorithm nope") == 2);
}

TEST_CASE("unknown problem names are configuration errors") {
  TempDir dir("zorofa_cli_badproblem");
  CHECK(run_cli("grad-profile --problem not_a_problem --n 10 --points 2 --out " + dir.str()) == 2);
}

TEST_CASE("grad-profile writes rank statistics and the resolved configuration") {
  TempDir dir("zorofa_cli_gradprof");
  int n = 10;
  CHECK(run_cli("grad-profile --problem max_s_squared --n 10 --s 3 --points 4 --seed 2 --out " +
                dir.str()) == 0);
  CHECK(fs::exists(dir.path / "resolved-config.ini"));
  std::string csv = slurp(dir.path / "compressibility.csv");
  CHECK(csv.rfind("problem,rank,mean,min,max\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + static_cast<std::size_t>(n));

  std::string ini = slurp(dir.path / "resolved-config.ini");
  CHECK(ini.find("points=4") != std::string::npos);
  CHECK(ini.find("problem=") != std::string::npos);
}

TEST_CASE("grad-profile can append a trajectory of the adaptive run") {
  TempDir dir("zorofa_cli_gradprofrun");
  CHECK(run_cli("grad-profile --problem rosex --n 20 --points 2 --with-run --budget-mult 10 "
                "--out " + dir.str()) == 0);
  CHECK(fs::exists(dir.path / "compressibility.csv"));
  std::string traj = slurp(dir.path / "trajectories.csv");
  CHECK(traj.rfind("problem,algorithm,seed,n,", 0) == 0);
  CHECK(count_lines(traj) > 1);
}

TEST_CASE("mgh-bench emits trajectories and data profiles") {
  TempDir dir("zorofa_cli_mgh");
  CHECK(run_cli("mgh-bench --problems rosex broyden_tridiag --n 20 --scales 0 --tau 0.1 0.01 "
                "--seeds 1 --budget-mult 20 --jobs 1 --out " + dir.str()) == 0);
  std::string traj = slurp(dir.path / "trajectories.csv");
  CHECK(traj.find("rosex_n20,") != std::string::npos);
  CHECK(traj.find("broyden_tridiag_n20,") != std::string::npos);
  CHECK(traj.find("_x10") == std::string::npos);  // scale 0 only
  std::string prof = slurp(dir.path / "data_profiles.csv");
  CHECK(prof.rfind("tau,algorithm,alpha,fraction\n", 0) == 0);
  CHECK(prof.find("zoro_fa") != std::string::npos);
}

TEST_CASE("single-run writes one trajectory") {
  TempDir dir("zorofa_cli_single");
  CHECK(run_cli("single-run --problem rosex --algorithm fd --n 10 --budget-mult 5 --step 0.001 "
                "--out " + dir.str()) == 0);
  std::string traj = slurp(dir.path / "trajectories.csv");
  CHECK(traj.find("rosex,fd,1,10,") != std::string::npos);
}

TEST_CASE("the resolved configuration reproduces the run byte for byte") {
  TempDir a("zorofa_cli_cfg_a"), b("zorofa_cli_cfg_b");
  std::string flags = "sparse-bench --n 64 --s 4 --seeds 1 2 --budget-mult 10 "
                      "--fa-s0 3 --zoro-s 4 --jobs 1 --out ";
  CHECK(run_cli(flags + a.str()) == 0);
  CHECK(run_cli("sparse-bench --config " + (a.path / "resolved-config.ini").string() +
                " --out " + b.str()) == 0);
  CHECK(slurp(a.path / "trajectories.csv") == slurp(b.path / "trajectories.csv"));
  CHECK(count_lines(slurp(a.path / "trajectories.csv")) > 1);
}

TEST_CASE("the output directory can come from the environment") {
  TempDir dir("zorofa_cli_envout");
  std::string cmd = "ZOROFA_OUT=" + dir.str() + " " + std::string(ZOROFA_CLI_PATH) +
                    " grad-profile --problem trig --n 8 --points 2 >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir.path / "compressibility.csv"));
}

}  // TEST_SUITE
