#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "blowup/cli.hpp"

using namespace blowup;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "blowup_profiles");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "blowup_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
  CHECK(cli::format_double(1.0) == "1");
  CHECK(cli::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(cli::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("sweep output") {
  const Run r = run({"sweep", "--steps", "2"});
  REQUIRE(r.code == cli::kOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "h_inv,sigma,log_sigma,asym_log_sigma,f_residual");
  CHECK(r.out.find('\r') == std::string::npos);
  // Byte-identical across runs and thread counts.
  CHECK(run({"sweep", "--steps", "7", "--threads", "1"}).out == run({"sweep", "--steps", "7", "--threads", "4"}).out);
  CHECK(run({"sweep", "--steps", "7"}).out == run({"sweep", "--steps", "7"}).out);
}

TEST_CASE("json lines") {
  const Run r = run({"solve-sigma", "--h", "1", "--format", "json-lines"});
  REQUIRE(r.code == cli::kOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 1);
  const auto j = nlohmann::json::parse(ls[0]);
  CHECK(j["sigma"].get<double>() == doctest::Approx(0.07223260816095331).epsilon(1e-11));
  CHECK(j["h"].get<double>() == 1.0);
}

TEST_CASE("solve-h") {
  const Run r = run({"solve-h", "--p", "5"});
  REQUIRE(r.code == cli::kOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "p,h,sigma,sigma_c,residual,iterations");
  CHECK(ls[1].rfind("5,2.71591257988", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
  CHECK(run({"solve-sigma", "--h", "-1"}).code == cli::kUsage);
  CHECK(run({"solve-sigma", "--h", "1", "--format", "xml"}).code == cli::kUsage);
  CHECK(run({"solve-h", "--p", "2.5"}).code == cli::kUsage);
  CHECK(run({"profile"}).code == cli::kUsage);
  CHECK(run({"profile", "--p", "5", "--h", "2"}).code == cli::kUsage);
  CHECK(run({"verify", "--group", "nope"}).code == cli::kUsage);
  CHECK(run({"solve-sigma", "--h", "1", "--out", "/nonexistent_dir/x.csv"}).code == cli::kIoError);
  const Run r = run({"solve-sigma", "--h", "1e-300"});
  CHECK(r.code == cli::kSolverFailure);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("profile output and summary") {
  const auto path = scratch("p5.csv");
  std::filesystem::remove(path.string() + ".jsonl");
  const Run r = run({"profile", "--p", "5", "--samples", "20", "--out", path.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.empty());
  const auto ls = lines(slurp(path));
  REQUIRE(ls.size() == 41);
  CHECK(ls[0] == "z,phi_re,phi_im,eta_re,eta_im,abs_eta");
  const auto meta = lines(slurp(path.string() + ".jsonl"));
  REQUIRE(meta.size() == 1);
  const auto j = nlohmann::json::parse(meta[0]);
  CHECK(j["p"].get<double>() == 5.0);
  CHECK(j["sigma"].get<double>() == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(j["jump_residual"].get<double>() <= 1e-8);
  CHECK(std::abs(j["energy"].get<double>()) <= 10.0 * j["energy_tail"].get<double>());

  // Stdout output has no sidecar unless one is named.
  const Run s = run({"profile", "--h", "1", "--samples", "4"});
  REQUIRE(s.code == cli::kOk);
  CHECK(lines(s.out).size() == 9);
}

TEST_CASE("verify") {
  const Run fast = run({"verify"});
  CHECK(fast.code == cli::kOk);
  CHECK(lines(fast.out).front() == "group,pass,metric,detail");
  CHECK(lines(fast.out).size() == cli::verify_groups("fast").size() + 1);

  const Run bad = run({"verify", "--group", "jump", "--tamper-sigma", "1e-3"});
  CHECK(bad.code == cli::kVerifyFailure);
  CHECK(bad.out.find("jump,false") != std::string::npos);
}

TEST_CASE("asymptotics table") {
  const Run r = run({"asymptotics", "--alpha", "0.5", "--steps", "2", "--h-inv-min", "10", "--h-inv-max", "20"});
  REQUIRE(r.code == cli::kOk);
  CHECK(lines(r.out).size() == 3);
  CHECK(run({"asymptotics", "--alpha", "1.0"}).code == cli::kUsage);
}

#ifdef BLOWUP_CLI_PATH
TEST_CASE("installed binary") {
  const auto path = scratch("sweep.csv");
  const std::string cmd = std::string(BLOWUP_CLI_PATH) + " sweep --steps 3 --out " + path.string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(path) == run({"sweep", "--steps", "3"}).out);
  const std::string bad = std::string(BLOWUP_CLI_PATH) + " solve-sigma --h -1 2>/dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == cli::kUsage);
}
#endif
