// End-to-end checks of the installed command-line tool.  The binary
// path arrives in PICKSPACE_CLI (set by the test harness); without it
// these tests report a warning and pass vacuously.

#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& cmd) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const char* cli_path() { return std::getenv("PICKSPACE_CLI"); }

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/pickspace_cli_test_" + name;
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("command-line tool") {
  const char* cli = cli_path();
  if (!cli) {
    WARN("PICKSPACE_CLI not set; skipping CLI tests");
    return;
  }
  const std::string exe = cli;

  SECTION("gen is byte-identical across runs and across output reuse") {
    RunResult a = run(exe + " gen --geodesic --n 4 --seed 7");
    RunResult b = run(exe + " gen --geodesic --n 4 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    RunResult c = run(exe + " gen --geodesic --n 4 --seed 8");
    CHECK(a.out != c.out);
  }

  SECTION("gen --geodesic classifies all-true, --generic all-false") {
    const std::string geo =
        write_temp("geo.json", run(exe + " gen --geodesic --n 4 --seed 5").out);
    RunResult r = run(exe + " classify --json " + geo);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("is_model_space") == true);
    CHECK(j.at("consistent") == true);

    const std::string gen =
        write_temp("gen.json", run(exe + " gen --generic --n 4 --seed 5").out);
    auto j2 = nlohmann::json::parse(run(exe + " classify --json " + gen).out);
    CHECK(j2.at("is_model_space") == false);
    CHECK(j2.at("consistent") == true);
  }

  SECTION("delta emits the pseudohyperbolic matrix") {
    const std::string pair = write_temp(
        "pair.json", R"({"m":1,"points":[[[0,0]],[[0.5,0]]]})");
    auto j = nlohmann::json::parse(run(exe + " delta --json " + pair).out);
    CHECK(j.at("kind") == "delta");
    CHECK(j.at("delta")[0][1].get<double>() == Approx(0.5));
    CHECK(j.at("delta")[0][0].get<double>() == 0.0);
  }

  SECTION("every machine report re-parses with its kind") {
    const std::string pair = write_temp(
        "pair2.json", R"({"m":1,"points":[[[0,0]],[[0.5,0]]]})");
    const std::pair<std::string, std::string> cases[] = {
        {"classify", "classification"}, {"delta", "delta"},
        {"dual", "gram"},               {"orthogonalize", "orthogonality"},
        {"extremal", "extremal"},       {"geodesic", "geodesic"},
        {"realize", "realization"},     {"probe-dual", "dual_membership"},
    };
    for (const auto& [cmd, kind] : cases) {
      RunResult r = run(exe + " " + cmd + " --json " + pair);
      CHECK(r.exit_code == 0);
      CHECK(nlohmann::json::parse(r.out).at("kind") == kind);
    }
    RunResult r = run(exe + " congruent --json " + pair + " " + pair);
    CHECK(nlohmann::json::parse(r.out).at("congruent") == true);
  }

  SECTION("exit codes: 2 for bad input, 3 for numerical failure") {
    const std::string bad = write_temp("bad.json", "{\"m\": not json");
    CHECK(run(exe + " classify " + bad).exit_code == 2);

    const std::string sing = write_temp(
        "sing.json", R"({"n":2,"entries":[[[1,0],[1,0]],[[1,0],[1,0]]]})");
    CHECK(run(exe + " dual " + sing).exit_code == 3);

    const std::string degen = write_temp(
        "degen.json", R"({"n":2,"entries":[[[1,0],[0,0]],[[0,0],[1,0]]]})");
    CHECK(run(exe + " classify " + degen).exit_code == 3);

    CHECK(run(exe + " nonsense").exit_code == 2);
  }

  SECTION("tolerance flags beat the environment variable") {
    const std::string pair = write_temp(
        "pair3.json", R"({"m":1,"points":[[[0,0]],[[0.5,0]]]})");
    auto strict = nlohmann::json::parse(
        run("PICKSPACE_TOL=1e-2 " + exe + " classify --json --tol-match 1e-9 " +
            pair)
            .out);
    CHECK(strict.at("criteria").at("model").at("tolerance").get<double>() ==
          Approx(1e-9));
  }
}
