#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(HODGEKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content = "") {
  const auto path = (std::filesystem::temp_directory_path() / ("hodgekit_cli_" + name)).string();
  if (!content.empty()) std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("bl") {
  const auto r = run("bl --count 10");
  CHECK(r.status == 0);
  CHECK(r.out == "1\n1\n3\n19\n211\n3651\n90921\n3081513\n136407699\n7642177651\n");
  CHECK(run("bl --count 1").out == "1\n");
  CHECK(run("bl --count 0").status == 2);
  CHECK(run("bl").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("verify") {
  const auto ok = run("verify --identity thm-norm --n 3 --trials 2");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(run("verify --identity nope").status == 2);
  const auto skipped = run("verify --identity thm-norm --n 1 --p 2 --q 2");
  CHECK(skipped.status == 0);
  CHECK(skipped.out.find("SKIP") != std::string::npos);
  CHECK(run("verify --identity all --n 6").status == 2);
  CHECK(run("verify --identity all --n 2 --max-n 3").status == 2);
  CHECK(run("verify --identity all --trials 0").status == 2);
}

TEST_CASE("verify output is deterministic and well-formed JSON") {
  const std::string args = "verify --identity all --max-n 2 --trials 2 --seed 3 --format json";
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  REQUIRE(j.is_array());
  REQUIRE_FALSE(j.empty());
  for (const char* key : {"identity", "params", "lhs", "rhs", "residual", "pass", "seed"}) CHECK(j[0].contains(key));
  CHECK(run("verify --identity thm-norm --n 4 --p 2 --q 2").out.find("thm-norm-real") != std::string::npos);
}

TEST_CASE("tolerance from the environment") {
  CHECK(run("verify --identity thm-norm --n 2 --trials 1", "HODGEKIT_TOL=1e-30").status == 1);
  CHECK(run("verify --identity thm-norm --n 2 --trials 1 --tol 1e-9", "HODGEKIT_TOL=1e-30").status == 0);
  CHECK(run("verify --identity thm-norm --n 2 --trials 1", "HODGEKIT_TOL=abc").status == 2);
}

TEST_CASE("examples and curvature") {
  const std::string he = temp_file("he.json");
  CHECK(run("examples he-model --n 2 --r 3 --lambda 2 --out " + he).status == 0);
  const auto rep = run("curvature " + he + " --format json");
  CHECK(rep.status == 0);
  const auto j = nlohmann::json::parse(rep.out);
  CHECK(std::abs(j["kl_value"].get<double>()) <= 1e-12);
  CHECK(j["equality_case"] == true);

  const auto a = run("examples random-hermitian --n 2 --r 2 --seed 5");
  CHECK(a.status == 0);
  CHECK(a.out == run("examples random-hermitian --n 2 --r 2 --seed 5").out);
  CHECK(a.out != run("examples random-hermitian --n 2 --r 2 --seed 6").out);
  const std::string rh = temp_file("rh.json", a.out);
  const auto rr = run("curvature " + rh + " --format json");
  CHECK(rr.status == 0);
  CHECK(nlohmann::json::parse(rr.out)["norm_identity_residual"].get<double>() <= 1e-8);

  const std::string rhe = temp_file("rhe.json");
  CHECK(run("examples random-he --n 3 --r 2 --seed 1 --out " + rhe).status == 0);
  CHECK(run("curvature " + rhe + " --check kl").status == 0);

  const std::string bad = temp_file("bad.json", R"({"n": 1, "r": 1, "entries": [{"j":1,"k":1,"a":1,"b":1,"im":1}]})");
  CHECK(run("curvature " + bad).status == 2);
  const std::string broken = temp_file("broken.json", "{\"n\": 1,\n");
  CHECK(run("curvature " + broken).status == 2);
  CHECK(run("curvature /nonexistent.json").status == 2);
  for (const auto& p : {he, rh, rhe, bad, broken}) std::filesystem::remove(p);
}

TEST_CASE("constant curvature example reports the discrepancy") {
  const auto r = run("examples constant-curvature --n 3 --lambda 1");
  CHECK(r.status == 1);
  CHECK(r.out.find("expected=12") != std::string::npos);
  CHECK(r.out.find("discrepancy") != std::string::npos);
  CHECK(run("examples constant-curvature --n 3 --r 2").status == 2);
  CHECK(run("examples bogus").status == 2);
}
