#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "hodgekit/tensor_io.hpp"

using namespace hodgekit;

TEST_CASE("round trip through JSON") {
  const CurvatureTensor R = random_hermitian(2, 3, 4);
  const CurvatureTensor back = parse_tensor(tensor_to_json(R).dump());
  CHECK((back - R).max_abs() == 0.0);
  const auto path = std::filesystem::temp_directory_path() / "hodgekit_io_roundtrip.json";
  write_tensor_file(R, path.string());
  CHECK((read_tensor_file(path.string()) - R).max_abs() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("serialisation is canonical") {
  const auto a = tensor_to_json(he_model(2, 2, 1.0)).dump();
  CHECK(a == tensor_to_json(he_model(2, 2, 1.0)).dump());
  CHECK(a.find("\"n\":2") != std::string::npos);
  CHECK(tensor_to_json(CurvatureTensor(1, 1))["entries"].empty());
}

TEST_CASE("hermitian closure mirrors entries") {
  const std::string text = R"({"n": 2, "r": 2, "hermitian_closure": true,
    "entries": [{"j": 1, "k": 2, "a": 1, "b": 2, "re": 1.0, "im": 2.0},
                {"j": 1, "k": 1, "a": 2, "b": 2, "re": 0.5}]})";
  const CurvatureTensor R = parse_tensor(text);
  CHECK(R(0, 1, 0, 1) == Complex(1, 2));
  CHECK(R(1, 0, 1, 0) == Complex(1, -2));
  CHECK(R(0, 0, 1, 1) == Complex(0.5, 0));
  CHECK(R.hermitian_defect() == 0.0);
}

TEST_CASE("diagnostics") {
  const auto message = [](const std::string& text) -> std::string {
    try {
      parse_tensor(text);
    } catch (const TensorFormatError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message("{\"n\": 1,\n \"r\": }").find("line 2") != std::string::npos);
  CHECK(message(R"({"r": 1, "entries": []})").find("\"n\"") != std::string::npos);
  CHECK(message(R"({"n": 1, "r": 1})").find("entries") != std::string::npos);
  CHECK(message(R"({"n": 1, "r": 1, "entries": [{"j": 2, "k": 1, "a": 1, "b": 1}]})").find("entries[0].j") !=
        std::string::npos);
  CHECK(message(R"({"n": 1, "r": 1, "entries": [{"j": 1, "k": 1, "a": 1}]})").find("\"b\"") != std::string::npos);
  CHECK(message(R"({"n": 1, "r": 1, "entries": [{"j": 1, "k": 1, "a": 1, "b": 1, "re": "x"}]})").find("re") !=
        std::string::npos);
  CHECK(message(R"({"n": 1, "r": 1, "entries": [{"j": 1, "k": 1, "a": 1, "b": 1},
                                                {"j": 1, "k": 1, "a": 1, "b": 1}]})")
            .find("duplicate") != std::string::npos);
  CHECK(message(R"({"n": 1, "r": 1, "entries": [{"j": 1, "k": 1, "a": 1, "b": 1, "im": 1}]})").find("Hermitian") !=
        std::string::npos);
  CHECK(message(R"({"n": 1, "r": 1, "hermitian_closure": true,
                    "entries": [{"j": 1, "k": 1, "a": 1, "b": 1, "im": 1}]})")
            .find("Hermitian") != std::string::npos);
  CHECK(message(R"({"n": 2, "r": 1, "entries": [{"j": 1, "k": 2, "a": 1, "b": 1, "re": 1}]})").find("Hermitian") !=
        std::string::npos);
  CHECK(message("[1, 2]").find("object") != std::string::npos);
  CHECK_THROWS_AS(read_tensor_file("/nonexistent/path.json"), TensorFormatError);
}

TEST_CASE("report JSON schema") {
  IdentityReport r;
  r.identity = "thm-norm";
  r.params = {{"n", 3}, {"p", 1}, {"q", 2}};
  r.lhs = 1.5;
  r.rhs = 1.5;
  r.pass = true;
  r.seed = 7;
  const auto j = report_to_json(r);
  for (const char* key : {"identity", "params", "lhs", "rhs", "residual", "pass", "seed"}) CHECK(j.contains(key));
  CHECK(j["params"]["q"] == 2);
  const auto c = curvature_report_to_json(analyze(he_model(2, 2, 1.0)));
  for (const char* key : {"c1", "c2", "he_constant", "norm_identity_residual", "kl_value", "cs_margins",
                          "equality_case", "checks"})
    CHECK(c.contains(key));
}
