#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "valuta/cli.hpp"
#include "valuta/json_io.hpp"
#include "valuta/suites.hpp"

using namespace valuta;
using namespace valuta::testing;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_file(const std::string& name) { return std::string(VALUTA_TEST_DATA) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("valuta_cli_" + name);
}

}  // namespace

TEST_CASE("moment command") {
  const auto r1 = call({"moment", data_file("triangle.json"), "--rank", "1"});
  REQUIRE(r1.code == cli::kPass);
  CHECK(tensor_from_json(Json::parse(r1.out)) == tensor(2, 1, {{{1, 0}, "1/6"}, {{0, 1}, "1/6"}}));

  const auto r0 = call({"moment", data_file("triangle.json"), "--rank", "0"});
  CHECK(tensor_from_json(Json::parse(r0.out)) == SymTensorQ::scalar(2, q("1/2")));

  const auto fl = call({"moment", data_file("triangle.json"), "--rank", "2", "--mode", "float"});
  REQUIRE(fl.code == cli::kPass);
  CHECK(Json::parse(fl.out)["coeffs"]["1,1"].get<double>() == doctest::Approx(1.0 / 24));

  const auto path = scratch("moment.json");
  CHECK(call({"moment", data_file("triangle.json"), "--rank", "1", "--out", path.string()}).out.empty());
  std::ifstream written(path);
  std::stringstream buf;
  buf << written.rdbuf();
  CHECK(buf.str() == r1.out);
  std::filesystem::remove(path);
}

TEST_CASE("moment command errors") {
  const auto geometry = call({"moment", data_file("untriangulated.json"), "--rank", "1"});
  CHECK(geometry.code == cli::kGeometryError);
  CHECK(geometry.err.find("triangulat") != std::string::npos);
  CHECK(call({"moment", data_file("missing.json"), "--rank", "1"}).code == cli::kUsageError);
  CHECK(call({"moment", data_file("triangle.json")}).code == cli::kUsageError);
  CHECK(call({"moment", data_file("triangle.json"), "--rank", "-1"}).code == cli::kUsageError);
  CHECK(call({"moment", data_file("triangle.json"), "--rank", "1", "--mode", "fast"}).code == cli::kUsageError);

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{\"dim\": 2, \"vertices\": [[\"0\", \"x\"]]}";
  CHECK(call({"moment", bad.string(), "--rank", "1"}).code == cli::kUsageError);
  std::ofstream(bad) << "not json";
  CHECK(call({"moment", bad.string(), "--rank", "1"}).code == cli::kUsageError);
  std::filesystem::remove(bad);
}

TEST_CASE("verify command usage") {
  CHECK(call({}).code == cli::kUsageError);
  CHECK(call({"verify"}).code == cli::kUsageError);
  CHECK(call({"verify", "bogus"}).code == cli::kUsageError);
  CHECK(call({"verify", "detid", "--m", "1"}).code == cli::kUsageError);
  CHECK(call({"verify", "detid", "--rank", "-2"}).code == cli::kUsageError);
  CHECK(call({"verify", "transfer"}).code == cli::kUsageError);
  CHECK(call({"verify", "detid", "--frobnicate"}).code == cli::kUsageError);
  CHECK(call({"--help"}).code == cli::kPass);
}

TEST_CASE("every suite passes and its injected fault flips the exit code") {
  for (const auto& suite : suite_names()) {
    for (const std::string mode : {"exact", "float"}) {
      if (suite == "transfer" && mode == "exact") continue;
      CAPTURE(suite);
      CAPTURE(mode);
      std::vector<std::string> args{"verify", suite, "--m", "2", "--rank", "1", "--mode", mode, "--samples", "3"};
      const auto ok = call(args);
      CHECK(ok.code == cli::kPass);
      const Json report = Json::parse(ok.out);
      CHECK(report["check"] == suite);
      CHECK(report["pass"] == true);

      args.push_back("--inject-fault");
      const auto bad = call(args);
      CHECK(bad.code == cli::kVerificationFailed);
      const Json failed = Json::parse(bad.out);
      CHECK(failed["pass"] == false);
      CHECK_FALSE(failed["witnesses"].empty());
    }
  }
}

TEST_CASE("covariance fault at rank 0") {
  CHECK(call({"verify", "covariance", "--rank", "0", "--samples", "2"}).code == cli::kPass);
  CHECK(call({"verify", "covariance", "--rank", "0", "--samples", "2", "--inject-fault"}).code ==
        cli::kVerificationFailed);
}

TEST_CASE("reports are deterministic") {
  for (const std::string suite : {"covariance", "equivariance", "klain", "transfer"}) {
    const std::vector<std::string> args{"verify", suite, "--seed", "99", "--mode", "float", "--samples", "4"};
    CHECK(call(args).out == call(args).out);
  }
  const std::vector<std::string> exact{"verify", "detid", "--m", "3", "--seed", "7"};
  CHECK(call(exact).out == call(exact).out);
  CHECK(Json::parse(call(exact).out)["max_residual"] == "0");
}

TEST_CASE("invariants command") {
  const auto diag = call({"invariants", "--kind", "sl_m_R_diag", "--m", "2", "--rank", "2", "--emit-basis"});
  REQUIRE(diag.code == cli::kPass);
  const Json j = Json::parse(diag.out);
  CHECK(j["dim"] == 1);
  REQUIRE(j["basis"].size() == 1);
  const SymTensorQ t = tensor_from_json(j["basis"][0]);
  // Proportional to x1 y2 - x2 y1.
  const SymTensorQ det = tensor(4, 2, {{{1, 0, 0, 1}, "1"}, {{0, 1, 1, 0}, "-1"}});
  CHECK((t == det || t == -det));

  const Json cx = Json::parse(call({"invariants", "--kind", "sl_m_C", "--m", "2", "--rank", "3"}).out);
  CHECK(cx["dim"] == 0);
  CHECK_FALSE(cx.contains("basis"));
  CHECK(Json::parse(call({"invariants", "--kind", "sl_m_R_diag", "--m", "3", "--rank", "2"}).out)["dim"] == 0);

  CHECK(call({"invariants", "--kind", "so_m", "--m", "2", "--rank", "2"}).code == cli::kUsageError);
  CHECK(call({"invariants", "--kind", "sl_m_C", "--m", "1", "--rank", "2"}).code == cli::kUsageError);
}

TEST_CASE("weights command") {
  const Json w = Json::parse(call({"weights", "--m", "2", "--j", "1", "--rank", "3"}).out);
  CHECK(w["s"] == 1);
  CHECK(w["count"] == 6);
  for (const auto& theta : w["weights"]) {
    CHECK(theta[0].get<int>() + theta[2].get<int>() == 2);
    CHECK(theta[1].get<int>() + theta[3].get<int>() == 1);
  }
  const Json empty = Json::parse(call({"weights", "--m", "3", "--j", "4", "--rank", "3"}).out);
  CHECK(empty["s"].is_null());
  CHECK(empty["weights"].empty());
  CHECK(call({"weights", "--m", "2", "--j", "2", "--rank", "3"}).code == cli::kUsageError);
  CHECK(call({"weights", "--m", "2", "--j", "4", "--rank", "3"}).code == cli::kUsageError);
}
