#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polycap/cli.hpp"
#include "polycap/errors.hpp"
#include "polycap/io.hpp"
#include "polycap/parallel.hpp"

using namespace polycap;
using Json = nlohmann::ordered_json;

namespace {

std::string data(const std::string& name) { return std::string(POLYCAP_TEST_DATA) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "polycap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json report(const Outcome& o) { return Json::parse(o.out); }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("polycap_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(CliTest, BoundJ3) {
  const auto o = invoke({"bound", "--input", data("j3.json"), "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = report(o);
  EXPECT_EQ(r["schema"], "polycap/1");
  const Json& res = r["result"];
  EXPECT_NEAR(std::stod(res["lower_bound_vdw"].get<std::string>()), 2.0 / 9.0, 1e-12);
  EXPECT_EQ(res["exact_value"]["exact"], "2/9");
  EXPECT_TRUE(res["vdw_equality"].get<bool>());
  EXPECT_TRUE(res["provenance"].contains("lower_bound_vdw"));
  EXPECT_FALSE(r.contains("meta"));
}

TEST(CliTest, ScaleOnes2x2) {
  const auto o = invoke({"scale", "--input", data("ones2x2.json"), "--no-meta", "--mode", "float"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json res = report(o)["result"];
  EXPECT_NEAR(res["capacity"].get<double>(), 4.0, 1e-12);
  for (const auto& row : res["scaled_matrix"]) {
    for (const auto& v : row) EXPECT_NEAR(v.get<double>(), 0.5, 1e-12);
  }
}

TEST(CliTest, ExactModeEmitsDecimalStrings) {
  const auto o = invoke({"capacity", "--input", data("sparse_xy.json"), "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json res = report(o)["result"];
  ASSERT_TRUE(res["value"].is_string());
  EXPECT_NEAR(std::stod(res["value"].get<std::string>()), 5.0, 1e-9);
}

TEST(CliTest, PermanentAndMixedDiscriminant) {
  auto o = invoke({"permanent", "--input", data("j3.json"), "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(report(o)["result"]["permanent"]["exact"], "2/9");
  // D(A, B) for A = [[2,1],[1,2]], B = diag(1,3): 2*3 + 2*1 = 8.
  o = invoke({"mixed-disc", "--input", data("psd_pair.json"), "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(report(o)["result"]["mixed_discriminant"]["exact"], "8");
}

TEST(CliTest, ApproxReportsGuaranteeAndCalls) {
  const auto o = invoke({"approx", "--input", data("j3.json"), "--k", "1", "--tol", "1e-9", "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json res = report(o)["result"];
  EXPECT_NEAR(std::stod(res["guarantee_factor"].get<std::string>()), 2.0, 1e-12);
  EXPECT_GT(res["oracle_calls"].get<long>(), 0);
  const double ratio = std::stod(res["ratio"].get<std::string>());
  EXPECT_GE(ratio, 1.0 - 1e-7);
  EXPECT_LE(ratio, 2.0 * (1.0 + 1e-7));
}

TEST(CliTest, CheckHyperbolicFlagsSumOfSquares) {
  auto o = invoke({"check-hyperbolic", "--input", data("sum_of_squares.json"), "--no-meta", "--samples", "200"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_FALSE(report(o)["result"]["passed"].get<bool>());
  o = invoke({"check-hyperbolic", "--input", data("j3.json"), "--no-meta", "--samples", "200"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json res = report(o)["result"];
  EXPECT_TRUE(res["passed"].get<bool>());
  ASSERT_EQ(res["diagnostics"].size(), 2u);
  EXPECT_EQ(res["diagnostics"][0]["check"], "real-rootedness");
}

TEST(CliTest, MalformedJsonReportsLineAndColumn) {
  const auto o = invoke({"capacity", "--input", data("malformed.json")});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("line 2"), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("column"), std::string::npos) << o.err;
}

TEST(CliTest, BadFieldReportsPath) {
  const auto o = invoke({"capacity", "--input", data("bad_coef.json")});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("terms[2].coef"), std::string::npos) << o.err;
}

TEST(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(invoke({"capacity", "--input", data("j3.json"), "--tol", "0"}).code, 2);
  EXPECT_EQ(invoke({"approx", "--input", data("j3.json"), "--k", "3"}).code, 2);
  EXPECT_EQ(invoke({"capacity"}).code, 2);
  EXPECT_EQ(invoke({"capacity", "--input", data("missing.json")}).code, 2);
  EXPECT_EQ(invoke({"no-such-command"}).code, 2);
  EXPECT_EQ(invoke({"bound", "--input", data("j3.json"), "--ordering", "0,0,1"}).code, 2);
  EXPECT_EQ(invoke({"mixed-disc", "--input", data("j3.json")}).code, 2);
  EXPECT_EQ(invoke({"suite", "--name", "other"}).code, 2);
}

TEST(CliTest, ResourceCapsExitThree) {
  std::ostringstream m;
  m << "{\"kind\":\"matrix\",\"matrix\":[";
  const int n = 24;
  for (int i = 0; i < n; ++i) {
    m << (i ? "," : "") << "[";
    for (int j = 0; j < n; ++j) m << (j ? "," : "") << 1;
    m << "]";
  }
  m << "]}";
  const std::string path = write_temp("big.json", m.str());
  const auto o = invoke({"permanent", "--input", path});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("refused"), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"approx", "--input", path, "--k", "20"}).code, 3);
}

TEST(CliTest, HelpExitsZero) {
  const auto o = invoke({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("--no-meta"), std::string::npos);
}

TEST(CliTest, TextOutput) {
  const auto o = invoke({"bound", "--input", data("j3.json"), "--output", "text", "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("vdw_equality: true"), std::string::npos) << o.out;
}

TEST(CliTest, MetaPresentByDefault) {
  const auto o = invoke({"capacity", "--input", data("sparse_xy.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = report(o);
  ASSERT_TRUE(r.contains("meta"));
  EXPECT_TRUE(r["meta"].contains("generated_at"));
}

TEST(CliTest, ReportsAreByteIdentical) {
  for (const char* cmd : {"capacity", "bound", "approx", "check-hyperbolic"}) {
    std::vector<std::string> args{cmd, "--input", data("j3.json"), "--no-meta", "--seed", "7", "--samples", "300"};
    if (std::string(cmd) == "approx") args.insert(args.end(), {"--k", "1"});
    const auto first = invoke(args);
    ASSERT_EQ(first.code, 0) << first.err;
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    EXPECT_EQ(invoke(args).out, first.out) << cmd;
    EXPECT_EQ(invoke(threaded).out, first.out) << cmd;
  }
  set_worker_count(1);
}

TEST(CliTest, InputsRoundTrip) {
  const auto o = invoke({"approx", "--input", data("j3.json"), "--k", "1", "--tol", "1e-9", "--max-iter", "77",
                         "--seed", "5", "--ordering", "greedy", "--mode", "float", "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json inputs = report(o)["inputs"];
  const cli::RunConfig c = cli::run_config_from_json(inputs);
  EXPECT_EQ(c.command, cli::Command::approx);
  EXPECT_EQ(c.k, 1);
  EXPECT_EQ(c.max_iter, 77);
  EXPECT_EQ(c.mode, ScalarMode::floating);
  EXPECT_EQ(cli::to_json(c), inputs);
}

TEST(CliTest, RunConfigRoundTripAllCommands) {
  for (const char* name : {"capacity", "permanent", "mixed-disc", "bound", "approx", "check-hyperbolic", "scale",
                           "suite"}) {
    cli::RunConfig c;
    c.command = cli::parse_command(name);
    c.input_path = "x.json";
    c.tol = 3.5e-7;
    c.output = cli::OutputFormat::text;
    EXPECT_EQ(cli::run_config_from_json(cli::to_json(c)), c) << name;
    EXPECT_EQ(cli::to_string(c.command), name);
  }
  EXPECT_THROW(cli::run_config_from_json(Json{{"command", "capacity"}}), InputError);
}

TEST(IoTest, ParsesAllKinds) {
  const Polynomial sparse = io::read_polynomial(data("sparse_xy.json"), ScalarMode::exact);
  EXPECT_EQ(n_vars(sparse), 2);
  EXPECT_EQ(degree(sparse), 2);
  const Polynomial det = io::read_polynomial(data("psd_pair.json"), ScalarMode::exact);
  EXPECT_TRUE(std::holds_alternative<DeterminantalPolynomial>(det));
  const Polynomial prod = io::read_polynomial(data("j3.json"), ScalarMode::exact);
  EXPECT_TRUE(std::holds_alternative<ProductFormPolynomial>(prod));
  EXPECT_EQ(io::read_matrix(data("ones2x2.json")).rows(), 2u);
}

TEST(IoTest, PolynomialJsonRoundTrip) {
  for (const char* name : {"sparse_xy.json", "psd_pair.json", "j3.json"}) {
    const Polynomial p = io::read_polynomial(data(name), ScalarMode::exact);
    const std::string text = io::to_json(p).dump();
    const Polynomial q = io::parse_polynomial(text, ScalarMode::exact);
    EXPECT_EQ(io::to_json(q).dump(), text) << name;
  }
}

TEST(IoTest, DecimalAndFractionScalars) {
  const Polynomial p = io::parse_polynomial(
      R"({"kind":"sparse","n":1,"terms":[{"exp":[1],"coef":"0.25"}]})", ScalarMode::exact);
  EXPECT_EQ(io::to_json(p)["terms"][0]["coef"], "1/4");
}

TEST(IoTest, RejectsStructuralErrors) {
  EXPECT_THROW(io::parse_polynomial(R"({"kind":"sparse","n":2,"terms":[{"exp":[1],"coef":1}]})", ScalarMode::exact),
               InputError);
  EXPECT_THROW(io::parse_polynomial(R"({"kind":"weird"})", ScalarMode::exact), InputError);
  EXPECT_THROW(io::parse_polynomial(R"({"kind":"matrix","matrix":[[1,2]]})", ScalarMode::exact), InputError);
  EXPECT_THROW(io::parse_polynomial("[1, 2", ScalarMode::exact), InputError);
}
