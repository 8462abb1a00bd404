#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tpe/cli.hpp"
#include "tpe/serialize.hpp"

using namespace tpe;
using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tpe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tpe_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("energy: circle saturates the bound") {
  const Run r = run({"energy", "--curve", "circle", "--p", "4", "--q", "2", "--length", "1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["value"].get<double>() == Approx(9.8696044).epsilon(1e-7));
  CHECK(j["converged"].get<bool>());
  CHECK(j["kind"] == "TP");
  CHECK(j["N_u"] == 256);
}

TEST_CASE("energy: divergence exits 2") {
  const Run r = run({"energy", "--curve", "circle", "--p", "5.5", "--q", "2", "--quad", "64,64,4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("diverged") != std::string::npos);
  CHECK_FALSE(Json::parse(r.out)["converged"].get<bool>());
}

TEST_CASE("energy: Willmore on the ellipse exceeds the bound") {
  const Run r = run({"energy", "--curve", "ellipse:2:1", "--willmore", "--s", "0.5", "--wp", "1", "--length", "1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["kind"] == "Willmore");
  CHECK(j["value"].get<double>() > 9.2949520188);
}

TEST_CASE("energy: other kinds and CSV") {
  CHECK(run({"energy", "--kind", "F", "--p", "3", "--q", "2", "--curve", "ellipse:2:1", "--quad", "64,64,4"}).code == 0);
  CHECK(run({"energy", "--kind", "GSliceW", "--slice", "0.25", "--quad", "64,64,4"}).code == 0);
  CHECK(run({"energy", "--kind", "I1", "--z", "w", "--quad", "64,64,4"}).code == 0);
  const Run csv = run({"energy", "--format", "csv", "--quad", "64,64,4"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("kind,p,q,s,value,error_estimate,N_u,N_w,converged\r\n", 0) == 0);
}

TEST_CASE("energy: invalid input exits 1 with a message") {
  Run r = run({"energy", "--curve", "ellipse:0:1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("semi-axes") != std::string::npos);
  r = run({"energy", "--curve", "figure-eight"});
  CHECK(r.code == 1);
  CHECK(r.err.find("embedded") != std::string::npos);
  r = run({"energy", "--q", "-1"});
  CHECK(r.code == 1);
  r = run({"energy", "--kind", "Mobius"});
  CHECK(r.code == 1);
  r = run({"energy", "--quad", "1,2"});
  CHECK(r.code == 1);
  r = run({"energy", "--format", "xml"});
  CHECK(r.code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"energy", "--help"}).code == 0);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args{"energy", "--curve", "trefoil", "--p", "4.5", "--q", "2", "--quad", "64,64,4"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> sweep{"sweep", "--qs", "2", "--ps", "3,4", "--quad", "64,64,4"};
  CHECK(run(sweep).out == run(sweep).out);
}

TEST_CASE("bound") {
  Run r = run({"bound", "--p", "4", "--q", "2"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["bound"].get<double>() == Approx(oracle::kPi * oracle::kPi));
  CHECK(j["region_flags"] == Json::array({"repulsive", "bound_valid_all"}));
  r = run({"bound", "--p", "5.5", "--q", "2"});
  CHECK(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["bound"].is_null());
  CHECK(j["region_flags"] == Json::array({"infinite_energy"}));
  r = run({"bound", "--willmore", "--s", "0.5", "--wp", "2", "--length", "1"});
  CHECK(Json::parse(r.out)["bound"].get<double>() == Approx(9.2949520188 * 9.2949520188));
}

TEST_CASE("fenchel") {
  const Run r = run({"fenchel", "--curve", "ellipse:2:1", "--n", "128"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(std::abs(j["slack_u"].get<double>()) <= 1e-5);
  CHECK(std::abs(j["slack_w"].get<double>()) <= 1e-5);
  CHECK(j["N"] == 128);
  CHECK(j.contains("min_path_v"));
}

TEST_CASE("verify") {
  SUBCASE("only fenchel") {
    const Run r = run({"verify", "--only", "fenchel"});
    CHECK(r.code == 0);
    CHECK(r.out.find("fenchel/") != std::string::npos);
    CHECK(r.out.find("circle/") == std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  SUBCASE("strict tolerance forces exit 3") {
    const Run r = run({"verify", "--only", "circle", "--strict", "1e-15"});
    CHECK(r.code == 3);
    CHECK(r.err.find("circle/") != std::string::npos);
  }
  SUBCASE("JSON output") {
    const Run r = run({"verify", "--only", "wirtinger,bounds", "--format", "json"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.size() == 3);
    for (const auto& row : j) CHECK(row["pass"].get<bool>());
  }
  SUBCASE("unknown group") { CHECK(run({"verify", "--only", "nope"}).code == 1); }
}

TEST_CASE("verify: full default suite passes") {
  const Run r = run({"verify"});
  CHECK(r.code == 0);
  for (const char* g : {"circle/", "homogeneity/", "reparametrization/", "minorant/", "fenchel/", "wirtinger/", "bounds/"}) {
    CHECK(r.out.find(g) != std::string::npos);
  }
}

TEST_CASE("sweep") {
  const Run r = run({"sweep", "--qs", "2", "--ps", "3,4,4.5,5.2", "--quad", "128,128,4"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) {
    CHECK(line.back() == '\r');
    rows.push_back(line.substr(0, line.size() - 1));
  }
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "p,q,region_flags,bound,tp_circle,tp_fixture,slack,status");
  CHECK(rows[1].find("lower_limit;bound_valid_all") != std::string::npos);
  CHECK(rows[4].find("diverged") != std::string::npos);
  CHECK(rows[4].find("infinite_energy") != std::string::npos);

  const Run j = run({"sweep", "--qs", "1.5,2", "--p-auto", "3", "--format", "json", "--quad", "128,128,4"});
  const Json rowsj = Json::parse(j.out);
  CHECK(rowsj.size() == 6);
  for (const auto& row : rowsj) {
    // Near p = 2q + 1 a 128-point grid no longer meets the doubling test.
    if (row["p"].get<double>() <= 2.0 * row["q"].get<double>()) CHECK(row["status"] == "ok");
    if (row["status"] == "ok") CHECK(row["slack"].get<double>() >= -1e-4);
    CHECK(std::abs(row["tp_circle"].get<double>() - row["bound"].get<double>()) <= 1e-4 * row["bound"].get<double>());
  }
}

TEST_CASE("minimize writes a report and a trace") {
  const auto trace = temp_path("trace.csv");
  const auto out = temp_path("report.json");
  const Run r = run({"minimize", "--max-iters", "5", "--modes", "3", "--trace", trace.string(), "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const Json j = Json::parse(slurp(out));
  CHECK(j["iterations_used"] == 5);
  CHECK(j["terminated_by"] == "max_iters");
  CHECK(j["final_coeffs"]["modes"] == 3);
  const std::string csv = slurp(trace);
  CHECK(csv.rfind("iteration,energy\r\n0,", 0) == 0);
  std::filesystem::remove(trace);
  std::filesystem::remove(out);
  CHECK(run({"minimize", "--kind", "I2"}).code == 1);
}

TEST_CASE("config file mirrors the flags") {
  const auto cfg = temp_path("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"curve": "ellipse:2:1", "p": 3, "q": 2, "length": 1, "quad": [64, 64, 4]})";
  }
  Run r = run({"energy", "--config", cfg.string()});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["p"] == 3);
  CHECK(j["N_u"] == 64);
  // Explicit flags override the file.
  r = run({"energy", "--config", cfg.string(), "--p", "4"});
  CHECK(Json::parse(r.out)["p"] == 4);
  std::filesystem::remove(cfg);
  CHECK(run({"energy", "--config", cfg.string()}).code == 1);
}

TEST_CASE("curve files round-trip") {
  const auto path = temp_path("curve.json");
  const FourierCurve t = make_trefoil(1.5);
  write_curve_file(t, path.string());
  const FourierCurve back = parse_curve(path.string());
  CHECK(back.dims() == 3);
  CHECK(back.modes() == t.modes());
  for (double u : {0.0, 0.3}) CHECK((back.position(u) - t.position(u)).norm() == 0.0);
  const Run from_file = run({"energy", "--curve", path.string(), "--quad", "64,64,4"});
  const Run builtin = run({"energy", "--curve", "trefoil:1.5", "--quad", "64,64,4"});
  CHECK(from_file.code == builtin.code);
  CHECK(from_file.out == builtin.out);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(curve_from_json(Json::parse(R"({"dims": 2, "modes": 1, "coeffs": [[[0, 0]]]})")), std::invalid_argument);
}

TEST_CASE("fixture grammar") {
  CHECK(curve_length(parse_curve("circle")) == Approx(1.0));
  CHECK(curve_length(parse_curve("circle:3")) == Approx(3.0));
  CHECK(parse_curve("ellipse:2:1").mode(0, 1).a == 2.0);
  CHECK(curve_length(parse_curve("perturbed:3:0.1")) == Approx(1.0));
  CHECK(parse_curve("trefoil").dims() == 3);
  CHECK(parse_curve("trefoil:2").mode(0, 2).a == 4.0);
  CHECK(parse_curve("figure-eight").dims() == 2);
  CHECK_THROWS_AS(parse_curve("ellipse:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_curve("ellipse:a:b"), std::invalid_argument);
}

TEST_CASE("serialization helpers") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(dump_json(Json{{"x", std::nan("")}, {"y", 1.5}}) == "{\n  \"x\": null,\n  \"y\": 1.5\n}\n");
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_number(std::numeric_limits<double>::infinity()).empty());
  CHECK(csv_row({"a", "b,c"}) == "a,\"b,c\"\r\n");
}
