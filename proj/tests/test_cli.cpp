#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "kurepa/cli.hpp"
#include "kurepa/kurepa.hpp"

using namespace kurepa;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"kurepa"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("complex literal parsing") {
    CHECK(*cli::parse_complex("2") == ComplexValue(2, 0));
    CHECK(*cli::parse_complex("-3.5") == ComplexValue(-3.5, 0));
    CHECK(*cli::parse_complex("1.5i") == ComplexValue(0, 1.5));
    CHECK(*cli::parse_complex("-2i") == ComplexValue(0, -2));
    CHECK(*cli::parse_complex("1+2i") == ComplexValue(1, 2));
    CHECK(*cli::parse_complex("1.5-0.5i") == ComplexValue(1.5, -0.5));
    CHECK(*cli::parse_complex("0.5 + 1i") == ComplexValue(0.5, 1));
    CHECK(*cli::parse_complex(".25") == ComplexValue(0.25, 0));
    CHECK(!cli::parse_complex("abc"));
    CHECK(!cli::parse_complex("1+"));
    CHECK(!cli::parse_complex("i"));
    CHECK(!cli::parse_complex("1i2"));
    CHECK(!cli::parse_complex(""));
}

TEST_CASE("eval: integer left factorial") {
    const CliRun r = run_cli({"--format", "json", "eval", "K", "3"});
    REQUIRE(r.exit_code == cli::kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["value"][0].get<double>() == doctest::Approx(4.0).epsilon(1e-11));
    CHECK(doc["value"][1].get<double>() == doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("eval: removable point K(-2) = 1") {
    const CliRun r = run_cli({"--format", "json", "eval", "K", "-2"});
    REQUIRE(r.exit_code == cli::kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["value"][0].get<double>() == 1.0);
    bool removable = false;
    for (const auto& f : doc["flags"])
        if (f.get<std::string>() == "RemovableSingularity") removable = true;
    CHECK(removable);
}

TEST_CASE("eval: pole exit code and hint") {
    const CliRun r = run_cli({"eval", "K1", "2"});
    CHECK(r.exit_code == cli::kExitPole);
    CHECK(r.err.find("pv K1 2") != std::string::npos);
}

TEST_CASE("eval: complex argument and method selection") {
    const CliRun r = run_cli({"--format", "json", "eval", "K1", "0.5+1i", "--method", "incgamma"});
    REQUIRE(r.exit_code == cli::kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["method"].get<std::string>() == "IncGamma");
    const EvalResult want = k1_incgamma({0.5, 1.0});
    CHECK(doc["value"][0].get<double>() == want.value.real());
    CHECK(doc["value"][1].get<double>() == want.value.imag());
}

TEST_CASE("eval: usage errors") {
    CHECK(run_cli({"eval", "K", "zzz"}).exit_code == cli::kExitUsage);
    CHECK(run_cli({"eval", "Q", "1"}).exit_code == cli::kExitUsage);
    CHECK(run_cli({"eval", "K1", "0.5", "--method", "integral"}).exit_code == cli::kExitUsage);
    CHECK(run_cli({}).exit_code == cli::kExitUsage);
}

TEST_CASE("pv subcommand") {
    const CliRun g = run_cli({"--format", "json", "pv", "Gamma", "0"});
    REQUIRE(g.exit_code == cli::kExitOk);
    CHECK(json::parse(g.out)["pv"].get<double>() ==
          doctest::Approx(-constants::euler_gamma).epsilon(1e-14));
    const CliRun k = run_cli({"--format", "json", "pv", "K", "-2"});
    CHECK(json::parse(k.out)["pv"].get<double>() == 1.0);
    const CliRun k1v = run_cli({"--format", "json", "pv", "K1", "1"});
    CHECK(json::parse(k1v.out)["pv"].get<double>() ==
          doctest::Approx(0.302825117).epsilon(1e-8));
    // Regular points: the principal value is just the value.
    const CliRun greg = run_cli({"--format", "json", "pv", "Gamma", "3"});
    CHECK(json::parse(greg.out)["pv"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));
    const CliRun kreg = run_cli({"--format", "json", "pv", "K", "3"});
    CHECK(json::parse(kreg.out)["pv"].get<double>() == 4.0);
}

TEST_CASE("eval K1 with the series method") {
    const CliRun r = run_cli({"--format", "json", "eval", "K1", "0.5", "--method", "series"});
    REQUIRE(r.exit_code == cli::kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["method"].get<std::string>() == "Series");
    CHECK(doc["value"][0].get<double>() ==
          doctest::Approx(k1_series({0.5, 0.0}).value.real()).epsilon(1e-15));
}

TEST_CASE("seq subcommand") {
    const CliRun r = run_cli({"seq", "5"});
    REQUIRE(r.exit_code == cli::kExitOk);
    CHECK(r.out == "0\n1\n2\n4\n10\n34\n");
    const CliRun zero = run_cli({"seq", "0"});
    CHECK(zero.out == "0\n");
    const CliRun seven = run_cli({"seq", "7"});
    CHECK(seven.out.find("874\n") != std::string::npos);
    CHECK(run_cli({"seq", "-1"}).exit_code == cli::kExitUsage);
    CHECK(run_cli({"seq", "10001"}).exit_code == cli::kExitUsage);
    const CliRun j = run_cli({"--format", "json", "seq", "5"});
    const json doc = json::parse(j.out);
    CHECK(doc["values"].back().get<std::string>() == "34");
}

TEST_CASE("const subcommand") {
    const CliRun r = run_cli({"--format", "json", "const"});
    REQUIRE(r.exit_code == cli::kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["L1"].get<double>() == l1_constant());
    CHECK(doc["Ei(1)"].get<double>() == constants::ei_one());
    CHECK(doc["1/e"].get<double>() == 1.0 / constants::e);
    const CliRun t = run_cli({"const"});
    CHECK(t.out.find("0.6971748832350") != std::string::npos);
}

TEST_CASE("grid subcommand writes a report") {
    const std::string path = "cli_grid_test.json";
    const CliRun r = run_cli({"--format", "json", "grid", "K", "--re-range", "0.1:0.9:4",
                              "--im-range", "-1:1:3", "--out", path});
    REQUIRE(r.exit_code == cli::kExitOk);
    CHECK(r.out.find("max_abs_diff=") != std::string::npos);
    std::ifstream f(path);
    REQUIRE(f.good());
    const json doc = json::parse(f);
    CHECK(doc["grid"]["re_steps"].get<int>() == 4);
    std::remove(path.c_str());

    const std::string csv_path = "cli_grid_test.csv";
    const CliRun c = run_cli({"--format", "csv", "grid", "K", "--re-range", "0.4:0.6:1",
                              "--im-range", "0:0:1", "--out", csv_path});
    REQUIRE(c.exit_code == cli::kExitOk);
    std::ifstream cf(csv_path);
    std::string header, row, extra;
    std::getline(cf, header);
    std::getline(cf, row);
    CHECK(!std::getline(cf, extra));  // single data row
    CHECK(header.rfind("re,im", 0) == 0);
    std::remove(csv_path.c_str());

    CHECK(run_cli({"grid", "K", "--re-range", "bad", "--out", "x.json", "--format", "json"})
              .exit_code == cli::kExitUsage);

    const std::string pole_path = "cli_grid_pole.json";
    const CliRun p = run_cli({"--format", "json", "grid", "K", "--re-range", "-1.1:-0.9:3",
                              "--im-range", "-0.02:0.02:3", "--out", pole_path});
    REQUIRE(p.exit_code == cli::kExitOk);
    CHECK(p.out.find("skipped_points=") != std::string::npos);
    CHECK(p.out.find("skipped_points=0") == std::string::npos);
    std::remove(pole_path.c_str());
}

TEST_CASE("selftest subcommand: quiet pass and corrupted failure") {
    const CliRun ok = run_cli({"selftest", "--quiet"});
    CHECK(ok.exit_code == cli::kExitOk);
    CHECK(ok.out.find("SELFTEST PASS") != std::string::npos);
    CHECK(std::count(ok.out.begin(), ok.out.end(), '\n') == 1);  // single line when quiet
    const CliRun bad = run_cli({"selftest", "--quiet", "--corrupt-tolerances"});
    CHECK(bad.exit_code == cli::kExitSelfTest);
    CHECK(bad.out.find("SELFTEST FAIL") != std::string::npos);
}

TEST_CASE("json eval output round-trips exactly") {
    const CliRun r = run_cli({"--format", "json", "eval", "K", "0.37+1.21i"});
    REQUIRE(r.exit_code == cli::kExitOk);
    const json doc = json::parse(r.out);
    const EvalResult want = K({0.37, 1.21});
    CHECK(doc["value"][0].get<double>() == want.value.real());
    CHECK(doc["value"][1].get<double>() == want.value.imag());
    CHECK(doc["abs_error_estimate"].get<double>() == want.abs_error_estimate);
}
