#include "doctest.h"

#include "bolhalf/cli.hpp"
#include "bolhalf/errors.hpp"
#include "bolhalf/series_io.hpp"
#include "bolhalf/suites.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bolhalf;
namespace fs = std::filesystem;

namespace {
struct Run {
    int code;
    std::string out, err;
};
Run cli(const std::vector<std::string>& args)
{
    std::ostringstream o, e;
    int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}
fs::path scratch(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / "bolhalf_cli_test";
    fs::create_directories(d);
    return d / name;
}
} // namespace

TEST_CASE("grid specs")
{
    auto g = parse_grid("0.5:5:10");
    REQUIRE(g.size() == 10);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == doctest::Approx(5.0));
    CHECK(g[1] == doctest::Approx(1.0));
    CHECK(parse_grid("1, 2,3.5") == std::vector<double>{1, 2, 3.5});
    CHECK(parse_grid("2:2:1") == std::vector<double>{2});
    CHECK_THROWS_AS(parse_grid("1:2"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid("3:1:4"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid("1,x"), InvalidArgument);
}

TEST_CASE("SC parameter files")
{
    std::string phi = "bump:1,2";
    auto p = parse_sc_params("# integral analogue\nk = 4\nN=2\nNp = 2\nD = 3\nchi = triv:3\nlambda = 1,0.5\nh = ell\n"
                             "phi = bump:1,3\n",
                             phi);
    CHECK(p.k.doubled == 8);
    CHECK(p.N == 2);
    CHECK(p.Np == 2);
    CHECK(p.D == 3);
    CHECK(p.chi.modulus() == 3);
    CHECK(p.lambda == cd(1.0, 0.5));
    CHECK(p.h.name == "ell");
    CHECK(phi == "bump:1,3");
    CHECK_THROWS_AS(parse_sc_params("kk = 3\n", phi), InvalidArgument);
    CHECK_THROWS_AS(parse_sc_params("N 3\n", phi), InvalidArgument);
    CHECK_THROWS_AS(parse_sc_params("N = three\n", phi), InvalidArgument);
}

TEST_CASE("exit codes")
{
    CHECK(cli({"run", "--help"}).code == 0);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"theta", "--kind", "theta0", "--char", "bogus:3"}).code == 2);
    CHECK(cli({"theta", "--kind", "theta7"}).code == 2);
    CHECK(cli({"--bits", "32", "theta", "--kind", "theta0"}).code == 2);
    CHECK(cli({"--tol", "0", "bessel", "--n", "1", "--z", "1"}).code == 2);
    CHECK(cli({"suite", "no-such-suite"}).code == 2);
    CHECK(cli({"bessel", "--n", "1", "--sign", "2", "--z", "1"}).code == 2);
}

TEST_CASE("theta to a series file and back")
{
    auto path = scratch("th1.qs");
    auto r = cli({"theta", "--kind", "theta1", "--char", "kron:-4", "--prec", "50", "--out", path.string()});
    REQUIRE(r.code == 0);
    auto f = std::get<ExactSeries>(load_series(path.string()));
    CHECK(f.coefficient(Rational(1)) == QExact(1));
    CHECK(f.coefficient(Rational(9)) == QExact(-3));
    CHECK(f.coefficient(Rational(25)) == QExact(5));
    CHECK(f.coefficient(Rational(4)) == QExact(0));

    // delta_1^{1/2}(theta0) = theta1 through the command line
    auto p0 = scratch("th0.qs");
    REQUIRE(cli({"theta", "--kind", "theta0", "--prec", "60", "--out", p0.string()}).code == 0);
    auto d = cli({"delta", "--a", "1", "--k", "3/2", "--in", p0.string(), "--prec", "50"});
    REQUIRE(d.code == 0);
    auto g = std::get<ExactSeries>(series_from_string(d.out));
    CHECK(g.coefficient(Rational(9)) == QExact(-3));
    CHECK(g.coefficient(Rational(49)) == QExact(-7));
}

TEST_CASE("config file values and command-line overrides")
{
    auto cfgp = scratch("run.ini");
    {
        std::ofstream f(cfgp);
        f << "bits = 192\nseed = 99\ntol = 1e-11\n";
    }
    auto r = cli({"--config", cfgp.string(), "suite", "bessel", "--json", "-"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["config"]["bits"] == 192);
    CHECK(j["config"]["seed"] == 99);
    CHECK(j["config"]["tol"] == 1e-11);

    auto r2 = cli({"--config", cfgp.string(), "--seed", "5", "suite", "bessel", "--json", "-"});
    REQUIRE(r2.code == 0);
    CHECK(nlohmann::json::parse(r2.out)["config"]["seed"] == 5);

    auto bad = scratch("bad.ini");
    {
        std::ofstream f(bad);
        f << "no_such_key = 1\n";
    }
    CHECK(cli({"--config", bad.string(), "suite", "bessel"}).code == 2);
}

TEST_CASE("suite reports are byte-identical across runs")
{
    auto a = cli({"suite", "delta-theta", "--json", "-"});
    auto b = cli({"suite", "delta-theta", "--json", "-"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["status"] == "pass");
    CHECK(j["checks"].size() == 18);
}

TEST_CASE("failures become structured reports")
{
    auto path = scratch("sc_err.json");
    // N and N' that do not divide each other are rejected
    auto pf = scratch("sc.txt");
    {
        std::ofstream f(pf);
        f << "k = 4\nN = 2\nNp = 3\nD = 5\n";
    }
    auto r = cli({"sc", "--params", pf.string(), "--json", path.string()});
    CHECK(r.code == 2);
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    CHECK(j["status"] == "error");
    CHECK(j["exit_code"] == 2);
    CHECK(j["command"] == "sc");
}

TEST_CASE("SC explorer from the command line")
{
    auto pf = scratch("sc_ok.txt");
    {
        std::ofstream f(pf);
        f << "k = 4\nN = 2\nNp = 2\nD = 3\nchi = triv:3\n";
    }
    auto r = cli({"sc", "--params", pf.string(), "--h", "one", "--p-grid", "0.5:5:10", "--threshold", "1e-4", "--json", "-"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["samples"].size() == 10);
    CHECK(j["max_residual"].get<double>() < 1e-4);
    CHECK(j["status"] == "pass");
}
