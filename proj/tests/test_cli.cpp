#include "doctest.h"

#include "cli.hpp"
#include "cyclelift/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cyclelift;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    args.insert(args.begin(), "cyclelift");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("cyclelift-test-" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("form expressions")
{
    cli::SeriesCache none(std::nullopt);
    CHECK(cli::parse_form("Delta", 30, none) == delta(30));
    CHECK(cli::parse_form("f-2_1", 30, none) == weakly_basis(-2, 1, 30));
    CHECK(cli::parse_form("bol(f-2_1,2)", 30, none) == bol(weakly_basis(-2, 1, 30), 2));
    CHECK(cli::parse_form("G4 * G4", 30, none) == eisenstein_G(4, 30) * eisenstein_G(4, 30));
    CHECK(cli::parse_form("Delta*(j)", 30, none) == delta(30) * j_function(30));
    CHECK(cli::parse_form("S4_1", 30, none) == cusp_basis(4, 1, 30));
    CHECK(cli::parse_form("E6", 30, none) == eisenstein_E(6, 30));
    CHECK_THROWS_AS(cli::parse_form("Delta+", 30, none), ParseError);
    CHECK_THROWS_AS(cli::parse_form("bol(f-2_1)", 30, none), ParseError);
    CHECK_THROWS_AS(cli::parse_form("X", 30, none), ParseError);
}

TEST_CASE("forms subcommands")
{
    auto r = call({"forms", "classes", "--d", "5"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 1);
    CHECK(j["classes"][0]["b"] == "3");

    r = call({"forms", "classes", "--d", "4"});
    CHECK(json::parse(r.out)["count"] == 2);

    r = call({"forms", "pell", "--d", "8"});
    j = json::parse(r.out);
    CHECK(j["t"] == "6");
    CHECK(j["u"] == "2");

    r = call({"forms", "reduce", "--form", "7,17,10"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["reduced"]["D"] == "9");

    r = call({"forms", "cycle", "--form", "2,6,3"});
    CHECK(json::parse(r.out)["forms"].size() == 2);

    r = call({"forms", "genus", "--d1", "5", "--form", "1,8,1"});
    CHECK(json::parse(r.out)["value"] == 1);
}

TEST_CASE("exit codes")
{
    CHECK(call({"forms", "classes", "--d", "6"}).code == 2);
    CHECK(call({"forms", "classes", "--d", "-4"}).code == 2);
    CHECK(call({"forms", "reduce", "--form", "1,2"}).code == 2);
    CHECK(call({"forms", "reduce", "--form", "1,2,1"}).code == 2);
    CHECK(call({"cycleint", "--f", "Nope", "--form", "1,3,1"}).code == 2);
    CHECK(call({"--prec", "10", "forms", "classes", "--d", "5"}).code == 2);
    CHECK(call({"lift", "--f", "G4", "--delta", "-3", "--mmax", "5"}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"verify", "siegel", "--k", "2", "--d", "5,8"}).code == 0);
    CHECK(call({"verify", "corollary", "--k", "2", "--m", "1", "--d", "5"}).code == 0);
}

TEST_CASE("cycle integrals and lifts")
{
    auto r = call({"cycleint", "--f", "G4", "--form", "1,3,1"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["value"]["re"].get<double>() == doctest::Approx(1.0 / 60).epsilon(1e-12));
    CHECK(j["route"] == "quadrature");

    r = call({"cycleint", "--f", "Delta", "--form", "1,3,1", "--route", "periods"});
    CHECK(json::parse(r.out)["value"]["re"].get<double>() == doctest::Approx(-0.18538552324740326).epsilon(1e-12));

    r = call({"lift", "--f", "G4", "--delta", "1", "--mmax", "8"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    for (const auto& c : j["coefficients"]) {
        long m = c["m"];
        double expected = Rational(Rational(1, 2) * zeta_neg(2) * cohen_H(2, m)).get_d();
        CHECK(c["re"].get<double>() == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("cache is transparent")
{
    auto dir = fresh_dir("cache");
    std::vector<std::string> args{"--cache-dir", dir.string(), "lift", "--f", "Delta*j", "--delta", "1", "--mmax", "5"};
    auto plain = call({"lift", "--f", "Delta*j", "--delta", "1", "--mmax", "5"});
    auto cold = call(args);
    CHECK(std::filesystem::exists(dir));
    CHECK(!std::filesystem::is_empty(dir));
    auto warm = call(args);
    REQUIRE(cold.code == 0);
    CHECK(cold.out == warm.out);
    CHECK(cold.out == plain.out);

    // A corrupt entry is rebuilt rather than trusted.
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        std::ofstream(e.path()) << "{";
    }
    CHECK(call(args).out == cold.out);
    std::filesystem::remove_all(dir);
}

TEST_CASE("output formats")
{
    auto csv = call({"--format", "csv", "forms", "classes", "--d", "12"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("D,a,b,c\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);
    auto pretty = call({"--format", "pretty", "verify", "siegel", "--k", "2", "--d", "5"});
    CHECK(pretty.code == 0);
    CHECK(pretty.out.find("identity: siegel") != std::string::npos);
    CHECK(call({"--format", "xml", "forms", "classes", "--d", "5"}).code == 2);
}
