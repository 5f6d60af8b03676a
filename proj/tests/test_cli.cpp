#include "voa_cli/cli.hpp"
#include "voa_cli/parse.hpp"
#include "voa_cli/report.hpp"
#include "voa_cli/suites.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using voa::Rational;
using voa::cli::Json;

namespace {

const std::string fixtures = VOA_FIXTURE_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = voa::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json ints(std::vector<long> xs) {
    Json a = Json::array();
    for (long x : xs) a.push_back(x);
    return a;
}

}  // namespace

TEST(Parse, PolynomialGrammar) {
    auto p = voa::cli::parse_polynomial("z + z^2 - 1/2 z^3");
    EXPECT_EQ(p.var, "z");
    EXPECT_EQ(p.terms, (std::map<int, Rational>{{1, Rational(1)}, {2, Rational(1)}, {3, Rational(-1, 2)}}));
    auto q = voa::cli::parse_polynomial("-3*t^-2 + 4 + 2t - 2t");
    EXPECT_EQ(q.terms, (std::map<int, Rational>{{-2, Rational(-3)}, {0, Rational(4)}}));
    EXPECT_EQ(q.min_exponent(), -2);
    EXPECT_EQ(voa::cli::parse_polynomial("5").var, "");
}

TEST(Parse, RejectsMalformedInput) {
    using voa::cli::ConfigError;
    EXPECT_THROW(voa::cli::parse_polynomial(""), ConfigError);
    EXPECT_THROW(voa::cli::parse_polynomial("z + w"), ConfigError);
    EXPECT_THROW(voa::cli::parse_polynomial("z^"), ConfigError);
    EXPECT_THROW(voa::cli::parse_polynomial("1/0 z"), ConfigError);
    EXPECT_THROW(voa::cli::parse_polynomial("z z"), ConfigError);
    EXPECT_THROW(voa::cli::parse_polynomial("q", "z"), ConfigError);
    EXPECT_THROW(voa::cli::parse_label("2,x"), ConfigError);
    EXPECT_THROW(voa::cli::parse_label("0"), ConfigError);
}

TEST(Parse, CoefficientListsAndSeries) {
    auto p = voa::cli::parse_series_text("[0, 1, -2/3]", "z");
    auto s = voa::cli::to_series(p, "z");
    EXPECT_EQ(s, voa::TruncSeries::polynomial("z", {Rational(0), Rational(1), Rational(-2, 3)}, 3));
    EXPECT_EQ(voa::cli::to_series(voa::cli::parse_polynomial("t^-1"), "t", 2).floor(), -1);
    EXPECT_THROW(voa::cli::to_series(voa::cli::parse_polynomial("z^4"), "z", 3), voa::cli::ConfigError);
    EXPECT_EQ(voa::cli::parse_label("1, 2"), voa::Label({2, 1}));
    EXPECT_EQ(voa::cli::parse_label("vac"), voa::Label{});
}

TEST(Report, ExactValuesAreIntegersOrStrings) {
    EXPECT_EQ(voa::cli::exact_value(Rational(-7)), Json(-7));
    EXPECT_EQ(voa::cli::exact_value(Rational(3, 4)), Json("3/4"));
    Rational big = voa::pow(Rational(10), 30);
    EXPECT_EQ(voa::cli::exact_value(big), Json(big.str()));
    EXPECT_EQ(voa::cli::exact_scalar(Rational(1))["provenance"], "exact");
    EXPECT_EQ(voa::cli::float_scalar(0.5)["provenance"], "float");
}

TEST(Cli, HeisenbergCharacterGolden) {
    auto r = run({"character", "--model", "heisenberg", "--cap", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = r.json();
    EXPECT_EQ(j["schema"], "voa-blocks/1");
    EXPECT_EQ(j["command"], "character");
    EXPECT_EQ(j["config"]["seed"], 1);
    EXPECT_EQ(j["result"]["character"]["coeffs"], ints({1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77}));
    EXPECT_EQ(j["result"]["character"]["provenance"], "exact");
}

TEST(Cli, NormalizedCharacterOffsets) {
    auto h = run({"character", "--model", "heisenberg", "--cap", "3", "--normalize"}).json();
    EXPECT_EQ(h["result"]["character"]["offset"], "-1/24");
    auto f = run({"character", "--model", "fock", "--mu", "1/2", "--cap", "3", "--normalize", "--insertion", "left"}).json();
    EXPECT_EQ(f["result"]["character"]["offset"], "1/12");
    EXPECT_EQ(f["result"]["character"]["coeffs"], ints({1, 1, 2, 3}));
    auto v = run({"character", "--model", "virasoro", "--c", "1/2", "--cap", "6"}).json();
    EXPECT_EQ(v["result"]["character"]["coeffs"], ints({1, 0, 1, 1, 2, 2, 4}));
}

TEST(Cli, CharacterCsv) {
    auto r = run({"character", "--model", "heisenberg", "--cap", "3", "--format", "csv"});
    EXPECT_EQ(r.out, "n,exponent,coeff\n0,0,1\n1,1,1\n2,2,2\n3,3,3\n");
}

TEST(Cli, ExtractGolden) {
    auto j = run({"coord", "extract", "--series", "z+z^2+z^3"}).json();
    EXPECT_EQ(j["result"]["coeffs"]["c"], ints({1, 1, 0}));
    auto k = run({"coord", "extract", "--series", "2z+z^2", "--order", "4"}).json();
    EXPECT_EQ(k["result"]["coeffs"]["c"], Json::array({2, "1/2", "-1/4"}));
}

TEST(Cli, SchwarzianGolden) {
    auto j = run({"schwarzian", "--series", "z+z^3", "--order", "6"}).json();
    EXPECT_EQ(j["result"]["schwarzian"]["coeffs"], ints({6, 0, -72, 0, 378, 0}));
}

TEST(Cli, UniformizeRoundTrip) {
    auto r = run({"uniformize", "--series", "1+z", "--order", "6"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.json()["result"]["round_trip"].get<bool>());
}

TEST(Cli, HuangCheck) {
    auto r = run({"coord", "huang", "--series", "2z+z^2-z^4", "--model", "fock", "--mu", "1/2", "--v", "2,1", "--w", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.json()["pass"].get<bool>());
    auto short_alpha = run({"coord", "huang", "--series", "z+z^2", "--order", "3", "--v", "1"});
    EXPECT_EQ(short_alpha.code, 2);
}

TEST(Cli, BlockFixtures) {
    auto t = run({"blocks", "three-point", "--fixture", fixtures + "/three_point.json"});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(t.json()["result"]["value"]["value"], 1);
    auto flags = run({"blocks", "three-point", "--model", "fock", "--mu", "1/2", "--z0", "2", "--v", "1", "--w", "1", "--wd", "1,1"});
    EXPECT_EQ(flags.json()["result"], t.json()["result"]);
    auto ok = run({"blocks", "glue", "--fixture", fixtures + "/glue_ok.json"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.json()["result"]["section"]["text"], "1/(zeta*(zeta - 3))");
    auto bad = run({"blocks", "glue", "--fixture", fixtures + "/glue_bad.json"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(bad.json()["result"].contains("violation"));
    auto res = run({"blocks", "residue-check", "--fixture", fixtures + "/residue_ok.json"});
    EXPECT_EQ(res.code, 0);
    EXPECT_EQ(res.json()["result"]["section"], ok.json()["result"]["section"]);
}

TEST(Cli, OdeSolveAndContinue) {
    auto s = run({"ode", "solve", "--matrix", fixtures + "/matrix_geometric.json", "--order", "20"});
    ASSERT_EQ(s.code, 0) << s.err;
    Json r = s.json()["result"];
    EXPECT_TRUE(r["residual_zero"].get<bool>());
    EXPECT_EQ(r["radius"]["r0"], "1/8");
    EXPECT_TRUE(r["growth"]["pass"].get<bool>());
    for (const auto& m : r["modes"]["values"]) EXPECT_EQ(m, ints({1}));
    auto res = run({"ode", "solve", "--matrix", fixtures + "/matrix_resonant.json", "--order", "4"});
    EXPECT_EQ(res.code, 1);
    EXPECT_EQ(res.json()["result"]["resonance"]["n"], 2);
    auto c = run({"ode", "continue", "--matrix", fixtures + "/matrix_geometric.json", "--path", fixtures + "/path.json",
                  "--steps", "2000"});
    ASSERT_EQ(c.code, 0) << c.err;
    Json v = c.json()["result"]["value"];
    EXPECT_EQ(v["provenance"], "float");
    EXPECT_NEAR(v["value"][0][0].get<double>(), 1.0 / 0.7, 1e-10);
}

TEST(Cli, ExitCodesForBadConfig) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"character", "--model", "lattice"}).code, 2);
    EXPECT_EQ(run({"character", "--cap", "0"}).code, 2);
    EXPECT_EQ(run({"character", "--cap", "-3"}).code, 2);
    EXPECT_EQ(run({"character", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"schwarzian", "--series", "z^2"}).code, 2);
    EXPECT_EQ(run({"schwarzian", "--series", "z +* 2"}).code, 2);
    EXPECT_EQ(run({"blocks", "glue", "--fixture", fixtures + "/missing.json"}).code, 2);
    EXPECT_EQ(run({"blocks", "glue", "--fixture", fixtures + "/three_point.json"}).code, 2);
    EXPECT_EQ(run({"suite", "--name", "no-such-suite"}).code, 2);
    EXPECT_EQ(run({"blocks", "three-point", "--fixture", fixtures + "/three_point.json", "--format", "csv"}).code, 0);
    auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("character"), std::string::npos);
}

TEST(Cli, WritesToOutFile) {
    std::string path = testing::TempDir() + "voa_cli_out.json";
    auto r = run({"character", "--cap", "2", "--out", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    Json j = Json::parse(in);
    EXPECT_EQ(j["result"]["character"]["coeffs"], ints({1, 1, 2}));
    std::remove(path.c_str());
}

TEST(Cli, SuiteIsDeterministicAndRecordsTheSeed) {
    auto a = run({"suite", "--name", "group-law", "--name", "residue-machinery", "--seed", "99"});
    auto b = run({"suite", "--seed", "99", "--name", "group-law", "--name", "residue-machinery"});
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.json()["config"]["seed"], 99);
    auto c = run({"suite", "--name", "group-law", "--name", "residue-machinery", "--seed", "100"});
    EXPECT_NE(a.out, c.out);
}

TEST(Suites, CatalogCoversCriteriaOneToTwelve) {
    const auto& cat = voa::cli::suite_catalog();
    ASSERT_EQ(cat.size(), 12u);
    for (std::size_t i = 0; i < cat.size(); ++i) EXPECT_EQ(cat[i].criterion, static_cast<int>(i) + 1);
    EXPECT_THROW(voa::cli::run_suite("nope", 1), std::invalid_argument);
}

TEST(Suites, SeedsChangeTheDrawsButNotTheVerdict) {
    auto a = voa::cli::run_suite("residue-machinery", 1), b = voa::cli::run_suite("residue-machinery", 2);
    EXPECT_TRUE(a.pass);
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(a.details["glued"], 15);
    EXPECT_EQ(a.details["rejected"], 15);
    auto c = voa::cli::run_suite("extract-closed-forms", 5);
    EXPECT_EQ(c.instances, 25);
    EXPECT_EQ(voa::cli::to_json(c)["failures"], 0);
}
