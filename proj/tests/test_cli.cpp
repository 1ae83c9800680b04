#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <sstream>

using ccov::cli::App;
using ccov::cli::Json;

namespace
{
struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> const& args, std::string const& input = "")
{
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    int const code = App(in, out, err).run(args);
    return {code, out.str(), err.str()};
}

double re(Json const& j) { return j.at("re").get<double>(); }
double im(Json const& j) { return j.at("im").get<double>(); }
}  // namespace

TEST(ParseComplex, Forms)
{
    using ccov::cli::parse_complex;
    EXPECT_EQ(parse_complex("0.3+0.4i"), ccov::Complex(0.3, 0.4));
    EXPECT_EQ(parse_complex("-2i"), ccov::Complex(0.0, -2.0));
    EXPECT_EQ(parse_complex("i"), ccov::Complex(0.0, 1.0));
    EXPECT_EQ(parse_complex("1e-3-2.5e2i"), ccov::Complex(1e-3, -250.0));
    EXPECT_EQ(parse_complex("7"), ccov::Complex(7.0, 0.0));
    EXPECT_THROW(parse_complex("1 + 2i"), ccov::cli::SchemaError);
    EXPECT_THROW(parse_complex("abc"), ccov::cli::SchemaError);
}

TEST(Cli, BoostOption1Event)
{
    auto const r = run({"boost", "--mode", "option1", "--v", "0.6", "--event", "0,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const j = Json::parse(r.out);
    EXPECT_NEAR(re(j["values"]["z"]), -0.75, 1e-14);
    EXPECT_NEAR(re(j["values"]["t"]), 1.25, 1e-14);
}

TEST(Cli, BoostOption2RealTime)
{
    auto const r = run({"boost", "--mode", "option2", "--v", "0.3+0.4i", "--event", "0.6+0.8i,2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const j = Json::parse(r.out);
    EXPECT_NEAR(re(j["values"]["t"]), 1.7320508, 1e-7);
    EXPECT_EQ(im(j["values"]["t"]), 0.0);
    EXPECT_TRUE(j["meta"]["t_is_real"].get<bool>());
}

TEST(Cli, StdinRoundTrip)
{
    auto const fwd = run({"boost", "--mode", "general", "--c", "0.8+0.6i", "--gauge-s",
                          "1.2-0.3i", "--v", "0.2+0.5i", "--event", "1+i,2-0.5i"});
    ASSERT_EQ(fwd.code, 0) << fwd.err;
    auto const back = run({"boost", "--inverse", "-"}, fwd.out);
    ASSERT_EQ(back.code, 0) << back.err;
    auto const j = Json::parse(back.out);
    EXPECT_NEAR(re(j["values"]["z"]), 1.0, 1e-13);
    EXPECT_NEAR(im(j["values"]["z"]), 1.0, 1e-13);
    EXPECT_NEAR(re(j["values"]["t"]), 2.0, 1e-13);
    EXPECT_NEAR(im(j["values"]["t"]), -0.5, 1e-13);
}

TEST(Cli, CsvOutput)
{
    auto const r = run({"--format", "csv", "momentum", "--m0", "1", "--v", "0.6"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find('\n'), std::string::npos);
    EXPECT_EQ(r.out.rfind("command,", 0), 0u);
}

TEST(Cli, DispersionAtRest)
{
    auto const r = run({"dispersion", "--k", "0", "--m0", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"re\": 1.0"), std::string::npos);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"boost", "--mode", "option1", "--v", "1", "--event", "0,1"}).code, 3);
    EXPECT_EQ(run({"add-vel", "--mode", "option1", "--v", "0.5", "--u", "2"}).code, 3);
    EXPECT_EQ(run({"boost", "--v", "not-a-number", "--event", "0,1"}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"boost", "-"}, "{").code, 2);
    auto const bad = run({"boost", "--mode", "option1", "--v", "1", "--event", "0,1"});
    EXPECT_TRUE(Json::parse(bad.err).contains("error"));
}

TEST(Cli, WaveCheckPlaneWavePasses)
{
    auto const r = run({"wave-check", "--omega", "1.2", "--k", "0.5+0.1i", "--v", "0.3"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, CheckSuiteExitZero)
{
    auto const r = run({"check", "nonrel"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(run({"check", "unknown-suite"}).code, 2);
}

TEST(Cli, TableWorldline)
{
    auto const r = run({"--mode", "option1", "--format", "csv", "table", "worldline-time",
                        "--from", "0", "--to", "0.99", "--n", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const last_nl = r.out.find_last_of('\n', r.out.size() - 2);
    std::string const last = r.out.substr(last_nl + 1);
    EXPECT_NE(last.find("0.141"), std::string::npos) << last;
}
