#include <ccov/verify.hpp>

#include <gtest/gtest.h>

using namespace ccov;
using namespace ccov::verify;

TEST(Sampler, IsDeterministic)
{
    Sampler a(7);
    Sampler b(7);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(a.disk(2.0), b.disk(2.0));
}

TEST(Sampler, ReducedVelocityAvoidsBranchPoint)
{
    Sampler rng(3);
    for (int i = 0; i < 2000; ++i)
    {
        Complex const b = rng.reduced_velocity(false);
        EXPECT_LE(std::abs(b), 2.0);
        EXPECT_GT(std::abs(b * b - 1.0), 0.01);
    }
}

TEST(Tracker, NanFails)
{
    Tracker t("x", 1.0);
    t.add(0.5);
    EXPECT_TRUE(t.line().passed);
    t.add(std::nan(""));
    EXPECT_FALSE(t.line().passed);
}

TEST(Suites, AllNamesDispatch)
{
    CheckOptions opt;
    opt.samples = 50;
    for (auto name : suite_names())
    {
        auto const rep = run_suite(name, opt);
        ASSERT_TRUE(rep.has_value()) << name;
        EXPECT_TRUE(rep->passed()) << name;
    }
    EXPECT_FALSE(run_suite("nope", opt).has_value());
}

TEST(Suites, SeedChangesSamplesNotVerdict)
{
    CheckOptions a;
    a.samples = 500;
    CheckOptions b = a;
    b.seed = 1234;
    auto const ra = inverse_suite(a);
    auto const rb = inverse_suite(b);
    EXPECT_TRUE(ra.passed());
    EXPECT_TRUE(rb.passed());
    EXPECT_NE(ra.lines[1].max_deviation, rb.lines[1].max_deviation);
}

TEST(Suites, GridNeedsTwoLevels)
{
    CheckOptions opt;
    opt.steps = 1;
    EXPECT_THROW(kgf_grid_suite(opt), Error);
}
