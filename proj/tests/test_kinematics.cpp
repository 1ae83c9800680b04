#include <ccov/kinematics.hpp>

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_complex.hpp>

#include <numbers>

using namespace ccov;
namespace mp = boost::multiprecision;
using Wide = mp::cpp_complex_50;

namespace
{
Complex narrow(Wide const& w)
{
    return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

ErrorCode code_of(auto&& fn)
{
    try
    {
        fn();
    }
    catch (Error const& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no ccov::Error thrown";
    return ErrorCode::InvalidArgument;
}
}  // namespace

TEST(Boost, Option1RealWorkedExample)
{
    Boost const b = Boost::option1(0.6);
    Event const e = boost_forward(b, {0.0, 1.0});
    EXPECT_NEAR(std::abs(e.z - Complex(-0.75, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e.t - Complex(1.25, 0.0)), 0.0, 1e-15);
}

TEST(Boost, ZeroVelocityIsIdentity)
{
    for (BoostMode m : {BoostMode::Option1RealC, BoostMode::Option2ConjugateParallel,
                        BoostMode::GeneralComplexC})
    {
        Boost const b = Boost::make(0.0, m, PhysicalConstants::natural());
        Event const e{Complex(1.5, -2.0), Complex(0.25, 3.0)};
        Event const out = boost_forward(b, e);
        EXPECT_EQ(out.z, e.z);
        EXPECT_EQ(out.t, e.t);
    }
}

TEST(Boost, GeneralModeMatchesMultiprecision)
{
    constexpr double pi = std::numbers::pi;
    Complex const c = std::polar(1.0, pi / 6);
    Boost const b = Boost::general({0.4, 0.3}, c, {1.2, 0.3});
    Event const out = boost_forward(b, {{1.0, 0.5}, {2.0, -0.25}});

    Wide const wc = Wide(mp::cpp_bin_float_50(c.real()), mp::cpp_bin_float_50(c.imag()));
    Wide const v(0.4, 0.3);
    Wide const s(1.2, 0.3);
    Wide const z(1.0, 0.5);
    Wide const t(2.0, -0.25);
    Wide const root = mp::sqrt(Wide(1) - v * v / (wc * wc));
    EXPECT_LT(std::abs(out.z - narrow(s * (z - v * t) / root)), 1e-14);
    EXPECT_LT(std::abs(out.t - narrow(s * (t - v * z / (wc * wc)) / root)), 1e-14);
    // frozen independently
    EXPECT_LT(std::abs(out.z - Complex(0.1703056819456298, 0.04973087681467357)), 1e-14);
    EXPECT_LT(std::abs(out.t - Complex(2.0774161432001854, 0.18744570768915305)), 1e-14);
}

TEST(Boost, Option2UsesConjugateCoupling)
{
    Boost const b = Boost::option2({0.3, 0.4});
    EXPECT_EQ(b.beta_sq(), Complex(0.25, 0.0));
    EXPECT_LT(std::abs(b.coupling() - Complex(0.3, -0.4)), 1e-16);
    EXPECT_LT(std::abs(b.invariant_speed() - Complex(0.6, 0.8)), 1e-15);
    EXPECT_LT(std::abs(b.velocity() * b.coupling() - b.beta_sq()), 1e-16);
}

TEST(Boost, BranchPointThrows)
{
    EXPECT_EQ(code_of([] { Boost::option1(1.0); }), ErrorCode::BranchPoint);
    EXPECT_EQ(code_of([] { Boost::option1(-1.0); }), ErrorCode::BranchPoint);
    EXPECT_EQ(code_of([] { Boost::option2({0.6, 0.8}); }), ErrorCode::BranchPoint);
    EXPECT_EQ(code_of([] { Boost::general({0.0, 1.0}, {0.0, 1.0}); }),
              ErrorCode::BranchPoint);
}

TEST(Boost, GaugeRules)
{
    auto const pc = PhysicalConstants::natural();
    EXPECT_EQ(code_of([&] { Boost::make(0.5, BoostMode::Option1RealC, pc, {}, {2.0, 0.0}); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { Boost::general(0.5, 1.0, 0.0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { Boost::general(0.5, 2.0); }), ErrorCode::InvalidArgument);
}

TEST(Boost, ImaginaryVelocityOption1)
{
    // v = i: beta^2 = -1, root = sqrt(2)
    Boost const b = Boost::option1({0.0, 1.0});
    EXPECT_NEAR(std::abs(b.root() - std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_FALSE(b.near_branch_cut());
}

TEST(Boost, SuperluminalRealOption1IsNearCut)
{
    Boost const b = Boost::option1(2.0);
    EXPECT_TRUE(b.near_branch_cut());
    EXPECT_NEAR(std::abs(b.root() - Complex(0.0, std::sqrt(3.0))), 0.0, 1e-15);
}

TEST(Boost, RoundTripSi)
{
    auto const pc = PhysicalConstants::si();
    Boost const b = Boost::option1(Complex(0.3, 0.2) * pc.c_mag, pc);
    Event const e{Complex(1e3, -2e2), Complex(1e-5, 3e-6)};
    Event const back = boost_inverse(b, boost_forward(b, e));
    EXPECT_LT(std::abs(back.z - e.z) / std::abs(e.z), 1e-13);
    EXPECT_LT(std::abs(back.t - e.t) / std::abs(e.t), 1e-13);
}

TEST(VelocityAddition, RealCase)
{
    Boost const b = Boost::option1(0.5);
    EXPECT_NEAR(add_velocities(0.5, b).real(), 0.0, 1e-16);
    EXPECT_NEAR(add_velocities_inv(0.5, b).real(), 0.8, 1e-15);
}

TEST(VelocityAddition, LightSpeedIsFixed)
{
    Boost const b = Boost::general({0.2, 0.7}, std::polar(1.0, 0.4), {0.8, 0.1});
    Complex const c = b.invariant_speed();
    EXPECT_LT(std::abs(add_velocities(c, b) - c), 1e-14);
    EXPECT_LT(std::abs(add_velocities(-c, b) + c), 1e-14);
}

TEST(VelocityAddition, PoleThrows)
{
    Boost const b = Boost::option1(0.5);
    // 1 - kappa u = 0 at u = 2
    EXPECT_EQ(code_of([&] { add_velocities(2.0, b); }), ErrorCode::VelocityPole);
    EXPECT_EQ(code_of([&] { add_velocities_inv(-2.0, b); }), ErrorCode::VelocityPole);
}

TEST(WorldlineTime, Option2SpotValue)
{
    auto const wt = worldline_time(Boost::option2({0.3, 0.4}), 2.0);
    EXPECT_NEAR(wt.t.real(), 1.7320508075688772, 1e-15);
    EXPECT_EQ(wt.t.imag(), 0.0);
    EXPECT_FALSE(wt.superluminal);
}

TEST(WorldlineTime, Option2Superluminal)
{
    auto const wt = worldline_time(Boost::option2({1.2, 1.6}), 1.0);
    EXPECT_TRUE(wt.superluminal);
    EXPECT_NEAR(wt.t.real(), 0.0, 1e-15);
    EXPECT_NEAR(wt.t.imag(), std::sqrt(3.0), 1e-15);
}

TEST(WorldlineTime, Option1ComplexVelocityGivesComplexTime)
{
    auto const wt = worldline_time(Boost::option1({0.3, 0.4}), 2.0);
    EXPECT_GT(std::abs(wt.t.imag()), 0.1);
}

TEST(Boost3d, AxisAlignedMatches1d)
{
    Boost const b = Boost::option1({0.3, 0.1});
    Event3 const e{{Complex(0.5, 0.0), Complex(1.0, 0.2), Complex(2.0, -1.0)}, 0.7};
    Event3 const out = boost3d_forward(b, {1.0, 0.0, 0.0}, e);
    Event const ref = boost_forward(b, {e.z[0], e.t});
    EXPECT_LT(std::abs(out.z[0] - ref.z), 1e-15);
    EXPECT_EQ(out.z[1], e.z[1]);
    EXPECT_EQ(out.z[2], e.z[2]);
    Event3 const back = boost3d_inverse(b, {1.0, 0.0, 0.0}, out);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_LT(std::abs(back.z[i] - e.z[i]), 1e-14);
}

TEST(Boost3d, ComplexDirection)
{
    // n = (cosh a, i sinh a, 0) has n.n = 1
    double const a = 0.3;
    Complex3 const n{std::cosh(a), Complex(0.0, std::sinh(a)), 0.0};
    Boost const b = Boost::option1(0.4);
    Event3 const e{{Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(0.5, 0.5)}, 1.0};
    Event3 const back = boost3d_inverse(b, n, boost3d_forward(b, n, e));
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_LT(std::abs(back.z[i] - e.z[i]), 1e-14);
}

TEST(Boost3d, RejectsOption2AndBadDirection)
{
    Event3 const e{};
    EXPECT_THROW(boost3d_forward(Boost::option2(0.3), {1.0, 0.0, 0.0}, e), Error);
    EXPECT_THROW(boost3d_forward(Boost::option1(0.3), {1.0, 1.0, 0.0}, e), Error);
}

TEST(Composition, RealOption1ComposesExactly)
{
    auto const rep = measure_composition(Boost::option1(0.5), Boost::option1(0.3));
    EXPECT_NEAR(rep.combined_velocity.real(), 0.8 / 1.15, 1e-15);
    EXPECT_LT(std::abs(rep.gauge - 1.0), 1e-14);
    EXPECT_LT(rep.residual, 1e-14);
}

TEST(Composition, RejectsOption2)
{
    EXPECT_THROW(measure_composition(Boost::option2(0.3), Boost::option2(0.2)), Error);
}

TEST(Boost3d, PerpendicularPositionUnchanged)
{
    // z.n = 0 under the bilinear product, so only t moves, as in 1D with z = 0
    double const a = 0.4;
    Complex3 const n{std::cosh(a), Complex(0.0, std::sinh(a)), 0.0};
    Complex3 const z{Complex(0.0, std::sinh(a)), -std::cosh(a), Complex(0.3, 0.2)};
    ASSERT_LT(std::abs(dot(z, n)), 1e-15);
    Boost const b = Boost::general({0.5, 0.3}, std::polar(1.0, 0.2), {1.1, 0.4});
    Event3 const out = boost3d_forward(b, n, {z, Complex(0.7, -0.1)});
    Event const ref = boost_forward(b, {0.0, Complex(0.7, -0.1)});
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_LT(std::abs(out.z[i] - (z[i] + ref.z * n[i])), 1e-15);
    EXPECT_LT(std::abs(out.t - ref.t), 1e-15);
}
