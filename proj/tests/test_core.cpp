#include <ccov/core.hpp>

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <limits>

using namespace ccov;
namespace mp = boost::multiprecision;
using Wide = mp::cpp_complex_50;

namespace
{
Complex narrow(Wide const& w)
{
    return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}
}  // namespace

TEST(Constants, SiValuesAreExact)
{
    auto const pc = PhysicalConstants::si();
    EXPECT_EQ(pc.c_mag, 299792458.0);
    EXPECT_EQ(pc.hbar, 1.054571726e-34);
    EXPECT_EQ(pc.units, Units::SI);
}

TEST(Constants, NaturalIsUnity)
{
    auto const pc = PhysicalConstants::natural();
    EXPECT_EQ(pc.c_mag, 1.0);
    EXPECT_EQ(pc.hbar, 1.0);
    EXPECT_EQ(pc.c_sq(), 1.0);
}

TEST(Constants, RejectsNonPositive)
{
    EXPECT_THROW(PhysicalConstants::si(0.0, 1.0), Error);
    EXPECT_THROW(PhysicalConstants::si(1.0, -1.0), Error);
}

TEST(PrincipalSqrt, MatchesMultiprecision)
{
    Complex const w(1.07, -0.24);
    Wide const oracle = mp::sqrt(Wide(1.07, -0.24));
    auto const r = principal_sqrt(w);
    EXPECT_LT(std::abs(r.value - narrow(oracle)), 1e-15);
    // frozen independently: 1.0408135303629237 - 0.1152944273871583i
    EXPECT_NEAR(r.value.real(), 1.0408135303629237, 1e-15);
    EXPECT_NEAR(r.value.imag(), -0.1152944273871583, 1e-15);
    EXPECT_FALSE(r.near_cut);
}

TEST(PrincipalSqrt, NegativeZeroTakesUpperSide)
{
    EXPECT_EQ(principal_sqrt(Complex(-4.0, -0.0)).value, Complex(0.0, 2.0));
    EXPECT_EQ(principal_sqrt(Complex(-4.0, 0.0)).value, Complex(0.0, 2.0));
    EXPECT_TRUE(principal_sqrt(Complex(-4.0, 0.0)).near_cut);
}

TEST(PrincipalSqrt, FlagsBothSidesOfCut)
{
    EXPECT_TRUE(principal_sqrt(Complex(-1.0, 1e-12)).near_cut);
    EXPECT_TRUE(principal_sqrt(Complex(-1.0, -1e-12)).near_cut);
    EXPECT_FALSE(principal_sqrt(Complex(-1.0, 1e-6)).near_cut);
    EXPECT_FALSE(principal_sqrt(Complex(0.0, 0.0)).near_cut);
}

TEST(PrincipalSqrt, NonNegativeRealPart)
{
    for (double a = -3.0; a <= 3.0; a += 0.25)
        for (double b = -3.0; b <= 3.0; b += 0.25)
            EXPECT_GE(principal_sqrt(Complex(a, b)).value.real(), 0.0);
}

TEST(PrincipalSqrt, RejectsNonFinite)
{
    double const nan = std::numeric_limits<double>::quiet_NaN();
    try
    {
        principal_sqrt(Complex(nan, 0.0));
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::NonFinite);
    }
}

TEST(Wirtinger, HolomorphicExp)
{
    Complex const z0(0.3, -0.7);
    auto const d = wirtinger_derivative([](Complex z) { return std::exp(z); }, z0, 1e-4);
    ASSERT_TRUE(d.value.has_value());
    EXPECT_LT(std::abs(*d.value - std::exp(z0)), 1e-8);
    EXPECT_TRUE(d.report.holomorphic);
}

TEST(Wirtinger, ConjugateIsRejected)
{
    auto const d = wirtinger_derivative([](Complex z) { return std::conj(z); }, {0.5, 0.5},
                                        1e-4);
    EXPECT_FALSE(d.value.has_value());
    EXPECT_FALSE(d.report.holomorphic);
    // quotients along h, ih, h e^{i pi/4} are 1, -1, -i
    EXPECT_NEAR(d.report.deviation, 2.0, 1e-12);
}

TEST(Wirtinger, SecondOrderInStep)
{
    Complex const z0(0.2, 0.1);
    auto f = [](Complex z) { return std::sin(z) * z; };
    Complex const exact = std::cos(z0) * z0 + std::sin(z0);
    // directional spread is O(h^2) too, so loosen the holomorphy gate
    auto const d1 = wirtinger_derivative(f, z0, 1e-2, 1e-2);
    auto const d2 = wirtinger_derivative(f, z0, 5e-3, 1e-2);
    ASSERT_TRUE(d1.value && d2.value);
    double const e1 = std::abs(*d1.value - exact);
    double const e2 = std::abs(*d2.value - exact);
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.1);
}

TEST(Wirtinger, RejectsBadStep)
{
    auto f = [](Complex z) { return z; };
    EXPECT_THROW(wirtinger_derivative(f, 0.0, 0.0), Error);
    EXPECT_THROW(wirtinger_derivative(f, 0.0, -1.0), Error);
}

TEST(Helpers, BilinearDotHasNoConjugate)
{
    Complex3 const a{Complex(0.0, 1.0), 0.0, 0.0};
    EXPECT_EQ(dot(a, a), Complex(-1.0, 0.0));
}

TEST(Helpers, RelDiffFloor)
{
    EXPECT_DOUBLE_EQ(rel_diff(1e-20, 0.0), 1e-20);
    EXPECT_DOUBLE_EQ(rel_diff(100.0, 101.0), 1.0 / 101.0);
}
