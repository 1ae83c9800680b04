#include <ccov/waves.hpp>

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

TEST(PlaneWave, EvaluateMatchesMultiprecision)
{
    PlaneWave const pw(1.0, {2.0, 1.0}, 3.0);
    Complex const psi = evaluate_planewave(pw, {1.0, -1.0}, 0.5);
    Wide const i(0, 1);
    Wide const oracle = mp::exp(i * (Wide(2, 1) * Wide(1, -1) - Wide(3) * Wide(0.5)));
    EXPECT_LT(std::abs(psi - narrow(oracle)), 1e-14);
    EXPECT_LT(std::abs(psi - Complex(0.19228364988935969, 2.7114724960647999)), 1e-14);
}

TEST(PlaneWave, ZeroAmplitudeRejected)
{
    EXPECT_EQ(code_of([] { PlaneWave(0.0, 1.0, 1.0); }), ErrorCode::InvalidArgument);
}

TEST(Phase, InvariantUnderOption1)
{
    Boost const b = Boost::option1({0.6, 0.3});
    WaveFourVector const w{Complex(2.0, -0.5), Complex(1.0, 0.7)};
    Event const e{Complex(0.3, 1.0), Complex(-2.0, 0.4)};
    Complex const p0 = phase(w, e);
    Complex const p1 = phase(transform_wave(b, w), boost_forward(b, e));
    EXPECT_LT(std::abs(p1 - p0), 1e-14);
}

TEST(Phase, InvariantUnderOption2AndGauge)
{
    WaveFourVector const w{Complex(2.0, -0.5), Complex(1.0, 0.7)};
    Event const e{Complex(0.3, 1.0), Complex(-2.0, 0.4)};
    for (Boost const& b : {Boost::option2({1.5, -0.8}),
                           Boost::general({0.4, 0.2}, std::polar(1.0, 1.0), {0.3, 1.7})})
    {
        Complex const p1 = phase(transform_wave(b, w), boost_forward(b, e));
        EXPECT_LT(std::abs(p1 - phase(w, e)), 1e-14);
    }
}

TEST(Extract, PlaneWaveRecoversOmegaK)
{
    PlaneWave const pw({0.5, 0.2}, {2.0, 1.0}, {3.0, -0.2});
    WaveFunction const psi = [&](Complex z, Complex t) { return evaluate_planewave(pw, z, t); };
    auto const local = extract_omega_k(psi, {0.1, 0.2}, 0.3, 1e-4);
    ASSERT_TRUE(local.wave.has_value());
    EXPECT_LT(std::abs(local.wave->k - pw.k()), 1e-7);
    EXPECT_LT(std::abs(local.wave->omega - pw.omega()), 1e-7);
    EXPECT_TRUE(local.holomorphic());
}

TEST(Extract, NodeThrows)
{
    WaveFunction const psi = [](Complex z, Complex) { return z; };
    EXPECT_EQ(code_of([&] { extract_omega_k(psi, 0.0, 0.0, 1e-4); }), ErrorCode::Node);
}

TEST(Extract, NonHolomorphicLeavesWaveEmpty)
{
    WaveFunction const psi = [](Complex z, Complex t) { return std::exp(std::conj(z)) * t; };
    auto const local = extract_omega_k(psi, 0.3, 1.0, 1e-4);
    EXPECT_FALSE(local.wave.has_value());
    EXPECT_FALSE(local.z_report.holomorphic);
    EXPECT_TRUE(local.t_report.holomorphic);
    EXPECT_EQ(code_of([&] {
                  qhjt_momentum_energy(psi, 0.3, 1.0, PhysicalConstants::natural(), 1e-4);
              }),
              ErrorCode::InvalidArgument);
}

TEST(Qhjt, MatchesDeBroglie)
{
    auto const pc = PhysicalConstants::natural();
    PlaneWave const pw(1.0, {0.8, 0.1}, {1.3, 0.05});
    WaveFunction const psi = [&](Complex z, Complex t) { return evaluate_planewave(pw, z, t); };
    auto const fm = qhjt_momentum_energy(psi, 0.0, 0.0, pc, 1e-4);
    auto const ref = de_broglie(pw.four_vector(), pc);
    EXPECT_LT(std::abs(fm.E - ref.E), 1e-7);
    EXPECT_LT(std::abs(fm.p - ref.p), 1e-7);
}

TEST(DeBroglie, SquareCommutes)
{
    auto const pc = PhysicalConstants::si();
    Boost const b = Boost::option1(Complex(0.2, 0.5) * pc.c_mag, pc);
    WaveFourVector const w{Complex(3e15, 1e14), Complex(1e7, -2e6)};
    auto const a = lp_forward(b, de_broglie(w, pc));
    auto const c = de_broglie(transform_wave(b, w), pc);
    EXPECT_LT(std::abs(a.E - c.E) / std::abs(a.E), 1e-14);
    EXPECT_LT(std::abs(a.p - c.p) / std::abs(a.p), 1e-14);
    auto const back = de_broglie_inverse(de_broglie(w, pc), pc);
    EXPECT_LT(std::abs(back.omega - w.omega) / std::abs(w.omega), 1e-15);
}

TEST(Wavelength, Conversions)
{
    EXPECT_NEAR(std::abs(wavenumber_from_wavelength(2.0 * std::numbers::pi) - 1.0), 0.0,
                1e-16);
    EXPECT_NEAR(std::abs(frequency_from_angular(2.0 * std::numbers::pi) - 1.0), 0.0, 1e-16);
    EXPECT_THROW(wavenumber_from_wavelength(0.0), Error);
}

TEST(TransformWave, RoundTrip)
{
    Boost const b = Boost::general({1.3, 0.2}, std::polar(1.0, 0.2), {0.6, -0.2});
    WaveFourVector const w{Complex(0.4, 0.9), Complex(-1.0, 0.3)};
    auto const back = transform_wave_inverse(b, transform_wave(b, w));
    EXPECT_LT(std::abs(back.omega - w.omega), 1e-14);
    EXPECT_LT(std::abs(back.k - w.k), 1e-14);
}
