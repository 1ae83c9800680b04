#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccov
{

using Complex = std::complex<double>;

//---------------------------------------------------------------------------//
// Errors
//---------------------------------------------------------------------------//

enum class ErrorCode
{
    NonFinite,        //!< NaN or Inf reached an operation that refuses it
    InvalidArgument,  //!< precondition violated (step size, grid size, ...)
    BranchPoint,      //!< v^2 == c^2, the boost factor is undefined
    VelocityPole,     //!< vanishing denominator of the velocity addition law
    Node,             //!< wavefunction vanishes where its log-derivative is needed
    Defective,        //!< eigenvector residual above tolerance
};

inline constexpr std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::NonFinite: return "non_finite";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::BranchPoint: return "branch_point";
        case ErrorCode::VelocityPole: return "velocity_pole";
        case ErrorCode::Node: return "node";
        case ErrorCode::Defective: return "defective";
    }
    return "unknown";
}

class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

inline bool is_finite(Complex w)
{
    return std::isfinite(w.real()) && std::isfinite(w.imag());
}

inline void require_finite(Complex w, char const* what)
{
    if (!is_finite(w))
    {
        throw Error(ErrorCode::NonFinite, std::string(what) + " is not finite");
    }
}

//---------------------------------------------------------------------------//
// Units and constants
//---------------------------------------------------------------------------//

enum class Units
{
    SI,
    Natural
};

/*!
 * Vacuum light-speed magnitude and reduced Planck constant.
 *
 * Natural units fix both to one. SI defaults are |c| = 299792458 m/s and
 * hbar = 1.054571726e-34 J s; either may be overridden in SI mode.
 */
struct PhysicalConstants
{
    static constexpr double si_c_mag = 299792458.0;
    static constexpr double si_hbar = 1.054571726e-34;

    double c_mag{1.0};
    double hbar{1.0};
    Units units{Units::Natural};

    static constexpr PhysicalConstants natural() { return {1.0, 1.0, Units::Natural}; }
    static constexpr PhysicalConstants si() { return {si_c_mag, si_hbar, Units::SI}; }

    static PhysicalConstants si(double c_mag, double hbar)
    {
        PhysicalConstants pc{c_mag, hbar, Units::SI};
        pc.validate();
        return pc;
    }

    void validate() const
    {
        if (!(c_mag > 0.0) || !std::isfinite(c_mag) || !(hbar > 0.0)
            || !std::isfinite(hbar))
        {
            throw Error(ErrorCode::InvalidArgument,
                        "constants require finite c_mag > 0 and hbar > 0");
        }
        if (units == Units::Natural && (c_mag != 1.0 || hbar != 1.0))
        {
            throw Error(ErrorCode::InvalidArgument,
                        "natural units require c_mag = hbar = 1");
        }
    }

    double c_sq() const { return c_mag * c_mag; }
};

//---------------------------------------------------------------------------//
// Principal square root
//---------------------------------------------------------------------------//

//! Angular distance from the negative real axis below which a root is flagged
inline constexpr double branch_proximity_tol = 1e-9;

struct SqrtResult
{
    Complex value;
    bool near_cut{false};  //!< argument within branch_proximity_tol of the cut
};

/*!
 * Principal square root with the cut on the negative real axis.
 *
 * The result has non-negative real part. Inputs on the cut take the value
 * from the upper half plane, so sqrt(-1) = +i even for a negative-zero
 * imaginary part. The near_cut flag is raised on both sides of the cut.
 */
inline SqrtResult principal_sqrt(Complex w)
{
    require_finite(w, "principal_sqrt argument");
    if (w.imag() == 0.0)
    {
        w = Complex(w.real(), 0.0);
    }
    SqrtResult result;
    result.value = std::sqrt(w);
    result.near_cut = w != Complex(0.0, 0.0)
                      && std::numbers::pi - std::abs(std::arg(w))
                             < branch_proximity_tol;
    return result;
}

//---------------------------------------------------------------------------//
// Wirtinger (holomorphic) differentiation
//---------------------------------------------------------------------------//

using HolomorphicFn = std::function<Complex(Complex)>;

struct HolomorphyReport
{
    double deviation{0};  //!< max pairwise spread of the directional quotients
    double tolerance{0};
    bool holomorphic{true};
};

struct DerivativeEstimate
{
    //! Empty when the directional quotients disagree beyond tolerance
    std::optional<Complex> value;
    HolomorphyReport report;
    std::array<Complex, 3> directional{};
};

//! Default Cauchy-Riemann tolerance, relative to max(1, |estimate|)
inline constexpr double default_holomorphy_tol = 1e-6;

/*!
 * Central-difference derivative of f at z0 along the directions h, i*h and
 * h*exp(i*pi/4), averaged.
 *
 * For holomorphic f all three quotients agree to O(h^2); the largest pairwise
 * difference is reported as a Cauchy-Riemann consistency measure. When it
 * exceeds tol * max(1, |mean|) no value is returned.
 */
inline DerivativeEstimate wirtinger_derivative(HolomorphicFn const& f, Complex z0,
                                               double h,
                                               double tol = default_holomorphy_tol)
{
    if (!(h > 0.0) || !std::isfinite(h))
    {
        throw Error(ErrorCode::InvalidArgument, "derivative step must be positive");
    }
    require_finite(z0, "derivative point");

    Complex const diag = std::polar(h, std::numbers::pi / 4);
    std::array<Complex, 3> const steps{Complex(h, 0.0), Complex(0.0, h), diag};

    DerivativeEstimate est;
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < steps.size(); ++i)
    {
        Complex const d = steps[i];
        est.directional[i] = (f(z0 + d) - f(z0 - d)) / (2.0 * d);
        sum += est.directional[i];
    }
    Complex const mean = sum / 3.0;

    double dev = 0.0;
    for (std::size_t i = 0; i < steps.size(); ++i)
    {
        for (std::size_t j = i + 1; j < steps.size(); ++j)
        {
            dev = std::max(dev, std::abs(est.directional[i] - est.directional[j]));
        }
    }
    est.report.deviation = dev;
    est.report.tolerance = tol * std::max(1.0, std::abs(mean));
    est.report.holomorphic = is_finite(mean) && dev <= est.report.tolerance;
    if (est.report.holomorphic)
    {
        est.value = mean;
    }
    return est;
}

//---------------------------------------------------------------------------//
// Small helpers shared by the physics modules
//---------------------------------------------------------------------------//

using Complex3 = std::array<Complex, 3>;

//! Bilinear (non-conjugating) dot product
inline Complex dot(Complex3 const& a, Complex3 const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

//! |a - b| / max(|b|, floor)
inline double rel_diff(Complex a, Complex b, double floor = 1.0)
{
    return std::abs(a - b) / std::max(std::abs(b), floor);
}

}  // namespace ccov
