#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>

#include "core.hpp"
#include "dynamics.hpp"
#include "kinematics.hpp"

namespace ccov
{

struct WaveFourVector
{
    Complex omega{0.0, 0.0};  //!< angular frequency (1/s)
    Complex k{0.0, 0.0};      //!< wave number (1/m)
};

//! amp * exp(i (k z - omega t))
class PlaneWave
{
  public:
    PlaneWave(Complex amp, Complex k, Complex omega) : amp_(amp), k_(k), omega_(omega)
    {
        require_finite(amp, "amplitude");
        require_finite(k, "wave number");
        require_finite(omega, "angular frequency");
        if (amp == Complex(0.0, 0.0))
        {
            throw Error(ErrorCode::InvalidArgument, "plane-wave amplitude must be nonzero");
        }
    }

    PlaneWave(Complex amp, WaveFourVector const& w) : PlaneWave(amp, w.k, w.omega) {}

    Complex amp() const { return amp_; }
    Complex k() const { return k_; }
    Complex omega() const { return omega_; }
    WaveFourVector four_vector() const { return {omega_, k_}; }

  private:
    Complex amp_;
    Complex k_;
    Complex omega_;
};

//! Complex phase k z - omega t
inline Complex phase(WaveFourVector const& w, Event const& e)
{
    return w.k * e.z - w.omega * e.t;
}

inline Complex evaluate_planewave(PlaneWave const& pw, Complex z, Complex t)
{
    Complex const i(0.0, 1.0);
    return pw.amp() * std::exp(i * (pw.k() * z - pw.omega() * t));
}

//---------------------------------------------------------------------------//
// Local frequency and wave number from a wavefunction
//---------------------------------------------------------------------------//

using WaveFunction = std::function<Complex(Complex z, Complex t)>;

//! Below this modulus the wavefunction is treated as a node
inline constexpr double node_threshold = 1e-300;

struct LocalWave
{
    //! Empty when either derivative failed its Cauchy-Riemann check
    std::optional<WaveFourVector> wave;
    HolomorphyReport z_report;
    HolomorphyReport t_report;

    bool holomorphic() const { return z_report.holomorphic && t_report.holomorphic; }
};

/*!
 * omega = +i (d psi/dt) / psi and k = -i (d psi/dz) / psi at (z0, t0).
 *
 * Both derivatives are holomorphic central differences; the ratio form avoids
 * complex-log branch cuts. Throws Node when |psi(z0, t0)| < 1e-300. A
 * failed Cauchy-Riemann check leaves wave empty; the reports say which
 * variable failed.
 */
inline LocalWave extract_omega_k(WaveFunction const& psi, Complex z0, Complex t0,
                                 double h, double tol = default_holomorphy_tol)
{
    Complex const psi0 = psi(z0, t0);
    require_finite(psi0, "wavefunction value");
    if (std::abs(psi0) < node_threshold)
    {
        throw Error(ErrorCode::Node, "wavefunction vanishes at the evaluation point");
    }
    auto const dz = wirtinger_derivative([&](Complex z) { return psi(z, t0); }, z0, h,
                                         tol);
    auto const dt = wirtinger_derivative([&](Complex t) { return psi(z0, t); }, t0, h,
                                         tol);
    LocalWave out;
    out.z_report = dz.report;
    out.t_report = dt.report;
    if (dz.value && dt.value)
    {
        Complex const i(0.0, 1.0);
        out.wave = WaveFourVector{i * *dt.value / psi0, -i * *dz.value / psi0};
    }
    return out;
}

//---------------------------------------------------------------------------//
// de Broglie relations
//---------------------------------------------------------------------------//

inline FourMomentum de_broglie(WaveFourVector const& w, PhysicalConstants const& pc)
{
    return {pc.hbar * w.omega, pc.hbar * w.k};
}

inline WaveFourVector de_broglie_inverse(FourMomentum const& fm, PhysicalConstants const& pc)
{
    return {fm.E / pc.hbar, fm.p / pc.hbar};
}

//! k = 2 pi / lambda
inline Complex wavenumber_from_wavelength(Complex lambda)
{
    require_finite(lambda, "wavelength");
    if (lambda == Complex(0.0, 0.0))
    {
        throw Error(ErrorCode::InvalidArgument, "wavelength must be nonzero");
    }
    return 2.0 * std::numbers::pi / lambda;
}

//! f = omega / (2 pi)
inline Complex frequency_from_angular(Complex omega)
{
    return omega / (2.0 * std::numbers::pi);
}

//---------------------------------------------------------------------------//
// Phase-covariant (omega, k) transforms
//---------------------------------------------------------------------------//

// Same matrix as lp_forward/lp_inverse: the phase k z - omega t is invariant
// only if (omega, k) moves with the inverse gauge of (z, t).

inline WaveFourVector transform_wave(Boost const& b, WaveFourVector const& w)
{
    Complex const scale = 1.0 / (b.gauge() * b.root());
    return {scale * (w.omega - b.velocity() * w.k), scale * (w.k - b.coupling() * w.omega)};
}

inline WaveFourVector transform_wave_inverse(Boost const& b, WaveFourVector const& w)
{
    Complex const scale = b.gauge() / b.root();
    return {scale * (w.omega + b.velocity() * w.k), scale * (w.k + b.coupling() * w.omega)};
}

//! Local (E, p) = hbar (omega, k); throws InvalidArgument if psi is not holomorphic
inline FourMomentum qhjt_momentum_energy(WaveFunction const& psi, Complex z0, Complex t0,
                                         PhysicalConstants const& pc, double h,
                                         double tol = default_holomorphy_tol)
{
    auto const local = extract_omega_k(psi, z0, t0, h, tol);
    if (!local.wave)
    {
        throw Error(ErrorCode::InvalidArgument,
                    "wavefunction is not holomorphic at the evaluation point");
    }
    return de_broglie(*local.wave, pc);
}

}  // namespace ccov
