#pragma once

#include <complex>

#include "core.hpp"
#include "kinematics.hpp"

namespace ccov
{

//! Complex energy (J) and momentum (kg m/s); off-shell values are allowed
struct FourMomentum
{
    Complex E{0.0, 0.0};
    Complex p{0.0, 0.0};
};

//! Complex rest mass (kg); no sign restriction on the imaginary part
struct RestMass
{
    Complex m0{0.0, 0.0};
};

// (E, p) carries the inverse gauge relative to (z, t): the forward map
// divides by s where the event boost multiplies by it.

inline FourMomentum lp_forward(Boost const& b, FourMomentum const& fm)
{
    Complex const scale = 1.0 / (b.gauge() * b.root());
    return {scale * (fm.E - b.velocity() * fm.p), scale * (fm.p - b.coupling() * fm.E)};
}

inline FourMomentum lp_inverse(Boost const& b, FourMomentum const& fm)
{
    Complex const scale = b.gauge() / b.root();
    return {scale * (fm.E + b.velocity() * fm.p), scale * (fm.p + b.coupling() * fm.E)};
}

/*!
 * Energy and momentum of a particle at rest in the boosted frame, seen from
 * the unprimed frame: p = s m0 v / root, E = s m0 c^2 / root.
 *
 * With s = 1 and real inputs this is p = m v, E = m c^2 with the usual
 * relativistic mass.
 */
inline FourMomentum momentum_energy_from_rest(RestMass const& m, Boost const& b)
{
    require_finite(m.m0, "rest mass");
    Complex const scale = b.gauge() * m.m0 / b.root();
    return {scale * b.c_sq(), scale * b.velocity()};
}

/*!
 * Gauge-normalized dispersion invariant (E^2 - p^2 c^2) / (s^2 c^4).
 *
 * Returns m0^2 for anything built by momentum_energy_from_rest with the same
 * s and c^2, and is unchanged by lp_forward.
 */
inline Complex invariant_mass_sq(FourMomentum const& fm, Complex gauge_s, Complex c_sq)
{
    require_finite(fm.E, "energy");
    require_finite(fm.p, "momentum");
    return (fm.E * fm.E - fm.p * fm.p * c_sq) / (gauge_s * gauge_s * c_sq * c_sq);
}

inline Complex invariant_mass_sq(FourMomentum const& fm, Complex gauge_s,
                                 PhysicalConstants const& constants)
{
    return invariant_mass_sq(fm, gauge_s, Complex(constants.c_sq(), 0.0));
}

//! Uses the gauge and c^2 carried by the boost
inline Complex invariant_mass_sq(FourMomentum const& fm, Boost const& b)
{
    return invariant_mass_sq(fm, b.gauge(), b.c_sq());
}

}  // namespace ccov
