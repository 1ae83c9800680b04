#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "core.hpp"

namespace ccov
{

//! Space-time point: complex position and complex time in one inertial frame
struct Event
{
    Complex z{0.0, 0.0};
    Complex t{0.0, 0.0};
};

//! Space-time point with a complex 3-position
struct Event3
{
    Complex3 z{};
    Complex t{0.0, 0.0};
};

/*!
 * How the invariant speed relates to the relative velocity.
 *
 * Option1RealC takes c = +-|c| real, giving analytic transforms and complex
 * worldline times. Option2ConjugateParallel aligns c with v in the complex
 * plane, which introduces v* in the time row and keeps worldline times real
 * below |c|. GeneralComplexC uses an arbitrary complex c of modulus |c|.
 */
enum class BoostMode
{
    Option1RealC,
    Option2ConjugateParallel,
    GeneralComplexC
};

inline constexpr std::string_view to_string(BoostMode mode)
{
    switch (mode)
    {
        case BoostMode::Option1RealC: return "option1";
        case BoostMode::Option2ConjugateParallel: return "option2";
        case BoostMode::GeneralComplexC: return "general";
    }
    return "unknown";
}

//! |1 - v^2/c^2| at or below this is treated as the branch point itself
inline constexpr double branch_point_tol = 1e-14;

//! |1 - (v/c^2) u| at or below this is a pole of the addition law
inline constexpr double velocity_pole_tol = 1e-14;

//! Relative mismatch allowed between |c| and c_mag in general mode
inline constexpr double c_modulus_tol = 1e-12;

/*!
 * Gamma product 1/(1 - v^2/c^2).
 *
 * Throws BranchPoint when v^2 = c^2.
 */
inline Complex gamma_product(Complex v, Complex c)
{
    require_finite(v, "velocity");
    require_finite(c, "invariant speed");
    if (c == Complex(0.0, 0.0))
    {
        throw Error(ErrorCode::InvalidArgument, "invariant speed must be nonzero");
    }
    Complex const ratio = v / c;
    Complex const denom = 1.0 - ratio * ratio;
    if (std::abs(denom) <= branch_point_tol)
    {
        throw Error(ErrorCode::BranchPoint, "boost undefined at v^2 = c^2");
    }
    return 1.0 / denom;
}

/*!
 * Collinear boost between two complexified inertial frames.
 *
 * Every mode is reduced to the same three numbers: the squared reduced
 * velocity beta_sq (v^2/c^2, or |v/c|^2 for Option 2), the time-row coupling
 * kappa (v/c^2, or conj(v)/|c|^2 for Option 2) and the gauge factor s. The boost
 * then reads
 *
 *   z' = s (z - v t) / sqrt(1 - beta_sq),  t' = s (t - kappa z) / sqrt(1 - beta_sq)
 *
 * with the principal square root. v * kappa == beta_sq in every mode.
 */
class Boost
{
  public:
    static Boost option1(Complex v,
                         PhysicalConstants constants = PhysicalConstants::natural())
    {
        return Boost(v, BoostMode::Option1RealC, Complex(constants.c_mag, 0.0),
                     Complex(1.0, 0.0), constants);
    }

    static Boost option2(Complex v,
                         PhysicalConstants constants = PhysicalConstants::natural())
    {
        Complex c(constants.c_mag, 0.0);
        if (std::abs(v) > 0.0)
        {
            c = constants.c_mag * v / std::abs(v);
        }
        return Boost(v, BoostMode::Option2ConjugateParallel, c, Complex(1.0, 0.0),
                     constants);
    }

    static Boost general(Complex v, Complex c, Complex gauge_s = {1.0, 0.0},
                         PhysicalConstants constants = PhysicalConstants::natural())
    {
        return Boost(v, BoostMode::GeneralComplexC, c, gauge_s, constants);
    }

    //! Dispatch on mode; c is only consulted in general mode (default +|c|)
    static Boost make(Complex v, BoostMode mode, PhysicalConstants constants,
                      std::optional<Complex> c = std::nullopt,
                      Complex gauge_s = {1.0, 0.0})
    {
        switch (mode)
        {
            case BoostMode::Option1RealC:
                require_unit_gauge(gauge_s);
                return option1(v, constants);
            case BoostMode::Option2ConjugateParallel:
                require_unit_gauge(gauge_s);
                return option2(v, constants);
            case BoostMode::GeneralComplexC:
                break;
        }
        return general(v, c.value_or(Complex(constants.c_mag, 0.0)), gauge_s,
                       constants);
    }

    Complex velocity() const { return v_; }
    BoostMode mode() const { return mode_; }
    Complex gauge() const { return s_; }
    PhysicalConstants const& constants() const { return constants_; }

    //! Invariant speed c (for Option 2 the value parallel to v)
    Complex invariant_speed() const { return c_; }

    /*!
     * The c^2 that pairs with this boost in c-weighted quantities (E = m c^2,
     * E^2 - (pc)^2). Equals v / kappa whenever v != 0.
     */
    Complex c_sq() const { return c_sq_; }

    Complex beta_sq() const { return beta_sq_; }
    Complex coupling() const { return kappa_; }

    //! gamma * gamma-bar = 1 / (1 - beta_sq)
    Complex gamma_product() const { return 1.0 / (1.0 - beta_sq_); }

    //! Principal sqrt(1 - beta_sq)
    Complex root() const { return root_.value; }

    bool near_branch_cut() const { return root_.near_cut; }

    //! Option 2 with |v| > |c|: worldline times pick up an imaginary factor
    bool superluminal() const
    {
        return mode_ == BoostMode::Option2ConjugateParallel
               && std::abs(v_) > constants_.c_mag;
    }

  private:
    Boost(Complex v, BoostMode mode, Complex c, Complex gauge_s,
          PhysicalConstants constants)
        : v_(v), mode_(mode), c_(c), s_(gauge_s), constants_(constants)
    {
        constants_.validate();
        require_finite(v, "velocity");
        require_finite(c, "invariant speed");
        require_finite(gauge_s, "gauge factor");
        if (gauge_s == Complex(0.0, 0.0))
        {
            throw Error(ErrorCode::InvalidArgument, "gauge factor must be nonzero");
        }
        double const c_mag = constants_.c_mag;
        switch (mode_)
        {
            case BoostMode::Option1RealC:
                c_sq_ = Complex(c_mag * c_mag, 0.0);
                kappa_ = v_ / c_sq_;
                beta_sq_ = v_ * v_ / c_sq_;
                break;
            case BoostMode::Option2ConjugateParallel:
                kappa_ = std::conj(v_) / (c_mag * c_mag);
                beta_sq_ = Complex(std::norm(v_) / (c_mag * c_mag), 0.0);
                c_sq_ = c_ * c_;
                break;
            case BoostMode::GeneralComplexC:
                if (std::abs(std::abs(c_) - c_mag) > c_modulus_tol * c_mag)
                {
                    throw Error(ErrorCode::InvalidArgument,
                                "general-mode |c| must equal the vacuum light speed");
                }
                c_sq_ = c_ * c_;
                kappa_ = v_ / c_sq_;
                beta_sq_ = v_ * v_ / c_sq_;
                break;
        }
        if (std::abs(1.0 - beta_sq_) <= branch_point_tol)
        {
            throw Error(ErrorCode::BranchPoint, "boost undefined at v^2 = c^2");
        }
        root_ = principal_sqrt(1.0 - beta_sq_);
    }

    static void require_unit_gauge(Complex s)
    {
        if (s != Complex(1.0, 0.0))
        {
            throw Error(ErrorCode::InvalidArgument,
                        "option1 and option2 boosts fix the gauge factor to 1");
        }
    }

    Complex v_;
    BoostMode mode_;
    Complex c_;
    Complex s_;
    PhysicalConstants constants_;
    Complex c_sq_{1.0, 0.0};
    Complex kappa_{0.0, 0.0};
    Complex beta_sq_{0.0, 0.0};
    SqrtResult root_{};
};

inline Complex gamma_product(Boost const& b)
{
    return b.gamma_product();
}

//---------------------------------------------------------------------------//
// Event transforms
//---------------------------------------------------------------------------//

inline Event boost_forward(Boost const& b, Event const& e)
{
    Complex const scale = b.gauge() / b.root();
    return {scale * (e.z - b.velocity() * e.t), scale * (e.t - b.coupling() * e.z)};
}

inline Event boost_inverse(Boost const& b, Event const& e)
{
    Complex const scale = 1.0 / (b.gauge() * b.root());
    return {scale * (e.z + b.velocity() * e.t), scale * (e.t + b.coupling() * e.z)};
}

//---------------------------------------------------------------------------//
// Velocity addition
//---------------------------------------------------------------------------//

//! Velocity u seen from the boosted frame: (u - v) / (1 - kappa u)
inline Complex add_velocities(Complex u, Boost const& b)
{
    require_finite(u, "velocity");
    Complex const denom = 1.0 - b.coupling() * u;
    if (std::abs(denom) <= velocity_pole_tol)
    {
        throw Error(ErrorCode::VelocityPole, "velocity addition denominator vanishes");
    }
    return (u - b.velocity()) / denom;
}

//! Inverse law: (u' + v) / (1 + kappa u')
inline Complex add_velocities_inv(Complex u_prime, Boost const& b)
{
    require_finite(u_prime, "velocity");
    Complex const denom = 1.0 + b.coupling() * u_prime;
    if (std::abs(denom) <= velocity_pole_tol)
    {
        throw Error(ErrorCode::VelocityPole, "velocity addition denominator vanishes");
    }
    return (u_prime + b.velocity()) / denom;
}

//---------------------------------------------------------------------------//
// Worldline time
//---------------------------------------------------------------------------//

struct WorldlineTime
{
    Complex t;
    //! Option 2 beyond |c|: the time factor is imaginary
    bool superluminal{false};
};

/*!
 * Proper time of the moving origin: t' for the event (v t, t).
 *
 * Reduces to t * sqrt(1 - beta_sq) times the gauge factor, which is complex
 * for complex v in Option 1 and real for |v| < |c| in Option 2.
 */
inline WorldlineTime worldline_time(Boost const& b, Complex t)
{
    require_finite(t, "time");
    return {b.gauge() * t * b.root(), b.superluminal()};
}

//---------------------------------------------------------------------------//
// Collinear 3D extension
//---------------------------------------------------------------------------//

//! Tolerance on n.n = 1 for boost directions
inline constexpr double direction_norm_tol = 1e-12;

namespace detail
{
inline void require_3d_boost(Boost const& b, Complex3 const& n)
{
    if (b.mode() == BoostMode::Option2ConjugateParallel)
    {
        throw Error(ErrorCode::InvalidArgument,
                    "three-dimensional option2 boosts are not defined");
    }
    for (Complex c : n)
    {
        require_finite(c, "boost direction");
    }
    if (std::abs(dot(n, n) - 1.0) > direction_norm_tol)
    {
        throw Error(ErrorCode::InvalidArgument,
                    "boost direction must satisfy n.n = 1 (bilinear)");
    }
}

template<class Transform1D>
Event3 boost3d(Boost const& b, Complex3 const& n, Event3 const& e, Transform1D&& f)
{
    require_3d_boost(b, n);
    Complex const along = dot(e.z, n);
    Event const moved = f(b, Event{along, e.t});
    Event3 out;
    for (std::size_t i = 0; i < 3; ++i)
    {
        // perpendicular part is kept, parallel part replaced
        out.z[i] = e.z[i] - along * n[i] + moved.z * n[i];
    }
    out.t = moved.t;
    return out;
}
}  // namespace detail

/*!
 * Boost along a complex direction n with n.n = 1 (bilinear product).
 *
 * The position splits into (z.n) n and the remainder; only the parallel
 * part and t are transformed. Option 2 boosts are rejected.
 */
inline Event3 boost3d_forward(Boost const& b, Complex3 const& n, Event3 const& e)
{
    return detail::boost3d(b, n, e, [](Boost const& bb, Event const& ev) {
        return boost_forward(bb, ev);
    });
}

inline Event3 boost3d_inverse(Boost const& b, Complex3 const& n, Event3 const& e)
{
    return detail::boost3d(b, n, e, [](Boost const& bb, Event const& ev) {
        return boost_inverse(bb, ev);
    });
}

//---------------------------------------------------------------------------//
// Composition of collinear boosts
//---------------------------------------------------------------------------//

struct CompositionReport
{
    Complex combined_velocity;  //!< add_velocities_inv(v2 under boost v1)
    Complex gauge;              //!< factor relating the product to a single boost
    double residual{0};         //!< what the gauge factor fails to absorb
};

/*!
 * Compare "boost by b1, then by b2" with a single unit-gauge boost.
 *
 * Both boosts must share mode, invariant speed and constants; Option 2 is
 * excluded because its coupling depends on the direction of each velocity.
 * The best gauge factor is fitted on the image of (0, 1); the residual is the
 * relative mismatch on both basis events.
 */
inline CompositionReport measure_composition(Boost const& b1, Boost const& b2)
{
    if (b1.mode() != b2.mode() || b1.mode() == BoostMode::Option2ConjugateParallel
        || b1.invariant_speed() != b2.invariant_speed())
    {
        throw Error(ErrorCode::InvalidArgument,
                    "composition needs two option1 or general boosts with equal c");
    }
    CompositionReport rep;
    rep.combined_velocity = add_velocities_inv(b2.velocity(), b1);
    Boost const single = Boost::make(rep.combined_velocity, b1.mode(), b1.constants(),
                                     b1.invariant_speed());

    std::array<Event, 2> const basis{Event{{1.0, 0.0}, {0.0, 0.0}},
                                     Event{{0.0, 0.0}, {1.0, 0.0}}};
    std::array<Event, 2> chained{};
    std::array<Event, 2> direct{};
    for (std::size_t i = 0; i < 2; ++i)
    {
        chained[i] = boost_forward(b2, boost_forward(b1, basis[i]));
        direct[i] = boost_forward(single, basis[i]);
    }
    rep.gauge = chained[1].t / direct[1].t;
    for (std::size_t i = 0; i < 2; ++i)
    {
        double const scale
            = std::max(std::abs(chained[i].z), std::abs(chained[i].t));
        double const dz = std::abs(chained[i].z - rep.gauge * direct[i].z);
        double const dt = std::abs(chained[i].t - rep.gauge * direct[i].t);
        rep.residual = std::max(rep.residual, std::max(dz, dt) / scale);
    }
    return rep;
}

}  // namespace ccov
