#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "dynamics.hpp"
#include "kinematics.hpp"
#include "rqm.hpp"
#include "waves.hpp"

namespace ccov::verify
{

//---------------------------------------------------------------------------//
// Reports
//---------------------------------------------------------------------------//

struct CheckLine
{
    std::string identity;
    double max_deviation{0};
    double tolerance{0};
    std::size_t samples{0};
    bool passed{true};
    bool informational{false};  //!< measured and reported, never fails the suite
};

struct SuiteReport
{
    std::string suite;
    std::vector<CheckLine> lines;
    std::vector<std::pair<std::string, double>> table;  //!< optional (label, value) rows

    bool passed() const
    {
        return std::all_of(lines.begin(), lines.end(), [](CheckLine const& l) {
            return l.passed || l.informational;
        });
    }
};

//! Accumulates the worst deviation of one identity across samples
class Tracker
{
  public:
    Tracker(std::string identity, double tolerance)
        : line_{std::move(identity), 0.0, tolerance, 0, true, false}
    {
    }

    void add(double deviation)
    {
        ++line_.samples;
        // NaN counts as failure
        if (!(deviation <= line_.tolerance))
        {
            line_.passed = false;
        }
        if (std::isnan(deviation) || deviation > line_.max_deviation)
        {
            line_.max_deviation = deviation;
        }
    }

    void fail()
    {
        ++line_.samples;
        line_.passed = false;
        line_.max_deviation = std::numeric_limits<double>::infinity();
    }

    CheckLine const& line() const { return line_; }

  private:
    CheckLine line_;
};

//---------------------------------------------------------------------------//
// Seeded sampling
//---------------------------------------------------------------------------//

class Sampler
{
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    //! Uniform in the disk |w| <= radius
    Complex disk(double radius)
    {
        double const r = radius * std::sqrt(uniform(0.0, 1.0));
        return std::polar(r, uniform(-std::numbers::pi, std::numbers::pi));
    }

    Complex phase() { return std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi)); }

    //! Gauge factor with |s| in [0.5, 2]
    Complex gauge() { return std::polar(uniform(0.5, 2.0), uniform(-std::numbers::pi, std::numbers::pi)); }

    /*!
     * Reduced velocity beta with |beta| <= 2 and |beta_sq - 1| > 0.01, where
     * beta_sq is beta^2 or |beta|^2 depending on whether the mode conjugates.
     */
    Complex reduced_velocity(bool conjugating)
    {
        while (true)
        {
            Complex const b = disk(2.0);
            Complex const bsq = conjugating ? Complex(std::norm(b), 0.0) : b * b;
            if (std::abs(bsq - 1.0) > 0.01)
                return b;
        }
    }

    BoostMode mode(std::size_t i) const
    {
        constexpr BoostMode modes[] = {BoostMode::Option1RealC,
                                       BoostMode::Option2ConjugateParallel,
                                       BoostMode::GeneralComplexC};
        return modes[i % 3];
    }

    //! Random boost in the given mode; general mode also draws c's phase and s
    Boost boost(BoostMode mode, PhysicalConstants const& pc, bool with_gauge = true)
    {
        bool const conj = mode == BoostMode::Option2ConjugateParallel;
        Complex const beta = reduced_velocity(conj);
        if (mode != BoostMode::GeneralComplexC)
        {
            return Boost::make(beta * pc.c_mag, mode, pc);
        }
        Complex const c = pc.c_mag * phase();
        Complex const s = with_gauge ? gauge() : Complex(1.0, 0.0);
        return Boost::general(beta * c, c, s, pc);
    }

  private:
    std::mt19937_64 rng_;
};

//---------------------------------------------------------------------------//
// Suites
//---------------------------------------------------------------------------//

struct CheckOptions
{
    std::uint64_t seed{42};
    std::optional<std::size_t> samples;  //!< per-suite default when empty
    int steps{4};                        //!< refinement levels for grid studies

    std::size_t samples_or(std::size_t fallback) const { return samples.value_or(fallback); }
};

inline double event_deviation(Event const& a, Event const& b)
{
    double const scale = std::max({std::abs(b.z), std::abs(b.t), 1e-300});
    return std::max(std::abs(a.z - b.z), std::abs(a.t - b.t)) / scale;
}

//! Constants as configured in SI mode
inline SuiteReport constants_suite()
{
    SuiteReport rep{"constants", {}, {}};
    auto const si = PhysicalConstants::si();
    Tracker c("SI |c| == 299792458 m/s", 0.0);
    c.add(std::abs(si.c_mag - 299792458.0));
    Tracker h("SI hbar == 1.054571726e-34 J s", 0.0);
    h.add(std::abs(si.hbar - 1.054571726e-34));
    auto const nat = PhysicalConstants::natural();
    Tracker n("natural c == hbar == 1", 0.0);
    n.add(std::max(std::abs(nat.c_mag - 1.0), std::abs(nat.hbar - 1.0)));
    rep.lines = {c.line(), h.line(), n.line()};
    rep.table = {{"c_mag", si.c_mag}, {"hbar", si.hbar}};
    return rep;
}

/*!
 * Boost identity and inverse over all modes, plus the addition law read off
 * boosted worldlines, gauge independence of velocities, and the measured
 * (not asserted) composition gauge residual.
 */
inline SuiteReport inverse_suite(CheckOptions const& opt)
{
    SuiteReport rep{"inverse", {}, {}};
    Sampler rng(opt.seed);
    auto const pc = PhysicalConstants::natural();
    std::size_t const n = opt.samples_or(10000);

    Tracker identity("boost(v=0) == identity", 1e-15);
    Tracker inverse("boost_inverse(boost_forward(e)) == e", 1e-11);
    Tracker addition("z'/t' == add_velocities(z/t)", 1e-11);
    Tracker gauge_free("z'/t' independent of gauge s", 1e-11);
    Tracker vel_inverse("add_velocities_inv(add_velocities(u)) == u", 1e-11);
    Tracker composition("composition residual beyond gauge (general mode)", 0.0);

    for (std::size_t i = 0; i < n; ++i)
    {
        BoostMode const mode = rng.mode(i);
        Event const e{rng.disk(2.0), rng.disk(2.0)};

        Boost const zero = Boost::make(0.0, mode, pc, pc.c_mag * rng.phase());
        identity.add(event_deviation(boost_forward(zero, e), e));

        Boost const b = rng.boost(mode, pc);
        inverse.add(event_deviation(boost_inverse(b, boost_forward(b, e)), e));

        // worldline z = u t through the origin
        Complex const u = rng.disk(0.9) * pc.c_mag;
        Complex const t = rng.disk(2.0);
        try
        {
            Event const moved = boost_forward(b, Event{u * t, t});
            Complex const u_prime = add_velocities(u, b);
            addition.add(rel_diff(moved.z / moved.t, u_prime));
            vel_inverse.add(rel_diff(add_velocities_inv(u_prime, b), u));
        }
        catch (Error const& err)
        {
            if (err.code() != ErrorCode::VelocityPole)
                throw;
        }

        if (mode == BoostMode::GeneralComplexC)
        {
            Boost const unit = Boost::general(b.velocity(), b.invariant_speed(), 1.0, pc);
            Event const a = boost_forward(b, e);
            Event const c = boost_forward(unit, e);
            gauge_free.add(rel_diff(a.z / a.t, c.z / c.t));

            try
            {
                Boost const b2 = Boost::general(rng.reduced_velocity(false) * b.invariant_speed(),
                                                b.invariant_speed(), 1.0, pc);
                Boost const b1 = Boost::general(b.velocity(), b.invariant_speed(), 1.0, pc);
                composition.add(measure_composition(b1, b2).residual);
            }
            catch (Error const&)
            {
                // combined velocity on the branch locus: nothing to measure
            }
        }
    }
    CheckLine comp = composition.line();
    comp.informational = true;
    rep.lines = {identity.line(), inverse.line(), addition.line(), vel_inverse.line(),
                 gauge_free.line(), comp};
    return rep;
}

//! add_velocities(+-c) == +-c for Option 1 and general boosts
inline SuiteReport fixedpoints_suite(CheckOptions const& opt)
{
    SuiteReport rep{"fixedpoints", {}, {}};
    Sampler rng(opt.seed);
    auto const pc = PhysicalConstants::natural();
    std::size_t const n = opt.samples_or(10000);
    Tracker plus("add_velocities(+c) == +c", 1e-12);
    Tracker minus("add_velocities(-c) == -c", 1e-12);
    Tracker plus_inv("add_velocities_inv(+c) == +c", 1e-12);
    Tracker minus_inv("add_velocities_inv(-c) == -c", 1e-12);
    for (std::size_t i = 0; i < n; ++i)
    {
        BoostMode const mode = i % 2 == 0 ? BoostMode::Option1RealC : BoostMode::GeneralComplexC;
        Boost const b = rng.boost(mode, pc);
        Complex const c = b.invariant_speed();
        plus.add(rel_diff(add_velocities(c, b), c));
        minus.add(rel_diff(add_velocities(-c, b), -c));
        plus_inv.add(rel_diff(add_velocities_inv(c, b), c));
        minus_inv.add(rel_diff(add_velocities_inv(-c, b), -c));
    }
    rep.lines = {plus.line(), minus.line(), plus_inv.line(), minus_inv.line()};
    return rep;
}

/*!
 * Plane-wave phase invariance k z - omega t == k' z' - omega' t' over all
 * modes, and the de Broglie square (transform then quantize == quantize
 * then Lorentz-Planck). Phase deviations are relative to
 * max(1, |k z| + |omega t|).
 */
inline SuiteReport phase_suite(CheckOptions const& opt)
{
    SuiteReport rep{"phase", {}, {}};
    Sampler rng(opt.seed);
    std::size_t const n = opt.samples_or(10000);
    Tracker phase_line("k z - omega t invariant", 1e-11);
    Tracker square("de Broglie square commutes", 1e-13);
    Tracker wave_inverse("transform_wave_inverse(transform_wave(w)) == w", 1e-11);
    for (std::size_t i = 0; i < n; ++i)
    {
        auto const pc = i % 2 == 0 ? PhysicalConstants::natural() : PhysicalConstants::si();
        Boost const b = rng.boost(rng.mode(i), pc);
        // scale wave numbers and events so phases stay O(1-10) in either unit system
        WaveFourVector const w{rng.disk(5.0) * pc.c_mag, rng.disk(5.0)};
        Event const e{rng.disk(2.0), rng.disk(2.0) / pc.c_mag};

        Complex const before = phase(w, e);
        Complex const after = phase(transform_wave(b, w), boost_forward(b, e));
        double const scale = std::max(1.0, std::abs(w.k * e.z) + std::abs(w.omega * e.t));
        phase_line.add(std::abs(after - before) / scale);

        FourMomentum const via_wave = de_broglie(transform_wave(b, w), pc);
        FourMomentum const via_lp = lp_forward(b, de_broglie(w, pc));
        double const fm_scale
            = std::max({std::abs(via_lp.E), std::abs(via_lp.p) * pc.c_mag, 1e-300});
        square.add(std::max(std::abs(via_wave.E - via_lp.E),
                            std::abs(via_wave.p - via_lp.p) * pc.c_mag)
                   / fm_scale);

        WaveFourVector const back = transform_wave_inverse(b, transform_wave(b, w));
        double const w_scale = std::max({std::abs(w.omega), std::abs(w.k) * pc.c_mag, 1e-300});
        wave_inverse.add(std::max(std::abs(back.omega - w.omega),
                                  std::abs(back.k - w.k) * pc.c_mag)
                         / w_scale);
    }
    rep.lines = {phase_line.line(), square.line(), wave_inverse.line()};
    return rep;
}

/*!
 * Dispersion invariance under Lorentz-Planck boosts.
 *
 * The unprimed frame carries the gauge s, the rest frame none: the invariant
 * evaluated with s before the boost equals the one evaluated with s = 1
 * after it.
 */
inline SuiteReport dispersion_suite(CheckOptions const& opt)
{
    SuiteReport rep{"dispersion", {}, {}};
    Sampler rng(opt.seed);
    auto const pc = PhysicalConstants::natural();
    std::size_t const n = opt.samples_or(10000);
    Tracker on_shell("invariant_mass_sq(from_rest(m0)) == m0^2", 1e-11);
    Tracker invariance("invariant_mass_sq unchanged by lp_forward", 1e-11);
    Tracker rest("lp_forward(from_rest) has zero momentum", 1e-11);
    Tracker velocity("p c^2 / E == v", 1e-13);
    Tracker lp_round("lp_inverse(lp_forward(fm)) == fm", 1e-11);

    for (std::size_t i = 0; i < n; ++i)
    {
        Boost const b = rng.boost(rng.mode(i), pc);
        Complex const m0 = i % 4 == 0 ? Complex(1.0, -0.1) : rng.disk(3.0) + 0.1;
        FourMomentum const fm = momentum_energy_from_rest(RestMass{m0}, b);
        on_shell.add(rel_diff(invariant_mass_sq(fm, b), m0 * m0, 1e-300));

        FourMomentum const moved = lp_forward(b, fm);
        Complex const inv_after = invariant_mass_sq(moved, 1.0, b.c_sq());
        invariance.add(rel_diff(inv_after, invariant_mass_sq(fm, b), 1e-300));
        rest.add(std::abs(moved.p) * std::abs(b.c_sq()) / std::abs(moved.E));
        if (b.velocity() != Complex(0.0, 0.0))
        {
            velocity.add(rel_diff(fm.p * b.c_sq() / fm.E, b.velocity(), 1e-300));
        }

        // off-shell four-momenta obey the same law
        FourMomentum const off{rng.disk(3.0), rng.disk(3.0)};
        FourMomentum const off_moved = lp_forward(b, off);
        Complex const c_sq = b.c_sq();
        Complex const s_sq = b.gauge() * b.gauge();
        Complex const raw_before = (off.E * off.E - c_sq * off.p * off.p) / s_sq;
        Complex const raw_after = off_moved.E * off_moved.E - c_sq * off_moved.p * off_moved.p;
        double const raw_scale = std::max({std::norm(off_moved.E),
                                           std::abs(c_sq) * std::norm(off_moved.p),
                                           std::norm(off.E) / std::abs(s_sq),
                                           std::abs(c_sq) * std::norm(off.p) / std::abs(s_sq)});
        invariance.add(std::abs(raw_after - raw_before) / raw_scale);

        FourMomentum const back = lp_inverse(b, off_moved);
        lp_round.add(std::max(std::abs(back.E - off.E), std::abs(back.p - off.p))
                     / std::max(std::abs(off.E), std::abs(off.p)));
    }

    Tracker spot("(E,p) = (1.25, 0.75) gives m0^2 = 1", 1e-13);
    spot.add(std::abs(invariant_mass_sq(FourMomentum{1.25, 0.75}, 1.0, pc) - 1.0));

    rep.lines = {on_shell.line(), invariance.line(), rest.line(), velocity.line(),
                 lp_round.line(), spot.line()};
    return rep;
}

/*!
 * Dirac algebra: anticommutators exact in Gaussian-integer arithmetic,
 * H(k)^2 == E^2 and the factorization identity in floating point.
 */
inline SuiteReport dirac_suite(CheckOptions const& opt)
{
    SuiteReport rep{"dirac", {}, {}};
    constexpr auto d = build_dirac_matrices<GaussianInt>();
    using IMat = Matrix4<GaussianInt>;
    IMat const two = GaussianInt(2) * IMat::identity();

    Tracker algebra("anticommutators and beta^2 exact (10 identities)", 0.0);
    for (std::size_t i = 0; i < 3; ++i)
    {
        for (std::size_t j = i; j < 3; ++j)
        {
            IMat const expect = i == j ? two : IMat::zero();
            algebra.add(anticommutator(d.alpha[i], d.alpha[j]) == expect ? 0.0 : 1.0);
        }
        algebra.add(anticommutator(d.alpha[i], d.beta) == IMat::zero() ? 0.0 : 1.0);
    }
    algebra.add(d.beta * d.beta == IMat::identity() ? 0.0 : 1.0);

    Sampler rng(opt.seed);
    auto const pc = PhysicalConstants::natural();
    std::size_t const n = opt.samples_or(1000);
    Tracker square("H(k)^2 == ((hbar k c)^2 + s^2 (m0 c^2)^2) 1", 1e-13);
    Tracker factor("D(-) D(+) == KGF operator", 1e-12);
    for (std::size_t i = 0; i < n; ++i)
    {
        Complex3 const k{rng.disk(3.0), rng.disk(3.0), rng.disk(3.0)};
        Complex const m0 = rng.disk(3.0);
        Complex const s = rng.gauge();
        Complex const omega = rng.disk(5.0);

        CMatrix4 const h = dirac_hamiltonian(k, m0, s, pc);
        Complex const e_sq = detail::energy_sq(dot(k, k), m0, s, pc);
        double const h_scale = max_abs(h) * max_abs(h);
        square.add(max_abs(h * h - e_sq * CMatrix4::identity()) / std::max(h_scale, 1e-300));

        auto const fc = dirac_factorization_check(k, omega, m0, s, pc);
        double f_scale = std::norm(omega);
        for (Complex x : k)
            f_scale += std::norm(x);
        f_scale += std::norm(s * m0);
        factor.add(max_abs(fc.residual) / f_scale);
    }
    rep.lines = {algebra.line(), square.line(), factor.line()};
    return rep;
}

/*!
 * Plane-wave spinors: eigen-residual, KGF on-shellness of every component,
 * and the k = (3,0,0), m0 = 4 spot eigenvalues.
 */
inline SuiteReport spinors_suite(CheckOptions const& opt)
{
    SuiteReport rep{"spinors", {}, {}};
    Sampler rng(opt.seed);
    auto const pc = PhysicalConstants::natural();
    std::size_t const n = opt.samples_or(1000);
    Tracker eigen("||H u - hbar omega u|| / ||H||", spinor_residual_tol);
    Tracker kgf("every component KGF on-shell", 1e-11);
    Tracker split("retarded + advanced superposition on-shell", 1e-12);

    auto const component_residual = [&](PlaneSpinor const& sp, Complex3 const& k, Complex m0,
                                        Complex s) {
        Complex const r = kgf_residual_planewave(sp.omega, k, m0, s, pc);
        double const scale = std::abs(pc.hbar * sp.omega) * std::abs(pc.hbar * sp.omega)
                             + std::abs(detail::energy_sq(dot(k, k), m0, s, pc));
        double worst = 0.0;
        for (Complex u : sp.u)
            worst = std::max(worst, std::abs(u * r) / scale);
        return worst;
    };

    for (std::size_t i = 0; i < n; ++i)
    {
        Complex3 const k{rng.disk(3.0), rng.disk(3.0), rng.disk(3.0)};
        Complex const m0 = rng.disk(3.0);
        Complex const s = rng.gauge();
        Complex const t = rng.disk(1.0);
        for (Branch br : {Branch::Retarded, Branch::Advanced})
        {
            try
            {
                for (auto const& sp : dirac_plane_spinors(k, m0, s, pc, br))
                {
                    eigen.add(sp.residual);
                    kgf.add(component_residual(sp, k, m0, s));
                }
            }
            catch (Error const&)
            {
                eigen.fail();
            }
        }
        // psi = psi(+) + a psi(-): the KGF operator acts on each term through
        // its second derivatives, evaluated here in closed form
        auto const roots = kgf_dispersion_roots(k, m0, s, pc);
        Complex const i_unit(0.0, 1.0);
        Complex const a(0.5, 0.25);
        Complex3 const zv{rng.disk(1.0), rng.disk(1.0), rng.disk(1.0)};
        auto wave = [&](Complex w) { return std::exp(i_unit * (dot(k, zv) - w * t)); };
        Complex const psi_p = wave(roots.omega_plus);
        Complex const psi_m = a * wave(roots.omega_minus);
        Complex const psi = psi_p + psi_m;
        Complex const d2t = -roots.omega_plus * roots.omega_plus * psi_p
                            - roots.omega_minus * roots.omega_minus * psi_m;
        Complex const laplacian = -dot(k, k) * psi;
        Complex const rest = s * m0 * pc.c_sq();
        Complex const res = -pc.hbar * pc.hbar * d2t
                            + pc.hbar * pc.hbar * pc.c_sq() * laplacian - rest * rest * psi;
        double const scale = (std::norm(roots.omega_plus) + std::abs(dot(k, k)) + std::norm(rest))
                             * (std::abs(psi_p) + std::abs(psi_m));
        split.add(std::abs(res) / scale);
    }

    Tracker spot("k=(3,0,0), m0=4: eigenvalues +-5", 1e-12);
    for (Branch br : {Branch::Retarded, Branch::Advanced})
    {
        Complex3 const k{3.0, 0.0, 0.0};
        CMatrix4 const h = dirac_hamiltonian(k, 4.0, 1.0, pc, br);
        for (auto const& sp : dirac_plane_spinors(k, 4.0, 1.0, pc, br))
        {
            spot.add(std::abs(sp.omega - branch_sign(br) * 5.0));
            DiracSpinor hu = h * sp.u;
            for (std::size_t c = 0; c < 4; ++c)
                hu[c] -= sp.omega * sp.u[c];
            spot.add(norm2(hu) / norm2(sp.u) / 5.0);
        }
    }
    rep.lines = {eigen.line(), kgf.line(), split.line(), spot.line()};
    return rep;
}

//---------------------------------------------------------------------------//
// Grid convergence
//---------------------------------------------------------------------------//

struct ConvergenceStudy
{
    std::vector<double> steps;
    std::vector<double> residuals;
    std::vector<double> orders;  //!< log2 of successive residual ratios
};

/*!
 * Halving study on a fixed stretch of a rotated line.
 *
 * Level l uses ds = dt = base_step / 2^l with the point count doubled so the
 * line segment stays the same; `residual` maps a grid and time step to the
 * max-norm residual.
 */
template<class ResidualFn>
ConvergenceStudy convergence_study(double base_step, int levels, double span,
                                   ResidualFn&& residual)
{
    ConvergenceStudy st;
    for (int l = 0; l < levels; ++l)
    {
        double const step = base_step / std::ldexp(1.0, l);
        st.steps.push_back(step);
        st.residuals.push_back(residual(step, static_cast<std::size_t>(std::lround(span / step))));
    }
    for (std::size_t i = 1; i < st.residuals.size(); ++i)
    {
        st.orders.push_back(std::log2(st.residuals[i - 1] / st.residuals[i]));
    }
    return st;
}

struct GridCase
{
    Complex k{1.3, 0.2};
    Complex m0{1.0, -0.1};
    Complex gauge{1.0, 0.0};
    Complex z0{0.1, 0.05};
    double t0{0.3};
    double span{1.0};
    double base_step{0.05};
};

inline ConvergenceStudy kgf_convergence(GridCase const& gc, double theta, int levels,
                                        PhysicalConstants const& pc)
{
    Complex const omega = kgf_dispersion_roots(gc.k, gc.m0, gc.gauge, pc).omega_plus;
    PlaneWave const pw(1.0, gc.k, omega);
    std::function<Complex(Complex, Complex)> const f = [&](Complex z, Complex t) {
        return evaluate_planewave(pw, z, t);
    };
    return convergence_study(gc.base_step, levels, gc.span, [&](double step, std::size_t n) {
        ComplexLineGrid const grid(gc.z0, theta, n, step);
        auto const samples = sample_grid<Complex>(grid, gc.t0, step, f);
        return kgf_residual_grid(samples, gc.m0, gc.gauge, pc).max_abs;
    });
}

inline ConvergenceStudy dirac_convergence(GridCase const& gc, double theta, int levels,
                                          Branch branch, PhysicalConstants const& pc)
{
    Complex3 const k{gc.k, 0.0, 0.0};
    auto const spinors = dirac_plane_spinors(k, gc.m0, gc.gauge, pc, branch);
    PlaneSpinor const sp = spinors.front();
    Complex const i(0.0, 1.0);
    std::function<DiracSpinor(Complex, Complex)> const f = [&](Complex z, Complex t) {
        Complex const w = std::exp(i * (gc.k * z - sp.omega * t));
        return DiracSpinor{sp.u[0] * w, sp.u[1] * w, sp.u[2] * w, sp.u[3] * w};
    };
    return convergence_study(gc.base_step, levels, gc.span, [&](double step, std::size_t n) {
        ComplexLineGrid const grid(gc.z0, theta, n, step);
        auto const samples = sample_grid<DiracSpinor>(grid, gc.t0, step, f);
        return dirac_residual_grid(samples, gc.m0, gc.gauge, pc, branch).max_abs;
    });
}

//! Order 2.0 +- 0.2 for KGF and Dirac stencils at theta in {0, pi/6, pi/4}
inline SuiteReport kgf_grid_suite(CheckOptions const& opt)
{
    SuiteReport rep{"kgf-grid", {}, {}};
    if (opt.steps < 2)
    {
        throw Error(ErrorCode::InvalidArgument, "convergence study needs at least 2 levels");
    }
    auto const pc = PhysicalConstants::natural();
    GridCase const gc;
    constexpr double pi = std::numbers::pi;
    std::pair<double, char const*> const angles[]
        = {{0.0, "0"}, {pi / 6.0, "pi/6"}, {pi / 4.0, "pi/4"}};

    auto record = [&](std::string const& label, ConvergenceStudy const& st) {
        Tracker tr(label + " order 2.0 +- 0.2", 0.2);
        for (double o : st.orders)
            tr.add(std::abs(o - 2.0));
        rep.lines.push_back(tr.line());
        for (std::size_t l = 0; l < st.steps.size(); ++l)
        {
            rep.table.emplace_back(label + " step=" + std::to_string(st.steps[l]),
                                   st.residuals[l]);
        }
        for (std::size_t l = 0; l < st.orders.size(); ++l)
        {
            rep.table.emplace_back(label + " order[" + std::to_string(l) + "]", st.orders[l]);
        }
    };

    for (auto const& [theta, name] : angles)
    {
        record(std::string("KGF theta=") + name, kgf_convergence(gc, theta, opt.steps, pc));
    }
    for (auto const& [theta, name] : angles)
    {
        for (Branch br : {Branch::Retarded, Branch::Advanced})
        {
            record(std::string("Dirac ") + std::string(to_string(br)) + " theta=" + name,
                   dirac_convergence(gc, theta, opt.steps, br, pc));
        }
    }
    return rep;
}

//---------------------------------------------------------------------------//
// Nonrelativistic limit and worldline times
//---------------------------------------------------------------------------//

//! Least-squares slope of log|exact - expansion| against log k
inline double nonrel_loglog_slope(double k_lo, double k_hi, std::size_t points, Complex m0,
                                  PhysicalConstants const& pc)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < points; ++i)
    {
        double const f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        double const k = k_lo * std::pow(k_hi / k_lo, f);
        Complex const exact = schrodinger_sqrt_energy(k, m0, 1.0, pc, Branch::Retarded);
        Complex const approx = nonrel_expansion(k, m0, 1.0, pc);
        xs.push_back(std::log(k));
        ys.push_back(std::log(std::abs(exact - approx)));
    }
    double const mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(points);
    double const my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(points);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < points; ++i)
    {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

inline SuiteReport nonrel_suite(CheckOptions const&)
{
    SuiteReport rep{"nonrel", {}, {}};
    auto const pc = PhysicalConstants::natural();
    double const slope = nonrel_loglog_slope(1e-3, 1e-1, 21, 1.0, pc);
    Tracker sl("log-log slope of exact - expansion == 4", 0.1);
    sl.add(std::abs(slope - 4.0));
    Complex const diff = schrodinger_sqrt_energy(0.01, 1.0, 1.0, pc, Branch::Retarded)
                         - nonrel_expansion(0.01, 1.0, 1.0, pc);
    Tracker spot("k=0.01 error == 1.25e-9 (relative)", 0.05);
    spot.add(std::abs(std::abs(diff) - 1.25e-9) / 1.25e-9);
    rep.lines = {sl.line(), spot.line()};
    rep.table = {{"slope", slope}, {"error_at_0.01", std::abs(diff)}};
    return rep;
}

inline SuiteReport worldline_suite(CheckOptions const& opt)
{
    SuiteReport rep{"worldline", {}, {}};
    Sampler rng(opt.seed);
    auto const pc = PhysicalConstants::natural();
    std::size_t const n = opt.samples_or(1000);
    Tracker real("Option 2: Im(worldline_time) == 0 for real t, |v| < |c|", 1e-14);
    Tracker factor("worldline_time == boost_forward(v t, t).t", 1e-12);
    for (std::size_t i = 0; i < n; ++i)
    {
        Complex const v = rng.disk(0.999) * pc.c_mag;
        double const t = rng.uniform(-10.0, 10.0);
        Boost const b = Boost::option2(v, pc);
        WorldlineTime const wt = worldline_time(b, t);
        real.add(std::abs(wt.t.imag()));
        Event const moved = boost_forward(b, Event{v * t, t});
        factor.add(rel_diff(moved.t, wt.t));
    }
    Tracker spot("t=2, v=(0.3+0.4i)|c| gives 1.7320508", 1e-7);
    Complex const spot_t = worldline_time(Boost::option2({0.3, 0.4}, pc), 2.0).t;
    spot.add(std::abs(spot_t - 1.7320508));
    rep.lines = {real.line(), factor.line(), spot.line()};
    return rep;
}

//---------------------------------------------------------------------------//
// Dispatch
//---------------------------------------------------------------------------//

inline std::vector<std::string_view> suite_names()
{
    return {"constants", "inverse",  "fixedpoints", "phase",  "dispersion",
            "dirac",     "spinors",  "kgf-grid",    "nonrel", "worldline"};
}

inline std::optional<SuiteReport> run_suite(std::string_view name, CheckOptions const& opt)
{
    if (name == "constants") return constants_suite();
    if (name == "inverse") return inverse_suite(opt);
    if (name == "fixedpoints") return fixedpoints_suite(opt);
    if (name == "phase") return phase_suite(opt);
    if (name == "dispersion") return dispersion_suite(opt);
    if (name == "dirac") return dirac_suite(opt);
    if (name == "spinors") return spinors_suite(opt);
    if (name == "kgf-grid") return kgf_grid_suite(opt);
    if (name == "nonrel") return nonrel_suite(opt);
    if (name == "worldline") return worldline_suite(opt);
    return std::nullopt;
}

}  // namespace ccov::verify
