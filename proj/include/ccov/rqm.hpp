#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "core.hpp"
#include "dynamics.hpp"

namespace ccov
{

//---------------------------------------------------------------------------//
// Exact 4x4 matrix algebra
//---------------------------------------------------------------------------//

//! Gaussian integer, used to check the Dirac algebra without rounding
struct GaussianInt
{
    long long re{0};
    long long im{0};

    constexpr GaussianInt() = default;
    constexpr GaussianInt(long long r, long long i = 0) : re(r), im(i) {}

    friend constexpr GaussianInt operator+(GaussianInt a, GaussianInt b)
    {
        return {a.re + b.re, a.im + b.im};
    }
    friend constexpr GaussianInt operator-(GaussianInt a, GaussianInt b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend constexpr GaussianInt operator*(GaussianInt a, GaussianInt b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    constexpr GaussianInt operator-() const { return {-re, -im}; }
    constexpr GaussianInt& operator+=(GaussianInt b) { return *this = *this + b; }
    friend constexpr bool operator==(GaussianInt, GaussianInt) = default;
};

template<class T>
struct Matrix4
{
    std::array<std::array<T, 4>, 4> a{};

    constexpr T& operator()(std::size_t i, std::size_t j) { return a[i][j]; }
    constexpr T const& operator()(std::size_t i, std::size_t j) const { return a[i][j]; }

    static constexpr Matrix4 zero() { return {}; }

    static constexpr Matrix4 identity()
    {
        Matrix4 m;
        for (std::size_t i = 0; i < 4; ++i)
        {
            m(i, i) = T(1);
        }
        return m;
    }

    friend constexpr Matrix4 operator+(Matrix4 const& x, Matrix4 const& y)
    {
        Matrix4 r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                r(i, j) = x(i, j) + y(i, j);
        return r;
    }

    friend constexpr Matrix4 operator-(Matrix4 const& x, Matrix4 const& y)
    {
        Matrix4 r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                r(i, j) = x(i, j) - y(i, j);
        return r;
    }

    friend constexpr Matrix4 operator*(Matrix4 const& x, Matrix4 const& y)
    {
        Matrix4 r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
            {
                T acc{};
                for (std::size_t l = 0; l < 4; ++l)
                    acc += x(i, l) * y(l, j);
                r(i, j) = acc;
            }
        return r;
    }

    friend constexpr Matrix4 operator*(T const& s, Matrix4 const& x)
    {
        Matrix4 r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                r(i, j) = s * x(i, j);
        return r;
    }

    friend constexpr bool operator==(Matrix4 const&, Matrix4 const&) = default;
};

template<class T>
constexpr Matrix4<T> anticommutator(Matrix4<T> const& x, Matrix4<T> const& y)
{
    return x * y + y * x;
}

using CMatrix4 = Matrix4<Complex>;
using DiracSpinor = std::array<Complex, 4>;

inline DiracSpinor operator*(CMatrix4 const& m, DiracSpinor const& v)
{
    DiracSpinor r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            r[i] += m(i, j) * v[j];
    return r;
}

inline double max_abs(CMatrix4 const& m)
{
    double r = 0.0;
    for (auto const& row : m.a)
        for (Complex x : row)
            r = std::max(r, std::abs(x));
    return r;
}

inline double frobenius_norm(CMatrix4 const& m)
{
    double r = 0.0;
    for (auto const& row : m.a)
        for (Complex x : row)
            r += std::norm(x);
    return std::sqrt(r);
}

inline double norm2(DiracSpinor const& v)
{
    double r = 0.0;
    for (Complex x : v)
        r += std::norm(x);
    return std::sqrt(r);
}

//---------------------------------------------------------------------------//
// Dirac matrices
//---------------------------------------------------------------------------//

template<class T>
struct DiracMatrices
{
    std::array<Matrix4<T>, 3> alpha;
    Matrix4<T> beta;
};

/*!
 * alpha_i = [[0, sigma_i], [sigma_i, 0]], beta = diag(1, 1, -1, -1).
 *
 * T needs a (re, im) constructor; GaussianInt gives exact entries, Complex
 * the floating-point ones.
 */
template<class T = Complex>
constexpr DiracMatrices<T> build_dirac_matrices()
{
    // Pauli matrices as (re, im) integer pairs
    constexpr int sigma[3][2][2][2] = {
        {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}},
        {{{0, 0}, {0, -1}}, {{0, 1}, {0, 0}}},
        {{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}},
    };
    DiracMatrices<T> d{};
    for (std::size_t n = 0; n < 3; ++n)
    {
        for (std::size_t i = 0; i < 2; ++i)
        {
            for (std::size_t j = 0; j < 2; ++j)
            {
                T const entry(sigma[n][i][j][0], sigma[n][i][j][1]);
                d.alpha[n](i, j + 2) = entry;
                d.alpha[n](i + 2, j) = entry;
            }
        }
    }
    d.beta(0, 0) = T(1);
    d.beta(1, 1) = T(1);
    d.beta(2, 2) = T(-1);
    d.beta(3, 3) = T(-1);
    return d;
}

//---------------------------------------------------------------------------//
// Klein-Gordon-Fock dispersion
//---------------------------------------------------------------------------//

enum class Branch
{
    Retarded,  //!< positive-frequency solution psi(+)
    Advanced   //!< negative-frequency solution psi(-)
};

inline constexpr double branch_sign(Branch b)
{
    return b == Branch::Retarded ? 1.0 : -1.0;
}

inline constexpr std::string_view to_string(Branch b)
{
    return b == Branch::Retarded ? "retarded" : "advanced";
}

namespace detail
{
//! (hbar c)^2 k.k + s^2 (m0 c^2)^2, the squared energy of a free mode
inline Complex energy_sq(Complex k_sq, Complex m0, Complex gauge_s,
                         PhysicalConstants const& pc)
{
    double const hbar_c = pc.hbar * pc.c_mag;
    Complex const rest = gauge_s * m0 * pc.c_sq();
    return hbar_c * hbar_c * k_sq + rest * rest;
}
}  // namespace detail

struct DispersionRoots
{
    Complex omega_plus;   //!< retarded branch, principal root
    Complex omega_minus;  //!< advanced branch, -omega_plus
    bool near_cut{false};
};

inline DispersionRoots kgf_dispersion_roots(Complex3 const& k, Complex m0, Complex gauge_s,
                                            PhysicalConstants const& pc)
{
    auto const root = principal_sqrt(detail::energy_sq(dot(k, k), m0, gauge_s, pc));
    Complex const w = root.value / pc.hbar;
    return {w, -w, root.near_cut};
}

inline DispersionRoots kgf_dispersion_roots(Complex k, Complex m0, Complex gauge_s,
                                            PhysicalConstants const& pc)
{
    return kgf_dispersion_roots(Complex3{k, 0.0, 0.0}, m0, gauge_s, pc);
}

/*!
 * KGF operator applied to a plane wave, divided by the wave:
 * (hbar omega)^2 - (hbar k c)^2 - s^2 (m0 c^2)^2. Zero iff on shell.
 */
inline Complex kgf_residual_planewave(Complex omega, Complex3 const& k, Complex m0,
                                      Complex gauge_s, PhysicalConstants const& pc)
{
    Complex const e = pc.hbar * omega;
    return e * e - detail::energy_sq(dot(k, k), m0, gauge_s, pc);
}

inline Complex kgf_residual_planewave(Complex omega, Complex k, Complex m0, Complex gauge_s,
                                      PhysicalConstants const& pc)
{
    return kgf_residual_planewave(omega, Complex3{k, 0.0, 0.0}, m0, gauge_s, pc);
}

//---------------------------------------------------------------------------//
// Relativistic Schroedinger equation per Fourier mode
//---------------------------------------------------------------------------//

//! +-sqrt((hbar k c)^2 + s^2 (m0 c^2)^2), sign by branch
inline Complex schrodinger_sqrt_energy(Complex k, Complex m0, Complex gauge_s,
                                       PhysicalConstants const& pc, Branch branch)
{
    return branch_sign(branch) * principal_sqrt(detail::energy_sq(k * k, m0, gauge_s, pc)).value;
}

/*!
 * Nonrelativistic expansion s m0 c^2 + (hbar k)^2 / (2 m0 s), truncated
 * after `order` corrections (0 or 1).
 */
inline Complex nonrel_expansion(Complex k, Complex m0, Complex gauge_s,
                                PhysicalConstants const& pc, int order = 1)
{
    if (m0 == Complex(0.0, 0.0))
    {
        throw Error(ErrorCode::InvalidArgument, "nonrelativistic expansion needs m0 != 0");
    }
    if (order < 0 || order > 1)
    {
        throw Error(ErrorCode::InvalidArgument, "expansion order must be 0 or 1");
    }
    Complex value = gauge_s * m0 * pc.c_sq();
    if (order == 1)
    {
        Complex const p = pc.hbar * k;
        value += p * p / (2.0 * m0 * gauge_s);
    }
    return value;
}

//---------------------------------------------------------------------------//
// Dirac equation in momentum space
//---------------------------------------------------------------------------//

/*!
 * Plane-wave Dirac Hamiltonian hbar c alpha.k +- s beta m0 c^2.
 *
 * The retarded equation carries +s, the advanced one -s; in both cases the
 * plane wave u exp(i (k.z - omega t)) solves the equation iff
 * hbar omega u = H u.
 */
inline CMatrix4 dirac_hamiltonian(Complex3 const& k, Complex m0, Complex gauge_s,
                                  PhysicalConstants const& pc,
                                  Branch branch = Branch::Retarded)
{
    auto const d = build_dirac_matrices<Complex>();
    double const hbar_c = pc.hbar * pc.c_mag;
    CMatrix4 h = (branch_sign(branch) * gauge_s * m0 * pc.c_sq()) * d.beta;
    for (std::size_t i = 0; i < 3; ++i)
    {
        h = h + (hbar_c * k[i]) * d.alpha[i];
    }
    return h;
}

struct FactorizationCheck
{
    CMatrix4 residual;  //!< D(-) D(+) - kgf_scalar * 1
    Complex kgf_scalar;
};

/*!
 * Product of the two first-order Dirac operators against the KGF operator.
 *
 * D(+-) = beta (hbar omega - c alpha.hbar k) -+ s m0 c^2; their product is
 * (hbar omega)^2 - (hbar k c)^2 - s^2 (m0 c^2)^2 times the identity, so the
 * returned residual vanishes up to rounding.
 */
inline FactorizationCheck dirac_factorization_check(Complex3 const& k, Complex omega,
                                                    Complex m0, Complex gauge_s,
                                                    PhysicalConstants const& pc)
{
    auto const d = build_dirac_matrices<Complex>();
    double const hbar_c = pc.hbar * pc.c_mag;
    CMatrix4 kinetic = (pc.hbar * omega) * CMatrix4::identity();
    for (std::size_t i = 0; i < 3; ++i)
    {
        kinetic = kinetic - (hbar_c * k[i]) * d.alpha[i];
    }
    CMatrix4 const slashed = d.beta * kinetic;
    CMatrix4 const mass = (gauge_s * m0 * pc.c_sq()) * CMatrix4::identity();
    CMatrix4 const d_plus = slashed - mass;
    CMatrix4 const d_minus = slashed + mass;

    FactorizationCheck out;
    out.kgf_scalar = kgf_residual_planewave(omega, k, m0, gauge_s, pc);
    out.residual = d_minus * d_plus - out.kgf_scalar * CMatrix4::identity();
    return out;
}

struct PlaneSpinor
{
    Complex omega;
    DiracSpinor u;
    double residual{0};  //!< ||H u - hbar omega u|| / ||H||
};

//! Relative eigen-residual above which a spinor is rejected as defective
inline constexpr double spinor_residual_tol = 1e-11;

/*!
 * The two plane-wave spinors of one branch.
 *
 * H^2 = (hbar omega_+)^2, so every column of H + lambda (lambda = hbar omega)
 * lies in the lambda-eigenspace; the two most independent columns are
 * returned. Each spinor is scaled so its largest-modulus component is exactly
 * 1 (ties go to the lower index).
 *
 * Throws InvalidArgument for the zero mode omega_+ = 0 and Defective when a
 * column fails the eigen-residual check or the eigenspace is not 2D.
 */
inline std::vector<PlaneSpinor> dirac_plane_spinors(Complex3 const& k, Complex m0,
                                                    Complex gauge_s,
                                                    PhysicalConstants const& pc,
                                                    Branch branch)
{
    CMatrix4 const h = dirac_hamiltonian(k, m0, gauge_s, pc, branch);
    auto const roots = kgf_dispersion_roots(k, m0, gauge_s, pc);
    Complex const omega = branch == Branch::Retarded ? roots.omega_plus : roots.omega_minus;
    Complex const lambda = pc.hbar * omega;
    double const h_norm = frobenius_norm(h);

    if (h_norm == 0.0 || std::abs(lambda) <= 1e-12 * h_norm)
    {
        throw Error(ErrorCode::InvalidArgument, "zero-frequency Dirac mode is degenerate");
    }

    CMatrix4 const proj = h + lambda * CMatrix4::identity();
    auto column = [&](std::size_t j) {
        return DiracSpinor{proj(0, j), proj(1, j), proj(2, j), proj(3, j)};
    };

    std::size_t first = 0;
    for (std::size_t j = 1; j < 4; ++j)
    {
        if (norm2(column(j)) > norm2(column(first)))
            first = j;
    }
    DiracSpinor const a = column(first);
    double const a_norm = norm2(a);

    // Second column: largest component orthogonal (Hermitian sense) to the first
    std::size_t second = 4;
    double best = -1.0;
    for (std::size_t j = 0; j < 4; ++j)
    {
        if (j == first)
            continue;
        DiracSpinor b = column(j);
        Complex overlap{0.0, 0.0};
        for (std::size_t i = 0; i < 4; ++i)
            overlap += std::conj(a[i]) * b[i];
        overlap /= a_norm * a_norm;
        for (std::size_t i = 0; i < 4; ++i)
            b[i] -= overlap * a[i];
        double const rest = norm2(b);
        if (rest > best)
        {
            best = rest;
            second = j;
        }
    }
    if (best <= 1e-8 * a_norm)
    {
        throw Error(ErrorCode::Defective, "Dirac eigenspace is not two-dimensional");
    }

    std::vector<PlaneSpinor> out;
    for (std::size_t j : {first, second})
    {
        DiracSpinor u = column(j);
        std::size_t lead = 0;
        for (std::size_t i = 1; i < 4; ++i)
        {
            if (std::abs(u[i]) > std::abs(u[lead]))
                lead = i;
        }
        Complex const pivot = u[lead];
        for (Complex& x : u)
            x /= pivot;
        u[lead] = Complex(1.0, 0.0);

        DiracSpinor hu = h * u;
        for (std::size_t i = 0; i < 4; ++i)
            hu[i] -= lambda * u[i];
        double const res = norm2(hu) / (h_norm * norm2(u));
        if (!(res <= spinor_residual_tol))
        {
            throw Error(ErrorCode::Defective, "Dirac eigenvector residual above tolerance");
        }
        out.push_back({omega, u, res});
    }
    return out;
}

//---------------------------------------------------------------------------//
// Rotated complex-line grids
//---------------------------------------------------------------------------//

/*!
 * Straight line z_j = z0 + exp(i theta) (j - n/2) ds in the complex plane.
 */
class ComplexLineGrid
{
  public:
    ComplexLineGrid(Complex z0, double theta, std::size_t n, double ds)
        : z0_(z0), theta_(theta), n_(n), ds_(ds)
    {
        require_finite(z0, "grid anchor");
        if (n < 8)
        {
            throw Error(ErrorCode::InvalidArgument, "grid needs at least 8 points");
        }
        if (!(ds > 0.0) || !std::isfinite(ds) || !std::isfinite(theta))
        {
            throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
        }
    }

    Complex z0() const { return z0_; }
    double theta() const { return theta_; }
    std::size_t size() const { return n_; }
    double ds() const { return ds_; }
    Complex direction() const { return std::polar(1.0, theta_); }

    Complex point(std::size_t j) const
    {
        double const offset = static_cast<double>(j) - static_cast<double>(n_) / 2.0;
        return z0_ + direction() * (offset * ds_);
    }

  private:
    Complex z0_;
    double theta_;
    std::size_t n_;
    double ds_;
};

/*!
 * Field values on a grid at the three times t0 - dt, t0, t0 + dt.
 */
template<class Value>
struct GridSamples
{
    ComplexLineGrid grid;
    double t0{0};
    double dt{0};
    std::array<std::vector<Value>, 3> psi;
};

template<class Value>
GridSamples<Value> sample_grid(ComplexLineGrid const& grid, double t0, double dt,
                               std::function<Value(Complex z, Complex t)> const& f)
{
    if (!(dt > 0.0))
    {
        throw Error(ErrorCode::InvalidArgument, "time step must be positive");
    }
    GridSamples<Value> s{grid, t0, dt, {}};
    for (std::size_t m = 0; m < 3; ++m)
    {
        Complex const t(t0 + (static_cast<double>(m) - 1.0) * dt, 0.0);
        s.psi[m].reserve(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j)
        {
            s.psi[m].push_back(f(grid.point(j), t));
        }
    }
    return s;
}

/*!
 * Pointwise residual on the grid; entries 0 and n-1 are left at zero
 * because the three-point stencils need one neighbour on each side.
 */
template<class Value>
struct GridResidual
{
    std::vector<Value> residual;
    double max_abs{0};
};

namespace detail
{
template<class Value>
void check_samples(GridSamples<Value> const& s)
{
    for (auto const& row : s.psi)
    {
        if (row.size() != s.grid.size())
        {
            throw Error(ErrorCode::InvalidArgument, "grid samples do not match grid size");
        }
    }
}
}  // namespace detail

/*!
 * KGF residual -hbar^2 d2psi/dt2 + (hbar c)^2 d2psi/dz2 - s^2 (m0 c^2)^2 psi.
 *
 * Second central differences in t and along the line; d2/dz2 =
 * exp(-2 i theta) d2/ds2 on the rotated line. O(dt^2 + ds^2).
 */
inline GridResidual<Complex> kgf_residual_grid(GridSamples<Complex> const& s, Complex m0,
                                               Complex gauge_s, PhysicalConstants const& pc)
{
    detail::check_samples(s);
    std::size_t const n = s.grid.size();
    double const hbar_sq = pc.hbar * pc.hbar;
    double const hbar_c_sq = hbar_sq * pc.c_sq();
    Complex const rest = gauge_s * m0 * pc.c_sq();
    Complex const chain = std::polar(1.0, -2.0 * s.grid.theta());
    double const inv_dt2 = 1.0 / (s.dt * s.dt);
    double const inv_ds2 = 1.0 / (s.grid.ds() * s.grid.ds());

    GridResidual<Complex> out;
    out.residual.assign(n, Complex(0.0, 0.0));
    auto const& prev = s.psi[0];
    auto const& now = s.psi[1];
    auto const& next = s.psi[2];
    for (std::size_t j = 1; j + 1 < n; ++j)
    {
        Complex const d2t = (next[j] - 2.0 * now[j] + prev[j]) * inv_dt2;
        Complex const d2z = chain * (now[j + 1] - 2.0 * now[j] + now[j - 1]) * inv_ds2;
        Complex const r = -hbar_sq * d2t + hbar_c_sq * d2z - rest * rest * now[j];
        out.residual[j] = r;
        out.max_abs = std::max(out.max_abs, std::abs(r));
    }
    return out;
}

/*!
 * First-order Dirac residual for a spinor field varying along x only:
 * i hbar dpsi/dt - (-i hbar c alpha_1 dpsi/dx +- s beta m0 c^2 psi).
 *
 * The complex line is taken in the x coordinate, so d/dx = exp(-i theta) d/ds.
 */
inline GridResidual<DiracSpinor> dirac_residual_grid(GridSamples<DiracSpinor> const& s,
                                                     Complex m0, Complex gauge_s,
                                                     PhysicalConstants const& pc,
                                                     Branch branch)
{
    detail::check_samples(s);
    auto const d = build_dirac_matrices<Complex>();
    std::size_t const n = s.grid.size();
    Complex const i(0.0, 1.0);
    Complex const chain = std::polar(1.0, -s.grid.theta());
    CMatrix4 const mass = (branch_sign(branch) * gauge_s * m0 * pc.c_sq()) * d.beta;
    CMatrix4 const kinetic = (-i * pc.hbar * pc.c_mag * chain / (2.0 * s.grid.ds())) * d.alpha[0];

    GridResidual<DiracSpinor> out;
    out.residual.assign(n, DiracSpinor{});
    for (std::size_t j = 1; j + 1 < n; ++j)
    {
        DiracSpinor ds_diff{};
        DiracSpinor r{};
        for (std::size_t c = 0; c < 4; ++c)
        {
            ds_diff[c] = s.psi[1][j + 1][c] - s.psi[1][j - 1][c];
            r[c] = i * pc.hbar * (s.psi[2][j][c] - s.psi[0][j][c]) / (2.0 * s.dt);
        }
        DiracSpinor const kin = kinetic * ds_diff;
        DiracSpinor const m = mass * s.psi[1][j];
        for (std::size_t c = 0; c < 4; ++c)
        {
            r[c] -= kin[c] + m[c];
            out.max_abs = std::max(out.max_abs, std::abs(r[c]));
        }
        out.residual[j] = r;
    }
    return out;
}

}  // namespace ccov
