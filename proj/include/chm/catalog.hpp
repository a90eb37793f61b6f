#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "chm/error.hpp"
#include "chm/matrix.hpp"
#include "chm/unit_scalar.hpp"

namespace chm {

// --- fixed matrices ---------------------------------------------------------

namespace detail {

inline UnitScalar sym(char s) {
    switch (s) {
        case '1': return UnitScalar::one();
        case '-': return UnitScalar::minus_one();
        case 'i': return UnitScalar::i_unit();
        case 'j': return -UnitScalar::i_unit();
        case 'w': return UnitScalar::omega();
        case 'W': return UnitScalar::omega_sq();
        case 'v': return -UnitScalar::omega();
        case 'V': return -UnitScalar::omega_sq();
    }
    throw domain_error("catalog: unknown entry symbol");
}

inline CMatrix from_symbols(const std::array<const char*, kOrder>& rows) {
    CMatrix m;
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c) m.at(r, c) = sym(rows[static_cast<size_t>(r)][c]);
    return m;
}

} // namespace detail

// Tao's matrix over {1,w,w^2}. The printed source has a free symbol s in the
// first row; orthogonality of rows 1 and 2 forces s = 1, which is what the
// verifier downstream confirms.
inline CMatrix tao() {
    return detail::from_symbols({"111111",
                                 "11wwWW",
                                 "1w1WWw",
                                 "1wW1wW",
                                 "1WWw1w",
                                 "1WwWw1"});
}

// The two 12-imaginary-element representatives: every CHM with at most 12
// non-real entries is real equivalent to m1 or complex equivalent to the
// symmetric m2.
inline CMatrix m1() {
    return detail::from_symbols({"ww1111",
                                 "wv-1-1",
                                 "11ww11",
                                 "1-vw-1",
                                 "1111ww",
                                 "-11-wv"});
}

inline CMatrix m2() {
    return detail::from_symbols({"i11111",
                                 "1i11--",
                                 "11i-1-",
                                 "11-i-1",
                                 "1-1-i1",
                                 "1--11i"});
}

// --- two-parameter family ----------------------------------------------------

struct HFamilyParams {
    UnitScalar alpha{UnitScalar::one()};
    UnitScalar beta{UnitScalar::one()};
};

// The family characterized by containing a rank-one 2x3 submatrix. Rows 1-2
// begin (1,1,1); rows 3-4 carry alpha*(1,w,w^2), rows 5-6 carry beta*(1,w^2,w).
inline CMatrix h_family(const HFamilyParams& p, const ToleranceConfig& tol = {}) {
    for (const auto& u : {p.alpha, p.beta})
        if (std::abs(std::abs(u.value()) - 1.0) > tol.eps_unit)
            throw domain_error("h_family: parameter is not unimodular");
    const UnitScalar one = UnitScalar::one(), w = UnitScalar::omega(), w2 = UnitScalar::omega_sq();
    const auto& a = p.alpha;
    const auto& b = p.beta;
    CMatrix m;
    const std::array<std::array<UnitScalar, 6>, 6> rows = {{
        {one, one, one, one, one, one},
        {one, one, one, -one, -one, -one},
        {one, w, w2, a, a * w, a * w2},
        {one, w, w2, -a, -(a * w), -(a * w2)},
        {one, w2, w, b, b * w2, b * w},
        {one, w2, w, -b, -(b * w2), -(b * w)},
    }};
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c)
            m.at(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    return m;
}

// --- Karlsson's H2-reducible form ---------------------------------------------

struct KarlssonParams {
    double theta{0.0}; // [0, pi)
    double phi{0.0};   // [0, pi)
    std::array<UnitScalar, 4> z{UnitScalar::one(), UnitScalar::one(), UnitScalar::one(),
                                UnitScalar::one()};
};

// The 2x2 kernel of the parametrization. A and B are row-major.
struct KarlssonCore {
    std::complex<double> A11;
    std::complex<double> A12;
    std::array<std::complex<double>, 4> A;
    std::array<std::complex<double>, 4> B;
};

// Assembly failed because a block came out non-unimodular: the parameters are
// outside the admissible z-locus (see karlsson_complete_z).
struct karlsson_assembly_error : domain_error {
    int block_row;
    int block_col;
    double deviation;
    karlsson_assembly_error(int br, int bc, double dev)
        : domain_error("karlsson: block (" + std::to_string(br + 1) + "," + std::to_string(bc + 1) +
                       ") has an entry off the unit circle by " + std::to_string(dev)),
          block_row(br), block_col(bc), deviation(dev) {}
};

inline KarlssonCore karlsson_core(double theta, double phi, const ToleranceConfig& tol = {}) {
    if (!(theta >= 0.0 && theta < std::numbers::pi_v<double>) ||
        !(phi >= 0.0 && phi < std::numbers::pi_v<double>))
        throw domain_error("karlsson: theta and phi must lie in [0, pi)");
    const std::complex<double> iu{0.0, 1.0};
    const double hs3 = std::sqrt(3.0) / 2.0;
    KarlssonCore core;
    core.A11 = -0.5 + iu * hs3 * (std::cos(theta) + std::exp(-iu * phi) * std::sin(theta));
    core.A12 = -0.5 + iu * hs3 * (-std::cos(theta) + std::exp(iu * phi) * std::sin(theta));
    core.A = {core.A11, core.A12, std::conj(core.A12), -std::conj(core.A11)};
    core.B = {-1.0 - core.A11, -1.0 - core.A12, -1.0 - std::conj(core.A12),
              1.0 + std::conj(core.A11)};
    const double norm = std::norm(core.A11) + std::norm(core.A12);
    if (std::abs(norm - 2.0) > tol.eps_orth)
        throw inconsistency_error("karlsson: |A11|^2 + |A12|^2 deviates from 2");
    return core;
}

namespace detail {

using C2x2 = std::array<std::complex<double>, 4>;

inline C2x2 mul2(const C2x2& x, const C2x2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

} // namespace detail

// Karlsson's block form: (F2 Z1 Z2 / Z3 A' B' / Z4 B'' A'') with the primed
// blocks built from A and B. Rows come out orthogonal for every parameter
// choice, but the mixed blocks are unimodular only on a restricted z-locus;
// that restriction is enforced here rather than assumed.
inline CMatrix karlsson(const KarlssonParams& p, const ToleranceConfig& tol = {}) {
    for (const auto& zj : p.z)
        if (std::abs(std::abs(zj.value()) - 1.0) > tol.eps_unit)
            throw domain_error("karlsson: z parameter is not unimodular");
    const KarlssonCore core = karlsson_core(p.theta, p.phi, tol);
    const std::complex<double> z1 = p.z[0].value(), z2 = p.z[1].value(), z3 = p.z[2].value(),
                               z4 = p.z[3].value();
    using detail::C2x2;
    const C2x2 F2 = {1.0, 1.0, 1.0, -1.0};
    const C2x2 Z1 = {1.0, 1.0, z1, -z1};
    const C2x2 Z2 = {1.0, 1.0, z2, -z2};
    const C2x2 Z3 = {1.0, z3, 1.0, -z3};
    const C2x2 Z4 = {1.0, z4, 1.0, -z4};
    auto half = [](C2x2 m) {
        for (auto& v : m) v *= 0.5;
        return m;
    };
    const std::array<std::array<C2x2, 3>, 3> blocks = {{
        {F2, Z1, Z2},
        {Z3, half(detail::mul2(Z3, detail::mul2(core.A, Z1))),
         half(detail::mul2(Z3, detail::mul2(core.B, Z2)))},
        {Z4, half(detail::mul2(Z4, detail::mul2(core.B, Z1))),
         half(detail::mul2(Z4, detail::mul2(core.A, Z2)))},
    }};
    CMatrix m;
    for (int br = 0; br < 3; ++br) {
        for (int bc = 0; bc < 3; ++bc) {
            const C2x2& blk = blocks[static_cast<size_t>(br)][static_cast<size_t>(bc)];
            double dev = 0.0;
            for (const auto& v : blk) dev = std::max(dev, std::abs(std::abs(v) - 1.0));
            if (dev > tol.eps_unit) throw karlsson_assembly_error(br, bc, dev);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    m.at(2 * br + r, 2 * bc + c) =
                        UnitScalar::unchecked(blk[static_cast<size_t>(2 * r + c)]);
        }
    }
    return m;
}

// --- admissible z-locus -------------------------------------------------------
//
// For fixed (theta, phi) the block form has orthogonal rows for every z, but a
// mixed block (1/2) Z3 A Z1 is unimodular only when
//     Re( conj(z3) * (A12^2 z1 - A11^2 conj(z1)) ) = 0,
// and analogously for the other three mixed blocks. Given z1 these conditions
// pin z3 and z4 up to sign and leave a half-turn pair of solutions for z2.

namespace detail {

inline std::complex<double> mixed_dir(const std::complex<double>& x11,
                                      const std::complex<double>& x12,
                                      const std::complex<double>& z) {
    return x12 * x12 * z - x11 * x11 * std::conj(z);
}

// Solve Re(conj(z3)*w(psi)) = 0 and Re(conj(z4)*w'(psi)) = 0 for a common
// z2 = e^{i psi}, where w uses (B11,B12) and w' uses (A11,A12). Each condition
// is a half-turn line a*cos(psi) + b*sin(psi) = 0; the angle comes from the
// better-conditioned line and the other is accepted by residual, which bounds
// the resulting entry's distance from the unit circle by residual/4.
inline std::optional<std::complex<double>> solve_z2(const KarlssonCore& core,
                                                    const std::complex<double>& z3,
                                                    const std::complex<double>& z4,
                                                    double eps_unit) {
    struct Line {
        double a, b;
        double weight;
    };
    auto line_for = [](const std::complex<double>& x11, const std::complex<double>& x12,
                       const std::complex<double>& zfix) {
        const std::complex<double> pc = std::conj(zfix) * x12 * x12;
        const std::complex<double> qc = std::conj(zfix) * x11 * x11;
        Line l{pc.real() - qc.real(), -(pc.imag() + qc.imag()), 0.0};
        l.weight = std::hypot(l.a, l.b);
        return l;
    };
    const Line lb = line_for(core.B[0], core.B[1], z3);
    const Line la = line_for(core.A[0], core.A[1], z4);
    const Line& master = lb.weight >= la.weight ? lb : la;
    const Line& other = lb.weight >= la.weight ? la : lb;
    // a weight this small perturbs the block entries by under eps_unit/4 for
    // any psi, so the condition is vacuous
    const double vacuous = eps_unit;
    if (master.weight < vacuous) return std::complex<double>{1.0, 0.0};
    const double psi = std::atan2(-master.a, master.b);
    const double c = std::cos(psi), s = std::sin(psi);
    if (std::abs(other.a * c + other.b * s) > 2.0 * eps_unit) return std::nullopt;
    return {{c, s}};
}

} // namespace detail

// Complete a free z1 into a full admissible (z1, z2, z3, z4). The three branch
// bits select the sign of z3, z4 and z2. Returns nullopt only if the two
// half-turn conditions for z2 disagree; empirically they coincide on the whole
// (theta, phi, z1) cube, and the grid scan treats a nullopt as a failure.
inline std::optional<std::array<UnitScalar, 4>> karlsson_complete_z(
    double theta, double phi, const UnitScalar& z1, bool flip_z3, bool flip_z4, bool flip_z2,
    const ToleranceConfig& tol = {}) {
    const KarlssonCore core = karlsson_core(theta, phi, tol);
    const std::complex<double> iu{0.0, 1.0};
    const std::complex<double> z1c = z1.value();
    auto perp_unit = [&](const std::complex<double>& w,
                         bool flip) -> std::complex<double> {
        if (std::abs(w) < 1e-12) return {1.0, 0.0}; // direction degenerate: any unit works
        auto u = iu * w / std::abs(w);
        return flip ? -u : u;
    };
    const auto z3 = perp_unit(detail::mixed_dir(core.A[0], core.A[1], z1c), flip_z3);
    const auto z4 = perp_unit(detail::mixed_dir(core.B[0], core.B[1], z1c), flip_z4);
    auto z2 = detail::solve_z2(core, z3, z4, tol.eps_unit);
    if (!z2) return std::nullopt;
    if (flip_z2) *z2 = -*z2;
    return std::array<UnitScalar, 4>{z1, UnitScalar::unchecked(*z2), UnitScalar::unchecked(z3),
                                     UnitScalar::unchecked(z4)};
}

} // namespace chm
