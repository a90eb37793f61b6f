#pragma once

#include <array>
#include <complex>
#include <string>

#include "chm/error.hpp"
#include "chm/matrix.hpp"
#include "chm/unit_scalar.hpp"

namespace chm {

// Classification of a unimodular triple by its sum: either the sum is nonzero,
// or (a,b,c) is proportional to (1,w,w^2) or to (1,w^2,w).
enum class ChordTag { NonZeroSum, OmegaOrder, OmegaBarOrder };

struct ChordClass {
    ChordTag tag{ChordTag::NonZeroSum};
    UnitScalar scale{UnitScalar::one()}; // = a when the sum vanishes
};

namespace detail {
inline void require_unimodular(const UnitScalar& u, double eps, const char* who) {
    if (std::abs(std::abs(u.value()) - 1.0) > eps)
        throw domain_error(std::string(who) + ": input is not unimodular");
}
} // namespace detail

// a + b + c = 0 with |a|=|b|=|c|=1 forces (a,b,c) = a*(1,w,w^2) or a*(1,w^2,w).
inline ChordClass chord3_class(const UnitScalar& a, const UnitScalar& b, const UnitScalar& c,
                               const ToleranceConfig& tol = {}) {
    detail::require_unimodular(a, tol.eps_unit, "chord3_class");
    detail::require_unimodular(b, tol.eps_unit, "chord3_class");
    detail::require_unimodular(c, tol.eps_unit, "chord3_class");
    if (std::abs(a.value() + b.value() + c.value()) >= tol.eps_orth)
        return ChordClass{ChordTag::NonZeroSum, a};
    const UnitScalar ratio = b * a.conj();
    if (approx_eq(ratio, UnitScalar::omega(), tol.eps_eq))
        return ChordClass{ChordTag::OmegaOrder, a};
    if (approx_eq(ratio, UnitScalar::omega_sq(), tol.eps_eq))
        return ChordClass{ChordTag::OmegaBarOrder, a};
    throw inconsistency_error("chord3_class: zero sum but b/a is not a primitive cube root; "
                              "tolerances are inconsistent");
}

enum class FourTermPartner : int { B = 1, C = 2, D = 3 };

// For a + b + c + d = 0, one of b, c, d equals -a; smallest index on ties.
inline FourTermPartner four_term_partner(const UnitScalar& a, const UnitScalar& b,
                                         const UnitScalar& c, const UnitScalar& d,
                                         const ToleranceConfig& tol = {}) {
    for (const auto* u : {&a, &b, &c, &d})
        detail::require_unimodular(*u, tol.eps_unit, "four_term_partner");
    if (std::abs(a.value() + b.value() + c.value() + d.value()) >= tol.eps_orth)
        throw precondition_error("four_term_partner: sum is not zero");
    const auto minus_a = (-a).value();
    if (std::abs(b.value() - minus_a) < tol.eps_eq) return FourTermPartner::B;
    if (std::abs(c.value() - minus_a) < tol.eps_eq) return FourTermPartner::C;
    if (std::abs(d.value() - minus_a) < tol.eps_eq) return FourTermPartner::D;
    throw inconsistency_error("four_term_partner: no partner within tolerance");
}

// g1+g2+g3 + k*(g4+g5+g6) = 0 over {1,w,w^2} forces k into the sixth roots of
// unity. Returns k = -(g1+g2+g3)/(g4+g5+g6) snapped to the exact root.
inline UnitScalar admissible_scale_factor(const std::array<UnitScalar, 6>& g,
                                          const ToleranceConfig& tol = {}) {
    static const std::array<UnitScalar, 3> cube = {UnitScalar::one(), UnitScalar::omega(),
                                                   UnitScalar::omega_sq()};
    for (const auto& u : g) {
        bool ok = false;
        for (const auto& root : cube) ok = ok || approx_eq(u, root, tol.eps_eq);
        if (!ok) throw domain_error("admissible_scale_factor: entry outside {1,w,w^2}");
    }
    if (approx_eq(g[0], g[1], tol.eps_eq) && approx_eq(g[1], g[2], tol.eps_eq))
        throw precondition_error("admissible_scale_factor: g1, g2, g3 are all equal");
    // With g4 = g5 = g6 the denominator has modulus 3 while the numerator has
    // modulus sqrt(3), so no unimodular k solves the equation.
    if (approx_eq(g[3], g[4], tol.eps_eq) && approx_eq(g[4], g[5], tol.eps_eq))
        throw precondition_error("admissible_scale_factor: g4, g5, g6 are all equal");
    const auto num = g[0].value() + g[1].value() + g[2].value();
    const auto den = g[3].value() + g[4].value() + g[5].value();
    if (std::abs(num) < tol.eps_orth)
        throw precondition_error("admissible_scale_factor: g1+g2+g3 vanishes");
    if (std::abs(den) < tol.eps_orth)
        throw precondition_error("admissible_scale_factor: zero denominator");
    const auto k = -num / den;
    if (std::abs(std::abs(k) - 1.0) > tol.eps_eq)
        throw inconsistency_error("admissible_scale_factor: |k| != 1");
    for (std::int64_t n = 0; n < 6; ++n) {
        const UnitScalar root = UnitScalar::from_turns(n, 6);
        if (std::abs(k - root.value()) < tol.eps_eq) return root;
    }
    throw inconsistency_error("admissible_scale_factor: k is not a sixth root of unity");
}

} // namespace chm
