#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <vector>

#include "chm/error.hpp"
#include "chm/unit_scalar.hpp"

namespace chm {

constexpr int kOrder = 6;

// Numerical thresholds: eps_unit bounds entry moduli, eps_orth bounds Gram
// residuals, eps_eq decides when two unimodular values count as equal.
struct ToleranceConfig {
    double eps_unit{1e-9};
    double eps_orth{1e-8};
    double eps_eq{1e-8};

    void validate() const {
        if (eps_unit <= 0.0 || eps_orth <= 0.0 || eps_eq <= 0.0)
            throw domain_error("ToleranceConfig: tolerances must be positive");
        if (eps_unit > eps_eq)
            throw domain_error("ToleranceConfig: eps_unit must not exceed eps_eq");
    }
};

// 6x6 grid of unimodular scalars, row-major. The 1/sqrt(6) unitary scaling is
// left implicit throughout: a CHM satisfies M * M^dagger = 6 * I.
class CMatrix {
  public:
    CMatrix() = default;

    const UnitScalar& at(int r, int c) const { return e_[static_cast<size_t>(r * kOrder + c)]; }
    UnitScalar& at(int r, int c) { return e_[static_cast<size_t>(r * kOrder + c)]; }

    friend CMatrix transpose(const CMatrix& m) {
        CMatrix t;
        for (int r = 0; r < kOrder; ++r)
            for (int c = 0; c < kOrder; ++c) t.at(c, r) = m.at(r, c);
        return t;
    }

    friend CMatrix adjoint(const CMatrix& m) {
        CMatrix t;
        for (int r = 0; r < kOrder; ++r)
            for (int c = 0; c < kOrder; ++c) t.at(c, r) = m.at(r, c).conj();
        return t;
    }

  private:
    std::array<UnitScalar, kOrder * kOrder> e_{};
};

inline bool entries_unimodular(const CMatrix& m, double eps) {
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c)
            if (std::abs(std::abs(m.at(r, c).value()) - 1.0) > eps) return false;
    return true;
}

// max_{i,j} |(M M^dagger)_{ij} - 6 delta_{ij}|
inline double gram_defect(const CMatrix& m) {
    double worst = 0.0;
    for (int i = 0; i < kOrder; ++i) {
        for (int j = 0; j < kOrder; ++j) {
            std::complex<double> g{0.0, 0.0};
            for (int k = 0; k < kOrder; ++k)
                g += m.at(i, k).value() * std::conj(m.at(j, k).value());
            if (i == j) g -= 6.0;
            worst = std::max(worst, std::abs(g));
        }
    }
    return worst;
}

inline bool is_chm(const CMatrix& m, const ToleranceConfig& tol = {}) {
    return entries_unimodular(m, tol.eps_unit) && gram_defect(m) < tol.eps_orth;
}

// Per-row counts of non-real entries (|Im| > eps_eq).
struct ImaginaryArray {
    std::array<int, kOrder> counts{};
    friend bool operator==(const ImaginaryArray&, const ImaginaryArray&) = default;
};

inline ImaginaryArray imaginary_array(const CMatrix& m, const ToleranceConfig& tol = {}) {
    ImaginaryArray a;
    for (int r = 0; r < kOrder; ++r) {
        int n = 0;
        for (int c = 0; c < kOrder; ++c)
            if (std::abs(m.at(r, c).im()) > tol.eps_eq) ++n;
        a.counts[static_cast<size_t>(r)] = n;
    }
    return a;
}

// Representatives of entry-value classes under |u - v| < eps_eq, sorted by
// (phase, re). Tagged representatives are preferred so reports print exactly.
inline std::vector<UnitScalar> distinct_elements(const CMatrix& m, const ToleranceConfig& tol = {}) {
    std::vector<UnitScalar> reps;
    for (int r = 0; r < kOrder; ++r) {
        for (int c = 0; c < kOrder; ++c) {
            const UnitScalar& u = m.at(r, c);
            bool found = false;
            for (auto& rep : reps) {
                if (approx_eq(rep, u, tol.eps_eq)) {
                    if (!rep.exact_turns() && u.exact_turns()) rep = u;
                    found = true;
                    break;
                }
            }
            if (!found) reps.push_back(u);
        }
    }
    std::sort(reps.begin(), reps.end(), phase_less);
    return reps;
}

// The 6^4-element multiset of quadruple products M_ij M_kl M_il^* M_kj^*,
// sorted by (phase, re). Invariant under complex equivalence; used as a fast
// non-equivalence certificate.
inline std::vector<UnitScalar> haagerup_multiset(const CMatrix& m) {
    std::vector<UnitScalar> out;
    out.reserve(kOrder * kOrder * kOrder * kOrder);
    for (int i = 0; i < kOrder; ++i)
        for (int k = 0; k < kOrder; ++k)
            for (int j = 0; j < kOrder; ++j)
                for (int l = 0; l < kOrder; ++l)
                    out.push_back(m.at(i, j) * m.at(k, l) * m.at(i, l).conj() * m.at(k, j).conj());
    std::sort(out.begin(), out.end(), phase_less);
    return out;
}

// Tolerance-aware equality of two phase-sorted unimodular multisets. Matches
// circular alignments so values straddling the 0/2pi cut still pair up.
inline bool multiset_match(const std::vector<UnitScalar>& a, const std::vector<UnitScalar>& b,
                           double eps) {
    const size_t n = a.size();
    if (b.size() != n) return false;
    if (n == 0) return true;
    auto aligned = [&](size_t offset) {
        for (size_t k = 0; k < n; ++k)
            if (std::abs(a[k].value() - b[(k + offset) % n].value()) > eps) return false;
        return true;
    };
    for (size_t offset = 0; offset < n; ++offset) {
        if (std::abs(a[0].value() - b[offset].value()) > eps) continue;
        if (aligned(offset)) return true;
    }
    return false;
}

} // namespace chm
