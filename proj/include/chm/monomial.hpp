#pragma once

#include <array>
#include <numeric>

#include "chm/matrix.hpp"
#include "chm/unit_scalar.hpp"

namespace chm {

// Permutation composed with a unimodular diagonal: the matrix with entry
// phases[i] at position (i, perm[i]). Indices are 0-based internally; the
// JSON surface is 1-based.
struct MonomialUnitary {
    std::array<int, kOrder> perm{};
    std::array<UnitScalar, kOrder> phases{};

    static MonomialUnitary identity() {
        MonomialUnitary u;
        std::iota(u.perm.begin(), u.perm.end(), 0);
        return u;
    }

    static MonomialUnitary from_perm(const std::array<int, kOrder>& p) {
        MonomialUnitary u;
        u.perm = p;
        return u;
    }

    static MonomialUnitary from_diag(const std::array<UnitScalar, kOrder>& d) {
        MonomialUnitary u = identity();
        u.phases = d;
        return u;
    }
};

// U * V as matrices.
inline MonomialUnitary compose(const MonomialUnitary& u, const MonomialUnitary& v) {
    MonomialUnitary w;
    for (int i = 0; i < kOrder; ++i) {
        const int k = u.perm[static_cast<size_t>(i)];
        w.perm[static_cast<size_t>(i)] = v.perm[static_cast<size_t>(k)];
        w.phases[static_cast<size_t>(i)] =
            u.phases[static_cast<size_t>(i)] * v.phases[static_cast<size_t>(k)];
    }
    return w;
}

inline MonomialUnitary inverse(const MonomialUnitary& u) {
    MonomialUnitary w;
    for (int i = 0; i < kOrder; ++i) {
        const int j = u.perm[static_cast<size_t>(i)];
        w.perm[static_cast<size_t>(j)] = i;
        w.phases[static_cast<size_t>(j)] = u.phases[static_cast<size_t>(i)].conj();
    }
    return w;
}

// U * M: row i of the product is phases[i] times row perm[i] of M.
inline CMatrix apply_left(const MonomialUnitary& u, const CMatrix& m) {
    CMatrix out;
    for (int i = 0; i < kOrder; ++i)
        for (int c = 0; c < kOrder; ++c)
            out.at(i, c) = u.phases[static_cast<size_t>(i)] * m.at(u.perm[static_cast<size_t>(i)], c);
    return out;
}

// M * U: column c of M lands in column perm[c], scaled by phases[c].
inline CMatrix apply_right(const CMatrix& m, const MonomialUnitary& u) {
    CMatrix out;
    for (int c = 0; c < kOrder; ++c)
        for (int r = 0; r < kOrder; ++r)
            out.at(r, u.perm[static_cast<size_t>(c)]) = m.at(r, c) * u.phases[static_cast<size_t>(c)];
    return out;
}

struct DephaseResult {
    CMatrix matrix;
    MonomialUnitary left;  // diagonal
    MonomialUnitary right; // diagonal
};

// Unique D1 * M * D2 with all-ones first row and column. Exact-phase tags
// survive whenever the entries carry them.
inline DephaseResult dephase(const CMatrix& m) {
    std::array<UnitScalar, kOrder> d1, d2;
    for (int j = 0; j < kOrder; ++j) d2[static_cast<size_t>(j)] = m.at(0, j).conj();
    for (int i = 0; i < kOrder; ++i) d1[static_cast<size_t>(i)] = m.at(i, 0).conj() * m.at(0, 0);
    DephaseResult res;
    res.left = MonomialUnitary::from_diag(d1);
    res.right = MonomialUnitary::from_diag(d2);
    for (int i = 0; i < kOrder; ++i)
        for (int j = 0; j < kOrder; ++j)
            res.matrix.at(i, j) = d1[static_cast<size_t>(i)] * m.at(i, j) * d2[static_cast<size_t>(j)];
    return res;
}

inline bool entrywise_close(const CMatrix& a, const CMatrix& b, double eps) {
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c)
            if (!approx_eq(a.at(r, c), b.at(r, c), eps)) return false;
    return true;
}

inline double max_entry_deviation(const CMatrix& a, const CMatrix& b) {
    double worst = 0.0;
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c)
            worst = std::max(worst, std::abs(a.at(r, c).value() - b.at(r, c).value()));
    return worst;
}

} // namespace chm
