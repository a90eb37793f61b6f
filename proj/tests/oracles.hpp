#pragma once

// Independent brute-force oracles for the test suites. These deliberately take
// different computational routes from the library (full 2x2/3x3 Gram products,
// vanishing minors, exhaustive dephased-permutation matching) and never prune.

#include <array>
#include <complex>
#include <vector>

#include "chm/matrix.hpp"
#include "chm/monomial.hpp"
#include "chm/substructure.hpp"

namespace oracle {

using chm::CMatrix;
using chm::kOrder;

// 2x2 blocks via the full scaled-Hadamard Gram condition X X^dagger = 2I.
inline std::vector<chm::BlockLocation> h2_blocks(const CMatrix& m, double eps) {
    std::vector<chm::BlockLocation> out;
    for (int r1 = 0; r1 < kOrder; ++r1)
        for (int r2 = r1 + 1; r2 < kOrder; ++r2)
            for (int c1 = 0; c1 < kOrder; ++c1)
                for (int c2 = c1 + 1; c2 < kOrder; ++c2) {
                    const std::complex<double> x[2][2] = {
                        {m.at(r1, c1).value(), m.at(r1, c2).value()},
                        {m.at(r2, c1).value(), m.at(r2, c2).value()}};
                    double dev = 0.0;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            std::complex<double> g =
                                x[i][0] * std::conj(x[j][0]) + x[i][1] * std::conj(x[j][1]);
                            if (i == j) g -= 2.0;
                            dev = std::max(dev, std::abs(g));
                        }
                    if (dev < eps) out.push_back({{r1 + 1, r2 + 1}, {c1 + 1, c2 + 1}});
                }
    return out;
}

// 3x3 blocks via the column Gram S^dagger S = 3I.
inline std::vector<chm::BlockLocation> h3_blocks(const CMatrix& m, double eps) {
    std::vector<chm::BlockLocation> out;
    for (int r1 = 0; r1 < kOrder; ++r1)
        for (int r2 = r1 + 1; r2 < kOrder; ++r2)
            for (int r3 = r2 + 1; r3 < kOrder; ++r3)
                for (int c1 = 0; c1 < kOrder; ++c1)
                    for (int c2 = c1 + 1; c2 < kOrder; ++c2)
                        for (int c3 = c2 + 1; c3 < kOrder; ++c3) {
                            const int rows[3] = {r1, r2, r3};
                            const int cols[3] = {c1, c2, c3};
                            double dev = 0.0;
                            for (int i = 0; i < 3; ++i)
                                for (int j = 0; j < 3; ++j) {
                                    std::complex<double> g{0.0, 0.0};
                                    for (int k = 0; k < 3; ++k)
                                        g += std::conj(m.at(rows[k], cols[i]).value()) *
                                             m.at(rows[k], cols[j]).value();
                                    if (i == j) g -= 3.0;
                                    dev = std::max(dev, std::abs(g));
                                }
                            if (dev < eps)
                                out.push_back({{r1 + 1, r2 + 1, r3 + 1}, {c1 + 1, c2 + 1, c3 + 1}});
                        }
    return out;
}

// Rank-one 2x3 blocks via vanishing 2x2 minors. For unimodular entries the
// minor magnitude equals the row-ratio difference the library checks.
inline std::vector<chm::BlockLocation> rank1_blocks(const CMatrix& m, double eps) {
    std::vector<chm::BlockLocation> out;
    for (int r1 = 0; r1 < kOrder; ++r1)
        for (int r2 = r1 + 1; r2 < kOrder; ++r2)
            for (int c1 = 0; c1 < kOrder; ++c1)
                for (int c2 = c1 + 1; c2 < kOrder; ++c2)
                    for (int c3 = c2 + 1; c3 < kOrder; ++c3) {
                        auto minor = [&](int ca, int cb) {
                            return std::abs(m.at(r1, ca).value() * m.at(r2, cb).value() -
                                            m.at(r1, cb).value() * m.at(r2, ca).value());
                        };
                        if (minor(c1, c2) < eps && minor(c1, c3) < eps && minor(c2, c3) < eps)
                            out.push_back({{r1 + 1, r2 + 1}, {c1 + 1, c2 + 1, c3 + 1}});
                    }
    return out;
}

// Pure permutation equivalence: exists row/column permutations with
// P M Q = N entrywise. 720 row orders x greedy column matching.
inline bool perm_equivalent(const CMatrix& m, const CMatrix& n, double eps) {
    std::array<int, kOrder> sigma;
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        std::array<bool, kOrder> taken{};
        bool all_cols = true;
        for (int c = 0; c < kOrder && all_cols; ++c) {
            bool placed = false;
            for (int t = 0; t < kOrder && !placed; ++t) {
                if (taken[static_cast<size_t>(t)]) continue;
                bool same = true;
                for (int i = 0; i < kOrder && same; ++i)
                    same = std::abs(m.at(sigma[static_cast<size_t>(i)], c).value() -
                                    n.at(i, t).value()) < eps;
                if (same) {
                    taken[static_cast<size_t>(t)] = true;
                    placed = true;
                }
            }
            all_cols = placed;
        }
        if (all_cols) return true;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

// Exhaustive complex-equivalence decision through dephased normal forms: M ~ N
// iff some row/column permutation of M dephases to dephase(N). No pruning.
inline bool equivalent_exhaustive(const CMatrix& m, const CMatrix& n, double eps) {
    const CMatrix nd = chm::dephase(n).matrix;
    const CMatrix md = chm::dephase(m).matrix;
    std::array<int, kOrder> sigma, tau;
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        std::iota(tau.begin(), tau.end(), 0);
        do {
            auto at = [&](int i, int j) {
                return md.at(sigma[static_cast<size_t>(i)], tau[static_cast<size_t>(j)]).value();
            };
            bool same = true;
            for (int i = 0; i < kOrder && same; ++i)
                for (int j = 0; j < kOrder && same; ++j) {
                    const auto v = at(i, j) * std::conj(at(0, j)) * std::conj(at(i, 0)) * at(0, 0);
                    same = std::abs(v - nd.at(i, j).value()) < eps;
                }
            if (same) return true;
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

inline bool same_locations(const std::vector<chm::BlockLocation>& a,
                           const std::vector<chm::BlockLocation>& b) {
    if (a.size() != b.size()) return false;
    for (size_t k = 0; k < a.size(); ++k)
        if (!(a[k] == b[k])) return false;
    return true;
}

} // namespace oracle
