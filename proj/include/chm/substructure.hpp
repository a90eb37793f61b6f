#pragma once

#include <complex>
#include <vector>

#include "chm/matrix.hpp"

namespace chm {

// Rows/cols of a submatrix, 1-based and strictly increasing (reporting type).
struct BlockLocation {
    std::vector<int> rows;
    std::vector<int> cols;
    friend bool operator==(const BlockLocation&, const BlockLocation&) = default;
};

// All 2x2 submatrices with orthogonal rows (the scaled-Hadamard condition;
// exact equality to F2 is not required), lexicographic by (rows, cols).
inline std::vector<BlockLocation> find_h2_blocks(const CMatrix& m, const ToleranceConfig& tol = {}) {
    std::vector<BlockLocation> out;
    for (int r1 = 0; r1 < kOrder; ++r1)
        for (int r2 = r1 + 1; r2 < kOrder; ++r2)
            for (int c1 = 0; c1 < kOrder; ++c1)
                for (int c2 = c1 + 1; c2 < kOrder; ++c2) {
                    const auto ip = m.at(r1, c1).value() * std::conj(m.at(r2, c1).value()) +
                                    m.at(r1, c2).value() * std::conj(m.at(r2, c2).value());
                    if (std::abs(ip) < tol.eps_orth)
                        out.push_back({{r1 + 1, r2 + 1}, {c1 + 1, c2 + 1}});
                }
    return out;
}

inline bool is_h2_reducible(const CMatrix& m, const ToleranceConfig& tol = {}) {
    for (int r1 = 0; r1 < kOrder; ++r1)
        for (int r2 = r1 + 1; r2 < kOrder; ++r2)
            for (int c1 = 0; c1 < kOrder; ++c1)
                for (int c2 = c1 + 1; c2 < kOrder; ++c2) {
                    const auto ip = m.at(r1, c1).value() * std::conj(m.at(r2, c1).value()) +
                                    m.at(r1, c2).value() * std::conj(m.at(r2, c2).value());
                    if (std::abs(ip) < tol.eps_orth) return true;
                }
    return false;
}

// All 3x3 submatrices S with S S^dagger = 3 I within eps_orth.
inline std::vector<BlockLocation> find_h3_blocks(const CMatrix& m, const ToleranceConfig& tol = {}) {
    std::vector<BlockLocation> out;
    for (int r1 = 0; r1 < kOrder; ++r1)
        for (int r2 = r1 + 1; r2 < kOrder; ++r2)
            for (int r3 = r2 + 1; r3 < kOrder; ++r3)
                for (int c1 = 0; c1 < kOrder; ++c1)
                    for (int c2 = c1 + 1; c2 < kOrder; ++c2)
                        for (int c3 = c2 + 1; c3 < kOrder; ++c3) {
                            const int rows[3] = {r1, r2, r3};
                            const int cols[3] = {c1, c2, c3};
                            double dev = 0.0;
                            for (int i = 0; i < 3 && dev < tol.eps_orth; ++i)
                                for (int j = 0; j < 3; ++j) {
                                    std::complex<double> g{0.0, 0.0};
                                    for (int k = 0; k < 3; ++k)
                                        g += m.at(rows[i], cols[k]).value() *
                                             std::conj(m.at(rows[j], cols[k]).value());
                                    if (i == j) g -= 3.0;
                                    dev = std::max(dev, std::abs(g));
                                }
                            if (dev < tol.eps_orth)
                                out.push_back({{r1 + 1, r2 + 1, r3 + 1}, {c1 + 1, c2 + 1, c3 + 1}});
                        }
    return out;
}

// All 2x3 submatrices of rank one: the ratio of the two rows is constant over
// the three columns within eps_eq.
inline std::vector<BlockLocation> find_rank1_2x3(const CMatrix& m, const ToleranceConfig& tol = {}) {
    std::vector<BlockLocation> out;
    for (int r1 = 0; r1 < kOrder; ++r1)
        for (int r2 = r1 + 1; r2 < kOrder; ++r2) {
            std::complex<double> ratio[kOrder];
            for (int c = 0; c < kOrder; ++c)
                ratio[c] = m.at(r1, c).value() * std::conj(m.at(r2, c).value());
            for (int c1 = 0; c1 < kOrder; ++c1)
                for (int c2 = c1 + 1; c2 < kOrder; ++c2)
                    for (int c3 = c2 + 1; c3 < kOrder; ++c3)
                        if (std::abs(ratio[c1] - ratio[c2]) < tol.eps_eq &&
                            std::abs(ratio[c1] - ratio[c3]) < tol.eps_eq &&
                            std::abs(ratio[c2] - ratio[c3]) < tol.eps_eq)
                            out.push_back({{r1 + 1, r2 + 1}, {c1 + 1, c2 + 1, c3 + 1}});
        }
    return out;
}

} // namespace chm
