#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "chm/catalog.hpp"
#include "chm/error.hpp"
#include "chm/identities.hpp"
#include "chm/matrix.hpp"
#include "chm/monomial.hpp"
#include "chm/substructure.hpp"

namespace chm {

// Certifies left * M * right = N entrywise.
struct EquivalenceWitness {
    MonomialUnitary left;
    MonomialUnitary right;
};

inline double witness_deviation(const CMatrix& m, const CMatrix& n, const EquivalenceWitness& w) {
    return max_entry_deviation(apply_right(apply_left(w.left, m), w.right), n);
}

namespace detail {

// Multiset of quadruple products anchored at one row, invariant under row
// phases, column permutations and column phases; used to prune row images.
inline std::vector<UnitScalar> row_profile(const CMatrix& m, int r) {
    std::vector<UnitScalar> out;
    out.reserve(5 * 30);
    for (int s = 0; s < kOrder; ++s) {
        if (s == r) continue;
        for (int j = 0; j < kOrder; ++j)
            for (int l = 0; l < kOrder; ++l) {
                if (j == l) continue;
                out.push_back(m.at(r, j) * m.at(s, l) * m.at(r, l).conj() * m.at(s, j).conj());
            }
    }
    std::sort(out.begin(), out.end(), phase_less);
    return out;
}

struct EquivSearch {
    const CMatrix& m;
    const CMatrix& n;
    double eps;
    std::array<std::vector<int>, kOrder> cand; // per target row: admissible source rows
    std::array<int, kOrder> sigma{};
    std::array<bool, kOrder> used{};
    std::optional<EquivalenceWitness> result;

    // With row images fixed, match source columns to target columns greedily;
    // CHM columns are pairwise non-proportional, so a column has at most one
    // valid image and no backtracking over columns is needed.
    bool try_columns() {
        for (int c0 = 0; c0 < kOrder; ++c0) {
            const UnitScalar q0 = n.at(0, 0) * m.at(sigma[0], c0).conj();
            std::array<UnitScalar, kOrder> p, q;
            std::array<int, kOrder> colmap{};
            for (int i = 0; i < kOrder; ++i)
                p[static_cast<size_t>(i)] = n.at(i, 0) * (q0 * m.at(sigma[static_cast<size_t>(i)], c0)).conj();
            q[static_cast<size_t>(c0)] = q0;
            colmap[static_cast<size_t>(c0)] = 0;
            std::array<bool, kOrder> taken{};
            taken[0] = true;
            bool ok = true;
            for (int c = 0; c < kOrder && ok; ++c) {
                if (c == c0) continue;
                bool placed = false;
                for (int t = 1; t < kOrder && !placed; ++t) {
                    if (taken[static_cast<size_t>(t)]) continue;
                    const UnitScalar qc = n.at(0, t) * m.at(sigma[0], c).conj();
                    bool match = true;
                    for (int i = 1; i < kOrder && match; ++i) {
                        const UnitScalar lhs =
                            p[static_cast<size_t>(i)] * qc * m.at(sigma[static_cast<size_t>(i)], c);
                        match = approx_eq(lhs, n.at(i, t), eps);
                    }
                    if (match) {
                        q[static_cast<size_t>(c)] = qc;
                        colmap[static_cast<size_t>(c)] = t;
                        taken[static_cast<size_t>(t)] = true;
                        placed = true;
                    }
                }
                ok = placed;
            }
            if (!ok) continue;
            EquivalenceWitness w;
            for (int i = 0; i < kOrder; ++i) {
                w.left.perm[static_cast<size_t>(i)] = sigma[static_cast<size_t>(i)];
                w.left.phases[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
            }
            for (int c = 0; c < kOrder; ++c) {
                w.right.perm[static_cast<size_t>(c)] = colmap[static_cast<size_t>(c)];
                w.right.phases[static_cast<size_t>(c)] = q[static_cast<size_t>(c)];
            }
            if (witness_deviation(m, n, w) >= eps)
                throw inconsistency_error("are_equivalent: witness failed re-verification");
            result = w;
            return true;
        }
        return false;
    }

    bool dfs(int depth) {
        if (depth == kOrder) return try_columns();
        for (int r : cand[static_cast<size_t>(depth)]) {
            if (used[static_cast<size_t>(r)]) continue;
            used[static_cast<size_t>(r)] = true;
            sigma[static_cast<size_t>(depth)] = r;
            if (dfs(depth + 1)) return true;
            used[static_cast<size_t>(r)] = false;
        }
        return false;
    }
};

} // namespace detail

// Decide complex equivalence M ~ N and produce a witness. Haagerup multisets
// gate the search; the backtracker is exact for matrices whose entry phases
// are separated by more than 10 * eps_eq.
inline std::optional<EquivalenceWitness> are_equivalent(const CMatrix& m, const CMatrix& n,
                                                        const ToleranceConfig& tol = {}) {
    if (!is_chm(m, tol) || !is_chm(n, tol))
        throw domain_error("are_equivalent: inputs must be CHMs");
    const double eps = 10.0 * tol.eps_eq;
    if (!multiset_match(haagerup_multiset(m), haagerup_multiset(n), eps)) return std::nullopt;
    detail::EquivSearch search{m, n, eps, {}, {}, {}, std::nullopt};
    std::array<std::vector<UnitScalar>, kOrder> prof_m, prof_n;
    for (int r = 0; r < kOrder; ++r) {
        prof_m[static_cast<size_t>(r)] = detail::row_profile(m, r);
        prof_n[static_cast<size_t>(r)] = detail::row_profile(n, r);
    }
    for (int i = 0; i < kOrder; ++i)
        for (int r = 0; r < kOrder; ++r)
            if (multiset_match(prof_n[static_cast<size_t>(i)], prof_m[static_cast<size_t>(r)], eps))
                search.cand[static_cast<size_t>(i)].push_back(r);
    search.dfs(0);
    return search.result;
}

namespace detail {

inline double phase_snapped(const UnitScalar& u, double eps) {
    double p = u.phase();
    if (p > two_pi - eps) p -= two_pi;
    return p;
}

// -1 / 0 / +1 lexicographic phase order with eps-equality so that rounding
// jitter cannot reorder equal values across the 0/2pi cut.
inline int tri_compare(const UnitScalar& a, const UnitScalar& b, double eps) {
    if (approx_eq(a, b, eps)) return 0;
    return phase_snapped(a, eps) < phase_snapped(b, eps) ? -1 : 1;
}

} // namespace detail

namespace detail {

inline double phase_snapped_val(std::complex<double> v, double eps) {
    double p = std::atan2(v.imag(), v.real());
    if (p < 0.0) p += two_pi;
    if (p > two_pi - eps) p -= two_pi;
    return p;
}

inline int tri_compare_val(std::complex<double> a, std::complex<double> b, double eps) {
    if (std::abs(a - b) < eps) return 0;
    return phase_snapped_val(a, eps) < phase_snapped_val(b, eps) ? -1 : 1;
}

} // namespace detail

// Deterministic representative of the complex-equivalence class: dephase, then
// take the phase-lexicographic minimum (row-major) of the re-dephased matrix
// over all row and column permutations.
inline CMatrix canonical_form(const CMatrix& m, const ToleranceConfig& tol = {}) {
    if (!is_chm(m, tol)) throw domain_error("canonical_form: input must be a CHM");
    const CMatrix md = dephase(m).matrix;
    std::array<std::complex<double>, kOrder * kOrder> v;
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c) v[static_cast<size_t>(r * kOrder + c)] = md.at(r, c).value();
    auto val = [&](const std::array<int, kOrder>& sig, const std::array<int, kOrder>& ta, int i, int j) {
        const auto at = [&](int r, int c) {
            return v[static_cast<size_t>(sig[static_cast<size_t>(r)] * kOrder + ta[static_cast<size_t>(c)])];
        };
        return at(i, j) * std::conj(at(0, j)) * std::conj(at(i, 0)) * at(0, 0);
    };
    std::array<int, kOrder> sigma, tau, best_sigma{}, best_tau{};
    bool have_best = false;
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        std::iota(tau.begin(), tau.end(), 0);
        do {
            if (!have_best) {
                best_sigma = sigma;
                best_tau = tau;
                have_best = true;
                continue;
            }
            int cmp = 0;
            for (int i = 0; i < kOrder && cmp == 0; ++i)
                for (int j = 0; j < kOrder && cmp == 0; ++j)
                    cmp = detail::tri_compare_val(val(sigma, tau, i, j), val(best_sigma, best_tau, i, j),
                                                  tol.eps_eq);
            if (cmp < 0) {
                best_sigma = sigma;
                best_tau = tau;
            }
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    // Rebuild with UnitScalar arithmetic so exact phase tags survive.
    CMatrix best;
    auto mdat = [&](int r, int c) {
        return md.at(best_sigma[static_cast<size_t>(r)], best_tau[static_cast<size_t>(c)]);
    };
    for (int i = 0; i < kOrder; ++i)
        for (int j = 0; j < kOrder; ++j)
            best.at(i, j) = mdat(i, j) * mdat(0, j).conj() * mdat(i, 0).conj() * mdat(0, 0);
    return best;
}

struct HFamilyMatch {
    HFamilyParams params;
    EquivalenceWitness witness;
};

// Constructive classification of matrices with a rank-one 2x3 block, following
// the block -> dephase -> chord-solve pipeline. Returns family parameters and
// a witness onto h_family(alpha, beta); empty when no rank-one block exists.
inline std::optional<HFamilyMatch> match_h_family(const CMatrix& m, const ToleranceConfig& tol = {}) {
    if (!is_chm(m, tol)) throw domain_error("match_h_family: input must be a CHM");
    const auto blocks = find_rank1_2x3(m, tol);
    if (blocks.empty()) return std::nullopt;
    const double eps = 10.0 * tol.eps_eq;

    for (const auto& block : blocks) {
        const int br[2] = {block.rows[0] - 1, block.rows[1] - 1};
        const int bc[3] = {block.cols[0] - 1, block.cols[1] - 1, block.cols[2] - 1};
        std::vector<int> rest_rows, rest_cols;
        for (int r = 0; r < kOrder; ++r)
            if (r != br[0] && r != br[1]) rest_rows.push_back(r);
        for (int c = 0; c < kOrder; ++c)
            if (c != bc[0] && c != bc[1] && c != bc[2]) rest_cols.push_back(c);

        for (int row_swap = 0; row_swap < 2; ++row_swap)
            for (int col_swap = 0; col_swap < 2; ++col_swap)
                for (int tail_parity = 0; tail_parity < 2; ++tail_parity) {
                    std::array<int, kOrder> gamma = {
                        bc[0], col_swap ? bc[2] : bc[1], col_swap ? bc[1] : bc[2],
                        rest_cols[0], tail_parity ? rest_cols[2] : rest_cols[1],
                        tail_parity ? rest_cols[1] : rest_cols[2]};
                    // Stage 1: lower rows in ascending order, to read off tail
                    // chirality in the chosen column order.
                    std::array<int, kOrder> rho = {br[row_swap], br[1 - row_swap], rest_rows[0],
                                                   rest_rows[1], rest_rows[2], rest_rows[3]};
                    MonomialUnitary row_perm = MonomialUnitary::from_perm(rho);
                    MonomialUnitary col_perm;
                    for (int t = 0; t < kOrder; ++t)
                        col_perm.perm[static_cast<size_t>(gamma[static_cast<size_t>(t)])] = t;
                    const DephaseResult stage = dephase(apply_right(apply_left(row_perm, m), col_perm));

                    std::vector<int> omega_rows, omega_bar_rows;
                    bool chirality_ok = true;
                    for (int r = 2; r < kOrder && chirality_ok; ++r) {
                        const ChordClass cls = chord3_class(stage.matrix.at(r, 3), stage.matrix.at(r, 4),
                                                            stage.matrix.at(r, 5), tol);
                        if (cls.tag == ChordTag::OmegaOrder)
                            omega_rows.push_back(rho[static_cast<size_t>(r)]);
                        else if (cls.tag == ChordTag::OmegaBarOrder)
                            omega_bar_rows.push_back(rho[static_cast<size_t>(r)]);
                        else
                            chirality_ok = false;
                    }
                    if (!chirality_ok || omega_rows.size() != 2 || omega_bar_rows.size() != 2) continue;

                    // Stage 2: omega-chirality rows into slots 3-4, bar rows into 5-6.
                    rho = {br[row_swap], br[1 - row_swap], omega_rows[0],
                           omega_rows[1], omega_bar_rows[0], omega_bar_rows[1]};
                    row_perm = MonomialUnitary::from_perm(rho);
                    const DephaseResult arranged = dephase(apply_right(apply_left(row_perm, m), col_perm));
                    const CMatrix& cand = arranged.matrix;
                    const HFamilyParams params{cand.at(2, 3), cand.at(4, 3)};
                    if (!entrywise_close(cand, h_family(params, tol), eps)) continue;

                    EquivalenceWitness w;
                    w.left = compose(arranged.left, row_perm);
                    w.right = compose(col_perm, arranged.right);
                    if (witness_deviation(m, cand, w) >= eps)
                        throw inconsistency_error("match_h_family: witness failed re-verification");
                    return HFamilyMatch{params, w};
                }
    }
    throw inconsistency_error(
        "match_h_family: rank-one 2x3 block present but no arrangement reproduces the family shape");
}

} // namespace chm
