#include <doctest.h>

#include "chm/catalog.hpp"
#include "chm/equivalence.hpp"
#include "chm/random.hpp"
#include "oracles.hpp"

using namespace chm;

TEST_SUITE("equivalence") {

TEST_CASE("monomial algebra round trips") {
    Rng rng(701);
    for (int trial = 0; trial < 20; ++trial) {
        const MonomialUnitary u = rng.monomial(), v = rng.monomial();
        const CMatrix m = tao();
        // (u v) m == u (v m)
        CHECK(entrywise_close(apply_left(compose(u, v), m), apply_left(u, apply_left(v, m)), 1e-12));
        // m (u v) == (m u) v
        CHECK(entrywise_close(apply_right(m, compose(u, v)), apply_right(apply_right(m, u), v), 1e-12));
        // u^-1 undoes u
        CHECK(entrywise_close(apply_left(inverse(u), apply_left(u, m)), m, 1e-12));
        CHECK(entrywise_close(apply_right(apply_right(m, v), inverse(v)), m, 1e-12));
    }
}

TEST_CASE("scrambles of tao are recognized with verified witnesses") {
    Rng rng(702);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix scr = apply_right(apply_left(rng.monomial(), tao()), rng.monomial());
        const auto w = are_equivalent(tao(), scr);
        REQUIRE(w.has_value());
        CHECK(witness_deviation(tao(), scr, *w) < 1e-7);
    }
}

TEST_CASE("tao and m2 are not complex equivalent") {
    CHECK_FALSE(are_equivalent(tao(), m2()).has_value());
    // cross-check with the exhaustive no-pruning decision
    CHECK_FALSE(oracle::equivalent_exhaustive(tao(), m2(), 1e-7));
    CHECK(oracle::equivalent_exhaustive(tao(), tao(), 1e-7));
}

TEST_CASE("m2 is equivalent to its transpose") {
    const auto w = are_equivalent(m2(), transpose(m2()));
    REQUIRE(w.has_value());
    CHECK(witness_deviation(m2(), transpose(m2()), *w) < 1e-7);
}

TEST_CASE("witnesses invert and compose") {
    Rng rng(703);
    const CMatrix a = m2();
    const CMatrix b = apply_right(apply_left(rng.monomial(), a), rng.monomial());
    const CMatrix c = apply_right(apply_left(rng.monomial(), b), rng.monomial());
    const auto wab = are_equivalent(a, b);
    const auto wbc = are_equivalent(b, c);
    REQUIRE(wab.has_value());
    REQUIRE(wbc.has_value());
    // inverse: b -> a
    const EquivalenceWitness wba{inverse(wab->left), inverse(wab->right)};
    CHECK(witness_deviation(b, a, wba) < 1e-7);
    // composition: a -> c
    const EquivalenceWitness wac{compose(wbc->left, wab->left), compose(wab->right, wbc->right)};
    CHECK(witness_deviation(a, c, wac) < 1e-7);
    // reflexivity
    const auto waa = are_equivalent(a, a);
    REQUIRE(waa.has_value());
    CHECK(witness_deviation(a, a, *waa) < 1e-7);
}

TEST_CASE("equivalence requires CHM inputs") {
    CMatrix ones;
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c) ones.at(r, c) = UnitScalar::one();
    CHECK_THROWS_AS(are_equivalent(ones, tao()), domain_error);
    CHECK_THROWS_AS(canonical_form(ones), domain_error);
    CHECK_THROWS_AS(match_h_family(ones), domain_error);
}

TEST_CASE("canonical form is constant on orbits and idempotent") {
    Rng rng(704);
    for (const CMatrix& m : {tao(), m2(), h_family({rng.unit(), rng.unit()})}) {
        const CMatrix canon = canonical_form(m);
        CHECK(is_chm(canon));
        for (int trial = 0; trial < 3; ++trial) {
            const CMatrix scr = apply_right(apply_left(rng.monomial(), m), rng.monomial());
            CHECK(entrywise_close(canonical_form(scr), canon, 1e-7));
        }
        CHECK(entrywise_close(canonical_form(canon), canon, 1e-7));
    }
    // dephased output
    const CMatrix cm2 = canonical_form(m2());
    for (int k = 0; k < kOrder; ++k) {
        CHECK(approx_eq(cm2.at(0, k), UnitScalar::one(), 1e-9));
        CHECK(approx_eq(cm2.at(k, 0), UnitScalar::one(), 1e-9));
    }
    CHECK_FALSE(entrywise_close(canonical_form(tao()), cm2, 1e-7));
}

TEST_CASE("family matching recovers scrambled members up to family symmetry") {
    Rng rng(705);
    for (int trial = 0; trial < 10; ++trial) {
        const HFamilyParams p{rng.unit(), rng.unit()};
        const CMatrix scr = apply_right(apply_left(rng.monomial(), h_family(p)), rng.monomial());
        const auto match = match_h_family(scr);
        REQUIRE(match.has_value());
        const CMatrix target = h_family(match->params);
        CHECK(is_chm(target));
        CHECK(witness_deviation(scr, target, match->witness) < 1e-7);
        CHECK(are_equivalent(scr, target).has_value());
    }
}

TEST_CASE("family matching declines matrices without a rank-one block") {
    CHECK_FALSE(match_h_family(tao()).has_value());
    CHECK_FALSE(match_h_family(m2()).has_value());
}

TEST_CASE("the identity-parameter member matches itself") {
    const auto match = match_h_family(h_family({}));
    REQUIRE(match.has_value());
    CHECK(witness_deviation(h_family({}), h_family(match->params), match->witness) < 1e-12);
}

} // TEST_SUITE
