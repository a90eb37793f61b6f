#include <doctest.h>

#include "chm/catalog.hpp"
#include "chm/matrix.hpp"
#include "chm/random.hpp"
#include "chm/substructure.hpp"

using namespace chm;

TEST_SUITE("catalog") {

TEST_CASE("tao matrix pins") {
    const CMatrix t = tao();
    CHECK(approx_eq(t.at(0, 0), UnitScalar::one(), 1e-12));
    CHECK(approx_eq(t.at(1, 2), UnitScalar::omega(), 1e-12)); // row 2, col 3
    CHECK(is_chm(t));
    CHECK(entrywise_close(t, transpose(t), 1e-12));
    const auto d = distinct_elements(t);
    REQUIRE(d.size() == 3);
    CHECK(approx_eq(d[1], UnitScalar::omega(), 1e-12));
}

TEST_CASE("m1 and m2 pins") {
    const CMatrix a = m1(), b = m2();
    CHECK(is_chm(a));
    CHECK(is_chm(b));
    CHECK(approx_eq(b.at(0, 0), UnitScalar::i_unit(), 1e-12));
    CHECK(approx_eq(b.at(1, 4), UnitScalar::minus_one(), 1e-12)); // row 2, col 5
    CHECK(entrywise_close(b, transpose(b), 1e-12));
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c) {
            const bool allowed = approx_eq(a.at(r, c), UnitScalar::one(), 1e-12) ||
                                 approx_eq(a.at(r, c), UnitScalar::minus_one(), 1e-12) ||
                                 approx_eq(a.at(r, c), UnitScalar::omega(), 1e-12) ||
                                 approx_eq(a.at(r, c), -UnitScalar::omega(), 1e-12);
            CHECK(allowed);
        }
}

TEST_CASE("two-parameter family structure") {
    const CMatrix h = h_family({});
    // row 4 at alpha = beta = 1
    const std::array<UnitScalar, 6> row4 = {UnitScalar::one(),      UnitScalar::omega(),
                                            UnitScalar::omega_sq(), UnitScalar::minus_one(),
                                            -UnitScalar::omega(),   -UnitScalar::omega_sq()};
    for (int c = 0; c < kOrder; ++c)
        CHECK(approx_eq(h.at(3, c), row4[static_cast<size_t>(c)], 1e-12));
    // rows 1-2 x cols 1-3 are a rank-one block
    for (int c = 0; c < 3; ++c) {
        CHECK(approx_eq(h.at(0, c), UnitScalar::one(), 1e-12));
        CHECK(approx_eq(h.at(1, c), UnitScalar::one(), 1e-12));
    }
    Rng rng(401);
    for (int trial = 0; trial < 100; ++trial) {
        const HFamilyParams p{rng.unit(), rng.unit()};
        const CMatrix m = h_family(p);
        CHECK(gram_defect(m) < 1e-12);
        // 2x2 Hadamard block at rows {1,2}, cols {1,4}
        const auto ip = m.at(0, 0).value() * std::conj(m.at(1, 0).value()) +
                        m.at(0, 3).value() * std::conj(m.at(1, 3).value());
        CHECK(std::abs(ip) < 1e-12);
    }
    CHECK_THROWS_AS(h_family({UnitScalar::unchecked({1.5, 0.0}), UnitScalar::one()}), domain_error);
}

TEST_CASE("karlsson core values at the origin") {
    const KarlssonCore core = karlsson_core(0.0, 0.0);
    CHECK(std::abs(core.A11 - UnitScalar::omega().value()) < 1e-12);
    CHECK(std::abs(core.A12 - UnitScalar::omega_sq().value()) < 1e-12);
    CHECK_THROWS_AS(karlsson_core(-0.1, 0.0), domain_error);
    CHECK_THROWS_AS(karlsson_core(0.0, std::numbers::pi_v<double>), domain_error);
}

TEST_CASE("karlsson assembly at the origin point") {
    const CMatrix k = karlsson({});
    CHECK(is_chm(k));
    // top-left block is F2
    CHECK(approx_eq(k.at(0, 0), UnitScalar::one(), 1e-12));
    CHECK(approx_eq(k.at(0, 1), UnitScalar::one(), 1e-12));
    CHECK(approx_eq(k.at(1, 0), UnitScalar::one(), 1e-12));
    CHECK(approx_eq(k.at(1, 1), UnitScalar::minus_one(), 1e-12));
    // middle block (1/2) Z3 A Z1 = [[w, w], [w^2, -w^2]]
    CHECK(approx_eq(k.at(2, 2), UnitScalar::omega(), 1e-12));
    CHECK(approx_eq(k.at(2, 3), UnitScalar::omega(), 1e-12));
    CHECK(approx_eq(k.at(3, 2), UnitScalar::omega_sq(), 1e-12));
    CHECK(approx_eq(k.at(3, 3), -UnitScalar::omega_sq(), 1e-12));
    CHECK(distinct_elements(k).size() == 6);
}

TEST_CASE("karlsson rejects parameters off the admissible locus") {
    CHECK_THROWS_AS(karlsson({0.0, 0.0,
                              {UnitScalar::unchecked({0.5, 0.0}), UnitScalar::one(),
                               UnitScalar::one(), UnitScalar::one()}}),
                    domain_error);
    // z1 = z3 = i keeps rows orthogonal but breaks unimodularity
    try {
        karlsson({0.0, 0.0,
                  {UnitScalar::i_unit(), UnitScalar::one(), UnitScalar::i_unit(),
                   UnitScalar::one()}});
        FAIL("expected karlsson_assembly_error");
    } catch (const karlsson_assembly_error& e) {
        CHECK(e.deviation > 1e-3);
        CHECK(e.block_row == 1);
        CHECK(e.block_col == 1);
    }
}

TEST_CASE("completed z tuples give CHMs across the parameter square") {
    Rng rng(402);
    double worst_norm = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double theta = rng.uniform(0.0, std::numbers::pi_v<double> * 0.9999);
        const double phi = rng.uniform(0.0, std::numbers::pi_v<double> * 0.9999);
        const KarlssonCore core = karlsson_core(theta, phi);
        worst_norm = std::max(worst_norm,
                              std::abs(std::norm(core.A11) + std::norm(core.A12) - 2.0));
        const auto z = karlsson_complete_z(theta, phi, rng.unit(), rng.coin(), rng.coin(), rng.coin());
        REQUIRE(z.has_value());
        const CMatrix m = karlsson({theta, phi, *z});
        CHECK(gram_defect(m) < 1e-12);
        CHECK(entries_unimodular(m, 1e-12));
        // the top-left block is F2 for every admissible parameter tuple
        CHECK(approx_eq(m.at(0, 0), UnitScalar::one(), 1e-12));
        CHECK(approx_eq(m.at(0, 1), UnitScalar::one(), 1e-12));
        CHECK(approx_eq(m.at(1, 0), UnitScalar::one(), 1e-12));
        CHECK(approx_eq(m.at(1, 1), UnitScalar::minus_one(), 1e-12));
    }
    CHECK(worst_norm < 1e-10);
}

TEST_CASE("free z draws are rejected rather than silently clamped") {
    Rng rng(403);
    int rejected = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const double theta = rng.uniform(0.0, std::numbers::pi_v<double> * 0.9999);
        const double phi = rng.uniform(0.0, std::numbers::pi_v<double> * 0.9999);
        try {
            karlsson({theta, phi, {rng.unit(), rng.unit(), rng.unit(), rng.unit()}});
        } catch (const karlsson_assembly_error&) {
            ++rejected;
        }
    }
    CHECK(rejected == 50);
}

} // TEST_SUITE
