#pragma once

#include <cstdint>
#include <random>

#include "chm/monomial.hpp"
#include "chm/unit_scalar.hpp"

namespace chm {

// Seeded helper with hand-rolled distributions so identical seeds give
// identical streams on every platform (std distributions are not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; } // [0,1)

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool coin() { return (next() & 1u) != 0; }

    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    UnitScalar unit() { return UnitScalar::from_phase(uniform(0.0, two_pi)); }

    MonomialUnitary monomial() {
        MonomialUnitary u = MonomialUnitary::identity();
        for (int i = kOrder - 1; i > 0; --i) std::swap(u.perm[static_cast<size_t>(i)], u.perm[static_cast<size_t>(below(i + 1))]);
        for (auto& p : u.phases) p = unit();
        return u;
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace chm
