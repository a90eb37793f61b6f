#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "chm/error.hpp"

namespace chm {

inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

// Reduced fraction p/q of a full turn, q > 0, 0 <= p < q.
struct Rational {
    std::int64_t num{0};
    std::int64_t den{1};

    static Rational reduced(std::int64_t n, std::int64_t d) {
        if (d == 0) throw domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return Rational{n, d};
    }

    // Reduce into [0, 1) turns.
    Rational mod1() const {
        std::int64_t n = num % den;
        if (n < 0) n += den;
        return Rational{n, den};
    }

    friend bool operator==(const Rational&, const Rational&) = default;
};

// Sum of two turn fractions mod 1; empty when the exact form would overflow.
inline std::optional<Rational> add_turns(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den, b.den);
    const std::int64_t den = a.den / g * b.den;
    if (den > (std::int64_t{1} << 40)) return std::nullopt;
    const std::int64_t num = a.num * (b.den / g) + b.num * (a.den / g);
    return Rational::reduced(num, den).mod1();
}

namespace detail {

// cos/sin of 2*pi*p/q, exact doubles for the denominators that occur in the
// named matrices (q | 12) so that {1,-1,+-i,+-w,+-w^2} arithmetic stays exact.
inline std::complex<double> unit_from_turns(const Rational& t) {
    const Rational r = t.mod1();
    static const double half_sqrt3 = std::sqrt(3.0) / 2.0;
    static const double half_sqrt2 = std::sqrt(2.0) / 2.0;
    if (12 % r.den == 0) {
        const int k = static_cast<int>(r.num * (12 / r.den)); // twelfths of a turn
        switch (k) {
            case 0:  return {1.0, 0.0};
            case 1:  return {half_sqrt3, 0.5};
            case 2:  return {0.5, half_sqrt3};
            case 3:  return {0.0, 1.0};
            case 4:  return {-0.5, half_sqrt3};
            case 5:  return {-half_sqrt3, 0.5};
            case 6:  return {-1.0, 0.0};
            case 7:  return {-half_sqrt3, -0.5};
            case 8:  return {-0.5, -half_sqrt3};
            case 9:  return {0.0, -1.0};
            case 10: return {0.5, -half_sqrt3};
            case 11: return {half_sqrt3, -0.5};
        }
    }
    if (r.den == 8) {
        switch (r.num) {
            case 1: return {half_sqrt2, half_sqrt2};
            case 3: return {-half_sqrt2, half_sqrt2};
            case 5: return {-half_sqrt2, -half_sqrt2};
            case 7: return {half_sqrt2, -half_sqrt2};
        }
    }
    const double a = two_pi * static_cast<double>(r.num) / static_cast<double>(r.den);
    return {std::cos(a), std::sin(a)};
}

} // namespace detail

// A complex number of modulus one. Carries an exact phase tag (turns p/q)
// whenever the value is a known root of unity; products and conjugates
// propagate tags so multisets of roots of unity sort exactly.
class UnitScalar {
  public:
    UnitScalar() : re_(1.0), im_(0.0), turns_(Rational{0, 1}) {}

    static UnitScalar from_turns(const Rational& t) {
        const Rational r = t.mod1();
        const auto z = detail::unit_from_turns(r);
        return UnitScalar(z.real(), z.imag(), r);
    }

    static UnitScalar from_turns(std::int64_t num, std::int64_t den) {
        return from_turns(Rational::reduced(num, den));
    }

    // Validating constructor for external values; eps bounds | |z| - 1 |.
    static UnitScalar from_complex(std::complex<double> z, double eps) {
        if (std::abs(std::abs(z) - 1.0) > eps)
            throw domain_error("UnitScalar: modulus " + std::to_string(std::abs(z)) +
                               " is not 1 within tolerance");
        return UnitScalar(z.real(), z.imag(), std::nullopt);
    }

    // Trusted constructor for values produced by unimodular arithmetic.
    static UnitScalar unchecked(std::complex<double> z,
                                std::optional<Rational> turns = std::nullopt) {
        return UnitScalar(z.real(), z.imag(), std::move(turns));
    }

    static UnitScalar from_phase(double radians) {
        return UnitScalar(std::cos(radians), std::sin(radians), std::nullopt);
    }

    static UnitScalar one() { return from_turns(0, 1); }
    static UnitScalar minus_one() { return from_turns(1, 2); }
    static UnitScalar i_unit() { return from_turns(1, 4); }
    static UnitScalar omega() { return from_turns(1, 3); }
    static UnitScalar omega_sq() { return from_turns(2, 3); }

    double re() const { return re_; }
    double im() const { return im_; }
    std::complex<double> value() const { return {re_, im_}; }
    const std::optional<Rational>& exact_turns() const { return turns_; }

    // Phase in [0, 2*pi); exact tags win over atan2 rounding.
    double phase() const {
        if (turns_) return two_pi * static_cast<double>(turns_->num) / static_cast<double>(turns_->den);
        double p = std::atan2(im_, re_);
        if (p < 0.0) p += two_pi;
        if (p >= two_pi) p = 0.0;
        return p;
    }

    UnitScalar conj() const {
        std::optional<Rational> t;
        if (turns_) t = Rational{-turns_->num, turns_->den}.mod1();
        return UnitScalar(re_, -im_, t);
    }

    UnitScalar operator-() const {
        std::optional<Rational> t;
        if (turns_) t = add_turns(*turns_, Rational{1, 2});
        return UnitScalar(-re_, -im_, t);
    }

    friend UnitScalar operator*(const UnitScalar& a, const UnitScalar& b) {
        std::optional<Rational> t;
        if (a.turns_ && b.turns_) t = add_turns(*a.turns_, *b.turns_);
        const auto z = a.value() * b.value();
        return UnitScalar(z.real(), z.imag(), t);
    }

    friend bool approx_eq(const UnitScalar& a, const UnitScalar& b, double eps) {
        return std::abs(a.value() - b.value()) < eps;
    }

  private:
    UnitScalar(double re, double im, std::optional<Rational> turns)
        : re_(re), im_(im), turns_(std::move(turns)) {}

    double re_;
    double im_;
    std::optional<Rational> turns_;
};

inline UnitScalar conj(const UnitScalar& u) { return u.conj(); }

// Ordering used everywhere a deterministic report is needed.
inline bool phase_less(const UnitScalar& a, const UnitScalar& b) {
    const double pa = a.phase(), pb = b.phase();
    if (pa != pb) return pa < pb;
    return a.re() < b.re();
}

} // namespace chm
