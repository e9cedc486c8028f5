#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "padic/scalar.hpp"

using namespace padic;

namespace {
// Deterministic RNG for property tests.
struct Rng {
    uint64_t s = 0x9e3779b97f4a7c15ULL;
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long long range(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};
}  // namespace

TEST_CASE("embedding of rationals") {
    auto x = PAdicScalar::from_rational(12, 1, 2);
    CHECK(x.valuation_int() == 2);
    CHECK(x.unit() == 3);
    auto y = PAdicScalar::from_rational(1, 6, 3);
    CHECK(y.valuation_int() == -1);
    auto z = PAdicScalar::from_rational(-1, 1, 5, 4);
    CHECK(z.valuation_int() == 0);
    CHECK(z.unit() == 624);  // 5^4 - 1
    CHECK(PAdicScalar::from_rational(0, 3, 7).is_exact_zero());
    CHECK_THROWS_AS(PAdicScalar::from_rational(1, 0, 7), InvalidProblem);
}

TEST_CASE("valuation states") {
    auto z = PAdicScalar::zero(3);
    CHECK(z.valuation().is_pos_inf());
    CHECK(z.valuation_lower_bound().is_pos_inf());
    auto zb = PAdicScalar::zero_ball(3, 10);
    CHECK_THROWS_AS(zb.valuation(), PrecisionExhausted);
    CHECK(zb.valuation_lower_bound() == ExtRational(10));
    CHECK(zb.abs_precision() == 10);
}

TEST_CASE("cancellation degrades to a zero ball, never lies") {
    auto a = PAdicScalar::from_integer(7, 3, 8);
    auto d = a - a;
    CHECK(d.is_zero_ball());
    CHECK(d.abs_precision() == 8);
    // partial cancellation keeps the certified digits
    auto x = PAdicScalar::from_integer(1, 3, 8);
    auto y = PAdicScalar::from_integer(1 + 81, 3, 8);
    auto s = y - x;
    CHECK(s.valuation_int() == 4);
}

TEST_CASE("ultrametric inequality on random sums") {
    Rng rng;
    const long long primes[] = {2, 3, 5, 7};
    for (int t = 0; t < 400; ++t) {
        long long p = primes[rng.range(0, 3)];
        auto a = PAdicScalar::from_rational(rng.range(-50, 50), rng.range(1, 50), p, 32);
        auto b = PAdicScalar::from_rational(rng.range(-50, 50), rng.range(1, 50), p, 32);
        auto s = a + b;
        ExtRational bound = min(a.valuation_lower_bound(), b.valuation_lower_bound());
        CHECK(s.valuation_lower_bound() >= bound);
        if (a.certified_nonzero() && b.certified_nonzero() &&
            a.valuation_int() != b.valuation_int()) {
            // strict triangle equality when norms differ
            CHECK(s.valuation_int() == std::min(a.valuation_int(), b.valuation_int()));
        }
    }
}

TEST_CASE("multiplicativity of the valuation") {
    Rng rng;
    for (int t = 0; t < 400; ++t) {
        long long p = t % 2 ? 3 : 5;
        auto a = PAdicScalar::from_rational(rng.range(-99, 99), rng.range(1, 99), p, 32);
        auto b = PAdicScalar::from_rational(rng.range(-99, 99), rng.range(1, 99), p, 32);
        auto prod = a * b;
        if (a.is_exact_zero() || b.is_exact_zero()) {
            CHECK(prod.is_exact_zero());
        } else {
            CHECK(prod.valuation_int() == a.valuation_int() + b.valuation_int());
        }
    }
}

TEST_CASE("inverse and powers") {
    auto a = PAdicScalar::from_rational(3, 4, 7, 16);
    auto one = a * a.inv();
    CHECK(one.valuation_int() == 0);
    CHECK(one.unit() == 1);
    auto cube = a.pow(3);
    auto manual = a * a * a;
    CHECK(eq_at_precision(cube, manual));
    CHECK_THROWS_AS(PAdicScalar::zero(7).inv(), InvalidProblem);
    CHECK_THROWS_AS(PAdicScalar::zero_ball(7, 5).inv(), PrecisionExhausted);
}

TEST_CASE("field-law properties at working precision") {
    Rng rng;
    for (int t = 0; t < 200; ++t) {
        long long p = 3;
        auto a = PAdicScalar::from_rational(rng.range(-30, 30), rng.range(1, 30), p, 24);
        auto b = PAdicScalar::from_rational(rng.range(-30, 30), rng.range(1, 30), p, 24);
        auto c = PAdicScalar::from_rational(rng.range(-30, 30), rng.range(1, 30), p, 24);
        CHECK(eq_at_precision((a + b) + c, a + (b + c)));
        CHECK(eq_at_precision(a * b, b * a));
        CHECK(eq_at_precision(a * (b + c), a * b + a * c));
    }
}

TEST_CASE("exact rational round trip through the embedding") {
    Rng rng;
    for (int t = 0; t < 200; ++t) {
        long long p = t % 2 ? 2 : 5;
        long long num = rng.range(-500, 500), den = rng.range(1, 500);
        auto x = PAdicScalar::from_rational(num, den, p, 48);
        auto back = x * PAdicScalar::from_integer(den, p, 48) -
                    PAdicScalar::from_integer(num, p, 48);
        CHECK(back.is_zeroish());
    }
}

TEST_CASE("from_parts validates and reduces") {
    auto s = PAdicScalar::from_parts(5, -2, bigint(7), 6);
    CHECK(s.valuation_int() == -2);
    CHECK(s.relative_precision() == 6);
    CHECK_THROWS_AS(PAdicScalar::from_parts(5, 0, bigint(10), 6), InvalidProblem);
    CHECK_THROWS_AS(PAdicScalar::from_parts(5, 0, bigint(7), 0), InvalidProblem);
}

TEST_CASE("mixed primes are rejected") {
    auto a = PAdicScalar::from_integer(1, 2);
    auto b = PAdicScalar::from_integer(1, 3);
    CHECK_THROWS_AS(a + b, InvalidProblem);
    CHECK_THROWS_AS(a * b, InvalidProblem);
}

TEST_CASE("disk membership") {
    Disk open_disk{ExtRational(1, 2), true};
    CHECK(open_disk.contains(PAdicScalar::from_integer(3, 3)));       // v = 1 > 1/2
    CHECK(!open_disk.contains(PAdicScalar::from_integer(2, 3)));      // v = 0
    Disk closed{ExtRational(1), false};
    CHECK(closed.contains(PAdicScalar::from_integer(3, 3)));
}
