#pragma once

#include "padic/ext_rational.hpp"
#include "padic/scalar.hpp"

namespace padic {

inline long long digit_sum(long long n, long long p) {
    long long s = 0;
    while (n > 0) {
        s += n % p;
        n /= p;
    }
    return s;
}

// Legendre: v_p(n!) = sum_i floor(n / p^i) = (n - s_p(n)) / (p - 1).
inline long long factorial_valuation(long long n, long long p) {
    long long v = 0;
    for (long long q = n / p; q > 0; q /= p) v += q;
    return v;
}

/**
 * The two-sided estimate (1/(np)) p^{n/(p-1)} <= 1/|n!|_p <= p^{(n-1)/(p-1)},
 * in log_p scale. The lower bound's log_p(np) is irrational, so the bound is
 * kept symbolic and the comparison lower <= exact is carried out by exact
 * integer exponentiation:
 *     n/(p-1) - log_p(np) <= v_p(n!)   <=>   p^{s_p(n)} <= (np)^{p-1}.
 */
struct FactorialNormBounds {
    long long n = 0;
    long long p = 2;
    ExtRational exact;         // v_p(n!)
    ExtRational upper;         // (n-1)/(p-1)
    bool lower_le_exact = false;
    bool exact_le_upper = false;
};

inline FactorialNormBounds factorial_norm_bounds(long long n, long long p) {
    FactorialNormBounds b;
    b.n = n;
    b.p = p;
    long long s = digit_sum(n, p);
    b.exact = ExtRational((n - s), p - 1);
    b.upper = ExtRational(n - 1, p - 1);
    b.lower_le_exact =
        pow_int(p, static_cast<unsigned long long>(s)) <=
        pow_int(bigint(n) * p, static_cast<unsigned long long>(p - 1));
    b.exact_le_upper = s >= 1;
    return b;
}

// The scalar n! as a certified ball (unit part of n! modulo p^cap).
inline PAdicScalar factorial_scalar(long long n, long long p, int cap = 64) {
    PAdicScalar f = PAdicScalar::from_integer(1, p, cap);
    for (long long i = 2; i <= n; ++i) f = f * PAdicScalar::from_integer(i, p, cap);
    return f;
}

// Incremental factorial: multiply a running value by the next integer.
// Callers building Mittag-Leffler coefficients step this once per term.
inline PAdicScalar factorial_step(const PAdicScalar& fact, long long next, int cap = 64) {
    return fact * PAdicScalar::from_integer(next, fact.prime(), cap);
}

}  // namespace padic
