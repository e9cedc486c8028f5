#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>

#include "padic/errors.hpp"
#include "padic/ext_rational.hpp"

namespace padic {

using bigint = boost::multiprecision::cpp_int;

inline bigint pow_int(bigint base, unsigned long long e) {
    bigint r = 1;
    while (e) {
        if (e & 1ULL) r *= base;
        base *= base;
        e >>= 1ULL;
    }
    return r;
}

// Inverse of a modulo m (gcd(a, m) = 1), by extended Euclid.
inline bigint mod_inverse(const bigint& a, const bigint& m) {
    bigint r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    bigint t0 = 0, t1 = 1;
    while (r1 != 0) {
        bigint q = r0 / r1;
        bigint r2 = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        bigint t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0 != 1) throw IndeterminateForm("mod_inverse: arguments not coprime");
    if (t0 < 0) t0 += m;
    return t0;
}

struct PrecisionConfig {
    int cap = 64;  // relative precision cap, in base-p digits
};

/**
 * A p-adic number at fixed precision with ball semantics.
 *
 * Three states:
 *   ExactZero  -- the number 0, known exactly;
 *   Ball       -- unit * p^v + O(p^M), unit coprime to p, M > v;
 *   ZeroBall   -- O(p^M): every digit below the modulus cancelled, so the
 *                 valuation is NOT certified. Asking for it throws.
 *
 * Cancellation in addition is detected, never silently absorbed: a sum
 * whose visible digits all vanish degrades to a ZeroBall.
 */
class PAdicScalar {
public:
    enum class Kind { ExactZero, Ball, ZeroBall };

    PAdicScalar() = default;  // exact zero at p = 2

    static PAdicScalar zero(long long p) {
        PAdicScalar s;
        s.prime_ = p;
        s.kind_ = Kind::ExactZero;
        return s;
    }

    static PAdicScalar zero_ball(long long p, long long abs_prec) {
        PAdicScalar s;
        s.prime_ = p;
        s.kind_ = Kind::ZeroBall;
        s.abs_prec_ = abs_prec;
        return s;
    }

    static PAdicScalar from_integer(long long a, long long p, int cap = 64) {
        return from_rational(a, 1, p, cap);
    }

    // Reassemble a ball from its parts (deserialization).
    static PAdicScalar from_parts(long long p, long long val, bigint unit, long long rel) {
        if (rel <= 0) throw InvalidProblem("from_parts: nonpositive relative precision");
        bigint mod = pow_int(p, static_cast<unsigned long long>(rel));
        unit %= mod;
        if (unit < 0) unit += mod;
        if (unit % p == 0) throw InvalidProblem("from_parts: unit divisible by p");
        PAdicScalar s;
        s.prime_ = p;
        s.kind_ = Kind::Ball;
        s.val_ = val;
        s.rel_ = rel;
        s.unit_ = std::move(unit);
        return s;
    }

    // Embedding of a/b into Q_p with full relative precision.
    static PAdicScalar from_rational(long long a, long long b, long long p, int cap = 64) {
        if (b == 0) throw InvalidProblem("from_rational: zero denominator");
        if (a == 0) return zero(p);
        long long v = 0;
        bigint na = a, nb = b;
        while (na % p == 0) {
            na /= p;
            ++v;
        }
        while (nb % p == 0) {
            nb /= p;
            --v;
        }
        PAdicScalar s;
        s.prime_ = p;
        s.kind_ = Kind::Ball;
        s.val_ = v;
        s.rel_ = cap;
        bigint mod = pow_int(p, static_cast<unsigned long long>(cap));
        bigint u = (na % mod) * mod_inverse(nb, mod) % mod;
        if (u < 0) u += mod;
        s.unit_ = u;
        return s;
    }

    long long prime() const { return prime_; }
    Kind kind() const { return kind_; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    bool is_zero_ball() const { return kind_ == Kind::ZeroBall; }
    bool certified_nonzero() const { return kind_ == Kind::Ball; }
    // Exact zero or indistinguishable from zero at working precision.
    bool is_zeroish() const { return kind_ != Kind::Ball; }

    const bigint& unit() const { return unit_; }
    long long relative_precision() const { return rel_; }

    long long valuation_int() const {
        if (kind_ == Kind::Ball) return val_;
        throw PrecisionExhausted("valuation of an uncertified (zero-ball) scalar");
    }

    ExtRational valuation() const {
        if (kind_ == Kind::ExactZero) return ExtRational::pos_inf();
        if (kind_ == Kind::ZeroBall)
            throw PrecisionExhausted("valuation of an uncertified (zero-ball) scalar");
        return ExtRational(val_);
    }

    // Certified lower bound on the valuation; defined in every state.
    ExtRational valuation_lower_bound() const {
        switch (kind_) {
            case Kind::ExactZero: return ExtRational::pos_inf();
            case Kind::ZeroBall: return ExtRational(abs_prec_);
            default: return ExtRational(val_);
        }
    }

    // Modulus exponent M: the value is certified modulo p^M.
    long long abs_precision() const {
        if (kind_ == Kind::ExactZero)
            throw InvalidProblem("abs_precision of exact zero");
        return kind_ == Kind::Ball ? val_ + rel_ : abs_prec_;
    }

    PAdicScalar operator-() const {
        if (kind_ != Kind::Ball) return *this;
        PAdicScalar r = *this;
        bigint mod = pow_int(prime_, static_cast<unsigned long long>(rel_));
        r.unit_ = mod - unit_;
        return r;
    }

    friend PAdicScalar operator+(const PAdicScalar& x, const PAdicScalar& y) {
        x.check_same_prime(y);
        if (x.kind_ == Kind::ExactZero) return y;
        if (y.kind_ == Kind::ExactZero) return x;
        long long M = std::min(x.abs_precision(), y.abs_precision());
        if (x.kind_ == Kind::ZeroBall || y.kind_ == Kind::ZeroBall) {
            const PAdicScalar& b = x.kind_ == Kind::Ball ? x : y;
            if (b.kind_ != Kind::Ball || b.val_ >= M) return zero_ball(x.prime_, M);
            PAdicScalar r = b;
            r.rel_ = M - b.val_;
            r.unit_ = b.unit_ % pow_int(x.prime_, static_cast<unsigned long long>(r.rel_));
            return r;
        }
        long long vmin = std::min(x.val_, y.val_);
        if (vmin >= M) return zero_ball(x.prime_, M);
        bigint mod = pow_int(x.prime_, static_cast<unsigned long long>(M - vmin));
        bigint s = x.unit_ * pow_int(x.prime_, static_cast<unsigned long long>(x.val_ - vmin)) +
                   y.unit_ * pow_int(x.prime_, static_cast<unsigned long long>(y.val_ - vmin));
        s %= mod;
        if (s == 0) return zero_ball(x.prime_, M);
        long long shift = 0;
        while (s % x.prime_ == 0) {
            s /= x.prime_;
            ++shift;
        }
        PAdicScalar r;
        r.prime_ = x.prime_;
        r.kind_ = Kind::Ball;
        r.val_ = vmin + shift;
        r.rel_ = M - r.val_;
        r.unit_ = std::move(s);
        return r;
    }

    friend PAdicScalar operator-(const PAdicScalar& x, const PAdicScalar& y) { return x + (-y); }

    friend PAdicScalar operator*(const PAdicScalar& x, const PAdicScalar& y) {
        x.check_same_prime(y);
        if (x.kind_ == Kind::ExactZero || y.kind_ == Kind::ExactZero) return zero(x.prime_);
        if (x.kind_ == Kind::ZeroBall || y.kind_ == Kind::ZeroBall) {
            // |xy| <= p^{-(M_zb + v_other)}; with two zero balls, the lower
            // bounds on the valuations add.
            long long m = 0;
            m += x.kind_ == Kind::ZeroBall ? x.abs_prec_ : x.val_;
            m += y.kind_ == Kind::ZeroBall ? y.abs_prec_ : y.val_;
            return zero_ball(x.prime_, m);
        }
        PAdicScalar r;
        r.prime_ = x.prime_;
        r.kind_ = Kind::Ball;
        r.val_ = x.val_ + y.val_;
        r.rel_ = std::min(x.rel_, y.rel_);
        bigint mod = pow_int(x.prime_, static_cast<unsigned long long>(r.rel_));
        r.unit_ = x.unit_ * y.unit_ % mod;
        return r;
    }

    PAdicScalar inv() const {
        if (kind_ == Kind::ExactZero) throw InvalidProblem("inverse of exact zero");
        if (kind_ == Kind::ZeroBall)
            throw PrecisionExhausted("inverse of an uncertified (zero-ball) scalar");
        PAdicScalar r;
        r.prime_ = prime_;
        r.kind_ = Kind::Ball;
        r.val_ = -val_;
        r.rel_ = rel_;
        bigint mod = pow_int(prime_, static_cast<unsigned long long>(rel_));
        r.unit_ = mod_inverse(unit_, mod);
        return r;
    }

    PAdicScalar pow(unsigned long long e) const {
        PAdicScalar r = from_integer(1, prime_, kind_ == Kind::Ball ? static_cast<int>(rel_) : 64);
        PAdicScalar b = *this;
        while (e) {
            if (e & 1ULL) r = r * b;
            b = b * b;
            e >>= 1ULL;
        }
        return r;
    }

    // Equality at the joint working precision: the difference is zeroish.
    friend bool eq_at_precision(const PAdicScalar& x, const PAdicScalar& y) {
        return (x - y).is_zeroish();
    }

    std::string to_string() const {
        if (kind_ == Kind::ExactZero) return "0";
        if (kind_ == Kind::ZeroBall) return "O(" + std::to_string(prime_) + "^" + std::to_string(abs_prec_) + ")";
        return unit_.str() + "*" + std::to_string(prime_) + "^" + std::to_string(val_) +
               " + O(" + std::to_string(prime_) + "^" + std::to_string(val_ + rel_) + ")";
    }

private:
    void check_same_prime(const PAdicScalar& o) const {
        if (prime_ != o.prime_) throw InvalidProblem("mixed primes in scalar arithmetic");
    }

    long long prime_ = 2;
    Kind kind_ = Kind::ExactZero;
    long long val_ = 0;       // Ball
    bigint unit_ = 0;         // Ball: in [1, p^rel - 1], coprime to p
    long long rel_ = 0;       // Ball: relative precision (M = val + rel)
    long long abs_prec_ = 0;  // ZeroBall
};

// Open or closed p-adic disk about 0, radius r = p^{-threshold}.
struct Disk {
    ExtRational threshold;
    bool open = true;

    bool contains(const PAdicScalar& z) const {
        // |z| < p^{-tau}  <=>  v(z) > tau (strict for open disks).
        ExtRational v = z.valuation();
        return open ? v > threshold : v >= threshold;
    }
};

}  // namespace padic
