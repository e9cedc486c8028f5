#pragma once

#include <optional>
#include <vector>

#include "padic/errors.hpp"
#include "padic/ext_rational.hpp"
#include "padic/scalar.hpp"

namespace padic {

/**
 * Linear-in-n bound on coefficient norms:
 *   norm_exp(c_n) <= -(gamma + slope * n)   for all n,
 * including the stored prefix (self-consistency is checked on attach).
 * The certified radius threshold it implies is tau = -slope.
 * `tight` marks certificates where the bound is attained for n beyond the
 * truncation; only those can refute A_r membership.
 */
struct TailBound {
    ExtRational gamma;
    ExtRational slope;
    bool tight = false;
};

/**
 * Truncated power series sum c_n z^n with coefficients in a Banach-space
 * carrier C. `polynomial` asserts that all coefficients beyond the stored
 * truncation are exactly zero.
 */
template <class C>
struct BSeries {
    long long prime = 2;
    std::vector<C> coeffs;
    std::optional<TailBound> tail;
    bool polynomial = false;

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
};

template <class C>
void check_tail_self_consistency(const BSeries<C>& y) {
    if (!y.tail) return;
    for (size_t n = 0; n < y.coeffs.size(); ++n) {
        ExtRational bound = -(y.tail->gamma + y.tail->slope * ExtRational((long long)n));
        if (carrier_norm_exp_upper(y.coeffs[n]) > bound)
            throw InvalidProblem("tail certificate violated by a stored coefficient");
    }
}

template <class C>
BSeries<C> series_add(const BSeries<C>& a, const BSeries<C>& b) {
    if (a.prime != b.prime) throw InvalidProblem("series_add: prime mismatch");
    BSeries<C> r;
    r.prime = a.prime;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    for (size_t i = 0; i < n; ++i) {
        if (i < a.coeffs.size() && i < b.coeffs.size())
            r.coeffs.push_back(carrier_add(a.coeffs[i], b.coeffs[i]));
        else if (i < a.coeffs.size())
            r.coeffs.push_back(a.coeffs[i]);
        else
            r.coeffs.push_back(b.coeffs[i]);
    }
    r.polynomial = a.polynomial && b.polynomial;
    if (a.tail && b.tail) {
        // Weakest of the two certificates: combined slope is the smaller
        // one, gamma adjusted so the combined line stays below both.
        ExtRational slope = min(a.tail->slope, b.tail->slope);
        ExtRational n1((long long)n);
        ExtRational ga = a.tail->gamma + (a.tail->slope - slope) * n1;
        ExtRational gb = b.tail->gamma + (b.tail->slope - slope) * n1;
        ExtRational g0 = min(min(a.tail->gamma, b.tail->gamma), min(ga, gb));
        r.tail = TailBound{g0, slope, false};
    } else if (a.tail && b.polynomial) {
        r.tail = TailBound{a.tail->gamma, a.tail->slope, false};
    } else if (b.tail && a.polynomial) {
        r.tail = TailBound{b.tail->gamma, b.tail->slope, false};
    }
    if (r.tail) {
        // polynomial + tail: the combined bound may no longer cover the
        // stored prefix; drop it if self-consistency fails.
        try {
            check_tail_self_consistency(r);
        } catch (const InvalidProblem&) {
            r.tail.reset();
        }
    }
    return r;
}

template <class C>
struct EvalResult {
    C value;
    ExtRational error_exponent;  // omitted tail has norm <= p^{-error_exponent}
    bool certified = false;
};

/**
 * Ultrametric sum of c_n z^n over the stored prefix. With a tail
 * certificate the omitted remainder is bounded by its leading term; the
 * precondition v(z) > -slope makes the per-term exponent decrease.
 */
template <class C>
EvalResult<C> series_eval(const BSeries<C>& y, const PAdicScalar& z) {
    EvalResult<C> res{carrier_zero_like(y.coeffs.at(0)), ExtRational::pos_inf(), false};
    ExtRational vz = z.is_zeroish() ? ExtRational::pos_inf() : ExtRational(z.valuation_int());

    if (y.tail && !y.polynomial) {
        if (!(vz > -y.tail->slope))
            throw DivergentPoint("evaluation point outside the certified radius");
    }

    PAdicScalar zp = PAdicScalar::from_integer(1, y.prime);
    C acc = carrier_zero_like(y.coeffs.at(0));
    for (size_t n = 0; n < y.coeffs.size(); ++n) {
        acc = carrier_add(acc, carrier_scale(y.coeffs[n], zp));
        zp = zp * z;
    }
    res.value = acc;

    if (y.polynomial) {
        res.error_exponent = ExtRational::pos_inf();
        res.certified = true;
    } else if (y.tail) {
        long long n1 = static_cast<long long>(y.coeffs.size());
        res.error_exponent = y.tail->gamma + ExtRational(n1) * (y.tail->slope + vz);
        res.certified = true;
    } else {
        res.error_exponent = ExtRational::neg_inf();
        res.certified = false;  // polynomial-truncation semantics only
    }
    return res;
}

/**
 * Termwise i-th derivative: sum (n+1)...(n+i) c_{n+i} z^n. The binomial
 * factors have valuation >= 0, so the tail slope survives with gamma
 * shifted by slope * i, realizing r(y^(i)) >= r(y).
 */
template <class C>
BSeries<C> series_derivative(const BSeries<C>& y, int i) {
    if (i < 0) throw InvalidProblem("series_derivative: negative order");
    BSeries<C> r;
    r.prime = y.prime;
    r.polynomial = y.polynomial;
    int nn = static_cast<int>(y.coeffs.size()) - i;
    for (int n = 0; n < nn; ++n) {
        PAdicScalar f = PAdicScalar::from_integer(1, y.prime);
        for (int j = 1; j <= i; ++j)
            f = f * PAdicScalar::from_integer(n + j, y.prime);
        r.coeffs.push_back(carrier_scale(y.coeffs[n + i], f));
    }
    if (nn <= 0 && !y.coeffs.empty())
        r.coeffs.push_back(carrier_zero_like(y.coeffs[0]));
    if (y.tail) {
        r.tail = TailBound{y.tail->gamma + y.tail->slope * ExtRational(i), y.tail->slope, false};
    }
    return r;
}

struct RadiusEstimate {
    ExtRational tau;  // radius r = p^{-tau}
    bool certified = false;
};

template <class C>
RadiusEstimate radius_lower_bound(const BSeries<C>& y) {
    if (y.tail && !y.polynomial) return {-y.tail->slope, true};
    if (y.polynomial || y.tail) return {ExtRational::neg_inf(), true};
    // Estimate from finite data: a limsup cannot be computed from a
    // truncation, so this is explicitly non-certified.
    RadiusEstimate est{ExtRational::neg_inf(), false};
    for (size_t n = 1; n < y.coeffs.size(); ++n) {
        ExtRational e = carrier_norm_exp_upper(y.coeffs[n]);
        if (e.is_neg_inf()) continue;
        est.tau = max(est.tau, e / static_cast<long long>(n));
    }
    return est;
}

struct ArNorm {
    ExtRational exponent;
    bool certified = false;
};

/**
 * ||y||_r = sup_n ||c_n|| r^n at r = p^{-tau}. Certified when the tail is
 * valid, tau lies strictly inside the certified radius, and the sup over
 * the unseen indices is dominated by a stored term.
 */
template <class C>
ArNorm ar_norm(const BSeries<C>& y, const ExtRational& tau) {
    ArNorm res{ExtRational::neg_inf(), false};
    for (size_t n = 0; n < y.coeffs.size(); ++n)
        res.exponent = max(res.exponent,
                           carrier_norm_exp_upper(y.coeffs[n]) - ExtRational((long long)n) * tau);
    if (y.polynomial) {
        res.certified = true;
        return res;
    }
    if (y.tail && tau > -y.tail->slope) {
        long long n1 = static_cast<long long>(y.coeffs.size());
        ExtRational tail_bound = -(y.tail->gamma) - ExtRational(n1) * (y.tail->slope + tau);
        if (tail_bound <= res.exponent) {
            res.certified = true;
        } else {
            res.exponent = tail_bound;  // upper bound only
        }
    }
    return res;
}

enum class Tri { Yes, No, Unknown };

// Membership in A_r (conditions (i) r(y) >= r and (ii) ||c_i|| r^i -> 0).
template <class C>
Tri in_Ar_check(const BSeries<C>& y, const ExtRational& tau) {
    if (y.polynomial) return Tri::Yes;
    if (!y.tail) return Tri::Unknown;
    ExtRational tau_cert = -y.tail->slope;
    if (tau_cert < tau) return Tri::Yes;  // strictly inside: both (i) and (ii)
    if (tau_cert == tau) {
        // On the boundary a linear certificate bounds ||c_i|| r^i by a
        // constant; that neither proves nor refutes the limit.
        return Tri::Unknown;
    }
    if (y.tail->tight) {
        // Bound attained: ||c_n|| r^n = p^{-gamma} p^{-n (slope + tau)}
        // with slope + tau < 0 grows without bound.
        return Tri::No;
    }
    return Tri::Unknown;
}

}  // namespace padic
