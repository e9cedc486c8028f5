#pragma once

#include <optional>

#include "padic/errors.hpp"
#include "padic/factorial.hpp"
#include "padic/linalg.hpp"
#include "padic/series.hpp"

namespace padic {

struct MLSpec {
    int m = 1;        // equation order
    int k = 0;        // initial-data slot, 0 <= k < m
    int n_terms = 32; // number of A-powers computed

    void validate() const {
        if (m < 1 || k < 0 || k >= m || n_terms < 0)
            throw InvalidProblem("MLSpec: need m >= 1, 0 <= k < m, n_terms >= 0");
    }
};

// Orbit bound v(A^n x) >= gamma_alpha - n * alpha_exp feeding a tail
// certificate. alpha_exp must dominate the type of x.
struct TailParams {
    ExtRational alpha_exp;
    ExtRational gamma_alpha;
};

/**
 * Generic Mittag-Leffler coefficient build over any carrier:
 *   c_{mn+k} = A^n x / (mn+k)!, zeros elsewhere.
 * Works for matrices and for differential operators alike; the
 * caller supplies the orbit bound that becomes the tail certificate.
 */
template <class C, class ApplyFn>
BSeries<C> build_ml_series(ApplyFn&& apply, const C& x, int m, int k, int n_terms,
                           long long p, const std::optional<TailParams>& tp, int cap = 64) {
    BSeries<C> s;
    s.prime = p;
    s.coeffs.assign(static_cast<size_t>(m) * n_terms + k + 1, carrier_zero_like(x));

    PAdicScalar fact = PAdicScalar::from_integer(1, p, cap);
    long long fact_arg = 0;
    C term = x;
    bool terminated = false;
    int last_nonzero = -1;
    for (int n = 0; n <= n_terms; ++n) {
        long long idx = static_cast<long long>(m) * n + k;
        while (fact_arg < idx) fact = factorial_step(fact, ++fact_arg, cap);
        if (carrier_is_zeroish(term)) {
            terminated = true;
            break;
        }
        s.coeffs[idx] = carrier_scale(term, fact.inv());
        last_nonzero = static_cast<int>(idx);
        if (n < n_terms) term = apply(term);
    }

    if (terminated) {
        s.polynomial = true;
        s.coeffs.resize(last_nonzero + 1, carrier_zero_like(x));
        if (s.coeffs.empty()) s.coeffs.push_back(carrier_zero_like(x));
        return s;
    }

    if (tp) {
        // v(c_{mn+k}) >= (gamma_alpha - n alpha) - v_p((mn+k)!) and
        // v_p(j!) <= (j-1)/(p-1) give a bound linear in the z-index.
        ExtRational slope = -(tp->alpha_exp / m + ExtRational(1, p - 1));
        ExtRational gamma = tp->gamma_alpha + ExtRational(k) * tp->alpha_exp / m;
        s.tail = TailBound{gamma, slope, false};
        check_tail_self_consistency(s);
    }
    return s;
}

// Certified threshold: r = sigma^{-1/m} p^{-1/(p-1)}, i.e. tau = sigma/m + 1/(p-1).
inline ExtRational ml_radius(const ExtRational& sigma_exp, int m, long long p) {
    if (sigma_exp.is_neg_inf()) return ExtRational::neg_inf();
    return sigma_exp / m + ExtRational(1, p - 1);
}

// Default margin above the type: the certificate needs a strict alpha > sigma.
inline ExtRational default_alpha_exp(const ExtRational& sigma_exp, int m) {
    return sigma_exp + ExtRational(1, 2 * m);
}

namespace detail {

inline TailParams matrix_tail_params(const PMatrix& a, const PVector& x,
                                     const TypeCertificate& cert, const ExtRational& alpha_exp) {
    TailParams tp;
    tp.alpha_exp = alpha_exp;
    tp.gamma_alpha = ExtRational::pos_inf();
    PVector w = x;
    for (int i = 0; i < cert.krylov_degree; ++i) {
        tp.gamma_alpha = min(tp.gamma_alpha, -norm_exp_upper(w) + ExtRational(i) * alpha_exp);
        w = mat_apply(a, w);
    }
    return tp;
}

}  // namespace detail

inline BSeries<PVector> ml_coefficients(const PMatrix& a, const PVector& x, const MLSpec& spec,
                                        int cap = 64) {
    spec.validate();
    auto apply = [&a](const PVector& v) { return mat_apply(a, v); };
    if (vec_is_zeroish(x)) {
        BSeries<PVector> s;
        s.prime = a.prime;
        s.coeffs.push_back(PVector::zero(a.dim, a.prime));
        s.polynomial = true;
        return s;
    }
    TypeCertificate cert = vector_type(a, x);
    if (cert.sigma_exp.is_neg_inf())
        return build_ml_series(apply, x, spec.m, spec.k, spec.n_terms, a.prime, std::nullopt, cap);
    ExtRational alpha = default_alpha_exp(cert.sigma_exp, spec.m);
    TailParams tp = detail::matrix_tail_params(a, x, cert, alpha);
    return build_ml_series(apply, x, spec.m, spec.k, spec.n_terms, a.prime, tp, cap);
}

/**
 * Certified evaluation of F_k(z; A)x inside the certified open disk. The
 * margin alpha is chosen midway between sigma and the largest exponent the
 * point allows, so the tail bound at the point has strictly positive slope.
 */
inline EvalResult<PVector> ml_eval(const PMatrix& a, const PVector& x, const MLSpec& spec,
                                   const PAdicScalar& z, int cap = 64) {
    spec.validate();
    if (vec_is_zeroish(x)) {
        return EvalResult<PVector>{PVector::zero(a.dim, a.prime), ExtRational::pos_inf(), true};
    }
    TypeCertificate cert = vector_type(a, x);
    auto apply = [&a](const PVector& v) { return mat_apply(a, v); };

    if (cert.sigma_exp.is_neg_inf()) {
        auto s = build_ml_series(apply, x, spec.m, spec.k, spec.n_terms, a.prime, std::nullopt, cap);
        return series_eval(s, z);
    }

    ExtRational tau = ml_radius(cert.sigma_exp, spec.m, a.prime);
    ExtRational vz = z.is_zeroish() ? ExtRational::pos_inf() : ExtRational(z.valuation_int());
    if (!(vz > tau)) throw DivergentPoint("ml_eval: point outside the certified disk");

    ExtRational alpha;
    if (vz.is_pos_inf()) {
        alpha = default_alpha_exp(cert.sigma_exp, spec.m);
    } else {
        ExtRational limit = (vz - ExtRational(1, a.prime - 1)) * ExtRational(spec.m);
        alpha = (cert.sigma_exp + limit) / 2;
    }
    TailParams tp = detail::matrix_tail_params(a, x, cert, alpha);
    auto s = build_ml_series(apply, x, spec.m, spec.k, spec.n_terms, a.prime, tp, cap);
    return series_eval(s, z);
}

/**
 * Coefficient series of F_k^{(i)} via the closed-form relations: derivatives
 * never leave the Mittag-Leffler family, they only shift k and push powers
 * of A onto x.
 */
inline BSeries<PVector> ml_derivative(const PMatrix& a, const PVector& x, const MLSpec& spec,
                                      int i, int cap = 64) {
    spec.validate();
    if (i < 0) throw InvalidProblem("ml_derivative: negative order");
    if (i <= spec.k)
        return ml_coefficients(a, x, MLSpec{spec.m, spec.k - i, spec.n_terms}, cap);
    int t = i - spec.k;
    int l = t / spec.m;
    int j = t % spec.m;
    int power = (j == 0) ? l : l + 1;
    int kk = (j == 0) ? 0 : spec.m - j;
    PVector w = x;
    for (int q = 0; q < power; ++q) w = mat_apply(a, w);
    return ml_coefficients(a, w, MLSpec{spec.m, kk, spec.n_terms}, cap);
}

}  // namespace padic
