#pragma once

#include <map>
#include <vector>

#include "padic/cauchy.hpp"
#include "padic/errors.hpp"
#include "padic/mittag.hpp"
#include "padic/scalar.hpp"

namespace padic {

using MultiIndex = std::vector<int>;

inline int multi_degree(const MultiIndex& a) {
    int d = 0;
    for (int x : a) d += x;
    return d;
}

/**
 * Truncated multivariate analytic function on the p-adic polydisk of
 * radius rho = p^{rho_exp}. `exact` marks genuine polynomials (every
 * coefficient beyond the stored support is zero); otherwise coefficients
 * are exact only up to `valid_degree`, and each differential application
 * consumes degrees.
 */
struct MultiSeries {
    long long prime = 2;
    int nvars = 1;
    ExtRational rho_exp;  // s with rho = p^s
    int degree_bound = 0;
    int valid_degree = 0;
    bool exact = false;
    std::map<MultiIndex, PAdicScalar> coeffs;

    static MultiSeries zero(long long p, int nvars, const ExtRational& s, int degree_bound = 0) {
        MultiSeries f;
        f.prime = p;
        f.nvars = nvars;
        f.rho_exp = s;
        f.degree_bound = degree_bound;
        f.valid_degree = degree_bound;
        f.exact = true;
        return f;
    }

    static MultiSeries constant(const PAdicScalar& c, int nvars, const ExtRational& s) {
        MultiSeries f = zero(c.prime(), nvars, s);
        if (!c.is_exact_zero()) f.coeffs[MultiIndex(nvars, 0)] = c;
        return f;
    }

    static MultiSeries monomial(const MultiIndex& a, const PAdicScalar& c, const ExtRational& s) {
        MultiSeries f = zero(c.prime(), static_cast<int>(a.size()), s, multi_degree(a));
        if (!c.is_exact_zero()) f.coeffs[a] = c;
        return f;
    }

    void set(const MultiIndex& a, const PAdicScalar& c) {
        if (static_cast<int>(a.size()) != nvars) throw InvalidProblem("MultiSeries::set: arity");
        if (multi_degree(a) > degree_bound) {
            degree_bound = multi_degree(a);
            if (exact) valid_degree = degree_bound;
        }
        if (c.is_exact_zero())
            coeffs.erase(a);
        else
            coeffs[a] = c;
    }

    PAdicScalar get(const MultiIndex& a) const {
        auto it = coeffs.find(a);
        return it == coeffs.end() ? PAdicScalar::zero(prime) : it->second;
    }

    void check_compatible(const MultiSeries& o) const {
        if (prime != o.prime || nvars != o.nvars || !(rho_exp == o.rho_exp))
            throw InvalidProblem("MultiSeries: incompatible parameters");
    }
};

inline MultiSeries ms_add(const MultiSeries& f, const MultiSeries& g) {
    f.check_compatible(g);
    MultiSeries r = f;
    r.degree_bound = std::max(f.degree_bound, g.degree_bound);
    r.exact = f.exact && g.exact;
    r.valid_degree = r.exact ? r.degree_bound : std::min(f.exact ? g.valid_degree : f.valid_degree,
                                                         g.exact ? f.valid_degree : g.valid_degree);
    for (const auto& [a, c] : g.coeffs) {
        PAdicScalar s = r.get(a) + c;
        if (s.is_exact_zero())
            r.coeffs.erase(a);
        else
            r.coeffs[a] = s;
    }
    return r;
}

inline MultiSeries ms_scale(const MultiSeries& f, const PAdicScalar& s) {
    MultiSeries r = f;
    if (s.is_exact_zero()) {
        r.coeffs.clear();
        return r;
    }
    for (auto& [a, c] : r.coeffs) c = c * s;
    return r;
}

inline bool ms_is_zeroish(const MultiSeries& f) {
    for (const auto& [a, c] : f.coeffs)
        if (!c.is_zeroish()) return false;
    return true;
}

// f -> df/dx_j, coefficient (a_j + 1) f_{a + e_j}. Norm exponent drops by
// rho_exp: the operator has norm exactly 1/rho.
inline MultiSeries partial_derivative(const MultiSeries& f, int j) {
    if (j < 0 || j >= f.nvars) throw InvalidProblem("partial_derivative: variable index");
    if (!f.exact && f.valid_degree < 1)
        throw InsufficientDegree("partial_derivative: no exact degrees left");
    MultiSeries r = f;
    r.coeffs.clear();
    if (!f.exact) r.valid_degree = f.valid_degree - 1;
    for (const auto& [a, c] : f.coeffs) {
        if (a[j] == 0) continue;
        MultiIndex b = a;
        b[j] -= 1;
        PAdicScalar v = c * PAdicScalar::from_integer(a[j], f.prime);
        if (!v.is_exact_zero()) r.coeffs[b] = v;
    }
    return r;
}

// Truncated Cauchy product. Exact inputs give an exact product (the bound
// is widened); otherwise terms above min(degree bounds) are dropped.
inline MultiSeries multiply(const MultiSeries& f, const MultiSeries& g) {
    f.check_compatible(g);
    MultiSeries r = MultiSeries::zero(f.prime, f.nvars, f.rho_exp);
    r.exact = f.exact && g.exact;
    if (r.exact) {
        r.degree_bound = f.degree_bound + g.degree_bound;
        r.valid_degree = r.degree_bound;
    } else {
        r.degree_bound = std::min(f.degree_bound, g.degree_bound);
        r.valid_degree = std::min(f.exact ? g.valid_degree : f.valid_degree,
                                  g.exact ? f.valid_degree : g.valid_degree);
    }
    for (const auto& [a, ca] : f.coeffs) {
        for (const auto& [b, cb] : g.coeffs) {
            MultiIndex s(f.nvars);
            for (int i = 0; i < f.nvars; ++i) s[i] = a[i] + b[i];
            if (multi_degree(s) > r.degree_bound) continue;
            PAdicScalar v = r.get(s) + ca * cb;
            if (v.is_exact_zero())
                r.coeffs.erase(s);
            else
                r.coeffs[s] = v;
        }
    }
    return r;
}

struct RhoNorm {
    ExtRational exponent = ExtRational::neg_inf();
    bool exact = false;  // false: norm of the truncation only
};

// ||f||_rho = sup_a |f_a| rho^{|a|}: max over stored multi-indices of
// (-v(f_a) + s |a|).
inline RhoNorm a_rho_norm(const MultiSeries& f) {
    RhoNorm r;
    r.exact = f.exact;
    ExtRational uncertified = ExtRational::neg_inf();
    for (const auto& [a, c] : f.coeffs) {
        ExtRational w = f.rho_exp * ExtRational(multi_degree(a));
        if (c.certified_nonzero())
            r.exponent = max(r.exponent, ExtRational(c.valuation_int() * -1) + w);
        else if (c.is_zero_ball())
            uncertified = max(uncertified, ExtRational(-c.abs_precision()) + w);
    }
    if (uncertified > r.exponent)
        throw PrecisionExhausted("a_rho_norm: dominant coefficient uncertified");
    return r;
}

// Upper bound usable in certificates even with zero-ball coefficients.
inline ExtRational ms_norm_exp_upper(const MultiSeries& f) {
    ExtRational e = ExtRational::neg_inf();
    for (const auto& [a, c] : f.coeffs)
        e = max(e, -c.valuation_lower_bound() + f.rho_exp * ExtRational(multi_degree(a)));
    return e;
}

/**
 * Finite-order linear differential operator sum_beta a_beta(x) D^beta with
 * analytic coefficients.
 */
struct DiffOp {
    std::map<MultiIndex, MultiSeries> terms;

    int max_order() const {
        int m = 0;
        for (const auto& [b, a] : terms) m = std::max(m, multi_degree(b));
        return m;
    }

    void add_term(const MultiIndex& beta, const MultiSeries& a) {
        if (!terms.empty()) terms.begin()->second.check_compatible(a);
        terms.emplace(beta, a);
    }
};

inline MultiSeries diffop_apply(const DiffOp& op, const MultiSeries& f) {
    if (op.terms.empty()) {
        MultiSeries r = f;
        r.coeffs.clear();
        return r;
    }
    int order = op.max_order();
    if (!f.exact && f.valid_degree < order)
        throw InsufficientDegree("diffop_apply: valid degree below operator order");
    MultiSeries acc = MultiSeries::zero(f.prime, f.nvars, f.rho_exp);
    bool first = true;
    for (const auto& [beta, a] : op.terms) {
        MultiSeries df = f;
        for (int j = 0; j < f.nvars; ++j)
            for (int q = 0; q < beta[j]; ++q) df = partial_derivative(df, j);
        // derivative consumption is uniform: charge the full operator order
        if (!f.exact) df.valid_degree = f.valid_degree - order;
        MultiSeries term = multiply(a, df);
        acc = first ? term : ms_add(acc, term);
        first = false;
    }
    if (!f.exact) acc.valid_degree = f.valid_degree - order;
    return acc;
}

// ||A|| <= max_beta rho^{-|beta|} ||a_beta||_rho, in exponents.
inline ExtRational diffop_norm_bound(const DiffOp& op) {
    ExtRational e = ExtRational::neg_inf();
    for (const auto& [beta, a] : op.terms) {
        RhoNorm n = a_rho_norm(a);
        if (n.exponent.is_neg_inf()) continue;
        const ExtRational& s = a.rho_exp;
        e = max(e, n.exponent - s * ExtRational(multi_degree(beta)));
    }
    return e;
}

// ---- carrier interface ----

inline MultiSeries carrier_add(const MultiSeries& a, const MultiSeries& b) { return ms_add(a, b); }
inline MultiSeries carrier_scale(const MultiSeries& a, const PAdicScalar& s) {
    return ms_scale(a, s);
}
inline ExtRational carrier_norm_exp_upper(const MultiSeries& a) { return ms_norm_exp_upper(a); }
inline bool carrier_is_zeroish(const MultiSeries& a) { return ms_is_zeroish(a); }
inline MultiSeries carrier_zero_like(const MultiSeries& a) {
    return MultiSeries::zero(a.prime, a.nvars, a.rho_exp);
}

using PdeCauchyProblem = CauchyProblem<DiffOp, MultiSeries>;

/**
 * The PDE Cauchy problem: the carrier space is A_rho and A the differential
 * operator; A is bounded, so the type is bounded by the operator norm and
 * the reported disk threshold is (norm bound)/m + 1/(p-1).
 */
inline CauchySolution<MultiSeries> pde_solve(const PdeCauchyProblem& problem,
                                             int output_degree = -1) {
    problem.validate();
    const int m = problem.m;
    const long long p = problem.prime;
    const int order = problem.op.max_order();

    if (output_degree >= 0) {
        int required = output_degree + problem.n_terms * order;
        for (const auto& phi : problem.initial) {
            if (phi.exact) continue;
            if (phi.valid_degree < required)
                throw InsufficientDegree("pde_solve: initial data carries " +
                                         std::to_string(phi.valid_degree) +
                                         " exact degrees, needs " + std::to_string(required));
        }
    }

    ExtRational alpha = diffop_norm_bound(problem.op);
    auto apply = [&problem](const MultiSeries& f) { return diffop_apply(problem.op, f); };

    CauchySolution<MultiSeries> sol;
    std::vector<BSeries<MultiSeries>> parts(m);
    for (int k = 0; k < m; ++k) {
        const MultiSeries& phi = problem.initial[k];
        std::optional<TailParams> tp;
        if (!alpha.is_neg_inf() && !ms_is_zeroish(phi))
            tp = TailParams{alpha, -ms_norm_exp_upper(phi)};
        parts[k] = build_ml_series(apply, phi, m, k, problem.n_terms, p, tp,
                                   problem.precision_cap);
        TypeCertificate cert;
        cert.sigma_exp = alpha;  // operator-norm bound, not a Newton-polygon type
        cert.method = TypeCertificate::Method::Empirical;
        sol.per_k_types.push_back(cert);
        if (!parts[k].polynomial)
            sol.radius_threshold = max(sol.radius_threshold, ml_radius(alpha, m, p));
    }
    MultiSeries sample = problem.initial.empty()
                             ? MultiSeries::zero(p, 1, ExtRational(0))
                             : carrier_zero_like(problem.initial[0]);
    sol.series = detail::merge_ml_sum(parts, p, sample);
    return sol;
}

inline ResidualReport verify_residual(const CauchySolution<MultiSeries>& sol,
                                      const PdeCauchyProblem& problem) {
    return verify_residual(sol, problem,
                           [&problem](const MultiSeries& f) { return diffop_apply(problem.op, f); });
}

}  // namespace padic
