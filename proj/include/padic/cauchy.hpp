#pragma once

#include <optional>
#include <vector>

#include "padic/errors.hpp"
#include "padic/factorial.hpp"
#include "padic/linalg.hpp"
#include "padic/mittag.hpp"
#include "padic/series.hpp"

namespace padic {

template <class Op, class C>
struct CauchyProblem {
    long long prime = 2;
    int m = 1;
    Op op;
    std::vector<C> initial;  // y_0 .. y_{m-1}
    int n_terms = 32;
    int precision_cap = 64;

    void validate() const {
        if (m < 1 || static_cast<int>(initial.size()) != m)
            throw InvalidProblem("CauchyProblem: initial data must have length m >= 1");
    }
};

using MatrixCauchyProblem = CauchyProblem<PMatrix, PVector>;

template <class C>
struct CauchySolution {
    BSeries<C> series;
    ExtRational radius_threshold = ExtRational::neg_inf();  // max_k tau_k
    std::vector<TypeCertificate> per_k_types;
};

namespace detail {

// Merge per-k Mittag-Leffler series (disjoint index supports). The combined
// certificate is the weakest one: min slope, min gamma; each per-k bound
// holds for every index of its own series, so the min is valid everywhere.
template <class C>
BSeries<C> merge_ml_sum(const std::vector<BSeries<C>>& parts, long long p, const C& sample) {
    BSeries<C> out;
    out.prime = p;
    size_t len = 1;
    for (const auto& s : parts) len = std::max(len, s.coeffs.size());
    out.coeffs.assign(len, carrier_zero_like(sample));
    for (const auto& s : parts)
        for (size_t i = 0; i < s.coeffs.size(); ++i)
            out.coeffs[i] = carrier_add(out.coeffs[i], s.coeffs[i]);

    bool all_polynomial = true;
    std::optional<TailBound> tail;
    for (const auto& s : parts) {
        if (s.polynomial) continue;
        all_polynomial = false;
        if (!s.tail) {
            tail.reset();
            break;
        }
        if (!tail)
            tail = s.tail;
        else
            tail = TailBound{min(tail->gamma, s.tail->gamma), min(tail->slope, s.tail->slope), false};
    }
    out.polynomial = all_polynomial;
    if (!all_polynomial) out.tail = tail;
    return out;
}

}  // namespace detail

/**
 * Solve y^(m) = Ay, y^(k)(0) = y_k for a matrix operator: the solution is
 * the sum of the per-k Mittag-Leffler series, with the certified radius
 * threshold max_k of the per-k type thresholds. On PrecisionExhausted
 * the precision cap is doubled, at most twice.
 *
 * `reverse_assembly` changes the internal order in which the per-k builds
 * are merged; the output is identical either way (disjoint supports).
 */
inline CauchySolution<PVector> solve(const MatrixCauchyProblem& problem,
                                     bool reverse_assembly = false) {
    problem.validate();
    if (problem.op.prime != problem.prime)
        throw InvalidProblem("solve: operator prime mismatch");
    for (const auto& y : problem.initial)
        if (y.dim() != problem.op.dim) throw InvalidProblem("solve: initial data dimension mismatch");

    int cap = problem.precision_cap;
    for (int attempt = 0;; ++attempt) {
        try {
            const int m = problem.m;
            const long long p = problem.prime;
            CauchySolution<PVector> sol;
            sol.per_k_types.resize(m);
            std::vector<BSeries<PVector>> parts(m);

            std::vector<int> order(m);
            for (int k = 0; k < m; ++k) order[k] = reverse_assembly ? m - 1 - k : k;

            for (int k : order) {
                const PVector& yk = problem.initial[k];
                if (vec_is_zeroish(yk)) {
                    parts[k].prime = p;
                    parts[k].coeffs.push_back(PVector::zero(problem.op.dim, p));
                    parts[k].polynomial = true;
                    sol.per_k_types[k].sigma_exp = ExtRational::neg_inf();
                    sol.per_k_types[k].method = TypeCertificate::Method::Empirical;
                    continue;
                }
                sol.per_k_types[k] = vector_type(problem.op, yk);
                parts[k] = ml_coefficients(problem.op, yk, MLSpec{m, k, problem.n_terms}, cap);
                sol.radius_threshold =
                    max(sol.radius_threshold, ml_radius(sol.per_k_types[k].sigma_exp, m, p));
            }

            PVector sample = PVector::zero(problem.op.dim, p);
            sol.series = detail::merge_ml_sum(parts, p, sample);
            return sol;
        } catch (const PrecisionExhausted&) {
            if (attempt >= 2) throw;
            cap *= 2;
        }
    }
}

struct ResidualEntry {
    int n = 0;
    int k = 0;
    bool pass = false;
    ExtRational defect_exponent = ExtRational::neg_inf();  // norm bound on the defect
};

struct ResidualReport {
    bool pass = false;
    std::vector<ResidualEntry> coefficient_checks;  // (mn+k)! c_{mn+k} = A^n y_k
    bool derivative_identity = false;               // termwise y^(m) = A y
    bool initial_data = false;                      // y^(k)(0) = y_k
};

/**
 * Solution verification: the stored coefficients are exactly the operator
 * orbit divided by factorials, the m-th termwise derivative equals A
 * applied to the series, and the initial data is recovered. Failures are
 * reported, not thrown.
 */
template <class Op, class C, class ApplyFn>
ResidualReport verify_residual(const CauchySolution<C>& sol, const CauchyProblem<Op, C>& problem,
                               ApplyFn&& apply) {
    ResidualReport rep;
    rep.pass = true;
    const int m = problem.m;
    const long long p = problem.prime;
    const int trunc = sol.series.truncation();

    for (int k = 0; k < m; ++k) {
        C orbit = problem.initial[k];
        PAdicScalar fact = PAdicScalar::from_integer(1, p, problem.precision_cap);
        long long fact_arg = 0;
        for (int n = 0;; ++n) {
            long long idx = static_cast<long long>(m) * n + k;
            if (idx > trunc) break;
            while (fact_arg < idx) fact = factorial_step(fact, ++fact_arg, problem.precision_cap);
            C lhs = carrier_scale(sol.series.coeffs[idx], fact);
            C diff = carrier_add(lhs, carrier_scale(orbit, PAdicScalar::from_integer(-1, p)));
            ResidualEntry e;
            e.n = n;
            e.k = k;
            e.pass = carrier_is_zeroish(diff);
            e.defect_exponent = carrier_norm_exp_upper(diff);
            rep.pass = rep.pass && e.pass;
            rep.coefficient_checks.push_back(e);
            orbit = apply(orbit);
        }
    }

    rep.derivative_identity = true;
    BSeries<C> dm = series_derivative(sol.series, m);
    for (int j = 0; j + m <= trunc; ++j) {
        C rhs = apply(sol.series.coeffs[j]);
        C diff = carrier_add(dm.coeffs[j], carrier_scale(rhs, PAdicScalar::from_integer(-1, p)));
        if (!carrier_is_zeroish(diff)) rep.derivative_identity = false;
    }
    rep.pass = rep.pass && rep.derivative_identity;

    rep.initial_data = true;
    for (int k = 0; k < m; ++k) {
        C ck = k <= trunc ? sol.series.coeffs[k] : carrier_zero_like(problem.initial[k]);
        C val = carrier_scale(ck, factorial_scalar(k, p, problem.precision_cap));
        C diff = carrier_add(val, carrier_scale(problem.initial[k], PAdicScalar::from_integer(-1, p)));
        if (!carrier_is_zeroish(diff)) rep.initial_data = false;
    }
    rep.pass = rep.pass && rep.initial_data;
    return rep;
}

inline ResidualReport verify_residual(const CauchySolution<PVector>& sol,
                                      const MatrixCauchyProblem& problem) {
    return verify_residual(sol, problem,
                           [&problem](const PVector& v) { return mat_apply(problem.op, v); });
}

/**
 * Quantitative well-posedness from the chain estimate on the difference
 * solution:
 *   ||y_i - y||_r <= max(||y_{i,0} - y_0||_alpha,
 *                        p^{-1/(p-1)} max_k alpha^{-k/m} ||y_{i,k} - y_k||_alpha).
 * Ultrametrically the sum's exponent is the max of the term exponents. The
 * estimate 1/|j!|_p <= p^{(j-1)/(p-1)} only holds for j >= 1, so the
 * j = mn+k = 0 term (k = 0, n = 0) keeps its own constant instead of the
 * p^{-1/(p-1)} factor shared by all others.
 * Requires r strictly inside the alpha disk: tau_r > alpha/m + 1/(p-1).
 */
inline ExtRational wellposedness_bound(const ExtRational& alpha_exp,
                                       const std::vector<ExtRational>& perturbation_exps, int m,
                                       long long p, const ExtRational& r_tau) {
    if (!(r_tau > alpha_exp / m + ExtRational(1, p - 1)))
        throw InvalidProblem("wellposedness_bound: r not inside alpha^{-1/m} p^{-1/(p-1)}");
    ExtRational bound = ExtRational::neg_inf();
    for (size_t k = 0; k < perturbation_exps.size(); ++k) {
        if (perturbation_exps[k].is_neg_inf()) continue;
        bound = max(bound, -ExtRational(static_cast<long long>(k)) * alpha_exp / m +
                               perturbation_exps[k]);
    }
    if (bound.is_neg_inf()) return bound;  // zero perturbation
    bound = bound - ExtRational(1, p - 1);
    if (!perturbation_exps.empty()) bound = max(bound, perturbation_exps[0]);
    return bound;
}

// Solvability in the class of entire vector-valued functions: every y_k in
// the generalized kernel (type zero).
inline bool entire_solution_check(const MatrixCauchyProblem& problem) {
    problem.validate();
    for (const auto& yk : problem.initial) {
        if (vec_is_zeroish(yk)) continue;
        if (!entire_vector_check(problem.op, yk)) return false;
    }
    return true;
}

}  // namespace padic
