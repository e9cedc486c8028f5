#pragma once

#include <utility>
#include <vector>

#include "padic/errors.hpp"
#include "padic/ext_rational.hpp"
#include "padic/scalar.hpp"

namespace padic {

// Finite-dimensional carrier: vectors over Q_p with the sup norm.
struct PVector {
    long long prime = 2;
    std::vector<PAdicScalar> entries;

    int dim() const { return static_cast<int>(entries.size()); }

    static PVector zero(int d, long long p) {
        PVector v;
        v.prime = p;
        v.entries.assign(d, PAdicScalar::zero(p));
        return v;
    }

    static PVector basis(int d, int j, long long p, int cap = 64) {
        PVector v = zero(d, p);
        v.entries[j] = PAdicScalar::from_integer(1, p, cap);
        return v;
    }
};

struct PMatrix {
    long long prime = 2;
    int dim = 0;
    std::vector<PAdicScalar> entries;  // row-major, dim x dim

    const PAdicScalar& at(int i, int j) const { return entries[i * dim + j]; }
    PAdicScalar& at(int i, int j) { return entries[i * dim + j]; }

    static PMatrix zero(int d, long long p) {
        PMatrix m;
        m.prime = p;
        m.dim = d;
        m.entries.assign(d * d, PAdicScalar::zero(p));
        return m;
    }

    static PMatrix identity(int d, long long p, int cap = 64) {
        PMatrix m = zero(d, p);
        for (int i = 0; i < d; ++i) m.at(i, i) = PAdicScalar::from_integer(1, p, cap);
        return m;
    }
};

namespace detail {

// Certified minimum valuation over a family of scalars: throws when a
// zero-ball entry could undercut the certified minimum.
inline ExtRational certified_min_valuation(const std::vector<PAdicScalar>& xs) {
    ExtRational best = ExtRational::pos_inf();
    bool have_ball = false;
    for (const auto& s : xs) {
        if (s.certified_nonzero()) {
            have_ball = true;
            best = min(best, ExtRational(s.valuation_int()));
        }
    }
    ExtRational bound = ExtRational::pos_inf();
    for (const auto& s : xs)
        if (s.is_zero_ball()) bound = min(bound, ExtRational(s.abs_precision()));
    if (bound < best)
        throw PrecisionExhausted("minimum valuation not certified (zero-ball below precision)");
    if (!have_ball && bound.is_pos_inf()) return ExtRational::pos_inf();  // exact zero family
    if (!have_ball) throw PrecisionExhausted("all entries are uncertified zero balls");
    return best;
}

inline ExtRational valuation_lower_bound_min(const std::vector<PAdicScalar>& xs) {
    ExtRational b = ExtRational::pos_inf();
    for (const auto& s : xs) b = min(b, s.valuation_lower_bound());
    return b;
}

}  // namespace detail

// Norm exponent e with ||x|| = p^e; -inf for the zero vector.
inline ExtRational sup_norm(const PVector& x) {
    return -detail::certified_min_valuation(x.entries);
}

// Upper bound on the norm exponent, defined for uncertified entries too.
inline ExtRational norm_exp_upper(const PVector& x) {
    return -detail::valuation_lower_bound_min(x.entries);
}

// Under the sup norm the operator norm is exact: attained on a basis vector.
inline ExtRational operator_norm(const PMatrix& a) {
    return -detail::certified_min_valuation(a.entries);
}

inline PVector mat_apply(const PMatrix& a, const PVector& x) {
    if (a.dim != x.dim() || a.prime != x.prime)
        throw InvalidProblem("mat_apply: dimension or prime mismatch");
    PVector r = PVector::zero(a.dim, a.prime);
    for (int i = 0; i < a.dim; ++i) {
        PAdicScalar acc = PAdicScalar::zero(a.prime);
        for (int j = 0; j < a.dim; ++j) acc = acc + a.at(i, j) * x.entries[j];
        r.entries[i] = acc;
    }
    return r;
}

inline PVector vec_add(const PVector& x, const PVector& y) {
    if (x.dim() != y.dim()) throw InvalidProblem("vec_add: dimension mismatch");
    PVector r = x;
    for (int i = 0; i < x.dim(); ++i) r.entries[i] = x.entries[i] + y.entries[i];
    return r;
}

inline PVector vec_sub(const PVector& x, const PVector& y) {
    if (x.dim() != y.dim()) throw InvalidProblem("vec_sub: dimension mismatch");
    PVector r = x;
    for (int i = 0; i < x.dim(); ++i) r.entries[i] = x.entries[i] - y.entries[i];
    return r;
}

inline PVector vec_scale(const PVector& x, const PAdicScalar& s) {
    PVector r = x;
    for (auto& e : r.entries) e = e * s;
    return r;
}

inline bool vec_is_zeroish(const PVector& x) {
    for (const auto& e : x.entries)
        if (!e.is_zeroish()) return false;
    return true;
}

/**
 * Least-degree monic mu with mu(A)x = 0 at working precision, by Gauss-Jordan
 * elimination on the Krylov sequence x, Ax, A^2 x, ...
 *
 * Pivoting rule: the certified entry of minimal valuation (maximal norm),
 * ties broken by lowest row index.
 */
inline std::vector<PAdicScalar> minimal_polynomial(const PMatrix& a, const PVector& x) {
    if (vec_is_zeroish(x)) throw InvalidProblem("minimal_polynomial: x must be nonzero");
    const long long p = a.prime;
    const int d = a.dim;

    struct BasisVec {
        PVector v;
        std::vector<PAdicScalar> combo;  // expression over k_0 .. k_j
        int pivot;
    };
    std::vector<BasisVec> basis;

    PVector k = x;
    for (int j = 0;; ++j) {
        PVector w = k;
        std::vector<PAdicScalar> combo(j + 1, PAdicScalar::zero(p));
        combo[j] = PAdicScalar::from_integer(1, p);

        for (const auto& b : basis) {
            const PAdicScalar& we = w.entries[b.pivot];
            if (we.is_zeroish()) continue;
            PAdicScalar coeff = we * b.v.entries[b.pivot].inv();
            for (int i = 0; i < d; ++i)
                w.entries[i] = w.entries[i] - coeff * b.v.entries[i];
            w.entries[b.pivot] = PAdicScalar::zero(p);  // exact by construction
            for (size_t i = 0; i < b.combo.size(); ++i)
                combo[i] = combo[i] - coeff * b.combo[i];
        }

        if (vec_is_zeroish(w)) {
            // A^j x = -sum_{i<j} combo_i A^i x  =>  mu = t^j + sum combo_i t^i.
            std::vector<PAdicScalar> mu(j + 1, PAdicScalar::zero(p));
            for (int i = 0; i < j; ++i) mu[i] = combo[i];
            mu[j] = PAdicScalar::from_integer(1, p);
            return mu;
        }
        if (j == d)
            throw PrecisionExhausted("Krylov dependence not certified at working precision");

        int pivot = -1;
        long long pv = 0;
        for (int i = 0; i < d; ++i) {
            if (!w.entries[i].certified_nonzero()) continue;
            long long v = w.entries[i].valuation_int();
            if (pivot < 0 || v < pv) {
                pivot = i;
                pv = v;
            }
        }
        if (pivot < 0)
            throw PrecisionExhausted("no certified pivot in Krylov elimination");

        // Back-eliminate the new pivot from the existing basis so pivot
        // columns stay clean.
        for (auto& b : basis) {
            const PAdicScalar& be = b.v.entries[pivot];
            if (be.is_zeroish()) continue;
            PAdicScalar coeff = be * w.entries[pivot].inv();
            for (int i = 0; i < d; ++i)
                b.v.entries[i] = b.v.entries[i] - coeff * w.entries[i];
            b.v.entries[pivot] = PAdicScalar::zero(p);
            b.combo.resize(combo.size(), PAdicScalar::zero(p));
            for (size_t i = 0; i < combo.size(); ++i)
                b.combo[i] = b.combo[i] - coeff * combo[i];
        }
        basis.push_back(BasisVec{std::move(w), std::move(combo), pivot});
        k = mat_apply(a, k);
    }
}

/**
 * Newton polygon of a polynomial: lower convex hull of (i, v(c_i)).
 * `slopes` holds the valuations of the roots in the algebraic closure,
 * with multiplicities (a segment of geometric slope s contributes roots
 * of valuation -s; an order-k vanishing at 0 contributes k roots of
 * valuation +inf).
 */
struct NewtonPolygon {
    std::vector<std::pair<long long, ExtRational>> vertices;
    std::vector<std::pair<ExtRational, int>> slopes;  // (root valuation, multiplicity)

    ExtRational min_slope() const {
        ExtRational m = ExtRational::pos_inf();
        for (const auto& [s, mult] : slopes) m = min(m, s);
        return m;
    }
};

inline NewtonPolygon newton_polygon(const std::vector<PAdicScalar>& coeffs) {
    const long long dmax = static_cast<long long>(coeffs.size()) - 1;
    if (dmax < 0 || !coeffs.back().certified_nonzero())
        throw InvalidProblem("newton_polygon: leading coefficient must be certified nonzero");

    long long ord = -1;
    std::vector<std::pair<long long, ExtRational>> pts;
    for (long long i = 0; i <= dmax; ++i) {
        const auto& c = coeffs[i];
        if (c.certified_nonzero()) {
            if (ord < 0) ord = i;
            pts.emplace_back(i, ExtRational(c.valuation_int()));
        } else if (c.is_zero_ball() && ord < 0) {
            throw PrecisionExhausted("newton_polygon: order of vanishing at 0 not certified");
        }
    }

    // Lower hull by monotone chain.
    std::vector<std::pair<long long, ExtRational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& [x1, y1] = hull[hull.size() - 2];
            const auto& [x2, y2] = hull[hull.size() - 1];
            // pop (x2,y2) if it lies on or above segment (x1,y1)-(pt).
            ExtRational lhs = (y2 - y1) * ExtRational(pt.first - x1);
            ExtRational rhs = (pt.second - y1) * ExtRational(x2 - x1);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    // Zero-ball coefficients must lie on or above the hull.
    for (long long i = 0; i <= dmax; ++i) {
        if (!coeffs[i].is_zero_ball()) continue;
        ExtRational bound(coeffs[i].abs_precision());
        for (size_t s = 0; s + 1 < hull.size(); ++s) {
            const auto& [x1, y1] = hull[s];
            const auto& [x2, y2] = hull[s + 1];
            if (i < x1 || i > x2) continue;
            // hull value at i: y1 + (i - x1) (y2 - y1)/(x2 - x1)
            ExtRational hv = y1 + (y2 - y1) * ExtRational(i - x1, x2 - x1);
            if (bound < hv)
                throw PrecisionExhausted("newton_polygon: hull vertex valuation uncertified");
        }
    }

    NewtonPolygon np;
    np.vertices = hull;
    if (ord > 0) np.slopes.emplace_back(ExtRational::pos_inf(), static_cast<int>(ord));
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        const auto& [x1, y1] = hull[s];
        const auto& [x2, y2] = hull[s + 1];
        np.slopes.emplace_back((y1 - y2) / (x2 - x1), static_cast<int>(x2 - x1));
    }
    return np;
}

/**
 * sigma(x; A) as an exact exponent with its Newton-polygon evidence:
 * sigma = p^{sigma_exp}, where sigma_exp is the negated minimum root
 * valuation of the Krylov minimal polynomial. -inf encodes sigma = 0
 * (minimal polynomial a pure power t^k).
 */
struct TypeCertificate {
    enum class Method { NewtonPolygon, Empirical };
    ExtRational sigma_exp;
    std::vector<ExtRational> minpoly_valuations;
    int krylov_degree = 0;
    Method method = Method::NewtonPolygon;
};

inline TypeCertificate vector_type(const PMatrix& a, const PVector& x) {
    std::vector<PAdicScalar> mu = minimal_polynomial(a, x);
    NewtonPolygon np = newton_polygon(mu);
    TypeCertificate cert;
    ExtRational ms = np.min_slope();
    cert.sigma_exp = ms.is_pos_inf() ? ExtRational::neg_inf() : -ms;
    for (const auto& c : mu) cert.minpoly_valuations.push_back(c.valuation_lower_bound());
    cert.krylov_degree = static_cast<int>(mu.size()) - 1;
    cert.method = TypeCertificate::Method::NewtonPolygon;
    return cert;
}

struct EAlphaResult {
    ExtRational exponent;
    bool certified = false;
};

/**
 * ||x||_alpha = sup_n ||A^n x|| / alpha^n, located within a certified
 * window: past the Krylov degree the recurrence gives
 *   v(A^n x) >= gamma + n (-sigma_exp),
 * gamma = min_{i<d} (v(A^i x) + i sigma_exp), so the terms decrease once
 * the bound falls under the running max. At the boundary alpha = sigma the
 * sup may be approached asymptotically; the result is certified only when
 * the orbit is exactly geometric (Krylov degree 1).
 */
inline EAlphaResult e_alpha_norm(const PMatrix& a, const PVector& x, const ExtRational& alpha_exp) {
    TypeCertificate cert = vector_type(a, x);
    const ExtRational& sigma = cert.sigma_exp;
    if (alpha_exp < sigma) throw DivergentNorm("alpha below the type: x not in E_alpha(A)");

    const int d = cert.krylov_degree;
    EAlphaResult res;
    res.exponent = ExtRational::neg_inf();

    if (sigma.is_neg_inf()) {
        // Nilpotent orbit: finitely many nonzero terms.
        PVector w = x;
        for (int n = 0; n <= d && !vec_is_zeroish(w); ++n) {
            res.exponent = max(res.exponent, sup_norm(w) - ExtRational(n) * alpha_exp);
            w = mat_apply(a, w);
        }
        res.certified = true;
        return res;
    }

    ExtRational gamma = ExtRational::pos_inf();
    {
        PVector w = x;
        for (int i = 0; i < d; ++i) {
            gamma = min(gamma, -sup_norm(w) + ExtRational(i) * sigma);
            w = mat_apply(a, w);
        }
    }

    if (alpha_exp == sigma) {
        if (d == 1) {
            res.exponent = sup_norm(x);  // terms exactly constant
            res.certified = true;
            return res;
        }
        PVector w = x;
        for (int n = 0; n <= 4 * d + 32; ++n) {
            res.exponent = max(res.exponent, sup_norm(w) - ExtRational(n) * alpha_exp);
            w = mat_apply(a, w);
        }
        res.certified = false;  // lower bound only
        return res;
    }

    PVector w = x;
    for (int n = 0;; ++n) {
        res.exponent = max(res.exponent, sup_norm(w) - ExtRational(n) * alpha_exp);
        ExtRational remaining = -gamma + ExtRational(n + 1) * (sigma - alpha_exp);
        if (n >= d && remaining < res.exponent) break;
        w = mat_apply(a, w);
    }
    res.certified = true;
    return res;
}

// x lies in every E_alpha(A) iff its minimal polynomial is a pure power t^k.
inline bool entire_vector_check(const PMatrix& a, const PVector& x) {
    return vector_type(a, x).sigma_exp.is_neg_inf();
}

// ---- carrier interface used by the series machinery ----

inline PVector carrier_add(const PVector& a, const PVector& b) { return vec_add(a, b); }
inline PVector carrier_scale(const PVector& a, const PAdicScalar& s) { return vec_scale(a, s); }
inline ExtRational carrier_norm_exp_upper(const PVector& a) { return norm_exp_upper(a); }
inline bool carrier_is_zeroish(const PVector& a) { return vec_is_zeroish(a); }
inline PVector carrier_zero_like(const PVector& a) { return PVector::zero(a.dim(), a.prime); }

}  // namespace padic
