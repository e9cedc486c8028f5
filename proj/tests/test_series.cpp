#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padic/linalg.hpp"
#include "padic/series.hpp"

using namespace padic;

namespace {

PVector sc(long long a, long long b, long long p, int cap = 64) {
    PVector v;
    v.prime = p;
    v.entries = {PAdicScalar::from_rational(a, b, p, cap)};
    return v;
}

BSeries<PVector> geometric_ones(long long p, int n_terms) {
    BSeries<PVector> s;
    s.prime = p;
    for (int n = 0; n <= n_terms; ++n) s.coeffs.push_back(sc(1, 1, p));
    s.tail = TailBound{ExtRational(0), ExtRational(0), false};
    return s;
}

}  // namespace

TEST_CASE("tail self-consistency is enforced") {
    BSeries<PVector> s = geometric_ones(2, 8);
    CHECK_NOTHROW(check_tail_self_consistency(s));
    s.tail = TailBound{ExtRational(1), ExtRational(0), false};  // claims norms <= p^{-1}
    CHECK_THROWS_AS(check_tail_self_consistency(s), InvalidProblem);
}

TEST_CASE("evaluating 1/(1-z) at z = p") {
    // partial sums of sum 2^n are 2^{N+1} - 1: the value is -1 + O(2^{N+1})
    const long long p = 2;
    BSeries<PVector> s = geometric_ones(p, 20);
    auto z = PAdicScalar::from_integer(2, p, 64);
    auto res = series_eval(s, z);
    CHECK(res.certified);
    CHECK(res.error_exponent == ExtRational(21));
    auto defect = res.value.entries[0] + PAdicScalar::from_integer(1, p, 64);
    CHECK(defect.valuation_lower_bound() >= ExtRational(21));
}

TEST_CASE("evaluation outside the certified disk throws") {
    BSeries<PVector> s = geometric_ones(3, 10);
    CHECK_THROWS_AS(series_eval(s, PAdicScalar::from_integer(1, 3)), DivergentPoint);
    CHECK_THROWS_AS(series_eval(s, PAdicScalar::from_rational(1, 3, 3)), DivergentPoint);
    // z = 0 always converges to c_0
    auto res = series_eval(s, PAdicScalar::zero(3));
    CHECK(res.value.entries[0].valuation_int() == 0);
}

TEST_CASE("polynomial evaluation is exact") {
    BSeries<PVector> s;
    s.prime = 5;
    s.coeffs = {sc(1, 1, 5), sc(2, 1, 5), sc(3, 1, 5)};
    s.polynomial = true;
    auto res = series_eval(s, PAdicScalar::from_integer(5, 5));
    CHECK(res.certified);
    CHECK(res.error_exponent.is_pos_inf());
    // 1 + 2*5 + 3*25 = 86
    auto diff = res.value.entries[0] - PAdicScalar::from_integer(86, 5);
    CHECK(diff.is_zeroish());
}

TEST_CASE("series addition combines certificates soundly") {
    const long long p = 2;
    BSeries<PVector> a = geometric_ones(p, 10);
    BSeries<PVector> b;
    b.prime = p;
    for (int n = 0; n <= 6; ++n) b.coeffs.push_back(sc(1, 1 << n, p));  // norm exp n
    b.tail = TailBound{ExtRational(0), ExtRational(-1), false};

    BSeries<PVector> sum = series_add(a, b);
    REQUIRE(sum.tail.has_value());
    CHECK(sum.tail->slope == ExtRational(-1));  // weakest slope wins
    CHECK_NOTHROW(check_tail_self_consistency(sum));

    // linearity of the stored prefix
    for (size_t n = 0; n < sum.coeffs.size(); ++n) {
        PVector expect = n < b.coeffs.size() ? vec_add(a.coeffs[n], b.coeffs[n]) : a.coeffs[n];
        CHECK(vec_is_zeroish(vec_sub(sum.coeffs[n], expect)));
    }
}

TEST_CASE("derivative keeps the certified radius") {
    const long long p = 3;
    BSeries<PVector> s;
    s.prime = p;
    for (int n = 0; n <= 12; ++n) s.coeffs.push_back(sc(1, 1, p));
    s.tail = TailBound{ExtRational(0), ExtRational(0), false};

    BSeries<PVector> d = series_derivative(s, 2);
    REQUIRE(d.tail.has_value());
    CHECK(d.tail->slope == s.tail->slope);
    CHECK(radius_lower_bound(d).tau == radius_lower_bound(s).tau);
    CHECK_NOTHROW(check_tail_self_consistency(d));
    // c_n of the 2nd derivative is (n+1)(n+2)
    auto second = d.coeffs[3].entries[0] - PAdicScalar::from_integer(20, p);
    CHECK(second.is_zeroish());

    BSeries<PVector> d0 = series_derivative(s, 0);
    CHECK(d0.coeffs.size() == s.coeffs.size());
    CHECK_THROWS_AS(series_derivative(s, -1), InvalidProblem);
}

TEST_CASE("radius estimates") {
    BSeries<PVector> s = geometric_ones(2, 10);
    auto r = radius_lower_bound(s);
    CHECK(r.certified);
    CHECK(r.tau == ExtRational(0));

    BSeries<PVector> poly;
    poly.prime = 2;
    poly.coeffs = {sc(1, 1, 2)};
    poly.polynomial = true;
    auto rp = radius_lower_bound(poly);
    CHECK(rp.certified);
    CHECK(rp.tau.is_neg_inf());

    BSeries<PVector> bare;
    bare.prime = 2;
    bare.coeffs = {sc(1, 1, 2), sc(1, 4, 2)};  // norm exps 0, 2
    auto rb = radius_lower_bound(bare);
    CHECK(!rb.certified);
    CHECK(rb.tau == ExtRational(2));
}

TEST_CASE("weighted sup norm over a disk") {
    const long long p = 2;
    BSeries<PVector> s = geometric_ones(p, 10);
    // at tau = 1 (r = 1/2) the sup over ||c_n|| r^n is at n = 0
    auto n1 = ar_norm(s, ExtRational(1));
    CHECK(n1.certified);
    CHECK(n1.exponent == ExtRational(0));
    // shrinking the disk cannot increase the norm
    auto n2 = ar_norm(s, ExtRational(2));
    CHECK(n2.exponent <= n1.exponent);
    // on the boundary tau = 0 the certificate only bounds
    auto n0 = ar_norm(s, ExtRational(0));
    CHECK(!n0.certified);
}

TEST_CASE("membership trichotomy") {
    BSeries<PVector> s = geometric_ones(2, 10);
    CHECK(in_Ar_check(s, ExtRational(1)) == Tri::Yes);       // strictly inside
    CHECK(in_Ar_check(s, ExtRational(0)) == Tri::Unknown);   // boundary
    CHECK(in_Ar_check(s, ExtRational(-1)) == Tri::Unknown);  // outside, bound not attained
    s.tail->tight = true;
    CHECK(in_Ar_check(s, ExtRational(-1)) == Tri::No);       // attained bound refutes
    BSeries<PVector> poly;
    poly.prime = 2;
    poly.coeffs = {sc(1, 1, 2)};
    poly.polynomial = true;
    CHECK(in_Ar_check(poly, ExtRational(-5)) == Tri::Yes);
}
