#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "padic/errors.hpp"

namespace padic {

/**
 * Exact rational-or-infinite exponent.
 *
 * Every log-scale quantity in the library lives here: valuations v_p(x),
 * radius thresholds tau (r = p^{-tau}), norm exponents, and the rational
 * exponents 1/(p-1), sigma/m that radii are made of. Infinities encode
 * v_p(0) = +inf and the zero norm exponent -inf.
 */
class ExtRational {
public:
    enum class Kind { NegInf, Finite, PosInf };

    ExtRational() : kind_(Kind::Finite), num_(0), den_(1) {}
    ExtRational(long long n) : kind_(Kind::Finite), num_(n), den_(1) {}
    ExtRational(long long n, long long d) : kind_(Kind::Finite), num_(n), den_(d) {
        if (d == 0) throw IndeterminateForm("ExtRational: zero denominator");
        normalize();
    }

    static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
    static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    long long num() const { return num_; }
    long long den() const { return den_; }

    ExtRational operator-() const {
        if (kind_ == Kind::PosInf) return neg_inf();
        if (kind_ == Kind::NegInf) return pos_inf();
        return ExtRational(-num_, den_);
    }

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (!a.is_finite() || !b.is_finite()) {
            if (a.is_pos_inf() && b.is_neg_inf()) throw IndeterminateForm("+inf + -inf");
            if (a.is_neg_inf() && b.is_pos_inf()) throw IndeterminateForm("-inf + +inf");
            return a.is_finite() ? b : a;
        }
        return ExtRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

    // Multiplication by a finite rational scale. 0 * inf is indeterminate.
    friend ExtRational operator*(const ExtRational& a, const ExtRational& b) {
        if (!a.is_finite() || !b.is_finite()) {
            const ExtRational& inf = a.is_finite() ? b : a;
            const ExtRational& other = a.is_finite() ? a : b;
            int s_other = other.sign();
            if (s_other == 0) throw IndeterminateForm("0 * inf");
            int s = s_other * inf.sign();
            return s > 0 ? pos_inf() : neg_inf();
        }
        return ExtRational(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend ExtRational operator/(const ExtRational& a, long long d) {
        if (d == 0) throw IndeterminateForm("division by zero");
        if (!a.is_finite()) return d > 0 ? a : -a;
        return ExtRational(a.num_, a.den_ * d);
    }

    int sign() const {
        if (kind_ == Kind::PosInf) return 1;
        if (kind_ == Kind::NegInf) return -1;
        return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.kind_ != b.kind_) return false;
        if (!a.is_finite()) return true;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        if (!a.is_finite()) return false;
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

    friend ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
    friend ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

    double to_double() const {
        if (kind_ == Kind::PosInf) return 1.0 / 0.0;
        if (kind_ == Kind::NegInf) return -1.0 / 0.0;
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        if (kind_ == Kind::PosInf) return "inf";
        if (kind_ == Kind::NegInf) return "-inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    explicit ExtRational(Kind k) : kind_(k), num_(0), den_(1) {}

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    Kind kind_;
    long long num_;
    long long den_;  // > 0
};

}  // namespace padic
