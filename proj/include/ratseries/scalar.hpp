#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "ratseries/errors.hpp"

namespace ratseries {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number.  Invariants: den > 0, gcd(num, den) = 1, zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    friend Rational operator-(const Rational& x) {
        Rational r;
        r.num_ = -x.num_;
        r.den_ = x.den_;
        return r;
    }
    friend Rational operator+(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0)
            throw SemanticError("division by zero");
        return Rational(x.num_ * y.den_, x.den_ * y.num_);
    }

    Rational& operator+=(const Rational& x) { return *this = *this + x; }
    Rational& operator-=(const Rational& x) { return *this = *this - x; }
    Rational& operator*=(const Rational& x) { return *this = *this * x; }
    Rational& operator/=(const Rational& x) { return *this = *this / x; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    // Numeric order (denominators are positive by invariant).
    friend bool operator<(const Rational& x, const Rational& y) {
        return x.num_ * y.den_ < y.num_ * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

    Rational pow(long long e) const {
        if (e < 0) {
            if (num_ == 0)
                throw SemanticError("division by zero");
            Rational inv;
            inv.num_ = den_;
            inv.den_ = num_;
            if (inv.den_ < 0) {
                inv.num_ = -inv.num_;
                inv.den_ = -inv.den_;
            }
            return inv.pow(-e);
        }
        Rational r(1);
        Rational base = *this;
        while (e > 0) {
            if (e & 1)
                r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1)
            s += "/" + den_.str();
        return s;
    }

private:
    void normalize() {
        if (den_ == 0)
            throw SemanticError("division by zero");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

// Element of the Gaussian-rational coefficient field: re + im*i.
// Canonical by construction since both parts are canonical Rationals,
// so equality is structural.
class Scalar {
public:
    Scalar() = default;
    Scalar(int n) : re_(n) {}
    Scalar(long long n) : re_(n) {}
    Scalar(BigInt n) : re_(std::move(n)) {}
    Scalar(Rational re) : re_(std::move(re)) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const noexcept { return re_.is_one() && im_.is_zero(); }
    bool is_real() const noexcept { return im_.is_zero(); }

    Scalar conj() const { return Scalar(re_, -im_); }

    friend Scalar operator-(const Scalar& x) { return Scalar(-x.re_, -x.im_); }
    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        return Scalar(x.re_ + y.re_, x.im_ + y.im_);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        return Scalar(x.re_ - y.re_, x.im_ - y.im_);
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        return Scalar(x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

    Scalar inv() const {
        if (is_zero())
            throw SemanticError("division by zero");
        Rational n = re_ * re_ + im_ * im_;
        return Scalar(re_ / n, -im_ / n);
    }

    Scalar& operator+=(const Scalar& x) { return *this = *this + x; }
    Scalar& operator-=(const Scalar& x) { return *this = *this - x; }
    Scalar& operator*=(const Scalar& x) { return *this = *this * x; }
    Scalar& operator/=(const Scalar& x) { return *this = *this / x; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.re_ == y.re_ && x.im_ == y.im_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar pow(long long e) const {
        if (e < 0)
            return inv().pow(-e);
        Scalar r(1);
        Scalar base = *this;
        while (e > 0) {
            if (e & 1)
                r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // Canonical text: real part first, reduced fractions, `i` suffix,
    // zero parts omitted.  Examples: "0", "3/2", "-i", "1/2-3/2*i".
    std::string str() const {
        if (is_zero())
            return "0";
        std::string s;
        if (!re_.is_zero())
            s = re_.str();
        if (!im_.is_zero()) {
            std::string t;
            if (im_.is_one())
                t = "i";
            else if (im_ == Rational(-1))
                t = "-i";
            else
                t = im_.str() + "*i";
            if (!s.empty() && im_.sign() > 0)
                s += "+";
            s += t;
        }
        return s;
    }

private:
    Rational re_;
    Rational im_;
};

// Canonical ordering used for deterministic term order: lexicographic on
// (re, im).  This is not a numeric order on the complex field.
inline int compare(const Rational& x, const Rational& y) {
    if (x == y)
        return 0;
    return x < y ? -1 : 1;
}

inline int compare(const Scalar& x, const Scalar& y) {
    if (int c = compare(x.re(), y.re()); c != 0)
        return c;
    return compare(x.im(), y.im());
}

inline bool scalar_less(const Scalar& x, const Scalar& y) { return compare(x, y) < 0; }

inline BigInt factorial(unsigned long k) {
    BigInt r = 1;
    for (unsigned long t = 2; t <= k; ++t)
        r *= t;
    return r;
}

// Generalized binomial coefficient with integer upper argument:
// n(n-1)...(n-k+1) / k!.  Defined for negative n.
inline Rational binomial(const BigInt& n, unsigned long k) {
    BigInt p = 1;
    for (unsigned long t = 0; t < k; ++t)
        p *= n - BigInt(t);
    return Rational(p, factorial(k));
}

inline Rational binomial(long long n, unsigned long k) { return binomial(BigInt(n), k); }

// x(x+1)...(x+j-1); equals 1 when j = 0.
inline Scalar rising_factorial(const Scalar& x, unsigned long j) {
    Scalar r(1);
    for (unsigned long t = 0; t < j; ++t)
        r *= x + Scalar(BigInt(t));
    return r;
}

} // namespace ratseries
