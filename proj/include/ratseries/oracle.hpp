#pragma once

#include <cstddef>
#include <vector>

#include "ratseries/errors.hpp"
#include "ratseries/scalar.hpp"
#include "ratseries/series.hpp"

namespace ratseries {

// Windowed coefficient vector: exponents [offset, offset + size - 1].
class TruncatedSeries {
public:
    TruncatedSeries(long long offset, std::vector<Scalar> coeffs)
        : offset_(offset), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw SemanticError("truncation window must be nonempty");
    }

    long long offset() const noexcept { return offset_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
    const Scalar& operator[](std::size_t idx) const { return coeffs_[idx]; }

    friend bool operator==(const TruncatedSeries& x, const TruncatedSeries& y) {
        return x.offset_ == y.offset_ && x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const TruncatedSeries& x, const TruncatedSeries& y) {
        return !(x == y);
    }

private:
    long long offset_;
    std::vector<Scalar> coeffs_;
};

// Expansion over an explicit window.  Pole coefficients run on the incremental
// recurrence c_{n+1} = alpha * c_n * (n+m)/(n+1).
inline TruncatedSeries expand_window(const RationalSeries& f, long long lo, std::size_t n) {
    if (n == 0)
        throw SemanticError("truncation length must be positive");
    std::vector<Scalar> coeffs(n, Scalar(0));
    const long long hi = lo + static_cast<long long>(n); // exclusive
    for (const auto& [t, c] : f.terms()) {
        if (const auto* m = std::get_if<Monomial>(&t)) {
            if (m->n >= lo && m->n < hi)
                coeffs[static_cast<std::size_t>(m->n - lo)] += c;
        } else {
            const auto& p = std::get<PoleTerm>(t);
            Scalar val = c;
            for (long long e = 0; e < hi; ++e) {
                if (e >= lo)
                    coeffs[static_cast<std::size_t>(e - lo)] += val;
                val *= p.alpha * Scalar(Rational(BigInt(e + p.mult), BigInt(e + 1)));
            }
        }
    }
    return TruncatedSeries(lo, std::move(coeffs));
}

// Default window: starts at 0 in power mode, at min(0, lowest monomial
// exponent) in laurent mode.
inline TruncatedSeries truncate(const RationalSeries& f, std::size_t n) {
    long long lo = 0;
    if (f.mode() == Mode::laurent)
        for (const auto& [t, c] : f.terms())
            if (const auto* m = std::get_if<Monomial>(&t); m && m->n < lo)
                lo = m->n;
    return expand_window(f, lo, n);
}

inline void require_same_window(const TruncatedSeries& x, const TruncatedSeries& y) {
    if (x.offset() != y.offset() || x.size() != y.size())
        throw SemanticError("truncation window mismatch");
}

// Entrywise product: the ground truth the Hadamard table is checked against.
inline TruncatedSeries pointwise_mul(const TruncatedSeries& x, const TruncatedSeries& y) {
    require_same_window(x, y);
    std::vector<Scalar> coeffs(x.size());
    for (std::size_t t = 0; t < x.size(); ++t)
        coeffs[t] = x[t] * y[t];
    return TruncatedSeries(x.offset(), std::move(coeffs));
}

// Cauchy convolution, truncated to the shared input length; offsets add.
inline TruncatedSeries convolve(const TruncatedSeries& x, const TruncatedSeries& y) {
    if (x.size() != y.size())
        throw SemanticError("truncation window mismatch");
    std::vector<Scalar> coeffs(x.size(), Scalar(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; i + j < y.size(); ++j)
            coeffs[i + j] += x[i] * y[j];
    }
    return TruncatedSeries(x.offset() + y.offset(), std::move(coeffs));
}

// Termwise derivative n*c_n, re-indexed.  A window starting at 0 stays in the
// nonnegative range and shortens by one; otherwise the window slides down.
inline TruncatedSeries diff(const TruncatedSeries& x) {
    if (x.offset() == 0) {
        std::size_t n = x.size() > 1 ? x.size() - 1 : 1;
        std::vector<Scalar> coeffs(n, Scalar(0));
        for (std::size_t t = 0; t + 1 < x.size(); ++t)
            coeffs[t] = Scalar(BigInt(t + 1)) * x[t + 1];
        return TruncatedSeries(0, std::move(coeffs));
    }
    std::vector<Scalar> coeffs(x.size());
    for (std::size_t t = 0; t < x.size(); ++t)
        coeffs[t] = Scalar(BigInt(x.offset() + static_cast<long long>(t))) * x[t];
    return TruncatedSeries(x.offset() - 1, std::move(coeffs));
}

// Multiplication by z on the window: same offset, top coefficient dropped.
// Sound whenever the window covers the low edge of the support, which
// truncate and diff preserve.
inline TruncatedSeries shift(const TruncatedSeries& x) {
    std::vector<Scalar> coeffs(x.size(), Scalar(0));
    for (std::size_t t = 0; t + 1 < x.size(); ++t)
        coeffs[t + 1] = x[t];
    return TruncatedSeries(x.offset(), std::move(coeffs));
}

} // namespace ratseries
