#pragma once

#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "ratseries/errors.hpp"
#include "ratseries/scalar.hpp"

namespace ratseries {

enum class Mode { power, laurent };

inline const char* mode_name(Mode m) { return m == Mode::power ? "power" : "laurent"; }

// Basis terms: z^n and 1/(1-alpha*z)^mult.
struct Monomial {
    long long n = 0;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct PoleTerm {
    Scalar alpha;
    int mult = 1;
    friend bool operator==(const PoleTerm&, const PoleTerm&) = default;
};

using BasisTerm = std::variant<Monomial, PoleTerm>;

// Canonical term order: monomials by ascending exponent, then pole terms by
// (alpha, mult) with alpha in the lexicographic scalar order.
struct BasisTermLess {
    bool operator()(const BasisTerm& a, const BasisTerm& b) const {
        if (a.index() != b.index())
            return a.index() < b.index();
        if (std::holds_alternative<Monomial>(a))
            return std::get<Monomial>(a).n < std::get<Monomial>(b).n;
        const auto& pa = std::get<PoleTerm>(a);
        const auto& pb = std::get<PoleTerm>(b);
        if (int c = compare(pa.alpha, pb.alpha); c != 0)
            return c < 0;
        return pa.mult < pb.mult;
    }
};

// 1/(1-alpha*z)^m with the degenerate exponent m = 0 read as z^0.
inline BasisTerm pole_or_one(const Scalar& alpha, int mult) {
    if (mult == 0)
        return Monomial{0};
    return PoleTerm{alpha, mult};
}

// Finite linear combination of basis terms.  Canonical form: no zero
// coefficients stored, so structural equality decides series equality.
class RationalSeries {
public:
    using TermMap = std::map<BasisTerm, Scalar, BasisTermLess>;

    explicit RationalSeries(Mode mode = Mode::power) : mode_(mode) {}

    Mode mode() const noexcept { return mode_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    // Validates the term against the mode, merges like terms, drops zeros.
    void add_term(const BasisTerm& t, const Scalar& c) {
        check_term(t, mode_);
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    static void check_term(const BasisTerm& t, Mode mode) {
        if (const auto* m = std::get_if<Monomial>(&t)) {
            if (mode == Mode::power && m->n < 0)
                throw SemanticError("negative exponent in power mode");
        } else {
            const auto& p = std::get<PoleTerm>(t);
            if (p.alpha.is_zero())
                throw SemanticError("pole value must be nonzero");
            if (p.mult < 1)
                throw SemanticError("pole multiplicity must be positive");
        }
    }

    friend bool operator==(const RationalSeries& f, const RationalSeries& g) {
        return f.mode_ == g.mode_ && f.terms_ == g.terms_;
    }
    friend bool operator!=(const RationalSeries& f, const RationalSeries& g) {
        return !(f == g);
    }

private:
    Mode mode_;
    TermMap terms_;
};

inline RationalSeries zero_series(Mode mode) { return RationalSeries(mode); }

inline RationalSeries make_series(Mode mode,
                                  const std::vector<std::pair<BasisTerm, Scalar>>& terms) {
    RationalSeries f(mode);
    for (const auto& [t, c] : terms)
        f.add_term(t, c);
    return f;
}

inline RationalSeries monomial_series(Mode mode, long long n, const Scalar& c = Scalar(1)) {
    RationalSeries f(mode);
    f.add_term(Monomial{n}, c);
    return f;
}

inline RationalSeries pole_series(Mode mode, const Scalar& alpha, int mult,
                                  const Scalar& c = Scalar(1)) {
    RationalSeries f(mode);
    f.add_term(PoleTerm{alpha, mult}, c);
    return f;
}

inline RationalSeries term_series(Mode mode, const BasisTerm& t, const Scalar& c = Scalar(1)) {
    RationalSeries f(mode);
    f.add_term(t, c);
    return f;
}

inline void require_same_mode(const RationalSeries& f, const RationalSeries& g) {
    if (f.mode() != g.mode())
        throw SemanticError("mode mismatch");
}

inline RationalSeries add(const RationalSeries& f, const RationalSeries& g) {
    require_same_mode(f, g);
    RationalSeries out(f.mode());
    for (const auto& [t, c] : f.terms())
        out.add_term(t, c);
    for (const auto& [t, c] : g.terms())
        out.add_term(t, c);
    return out;
}

inline RationalSeries scale(const Scalar& c, const RationalSeries& f) {
    RationalSeries out(f.mode());
    if (c.is_zero())
        return out;
    for (const auto& [t, coeff] : f.terms())
        out.add_term(t, c * coeff);
    return out;
}

inline RationalSeries negate(const RationalSeries& f) { return scale(Scalar(-1), f); }

inline RationalSeries sub(const RationalSeries& f, const RationalSeries& g) {
    return add(f, negate(g));
}

inline RationalSeries operator+(const RationalSeries& f, const RationalSeries& g) {
    return add(f, g);
}
inline RationalSeries operator-(const RationalSeries& f, const RationalSeries& g) {
    return sub(f, g);
}
inline RationalSeries operator-(const RationalSeries& f) { return negate(f); }
inline RationalSeries operator*(const Scalar& c, const RationalSeries& f) { return scale(c, f); }

// [z^n] f.  A pole term 1/(1-alpha*z)^m contributes binomial(n+m-1, n) alpha^n
// for n >= 0 and nothing for n < 0.
inline Scalar coefficient(const RationalSeries& f, long long n) {
    Scalar total(0);
    for (const auto& [t, c] : f.terms()) {
        if (const auto* m = std::get_if<Monomial>(&t)) {
            if (m->n == n)
                total += c;
        } else if (n >= 0) {
            const auto& p = std::get<PoleTerm>(t);
            total += c * Scalar(binomial(n + p.mult - 1, static_cast<unsigned long>(n))) *
                     p.alpha.pow(n);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Laurent polynomials (finite exponent -> coefficient maps), the numerator
// arithmetic behind the factored-fraction routines.

using LaurentPoly = std::map<long long, Scalar>;

namespace detail {

inline void poly_add_term(LaurentPoly& p, long long e, const Scalar& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = p.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            p.erase(it);
    }
}

inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            poly_add_term(r, ea + eb, ca * cb);
    return r;
}

inline LaurentPoly poly_scale(const Scalar& c, const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, v] : a)
        poly_add_term(r, e, c * v);
    return r;
}

inline LaurentPoly one_minus_alpha_z_pow(const Scalar& alpha, int m) {
    LaurentPoly r{{0, Scalar(1)}};
    LaurentPoly factor{{0, Scalar(1)}, {1, -alpha}};
    for (int t = 0; t < m; ++t)
        r = poly_mul(r, factor);
    return r;
}

// Exact division by (1 - alpha*z); the quotient recurrence is
// u_n = l_n + alpha*u_{n-1} from the low end of the support upward.
inline LaurentPoly poly_divide_linear(const LaurentPoly& l, const Scalar& alpha) {
    if (l.empty())
        return {};
    long long lo = l.begin()->first;
    long long hi = l.rbegin()->first;
    LaurentPoly q;
    Scalar carry(0);
    for (long long n = lo; n <= hi; ++n) {
        auto it = l.find(n);
        Scalar ln = it == l.end() ? Scalar(0) : it->second;
        carry = ln + alpha * carry;
        if (n < hi)
            poly_add_term(q, n, carry);
    }
    if (!carry.is_zero())
        throw SemanticError("inexact division by pole factor");
    return q;
}

// Truncated power-series product over plain coefficient vectors, used by the
// Taylor developments below.
inline std::vector<Scalar> vec_mul_trunc(const std::vector<Scalar>& a,
                                         const std::vector<Scalar>& b, std::size_t n) {
    std::vector<Scalar> r(n, Scalar(0));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

} // namespace detail

// A rational fraction with the denominator presented pre-factored into linear
// factors 1-alpha*z.  Numerator is a Laurent polynomial.
struct FactoredFraction {
    Mode mode = Mode::power;
    LaurentPoly numerator;
    std::vector<std::pair<Scalar, int>> factors; // (alpha, mult), distinct alphas
};

// Rewrites f over the common denominator formed by its own poles.
inline FactoredFraction to_factored(const RationalSeries& f) {
    FactoredFraction ff;
    ff.mode = f.mode();

    // Highest multiplicity per pole value, in canonical alpha order.
    std::map<Scalar, int, decltype(&scalar_less)> max_mult(&scalar_less);
    for (const auto& [t, c] : f.terms())
        if (const auto* p = std::get_if<PoleTerm>(&t)) {
            auto [it, inserted] = max_mult.emplace(p->alpha, p->mult);
            if (!inserted && p->mult > it->second)
                it->second = p->mult;
        }
    for (const auto& [alpha, m] : max_mult)
        ff.factors.emplace_back(alpha, m);

    for (const auto& [t, c] : f.terms()) {
        LaurentPoly contrib{{0, c}};
        if (const auto* m = std::get_if<Monomial>(&t)) {
            contrib = detail::poly_mul(contrib, LaurentPoly{{m->n, Scalar(1)}});
            for (const auto& [alpha, mult] : ff.factors)
                contrib = detail::poly_mul(contrib, detail::one_minus_alpha_z_pow(alpha, mult));
        } else {
            const auto& p = std::get<PoleTerm>(t);
            for (const auto& [alpha, mult] : ff.factors) {
                int power = alpha == p.alpha ? mult - p.mult : mult;
                contrib = detail::poly_mul(contrib, detail::one_minus_alpha_z_pow(alpha, power));
            }
        }
        for (const auto& [e, v] : contrib)
            detail::poly_add_term(ff.numerator, e, v);
    }
    return ff;
}

// Partial-fraction decomposition into the canonical basis.  The coefficient of
// 1/(1-alpha*z)^j is read off the exact Taylor development, at the pole, of the
// numerator over the cofactor; the leftover Laurent polynomial is recovered by
// exact division.
inline RationalSeries partial_fractions(const FactoredFraction& ff) {
    for (std::size_t i = 0; i < ff.factors.size(); ++i) {
        const auto& [alpha, mult] = ff.factors[i];
        if (alpha.is_zero())
            throw SemanticError("pole value must be nonzero");
        if (mult < 1)
            throw SemanticError("pole multiplicity must be positive");
        for (std::size_t j = i + 1; j < ff.factors.size(); ++j)
            if (ff.factors[j].first == alpha)
                throw SemanticError("duplicate pole value in factored fraction");
    }

    RationalSeries out(ff.mode);
    if (ff.numerator.empty())
        return out;

    LaurentPoly residue = ff.numerator;
    for (const auto& [alpha, m] : ff.factors) {
        const std::size_t n = static_cast<std::size_t>(m);

        // Taylor development in w = 1 - alpha*z of
        //   numerator((1-w)/alpha) * prod_{beta != alpha} (...)^{-mult_beta},
        // truncated to order m-1.
        std::vector<Scalar> dev(n, Scalar(0));
        for (const auto& [e, c] : ff.numerator) {
            // ((1-w)/alpha)^e = alpha^{-e} * sum_t binomial(e,t) (-w)^t
            Scalar ae = c * alpha.pow(-e);
            for (std::size_t t = 0; t < n; ++t) {
                Scalar b = Scalar(binomial(e, t)) * ae;
                dev[t] += (t % 2 == 0) ? b : -b;
            }
        }
        for (const auto& [beta, mb] : ff.factors) {
            if (beta == alpha)
                continue;
            // (c0 + d*w)^{-mb} with c0 = (alpha-beta)/alpha, d = beta/alpha.
            Scalar c0 = (alpha - beta) / alpha;
            Scalar ratio = (beta / alpha) / c0;
            Scalar lead = c0.pow(-static_cast<long long>(mb));
            std::vector<Scalar> den(n, Scalar(0));
            Scalar rp(1);
            for (std::size_t t = 0; t < n; ++t) {
                den[t] = lead * Scalar(binomial(-static_cast<long long>(mb), t)) * rp;
                rp *= ratio;
            }
            dev = detail::vec_mul_trunc(dev, den, n);
        }

        for (int j = 1; j <= m; ++j) {
            const Scalar& cj = dev[n - static_cast<std::size_t>(j)];
            if (cj.is_zero())
                continue;
            out.add_term(PoleTerm{alpha, j}, cj);
            // Subtract cj * Q/(1-alpha*z)^j so the residue stays divisible by Q.
            LaurentPoly cofactor{{0, cj}};
            for (const auto& [beta, mb] : ff.factors) {
                int power = beta == alpha ? mb - j : mb;
                cofactor = detail::poly_mul(cofactor, detail::one_minus_alpha_z_pow(beta, power));
            }
            for (const auto& [e, v] : cofactor)
                detail::poly_add_term(residue, e, -v);
        }
    }

    for (const auto& [alpha, m] : ff.factors)
        for (int t = 0; t < m; ++t)
            residue = detail::poly_divide_linear(residue, alpha);

    for (const auto& [e, c] : residue)
        out.add_term(Monomial{e}, c);
    return out;
}

// Ordinary (Cauchy) product, routed through the factored form: multiply
// numerators, merge pole multisets, decompose back into the basis.
inline RationalSeries cauchy_mul(const RationalSeries& f, const RationalSeries& g) {
    require_same_mode(f, g);
    FactoredFraction a = to_factored(f);
    FactoredFraction b = to_factored(g);

    FactoredFraction prod;
    prod.mode = f.mode();
    prod.numerator = detail::poly_mul(a.numerator, b.numerator);
    std::map<Scalar, int, decltype(&scalar_less)> merged(&scalar_less);
    for (const auto& [alpha, m] : a.factors)
        merged[alpha] += m;
    for (const auto& [alpha, m] : b.factors)
        merged[alpha] += m;
    for (const auto& [alpha, m] : merged)
        prod.factors.emplace_back(alpha, m);

    return partial_fractions(prod);
}

} // namespace ratseries
