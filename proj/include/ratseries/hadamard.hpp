#pragma once

#include <variant>

#include "ratseries/errors.hpp"
#include "ratseries/hw.hpp"
#include "ratseries/scalar.hpp"
#include "ratseries/series.hpp"

namespace ratseries {

// Substitution z -> alpha*z, itself the Hadamard multiplication by
// 1/(1-alpha*z).
inline RationalSeries dilate(const Scalar& alpha, const RationalSeries& f) {
    if (alpha.is_zero())
        throw SemanticError("dilation factor must be nonzero");
    RationalSeries out(f.mode());
    for (const auto& [t, c] : f.terms()) {
        if (const auto* m = std::get_if<Monomial>(&t))
            out.add_term(*m, c * alpha.pow(m->n));
        else {
            const auto& p = std::get<PoleTerm>(t);
            out.add_term(PoleTerm{alpha * p.alpha, p.mult}, c);
        }
    }
    return out;
}

// The diagonal element implementing Hadamard multiplication by 1/(1-z)^{k+1}:
//   sum_{j=0}^{k} (C(k,j)/j!) (a^dag)^j a^j.
inline NormalForm diag_element(int k) {
    if (k < 0)
        throw SemanticError("diagonal index must be nonnegative");
    NormalForm x;
    for (int j = 0; j <= k; ++j)
        x.add_term(j, j, Scalar(binomial(k, j) / Rational(factorial(j))));
    return x;
}

// Hadamard multiplication by 1/(1-z)^{k+1}.  The multiplier has no negative
// coefficients, so monomials with n < 0 are annihilated; the rest goes through
// the Bargmann-Fock action of diag_element(k).
inline RationalSeries diag_apply(int k, const RationalSeries& f) {
    RationalSeries kept(f.mode());
    for (const auto& [t, c] : f.terms()) {
        if (const auto* m = std::get_if<Monomial>(&t); m && m->n < 0)
            continue;
        kept.add_term(t, c);
    }
    return bf_apply(diag_element(k), kept);
}

// The multiplication table on basis terms.  Pole exponents enter the closed
// formulas shifted by one: 1/(1-alpha*z)^{k+1} corresponds to mult = k+1.
inline RationalSeries hadamard_basis(const BasisTerm& t1, const BasisTerm& t2, Mode mode) {
    RationalSeries out(mode);
    const auto* m1 = std::get_if<Monomial>(&t1);
    const auto* m2 = std::get_if<Monomial>(&t2);

    if (m1 && m2) {
        if (m1->n == m2->n)
            out.add_term(*m1, Scalar(1));
        return out;
    }

    if (m1 || m2) {
        // z^n (.) 1/(1-alpha*z)^m picks the single coefficient
        // binomial(n+m-1, n) alpha^n; zero for n < 0.
        const Monomial& m = m1 ? *m1 : *m2;
        const PoleTerm& p = std::get<PoleTerm>(m1 ? t2 : t1);
        if (m.n >= 0)
            out.add_term(m, Scalar(binomial(m.n + p.mult - 1, static_cast<unsigned long>(m.n))) *
                                p.alpha.pow(m.n));
        return out;
    }

    const auto& pa = std::get<PoleTerm>(t1);
    const auto& pb = std::get<PoleTerm>(t2);
    const int k = pa.mult - 1;
    const int l = pb.mult - 1;

    RationalSeries base(mode);
    for (int j = 0; j <= k; ++j) {
        Scalar cj = Scalar(binomial(k, j) / Rational(factorial(j))) *
                    rising_factorial(Scalar(l + 1), static_cast<unsigned long>(j));
        for (int s = 0; s <= j; ++s) {
            Scalar c = cj * Scalar(binomial(j, s));
            if ((j - s) % 2 != 0)
                c = -c;
            base.add_term(pole_or_one(Scalar(1), l + s + 1), c);
        }
    }
    return dilate(pa.alpha * pb.alpha, base);
}

// Bilinear extension of the table over the canonical term maps.
inline RationalSeries hadamard(const RationalSeries& f, const RationalSeries& g) {
    require_same_mode(f, g);
    RationalSeries out(f.mode());
    if (f.is_zero() || g.is_zero())
        return out;
    for (const auto& [t1, c1] : f.terms())
        for (const auto& [t2, c2] : g.terms()) {
            const Scalar c = c1 * c2;
            for (const auto& [t, v] : hadamard_basis(t1, t2, f.mode()).terms())
                out.add_term(t, c * v);
        }
    return out;
}

} // namespace ratseries
