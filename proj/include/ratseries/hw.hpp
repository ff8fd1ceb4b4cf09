#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratseries/errors.hpp"
#include "ratseries/scalar.hpp"
#include "ratseries/series.hpp"

namespace ratseries {

// Generators of the Heisenberg-Weyl algebra: lower = a, raise = a^dag.
enum class Gen { lower, raise };

using Word = std::vector<Gen>;

// Word syntax: 'a' for the lowering generator, 'A' for the raising one.
inline Word parse_word(std::string_view s) {
    Word w;
    w.reserve(s.size());
    for (char ch : s) {
        if (ch == 'a')
            w.push_back(Gen::lower);
        else if (ch == 'A')
            w.push_back(Gen::raise);
        else
            throw SemanticError(std::string("invalid word character '") + ch +
                                "' (expected 'a' or 'A')");
    }
    return w;
}

// Element in the normally ordered basis: sum of c_{k,l} (a^dag)^k a^l.
// Canonical form stores no zero coefficients, so equality is structural.
class NormalForm {
public:
    using Key = std::pair<int, int>; // (k raises, l lowers)
    using TermMap = std::map<Key, Scalar>;

    NormalForm() = default;

    static NormalForm identity() { return monomial(0, 0); }

    static NormalForm monomial(int k, int l, const Scalar& c = Scalar(1)) {
        NormalForm x;
        x.add_term(k, l, c);
        return x;
    }

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(int k, int l, const Scalar& c) {
        if (k < 0 || l < 0)
            throw SemanticError("normally ordered exponents must be nonnegative");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.emplace(Key{k, l}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    friend bool operator==(const NormalForm& x, const NormalForm& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const NormalForm& x, const NormalForm& y) { return !(x == y); }

    friend NormalForm operator+(const NormalForm& x, const NormalForm& y) {
        NormalForm r = x;
        for (const auto& [key, c] : y.terms_)
            r.add_term(key.first, key.second, c);
        return r;
    }
    friend NormalForm operator-(const NormalForm& x) {
        NormalForm r;
        for (const auto& [key, c] : x.terms_)
            r.add_term(key.first, key.second, -c);
        return r;
    }
    friend NormalForm operator-(const NormalForm& x, const NormalForm& y) { return x + (-y); }
    friend NormalForm operator*(const Scalar& c, const NormalForm& x) {
        NormalForm r;
        for (const auto& [key, v] : x.terms_)
            r.add_term(key.first, key.second, c * v);
        return r;
    }

private:
    TermMap terms_;
};

// Normal form of a word under the rewriting a a^dag -> a^dag a + 1.  Worklist
// over words with merged coefficients; terminates because each step either
// shortens the word or lowers its inversion count.
inline NormalForm normal_order(const Word& w) {
    std::map<Word, Scalar> pending{{w, Scalar(1)}};
    NormalForm out;
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const Word& word = node.key();
        const Scalar& c = node.mapped();

        std::size_t pos = word.size();
        for (std::size_t t = 0; t + 1 < word.size(); ++t)
            if (word[t] == Gen::lower && word[t + 1] == Gen::raise) {
                pos = t;
                break;
            }

        if (pos == word.size()) {
            int k = 0, l = 0;
            for (Gen g : word)
                (g == Gen::raise ? k : l)++;
            out.add_term(k, l, c);
            continue;
        }

        Word swapped = word;
        swapped[pos] = Gen::raise;
        swapped[pos + 1] = Gen::lower;
        Word contracted;
        contracted.reserve(word.size() - 2);
        contracted.insert(contracted.end(), word.begin(), word.begin() + pos);
        contracted.insert(contracted.end(), word.begin() + pos + 2, word.end());

        auto bump = [&pending](Word key, const Scalar& v) {
            auto [it, inserted] = pending.emplace(std::move(key), v);
            if (!inserted) {
                it->second += v;
                if (it->second.is_zero())
                    pending.erase(it);
            }
        };
        bump(std::move(swapped), c);
        bump(std::move(contracted), c);
    }
    return out;
}

inline NormalForm normal_order(std::string_view s) { return normal_order(parse_word(s)); }

// Normally ordered product via the closed commutation expansion
//   (a^dag)^k1 a^l1 (a^dag)^k2 a^l2
//     = sum_r r! C(l1,r) C(k2,r) (a^dag)^{k1+k2-r} a^{l1+l2-r}.
inline NormalForm hw_mul(const NormalForm& x, const NormalForm& y) {
    NormalForm out;
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            const int l1 = kx.second, k2 = ky.first;
            const int top = l1 < k2 ? l1 : k2;
            for (int r = 0; r <= top; ++r) {
                Scalar c = cx * cy * Scalar(factorial(r)) * Scalar(binomial(l1, r)) *
                           Scalar(binomial(k2, r));
                out.add_term(kx.first + k2 - r, l1 + ky.second - r, c);
            }
        }
    return out;
}

inline NormalForm operator*(const NormalForm& x, const NormalForm& y) { return hw_mul(x, y); }

// Degree (excess) k - l of the Z-grading.  The zero element is homogeneous of
// every degree and gets its own marker; mixed elements are inhomogeneous.
struct Degree {
    enum class Kind { graded, inhomogeneous, zero };
    Kind kind = Kind::zero;
    int value = 0;

    friend bool operator==(const Degree&, const Degree&) = default;
};

inline Degree hw_degree(const NormalForm& x) {
    if (x.is_zero())
        return Degree{Degree::Kind::zero, 0};
    int e = 0;
    bool first = true;
    for (const auto& [key, c] : x.terms()) {
        int d = key.first - key.second;
        if (first) {
            e = d;
            first = false;
        } else if (d != e) {
            return Degree{Degree::Kind::inhomogeneous, 0};
        }
    }
    return Degree{Degree::Kind::graded, e};
}

// ---------------------------------------------------------------------------
// Bargmann-Fock action: a acts as d/dz, a^dag as multiplication by z.

inline RationalSeries bf_apply(Gen g, const RationalSeries& f) {
    RationalSeries out(f.mode());
    for (const auto& [t, c] : f.terms()) {
        if (const auto* m = std::get_if<Monomial>(&t)) {
            if (g == Gen::lower) {
                if (m->n != 0)
                    out.add_term(Monomial{m->n - 1}, c * Scalar(BigInt(m->n)));
            } else {
                out.add_term(Monomial{m->n + 1}, c);
            }
        } else {
            const auto& p = std::get<PoleTerm>(t);
            if (g == Gen::lower) {
                out.add_term(PoleTerm{p.alpha, p.mult + 1}, c * Scalar(p.mult) * p.alpha);
            } else {
                // z/(1-az)^m = (1/a) * (1/(1-az)^m - 1/(1-az)^{m-1})
                Scalar ai = p.alpha.inv();
                out.add_term(PoleTerm{p.alpha, p.mult}, c * ai);
                out.add_term(pole_or_one(p.alpha, p.mult - 1), -(c * ai));
            }
        }
    }
    return out;
}

// Words act with the leftmost letter outermost.
inline RationalSeries bf_apply(const Word& w, const RationalSeries& f) {
    RationalSeries out = f;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out = bf_apply(*it, out);
    return out;
}

inline RationalSeries bf_apply(const NormalForm& x, const RationalSeries& f) {
    RationalSeries out(f.mode());
    for (const auto& [key, c] : x.terms()) {
        RationalSeries term = f;
        for (int t = 0; t < key.second; ++t)
            term = bf_apply(Gen::lower, term);
        for (int t = 0; t < key.first; ++t)
            term = bf_apply(Gen::raise, term);
        out = add(out, scale(c, term));
    }
    return out;
}

} // namespace ratseries
