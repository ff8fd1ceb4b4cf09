#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ratseries/errors.hpp"
#include "ratseries/hw.hpp"
#include "ratseries/oracle.hpp"
#include "ratseries/scalar.hpp"
#include "ratseries/series.hpp"

namespace ratseries {

enum class Format { text, latex, json };

// ---------------------------------------------------------------------------
// Canonical text form.

inline std::string text_form(const Scalar& c) { return c.str(); }

namespace detail {

// Coefficients whose canonical string is a top-level sum need parentheses in
// term position; pure products and unary minus reparse unambiguously.
inline std::string coeff_text(const Scalar& c) {
    if (!c.re().is_zero() && !c.im().is_zero())
        return "(" + c.str() + ")";
    return c.str();
}

// Pole parameters are printed as a single atom: positive rational, bare i,
// or a parenthesized scalar.
inline std::string alpha_text(const Scalar& c) {
    if (c.im().is_zero() && c.re().sign() > 0)
        return c.str();
    if (c.re().is_zero() && c.im().is_one())
        return "i";
    return "(" + c.str() + ")";
}

} // namespace detail

inline std::string text_form(const RationalSeries& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (const auto& [t, c] : f.terms()) {
        if (!out.empty())
            out += " + ";
        if (const auto* m = std::get_if<Monomial>(&t)) {
            out += detail::coeff_text(c) + "*z^" + std::to_string(m->n);
        } else {
            const auto& p = std::get<PoleTerm>(t);
            out += detail::coeff_text(c) + "/(1-" + detail::alpha_text(p.alpha) + "*z)";
            if (p.mult != 1)
                out += "^" + std::to_string(p.mult);
        }
    }
    return out;
}

namespace detail {

// Normal forms print highest (k+l, k) first.
inline std::vector<std::pair<NormalForm::Key, Scalar>> nf_print_order(const NormalForm& x) {
    std::vector<std::pair<NormalForm::Key, Scalar>> terms(x.terms().begin(), x.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int ta = a.first.first + a.first.second;
        int tb = b.first.first + b.first.second;
        if (ta != tb)
            return ta > tb;
        return a.first.first > b.first.first;
    });
    return terms;
}

} // namespace detail

inline std::string text_form(const NormalForm& x) {
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [key, c] : detail::nf_print_order(x)) {
        if (!out.empty())
            out += " + ";
        const auto [k, l] = key;
        if (k == 0 && l == 0) {
            out += detail::coeff_text(c);
            continue;
        }
        std::string ops;
        if (k > 0)
            ops += "A^" + std::to_string(k);
        if (l > 0) {
            if (!ops.empty())
                ops += " ";
            ops += "a^" + std::to_string(l);
        }
        if (c.is_one())
            out += ops;
        else
            out += detail::coeff_text(c) + "*" + ops;
    }
    return out;
}

// One coefficient per line: exponent, tab, scalar.
inline std::string text_form(const TruncatedSeries& x) {
    std::string out;
    for (std::size_t t = 0; t < x.size(); ++t) {
        out += std::to_string(x.offset() + static_cast<long long>(t));
        out += '\t';
        out += x[t].str();
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// LaTeX form (output only; not round-tripped).

inline std::string latex_form(const Rational& r) {
    if (r.is_integer())
        return r.num().str();
    std::string s;
    BigInt n = r.num();
    if (n < 0) {
        s += "-";
        n = -n;
    }
    return s + "\\frac{" + n.str() + "}{" + r.den().str() + "}";
}

inline std::string latex_form(const Scalar& c) {
    if (c.is_zero())
        return "0";
    std::string s;
    if (!c.re().is_zero())
        s += latex_form(c.re());
    if (!c.im().is_zero()) {
        std::string t;
        if (c.im().is_one())
            t = "i";
        else if (c.im() == Rational(-1))
            t = "-i";
        else
            t = latex_form(c.im()) + "i";
        if (!s.empty() && c.im().sign() > 0)
            s += "+";
        s += t;
    }
    return s;
}

namespace detail {

inline std::string latex_group(const Scalar& c) {
    if (!c.re().is_zero() && !c.im().is_zero())
        return "(" + latex_form(c) + ")";
    return latex_form(c);
}

} // namespace detail

inline std::string latex_form(const RationalSeries& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (const auto& [t, c] : f.terms()) {
        if (!out.empty())
            out += " + ";
        if (const auto* m = std::get_if<Monomial>(&t)) {
            if (m->n == 0)
                out += latex_form(c);
            else if (c.is_one())
                out += "z^{" + std::to_string(m->n) + "}";
            else
                out += detail::latex_group(c) + "z^{" + std::to_string(m->n) + "}";
        } else {
            const auto& p = std::get<PoleTerm>(t);
            out += "\\frac{" + latex_form(c) + "}{(1-" + detail::latex_group(p.alpha) + "z)^{" +
                   std::to_string(p.mult) + "}}";
        }
    }
    return out;
}

inline std::string latex_form(const NormalForm& x) {
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [key, c] : detail::nf_print_order(x)) {
        if (!out.empty())
            out += " + ";
        const auto [k, l] = key;
        std::string ops;
        if (k > 0)
            ops += "(a^{\\dag})^{" + std::to_string(k) + "}";
        if (l > 0)
            ops += "a^{" + std::to_string(l) + "}";
        if (ops.empty())
            out += latex_form(c);
        else if (c.is_one())
            out += ops;
        else
            out += detail::latex_group(c) + ops;
    }
    return out;
}

inline std::string latex_form(const TruncatedSeries& x) { return text_form(x); }

// ---------------------------------------------------------------------------
// Strict scalar parser for the canonical scalar syntax: signed sums of
// products of atoms `p`, `p/q`, `i`, with optional parentheses.

namespace detail {

class ScalarParser {
public:
    explicit ScalarParser(std::string_view src) : src_(src) {}

    Scalar parse() {
        Scalar v = sum();
        skip_ws();
        if (pos_ != src_.size())
            throw SyntaxError("trailing input in scalar", pos_ + 1);
        return v;
    }

private:
    Scalar sum() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-')
            neg = get() == '-';
        Scalar v = product();
        if (neg)
            v = -v;
        while (true) {
            skip_ws();
            char ch = peek();
            if (ch != '+' && ch != '-')
                break;
            get();
            Scalar rhs = product();
            v = ch == '+' ? v + rhs : v - rhs;
        }
        return v;
    }

    Scalar product() {
        Scalar v = atom();
        while (true) {
            skip_ws();
            if (peek() != '*')
                break;
            get();
            v *= atom();
        }
        return v;
    }

    Scalar atom() {
        skip_ws();
        char ch = peek();
        if (ch == '(') {
            get();
            Scalar v = sum();
            skip_ws();
            if (peek() != ')')
                throw SyntaxError("expected ')' in scalar", pos_ + 1);
            get();
            return v;
        }
        if (ch == 'i') {
            get();
            return Scalar::i();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            BigInt num = integer();
            skip_ws();
            if (peek() == '/') {
                get();
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw SyntaxError("expected integer denominator", pos_ + 1);
                BigInt den = integer();
                if (den == 0)
                    throw SemanticError("division by zero", pos_);
                return Scalar(Rational(num, den));
            }
            return Scalar(num);
        }
        throw SyntaxError("expected scalar", pos_ + 1);
    }

    BigInt integer() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        return BigInt(std::string(src_.substr(start, pos_ - start)));
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char get() { return src_[pos_++]; }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Scalar parse_scalar(std::string_view s) { return detail::ScalarParser(s).parse(); }

// ---------------------------------------------------------------------------
// JSON form.  Series schema:
//   { "mode": "power"|"laurent",
//     "monomials": [ { "n": int, "c": scalar-string } ... ],
//     "poles":     [ { "alpha": scalar-string, "m": int, "c": scalar-string } ... ] }

inline nlohmann::ordered_json json_value(const Scalar& c) { return c.str(); }

inline nlohmann::ordered_json json_value(const RationalSeries& f) {
    nlohmann::ordered_json j;
    j["mode"] = mode_name(f.mode());
    j["monomials"] = nlohmann::ordered_json::array();
    j["poles"] = nlohmann::ordered_json::array();
    for (const auto& [t, c] : f.terms()) {
        if (const auto* m = std::get_if<Monomial>(&t))
            j["monomials"].push_back({{"n", m->n}, {"c", c.str()}});
        else {
            const auto& p = std::get<PoleTerm>(t);
            j["poles"].push_back({{"alpha", p.alpha.str()}, {"m", p.mult}, {"c", c.str()}});
        }
    }
    return j;
}

inline nlohmann::ordered_json json_value(const NormalForm& x) {
    nlohmann::ordered_json j;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [key, c] : detail::nf_print_order(x))
        j["terms"].push_back({{"k", key.first}, {"l", key.second}, {"c", c.str()}});
    return j;
}

inline nlohmann::ordered_json json_value(const TruncatedSeries& x) {
    nlohmann::ordered_json j;
    j["offset"] = x.offset();
    j["coeffs"] = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < x.size(); ++t)
        j["coeffs"].push_back(x[t].str());
    return j;
}

template <typename T> std::string json_form(const T& v) { return json_value(v).dump(); }

inline RationalSeries series_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(std::string("invalid JSON: ") + e.what());
    }
    try {
        std::string mode_str = j.at("mode").get<std::string>();
        Mode mode;
        if (mode_str == "power")
            mode = Mode::power;
        else if (mode_str == "laurent")
            mode = Mode::laurent;
        else
            throw SemanticError("unknown mode \"" + mode_str + "\"");
        RationalSeries f(mode);
        if (j.contains("monomials"))
            for (const auto& item : j.at("monomials"))
                f.add_term(Monomial{item.at("n").get<long long>()},
                           parse_scalar(item.at("c").get<std::string>()));
        if (j.contains("poles"))
            for (const auto& item : j.at("poles"))
                f.add_term(PoleTerm{parse_scalar(item.at("alpha").get<std::string>()),
                                    item.at("m").get<int>()},
                           parse_scalar(item.at("c").get<std::string>()));
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("invalid series JSON: ") + e.what());
    }
}

} // namespace ratseries
