#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ratseries/errors.hpp"
#include "ratseries/format.hpp"
#include "ratseries/hadamard.hpp"
#include "ratseries/hw.hpp"
#include "ratseries/oracle.hpp"
#include "ratseries/scalar.hpp"
#include "ratseries/series.hpp"

namespace ratseries {

// Abstract syntax for the one-shot expression language.  `*` is the Cauchy
// product and `#` the Hadamard product; they share one precedence level and
// associate left.
struct Expr {
    enum class Kind {
        scalar_lit,
        series_lit, // whole-input JSON literal
        monomial,   // z^n
        pole,       // 1/(1-alpha*z)^mult
        add,
        sub,
        neg,
        cauchy,
        hadamard,
        deriv,       // d(e)
        shift,       // x(e)
        diag,        // diag(k, e)
        dilate_call, // dilate(c, e)
        coeff,       // coeff(e, n)
        expand,      // expand(e [, N])
        word_no      // no("...")
    };

    Kind kind = Kind::scalar_lit;
    std::size_t pos = 0;

    Scalar scalar;              // scalar_lit value; pole alpha
    RationalSeries series;      // series_lit payload
    long long n = 0;            // monomial exponent; diag k; coeff index; expand N
    bool n_set = false;         // whether the optional integer argument was given
    int mult = 1;               // pole multiplicity
    Word word;                  // word_no payload
    std::vector<Expr> children;
};

using Value = std::variant<Scalar, RationalSeries, NormalForm, TruncatedSeries>;

namespace detail {

struct Token {
    enum class Type { integer, ident, str, sym, end };
    Type type = Type::end;
    std::string text;
    std::size_t pos = 0; // 1-based
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t idx = 0;
    while (idx < src.size()) {
        char ch = src[idx];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++idx;
            continue;
        }
        std::size_t pos = idx + 1;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = idx;
            while (idx < src.size() && std::isdigit(static_cast<unsigned char>(src[idx])))
                ++idx;
            out.push_back({Token::Type::integer, std::string(src.substr(start, idx - start)), pos});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t start = idx;
            while (idx < src.size() && std::isalpha(static_cast<unsigned char>(src[idx])))
                ++idx;
            out.push_back({Token::Type::ident, std::string(src.substr(start, idx - start)), pos});
            continue;
        }
        if (ch == '"') {
            std::size_t start = ++idx;
            while (idx < src.size() && src[idx] != '"')
                ++idx;
            if (idx == src.size())
                throw SyntaxError("unterminated string literal", pos);
            out.push_back({Token::Type::str, std::string(src.substr(start, idx - start)), pos});
            ++idx;
            continue;
        }
        if (std::string_view("+-*#/^(),").find(ch) != std::string_view::npos) {
            out.push_back({Token::Type::sym, std::string(1, ch), pos});
            ++idx;
            continue;
        }
        throw SyntaxError(std::string("unexpected character '") + ch + "'", pos);
    }
    out.push_back({Token::Type::end, "", src.size() + 1});
    return out;
}

class ExprParser {
public:
    ExprParser(std::string_view src, Mode mode) : tokens_(lex(src)), mode_(mode) {}

    Expr parse() {
        Expr e = expression();
        if (!at_end())
            throw SyntaxError("unexpected trailing input", peek().pos);
        return e;
    }

private:
    Expr expression() {
        Expr lhs = term();
        while (is_sym("+") || is_sym("-")) {
            bool plus = peek().text == "+";
            std::size_t pos = get().pos;
            Expr rhs = term();
            Expr node;
            node.kind = plus ? Expr::Kind::add : Expr::Kind::sub;
            node.pos = pos;
            node.children.push_back(std::move(lhs));
            node.children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = unary();
        while (is_sym("*") || is_sym("#")) {
            bool cauchy = peek().text == "*";
            std::size_t pos = get().pos;
            Expr rhs = unary();
            Expr node;
            node.kind = cauchy ? Expr::Kind::cauchy : Expr::Kind::hadamard;
            node.pos = pos;
            node.children.push_back(std::move(lhs));
            node.children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr unary() {
        if (is_sym("-")) {
            std::size_t pos = get().pos;
            Expr node;
            node.kind = Expr::Kind::neg;
            node.pos = pos;
            node.children.push_back(unary());
            return node;
        }
        return postfix();
    }

    // Handles the '/' forms hanging off a primary: rational literals `p/q`
    // and pole atoms `c/(1-alpha*z)^m`.
    Expr postfix() {
        Expr e = primary();
        while (is_sym("/")) {
            std::size_t slash_pos = get().pos;
            if (peek().type == Token::Type::integer) {
                Scalar num = fold_scalar_or_throw(e, slash_pos);
                Token den = get();
                BigInt d(den.text);
                if (d == 0)
                    throw SemanticError("division by zero", den.pos);
                Expr node;
                node.kind = Expr::Kind::scalar_lit;
                node.pos = e.pos;
                node.scalar = num / Scalar(d);
                e = std::move(node);
                continue;
            }
            if (is_sym("(")) {
                Scalar num = fold_scalar_or_throw(e, slash_pos);
                std::size_t saved = next_;
                try {
                    Expr pole = pole_tail(e.pos);
                    Expr node;
                    node.kind = Expr::Kind::cauchy;
                    node.pos = e.pos;
                    Expr lit;
                    lit.kind = Expr::Kind::scalar_lit;
                    lit.pos = e.pos;
                    lit.scalar = num;
                    node.children.push_back(std::move(lit));
                    node.children.push_back(std::move(pole));
                    e = std::move(node);
                    continue;
                } catch (const SyntaxError&) {
                    next_ = saved; // not a pole form; try a parenthesized scalar
                }
                std::size_t open = get().pos;
                Expr inner = expression();
                expect_sym(")", "expected ')'");
                auto divisor = fold_scalar(inner);
                if (!divisor)
                    throw SyntaxError("cannot divide by a series", open);
                if (divisor->is_zero())
                    throw SemanticError("division by zero", open);
                Expr node;
                node.kind = Expr::Kind::scalar_lit;
                node.pos = e.pos;
                node.scalar = num / *divisor;
                e = std::move(node);
                continue;
            }
            throw SyntaxError("expected integer or pole denominator after '/'", slash_pos);
        }
        return e;
    }

    // Parses "(1-alpha*z)^m" starting at the opening parenthesis.
    Expr pole_tail(std::size_t pos) {
        expect_sym("(", "expected '('");
        Token one = expect(Token::Type::integer, "expected '1' in pole denominator");
        if (one.text != "1")
            throw SyntaxError("pole denominator must start with 1", one.pos);
        expect_sym("-", "expected '-' in pole denominator");
        auto [alpha, alpha_pos] = alpha_atom();
        expect_sym("*", "expected '*' before z in pole denominator");
        Token zt = expect(Token::Type::ident, "expected 'z' in pole denominator");
        if (zt.text != "z")
            throw SyntaxError("expected 'z' in pole denominator", zt.pos);
        expect_sym(")", "expected ')'");

        long long mult = 1;
        std::size_t mult_pos = pos;
        if (is_sym("^")) {
            get();
            bool negative = false;
            if (is_sym("-")) {
                negative = true;
                get();
            }
            Token m = expect(Token::Type::integer, "expected integer exponent");
            mult_pos = m.pos;
            mult = to_small_int(m);
            if (negative)
                mult = -mult;
        }
        if (alpha.is_zero())
            throw SemanticError("pole value must be nonzero", alpha_pos);
        if (mult < 1)
            throw SemanticError("pole multiplicity must be positive", mult_pos);

        Expr node;
        node.kind = Expr::Kind::pole;
        node.pos = pos;
        node.scalar = alpha;
        node.mult = static_cast<int>(mult);
        return node;
    }

    // A pole parameter is a single atom: rational, i, or parenthesized scalar.
    std::pair<Scalar, std::size_t> alpha_atom() {
        if (peek().type == Token::Type::integer) {
            Token num = get();
            Scalar v{BigInt(num.text)};
            if (is_sym("/")) {
                get();
                Token den = expect(Token::Type::integer, "expected integer denominator");
                BigInt d(den.text);
                if (d == 0)
                    throw SemanticError("division by zero", den.pos);
                v = Scalar(Rational(BigInt(num.text), d));
            }
            return {v, num.pos};
        }
        if (peek().type == Token::Type::ident && peek().text == "i") {
            Token tok = get();
            return {Scalar::i(), tok.pos};
        }
        if (is_sym("(")) {
            std::size_t open = get().pos;
            Expr inner = expression();
            expect_sym(")", "expected ')'");
            auto v = fold_scalar(inner);
            if (!v)
                throw SyntaxError("pole value must be a scalar", open);
            return {*v, open};
        }
        throw SyntaxError("expected scalar pole value", peek().pos);
    }

    Expr primary() {
        const Token& tok = peek();
        if (tok.type == Token::Type::integer) {
            Token t = get();
            Expr node;
            node.kind = Expr::Kind::scalar_lit;
            node.pos = t.pos;
            node.scalar = Scalar(BigInt(t.text));
            return node;
        }
        if (tok.type == Token::Type::ident)
            return ident_primary();
        if (is_sym("(")) {
            get();
            Expr inner = expression();
            expect_sym(")", "expected ')'");
            return inner;
        }
        throw SyntaxError("expected expression", tok.pos);
    }

    Expr ident_primary() {
        Token name = get();
        if (name.text == "i") {
            Expr node;
            node.kind = Expr::Kind::scalar_lit;
            node.pos = name.pos;
            node.scalar = Scalar::i();
            return node;
        }
        if (name.text == "z") {
            long long n = 1;
            std::size_t npos = name.pos;
            if (is_sym("^")) {
                get();
                bool negative = false;
                if (is_sym("-")) {
                    negative = true;
                    get();
                }
                Token e = expect(Token::Type::integer, "expected integer exponent");
                npos = e.pos;
                n = to_small_int(e);
                if (negative)
                    n = -n;
            }
            if (mode_ == Mode::power && n < 0)
                throw SemanticError("negative exponent in power mode", npos);
            Expr node;
            node.kind = Expr::Kind::monomial;
            node.pos = name.pos;
            node.n = n;
            node.n_set = true;
            return node;
        }
        if (name.text == "d" || name.text == "x") {
            expect_sym("(", "expected '('");
            Expr arg = expression();
            expect_sym(")", "expected ')'");
            Expr node;
            node.kind = name.text == "d" ? Expr::Kind::deriv : Expr::Kind::shift;
            node.pos = name.pos;
            node.children.push_back(std::move(arg));
            return node;
        }
        if (name.text == "diag") {
            expect_sym("(", "expected '('");
            auto [k, kpos] = signed_integer();
            if (k < 0)
                throw SemanticError("diagonal index must be nonnegative", kpos);
            expect_sym(",", "expected ','");
            Expr arg = expression();
            expect_sym(")", "expected ')'");
            Expr node;
            node.kind = Expr::Kind::diag;
            node.pos = name.pos;
            node.n = k;
            node.n_set = true;
            node.children.push_back(std::move(arg));
            return node;
        }
        if (name.text == "dilate") {
            expect_sym("(", "expected '('");
            Expr factor = expression();
            expect_sym(",", "expected ','");
            Expr arg = expression();
            expect_sym(")", "expected ')'");
            Expr node;
            node.kind = Expr::Kind::dilate_call;
            node.pos = name.pos;
            node.children.push_back(std::move(factor));
            node.children.push_back(std::move(arg));
            return node;
        }
        if (name.text == "coeff") {
            expect_sym("(", "expected '('");
            Expr arg = expression();
            expect_sym(",", "expected ','");
            auto [n, npos] = signed_integer();
            (void)npos;
            expect_sym(")", "expected ')'");
            Expr node;
            node.kind = Expr::Kind::coeff;
            node.pos = name.pos;
            node.n = n;
            node.n_set = true;
            node.children.push_back(std::move(arg));
            return node;
        }
        if (name.text == "expand") {
            expect_sym("(", "expected '('");
            Expr arg = expression();
            Expr node;
            node.kind = Expr::Kind::expand;
            node.pos = name.pos;
            if (is_sym(",")) {
                get();
                auto [n, npos] = signed_integer();
                if (n < 1)
                    throw SemanticError("truncation length must be positive", npos);
                node.n = n;
                node.n_set = true;
            }
            expect_sym(")", "expected ')'");
            node.children.push_back(std::move(arg));
            return node;
        }
        if (name.text == "no") {
            expect_sym("(", "expected '('");
            Token s = expect(Token::Type::str, "expected word string");
            expect_sym(")", "expected ')'");
            Expr node;
            node.kind = Expr::Kind::word_no;
            node.pos = name.pos;
            try {
                node.word = parse_word(s.text);
            } catch (const SemanticError& err) {
                throw SemanticError(err.what(), s.pos);
            }
            return node;
        }
        throw SyntaxError("unknown name '" + name.text + "'", name.pos);
    }

    std::pair<long long, std::size_t> signed_integer() {
        bool negative = false;
        std::size_t pos = peek().pos;
        if (is_sym("-")) {
            negative = true;
            get();
        }
        Token t = expect(Token::Type::integer, "expected integer");
        long long v = to_small_int(t);
        return {negative ? -v : v, pos};
    }

    static long long to_small_int(const Token& t) {
        BigInt v(t.text);
        if (v > BigInt(1) << 40)
            throw SemanticError("integer argument out of range", t.pos);
        return v.convert_to<long long>();
    }

    std::optional<Scalar> fold_scalar(const Expr& e) const {
        switch (e.kind) {
        case Expr::Kind::scalar_lit:
            return e.scalar;
        case Expr::Kind::neg:
            if (auto v = fold_scalar(e.children[0]))
                return -*v;
            return std::nullopt;
        case Expr::Kind::add:
        case Expr::Kind::sub:
        case Expr::Kind::cauchy: {
            auto a = fold_scalar(e.children[0]);
            auto b = fold_scalar(e.children[1]);
            if (!a || !b)
                return std::nullopt;
            if (e.kind == Expr::Kind::add)
                return *a + *b;
            if (e.kind == Expr::Kind::sub)
                return *a - *b;
            return *a * *b;
        }
        default:
            return std::nullopt;
        }
    }

    Scalar fold_scalar_or_throw(const Expr& e, std::size_t pos) const {
        if (auto v = fold_scalar(e))
            return *v;
        throw SyntaxError("'/' applies to scalar numerators only", pos);
    }

    const Token& peek() const { return tokens_[next_]; }
    Token get() { return tokens_[next_++]; }
    bool at_end() const { return peek().type == Token::Type::end; }
    bool is_sym(std::string_view s) const {
        return peek().type == Token::Type::sym && peek().text == s;
    }
    Token expect(Token::Type type, const char* msg) {
        if (peek().type != type)
            throw SyntaxError(msg, peek().pos);
        return get();
    }
    void expect_sym(std::string_view s, const char* msg) {
        if (!is_sym(s))
            throw SyntaxError(msg, peek().pos);
        get();
    }

    std::vector<Token> tokens_;
    std::size_t next_ = 0;
    Mode mode_;
};

} // namespace detail

// Parses an expression, or a whole-input JSON series literal when the input
// starts with '{'.
inline Expr parse(std::string_view input, Mode mode = Mode::power) {
    std::size_t first = input.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && input[first] == '{') {
        Expr node;
        node.kind = Expr::Kind::series_lit;
        node.pos = first + 1;
        node.series = series_from_json(input);
        return node;
    }
    return detail::ExprParser(input, mode).parse();
}

namespace detail {

template <typename Fn> auto with_pos(std::size_t pos, Fn&& fn) {
    try {
        return fn();
    } catch (const SemanticError& err) {
        if (err.position() != 0)
            throw;
        throw SemanticError(err.what(), pos);
    }
}

inline RationalSeries lift_series(const Value& v, Mode mode, std::size_t pos) {
    if (const auto* f = std::get_if<RationalSeries>(&v))
        return *f;
    if (const auto* c = std::get_if<Scalar>(&v))
        return monomial_series(mode, 0, *c);
    throw SemanticError(std::holds_alternative<NormalForm>(v)
                            ? "expected a series, got an operator"
                            : "expand(...) results cannot be combined",
                        pos);
}

inline NormalForm lift_normal_form(const Value& v, std::size_t pos) {
    if (const auto* x = std::get_if<NormalForm>(&v))
        return *x;
    if (const auto* c = std::get_if<Scalar>(&v))
        return NormalForm::monomial(0, 0, *c);
    throw SemanticError("expected an operator", pos);
}

} // namespace detail

inline Value eval(const Expr& e, Mode mode, std::size_t default_truncate = 64) {
    using detail::lift_normal_form;
    using detail::lift_series;
    using detail::with_pos;
    using Kind = Expr::Kind;

    switch (e.kind) {
    case Kind::scalar_lit:
        return e.scalar;
    case Kind::series_lit:
        return e.series;
    case Kind::monomial:
        return with_pos(e.pos, [&] { return monomial_series(mode, e.n); });
    case Kind::pole:
        return with_pos(e.pos, [&] { return pole_series(mode, e.scalar, e.mult); });
    case Kind::neg: {
        Value v = eval(e.children[0], mode, default_truncate);
        if (const auto* c = std::get_if<Scalar>(&v))
            return -*c;
        if (const auto* f = std::get_if<RationalSeries>(&v))
            return negate(*f);
        if (const auto* x = std::get_if<NormalForm>(&v))
            return -*x;
        throw SemanticError("expand(...) results cannot be combined", e.pos);
    }
    case Kind::add:
    case Kind::sub: {
        Value a = eval(e.children[0], mode, default_truncate);
        Value b = eval(e.children[1], mode, default_truncate);
        bool plus = e.kind == Kind::add;
        if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b)) {
            const auto& x = std::get<Scalar>(a);
            const auto& y = std::get<Scalar>(b);
            return plus ? x + y : x - y;
        }
        if (std::holds_alternative<NormalForm>(a) || std::holds_alternative<NormalForm>(b)) {
            NormalForm x = lift_normal_form(a, e.pos);
            NormalForm y = lift_normal_form(b, e.pos);
            return plus ? x + y : x - y;
        }
        return with_pos(e.pos, [&]() -> Value {
            Mode am = std::holds_alternative<RationalSeries>(a)
                          ? std::get<RationalSeries>(a).mode()
                          : std::get<RationalSeries>(b).mode();
            RationalSeries x = lift_series(a, am, e.pos);
            RationalSeries y = lift_series(b, am, e.pos);
            return plus ? add(x, y) : sub(x, y);
        });
    }
    case Kind::cauchy: {
        Value a = eval(e.children[0], mode, default_truncate);
        Value b = eval(e.children[1], mode, default_truncate);
        if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b))
            return std::get<Scalar>(a) * std::get<Scalar>(b);
        if (std::holds_alternative<NormalForm>(a) || std::holds_alternative<NormalForm>(b)) {
            NormalForm x = lift_normal_form(a, e.pos);
            NormalForm y = lift_normal_form(b, e.pos);
            return hw_mul(x, y);
        }
        return with_pos(e.pos, [&]() -> Value {
            if (std::holds_alternative<Scalar>(a))
                return scale(std::get<Scalar>(a), std::get<RationalSeries>(b));
            if (std::holds_alternative<Scalar>(b))
                return scale(std::get<Scalar>(b), std::get<RationalSeries>(a));
            return cauchy_mul(lift_series(a, mode, e.pos), lift_series(b, mode, e.pos));
        });
    }
    case Kind::hadamard: {
        Value a = eval(e.children[0], mode, default_truncate);
        Value b = eval(e.children[1], mode, default_truncate);
        return with_pos(e.pos, [&]() -> Value {
            Mode am = std::holds_alternative<RationalSeries>(a)
                          ? std::get<RationalSeries>(a).mode()
                          : mode;
            return hadamard(lift_series(a, am, e.pos), lift_series(b, am, e.pos));
        });
    }
    case Kind::deriv:
    case Kind::shift: {
        Value v = eval(e.children[0], mode, default_truncate);
        Gen g = e.kind == Kind::deriv ? Gen::lower : Gen::raise;
        return with_pos(e.pos, [&]() -> Value { return bf_apply(g, lift_series(v, mode, e.pos)); });
    }
    case Kind::diag: {
        Value v = eval(e.children[0], mode, default_truncate);
        return with_pos(e.pos, [&]() -> Value {
            return diag_apply(static_cast<int>(e.n), lift_series(v, mode, e.pos));
        });
    }
    case Kind::dilate_call: {
        Value c = eval(e.children[0], mode, default_truncate);
        const auto* factor = std::get_if<Scalar>(&c);
        if (!factor)
            throw SemanticError("dilation factor must be a scalar", e.children[0].pos);
        Value v = eval(e.children[1], mode, default_truncate);
        return with_pos(e.pos,
                        [&]() -> Value { return dilate(*factor, lift_series(v, mode, e.pos)); });
    }
    case Kind::coeff: {
        Value v = eval(e.children[0], mode, default_truncate);
        return with_pos(e.pos,
                        [&]() -> Value { return coefficient(lift_series(v, mode, e.pos), e.n); });
    }
    case Kind::expand: {
        Value v = eval(e.children[0], mode, default_truncate);
        std::size_t n = e.n_set ? static_cast<std::size_t>(e.n) : default_truncate;
        return with_pos(e.pos,
                        [&]() -> Value { return truncate(lift_series(v, mode, e.pos), n); });
    }
    case Kind::word_no:
        return normal_order(e.word);
    }
    throw SemanticError("malformed expression tree", e.pos);
}

inline Value evaluate_input(std::string_view input, Mode mode,
                            std::size_t default_truncate = 64) {
    return eval(parse(input, mode), mode, default_truncate);
}

inline std::string print_value(const Value& v, Format format) {
    return std::visit(
        [&](const auto& x) -> std::string {
            switch (format) {
            case Format::latex:
                return latex_form(x);
            case Format::json:
                return json_form(x);
            case Format::text:
            default:
                return text_form(x);
            }
        },
        v);
}

} // namespace ratseries
