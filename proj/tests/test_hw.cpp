#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "ratseries/hw.hpp"
#include "ratseries/oracle.hpp"

using namespace ratseries;

namespace {

// Stirling numbers of the second kind by their additive recurrence,
// independent of the algebra code.
std::vector<std::vector<BigInt>> stirling2(int nmax) {
    std::vector<std::vector<BigInt>> s(nmax + 1, std::vector<BigInt>(nmax + 1, BigInt(0)));
    s[0][0] = 1;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 1; k <= n; ++k)
            s[n][k] = BigInt(k) * s[n - 1][k] + s[n - 1][k - 1];
    return s;
}

std::vector<Word> words_up_to(std::size_t maxlen) {
    std::vector<Word> out{{}};
    for (std::size_t len = 1; len <= maxlen; ++len)
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
            Word w;
            for (std::size_t t = 0; t < len; ++t)
                w.push_back((bits >> t) & 1 ? Gen::raise : Gen::lower);
            out.push_back(std::move(w));
        }
    return out;
}

} // namespace

TEST_CASE("word parsing") {
    CHECK(parse_word("aA") == Word{Gen::lower, Gen::raise});
    CHECK(parse_word("").empty());
    CHECK_THROWS_AS(parse_word("ab"), SemanticError);
}

TEST_CASE("normal ordering examples") {
    CHECK(normal_order("aA") == NormalForm::monomial(1, 1) + NormalForm::identity());
    CHECK(normal_order("Aa") == NormalForm::monomial(1, 1));
    // two rewriting steps: aaA -> A a^2 + 2a
    CHECK(normal_order("aaA") ==
          NormalForm::monomial(1, 2) + NormalForm::monomial(0, 1, Scalar(2)));
}

TEST_CASE("hw product examples") {
    NormalForm a = NormalForm::monomial(0, 1);
    NormalForm araise = NormalForm::monomial(1, 0);
    CHECK(hw_mul(a, araise) == NormalForm::monomial(1, 1) + NormalForm::identity());
    CHECK(hw_mul(NormalForm::identity(), a) == a);

    NormalForm number_op = NormalForm::monomial(1, 1);
    CHECK(hw_mul(number_op, number_op) ==
          NormalForm::monomial(2, 2) + NormalForm::monomial(1, 1));
    CHECK(hw_mul(number_op, number_op) == normal_order("AaAa"));
}

TEST_CASE("closed product equals rewriting on all short word pairs") {
    auto words = words_up_to(4);
    for (const Word& u : words)
        for (const Word& v : words) {
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            CHECK(hw_mul(normal_order(u), normal_order(v)) == normal_order(uv));
        }
}

TEST_CASE("stirling identity for powers of the number operator") {
    auto s = stirling2(8);
    Word number{Gen::raise, Gen::lower};
    Word w;
    for (int n = 1; n <= 8; ++n) {
        w.insert(w.end(), number.begin(), number.end());
        NormalForm expected;
        for (int k = 1; k <= n; ++k)
            expected.add_term(k, k, Scalar(s[n][k]));
        CHECK(normal_order(w) == expected);
    }
}

TEST_CASE("degree and grading") {
    CHECK(hw_degree(NormalForm::monomial(2, 1)) == Degree{Degree::Kind::graded, 1});
    CHECK(hw_degree(NormalForm()) == Degree{Degree::Kind::zero, 0});
    NormalForm mixed = NormalForm::monomial(1, 1) + NormalForm::monomial(0, 1);
    CHECK(hw_degree(mixed) == Degree{Degree::Kind::inhomogeneous, 0});

    // graded law on homogeneous elements
    std::vector<NormalForm> homogeneous{
        NormalForm::monomial(2, 1) + NormalForm::monomial(3, 2, Scalar(-2)),
        NormalForm::monomial(0, 2, Scalar(5)) + NormalForm::monomial(1, 3),
        NormalForm::monomial(4, 4) + NormalForm::monomial(1, 1, Scalar(7)),
        NormalForm::monomial(3, 0),
    };
    for (const NormalForm& x : homogeneous)
        for (const NormalForm& y : homogeneous) {
            Degree dx = hw_degree(x), dy = hw_degree(y);
            Degree dp = hw_degree(hw_mul(x, y));
            bool ok = dp.kind == Degree::Kind::zero ||
                      (dp.kind == Degree::Kind::graded && dp.value == dx.value + dy.value);
            CHECK(ok);
        }
}

TEST_CASE("bargmann-fock generator actions") {
    CHECK(bf_apply(Gen::raise, monomial_series(Mode::power, 4)) ==
          monomial_series(Mode::power, 5));
    CHECK(bf_apply(Gen::lower, monomial_series(Mode::power, 0)).is_zero());
    CHECK(bf_apply(Gen::lower, pole_series(Mode::power, Scalar(2), 1)) ==
          pole_series(Mode::power, Scalar(2), 2, Scalar(2)));

    // z * 1/(1-z) = 1/(1-z) - 1
    CHECK(bf_apply(Gen::raise, pole_series(Mode::power, Scalar(1), 1)) ==
          make_series(Mode::power,
                      {{PoleTerm{Scalar(1), 1}, Scalar(1)}, {Monomial{0}, Scalar(-1)}}));

    // (a^dag a) 1/(1-z) = 1/(1-z)^2 - 1/(1-z), coefficients n
    RationalSeries got = bf_apply(NormalForm::monomial(1, 1), pole_series(Mode::power, Scalar(1), 1));
    CHECK(got == make_series(Mode::power, {{PoleTerm{Scalar(1), 2}, Scalar(1)},
                                           {PoleTerm{Scalar(1), 1}, Scalar(-1)}}));
    for (long long n = 0; n <= 20; ++n)
        CHECK(coefficient(got, n) == Scalar(n));

    // laurent: raising z^{-1} gives z^0, lowering z^0 gives zero
    CHECK(bf_apply(Gen::raise, monomial_series(Mode::laurent, -1)) ==
          monomial_series(Mode::laurent, 0));
    CHECK(bf_apply(Gen::lower, monomial_series(Mode::laurent, 0)).is_zero());
}

TEST_CASE("commutator acts as identity in both modes") {
    for (Mode mode : {Mode::power, Mode::laurent}) {
        std::vector<RationalSeries> grid{
            pole_series(mode, Scalar(2), 3),
            make_series(mode, {{Monomial{mode == Mode::power ? 0 : -3}, Scalar(4)},
                               {PoleTerm{Scalar::i(), 1}, Scalar(1)}}),
            monomial_series(mode, 2, Scalar(-7)),
        };
        for (const RationalSeries& f : grid) {
            RationalSeries lhs = bf_apply(Gen::lower, bf_apply(Gen::raise, f));
            RationalSeries rhs = bf_apply(Gen::raise, bf_apply(Gen::lower, f));
            CHECK(sub(lhs, rhs) == f);
        }
    }
}

TEST_CASE("representation property: products act as compositions") {
    std::vector<NormalForm> xs{
        NormalForm::monomial(1, 1),
        NormalForm::monomial(0, 2, Scalar(3)) + NormalForm::monomial(1, 0),
        NormalForm::monomial(2, 1, Scalar::i()),
        NormalForm::identity() + NormalForm::monomial(2, 2, Scalar(Rational(BigInt(1), BigInt(2)))),
    };
    std::vector<RationalSeries> fs{
        pole_series(Mode::power, Scalar(2), 1),
        make_series(Mode::power,
                    {{Monomial{1}, Scalar(2)}, {PoleTerm{Scalar(1), 2}, Scalar(-1)}}),
        monomial_series(Mode::power, 3),
    };
    for (const NormalForm& x : xs)
        for (const NormalForm& y : xs)
            for (const RationalSeries& f : fs)
                CHECK(bf_apply(hw_mul(x, y), f) == bf_apply(x, bf_apply(y, f)));
}

TEST_CASE("faithfulness probe") {
    std::vector<NormalForm> xs{
        NormalForm::monomial(0, 3),
        NormalForm::monomial(2, 2) - NormalForm::monomial(1, 1),
        NormalForm::monomial(1, 0, Scalar(-5)),
        NormalForm::monomial(3, 1) + NormalForm::monomial(2, 0, Scalar(2)),
    };
    for (const NormalForm& x : xs) {
        int maxk = 0, maxl = 0;
        for (const auto& [key, c] : x.terms()) {
            maxk = std::max(maxk, key.first);
            maxl = std::max(maxl, key.second);
        }
        bool hit = false;
        for (long long n = 0; n <= maxk + maxl + 1 && !hit; ++n)
            hit = !bf_apply(x, monomial_series(Mode::power, n)).is_zero();
        CHECK(hit);
    }
}

TEST_CASE("closure: short words keep series rational, matching the oracle") {
    auto words = words_up_to(4);
    std::vector<RationalSeries> fs{
        pole_series(Mode::power, Scalar(2), 2),
        make_series(Mode::laurent,
                    {{Monomial{-2}, Scalar(3)}, {PoleTerm{Scalar(rat(1, 2).num() == 1
                                                                     ? Scalar(Rational(BigInt(1), BigInt(2)))
                                                                     : Scalar(1),
                                                           1)
                                                     .alpha,
                                                 2},
                      Scalar(1)}}),
    };
    for (const Word& w : words)
        for (const RationalSeries& f : fs) {
            RationalSeries g = bf_apply(w, f);
            TruncatedSeries window = truncate(f, 32);
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                window = *it == Gen::lower ? diff(window) : shift(window);
            CHECK(expand_window(g, window.offset(), window.size()) == window);
        }
}
