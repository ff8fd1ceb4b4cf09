#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "ratseries/scalar.hpp"

using namespace ratseries;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

// Deterministic generator of small Gaussian rationals for property sweeps.
std::vector<Scalar> random_scalars(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    std::vector<Scalar> out;
    out.reserve(count);
    while (out.size() < count)
        out.emplace_back(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
    return out;
}

} // namespace

TEST_CASE("rational canonical form") {
    CHECK(Rational(BigInt(2), BigInt(4)) == rat(1, 2));
    CHECK(Rational(BigInt(3), BigInt(-6)) == rat(-1, 2));
    CHECK(Rational(BigInt(0), BigInt(-5)).den() == 1);
    CHECK(rat(7, 7).is_one());
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), SemanticError);
}

TEST_CASE("scalar field arithmetic") {
    Scalar half(rat(1, 2));
    CHECK(half + half == Scalar(1));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));

    Scalar x(rat(1), rat(1)); // 1 + i
    CHECK(x.inv() == Scalar(rat(1, 2), rat(-1, 2)));
    CHECK(x.inv() * x == Scalar(1));

    CHECK_THROWS_AS(Scalar(0).inv(), SemanticError);
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), SemanticError);
}

TEST_CASE("scalar power") {
    CHECK(Scalar(rat(1, 2)).pow(3) == Scalar(rat(1, 8)));
    CHECK(Scalar(rat(1, 2)).pow(-2) == Scalar(4));
    CHECK(Scalar::i().pow(4) == Scalar(1));
    CHECK(Scalar::i().pow(-1) == -Scalar::i());
}

TEST_CASE("binomial examples") {
    CHECK(binomial(5, 2) == rat(10));
    CHECK(binomial(-7, 0) == rat(1));
    CHECK(binomial(0, 0) == rat(1));
    CHECK(binomial(-3, 2) == rat(6)); // (-3)(-4)/2
    CHECK(binomial(3, 5) == rat(0));
}

TEST_CASE("rising factorial examples") {
    CHECK(rising_factorial(Scalar(3), 2) == Scalar(12));
    CHECK(rising_factorial(Scalar(rat(1, 2)), 0) == Scalar(1));
    for (unsigned long j = 0; j <= 8; ++j)
        CHECK(rising_factorial(Scalar(1), j) == Scalar(factorial(j)));
}

TEST_CASE("pascal identity") {
    for (long long n = -30; n <= 30; ++n)
        for (unsigned long k = 1; k <= 30; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1));
}

TEST_CASE("negated upper argument sign law") {
    for (long long n = 1; n <= 20; ++n)
        for (unsigned long k = 1; k <= 20; ++k) {
            Rational lhs = binomial(-n, k);
            Rational rhs = binomial(n + static_cast<long long>(k) - 1, k);
            if (k % 2 != 0)
                rhs = -rhs;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("rising factorial matches binomial") {
    for (long long n = 0; n <= 30; ++n)
        for (unsigned long j = 0; j <= 30; ++j) {
            Scalar lhs = rising_factorial(Scalar(n + 1), j) * Scalar(factorial(j)).inv();
            CHECK(lhs == Scalar(binomial(n + static_cast<long long>(j), j)));
        }
}

TEST_CASE("field axioms on random scalars") {
    auto xs = random_scalars(60, 20240811);
    for (std::size_t t = 0; t + 2 < xs.size(); t += 3) {
        const Scalar &a = xs[t], &b = xs[t + 1], &c = xs[t + 2];
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK(a * a.inv() == Scalar(1));
            CHECK((b / a) * a == b);
        }
    }
}

TEST_CASE("canonical ordering is lexicographic") {
    CHECK(compare(Scalar(1), Scalar(2)) < 0);
    CHECK(compare(Scalar(rat(1, 2)), Scalar(rat(2, 3))) < 0);
    CHECK(compare(Scalar(rat(1), rat(-1)), Scalar(rat(1), rat(1))) < 0);
    CHECK(compare(Scalar::i(), Scalar::i()) == 0);
}

TEST_CASE("scalar text form") {
    CHECK(Scalar(0).str() == "0");
    CHECK(Scalar(rat(3, 2)).str() == "3/2");
    CHECK(Scalar::i().str() == "i");
    CHECK((-Scalar::i()).str() == "-i");
    CHECK(Scalar(rat(3, 2), rat(1, 2)).str() == "3/2+1/2*i");
    CHECK(Scalar(rat(1, 2), rat(-3, 2)).str() == "1/2-3/2*i");
    CHECK(Scalar(rat(0), rat(2)).str() == "2*i");
}
