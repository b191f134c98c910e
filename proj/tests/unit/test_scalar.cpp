#include <doctest.h>

#include <cmath>
#include <random>

#include "algebroid/scalar.hpp"

using namespace algebroid;

namespace {

Scalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    const std::uint64_t radicands[] = {1, 2, 3, 6};
    std::vector<Scalar::Term> terms;
    for (const auto r : radicands) {
        if (rng() % 2 == 0) {
            terms.push_back({r, mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))});
            terms.back().re.canonicalize();
            terms.back().im.canonicalize();
        }
    }
    return Scalar::from_terms(terms);
}

// Floating-point evaluation of the real part, used as an independent oracle.
double approximate_real(const Scalar& z) {
    double sum = 0;
    for (const auto& term : z.terms()) {
        sum += term.re.get_d() * std::sqrt(static_cast<double>(term.radicand));
    }
    return sum;
}

}  // namespace

TEST_SUITE("scalar") {

TEST_CASE("rational arithmetic is exact") {
    const Scalar third = Scalar::fraction(1, 3);
    CHECK(third + third + third == Scalar(1));
    CHECK((Scalar::fraction(2, 4)).to_string() == "1/2");
    CHECK(Scalar(0).is_zero());
}

TEST_CASE("imaginary unit squares to minus one") {
    const Scalar i = Scalar::imaginary_unit();
    CHECK(i * i == Scalar(-1));
    CHECK(i.conj() == -i);
    CHECK(!i.is_real());
}

TEST_CASE("square roots multiply through their radicands") {
    const Scalar r2 = Scalar::root(2);
    const Scalar r3 = Scalar::root(3);
    CHECK(r2 * r2 == Scalar(2));
    CHECK(r2 * r3 == Scalar::root(6));
    CHECK(Scalar::root(6) * r3 == Scalar(3) * r2);
    CHECK_THROWS_AS(Scalar::root(8), std::invalid_argument);
}

TEST_CASE("inverse of a tower element") {
    const Scalar z = Scalar(1) + Scalar::root(2) + Scalar::root(3);
    const Scalar w = z.inverse();
    CHECK(z * w == Scalar(1));
    const Scalar complex = Scalar(1, 2) * Scalar::root(6) + Scalar(3);
    CHECK(complex * complex.inverse() == Scalar(1));
    CHECK_THROWS_AS(Scalar().inverse(), std::domain_error);
}

TEST_CASE("field axioms hold on random samples") {
    std::mt19937 rng(20261016);
    for (int trial = 0; trial < 60; ++trial) {
        const Scalar a = random_scalar(rng);
        const Scalar b = random_scalar(rng);
        const Scalar c = random_scalar(rng);
        CHECK((a + b) - b == a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!b.is_zero()) {
            CHECK((a * b) / b == a);
        }
    }
}

TEST_CASE("sign agrees with a floating-point oracle away from zero") {
    std::mt19937 rng(7);
    int decided = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Scalar z = random_scalar(rng);
        z = Scalar::from_terms([&] {
            auto terms = z.terms();
            for (auto& t : terms) {
                t.im = 0;
            }
            return terms;
        }());
        const double approx = approximate_real(z);
        if (std::abs(approx) > 1e-6) {
            CHECK(z.sign() == (approx > 0 ? 1 : -1));
            ++decided;
        }
    }
    CHECK(decided > 100);
}

TEST_CASE("sign separates nearly cancelling surds") {
    // 99/70 is a convergent of sqrt(2); the difference is about 7.2e-5.
    const Scalar z = Scalar::fraction(99, 70) - Scalar::root(2);
    CHECK(z.sign() == 1);
    CHECK((-z).sign() == -1);
    CHECK(is_positive(z));
    CHECK(!is_positive(Scalar::imaginary_unit()));
    CHECK(is_positive(Scalar(0)));
}

TEST_CASE("field square roots") {
    const Field plain;
    CHECK(plain.sqrt(mpq_class(4, 9)).value() == Scalar::fraction(2, 3));
    CHECK(!plain.sqrt(mpq_class(2)).has_value());
    const Field with_two({2});
    const auto root = with_two.sqrt(mpq_class(1, 2));
    REQUIRE(root.has_value());
    CHECK(*root * *root == Scalar::fraction(1, 2));
    CHECK(with_two.sqrt(mpq_class(8)).value() == Scalar(2) * Scalar::root(2));
    const Field tower({2, 3});
    CHECK(tower.contains_root(6));
    CHECK_THROWS_AS(Field({2, 8}), std::invalid_argument);
    CHECK_THROWS_AS(Field({2, 3, 6}), std::invalid_argument);
}

TEST_CASE("rational parsing rejects decimals") {
    CHECK(parse_rational("3/6") == mpq_class(1, 2));
    CHECK(parse_rational("-4") == mpq_class(-4));
    CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

}
