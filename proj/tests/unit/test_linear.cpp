#include <doctest.h>

#include <random>

#include "algebroid/linear.hpp"

using namespace algebroid;

namespace {

Matrix make(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t cols = rows.begin()->size();
    Matrix m(rows.size(), cols);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const long v : row) {
            m.at(i, j++) = Scalar(v);
        }
        ++i;
    }
    return m;
}

Vector vec(std::initializer_list<long> values) {
    Vector v;
    for (const long x : values) {
        v.emplace_back(x);
    }
    return v;
}

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int density) {
    std::uniform_int_distribution<long> value(-3, 3);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (static_cast<int>(rng() % 10) < density) {
                m.at(i, j) = Scalar(value(rng));
            }
        }
    }
    return m;
}

}  // namespace

TEST_SUITE("linear") {

TEST_CASE("solve_linear on the identity returns the target") {
    const Vector t = vec({5, -2, 7});
    CHECK(solve_linear(Matrix::identity(3), t).value() == t);
}

TEST_CASE("solve_linear on the zero map has no solution for a nonzero target") {
    CHECK(!solve_linear(Matrix(2, 2), vec({1, 0})).has_value());
}

TEST_CASE("solve_linear matches hand back-substitution") {
    // Upper triangular system: x2 = 4/2, x1 = 3 - x2.
    const Scalar x2 = Scalar(4) / Scalar(2);
    const Scalar x1 = Scalar(3) - x2;
    CHECK(solve_linear(make({{1, 1}, {0, 2}}), vec({3, 4})).value() == Vector{x1, x2});
}

TEST_CASE("solve_linear rejects dimension mismatch") {
    CHECK_THROWS_AS(solve_linear(Matrix::identity(2), vec({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("kernel of identity and zero map") {
    CHECK(kernel(Matrix::identity(3)).empty());
    CHECK(kernel(Matrix(2, 2)).size() == 2);
}

TEST_CASE("kernel of a rank-one map") {
    const Matrix m = make({{1, 2}, {2, 4}});
    const auto basis = kernel(m);
    REQUIRE(basis.size() == 1);
    CHECK(is_zero(m.apply(basis[0])));
    // The kernel is one-dimensional, so the basis vector is proportional to (2,-1).
    CHECK(basis[0][0] * Scalar(-1) == basis[0][1] * Scalar(2));
    CHECK(rank(m) == 1);
}

TEST_CASE("inverse of an invertible matrix") {
    const Matrix m = make({{2, 1}, {1, 1}});
    const auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(m * *inv == Matrix::identity(2));
    CHECK(!inverse(make({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("quotient by a single relation") {
    const std::vector<Vector> relations = {vec({1, -1})};
    const QuotientSpace q = quotient_by(2, relations);
    CHECK(q.dim() == 1);
    CHECK(is_zero(q.project(vec({1, -1}))));
    CHECK(q.project(vec({1, 0})) == q.project(vec({0, 1})));
}

TEST_CASE("quotient by nothing is the identity") {
    const QuotientSpace q = quotient_by(3, std::vector<Vector>{});
    CHECK(q.dim() == 3);
    CHECK(q.projection_matrix() == Matrix::identity(3));
}

TEST_CASE("quotient by a two-dimensional span given redundantly") {
    const std::vector<Vector> relations = {vec({1, 1, 0, 0}), vec({0, 0, 1, 1}), vec({1, 1, 1, 1})};
    const QuotientSpace q = quotient_by(4, relations);
    CHECK(q.dim() == 2);
    CHECK(q.projection_matrix() * q.section_matrix() == Matrix::identity(2));
}

TEST_CASE("solve_linear property on random maps") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Matrix f = random_matrix(rng, 4 + trial % 3, 5, 5);
        Vector v(5);
        for (auto& x : v) {
            x = Scalar(static_cast<long>(rng() % 7) - 3);
        }
        const Vector target = f.apply(v);
        const auto x = solve_linear(f, target);
        REQUIRE(x.has_value());
        CHECK(f.apply(*x) == target);
        for (const auto& k : kernel(f)) {
            CHECK(is_zero(f.apply(k)));
        }
        CHECK(kernel(f).size() + rank(f) == 5);
    }
}

TEST_CASE("quotient invariants on random relation sets") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix rel = random_matrix(rng, 3, 6, 4);
        std::vector<Vector> relations;
        for (std::size_t i = 0; i < rel.rows(); ++i) {
            relations.push_back(rel.row(i));
        }
        const QuotientSpace q = quotient_by(6, relations);
        CHECK(q.dim() == 6 - rank(rel));
        CHECK(q.projection_matrix() * q.section_matrix() == Matrix::identity(q.dim()));
        for (const auto& r : relations) {
            CHECK(is_zero(q.project(r)));
        }
        // The kernel of the projection is exactly the relation span.
        for (const auto& k : kernel(q.projection_matrix())) {
            CHECK(q.in_relations(k));
        }
    }
}

TEST_CASE("induced maps detect failure of descent") {
    const std::vector<Vector> relations = {vec({1, -1, 0})};
    const QuotientSpace q = quotient_by(3, relations);
    const auto swap01 = [](std::size_t j) {
        const std::size_t k = j == 0 ? 1 : (j == 1 ? 0 : 2);
        return unit_vector(3, k);
    };
    const InducedMap good = induced_map(q, q, swap01);
    CHECK(good.well_defined());
    CHECK(good.matrix == Matrix::identity(2));
    const auto swap12 = [](std::size_t j) {
        const std::size_t k = j == 1 ? 2 : (j == 2 ? 1 : 0);
        return unit_vector(3, k);
    };
    const InducedMap bad = induced_map(q, q, swap12);
    CHECK(!bad.well_defined());
}

TEST_CASE("kronecker product composes legwise") {
    const Matrix a = make({{1, 2}, {0, 1}});
    const Matrix b = make({{0, 1}, {1, 0}});
    CHECK(kronecker(a, b) * kronecker(b, a) == kronecker(a * b, b * a));
}

}
