#include <doctest.h>

#include "algebroid/tensor.hpp"
#include "fixtures.hpp"

using namespace algebroid;
using namespace fixtures;

namespace {

std::size_t composable_pairs(const FiniteGroupoid& g) {
    std::size_t count = 0;
    for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = 0; b < g.size(); ++b) {
            count += g.source(a) == g.target(b) ? 1 : 0;
        }
    }
    return count;
}

std::size_t composable_triples(const FiniteGroupoid& g) {
    std::size_t count = 0;
    for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = 0; b < g.size(); ++b) {
            for (std::size_t c = 0; c < g.size(); ++c) {
                count += (g.source(a) == g.target(b) && g.source(b) == g.target(c)) ? 1 : 0;
            }
        }
    }
    return count;
}

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("tensor coordinates follow the row-major convention") {
    const Vector a = {Scalar(1), Scalar(2)};
    const Vector b = {Scalar(3), Scalar(0), Scalar(5)};
    const Vector t = tensor(a, b);
    REQUIRE(t.size() == 6);
    CHECK(t[0] == Scalar(3));
    CHECK(t[2] == Scalar(5));
    CHECK(t[3] == Scalar(6));
    CHECK(t[5] == Scalar(10));
}

TEST_CASE("left comultiplication tensor of pair-groupoid functions is functions on composable pairs") {
    const FiniteGroupoid g = pair_groupoid(2);
    const AlgebroidPtr m = build_function_algebroid(g);
    CHECK(m->q_b().flavor() == "bsA⊗btA");
    CHECK(m->q_c().flavor() == "cAt⊗cAs");
    CHECK(m->q_b().dim() == composable_pairs(g));
    CHECK(m->q_b().dim() == 8);
    CHECK(m->q_c().dim() == 8);
    CHECK(m->left_triple().dim() == composable_triples(g));
}

TEST_CASE("a one-dimensional base gives the full tensor square") {
    const AlgebroidPtr m = build_convolution_algebroid(group_groupoid(cyclic_group(2)));
    CHECK(m->q_b().dim() == 4);
    CHECK(m->t_rho_domain().dim() == 4);
    const AlgebroidPtr point = build_function_algebroid(point_groupoid());
    CHECK(point->q_b().dim() == 1);
}

TEST_CASE("multiplication certificates hold for every flavor of a function algebroid") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    for (const BalancedTensor* t : {&m->q_b(), &m->q_c(), &m->t_lambda_domain(), &m->t_rho_domain(),
                                    &m->c_lambda_domain(), &m->c_rho_domain()}) {
        CHECK_MESSAGE(t->multiplication_certificate(m->algebra()).passed(), t->flavor());
    }
}

TEST_CASE("legs acting from the same side are rejected") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    CHECK_THROWS_AS(BalancedTensor(m->algebra(), m->action(Action::bsA), m->action(Action::csA)),
                    std::invalid_argument);
}

TEST_CASE("flip followed by flip back is the identity") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    const BalancedTensor back = m->q_b().flipped(m->algebra());
    const Matrix there = flip(m->q_b(), back);
    const Matrix again = flip(back, m->q_b());
    CHECK(again * there == Matrix::identity(m->q_b().dim()));
}

TEST_CASE("counit slices are well defined and unbalanced functionals are rejected") {
    const FiniteGroupoid g = pair_groupoid(2);
    const AlgebroidPtr m = build_function_algebroid(g);
    const Matrix eps = *m->counit_b();
    CHECK(try_slice_left(m->q_b(), eps).well_defined());
    CHECK(try_slice_right(m->q_b(), eps).well_defined());
    // Every arrow sent to the first unit: not a map of modules.
    Matrix bad(2, 4);
    for (std::size_t a = 0; a < 4; ++a) {
        bad.at(0, a) = Scalar(1);
    }
    CHECK(!try_slice_left(m->q_b(), bad).well_defined());
    CHECK_THROWS_AS(slice_left(m->q_b(), bad), MathematicalRejection);
}

TEST_CASE("slicing the comultiplication with the counit returns the product") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    const FiniteAlgebra& a = m->algebra();
    const Matrix slice = slice_left(m->q_b(), *m->counit_b());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Vector x = m->product2(m->delta_b(a.basis(i)), tensor(a.one(), a.basis(j)));
            CHECK(slice.apply(m->q_b().project(x)) == a.product(i, j));
        }
    }
}

}
