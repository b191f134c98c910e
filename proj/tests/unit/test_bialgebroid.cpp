#include <doctest.h>

#include "algebroid/tensor.hpp"
#include "fixtures.hpp"

using namespace algebroid;
using namespace fixtures;

namespace {

void require_clean(const Report& r) {
    for (const auto& e : r.entries()) {
        CHECK_MESSAGE(e.passed(), e.axiom << ": " << e.witness);
    }
}

/// Z/2 group algebra as the convolution algebra of Z/2 with a deliberately wrong comultiplication a -> a⊗1.
AlgebroidPtr fake_group_coproduct() {
    const AlgebroidPtr good = build_convolution_algebroid(group_groupoid(cyclic_group(2)));
    return edited(*good, [](AlgebroidData& d) {
        Matrix delta(4, 2);
        delta.at(0 * 2 + 0, 0) = Scalar(1);  // e -> e⊗e
        delta.at(1 * 2 + 0, 1) = Scalar(1);  // g -> g⊗e
        d.delta_b = delta;
        d.delta_c = delta;
        d.antipode.reset();
    });
}

}  // namespace

TEST_SUITE("bialgebroid") {

TEST_CASE("pair-groupoid functions form a regular multiplier Hopf *-algebroid") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    require_clean(verify_regular_mha(*m));
    require_clean(verify_star(*m));
}

TEST_CASE("pair-groupoid convolution algebra forms a regular multiplier Hopf *-algebroid") {
    const AlgebroidPtr m = build_convolution_algebroid(pair_groupoid(2));
    require_clean(verify_regular_mha(*m));
    require_clean(verify_star(*m));
}

TEST_CASE("swap crossed product of functions on two points by Z/2 passes") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const AlgebroidPtr m = build_crossed_product(points(2), z2, swap_action(z2));
    require_clean(verify_regular_mha(*m));
    require_clean(verify_star(*m));
}

TEST_CASE("left bialgebroid suite on the scalar tensor algebroid") {
    const AlgebraPtr f = points(1);
    const AlgebroidPtr m = build_tensor_algebroid(f, f, Matrix::identity(1), Matrix::identity(1));
    CHECK(m->dim() == 1);
    require_clean(verify_left_bialgebroid(*m));
    require_clean(verify_right_bialgebroid(*m));
}

TEST_CASE("all four canonical maps of pair-groupoid functions are bijective on 8-dim quotients") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    for (const CanonicalMap* c : {&m->t_lambda(), &m->t_rho(), &m->c_lambda(), &m->c_rho()}) {
        CHECK_MESSAGE(c->bijective(), c->name);
        CHECK(c->matrix.rows() == 8);
        CHECK(c->matrix.cols() == 8);
        CHECK(c->matrix * *c->inverse == Matrix::identity(8));
    }
}

TEST_CASE("T_rho of the Z/2 group algebra matches the brute-force 4x4 matrix") {
    const AlgebroidPtr m = build_convolution_algebroid(group_groupoid(cyclic_group(2)));
    // T_ρ(g⊗h) = Δ(g)(1⊗h) = g ⊗ gh; the quotients are trivial.
    Matrix expected(4, 4);
    for (std::size_t g = 0; g < 2; ++g) {
        for (std::size_t h = 0; h < 2; ++h) {
            expected.at(g * 2 + (g + h) % 2, g * 2 + h) = Scalar(1);
        }
    }
    CHECK(m->t_rho().matrix == expected);
    // Its inverse is (ι⊗S) applied after the same trick: g⊗k -> g⊗g⁻¹k.
    CHECK(*m->t_rho().inverse == expected);
}

TEST_CASE("zeroing the comultiplication of a unit makes T_lambda singular") {
    const AlgebroidPtr good = build_function_algebroid(pair_groupoid(2));
    const AlgebroidPtr broken = edited(*good, [](AlgebroidData& d) {
        for (std::size_t r = 0; r < d.delta_b.rows(); ++r) {
            d.delta_b.at(r, 0) = Scalar(0);
        }
    });
    CHECK(!broken->t_lambda().bijective());
    const Report r = verify_canonical_maps(*broken);
    CHECK(!r.passed("canonical-T_lambda-bijective"));
    CHECK(!r.find("canonical-T_lambda-bijective")->witness.empty());
}

TEST_CASE("swapping the legs of the comultiplication breaks the bimodule property") {
    const AlgebroidPtr good = build_function_algebroid(pair_groupoid(2));
    const AlgebroidPtr swapped = edited(*good, [](AlgebroidData& d) {
        const std::size_t n = d.total->dim();
        Matrix flipped(n * n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    flipped.at(j * n + i, a) = d.delta_b.at(i * n + j, a);
                }
            }
        }
        d.delta_b = flipped;
    });
    const Report r = verify_left_bialgebroid(*swapped);
    CHECK(!r.passed("left-delta-bimodule"));
    CHECK(r.find("left-delta-bimodule")->witness.find("lhs") != std::string::npos);
}

TEST_CASE("extended comultiplication and Takeuchi conditions are part of the suites") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    const Report left = verify_left_bialgebroid(*m);
    const Report right = verify_right_bialgebroid(*m);
    CHECK(left.passed("left-delta-extended"));
    CHECK(left.passed("left-delta-takeuchi"));
    CHECK(right.passed("right-delta-extended"));
    CHECK(right.passed("right-delta-takeuchi"));
    CHECK(verify_compatibility(*m).passed());
    CHECK(verify_regularity_subspaces(*m).passed());
}

TEST_CASE("derive_antipode recovers inversion on pair-groupoid functions") {
    const FiniteGroupoid g = pair_groupoid(2);
    const AlgebroidPtr m = build_function_algebroid(g);
    // S(f)(i,j) = f(j,i): arrow (i,j) at index 2i+j goes to 2j+i.
    const Matrix expected = permutation({0, 2, 1, 3});
    const Derivation s = derive_antipode(*m);
    REQUIRE(s.map.has_value());
    CHECK(*s.map == expected);
    CHECK(*s.map == *m->antipode());
}

TEST_CASE("derive_antipode recovers S(y⊗x) = S_B(x)⊗S_C(y) with a nontrivial S_B") {
    const AlgebraPtr f2 = points(2);
    const AlgebroidPtr m = build_tensor_algebroid(f2, f2, swap2(), Matrix::identity(2));
    // Basis y_i⊗x_j at 2i+j; S(y_i⊗x_j) = S_B(x_j)⊗S_C(y_i) = y_{1-j}⊗x_i.
    std::vector<std::size_t> image(4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            image[i * 2 + j] = (1 - j) * 2 + i;
        }
    }
    const Derivation s = derive_antipode(*m);
    REQUIRE(s.map.has_value());
    CHECK(*s.map == permutation(image));
    require_clean(verify_regular_mha(*m));
}

TEST_CASE("the identity-like comultiplication has no antipode") {
    const AlgebroidPtr fake = fake_group_coproduct();
    const Derivation s = derive_antipode(*fake);
    CHECK(!s.map.has_value());
    CHECK(!s.witness.empty());
}

TEST_CASE("derived counits agree with the displayed ones") {
    for (const AlgebroidPtr& m : {build_function_algebroid(pair_groupoid(2)), build_convolution_algebroid(pair_groupoid(2))}) {
        const Derivation l = derive_left_counit(*m);
        const Derivation r = derive_right_counit(*m);
        REQUIRE(l.map.has_value());
        REQUIRE(r.map.has_value());
        CHECK(*l.map == *m->counit_b());
        CHECK(*r.map == *m->counit_c());
    }
}

TEST_CASE("Galois-antipode diagram holds as a matrix identity") {
    const AlgebroidPtr m = build_convolution_algebroid(pair_groupoid(2));
    const Report r = verify_antipode(*m, *m->antipode());
    CHECK(r.passed("galois-antipode"));
    CHECK(r.passed("galois-inverse"));
    CHECK(r.passed("antipode-diagrams"));
}

TEST_CASE("a wrong antipode fails the antipode diagrams") {
    const AlgebroidPtr m = build_function_algebroid(pair_groupoid(2));
    const Report r = verify_antipode(*m, Matrix::identity(4));
    CHECK(!r.passed());
}

TEST_CASE("an involution violating S_B∘*∘S_C∘* = ι fails the base condition") {
    const AlgebraPtr f2 = points(2);
    const AlgebroidPtr m = build_tensor_algebroid(f2, f2, swap2(), Matrix::identity(2));
    const Report r = verify_star(*m);
    CHECK(!r.passed("involution-base-antipodes"));
}

TEST_CASE("construction rejects a non-unital total algebra") {
    AlgebroidData d = build_function_algebroid(point_groupoid())->data();
    d.total = shared(FiniteAlgebra(1, {Vector(1)}));
    CHECK_THROWS_AS(make_algebroid(d), MathematicalRejection);
}

}
