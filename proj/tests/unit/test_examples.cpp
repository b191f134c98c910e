#include <doctest.h>

#include "algebroid/tensor.hpp"
#include "fixtures.hpp"

using namespace algebroid;
using namespace fixtures;

namespace {

bool same_structure_constants(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (a.dim() != b.dim()) {
        return false;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (a.product(i, j) != b.product(i, j)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("examples") {

TEST_CASE("pair groupoid on two points") {
    const FiniteGroupoid g = pair_groupoid(2);
    CHECK(g.size() == 4);
    CHECK(g.unit_count() == 2);
    CHECK(g.arrows() == std::vector<std::string>{"(1,1)", "(1,2)", "(2,1)", "(2,2)"});
    // (1,2)(2,1) = (1,1); (2,1)(2,1) is not composable.
    CHECK(g.compose(1, 2) == std::optional<std::size_t>(0));
    CHECK(!g.compose(2, 2).has_value());
    CHECK(g.target(1) == 0);
    CHECK(g.source(1) == 3);
    CHECK(g.inverse(1) == 2);
}

TEST_CASE("groupoid validation rejects a broken composition table") {
    const FiniteGroupoid g = pair_groupoid(2);
    std::vector<std::optional<std::size_t>> composition;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            composition.push_back(g.compose(a, b));
        }
    }
    composition[1 * 4 + 2] = 3;  // (1,2)(2,1) = (2,2) is wrong
    CHECK_THROWS_AS(FiniteGroupoid(g.arrows(), g.units(), {0, 3, 0, 3}, {0, 0, 3, 3}, composition, {0, 2, 1, 3}),
                    MathematicalRejection);
    CHECK_THROWS_AS(FiniteGroupoid(g.arrows(), {0, 9}, {0, 3, 0, 3}, {0, 0, 3, 3}, composition, {0, 2, 1, 3}),
                    SchemaError);
}

TEST_CASE("disjoint union of two copies of Z/2 has two units") {
    const FiniteGroupoid z = group_groupoid(cyclic_group(2));
    const FiniteGroupoid u = disjoint_union(z, z);
    CHECK(u.size() == 4);
    CHECK(u.unit_count() == 2);
    CHECK(!u.compose(0, 2).has_value());
    CHECK(clean(verify_regular_mha(*build_function_algebroid(u))));
}

TEST_CASE("group Hopf algebras carry their integrals and trivial modular data") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    CHECK(clean(check_hopf(z2)));
    // φ(a_e e + a_g g) = a_e
    CHECK(z2.left_integral == Vector{Scalar(1), Scalar(0)});
    CHECK(z2.right_integral == z2.left_integral);
    CHECK(z2.modular_element == z2.algebra->one());
    CHECK(z2.modular_automorphism == Matrix::identity(2));

    const FiniteHopf f2 = function_algebra_hopf(cyclic_group(2));
    CHECK(clean(check_hopf(f2)));
    CHECK(f2.left_integral == Vector{Scalar(1), Scalar(1)});

    const FiniteHopf z3 = group_algebra_hopf(cyclic_group(3));
    CHECK(clean(check_hopf(z3)));
    const FiniteHopf s3 = function_algebra_hopf(symmetric_group_3());
    CHECK(clean(check_hopf(s3)));
}

TEST_CASE("function algebroid of a point is the scalars") {
    const AlgebroidPtr m = build_function_algebroid(point_groupoid());
    CHECK(m->dim() == 1);
    CHECK(clean(verify_regular_mha(*m)));
}

TEST_CASE("function algebroid of Z/2 recovers the function Hopf algebra") {
    const AlgebroidPtr m = build_function_algebroid(group_groupoid(cyclic_group(2)));
    const FiniteHopf h = function_algebra_hopf(cyclic_group(2));
    CHECK(m->delta_b_matrix() == h.delta);
    CHECK(*m->antipode() == h.antipode);
    CHECK(same_structure_constants(m->algebra(), *h.algebra));
    CHECK(clean(verify_regular_mha(*m)));
}

TEST_CASE("convolution algebroid of Z/2 is the group algebra") {
    const AlgebroidPtr m = build_convolution_algebroid(group_groupoid(cyclic_group(2)));
    const FiniteHopf h = group_algebra_hopf(cyclic_group(2));
    CHECK(same_structure_constants(m->algebra(), *h.algebra));
    CHECK(m->delta_b_matrix() == h.delta);
    CHECK(clean(verify_regular_mha(*m)));
}

TEST_CASE("convolution algebroid of two bare units is diagonal") {
    const AlgebroidPtr m = build_convolution_algebroid(disjoint_union(point_groupoid(), point_groupoid()));
    CHECK(same_structure_constants(m->algebra(), function_algebra(2)));
    CHECK(m->delta_b(unit_vector(2, 1)) == unit_vector(4, 3));
    CHECK(clean(verify_regular_mha(*m)));
}

TEST_CASE("pair-groupoid convolution algebra is the 2x2 matrices") {
    const AlgebroidPtr m = build_convolution_algebroid(pair_groupoid(2));
    // e_(i,j) e_(k,l) = [j = k] e_(i,l)
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    const Vector expected = j == k ? unit_vector(4, i * 2 + l) : zero_vector(4);
                    CHECK(m->algebra().product(i * 2 + j, k * 2 + l) == expected);
                }
            }
        }
    }
}

TEST_CASE("tensor algebroids over F and over F^2") {
    const AlgebraPtr f = points(1);
    const AlgebroidPtr scalar = build_tensor_algebroid(f, f, Matrix::identity(1), Matrix::identity(1));
    CHECK(scalar->dim() == 1);
    const AlgebraPtr f2 = points(2);
    const AlgebroidPtr m = build_tensor_algebroid(f2, f2, Matrix::identity(2), Matrix::identity(2));
    CHECK(m->dim() == 4);
    CHECK(clean(verify_regular_mha(*m)));
    CHECK(clean(verify_star(*m)));
}

TEST_CASE("tensor algebroid counits follow ε_B(y⊗x) = x S_B⁻¹(y)") {
    const AlgebraPtr f2 = points(2);
    const AlgebroidPtr m = build_tensor_algebroid(f2, f2, swap2(), Matrix::identity(2));
    // y_i⊗x_j -> x_j S_B⁻¹(y_i) = δ_j δ_{1-i}
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Vector expected = j == 1 - i ? unit_vector(2, j) : zero_vector(2);
            CHECK(m->counit_b()->column(i * 2 + j) == expected);
        }
    }
}

TEST_CASE("swap crossed product is isomorphic to the pair-groupoid convolution algebroid") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const AlgebroidPtr cross = build_crossed_product(points(2), z2, swap_action(z2));
    const AlgebroidPtr conv = build_convolution_algebroid(pair_groupoid(2));
    // δ_1 e -> (1,1), δ_1 g -> (1,2), δ_2 e -> (2,2), δ_2 g -> (2,1)
    const Matrix phi = permutation({0, 1, 3, 2});
    const FiniteAlgebra& a = cross->algebra();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(phi.apply(a.product(i, j)) == conv->algebra().multiply(phi.column(i), phi.column(j)));
        }
        const Vector lhs = kronecker(phi, phi).apply(cross->delta_b(a.basis(i)));
        CHECK(conv->q_b().equal(lhs, conv->delta_b(phi.column(i))));
    }
    CHECK(clean(verify_regular_mha(*cross)));
}

TEST_CASE("trivial action reduces the crossed product to a tensor product") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const AlgebraPtr c = points(2);
    const AlgebroidPtr m = build_crossed_product(c, z2, {Matrix::identity(2), Matrix::identity(2)});
    CHECK(same_structure_constants(m->algebra(), tensor_algebra(*c, *z2.algebra)));
    CHECK(clean(verify_regular_mha(*m)));
}

TEST_CASE("a grading by a non-central element is not symmetric") {
    const FiniteGroup s3 = symmetric_group_3();
    CHECK(!s3.is_central(1));
    const FiniteHopf h = function_algebra_hopf(s3);
    const GradedAlgebra c = graded_subgroup_algebra(s3, {0, 1});
    CHECK(check_left_action(*c.algebra, h, c.action).passed());
    CHECK(symmetry_witness(h, c.action).has_value());
    try {
        build_crossed_product(c.algebra, h, c.action);
        FAIL("expected rejection");
    } catch (const MathematicalRejection& e) {
        CHECK(e.equation() == "ch-symmetric");
    }
}

TEST_CASE("a grading by the trivial subgroup is symmetric") {
    const FiniteGroup s3 = symmetric_group_3();
    const FiniteHopf h = function_algebra_hopf(s3);
    const GradedAlgebra c = graded_subgroup_algebra(s3, {0});
    CHECK(!symmetry_witness(h, c.action).has_value());
}

TEST_CASE("two-sided crossed product of F^2 by Z/2 is an 8-dim regular algebroid") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const AlgebraPtr f2 = points(2);
    const AlgebroidPtr m =
        build_two_sided(f2, z2, f2, HopfAction{swap_action(z2), swap_action(z2)}, Matrix::identity(2), Matrix::identity(2));
    CHECK(m->dim() == 8);
    CHECK(clean(verify_regular_mha(*m)));
}

TEST_CASE("two-sided crossed product by the trivial Hopf algebra is the tensor algebroid") {
    const FiniteHopf one = group_algebra_hopf(cyclic_group(1));
    const AlgebraPtr f2 = points(2);
    const HopfAction trivial{{Matrix::identity(2)}, {Matrix::identity(2)}};
    const AlgebroidPtr m = build_two_sided(f2, one, f2, trivial, swap2(), Matrix::identity(2));
    const AlgebroidPtr t = build_tensor_algebroid(f2, f2, swap2(), Matrix::identity(2));
    CHECK(same_structure_constants(m->algebra(), t->algebra()));
    CHECK(m->delta_b_matrix() == t->delta_b_matrix());
    CHECK(*m->counit_b() == *t->counit_b());
    CHECK(*m->counit_c() == *t->counit_c());
    CHECK(*m->antipode() == *t->antipode());
}

TEST_CASE("two-sided counits agree with the counit solvers") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const AlgebraPtr f2 = points(2);
    const AlgebroidPtr m =
        build_two_sided(f2, z2, f2, HopfAction{swap_action(z2), swap_action(z2)}, Matrix::identity(2), Matrix::identity(2));
    CHECK(derive_left_counit(*m).map == m->counit_b());
    CHECK(derive_right_counit(*m).map == m->counit_c());
}

TEST_CASE("broken antipode compatibility of the two actions is rejected") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const AlgebraPtr f2 = points(2);
    const HopfAction mismatched{swap_action(z2), {Matrix::identity(2), Matrix::identity(2)}};
    try {
        build_two_sided(f2, z2, f2, mismatched, Matrix::identity(2), Matrix::identity(2));
        FAIL("expected rejection");
    } catch (const MathematicalRejection& e) {
        CHECK(e.equation() == "chb-action-antipode");
    }
}

TEST_CASE("standard integrals of pair-groupoid functions count fibers") {
    const FiniteGroupoid g = pair_groupoid(2);
    const IntegralPair p = groupoid_function_integrals(g, Vector{Scalar(1), Scalar(1)});
    // φ_C(e_γ) = δ_{t(γ)}, ψ_B(e_γ) = δ_{s(γ)}
    for (std::size_t a = 0; a < 4; ++a) {
        CHECK(p.left.column(a) == unit_vector(2, a / 2));
        CHECK(p.right.column(a) == unit_vector(2, a % 2));
    }
}

TEST_CASE("standard integrals of the convolution algebroid restrict to the units") {
    const IntegralPair p = convolution_integrals(pair_groupoid(2), Vector{Scalar(1), Scalar(1)});
    CHECK(p.left.column(0) == unit_vector(2, 0));
    CHECK(is_zero(p.left.column(1)));
    CHECK(p.left.column(3) == unit_vector(2, 1));
}

TEST_CASE("standard integrals of the crossed product use the Haar functional of Z/2") {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const IntegralPair p = crossed_integrals(*points(2), z2);
    // y e -> y, y g -> 0
    CHECK(p.left.column(0) == unit_vector(2, 0));
    CHECK(is_zero(p.left.column(1)));
    CHECK(p.left.column(2) == unit_vector(2, 1));
}

}
