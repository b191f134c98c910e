#include <doctest.h>

#include "algebroid/algebra.hpp"

using namespace algebroid;

namespace {

FiniteAlgebra group_algebra_z2() {
    // e = e0, g = e1, g^2 = e.
    std::vector<Vector> products = {unit_vector(2, 0), unit_vector(2, 1), unit_vector(2, 1), unit_vector(2, 0)};
    return FiniteAlgebra(2, products, {"e", "g"});
}

Matrix permutation(const std::vector<std::size_t>& image) {
    return Matrix::from_function(image.size(), image.size(),
                                 [&](std::size_t j) { return unit_vector(image.size(), image[j]); });
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("pointwise functions on four arrows pass every algebra check") {
    const FiniteAlgebra a = function_algebra(4);
    const Report r = check_algebra(a);
    CHECK(r.passed());
    REQUIRE(a.unit().has_value());
    CHECK(*a.unit() == Vector(4, Scalar(1)));
}

TEST_CASE("zero product fails non-degeneracy and has no unit") {
    const FiniteAlgebra a(1, {Vector(1)});
    const Report r = check_algebra(a);
    CHECK(!r.passed("non-degeneracy"));
    CHECK(!find_unit(a).has_value());
    CHECK_THROWS_AS(multiplier_algebra(a), MathematicalRejection);
}

TEST_CASE("group algebra of Z/2") {
    const FiniteAlgebra a = group_algebra_z2();
    CHECK(check_algebra(a).passed());
    CHECK(*a.unit() == unit_vector(2, 0));
    const MultiplierAlgebra m = multiplier_algebra(a);
    CHECK(m.algebra.dim() == 2);
    CHECK(m.canonical_is_isomorphism);
}

TEST_CASE("multiplier algebra of F + F is two-dimensional and canonical") {
    const FiniteAlgebra a = function_algebra(2);
    const MultiplierAlgebra m = multiplier_algebra(a);
    CHECK(m.algebra.dim() == 2);
    CHECK(m.canonical_is_isomorphism);
    CHECK(check_algebra(m.algebra).passed());
    for (const auto& x : m.basis) {
        CHECK(is_multiplier(a, x));
    }
    // The canonical map is multiplicative into M(A).
    CHECK(!homomorphism_witness(a, m.algebra, m.canonical_map).has_value());
}

TEST_CASE("automorphisms of functions on two points") {
    const FiniteAlgebra a = function_algebra(2);
    CHECK(automorphism_check(a, Matrix::identity(2)));
    CHECK(automorphism_check(a, permutation({1, 0})));
    // e0 -> e0 + e1, e1 -> e1 is bijective, but e0 e1 = 0 while f(e0) f(e1) = e1.
    Matrix shear = Matrix::identity(2);
    shear.at(1, 0) = Scalar(1);
    CHECK(!automorphism_check(a, shear));
    CHECK(automorphism_witness(a, shear).value() == "(e0, e1)");
    CHECK(!automorphism_check(a, Matrix(2, 2)));
}

TEST_CASE("involution axioms are checked") {
    const FiniteAlgebra a = group_algebra_z2().with_involution(Matrix::identity(2));
    CHECK(check_algebra(a).passed("involution"));
    Matrix bad = Matrix::identity(2);
    bad.at(0, 0) = Scalar(2);
    CHECK(!check_algebra(group_algebra_z2().with_involution(bad)).passed("involution"));
}

TEST_CASE("module structures over functions on two points") {
    // A = F^4 viewed over B = F^2 through x -> (x0, x1, x0, x1).
    const FiniteAlgebra a = function_algebra(4);
    const auto b = std::make_shared<const FiniteAlgebra>(function_algebra(2));
    Matrix images(4, 2);
    images.at(0, 0) = images.at(2, 0) = Scalar(1);
    images.at(1, 1) = images.at(3, 1) = Scalar(1);
    const ModuleStructure m(a, b, "B", images, false, Multiplication::left, "bsA");
    CHECK(m.side() == ModuleSide::left);
    CHECK(m.check("bsA").passed());
    CHECK(module_maps(m).size() == 4);
    const ModuleStructure anti(a, b, "B", images, true, Multiplication::left, "btA");
    CHECK(anti.side() == ModuleSide::right);
}

TEST_CASE("tensor algebra dimensions and unit") {
    const FiniteAlgebra t = tensor_algebra(group_algebra_z2(), function_algebra(2));
    CHECK(t.dim() == 4);
    CHECK(check_algebra(t).passed());
    CHECK(*t.unit() == Vector{Scalar(1), Scalar(1), Scalar(0), Scalar(0)});
}

TEST_CASE("opposite algebra reverses products") {
    std::vector<Vector> products(4 * 4, Vector(4));
    // 2x2 matrix units E_ij at index 2i+j.
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t l = 0; l < 2; ++l) {
                products[(2 * i + j) * 4 + (2 * j + l)][2 * i + l] = Scalar(1);
            }
        }
    }
    const FiniteAlgebra m2(4, products);
    const FiniteAlgebra op = m2.opposite();
    CHECK(op.product(1, 2) == m2.product(2, 1));
    CHECK(check_algebra(op).passed());
}

}
