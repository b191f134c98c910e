#include <doctest.h>

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algebroid/structure.hpp"
#include "fixtures.hpp"

using namespace algebroid;
using namespace fixtures;

namespace {

Vector one_weight() { return Vector{Scalar(1)}; }

MeasuredAlgebroid p2_functions_measured(long a, long b) {
    const IntegralPair p = groupoid_function_integrals(pair_groupoid(2), weights(1, 1));
    return assemble_measured(p2_functions(), {weights(a, b), weights(a, b)}, p.left, p.right);
}

MeasuredAlgebroid z2_measured() {
    const IntegralPair p = convolution_integrals(group_groupoid(cyclic_group(2)), one_weight());
    return assemble_measured(z2_group_algebra(), {one_weight(), one_weight()}, p.left, p.right);
}

std::vector<std::pair<std::string, MeasuredAlgebroid>> measured_instances() {
    std::vector<std::pair<std::string, MeasuredAlgebroid>> out;
    out.emplace_back("pair groupoid functions (1,4)", p2_functions_measured(1, 4));
    out.emplace_back("pair groupoid functions (1,1)", p2_functions_measured(1, 1));
    {
        const IntegralPair p = convolution_integrals(pair_groupoid(2), weights(1, 1));
        out.emplace_back("pair groupoid convolution (1,1)",
                         assemble_measured(p2_convolution(), {weights(1, 1), weights(1, 1)}, p.left, p.right));
    }
    out.emplace_back("Z/2 group algebra", z2_measured());
    {
        const AlgebroidPtr m = build_function_algebroid(group_groupoid(cyclic_group(3)));
        const IntegralPair p = groupoid_function_integrals(group_groupoid(cyclic_group(3)), one_weight());
        out.emplace_back("Z/3 functions", assemble_measured(m, {one_weight(), one_weight()}, p.left, p.right));
    }
    {
        const AlgebroidPtr m = f2_tensor();
        const BaseWeight w{weights(1, 3), weights(1, 3)};
        const IntegralPair p = tensor_integrals(m->base_b(), m->base_c(), w.mu_b, w.mu_c);
        out.emplace_back("tensor F2 (1,3)", assemble_measured(m, w, p.left, p.right));
    }
    {
        const AlgebroidPtr m = f2_crossed();
        const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
        const IntegralPair p = crossed_integrals(m->base_c(), z2);
        out.emplace_back("crossed product", assemble_measured(m, {weights(1, 1), weights(1, 1)}, p.left, p.right));
    }
    {
        const AlgebroidPtr m = f2_two_sided();
        const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
        const IntegralPair p = two_sided_integrals(m->base_c(), z2, m->base_b(), weights(1, 1), weights(1, 1));
        out.emplace_back("two-sided", assemble_measured(m, {weights(1, 1), weights(1, 1)}, p.left, p.right));
    }
    return out;
}

Vector random_functional(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> dist(-3, 3);
    Vector v(n);
    for (Scalar& s : v) {
        s = Scalar(dist(rng));
    }
    return v;
}

Vector scalars(std::initializer_list<Scalar> values) { return Vector(values); }

/// c -> ω(c a) and c -> ω(a c).
Vector times_right(const FiniteAlgebra& a, const Vector& omega, const Vector& element) {
    Vector f(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) {
        f[k] = evaluate(omega, a.multiply(a.basis(k), element));
    }
    return f;
}

Vector times_left(const FiniteAlgebra& a, const Vector& omega, const Vector& element) {
    Vector f(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) {
        f[k] = evaluate(omega, a.multiply(element, a.basis(k)));
    }
    return f;
}

}  // namespace

TEST_SUITE("structure") {

TEST_CASE("convolution operators") {
    std::mt19937 rng(11);
    for (const auto& [name, x] : measured_instances()) {
        CAPTURE(name);
        const std::size_t n = x.m().dim();
        const Vector eps = check_base_weight(x.m(), x.weight).counit_functional;
        CHECK(convolution(x.m(), x.weight, eps, ConvolutionKind::lambda).matrix == Matrix::identity(n));
        CHECK(convolution(x.m(), x.weight, eps, ConvolutionKind::rho).matrix == Matrix::identity(n));
        for (int trial = 0; trial < 3; ++trial) {
            const Report r = convolution_identities(x.m(), x.weight, random_functional(rng, n), random_functional(rng, n));
            CHECK(clean(r));
            CHECK(r.find("convolution-counit") != nullptr);
        }
        CHECK(clean(convolution_identities(x.m(), x.weight, x.phi, x.psi)));
    }
}

TEST_CASE("a functional without factorization is rejected") {
    const MeasuredAlgebroid x = p2_functions_measured(1, 4);
    const BaseWeight degenerate{weights(1, 0), weights(1, 0)};
    CHECK_THROWS_AS(convolution(x.m(), degenerate, x.phi, ConvolutionKind::lambda), MathematicalRejection);
}

TEST_CASE("strong invariance through convolution operators") {
    for (const MeasuredAlgebroid& x : {z2_measured(), p2_functions_measured(1, 4)}) {
        const FiniteAlgebra& a = x.m().algebra();
        const Matrix& S = x.antipode;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            for (std::size_t j = 0; j < a.dim(); ++j) {
                const Vector ai = a.basis(i);
                const Vector bj = a.basis(j);
                // λ(a·ψ)(b) = S(λ(ψ·b)(a)) and ρ(φ·a)(b) = S(ρ(b·φ)(a)).
                const Matrix l1 = convolution(x.m(), x.weight, times_right(a, x.psi, ai), ConvolutionKind::lambda).matrix;
                const Matrix l2 = convolution(x.m(), x.weight, times_left(a, x.psi, bj), ConvolutionKind::lambda).matrix;
                CHECK(l1.column(j) == S.apply(l2.column(i)));
                const Matrix r1 = convolution(x.m(), x.weight, times_left(a, x.phi, ai), ConvolutionKind::rho).matrix;
                const Matrix r2 = convolution(x.m(), x.weight, times_right(a, x.phi, bj), ConvolutionKind::rho).matrix;
                CHECK(r1.column(j) == S.apply(r2.column(i)));
            }
        }
    }
}

TEST_CASE("modular automorphisms") {
    for (const auto& [name, x] : measured_instances()) {
        CAPTURE(name);
        const ModularAutomorphism phi = modular_automorphism(x, IntegralSide::left);
        const ModularAutomorphism psi = modular_automorphism(x, IntegralSide::right);
        CHECK(clean(phi.report));
        CHECK(clean(psi.report));
        CHECK(phi.preserves_base);
        CHECK(psi.preserves_base);
    }
    SUBCASE("commutative total algebra gives the identity") {
        const MeasuredAlgebroid x = p2_functions_measured(1, 4);
        CHECK(modular_automorphism(x, IntegralSide::left).sigma == Matrix::identity(4));
    }
    SUBCASE("tensor product: S² on C and S⁻² on B") {
        const auto all = measured_instances();
        const MeasuredAlgebroid& x = all[5].second;
        const Matrix S = x.antipode;
        const Matrix S_inv = *inverse(S);
        const Matrix sigma = modular_automorphism(x, IntegralSide::left).sigma;
        CHECK(sigma * x.m().embed_c() == S * S * x.m().embed_c());
        CHECK(sigma * x.m().embed_b() == S_inv * S_inv * x.m().embed_b());
        CHECK(modular_automorphism(x, IntegralSide::right).sigma == sigma);
    }
}

TEST_CASE("modular elements") {
    for (const auto& [name, x] : measured_instances()) {
        CAPTURE(name);
        const ModularElement d = modular_element(x);
        CHECK(clean(d.report));
        CHECK(d.report.find("modular-element-intertwining") != nullptr);
    }
    SUBCASE("pair groupoid functions with μ = (1,4)") {
        const ModularElement d = modular_element(p2_functions_measured(1, 4));
        const Vector expected = scalars({Scalar(1), Scalar(4), Scalar::fraction(1, 4), Scalar(1)});
        CHECK(d.plus == expected);
        CHECK(d.minus == expected);
        CHECK(d.report.passed("modular-element-star"));
        CHECK(d.report.passed("modular-element-grouplike"));
        CHECK(d.report.passed("modular-element-convolution"));
    }
    SUBCASE("convolution with a uniform weight and the crossed product are unimodular") {
        const auto all = measured_instances();
        for (std::size_t k : {2u, 3u, 6u}) {
            const ModularElement d = modular_element(all[k].second);
            CHECK(d.plus == all[k].second.m().algebra().one());
            CHECK(d.minus == all[k].second.m().algebra().one());
        }
    }
}

TEST_CASE("uniqueness of integrals") {
    SUBCASE("pair groupoid functions") {
        const MeasuredAlgebroid x = p2_functions_measured(1, 4);
        const UniquenessCheck u = uniqueness_check(x);
        CHECK(clean(u.report));
        CHECK(u.left_integrals.size() == 2);
        CHECK(u.right_integrals.size() == 2);
        CHECK(in_integral_family(x, x.phi, IntegralSide::left));
    }
    SUBCASE("Z/2 group algebra") {
        const UniquenessCheck u = uniqueness_check(z2_measured());
        CHECK(clean(u.report));
        CHECK(u.left_integrals.size() == 1);
    }
    SUBCASE("an integral for another base weight is out of family") {
        const MeasuredAlgebroid x = p2_functions_measured(1, 4);
        const BaseWeight other{weights(1, 2), weights(1, 2)};
        const Vector phi_other = pull_back(other.mu_c, x.phi_c);
        CHECK(is_total_integral(x.m(), other, phi_other, IntegralSide::left));
        CHECK_FALSE(in_integral_family(x, phi_other, IntegralSide::left));
    }
    for (const auto& [name, x] : measured_instances()) {
        CAPTURE(name);
        CHECK(clean(uniqueness_check(x).report));
    }
}

TEST_CASE("local projectivity") {
    CHECK(clean(check_local_projectivity(*p2_functions())));
    CHECK(clean(check_local_projectivity(*z2_group_algebra())));
    for (Action tag : {Action::bsA, Action::bAs, Action::csA, Action::cAs}) {
        CHECK(local_projectivity(p2_functions()->action(tag)).projective);
    }
    SUBCASE("dual numbers acting on their residue field") {
        // x² = 0; the module F on which x acts by zero has no dual basis.
        const Vector one = scalars({Scalar(1), Scalar(0)});
        const Vector x = scalars({Scalar(0), Scalar(1)});
        const Vector zero = scalars({Scalar(0), Scalar(0)});
        const AlgebraPtr dual = shared(FiniteAlgebra(2, {one, x, x, zero}, {"1", "x"}));
        const FiniteAlgebra field(1, {Vector{Scalar(1)}}, {"1"});
        const Matrix images = Matrix::from_rows(2, std::vector<Vector>{scalars({Scalar(1), Scalar(0)})});
        const ModuleStructure module(field, dual, "D", images, false, Multiplication::left, "residue");
        CHECK_FALSE(module.faithful());
        const ProjectivityCheck c = local_projectivity(module);
        CHECK_FALSE(c.projective);
        CHECK(c.witness.find("residue") != std::string::npos);
    }
}

TEST_CASE("faithfulness of integrals") {
    for (const auto& [name, x] : measured_instances()) {
        CAPTURE(name);
        CHECK(clean(faithfulness_check(x)));
    }
    SUBCASE("the zero functional lies outside the hypotheses") {
        const MeasuredAlgebroid x = p2_functions_measured(1, 4);
        const FaithfulnessCheck c = faithfulness_check(x.m(), x.weight, Vector(4), IntegralSide::left);
        CHECK(c.integral);
        CHECK_FALSE(c.full);
        CHECK_FALSE(c.faithful);
        CHECK(clean(c.report));
    }
    SUBCASE("a non-full integral escapes the theorem") {
        const AlgebroidPtr m = f2_tensor();
        const BaseWeight w{weights(1, 3), weights(1, 3)};
        const IntegralPair p = tensor_integrals(m->base_b(), m->base_c(), weights(1, 0), weights(1, 3));
        const FaithfulnessCheck c = faithfulness_check(*m, w, pull_back(w.mu_c, p.left), IntegralSide::left);
        CHECK(c.integral);
        CHECK_FALSE(c.full);
        CHECK_FALSE(c.hypotheses());
        CHECK_FALSE(c.faithful);
        CHECK(c.report.entries().front().detail.find("outside the hypotheses") != std::string::npos);
        CHECK(clean(c.report));
    }
}

TEST_CASE("dual algebra") {
    for (const auto& [name, x] : measured_instances()) {
        CAPTURE(name);
        const DualAlgebra d = dual_algebra(x);
        CHECK(clean(d.report));
        CHECK(d.algebra.dim() == x.m().dim());
    }
    SUBCASE("Z/2: pointwise product of functions") {
        const DualAlgebra d = dual_algebra(z2_measured());
        CHECK(d.algebra.product(0, 0) == scalars({Scalar(1), Scalar(0)}));
        CHECK(d.algebra.product(0, 1) == scalars({Scalar(0), Scalar(0)}));
        CHECK(d.algebra.product(1, 0) == scalars({Scalar(0), Scalar(0)}));
        CHECK(d.algebra.product(1, 1) == scalars({Scalar(0), Scalar(1)}));
    }
    SUBCASE("pair groupoid functions: matrix units") {
        const MeasuredAlgebroid x = p2_functions_measured(1, 4);
        const DualAlgebra d = dual_algebra(x);
        const FiniteAlgebra conv = p2_convolution()->algebra();
        // The basis e_γ·φ multiplies like the arrows of the pair groupoid.
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                CHECK(d.algebra.product(i, j) == conv.product(i, j));
            }
        }
    }
}

TEST_CASE("Haar rescaling") {
    SUBCASE("pair groupoid functions with a uniform weight") {
        const MeasuredAlgebroid x = p2_functions_measured(1, 1);
        const HaarAnalysis h = haar_analysis(x);
        CHECK(clean(h.report));
        REQUIRE(h.h.has_value());
        CHECK(*h.z == weights(2, 2));
        CHECK(pull_back(*h.h, x.antipode) == *h.h);
        CHECK(haar_conditions(x.m(), x.weight, *h.h).haar());
    }
    SUBCASE("Z/2: normalized Haar functional") {
        const HaarAnalysis h = haar_analysis(z2_measured());
        CHECK(clean(h.report));
        REQUIRE(h.h.has_value());
        CHECK(*h.h == weights(1, 0));
    }
    for (const auto& [name, x] : measured_instances()) {
        CAPTURE(name);
        CHECK(clean(haar_analysis(x).report));
    }
    SUBCASE("a functional that is not an integral fails both conditions") {
        const MeasuredAlgebroid x = p2_functions_measured(1, 1);
        const HaarConditions c = haar_conditions(x.m(), x.weight, scalars({Scalar(1), Scalar(0), Scalar(0), Scalar(0)}));
        CHECK_FALSE(c.haar());
        CHECK(clean(c.report));
    }
}

}  // TEST_SUITE
