#include <doctest.h>

#include <string>
#include <vector>

#include "algebroid/modification.hpp"
#include "algebroid/structure.hpp"
#include "fixtures.hpp"

using namespace algebroid;
using namespace fixtures;

namespace {

Matrix sandwich(const FiniteAlgebra& a, const Vector& p, const Vector& q) {
    return Matrix::from_function(a.dim(), a.dim(), [&](std::size_t k) { return a.multiply(a.multiply(p, a.basis(k)), q); });
}

FiniteHopf z2_hopf() { return group_algebra_hopf(cyclic_group(2)); }

bool same_structure(const Algebroid& x, const Algebroid& y) {
    return x.delta_b_matrix() == y.delta_b_matrix() && x.delta_c_matrix() == y.delta_c_matrix() && x.s_b() == y.s_b() &&
           x.s_c() == y.s_c() && x.counit_b() == y.counit_b() && x.counit_c() == y.counit_c() &&
           antipode_of(x) == antipode_of(y);
}

bool entry_passed(const Report& r, const std::string& axiom) {
    const ReportEntry* e = r.find(axiom);
    return e != nullptr && e->passed();
}

/// M_2 as the convolution algebra of the pair groupoid, arrows (1,1), (1,2), (2,1), (2,2).
AlgebraPtr m2() { return shared(p2_convolution()->algebra()); }

}  // namespace

TEST_SUITE("modification") {

TEST_CASE("the identity modifier returns the same algebroid") {
    for (const AlgebroidPtr& m : {p2_convolution(), p2_functions(), f2_crossed(), f2_two_sided(), f2_tensor()}) {
        CAPTURE(m->name());
        const Modification mod = modify(m, identity_modifier(*m));
        CHECK(clean(mod.report));
        CHECK(mod.modifier.trivial_on_base);
        CHECK(same_structure(*m, *mod.algebroid));
    }
}

TEST_CASE("inner modifier on the crossed product") {
    const AlgebroidPtr m = f2_crossed();
    const FiniteAlgebra& a = m->algebra();
    const FiniteAlgebra& b = m->base_b();
    const Vector u{Scalar(3), Scalar(1)};
    const Vector v{Scalar(1), Scalar(2)};
    const Vector u_inv{Scalar::fraction(1, 3), Scalar(1)};
    const Vector v_inv{Scalar(1), Scalar::fraction(1, 2)};
    const Modifier inner = inner_modifier(*m, u, v);
    const Modification mod = modify(m, inner);
    CHECK(clean(mod.report));
    const Algebroid& t = *mod.algebroid;

    const auto in_a = [&](const Vector& x) { return m->embed_b().apply(x); };
    const Matrix sc_inv = m->s_c_inverse();
    const Matrix s = antipode_of(*m);
    for (std::size_t k = 0; k < a.dim(); ++k) {
        CAPTURE(a.label(k));
        const Vector e = a.basis(k);
        // ε̃_B(a) = ε_B(av⁻¹)v, ε̃_C(a) = ε_C(u⁻¹au) = S_C⁻¹(u)ε_C(u⁻¹a), S̃(a) = uS(vav⁻¹)u⁻¹.
        CHECK(t.counit_b()->apply(e) == b.multiply(m->counit_b()->apply(a.multiply(e, in_a(v_inv))), v));
        CHECK(t.counit_c()->apply(e) == m->counit_c()->apply(a.multiply(a.multiply(in_a(u_inv), e), in_a(u))));
        CHECK(t.counit_c()->apply(e) ==
              m->base_c().multiply(sc_inv.apply(u), m->counit_c()->apply(a.multiply(in_a(u_inv), e))));
        const Vector conj = a.multiply(a.multiply(in_a(v), e), in_a(v_inv));
        CHECK(antipode_of(t).apply(e) == a.multiply(a.multiply(in_a(u), s.apply(conj)), in_a(u_inv)));
    }
    CHECK_THROWS_AS(inner_modifier(*m, Vector{Scalar(0), Scalar(1)}, v), MathematicalRejection);
}

TEST_CASE("inner modifiers with u = v keep the involution") {
    const AlgebroidPtr m = f2_crossed();
    const Vector w{Scalar(1), Scalar(2)};
    const Modification same = modify(m, inner_modifier(*m, w, w));
    CHECK(same.modifier.self_adjoint);
    CHECK(clean(same.report));
    CHECK(clean(verify_star(*same.algebroid)));

    const Modification skew = modify(m, inner_modifier(*m, Vector{Scalar(3), Scalar(1)}, w));
    CHECK_FALSE(skew.modifier.self_adjoint);
    CHECK_FALSE(verify_star(*skew.algebroid).passed());
}

TEST_CASE("a modifier that moves the base is rejected with a witness") {
    const AlgebroidPtr m = p2_convolution();
    const FiniteAlgebra& a = m->algebra();
    // Θ_λ = Ad(1 + δ_(1,2)), the remaining components trivial.
    const Vector x{Scalar(1), Scalar(1), Scalar(0), Scalar(1)};
    const Vector x_inv{Scalar(1), Scalar(-1), Scalar(0), Scalar(1)};
    Modifier bad = identity_modifier(*m);
    bad.name = "unipotent";
    bad.theta_lambda = sandwich(a, x, x_inv);
    const ModifierCheck check = check_modifier(*m, bad);
    CHECK_FALSE(check.valid);
    const ReportEntry* e = check.report.find("theta-base");
    REQUIRE(e != nullptr);
    CHECK_FALSE(e->passed());
    CHECK_FALSE(e->witness.empty());
    CHECK_THROWS_AS(modify(m, bad), MathematicalRejection);

    Modifier not_auto = identity_modifier(*m);
    not_auto.theta_rho = Matrix(a.dim(), a.dim());
    CHECK_FALSE(check_modifier(*m, not_auto).valid);
}

TEST_CASE("composition and translation of modifiers") {
    const AlgebroidPtr m = f2_crossed();
    const Modifier m1 = inner_modifier(*m, Vector{Scalar(3), Scalar(1)}, Vector{Scalar(1), Scalar(2)});
    const Modifier m2 = inner_modifier(*m, Vector{Scalar(1), Scalar(5)}, Vector{Scalar(7), Scalar(1)});
    const Modifier both = compose(m1, m2);
    const Modification once = modify(m, both);
    const Modification first = modify(m, m1);
    const Modification twice = modify(first.algebroid, translate(both, m1));
    CHECK(same_structure(*once.algebroid, *twice.algebroid));

    CHECK(compose(identity_modifier(*m), m1) == m1);
    CHECK(compose(m1, identity_modifier(*m)) == m1);
    CHECK(translate(m1, m1) == identity_modifier(*m));
    CHECK(compose(compose(m1, m2), m1) == compose(m1, compose(m2, m1)));
}

TEST_CASE("the components define isomorphisms onto the modification") {
    const GroupoidRn rn = groupoid_rn_modifier(pair_groupoid(2), weights(1, 4), Field());
    const Modification mod = modify(rn.algebroid, rn.modifier);
    CHECK(clean(mod.report));
    CHECK(entry_passed(mod.report, "(Θ_λ, θ) isomorphism-comultiplication"));
    CHECK(entry_passed(mod.report, "(Θ_ρ, ι) isomorphism-comultiplication"));
    CHECK(entry_passed(mod.modifier.report, "modified-full"));
    CHECK(entry_passed(mod.modifier.report, "modified-full-right"));
    CHECK(entry_passed(mod.report, "theta-tl"));
    CHECK(entry_passed(mod.report, "theta-tr"));
    CHECK(mod.modifier.self_adjoint);

    // The identity is no isomorphism between the two.
    const Report wrong = left_isomorphism(*rn.algebroid, *mod.algebroid, Matrix::identity(4), Matrix::identity(2));
    CHECK_FALSE(wrong.passed());
}

TEST_CASE("partial integrals survive modification") {
    const GroupoidRn rn = groupoid_rn_modifier(pair_groupoid(2), weights(1, 4), Field());
    const Modification mod = modify(rn.algebroid, rn.modifier);
    CHECK(clean(integral_spaces_coincide(*rn.algebroid, *mod.algebroid)));
    const AlgebroidPtr crossed = f2_crossed();
    const Modification inner =
        modify(crossed, inner_modifier(*crossed, Vector{Scalar(3), Scalar(1)}, Vector{Scalar(1), Scalar(2)}));
    CHECK(clean(integral_spaces_coincide(*crossed, *inner.algebroid)));
}

TEST_CASE("characters trivial on the base") {
    const GroupoidRn rn = groupoid_rn_modifier(pair_groupoid(2), weights(1, 4), Field());
    const ModifierCheck check = check_modifier(*rn.algebroid, rn.modifier);
    CHECK(check.trivial_on_base);
    CHECK(clean(check.report));
    const Report chars = character_correspondence(*rn.algebroid, rn.modifier);
    CHECK(clean(chars));
    CHECK(entry_passed(chars, "character-left-operators"));
    CHECK(entry_passed(chars, "character-right-operators"));

    // Swapping the components breaks ρ(χ) = Θ_λ.
    Modifier swapped = rn.modifier;
    std::swap(swapped.theta_lambda, swapped.lambda_theta);
    CHECK_FALSE(character_correspondence(*rn.algebroid, swapped).passed());
}

TEST_CASE("groupoid Radon-Nikodym modification on the pair groupoid") {
    const RnPipeline p = groupoid_rn_pipeline(pair_groupoid(2), weights(1, 4), Field());
    CHECK(clean(p.report));
    CHECK(clean(p.modification.report));
    const GroupoidRn rn = groupoid_rn_modifier(pair_groupoid(2), weights(1, 4), Field());
    // Arrows (1,1), (1,2), (2,1), (2,2) with D(i,j) = μ(i)/μ(j).
    CHECK(rn.cocycle == std::vector<Scalar>{Scalar(1), Scalar::fraction(1, 4), Scalar(4), Scalar(1)});
    CHECK(rn.cocycle_half == std::vector<Scalar>{Scalar(1), Scalar::fraction(1, 2), Scalar(2), Scalar(1)});
    REQUIRE(p.measured.has_value());

    const Algebroid& t = *p.modification.algebroid;
    // Counitality at (2,1): μ(2)·D^{-1/2} = 4·(1/2) = 2 = μ(1)·D^{1/2} = 1·2.
    const Vector mu = weights(1, 4);
    CHECK(evaluate(mu, t.counit_b()->column(2)) == Scalar(2));
    CHECK(evaluate(mu, t.counit_c()->column(2)) == Scalar(2));
    const BaseWeight w{mu, mu};
    CHECK_FALSE(check_base_weight(*rn.algebroid, w).counital);
    CHECK(check_base_weight(t, w).counital);

    CHECK(entry_passed(p.report, "rn-displayed-left-comultiplication"));
    CHECK(entry_passed(p.report, "rn-displayed-right-comultiplication"));
    CHECK(entry_passed(p.report, "rn-modified-counits"));
    CHECK(entry_passed(p.report, "rn-antipode-unchanged"));
    CHECK(entry_passed(p.report, "rn-modular-automorphism"));
    CHECK(modular_automorphism(*p.measured, IntegralSide::left).sigma.at(2, 2) == Scalar(4));
}

TEST_CASE("uniform weight gives the identity modifier") {
    const GroupoidRn rn = groupoid_rn_modifier(pair_groupoid(2), weights(3, 3), Field());
    CHECK(rn.modifier == identity_modifier(*rn.algebroid));
    CHECK(clean(groupoid_rn_pipeline(pair_groupoid(2), weights(3, 3), Field()).report));
}

TEST_CASE("missing square roots and bad weights are rejected") {
    try {
        groupoid_rn_modifier(pair_groupoid(2), weights(1, 2), Field());
        FAIL("expected a rejection");
    } catch (const MathematicalRejection& e) {
        CHECK(e.equation() == "radon-nikodym-sqrt");
        CHECK(e.hint().find("--sqrt 2") != std::string::npos);
    }
    const RnPipeline p = groupoid_rn_pipeline(pair_groupoid(2), weights(1, 2), Field({2}));
    CHECK(clean(p.report));
    CHECK(p.measured.has_value());
    CHECK_THROWS_AS(groupoid_rn_modifier(pair_groupoid(2), weights(1, 0), Field()), MathematicalRejection);
    CHECK_THROWS_AS(groupoid_rn_modifier(pair_groupoid(2), weights(1, -3), Field()), MathematicalRejection);
}

TEST_CASE("Radon-Nikodym modification of the crossed product") {
    const FiniteHopf z2 = z2_hopf();
    const RnPipeline p = crossed_rn_pipeline(points(2), z2, swap_action(z2), weights(1, 4));
    CHECK(clean(p.report));
    const CrossedRn rn = crossed_rn_modifier(points(2), z2, swap_action(z2), weights(1, 4));
    REQUIRE(rn.cocycle.values.size() == 2);
    CHECK(rn.cocycle.values[0] == weights(1, 1));
    CHECK(rn.cocycle.values[1] == Vector{Scalar(4), Scalar::fraction(1, 4)});
    CHECK(entry_passed(p.report, "rn-cocycle"));
    CHECK(entry_passed(p.report, "rn-counital"));
    CHECK(entry_passed(p.report, "rn-modular-formula"));
    REQUIRE(p.measured.has_value());

    const CrossedRn invariant = crossed_rn_modifier(points(2), z2, swap_action(z2), weights(2, 2));
    CHECK(invariant.cocycle.values[1] == weights(1, 1));
    CHECK(invariant.modifier == identity_modifier(*invariant.algebroid));
}

TEST_CASE("Radon-Nikodym modification of the two-sided crossed product") {
    const FiniteHopf z2 = z2_hopf();
    const RnPipeline p = twosided_rn_pipeline(points(2), z2, swap_action(z2), weights(1, 4), Matrix::identity(2));
    CHECK(clean(p.report));
    CHECK(entry_passed(p.report, "rn-counital"));
    CHECK(entry_passed(p.report, "rn-modular-formula"));
    CHECK(p.measured.has_value());

    // μ = Tr(Q ·) on M_2 with Q = diag(1, 4) and σ(a) = QaQ⁻¹; Z/2 acts by conjugation with the flip.
    const AlgebraPtr c = m2();
    const Vector mu{Scalar(1), Scalar(0), Scalar(0), Scalar(4)};
    Matrix sigma(4, 4);
    sigma.at(0, 0) = Scalar(1);
    sigma.at(1, 1) = Scalar::fraction(1, 4);
    sigma.at(2, 2) = Scalar(4);
    sigma.at(3, 3) = Scalar(1);
    const Vector flip{Scalar(0), Scalar(1), Scalar(1), Scalar(0)};
    const std::vector<Matrix> conjugation{Matrix::identity(4), sandwich(*c, flip, flip)};
    try {
        twosided_rn_modifier(c, z2, conjugation, mu, sigma);
        FAIL("expected a rejection");
    } catch (const MathematicalRejection& e) {
        CHECK(e.equation() == "chb-modular");
    }
    try {
        twosided_rn_modifier(c, z2, conjugation, mu, Matrix::identity(4));
        FAIL("expected a rejection");
    } catch (const MathematicalRejection& e) {
        CHECK(e.equation() == "modular");
    }
}

}  // TEST_SUITE
