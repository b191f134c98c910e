// Runs the ten acceptance criteria and prints one verdict line per criterion.

#include <exception>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algebroid/modification.hpp"
#include "algebroid/structure.hpp"

using namespace algebroid;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
    void require(const Report& r, const std::string& what) {
        if (!r.passed()) {
            for (const ReportEntry& e : r.entries()) {
                if (!e.passed()) {
                    require(false, what + ": " + e.axiom + (e.witness.empty() ? "" : " (" + e.witness + ")"));
                    return;
                }
            }
        }
    }
};

AlgebraPtr two_points() {
    return std::make_shared<const FiniteAlgebra>(function_algebra(2).with_involution(Matrix::identity(2)));
}

FiniteHopf z2() { return group_algebra_hopf(cyclic_group(2)); }
Vector pair(long a, long b) { return Vector{Scalar(a), Scalar(b)}; }
Vector one_point() { return Vector{Scalar(1)}; }

struct Instance {
    std::string name;
    AlgebroidPtr algebroid;
};

std::vector<Instance> builders() {
    const FiniteHopf h = z2();
    return {
        {"function algebroid of P2", build_function_algebroid(pair_groupoid(2))},
        {"convolution algebroid of P2", build_convolution_algebroid(pair_groupoid(2))},
        {"tensor F2 with F2", build_tensor_algebroid(two_points(), two_points(), Matrix::identity(2), Matrix::identity(2))},
        {"crossed product F2 # F[Z/2]", build_crossed_product(two_points(), h, swap_action(h))},
        {"two-sided F2 # F[Z/2] # F2",
         build_two_sided(two_points(), h, two_points(), HopfAction{swap_action(h), swap_action(h)}, Matrix::identity(2),
                         Matrix::identity(2))},
    };
}

MeasuredAlgebroid p2_functions_measured(long a, long b) {
    const IntegralPair p = groupoid_function_integrals(pair_groupoid(2), pair(1, 1));
    return assemble_measured(build_function_algebroid(pair_groupoid(2)), {pair(a, b), pair(a, b)}, p.left, p.right);
}

MeasuredAlgebroid z2_measured() {
    const FiniteGroupoid g = group_groupoid(cyclic_group(2));
    const IntegralPair p = convolution_integrals(g, one_point());
    return assemble_measured(build_convolution_algebroid(g), {one_point(), one_point()}, p.left, p.right);
}

std::vector<std::pair<std::string, MeasuredAlgebroid>> measured_instances() {
    std::vector<std::pair<std::string, MeasuredAlgebroid>> out;
    out.emplace_back("P2 functions (1,4)", p2_functions_measured(1, 4));
    out.emplace_back("P2 functions (1,1)", p2_functions_measured(1, 1));
    {
        const IntegralPair p = convolution_integrals(pair_groupoid(2), pair(1, 1));
        out.emplace_back("P2 convolution (1,1)", assemble_measured(build_convolution_algebroid(pair_groupoid(2)),
                                                                   {pair(1, 1), pair(1, 1)}, p.left, p.right));
    }
    out.emplace_back("Z/2 group algebra", z2_measured());
    const std::vector<Instance> b = builders();
    {
        const BaseWeight w{pair(1, 3), pair(1, 3)};
        const IntegralPair p = tensor_integrals(b[2].algebroid->base_b(), b[2].algebroid->base_c(), w.mu_b, w.mu_c);
        out.emplace_back("tensor (1,3)", assemble_measured(b[2].algebroid, w, p.left, p.right));
    }
    {
        const IntegralPair p = crossed_integrals(b[3].algebroid->base_c(), z2());
        out.emplace_back("crossed product", assemble_measured(b[3].algebroid, {pair(1, 1), pair(1, 1)}, p.left, p.right));
    }
    {
        const AlgebroidPtr& m = b[4].algebroid;
        const IntegralPair p = two_sided_integrals(m->base_c(), z2(), m->base_b(), pair(1, 1), pair(1, 1));
        out.emplace_back("two-sided", assemble_measured(m, {pair(1, 1), pair(1, 1)}, p.left, p.right));
    }
    const RnPipeline g = groupoid_rn_pipeline(pair_groupoid(2), pair(1, 4), Field());
    out.emplace_back("modified P2 convolution (1,4)", *g.measured);
    const RnPipeline c = crossed_rn_pipeline(two_points(), z2(), swap_action(z2()), pair(1, 4));
    out.emplace_back("modified crossed product (1,4)", *c.measured);
    return out;
}

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<long> dist(-2, 2);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.at(r, c) = Scalar(dist(rng));
        }
    }
    return m;
}

Matrix random_combination(std::mt19937& rng, const std::vector<Matrix>& basis, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<long> dist(-3, 3);
    Matrix out(rows, cols);
    for (const Matrix& b : basis) {
        const Scalar c(dist(rng));
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t k = 0; k < cols; ++k) {
                out.at(r, k) += c * b.at(r, k);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------------

Verdict axiom_suites() {
    Verdict v;
    for (const Instance& i : builders()) {
        v.require(verify_regular_mha(*i.algebroid), i.name);
        if (i.algebroid->algebra().has_involution()) {
            v.require(verify_star(*i.algebroid), i.name + " star");
        }
    }
    v.detail = v.ok ? "5 instances, regular and star suites" : v.detail;
    return v;
}

Verdict characterizations() {
    Verdict v;
    std::mt19937 rng(20261016);
    std::size_t fewest = SIZE_MAX;
    for (const Instance& i : builders()) {
        const Algebroid& m = *i.algebroid;
        for (IntegralSide side : {IntegralSide::left, IntegralSide::right}) {
            const IntegralSpace space = solve_partial_integrals(m, side);
            const std::size_t rows = side == IntegralSide::left ? m.base_c().dim() : m.base_b().dim();
            std::vector<Matrix> maps = space.basis;
            maps.emplace_back(rows, m.dim());
            while (maps.size() < 24) {
                const Matrix inv = random_combination(rng, space.basis, rows, m.dim());
                maps.push_back(inv);
                maps.push_back(inv + random_matrix(rng, rows, m.dim()));
                maps.push_back(random_matrix(rng, rows, m.dim()));
            }
            std::size_t invariant = 0;
            for (const Matrix& map : maps) {
                const PartialIntegralCheck c = check_partial_integral(m, map, side);
                v.require(c.agree(), i.name + " " + to_string(side) + ": the characterizations disagree");
                invariant += c.invariant() ? 1 : 0;
            }
            v.require(invariant > 0 && invariant < maps.size(), i.name + ": candidates are not mixed");
            fewest = std::min(fewest, maps.size());
        }
    }
    v.detail = v.ok ? "at least " + std::to_string(fewest) + " candidates per instance and side" : v.detail;
    return v;
}

Verdict uniqueness() {
    Verdict v;
    const MeasuredAlgebroid x = p2_functions_measured(1, 4);
    const UniquenessCheck u = uniqueness_check(x);
    v.require(u.report, "uniqueness");
    v.require(u.left_integrals.size() == 2, "left integrals do not form a 2-dimensional space");
    v.require(in_integral_family(x, x.phi, IntegralSide::left), "φ not in M(B)·φ");
    for (const Vector& omega : u.left_integrals) {
        v.require(in_integral_family(x, omega, IntegralSide::left), "a left integral outside M(B)·φ");
    }
    v.detail = v.ok ? "left integrals = M(B)·φ, dimension 2" : v.detail;
    return v;
}

Verdict modular_automorphisms() {
    Verdict v;
    const auto all = measured_instances();
    for (const auto& [name, x] : all) {
        const ModularAutomorphism phi = modular_automorphism(x, IntegralSide::left);
        v.require(phi.report.passed("modular-automorphism-phi-base"), name + ": σ^φ|_C ≠ S²|_C");
        v.require(phi.report.passed("modular-automorphism-phi-deltab"), name + ": Δ_B∘σ^φ ≠ (S²⊗σ^φ)∘Δ_B");
        v.require(phi.report, name);
        v.require(modular_automorphism(x, IntegralSide::right).report, name + " ψ");
    }
    const GroupoidRn rn = groupoid_rn_modifier(pair_groupoid(2), pair(1, 4), Field());
    const Matrix sigma = modular_automorphism(all[7].second, IntegralSide::left).sigma;
    v.require(sigma == rn.sigma_one(), "σ^φ on the modified convolution algebroid is not diag D");
    v.require(sigma.at(2, 2) == Scalar(4), "D(2,1) ≠ 4");
    v.detail = v.ok ? std::to_string(all.size()) + " instances; modified P2 convolution σ^φ = diag(1, 1/4, 4, 1)" : v.detail;
    return v;
}

Verdict modular_elements() {
    Verdict v;
    const ModularElement d = modular_element(p2_functions_measured(1, 4));
    const Vector expected{Scalar(1), Scalar(4), Scalar::fraction(1, 4), Scalar(1)};
    v.require(d.plus == expected, "δ⁺ ≠ (1, 4, 1/4, 1)");
    v.require(d.minus == expected, "δ⁻ ≠ (1, 4, 1/4, 1)");
    for (const char* axiom : {"modular-element-grouplike", "modular-element-antipode", "modular-element-counit",
                              "modular-element-star"}) {
        v.require(d.report.passed(axiom), axiom);
    }
    v.require(d.report, "modular element");
    v.detail = v.ok ? "δ = (1, 4, 1/4, 1), group-like, S(δ⁺) = (δ⁻)⁻¹, ε·δ⁻ = ε, δ⁺ = (δ⁻)*" : v.detail;
    return v;
}

Verdict faithfulness() {
    Verdict v;
    const auto all = measured_instances();
    for (const auto& [name, x] : all) {
        const Report r = faithfulness_check(x);
        v.require(r.passed("phi-gram-invertible") && r.passed("psi-gram-invertible"), name + ": singular Gram matrix");
        v.require(r, name);
    }
    const std::vector<Instance> b = builders();
    const AlgebroidPtr& m = b[2].algebroid;
    const BaseWeight w{pair(1, 3), pair(1, 3)};
    const IntegralPair p = tensor_integrals(m->base_b(), m->base_c(), pair(1, 0), pair(1, 3));
    const FaithfulnessCheck c = faithfulness_check(*m, w, pull_back(w.mu_c, p.left), IntegralSide::left);
    v.require(c.integral && !c.full && !c.hypotheses(), "the non-full integral is not flagged");
    v.require(!c.faithful, "the non-full integral is faithful");
    v.detail = v.ok ? std::to_string(all.size()) + " instances; the non-full integral lies outside the hypotheses" : v.detail;
    return v;
}

Verdict dual_algebras() {
    Verdict v;
    const DualAlgebra z = dual_algebra(z2_measured());
    v.require(z.report, "Z/2");
    const FiniteAlgebra pointwise = function_algebra(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            v.require(z.algebra.product(i, j) == pointwise.product(i, j), "Â of Z/2 is not pointwise");
        }
    }
    const DualAlgebra p = dual_algebra(p2_functions_measured(1, 4));
    v.require(p.report, "P2");
    const FiniteAlgebra m2 = build_convolution_algebroid(pair_groupoid(2))->algebra();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            v.require(p.algebra.product(i, j) == m2.product(i, j), "Â of P2 does not multiply like matrix units");
        }
    }
    for (const auto& [name, x] : measured_instances()) {
        const DualAlgebra d = dual_algebra(x);
        v.require(check_algebra(d.algebra), name + ": Â is not associative");
        v.require(d.report.passed("dual-bimodule") && d.report.passed("dual-module-left") &&
                      d.report.passed("dual-module-right"),
                  name + ": bimodule identities");
    }
    v.detail = v.ok ? "Â(Z/2) = F^{Z/2}, Â(P2) = M2, associative with the bimodule identities" : v.detail;
    return v;
}

Verdict modification() {
    Verdict v;
    const RnPipeline p = groupoid_rn_pipeline(pair_groupoid(2), pair(1, 4), Field());
    v.require(p.report, "pipeline");
    v.require(p.modification.report, "modification");
    const Algebroid& t = *p.modification.algebroid;
    v.require(verify_regular_mha(t), "regular suite");
    v.require(verify_star(t), "star suite");
    const Vector mu = pair(1, 4);
    const GroupoidRn rn = groupoid_rn_modifier(pair_groupoid(2), mu, Field());
    // Arrow (2,1): target 2, source 1.
    const Scalar lhs = mu[1] * rn.cocycle_half[2].inverse();
    const Scalar rhs = mu[0] * rn.cocycle_half[2];
    v.require(lhs == Scalar(2) && rhs == Scalar(2), "witness 4·(1/2) = 1·2 fails");
    v.require(evaluate(mu, t.counit_b()->column(2)) == lhs && evaluate(mu, t.counit_c()->column(2)) == rhs,
              "the modified counits do not produce the witness");
    v.require(integral_spaces_coincide(*rn.algebroid, t), "integral spaces");
    v.detail = v.ok ? "all suites pass; 4·(1/2) = 1·2 at (2,1); integral spaces unchanged" : v.detail;
    return v;
}

Verdict crossed_pipeline() {
    Verdict v;
    const FiniteHopf h = z2();
    const RnPipeline p = crossed_rn_pipeline(two_points(), h, swap_action(h), pair(1, 4));
    const CrossedRn rn = crossed_rn_modifier(two_points(), h, swap_action(h), pair(1, 4));
    v.require(rn.cocycle.values[1] == Vector{Scalar(4), Scalar::fraction(1, 4)}, "D_g ≠ (4, 1/4)");
    v.require(p.report.passed("rn-cocycle"), "one-cocycle law");
    v.require(p.measured.has_value(), "not measured");
    v.require(p.report.passed("rn-modular-formula"), "σ^φ formula");
    v.require(p.report, "pipeline");
    v.detail = v.ok ? "D_g = (4, 1/4); cocycle law; measured; σ^φ(yh) = yσ_H(h(2))D_{S⁻¹(h(1))}" : v.detail;
    return v;
}

Verdict meta_consistency() {
    Verdict v;
    std::vector<Instance> all = builders();
    all.push_back({"Z/2 group algebra", build_convolution_algebroid(group_groupoid(cyclic_group(2)))});
    all.push_back({"modified P2 convolution",
                   groupoid_rn_pipeline(pair_groupoid(2), pair(1, 4), Field()).modification.algebroid});
    for (const Instance& i : all) {
        const Derivation d = derive_antipode(*i.algebroid);
        v.require(d.map.has_value() && i.algebroid->antipode() && *d.map == *i.algebroid->antipode(),
                  i.name + ": the derived antipode differs");
        v.require(verify_regular_mha(*i.algebroid).passed("galois-antipode"), i.name + ": Galois-antipode diagram");
    }
    v.detail = v.ok ? std::to_string(all.size()) + " instances" : v.detail;
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"axiom suites", axiom_suites},
        {"partial-integral characterizations", characterizations},
        {"uniqueness of integrals", uniqueness},
        {"modular automorphism", modular_automorphisms},
        {"modular element", modular_elements},
        {"faithfulness", faithfulness},
        {"dual algebra", dual_algebras},
        {"modification", modification},
        {"crossed-product pipeline", crossed_pipeline},
        {"meta-consistency", meta_consistency},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += v.ok ? 0 : 1;
        std::cout << (v.ok ? "PASS" : "FAIL") << "  criterion " << (k + 1) << "  " << criteria[k].first << ": "
                  << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
