#include "algebroid/modification.hpp"

#include <memory>
#include <stdexcept>
#include <utility>

#include "algebroid/structure.hpp"
#include "algebroid/tensor.hpp"
#include "check_util.hpp"

namespace algebroid {

namespace {

using namespace detail;

Matrix invert(const Matrix& m, const std::string& equation, const std::string& what) {
    auto inv = inverse(m);
    if (!inv) {
        throw MathematicalRejection(equation, what + " is not bijective");
    }
    return std::move(*inv);
}

/// θ with embed∘θ = Θ∘embed, if Θ maps the base into itself.
std::optional<Matrix> restriction(const Matrix& big, const Matrix& embed) {
    std::vector<Vector> cols;
    for (std::size_t k = 0; k < embed.cols(); ++k) {
        auto x = solve_linear(embed, big.apply(embed.column(k)));
        if (!x) {
            return std::nullopt;
        }
        cols.push_back(std::move(*x));
    }
    return Matrix::from_columns(embed.cols(), cols);
}

std::optional<Vector> element_inverse(const FiniteAlgebra& a, const Vector& x) {
    auto y = solve_linear(a.left_multiplication(x), a.one());
    if (!y || a.multiply(*y, x) != a.one()) {
        return std::nullopt;
    }
    return y;
}

/// a -> p a q.
Matrix sandwich(const FiniteAlgebra& a, const Vector& p, const Vector& q) {
    return Matrix::from_function(a.dim(), a.dim(), [&](std::size_t k) { return a.multiply(a.multiply(p, a.basis(k)), q); });
}

Matrix diagonal(const std::vector<Scalar>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        m.at(k, k) = d[k];
    }
    return m;
}

bool fixes(const Matrix& big, const Matrix& embed) { return big * embed == embed; }

/// a -> slice(Δ(a)).
Matrix slice_operator(const BalancedTensor& q, const Matrix& slice, const Matrix& delta) {
    return Matrix::from_function(slice.rows(), delta.cols(),
                                 [&](std::size_t k) { return slice.apply(q.project(delta.column(k))); });
}

void compare_in(FirstFailure& f, const BalancedTensor& q, const Vector& lhs, const Vector& rhs, const std::string& at) {
    compare(f, q.quotient(), lhs, rhs, at);
}

std::string first_failure(const Report& r) {
    for (const ReportEntry& e : r.entries()) {
        if (!e.passed()) {
            return e.axiom + (e.witness.empty() ? std::string() : ": " + e.witness);
        }
    }
    return {};
}

/// Σ v_k (h_k ▷ ·).
Matrix action_matrix(const std::vector<Matrix>& action, const Vector& v, std::size_t dim) {
    Matrix out(dim, dim);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) {
            for (std::size_t r = 0; r < dim; ++r) {
                for (std::size_t c = 0; c < dim; ++c) {
                    out.at(r, c) += v[k] * action[k].at(r, c);
                }
            }
        }
    }
    return out;
}

Vector act(const std::vector<Matrix>& action, const Vector& h, const Vector& y) {
    return action_matrix(action, h, y.size()).apply(y);
}

struct Leg2 {
    Scalar coefficient;
    std::size_t first;
    std::size_t second;
};

struct Leg3 {
    Scalar coefficient;
    std::size_t first;
    std::size_t second;
    std::size_t third;
};

std::vector<Leg2> coproduct(const FiniteHopf& hopf, std::size_t k) {
    const std::size_t nh = hopf.dim();
    std::vector<Leg2> out;
    const Vector d = hopf.delta.column(k);
    for (std::size_t idx = 0; idx < nh * nh; ++idx) {
        if (!d[idx].is_zero()) {
            out.push_back({d[idx], idx / nh, idx % nh});
        }
    }
    return out;
}

std::vector<Leg3> coproduct3(const FiniteHopf& hopf, std::size_t k) {
    std::vector<Leg3> out;
    for (const Leg2& outer : coproduct(hopf, k)) {
        for (const Leg2& inner : coproduct(hopf, outer.second)) {
            out.push_back({outer.coefficient * inner.coefficient, outer.first, inner.first, inner.second});
        }
    }
    return out;
}

std::string weight_values(const Algebroid& m, const BaseWeight& w, std::size_t limit) {
    std::string out;
    const Matrix& eb = *m.counit_b();
    const Matrix& ec = *m.counit_c();
    for (std::size_t k = 0; k < m.dim() && k < limit; ++k) {
        if (!out.empty()) {
            out += "; ";
        }
        out += m.algebra().label(k) + ": μ_B∘ε_B = " + evaluate(w.mu_b, eb.column(k)).to_string() +
               ", μ_C∘ε_C = " + evaluate(w.mu_c, ec.column(k)).to_string();
    }
    return out;
}

void counitality_entries(Report& r, const Algebroid& before, const Algebroid& after, const BaseWeight& w) {
    const BaseWeightCheck original = check_base_weight(before, w);
    const BaseWeightCheck modified = check_base_weight(after, w);
    r.add("rn-counital", "counital-base-weight", modified.counital, modified.counital ? "" : weight_values(after, w, 64),
          std::string(original.counital ? "already counital before modification; " : "not counital before modification; ") +
              weight_values(after, w, 64));
}

void measure(RnPipeline& out, const BaseWeight& w, const Matrix& phi_c, const Matrix& psi_b) {
    try {
        out.measured = assemble_measured(out.modification.algebroid, w, phi_c, psi_b);
        out.report.add("rn-measured", "measured", out.measured->certificates.passed(),
                       first_failure(out.measured->certificates));
    } catch (const MathematicalRejection& e) {
        out.report.add("rn-measured", "measured", false, e.equation() + ": " + e.what());
    }
}

}  // namespace

Modifier identity_modifier(const Algebroid& m) {
    const Matrix id = Matrix::identity(m.dim());
    return {"identity", id, id, id, id};
}

Modifier compose(const Modifier& first, const Modifier& second) {
    return {first.name + "·" + second.name, first.theta_lambda * second.theta_lambda,
            second.theta_rho * first.theta_rho, second.lambda_theta * first.lambda_theta,
            first.rho_theta * second.rho_theta};
}

Modifier translate(const Modifier& target, const Modifier& applied) {
    const auto rel = [](const Matrix& t, const Matrix& a) { return t * invert(a, "left-modifier", "modifier component"); };
    return {target.name + "/" + applied.name, rel(target.theta_lambda, applied.theta_lambda),
            rel(target.theta_rho, applied.theta_rho), rel(target.lambda_theta, applied.lambda_theta),
            rel(target.rho_theta, applied.rho_theta)};
}

bool operator==(const Modifier& a, const Modifier& b) {
    return a.theta_lambda == b.theta_lambda && a.theta_rho == b.theta_rho && a.lambda_theta == b.lambda_theta &&
           a.rho_theta == b.rho_theta;
}

Modifier inner_modifier(const Algebroid& m, const Vector& u, const Vector& v) {
    const FiniteAlgebra& b = m.base_b();
    const auto u_inv = element_inverse(b, u);
    const auto v_inv = element_inverse(b, v);
    if (!u_inv || !v_inv) {
        throw MathematicalRejection("inner-modifier", "u and v must be invertible in B");
    }
    const FiniteAlgebra& a = m.algebra();
    const Matrix sc_inv = m.s_c_inverse();
    const auto in_b = [&](const Vector& x) { return m.embed_b().apply(x); };
    const auto sb = [&](const Vector& x) { return m.left_target().apply(x); };
    const auto sc_inv_a = [&](const Vector& x) { return m.embed_c().apply(sc_inv.apply(x)); };
    return {"inner", sandwich(a, in_b(*v_inv), in_b(v)), sandwich(a, sb(*v_inv), sb(v)),
            sandwich(a, in_b(u), in_b(*u_inv)), sandwich(a, sc_inv_a(u), sc_inv_a(*u_inv))};
}

AlgebroidData modified_data(const Algebroid& m, const Modifier& mod, const Matrix& theta_b, const Matrix& theta_c) {
    const std::size_t n = m.dim();
    const Matrix id = Matrix::identity(n);
    AlgebroidData d = m.data();
    d.name = m.name() + " modified by " + mod.name;
    d.delta_b = kronecker(mod.theta_lambda, id) * m.delta_b_matrix();
    d.delta_c = kronecker(mod.lambda_theta, id) * m.delta_c_matrix();
    d.s_b = m.s_b() * invert(theta_b, "left-modifier", "θ_B");
    d.s_c = m.s_c() * invert(theta_c, "right-modifier", "θ_C");
    if (m.counit_b()) {
        d.counit_b = *m.counit_b() * invert(mod.theta_rho, "left-modifier", "Θ_ρ");
    }
    if (m.counit_c()) {
        d.counit_c = *m.counit_c() * invert(mod.lambda_theta, "right-modifier", "_λΘ");
    }
    d.antipode = mod.theta_rho * antipode_of(m) * invert(mod.rho_theta, "right-modifier", "_ρΘ");
    return d;
}

ModifierCheck check_modifier(const Algebroid& m, const Modifier& mod) {
    ModifierCheck out;
    Report& r = out.report;
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = m.dim();
    const Matrix id = Matrix::identity(n);

    bool automorphisms = true;
    const std::pair<const char*, const Matrix*> parts[] = {{"Θ_λ", &mod.theta_lambda},
                                                           {"Θ_ρ", &mod.theta_rho},
                                                           {"_λΘ", &mod.lambda_theta},
                                                           {"_ρΘ", &mod.rho_theta}};
    for (const auto& [name, matrix] : parts) {
        std::optional<std::string> w;
        if (matrix->rows() != n || matrix->cols() != n) {
            w = "wrong shape";
        } else {
            w = automorphism_witness(a, *matrix);
        }
        r.add(std::string("modifier-automorphism-") + name, "left-modifier", !w, w.value_or(""));
        automorphisms = automorphisms && !w;
    }
    if (!automorphisms) {
        return out;
    }

    out.theta_b = restriction(mod.theta_lambda, m.embed_b());
    out.theta_c = restriction(mod.rho_theta, m.embed_c());
    FirstFailure left_base;
    if (!out.theta_b || !automorphism_check(m.base_b(), *out.theta_b)) {
        left_base.record("Θ_λ does not restrict to an automorphism of B");
        out.theta_b.reset();
    } else if (mod.theta_rho * m.left_target() != m.left_target() * invert(*out.theta_b, "left-modifier", "θ_B")) {
        left_base.record("Θ_ρ∘t differs from t∘θ⁻¹");
    }
    add(r, "theta-base", "theta-base", left_base);
    FirstFailure right_base;
    if (!out.theta_c || !automorphism_check(m.base_c(), *out.theta_c)) {
        right_base.record("_ρΘ does not restrict to an automorphism of C");
        out.theta_c.reset();
    } else if (mod.lambda_theta * m.right_target() != m.right_target() * invert(*out.theta_c, "right-modifier", "θ_C")) {
        right_base.record("_λΘ∘t differs from t∘θ⁻¹");
    }
    add(r, "theta-base-right", "theta-base", right_base);
    if (!left_base.ok() || !right_base.ok()) {
        return out;
    }

    // The quotients of the modification carry the balancing relations of the comparison.
    AlgebroidPtr target;
    try {
        target = make_algebroid(modified_data(m, mod, *out.theta_b, *out.theta_c));
    } catch (const std::exception& e) {
        r.add("theta-comultiplication", "theta-comultiplication", false, e.what());
        return out;
    }
    FirstFailure left_delta;
    FirstFailure right_delta;
    const Matrix tl_first = kronecker(mod.theta_lambda, id);
    const Matrix tr_second = kronecker(id, mod.theta_rho);
    const Matrix lt_first = kronecker(mod.lambda_theta, id);
    const Matrix rt_second = kronecker(id, mod.rho_theta);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector db = m.delta_b(a.basis(k));
        const Vector dc = m.delta_c(a.basis(k));
        compare_in(left_delta, target->q_b(), tl_first.apply(db), tr_second.apply(db), "at " + label(a, k));
        compare_in(right_delta, target->q_c(), lt_first.apply(dc), rt_second.apply(dc), "at " + label(a, k));
    }
    add(r, "theta-comultiplication", "theta-comultiplication", left_delta);
    add(r, "theta-comultiplication-right", "theta-comultiplication", right_delta);
    out.valid = r.passed();
    if (!out.valid) {
        return out;
    }

    FirstFailure antipode_base;
    if (mod.theta_rho * m.left_target() * *out.theta_b != m.left_target()) {
        antipode_base.record("Θ_ρ∘S_B∘Θ_λ differs from S_B");
    }
    if (mod.lambda_theta * m.right_target() * *out.theta_c != m.right_target()) {
        antipode_base.record("_λΘ∘S_C∘_ρΘ differs from S_C");
    }
    add(r, "modifier-antipode-base", "modifier-antipode-base", antipode_base);

    // Unital instances are full, so the companion relations hold.
    FirstFailure full_left;
    if (!fixes(mod.theta_lambda, m.left_target())) {
        full_left.record("Θ_λ∘t differs from t");
    }
    if (!fixes(mod.theta_rho, m.embed_b())) {
        full_left.record("Θ_ρ∘s differs from s");
    }
    const Matrix tl_second = kronecker(id, mod.theta_lambda);
    const Matrix tr_first = kronecker(mod.theta_rho, id);
    for (std::size_t k = 0; k < n && full_left.ok(); ++k) {
        const Vector db = m.delta_b(a.basis(k));
        compare_in(full_left, m.q_b(), m.delta_b(mod.theta_lambda.column(k)), tl_second.apply(db),
                   "Δ_B∘Θ_λ at " + label(a, k));
        compare_in(full_left, m.q_b(), m.delta_b(mod.theta_rho.column(k)), tr_first.apply(db),
                   "Δ_B∘Θ_ρ at " + label(a, k));
    }
    add(r, "modified-full", "modified-full", full_left);
    FirstFailure full_right;
    if (!fixes(mod.lambda_theta, m.embed_c())) {
        full_right.record("_λΘ∘s differs from s");
    }
    if (!fixes(mod.rho_theta, m.right_target())) {
        full_right.record("_ρΘ∘t differs from t");
    }
    const Matrix lt_second = kronecker(id, mod.lambda_theta);
    const Matrix rt_first = kronecker(mod.rho_theta, id);
    for (std::size_t k = 0; k < n && full_right.ok(); ++k) {
        const Vector dc = m.delta_c(a.basis(k));
        compare_in(full_right, m.q_c(), m.delta_c(mod.lambda_theta.column(k)), lt_second.apply(dc),
                   "Δ_C∘_λΘ at " + label(a, k));
        compare_in(full_right, m.q_c(), m.delta_c(mod.rho_theta.column(k)), rt_first.apply(dc),
                   "Δ_C∘_ρΘ at " + label(a, k));
    }
    add(r, "modified-full-right", "modified-full", full_right);

    out.trivial_on_base = true;
    for (const auto& [name, matrix] : parts) {
        out.trivial_on_base = out.trivial_on_base && fixes(*matrix, m.embed_b()) && fixes(*matrix, m.embed_c());
    }
    if (a.has_involution()) {
        const Matrix& j = a.involution();
        out.self_adjoint = j * mod.theta_lambda.conj() == mod.lambda_theta * j &&
                           j * mod.theta_rho.conj() == mod.rho_theta * j;
    }
    if (out.trivial_on_base && m.counit_b() && m.counit_c()) {
        r.append(character_correspondence(m, mod));
    }
    return out;
}

Report character_correspondence(const Algebroid& m, const Modifier& mod) {
    Report r;
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = m.dim();
    struct Side {
        const char* name;
        const Matrix& eps;
        const BalancedTensor& q;
        const Matrix& delta;
        const Matrix& s;
        const Matrix& t;
        const FiniteAlgebra& base;
        const Matrix& first;   // acts on the first leg in the defining relation
        const Matrix& second;  // acts on the second leg
        bool left;
    };
    const Side sides_[] = {
        {"left", *m.counit_b(), m.q_b(), m.delta_b_matrix(), m.embed_b(), m.left_target(), m.base_b(),
         mod.theta_lambda, mod.theta_rho, true},
        {"right", *m.counit_c(), m.q_c(), m.delta_c_matrix(), m.embed_c(), m.right_target(), m.base_c(),
         mod.lambda_theta, mod.rho_theta, false},
    };
    for (const Side& side : sides_) {
        const std::string prefix = std::string("character-") + side.name;
        const Matrix chi = side.eps * side.first;
        const Matrix chi_bar = side.eps * invert(side.first, "left-modifier", "modifier component");
        r.add(prefix + "-coincide", "character-correspondence", chi == side.eps * side.second,
              chi == side.eps * side.second ? "" : "ε∘Θ differs between the two components");

        FirstFailure law;
        for (std::size_t i = 0; i < n && law.ok(); ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Vector cj = chi.column(j);
                const Vector lhs = chi.apply(a.product(i, j));
                if (side.left) {
                    compare(law, lhs, chi.apply(a.multiply(a.basis(i), side.s.apply(cj))), "χ(as(χ(b))) at " + pair(a, i, a, j));
                    compare(law, lhs, chi.apply(a.multiply(a.basis(i), side.t.apply(cj))), "χ(at(χ(b))) at " + pair(a, i, a, j));
                } else {
                    compare(law, lhs, chi.apply(a.multiply(side.s.apply(chi.column(i)), a.basis(j))),
                            "χ(s(χ(a))b) at " + pair(a, i, a, j));
                    compare(law, lhs, chi.apply(a.multiply(side.t.apply(chi.column(i)), a.basis(j))),
                            "χ(t(χ(a))b) at " + pair(a, i, a, j));
                }
            }
        }
        add(r, prefix + "-law", "character-correspondence", law);

        FirstFailure operators;
        const InducedMap rho = try_slice_right(side.q, chi);
        const InducedMap lambda = try_slice_left(side.q, chi);
        const InducedMap rho_bar = try_slice_right(side.q, chi_bar);
        if (!rho.well_defined() || !lambda.well_defined() || !rho_bar.well_defined()) {
            operators.record("the character does not slice the balanced tensor");
        } else {
            const Matrix rho_op = slice_operator(side.q, rho.matrix, side.delta);
            compare(operators, rho_op, side.first, "ρ(χ) against the first component");
            compare(operators, slice_operator(side.q, lambda.matrix, side.delta), side.second,
                    "λ(χ) against the second component");
            compare(operators, chi * slice_operator(side.q, rho_bar.matrix, side.delta), side.eps,
                    "χ∗χ̄ against the counit");
            compare(operators, chi_bar * rho_op, side.eps, "χ̄∗χ against the counit");
        }
        add(r, prefix + "-operators", "character-correspondence", operators);
    }
    return r;
}

Report left_isomorphism(const Algebroid& source, const Algebroid& target, const Matrix& big, const Matrix& theta) {
    Report r;
    const FiniteAlgebra& a = source.algebra();
    const std::size_t n = source.dim();
    FirstFailure base;
    compare(base, big * source.embed_b(), target.embed_b() * theta, "Θ∘s = s∘θ");
    compare(base, big * source.left_target(), target.left_target() * theta, "Θ∘t = t∘θ");
    add(r, "isomorphism-base", "modified-isomorphism", base);
    FirstFailure delta;
    const Matrix both = kronecker(big, big);
    for (std::size_t i = 0; i < n && delta.ok(); ++i) {
        const Vector d1 = source.delta_b(a.basis(i));
        const Vector d2 = target.delta_b(big.column(i));
        for (std::size_t j = 0; j < n && delta.ok(); ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const Vector lhs = both.apply(source.product2(d1, tensor(a.basis(j), a.basis(k))));
                const Vector rhs = target.product2(d2, tensor(big.column(j), big.column(k)));
                compare_in(delta, target.q_b(), lhs, rhs,
                           "at (" + label(a, i) + ", " + label(a, j) + ", " + label(a, k) + ")");
            }
        }
    }
    add(r, "isomorphism-comultiplication", "modified-isomorphism", delta);
    return r;
}

Report integral_spaces_coincide(const Algebroid& before, const Algebroid& after) {
    Report r;
    for (IntegralSide side : {IntegralSide::left, IntegralSide::right}) {
        const IntegralSpace x = solve_partial_integrals(before, side);
        const IntegralSpace y = solve_partial_integrals(after, side);
        std::vector<Vector> fx;
        std::vector<Vector> fy;
        for (const Matrix& m : x.basis) {
            fx.push_back(flatten(m));
        }
        for (const Matrix& m : y.basis) {
            fy.push_back(flatten(m));
        }
        const std::size_t len = x.basis.empty() ? (y.basis.empty() ? 0 : flatten(y.basis.front()).size())
                                                : flatten(x.basis.front()).size();
        const bool same = same_span(fx, fy, len);
        r.add("modification-integrals-" + to_string(side), "modification-integrals", same,
              same ? "" : "dimensions " + std::to_string(x.dim()) + " and " + std::to_string(y.dim()),
              "dimension " + std::to_string(x.dim()));
    }
    return r;
}

Modification modify(const AlgebroidPtr& m, const Modifier& mod) {
    Modification out;
    out.modifier = check_modifier(*m, mod);
    if (!out.modifier.valid) {
        throw MathematicalRejection("left-modifier", "not a modifier: " + first_failure(out.modifier.report));
    }
    const Matrix& theta_b = *out.modifier.theta_b;
    const Matrix& theta_c = *out.modifier.theta_c;
    out.algebroid = make_algebroid(modified_data(*m, mod, theta_b, theta_c));
    const Algebroid& t = *out.algebroid;
    const FiniteAlgebra& a = m->algebra();
    const std::size_t n = m->dim();
    const Matrix id = Matrix::identity(n);
    Report& r = out.report;
    const Matrix tl_inv = invert(mod.theta_lambda, "left-modifier", "Θ_λ");
    const Matrix tr_inv = invert(mod.theta_rho, "left-modifier", "Θ_ρ");
    const Matrix lt_inv = invert(mod.lambda_theta, "right-modifier", "_λΘ");
    const Matrix rt_inv = invert(mod.rho_theta, "right-modifier", "_ρΘ");

    const auto derived = [&](const Derivation& d, const std::vector<std::pair<Matrix, std::string>>& expected,
                             const std::string& axiom) {
        FirstFailure f;
        if (!d.map) {
            f.record("no solution: " + d.witness);
        } else {
            for (const auto& [matrix, what] : expected) {
                compare(f, *d.map, matrix, what);
            }
        }
        add(r, axiom, axiom, f);
    };
    if (m->counit_b() && m->counit_c()) {
        const Matrix& eb = *m->counit_b();
        const Matrix& ec = *m->counit_c();
        derived(derive_left_counit(t), {{eb * tr_inv, "ε_B∘Θ_ρ⁻¹"}, {theta_b * eb * tl_inv, "θ∘ε_B∘Θ_λ⁻¹"}},
                "modified-lt-counit");
        derived(derive_right_counit(t), {{ec * lt_inv, "ε_C∘_λΘ⁻¹"}, {theta_c * ec * rt_inv, "θ∘ε_C∘_ρΘ⁻¹"}},
                "modified-rt-counit");
    }
    const Matrix s = antipode_of(*m);
    derived(derive_antipode(t),
            {{mod.theta_rho * s * rt_inv, "Θ_ρ∘S∘_ρΘ⁻¹"}, {mod.lambda_theta * s * tl_inv, "_λΘ∘S∘Θ_λ⁻¹"}},
            "modified-antipode");

    FirstFailure tl;
    FirstFailure tr;
    const Matrix tr_second = kronecker(id, mod.theta_rho);
    const Matrix tl_first = kronecker(mod.theta_lambda, id);
    const Vector& one = a.one();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::string at = pair(a, i, a, j);
            // T_λ(a ⊗ b) = Δ(b)(a ⊗ 1), T_ρ(a ⊗ b) = Δ(a)(1 ⊗ b).
            const Vector new_tl = t.product2(t.delta_b(a.basis(j)), tensor(a.basis(i), one));
            compare_in(tl, t.q_b(), new_tl, tr_second.apply(m->product2(m->delta_b(a.basis(j)), tensor(a.basis(i), one))),
                       "(ι⊗Θ_ρ)∘T_λ at " + at);
            compare_in(tl, t.q_b(), new_tl,
                       tl_first.apply(m->product2(m->delta_b(a.basis(j)), tensor(tl_inv.column(i), one))),
                       "(Θ_λ⊗ι)∘T_λ∘(Θ_λ⊗ι)⁻¹ at " + at);
            const Vector new_tr = t.product2(t.delta_b(a.basis(i)), tensor(one, a.basis(j)));
            compare_in(tr, t.q_b(), new_tr, tl_first.apply(m->product2(m->delta_b(a.basis(i)), tensor(one, a.basis(j)))),
                       "(Θ_λ⊗ι)∘T_ρ at " + at);
            compare_in(tr, t.q_b(), new_tr,
                       tr_second.apply(m->product2(m->delta_b(a.basis(i)), tensor(one, tr_inv.column(j)))),
                       "(ι⊗Θ_ρ)∘T_ρ∘(ι⊗Θ_ρ)⁻¹ at " + at);
        }
    }
    add(r, "theta-tl", "theta-tl", tl);
    add(r, "theta-tr", "theta-tr", tr);

    r.append(left_isomorphism(*m, t, mod.theta_lambda, theta_b), "(Θ_λ, θ) ");
    r.append(left_isomorphism(*m, t, mod.theta_rho, Matrix::identity(m->base_b().dim())), "(Θ_ρ, ι) ");
    r.append(verify_regular_mha(t), "modified ");
    if (out.modifier.self_adjoint) {
        r.append(verify_star(t), "modified ");
    }
    if (!r.passed()) {
        throw std::logic_error("the modification fails " + first_failure(r));
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Groupoid convolution algebras.

Matrix GroupoidRn::sigma_one() const { return diagonal(cocycle); }

GroupoidRn groupoid_rn_modifier(const FiniteGroupoid& groupoid, const Vector& mu, const Field& field) {
    const std::size_t n = groupoid.size();
    const std::size_t u = groupoid.unit_count();
    if (mu.size() != u) {
        throw MathematicalRejection("quasi-invariant", "μ needs one value per unit");
    }
    std::vector<mpq_class> m;
    for (const Scalar& s : mu) {
        const auto q = s.as_rational();
        if (!q || *q <= 0) {
            throw MathematicalRejection("quasi-invariant", "μ must be a positive rational function on the units");
        }
        m.push_back(*q);
    }
    GroupoidRn out;
    std::vector<mpq_class> d(n);
    std::vector<std::uint64_t> missing;
    for (std::size_t g = 0; g < n; ++g) {
        d[g] = m[groupoid.target_unit(g)] / m[groupoid.source_unit(g)];
        out.cocycle.emplace_back(d[g]);
        const auto root = field.sqrt(d[g]);
        if (!root) {
            const std::uint64_t k = Field::squarefree_part(d[g]);
            if (std::find(missing.begin(), missing.end(), k) == missing.end()) {
                missing.push_back(k);
            }
        } else {
            out.cocycle_half.push_back(*root);
        }
    }
    if (!missing.empty()) {
        std::string roots;
        std::string flags;
        for (std::uint64_t k : missing) {
            roots += (roots.empty() ? "√" : ", √") + std::to_string(k);
            flags += (flags.empty() ? "--sqrt " : " --sqrt ") + std::to_string(k);
        }
        throw MathematicalRejection("radon-nikodym-sqrt", "D^{1/2} needs " + roots + ", which the field lacks",
                                    "extend the field with " + flags);
    }
    out.algebroid = build_convolution_algebroid(groupoid);

    Report& r = out.report;
    FirstFailure cocycle;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (const auto c = groupoid.compose(a, b); c && d[*c] != d[a] * d[b]) {
                cocycle.record("D(" + groupoid.label(a) + groupoid.label(b) + ") ≠ D(" + groupoid.label(a) + ")D(" +
                               groupoid.label(b) + ")");
            }
        }
    }
    add(r, "rn-cocycle", "radon-nikodym", cocycle);
    // ν(f) = Σ_u μ(u) Σ_{t(γ)=u} f(γ) and ν⁻¹(f) = Σ_u μ(u) Σ_{s(γ)=u} f(γ); ν = Dν⁻¹.
    FirstFailure derivative;
    for (std::size_t g = 0; g < n; ++g) {
        mpq_class nu = 0;
        mpq_class nu_inv = 0;
        for (std::size_t v = 0; v < u; ++v) {
            nu += groupoid.target_unit(g) == v ? m[v] : mpq_class(0);
            nu_inv += groupoid.source_unit(g) == v ? m[v] : mpq_class(0);
        }
        if (nu != d[g] * nu_inv) {
            derivative.record("at " + groupoid.label(g));
        }
    }
    add(r, "rn-derivative", "radon-nikodym", derivative);
    FirstFailure squares;
    for (std::size_t g = 0; g < n; ++g) {
        if (out.cocycle_half[g] * out.cocycle_half[g] != out.cocycle[g]) {
            squares.record("at " + groupoid.label(g));
        }
    }
    add(r, "rn-square-root", "radon-nikodym", squares);

    std::vector<Scalar> inv_half;
    for (const Scalar& s : out.cocycle_half) {
        inv_half.push_back(s.inverse());
    }
    const Matrix half = diagonal(out.cocycle_half);
    const Matrix minus_half = diagonal(inv_half);
    out.modifier = {"groupoid_rn", half, half, minus_half, minus_half};
    return out;
}

RnPipeline groupoid_rn_pipeline(const FiniteGroupoid& groupoid, const Vector& mu, const Field& field) {
    const GroupoidRn rn = groupoid_rn_modifier(groupoid, mu, field);
    RnPipeline out;
    out.report.append(rn.report);
    out.modification = modify(rn.algebroid, rn.modifier);
    const Algebroid& before = *rn.algebroid;
    const Algebroid& after = *out.modification.algebroid;
    const FiniteAlgebra& a = before.algebra();
    const std::size_t n = groupoid.size();
    const std::size_t u = groupoid.unit_count();
    Report& r = out.report;
    r.add("rn-trivial-on-base", "groupoid-rn", out.modification.modifier.trivial_on_base);
    r.add("rn-self-adjoint", "groupoid-rn", out.modification.modifier.self_adjoint);

    const BaseWeight w{mu, mu};
    counitality_entries(r, before, after, w);

    // The displayed comultiplications, evaluated on pairs (γ', γ'').
    FirstFailure displayed_b;
    FirstFailure displayed_c;
    for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t g = 0; g < n; ++g) {
            for (std::size_t h = 0; h < n; ++h) {
                Vector left(n * n);
                Vector right(n * n);
                for (std::size_t x = 0; x < n; ++x) {
                    for (std::size_t y = 0; y < n; ++y) {
                        // Σ_γ f(γ)D^{1/2}(γ) g(γ⁻¹γ') h(γ⁻¹γ'') with f = δ_f, g = δ_g, h = δ_h.
                        const std::size_t fi = groupoid.inverse(f);
                        const auto gx = groupoid.compose(fi, x);
                        const auto hy = groupoid.compose(fi, y);
                        if (gx && hy && *gx == g && *hy == h) {
                            left[x * n + y] += rn.cocycle_half[f];
                        }
                        const auto xg = groupoid.compose(x, fi);
                        const auto yh = groupoid.compose(y, fi);
                        if (xg && yh && *xg == g && *yh == h) {
                            right[x * n + y] += rn.cocycle_half[f].inverse();
                        }
                    }
                }
                const std::string at = "(" + a.label(f) + ", " + a.label(g) + ", " + a.label(h) + ")";
                compare_in(displayed_b, after.q_b(), after.product2(after.delta_b(a.basis(f)), tensor(a.basis(g), a.basis(h))),
                           left, at);
                compare_in(displayed_c, after.q_c(), after.product2(tensor(a.basis(g), a.basis(h)), after.delta_c(a.basis(f))),
                           right, at);
            }
        }
    }
    add(r, "rn-displayed-left-comultiplication", "groupoid-rn", displayed_b);
    add(r, "rn-displayed-right-comultiplication", "groupoid-rn", displayed_c);

    FirstFailure counits;
    const Derivation eb = derive_left_counit(after);
    const Derivation ec = derive_right_counit(after);
    if (!eb.map || !ec.map) {
        counits.record("the modification has no counits");
    } else {
        Matrix expected_b(u, n);
        Matrix expected_c(u, n);
        for (std::size_t g = 0; g < n; ++g) {
            expected_b.at(groupoid.target_unit(g), g) = rn.cocycle_half[g].inverse();
            expected_c.at(groupoid.source_unit(g), g) = rn.cocycle_half[g];
        }
        compare(counits, *eb.map, expected_b, "ε̃_B(f)(u) = Σ_{t(γ)=u} f(γ)D^{-1/2}(γ)");
        compare(counits, *ec.map, expected_c, "ε̃_C(f)(u) = Σ_{s(γ)=u} f(γ)D^{1/2}(γ)");
    }
    add(r, "rn-modified-counits", "groupoid-rn", counits);
    const Derivation s = derive_antipode(after);
    r.add("rn-antipode-unchanged", "groupoid-rn", s.map && *s.map == antipode_of(before), s.witness);

    r.append(integral_spaces_coincide(before, after));
    Matrix restrict(u, n);
    for (std::size_t v = 0; v < u; ++v) {
        restrict.at(v, groupoid.units()[v]) = Scalar(1);
    }
    const bool left_inv = check_partial_integral(after, restrict, IntegralSide::left).invariant();
    const bool right_inv = check_partial_integral(after, restrict, IntegralSide::right).invariant();
    r.add("rn-restriction-integral", "modification-integrals", left_inv && right_inv,
          left_inv ? (right_inv ? "" : "not right invariant") : "not left invariant");

    measure(out, w, restrict, restrict);
    if (out.measured) {
        const ModularAutomorphism sigma = modular_automorphism(*out.measured, IntegralSide::left);
        const Matrix sigma_one = rn.sigma_one();
        r.add("rn-modular-automorphism", "groupoid-rn", sigma.sigma == sigma_one,
              sigma.sigma == sigma_one ? "" : "σ^φ differs from σ_1");
        FirstFailure identity;
        const Vector& phi = out.measured->phi;
        for (std::size_t f = 0; f < n; ++f) {
            for (std::size_t g = 0; g < n; ++g) {
                compare(identity, Vector{evaluate(phi, a.product(f, g))},
                        Vector{evaluate(phi, a.multiply(a.basis(g), sigma_one.column(f)))}, "at " + pair(a, f, a, g));
            }
        }
        add(r, "rn-modular-identity", "groupoid-rn", identity);
        const ModularElement delta = modular_element(*out.measured);
        r.add("rn-modular-element-trivial", "groupoid-rn", delta.plus == a.one() && delta.minus == a.one(),
              "δ⁺ = " + element_string(a, delta.plus));
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Crossed products.

Vector HopfCocycle::at(const Vector& h) const {
    Vector out(values.empty() ? 0 : values.front().size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!h[k].is_zero()) {
            axpy(h[k], values[k], out);
        }
    }
    return out;
}

HopfCocycle radon_nikodym_cocycle(const FiniteAlgebra& c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                                  const Vector& mu) {
    if (!is_faithful(c, mu)) {
        throw MathematicalRejection("quasi-invariant", "μ is not faithful on C");
    }
    const std::size_t nc = c.dim();
    const std::size_t nh = hopf.dim();
    const FiniteAlgebra& h = *hopf.algebra;
    const Matrix pairing = gram_matrix(c, mu).transpose();
    HopfCocycle out;
    for (std::size_t k = 0; k < nh; ++k) {
        const Matrix sk = action_matrix(action, hopf.antipode.column(k), nc);
        Vector target(nc);
        for (std::size_t j = 0; j < nc; ++j) {
            target[j] = evaluate(mu, sk.column(j));
        }
        auto d = solve_linear(pairing, target);
        if (!d) {
            throw MathematicalRejection("quasi-invariant", "no D_h with μ(S(h) ▷ y) = μ(D_h y) at " + h.label(k));
        }
        out.values.push_back(std::move(*d));
    }
    Report& r = out.report;
    FirstFailure defining;
    for (std::size_t k = 0; k < nh; ++k) {
        for (std::size_t j = 0; j < nc; ++j) {
            const Scalar lhs = evaluate(mu, act(action, hopf.antipode.column(k), c.basis(j)));
            const Scalar rhs = evaluate(mu, c.multiply(out.values[k], c.basis(j)));
            if (lhs != rhs) {
                defining.record("at " + pair(h, k, c, j));
            }
        }
    }
    add(r, "rn-defining", "radon-nikodym", defining);
    r.add("rn-unital", "one-cocycle", out.at(h.one()) == c.one(), element_string(c, out.at(h.one())));
    FirstFailure cocycle;
    for (std::size_t p = 0; p < nh; ++p) {
        for (std::size_t q = 0; q < nh; ++q) {
            Vector rhs(nc);
            for (const Leg2& leg : coproduct(hopf, p)) {
                axpy(leg.coefficient, c.multiply(out.values[leg.first], act(action, h.basis(leg.second), out.values[q])),
                     rhs);
            }
            compare(cocycle, out.at(h.product(p, q)), rhs, "D(hg) at " + pair(h, p, h, q));
        }
    }
    add(r, "rn-cocycle", "one-cocycle", cocycle);
    return out;
}

namespace {

/// D_{h(1)}(h(2) ▷ y) = (h(1) ▷ y)D_{h(2)}.
std::optional<std::string> commutation_witness(const FiniteAlgebra& c, const FiniteHopf& hopf,
                                               const std::vector<Matrix>& action, const HopfCocycle& d) {
    const FiniteAlgebra& h = *hopf.algebra;
    for (std::size_t k = 0; k < hopf.dim(); ++k) {
        for (std::size_t j = 0; j < c.dim(); ++j) {
            Vector lhs(c.dim());
            Vector rhs(c.dim());
            for (const Leg2& leg : coproduct(hopf, k)) {
                axpy(leg.coefficient, c.multiply(d.values[leg.first], act(action, h.basis(leg.second), c.basis(j))), lhs);
                axpy(leg.coefficient, c.multiply(act(action, h.basis(leg.first), c.basis(j)), d.values[leg.second]), rhs);
            }
            if (lhs != rhs) {
                return pair(h, k, c, j);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

CrossedRn crossed_rn_modifier(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                              const Vector& mu) {
    CrossedRn out;
    out.algebroid = build_crossed_product(c, hopf, action);
    out.cocycle = radon_nikodym_cocycle(*c, hopf, action, mu);
    if (const auto w = commutation_witness(*c, hopf, action, out.cocycle)) {
        throw MathematicalRejection("chb-commutation", "D_{h(1)}(h(2) ▷ y) differs from (h(1) ▷ y)D_{h(2)} at " + *w);
    }
    const FiniteAlgebra& a = out.algebroid->algebra();
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t nc = c->dim();
    const std::size_t nh = hopf.dim();
    const std::size_t n = a.dim();
    const HopfCocycle& d = out.cocycle;
    out.beta = Matrix(n, n);
    out.beta_dagger = Matrix(n, n);
    Matrix beta_bar(n, n);
    const Matrix& s = hopf.antipode;
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t k = 0; k < nh; ++k) {
            const std::size_t col = i * nh + k;
            Vector b(n);
            Vector bd(n);
            Vector bb(n);
            for (const Leg2& leg : coproduct(hopf, k)) {
                axpy(leg.coefficient, tensor(c->multiply(c->basis(i), d.values[leg.first]), h.basis(leg.second)), b);
                axpy(leg.coefficient, tensor(c->multiply(d.values[leg.second], c->basis(i)), h.basis(leg.first)), bd);
            }
            // β̄(y#h) = y(h(1) ▷ D_{S(h(2))})#h(3).
            for (const Leg3& leg : coproduct3(hopf, k)) {
                const Vector twisted = act(action, h.basis(leg.first), d.at(s.column(leg.second)));
                axpy(leg.coefficient, tensor(c->multiply(c->basis(i), twisted), h.basis(leg.third)), bb);
            }
            for (std::size_t r = 0; r < n; ++r) {
                out.beta.at(r, col) = b[r];
                out.beta_dagger.at(r, col) = bd[r];
                beta_bar.at(r, col) = bb[r];
            }
        }
    }
    Report& r = out.report;
    r.append(d.report);
    r.add("chb-commutation", "chb-commutation", true);
    const auto wb = automorphism_witness(a, out.beta);
    const auto wd = automorphism_witness(a, out.beta_dagger);
    r.add("beta-automorphism", "ch-modifier", !wb && !wd, wb ? "β_D: " + *wb : (wd ? "β†_D: " + *wd : ""));
    const Matrix id = Matrix::identity(n);
    r.add("beta-inverse", "ch-modifier", beta_bar * out.beta == id && out.beta * beta_bar == id,
          "β̄(y#h) = y(h(1) ▷ D_{S(h(2))})#h(3)");
    if (!r.passed()) {
        throw std::logic_error("the Radon–Nikodym construction fails " + first_failure(r));
    }
    out.modifier = {"crossed_rn", invert(out.beta_dagger, "ch-modifier", "β†_D"), invert(out.beta, "ch-modifier", "β_D"),
                    id, id};
    return out;
}

RnPipeline crossed_rn_pipeline(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                               const Vector& mu) {
    const CrossedRn rn = crossed_rn_modifier(c, hopf, action, mu);
    RnPipeline out;
    out.report.append(rn.report);
    out.modification = modify(rn.algebroid, rn.modifier);
    const Algebroid& before = *rn.algebroid;
    const Algebroid& after = *out.modification.algebroid;
    const FiniteAlgebra& a = before.algebra();
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t nc = c->dim();
    const std::size_t nh = hopf.dim();
    Report& r = out.report;
    const BaseWeight w{mu, mu};
    counitality_entries(r, before, after, w);

    // μ(ε̃_B(y#h)) = μ(D_h y) and μ(ε̃_C(y#h)) = μ(S(h) ▷ y).
    FirstFailure values;
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t k = 0; k < nh; ++k) {
            const std::size_t col = i * nh + k;
            const Scalar lhs_b = evaluate(mu, after.counit_b()->column(col));
            const Scalar rhs_b = evaluate(mu, c->multiply(rn.cocycle.values[k], c->basis(i)));
            const Scalar lhs_c = evaluate(mu, after.counit_c()->column(col));
            const Scalar rhs_c = evaluate(mu, act(action, hopf.antipode.column(k), c->basis(i)));
            compare(values, Vector{lhs_b, lhs_c}, Vector{rhs_b, rhs_c}, "at " + a.label(col));
        }
    }
    add(r, "rn-modified-counit-values", "crossed-rn", values);
    r.append(integral_spaces_coincide(before, after));

    const IntegralPair p = crossed_integrals(*c, hopf);
    measure(out, w, p.left, p.right);
    if (out.measured) {
        // σ^φ(yh) = yσ_H(h(2))D_{S⁻¹(h(1))}.
        const Matrix sh_inv = invert(hopf.antipode, "hopf-ch", "S_H");
        const Matrix sigma = modular_automorphism(*out.measured, IntegralSide::left).sigma;
        FirstFailure formula;
        for (std::size_t i = 0; i < nc; ++i) {
            for (std::size_t k = 0; k < nh; ++k) {
                Vector expected(a.dim());
                for (const Leg2& leg : coproduct(hopf, k)) {
                    const Vector y = tensor(c->basis(i), h.one());
                    const Vector sh = tensor(c->one(), hopf.modular_automorphism.column(leg.second));
                    const Vector dd = tensor(rn.cocycle.at(sh_inv.column(leg.first)), h.one());
                    axpy(leg.coefficient, a.multiply(a.multiply(y, sh), dd), expected);
                }
                compare(formula, sigma.column(i * nh + k), expected, "at " + a.label(i * nh + k));
            }
        }
        add(r, "rn-modular-formula", "crossed-rn", formula);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Two-sided crossed products over C and C^op.

TwoSidedRn twosided_rn_modifier(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                                const Vector& mu, const Matrix& sigma) {
    const std::size_t nc = c->dim();
    const std::size_t nh = hopf.dim();
    const FiniteAlgebra& h = *hopf.algebra;
    if (const auto w = automorphism_witness(*c, sigma)) {
        throw MathematicalRejection("modular", "σ is not an automorphism of C: " + *w);
    }
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            if (evaluate(mu, c->product(i, j)) != evaluate(mu, c->multiply(c->basis(j), sigma.column(i)))) {
                throw MathematicalRejection("modular", "μ(ab) differs from μ(bσ(a)) at " + pair(*c, i, *c, j));
            }
        }
    }
    const Matrix s2 = hopf.antipode * hopf.antipode;
    for (std::size_t k = 0; k < nh; ++k) {
        const Matrix lhs = sigma * action[k];
        const Matrix rhs = action_matrix(action, s2.column(k), nc) * sigma;
        if (lhs != rhs) {
            throw MathematicalRejection("chb-modular", "σ(h ▷ c) differs from S²(h) ▷ σ(c) at " + h.label(k));
        }
    }
    TwoSidedRn out;
    out.sigma = sigma;
    const AlgebraPtr b = std::make_shared<const FiniteAlgebra>(c->opposite());
    HopfAction both;
    both.on_c = action;
    for (std::size_t k = 0; k < nh; ++k) {
        // x ◁ h = S_H(h) ▷ x.
        both.on_b.push_back(action_matrix(action, hopf.antipode.column(k), nc));
    }
    out.algebroid = build_two_sided(c, hopf, b, both, Matrix::identity(nc), sigma);
    out.cocycle = radon_nikodym_cocycle(*c, hopf, action, mu);
    const HopfCocycle& d = out.cocycle;
    Report& r = out.report;
    r.append(d.report);

    FirstFailure sigma_d;
    FirstFailure op_invariant;
    const Matrix sh_inv = invert(hopf.antipode, "hopf-chb", "S_H");
    for (std::size_t k = 0; k < nh; ++k) {
        compare(sigma_d, sigma.apply(d.values[k]), d.at(s2.column(k)), "σ(D_h) at " + h.label(k));
        for (std::size_t j = 0; j < nc; ++j) {
            const Scalar lhs = evaluate(mu, act(action, sh_inv.column(k), c->basis(j)));
            const Scalar rhs = evaluate(mu, c->multiply(c->basis(j), d.values[k]));
            if (lhs != rhs) {
                op_invariant.record("at " + pair(h, k, *c, j));
            }
        }
    }
    add(r, "rn-sigma-cocycle", "chb-modification-2", sigma_d);
    add(r, "rn-op-quasi-invariant", "chb-modification-2", op_invariant);
    const auto commute = commutation_witness(*c, hopf, action, d);
    r.add("chb-commutation", "chb-modification-2", !commute, commute.value_or(""));

    const FiniteAlgebra& a = out.algebroid->algebra();
    const std::size_t n = a.dim();
    const Vector& one_c = c->one();
    const Vector& one_h = h.one();
    const Vector& one_b = b->one();
    Matrix theta_lambda(n, n);
    Matrix theta_rho(n, n);
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t k = 0; k < nh; ++k) {
            for (std::size_t j = 0; j < nc; ++j) {
                const std::size_t col = (i * nh + k) * nc + j;
                Vector tl(n);
                Vector tr(n);
                for (const Leg2& leg : coproduct(hopf, k)) {
                    // y (D_{h(2)})^op h(1) x and y D_{h(1)} h(2) x.
                    const Vector y = tensor(c->basis(i), one_h, one_b);
                    const Vector dop = tensor(one_c, one_h, d.values[leg.second]);
                    const Vector h1 = tensor(one_c, h.basis(leg.first), one_b);
                    const Vector x = tensor(one_c, one_h, b->basis(j));
                    axpy(leg.coefficient, a.multiply(a.multiply(a.multiply(y, dop), h1), x), tl);
                    axpy(leg.coefficient,
                         tensor(c->multiply(c->basis(i), d.values[leg.first]), h.basis(leg.second), b->basis(j)), tr);
                }
                for (std::size_t row = 0; row < n; ++row) {
                    theta_lambda.at(row, col) = tl[row];
                    theta_rho.at(row, col) = tr[row];
                }
            }
        }
    }
    const auto wl = automorphism_witness(a, theta_lambda);
    const auto wr = automorphism_witness(a, theta_rho);
    r.add("twosided-theta-automorphism", "chb-modification-2", !wl && !wr,
          wl ? "Θ_λ: " + *wl : (wr ? "Θ_ρ: " + *wr : ""));
    if (!r.passed()) {
        throw std::logic_error("the Radon–Nikodym construction fails " + first_failure(r));
    }
    const Matrix id = Matrix::identity(n);
    out.modifier = {"twosided_rn", invert(theta_lambda, "chb-modification-2", "Θ_λ"),
                    invert(theta_rho, "chb-modification-2", "Θ_ρ"), id, id};
    return out;
}

RnPipeline twosided_rn_pipeline(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                                const Vector& mu, const Matrix& sigma) {
    const TwoSidedRn rn = twosided_rn_modifier(c, hopf, action, mu, sigma);
    RnPipeline out;
    out.report.append(rn.report);
    out.modification = modify(rn.algebroid, rn.modifier);
    const Algebroid& before = *rn.algebroid;
    const Algebroid& after = *out.modification.algebroid;
    const FiniteAlgebra& a = before.algebra();
    const FiniteAlgebra& h = *hopf.algebra;
    const FiniteAlgebra& b = before.base_b();
    Report& r = out.report;
    // μ^op on B = C^op has the coordinates of μ.
    const BaseWeight w{mu, mu};
    counitality_entries(r, before, after, w);
    r.append(integral_spaces_coincide(before, after));

    const IntegralPair p = two_sided_integrals(*c, hopf, b, mu, mu);
    measure(out, w, p.left, p.right);
    if (out.measured) {
        const Matrix sig = modular_automorphism(*out.measured, IntegralSide::left).sigma;
        const Matrix sigma_inv = invert(sigma, "modular", "σ");
        const Matrix sh_inv = invert(hopf.antipode, "hopf-chb", "S_H");
        FirstFailure formula;
        compare(formula, sig * before.embed_c(), before.embed_c() * sigma, "σ^φ(y) = σ(y)");
        compare(formula, sig * before.embed_b(), before.embed_b() * sigma_inv, "σ^φ(y^op) = σ⁻¹(y)^op");
        const Vector& one_c = c->one();
        const Vector& one_b = b.one();
        for (std::size_t k = 0; k < hopf.dim(); ++k) {
            // σ^φ(h) = σ_H(h(2)) D_{S(h(1))} (D_{S⁻¹(h(3))})^op.
            Vector expected(a.dim());
            for (const Leg3& leg : coproduct3(hopf, k)) {
                const Vector sh = tensor(one_c, hopf.modular_automorphism.column(leg.second), one_b);
                const Vector dc = tensor(rn.cocycle.at(hopf.antipode.column(leg.first)), h.one(), one_b);
                const Vector db = tensor(one_c, h.one(), rn.cocycle.at(sh_inv.column(leg.third)));
                axpy(leg.coefficient, a.multiply(a.multiply(sh, dc), db), expected);
            }
            compare(formula, sig.apply(tensor(one_c, h.basis(k), one_b)), expected, "σ^φ at " + h.label(k));
        }
        add(r, "rn-modular-formula", "chb-modular-automorphism", formula);
    }
    return out;
}

}  // namespace algebroid
