#include "algebroid/structure.hpp"

#include <stdexcept>

#include "check_util.hpp"

namespace algebroid {

namespace {

using namespace detail;

Matrix descended(const InducedMap& map, const std::string& what) {
    if (!map.well_defined()) {
        throw std::logic_error(what + " does not descend although its factor is a module map");
    }
    return map.matrix;
}

/// a -> slice(Δ(a)) for a slice defined on the balanced tensor q.
Matrix slice_operator(const BalancedTensor& q, const Matrix& slice, const Matrix& delta) {
    return Matrix::from_function(slice.rows(), delta.cols(),
                                 [&](std::size_t k) { return slice.apply(q.project(delta.column(k))); });
}

Matrix inverse_or_throw(const Matrix& m, const std::string& what) {
    auto inv = inverse(m);
    if (!inv) {
        throw std::logic_error(what + " is not invertible");
    }
    return std::move(*inv);
}

std::optional<Vector> counit_if_counital(const Algebroid& m, const BaseWeight& w) {
    BaseWeightCheck c = check_base_weight(m, w);
    if (!c.counital) {
        return std::nullopt;
    }
    return std::move(c.counit_functional);
}

void compare_functionals(FirstFailure& f, const FiniteAlgebra& a, const Vector& lhs, const Vector& rhs,
                         const std::string& what) {
    if (f.ok() && lhs != rhs) {
        f.record(what + ": " + element_string(a, lhs) + " vs " + element_string(a, rhs));
    }
}

/// Coordinates of an element of A lying in the image of a base embedding.
std::optional<Vector> base_coordinates(const Matrix& embed, const Vector& a) { return solve_linear(embed, a); }

bool span_contains(const std::vector<Vector>& span, const Vector& v, std::size_t n) {
    RowEchelon e(n);
    for (const Vector& s : span) {
        e.insert(s);
    }
    return e.contains(v);
}

std::vector<Vector> independent(const std::vector<Vector>& vectors, std::size_t n) {
    RowEchelon e(n);
    std::vector<Vector> out;
    for (const Vector& v : vectors) {
        if (e.insert(v)) {
            out.push_back(v);
        }
    }
    return out;
}

/// c -> ω(c a) and c -> ω(a c) for every basis element of a base algebra embedded in A.
std::vector<Vector> translates(const FiniteAlgebra& a, const Vector& omega, const Matrix& embed, bool on_right) {
    std::vector<Vector> out;
    for (std::size_t u = 0; u < embed.cols(); ++u) {
        const Vector x = embed.column(u);
        Vector f(a.dim());
        for (std::size_t k = 0; k < a.dim(); ++k) {
            f[k] = on_right ? evaluate(omega, a.multiply(a.basis(k), x)) : evaluate(omega, a.multiply(x, a.basis(k)));
        }
        out.push_back(std::move(f));
    }
    return out;
}

/// c -> ω(c a) for a in A.
Vector right_translate(const FiniteAlgebra& a, const Vector& omega, const Vector& element) {
    Vector f(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) {
        f[k] = evaluate(omega, a.multiply(a.basis(k), element));
    }
    return f;
}

Vector left_translate(const FiniteAlgebra& a, const Vector& omega, const Vector& element) {
    Vector f(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) {
        f[k] = evaluate(omega, a.multiply(element, a.basis(k)));
    }
    return f;
}

bool invertible_element(const FiniteAlgebra& a, const Vector& x) {
    return rank(a.left_multiplication(x)) == a.dim();
}

std::optional<Vector> element_inverse(const FiniteAlgebra& a, const Vector& x) {
    const auto inv = inverse(a.left_multiplication(x));
    if (!inv) {
        return std::nullopt;
    }
    return inv->apply(a.one());
}

/// Compares Δ∘σ with (f ⊗ g)∘Δ in a balanced tensor product.
void intertwines(FirstFailure& fail, const FiniteAlgebra& a, const BalancedTensor& q, const Matrix& delta,
                 const Matrix& sigma, const Matrix& f, const Matrix& g) {
    const Matrix fg = kronecker(f, g);
    for (std::size_t k = 0; k < a.dim() && fail.ok(); ++k) {
        compare(fail, q.quotient(), delta.apply(sigma.column(k)), fg.apply(delta.column(k)), "at " + a.label(k));
    }
}

}  // namespace

std::string to_string(ConvolutionKind kind) { return kind == ConvolutionKind::lambda ? "lambda" : "rho"; }

ConvolutionOperator convolution(const Algebroid& m, const BaseWeight& w, const Vector& upsilon, ConvolutionKind kind) {
    const FactorizationResult fr = factorize(m, upsilon, w);
    if (!fr.factors) {
        throw MathematicalRejection("factorizable", "the functional has no factor " + fr.failure);
    }
    const Factorization& f = *fr.factors;
    ConvolutionOperator out;
    out.kind = kind;
    out.functional = upsilon;
    if (kind == ConvolutionKind::lambda) {
        // (Bυ ⊗ ι)∘Δ_B and (S_C⁻¹υ_B ⊗ ι)∘Δ_C.
        out.from_b = slice_operator(m.q_b(), descended(try_slice_left(m.q_b(), f.b_left), "Bυ ⊗ ι"),
                                    m.delta_b_matrix());
        out.from_c = slice_operator(m.q_c(),
                                    descended(try_slice_left(m.q_c(), m.s_c_inverse() * f.b_right), "S_C⁻¹υ_B ⊗ ι"),
                                    m.delta_c_matrix());
    } else {
        // (ι ⊗ S_B⁻¹Cυ)∘Δ_B and (ι ⊗ υ_C)∘Δ_C.
        out.from_b = slice_operator(m.q_b(),
                                    descended(try_slice_right(m.q_b(), m.s_b_inverse() * f.c_left), "ι ⊗ S_B⁻¹Cυ"),
                                    m.delta_b_matrix());
        out.from_c = slice_operator(m.q_c(), descended(try_slice_right(m.q_c(), f.c_right), "ι ⊗ υ_C"),
                                    m.delta_c_matrix());
    }
    out.matrix = out.from_b;

    const std::string name = to_string(kind);
    FirstFailure sides;
    compare(sides, out.from_b, out.from_c, name + " from Δ_B vs Δ_C");
    add(out.report, name + "-two-sided", "convolution", sides);

    if (const auto eps = counit_if_counital(m, w)) {
        FirstFailure recovery;
        compare_functionals(recovery, m.algebra(), pull_back(*eps, out.matrix), upsilon, "ε∘" + name + "(υ) vs υ");
        add(out.report, name + "-counit-recovery", "convolution", recovery);
    }
    return out;
}

Vector star_functional(const FiniteAlgebra& algebra, const Vector& omega) {
    const Matrix& j = algebra.involution();
    Vector out(algebra.dim());
    for (std::size_t k = 0; k < algebra.dim(); ++k) {
        out[k] = evaluate(omega, j.column(k)).conj();
    }
    return out;
}

Report convolution_identities(const Algebroid& m, const BaseWeight& w, const Vector& upsilon, const Vector& omega) {
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    Report r;
    const ConvolutionOperator lam = convolution(m, w, upsilon, ConvolutionKind::lambda);
    const ConvolutionOperator rho = convolution(m, w, omega, ConvolutionKind::rho);
    r.append(lam.report);
    r.append(rho.report);

    FirstFailure commute;
    compare(commute, lam.matrix * rho.matrix, rho.matrix * lam.matrix, "λ(υ)ρ(ω) vs ρ(ω)λ(υ)");
    add(r, "convolution-commute", "convolution", commute);

    FirstFailure pairing;
    compare_functionals(pairing, a, pull_back(upsilon, rho.matrix), pull_back(omega, lam.matrix),
                        "υ∘ρ(ω) vs ω∘λ(υ)");
    add(r, "convolution-pairing", "convolution", pairing);

    if (const auto eps = counit_if_counital(m, w)) {
        FirstFailure unit;
        compare(unit, convolution(m, w, *eps, ConvolutionKind::lambda).matrix, Matrix::identity(n), "λ(ε)");
        compare(unit, convolution(m, w, *eps, ConvolutionKind::rho).matrix, Matrix::identity(n), "ρ(ε)");
        add(r, "convolution-counit", "convolution-counit", unit);
    }

    const Matrix S = antipode_of(m);
    FirstFailure antipode;
    for (const Vector& f : {upsilon, omega}) {
        const Vector fs = pull_back(f, S);
        compare(antipode, convolution(m, w, f, ConvolutionKind::rho).matrix * S,
                S * convolution(m, w, fs, ConvolutionKind::lambda).matrix, "ρ(υ)∘S vs S∘λ(υ∘S)");
        compare(antipode, convolution(m, w, f, ConvolutionKind::lambda).matrix * S,
                S * convolution(m, w, fs, ConvolutionKind::rho).matrix, "λ(υ)∘S vs S∘ρ(υ∘S)");
    }
    add(r, "convolution-antipode", "convolution-2", antipode);

    // λ and ρ are C-bilinear and B-bilinear respectively in the unital case.
    FirstFailure linear;
    for (std::size_t u = 0; u < m.base_c().dim() && linear.ok(); ++u) {
        const Matrix ly = a.left_multiplication(m.embed_c().column(u));
        const Matrix ry = a.right_multiplication(m.embed_c().column(u));
        compare(linear, rho.matrix * ly, ly * rho.matrix, "ρ(ω)(yb) vs yρ(ω)(b)");
        compare(linear, rho.matrix * ry, ry * rho.matrix, "ρ(ω)(by) vs ρ(ω)(b)y");
    }
    for (std::size_t u = 0; u < m.base_b().dim() && linear.ok(); ++u) {
        const Matrix lx = a.left_multiplication(m.embed_b().column(u));
        const Matrix rx = a.right_multiplication(m.embed_b().column(u));
        compare(linear, lam.matrix * lx, lx * lam.matrix, "λ(υ)(xb) vs xλ(υ)(b)");
        compare(linear, lam.matrix * rx, rx * lam.matrix, "λ(υ)(bx) vs λ(υ)(b)x");
    }
    add(r, "convolution-base-linear", "convolution-2", linear);

    if (a.has_involution()) {
        bool star_instance = verify_star(m).passed();
        if (star_instance) {
            star_instance = star_functional(m.base_b(), w.mu_b) == w.mu_b &&
                            star_functional(m.base_c(), w.mu_c) == w.mu_c;
        }
        if (star_instance) {
            const Matrix& j = a.involution();
            const Matrix jc = j.conj();
            FirstFailure star;
            for (const Vector& f : {upsilon, omega}) {
                const Vector fs = star_functional(a, f);
                compare(star, convolution(m, w, fs, ConvolutionKind::rho).matrix,
                        j * convolution(m, w, f, ConvolutionKind::rho).matrix.conj() * jc, "ρ(∗∘υ∘∗)");
                compare(star, convolution(m, w, fs, ConvolutionKind::lambda).matrix,
                        j * convolution(m, w, f, ConvolutionKind::lambda).matrix.conj() * jc, "λ(∗∘υ∘∗)");
            }
            add(r, "convolution-star", "convolution-2", star);
        }
    }
    return r;
}

ModularAutomorphism modular_automorphism(const MeasuredAlgebroid& x, IntegralSide side) {
    const Algebroid& m = x.m();
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    const bool left = side == IntegralSide::left;
    const Vector& omega = left ? x.phi : x.psi;
    const std::string name = left ? "φ" : "ψ";

    const auto sigma = modular_automorphism_of(a, omega);
    if (!sigma) {
        throw std::logic_error("the Gram pairing of " + name + " is singular on an assembled instance");
    }
    ModularAutomorphism out;
    out.side = side;
    out.sigma = *sigma;
    Report& r = out.report;
    const std::string prefix = std::string("modular-automorphism-") + (left ? "phi" : "psi");

    FirstFailure defining;
    for (std::size_t i = 0; i < n && defining.ok(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Scalar lhs = evaluate(omega, a.product(i, j));
            const Scalar rhs = evaluate(omega, a.multiply(a.basis(j), out.sigma.column(i)));
            if (lhs != rhs) {
                defining.record(pair(a, i, a, j) + ": " + lhs.to_string() + " vs " + rhs.to_string());
                break;
            }
        }
    }
    add(r, prefix + "-defining", "modular-automorphism", defining);
    const auto hom = automorphism_witness(a, out.sigma);
    r.add(prefix + "-automorphism", "modular-automorphism", !hom, hom.value_or(""));

    const Matrix& S = x.antipode;
    const Matrix S_inv = inverse_or_throw(S, "the antipode");
    const Matrix S2 = S * S;
    const Matrix Sm2 = S_inv * S_inv;
    // σ^φ|_C = S²|_C and σ^ψ|_B = S⁻²|_B.
    const Matrix& fixed_embed = left ? m.embed_c() : m.embed_b();
    FirstFailure base;
    compare(base, out.sigma * fixed_embed, (left ? S2 : Sm2) * fixed_embed, left ? "σ|_C vs S²|_C" : "σ|_B vs S⁻²|_B");
    add(r, prefix + "-base", "modular-automorphism", base);

    FirstFailure db;
    FirstFailure dc;
    if (left) {
        intertwines(db, a, m.q_b(), m.delta_b_matrix(), out.sigma, S2, out.sigma);
        intertwines(dc, a, m.q_c(), m.delta_c_matrix(), out.sigma, S2, out.sigma);
    } else {
        intertwines(db, a, m.q_b(), m.delta_b_matrix(), out.sigma, out.sigma, Sm2);
        intertwines(dc, a, m.q_c(), m.delta_c_matrix(), out.sigma, out.sigma, Sm2);
    }
    add(r, prefix + "-deltab", "modular-automorphism", db);
    add(r, prefix + "-deltac", "modular-automorphism", dc);

    // φ·y = S²(y)·φ for y in C, and x·ψ = ψ·S²(x) for x in B.
    FirstFailure lemma;
    for (std::size_t u = 0; u < fixed_embed.cols() && lemma.ok(); ++u) {
        const Vector e = fixed_embed.column(u);
        const Vector s2e = S2.apply(e);
        const Vector lhs = left ? left_translate(a, omega, e) : right_translate(a, omega, e);
        const Vector rhs = left ? right_translate(a, omega, s2e) : left_translate(a, omega, s2e);
        compare_functionals(lemma, a, lhs, rhs, "base element " + std::to_string(u));
    }
    add(r, prefix + "-integrals-base", "integrals-modular-base", lemma);

    // σ^φ(M(B)) = M(B) and σ^ψ(M(C)) = M(C), reported rather than assumed.
    const Matrix& moved = left ? m.embed_b() : m.embed_c();
    const std::vector<Vector> base_span = image(moved);
    out.preserves_base = true;
    for (std::size_t u = 0; u < moved.cols(); ++u) {
        if (!span_contains(base_span, out.sigma.apply(moved.column(u)), n)) {
            out.preserves_base = false;
        }
    }
    r.add(prefix + "-preserves-base", "modular-automorphism", out.preserves_base,
          left ? "σ^φ(B) ⊄ B" : "σ^ψ(C) ⊄ C");
    if (!out.preserves_base) {
        return out;
    }

    // φ_B(xa) = (S²σ)(x)φ_B(a), Bφ(ax) = Bφ(a)(σS²)⁻¹(x), and the ψ analogues over C.
    const FiniteAlgebra& b = left ? m.base_b() : m.base_c();
    const Factorization& f = left ? x.phi_factors : x.psi_factors;
    const Matrix& right_factor = left ? f.b_right : f.c_right;
    const Matrix& left_factor = left ? f.b_left : f.c_left;
    const Matrix twist_in = left ? S2 * out.sigma : Sm2 * out.sigma;
    const Matrix twist_out = inverse_or_throw(left ? out.sigma * S2 : out.sigma * Sm2, "σS^{±2}");
    FirstFailure formulas;
    for (std::size_t u = 0; u < moved.cols() && formulas.ok(); ++u) {
        const Vector e = moved.column(u);
        const auto in = base_coordinates(moved, twist_in.apply(e));
        const auto out_c = base_coordinates(moved, twist_out.apply(e));
        if (!in || !out_c) {
            formulas.record("twisted base element " + std::to_string(u) + " leaves the base");
            break;
        }
        for (std::size_t k = 0; k < n; ++k) {
            compare(formulas, right_factor.apply(a.multiply(e, a.basis(k))), b.multiply(*in, right_factor.column(k)),
                    "right factor at " + pair(b, u, a, k));
            compare(formulas, left_factor.apply(a.multiply(a.basis(k), e)), b.multiply(left_factor.column(k), *out_c),
                    "left factor at " + pair(a, k, b, u));
        }
    }
    add(r, prefix + "-factor-twist", left ? "bphi-phib" : "cpsi-psic", formulas);
    return out;
}

ModularElement modular_element(const MeasuredAlgebroid& x) {
    const Algebroid& m = x.m();
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    const Vector& phi = x.phi;
    const Matrix& S = x.antipode;
    const Matrix S_inv = inverse_or_throw(S, "the antipode");
    const Vector psi_plus = pull_back(phi, S);
    const Vector psi_minus = pull_back(phi, S_inv);
    const auto plus = dominate(a, psi_plus, phi);
    const auto minus = dominate(a, psi_minus, phi);
    if (!plus || !minus) {
        throw std::logic_error("φ is not faithful on an assembled instance");
    }
    ModularElement out;
    out.plus = plus->right;
    out.minus = minus->left;
    Report& r = out.report;
    const std::string eq = "modular-element-second";

    FirstFailure defining;
    compare_functionals(defining, a, right_translate(a, phi, out.plus), psi_plus, "δ⁺·φ vs φ∘S");
    compare_functionals(defining, a, left_translate(a, phi, out.minus), psi_minus, "φ·δ⁻ vs φ∘S⁻¹");
    add(r, "modular-element-defining", eq, defining);

    const bool invertible = invertible_element(a, out.plus) && invertible_element(a, out.minus);
    r.add("modular-element-invertible", eq, invertible, "δ⁺ or δ⁻ is not invertible");

    // Bφ(a)δ⁺ = λ(φ)(a) = δ⁻φ_B(a).
    const Matrix lam = convolution(m, x.weight, phi, ConvolutionKind::lambda).matrix;
    FirstFailure lambda;
    for (std::size_t k = 0; k < n && lambda.ok(); ++k) {
        const Vector bphi = m.embed_b().apply(x.phi_factors.b_left.column(k));
        const Vector phib = m.embed_b().apply(x.phi_factors.b_right.column(k));
        compare(lambda, a.multiply(bphi, out.plus), lam.column(k), "Bφ(a)δ⁺ vs λ(φ)(a) at " + a.label(k));
        compare(lambda, a.multiply(out.minus, phib), lam.column(k), "δ⁻φ_B(a) vs λ(φ)(a) at " + a.label(k));
    }
    add(r, "modular-element-convolution", eq, lambda);

    const Vector s_plus = S.apply(out.plus);
    FirstFailure antipode;
    compare(antipode, a.multiply(s_plus, out.minus), a.one(), "S(δ⁺)δ⁻");
    compare(antipode, a.multiply(out.minus, s_plus), a.one(), "δ⁻S(δ⁺)");
    add(r, "modular-element-antipode", eq, antipode);

    // φ = φ·δ⁻S(δ⁺).
    FirstFailure consistency;
    compare_functionals(consistency, a, left_translate(a, phi, a.multiply(out.minus, s_plus)), phi, "φ·δ⁻S(δ⁺)");
    add(r, "modular-element-consistency", eq, consistency);

    if (const auto eps = counit_if_counital(m, x.weight)) {
        FirstFailure counit;
        compare_functionals(counit, a, left_translate(a, *eps, out.minus), *eps, "ε·δ⁻");
        compare_functionals(counit, a, right_translate(a, *eps, out.plus), *eps, "δ⁺·ε");
        add(r, "modular-element-counit", eq, counit);
    }

    FirstFailure grouplike;
    compare(grouplike, m.q_b().quotient(), m.delta_b(out.plus), tensor(out.plus, out.plus), "Δ_B(δ⁺)");
    compare(grouplike, m.q_b().quotient(), m.delta_b(out.minus), tensor(out.plus, out.minus), "Δ_B(δ⁻)");
    compare(grouplike, m.q_c().quotient(), m.delta_c(out.minus), tensor(out.minus, out.minus), "Δ_C(δ⁻)");
    compare(grouplike, m.q_c().quotient(), m.delta_c(out.plus), tensor(out.minus, out.plus), "Δ_C(δ⁺)");
    add(r, "modular-element-grouplike", eq, grouplike);

    if (a.has_involution() && verify_star(m).passed() && star_functional(a, phi) == phi) {
        FirstFailure star;
        compare(star, out.plus, a.star(out.minus), "δ⁺ vs (δ⁻)*");
        add(r, "modular-element-star", eq, star);
    }

    const ModularAutomorphism sigma = modular_automorphism(x, IntegralSide::left);
    if (sigma.preserves_base) {
        const Matrix& s = sigma.sigma;
        const Matrix s_inv = inverse_or_throw(s, "σ^φ");
        const Matrix S2 = S * S;
        const Matrix Sm2 = S_inv * S_inv;
        const Matrix sigma_minus = S * s_inv * S_inv;
        const Matrix sigma_plus = S_inv * s_inv * S;
        FirstFailure modular;
        compare(modular, modular_automorphism_of(a, psi_minus).value(), sigma_minus, "σ^{ψ⁻} vs Sσ⁻¹S⁻¹");
        compare(modular, modular_automorphism_of(a, psi_plus).value(), sigma_plus, "σ^{ψ⁺} vs S⁻¹σ⁻¹S");
        add(r, "modular-element-companion-automorphisms", eq, modular);

        FirstFailure intertwine;
        for (std::size_t u = 0; u < m.base_b().dim() && intertwine.ok(); ++u) {
            const Vector e = m.embed_b().column(u);
            compare(intertwine, a.multiply(e, out.minus), a.multiply(out.minus, (S2 * s).apply(e)), "xδ⁻");
            compare(intertwine, a.multiply(e, out.plus), a.multiply(out.plus, (s * S2).apply(e)), "xδ⁺");
        }
        for (std::size_t u = 0; u < m.base_c().dim() && intertwine.ok(); ++u) {
            const Vector e = m.embed_c().column(u);
            compare(intertwine, a.multiply(out.minus, e), a.multiply((Sm2 * sigma_minus).apply(e), out.minus), "δ⁻y");
            compare(intertwine, a.multiply(e, out.plus), a.multiply(out.plus, (sigma_plus * Sm2).apply(e)), "yδ⁺");
        }
        add(r, "modular-element-intertwining", eq, intertwine);
    }
    return out;
}

bool is_total_integral(const Algebroid& m, const BaseWeight& w, const Vector& omega, IntegralSide side) {
    const FactorizationResult f = factorize(m, omega, w);
    if (!f.factors) {
        return false;
    }
    const Matrix& factor = side == IntegralSide::left ? f.factors->c_left : f.factors->b_left;
    return check_partial_integral(m, factor, side).invariant();
}

UniquenessCheck uniqueness_check(const MeasuredAlgebroid& x) {
    const Algebroid& m = x.m();
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    UniquenessCheck out;
    Report& r = out.report;
    r.append(check_local_projectivity(m));

    const auto totals = [&](IntegralSide side) {
        const Vector& mu = side == IntegralSide::left ? x.weight.mu_c : x.weight.mu_b;
        std::vector<Vector> all;
        for (const Matrix& partial : solve_partial_integrals(m, side).basis) {
            all.push_back(pull_back(mu, partial));
        }
        return independent(all, n);
    };
    out.left_integrals = totals(IntegralSide::left);
    out.right_integrals = totals(IntegralSide::right);

    FirstFailure solved;
    for (const Vector& v : out.left_integrals) {
        if (solved.ok() && !is_total_integral(m, x.weight, v, IntegralSide::left)) {
            solved.record("left basis functional " + to_string(v));
        }
    }
    for (const Vector& v : out.right_integrals) {
        if (solved.ok() && !is_total_integral(m, x.weight, v, IntegralSide::right)) {
            solved.record("right basis functional " + to_string(v));
        }
    }
    add(r, "integral-spaces-solved", "integrals-uniqueness", solved);

    const auto family = [&](const std::vector<Vector>& space, const Vector& omega, const Matrix& embed,
                            const std::string& name) {
        const bool right = same_span(space, translates(a, omega, embed, true), n);
        const bool left = same_span(space, translates(a, omega, embed, false), n);
        r.add(name + "-module-translates", "integrals-uniqueness", right,
              "integral space of dimension " + std::to_string(space.size()) + " differs from the span of translates");
        r.add(name + "-translates-module", "integrals-uniqueness", left,
              "integral space of dimension " + std::to_string(space.size()) + " differs from the span of translates");
    };
    family(out.left_integrals, x.phi, m.embed_b(), "left-integrals");
    family(out.right_integrals, x.psi, m.embed_c(), "right-integrals");

    // (A·Bφ(A))·ψ = (A·Cψ(A))·φ and ψ·(φ_B(A)A) = φ·(ψ_C(A)A).
    std::vector<Vector> lhs1;
    std::vector<Vector> rhs1;
    std::vector<Vector> lhs2;
    std::vector<Vector> rhs2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Vector ei = a.basis(i);
            lhs1.push_back(right_translate(a, x.psi, a.multiply(ei, m.embed_b().apply(x.phi_factors.b_left.column(k)))));
            rhs1.push_back(right_translate(a, x.phi, a.multiply(ei, m.embed_c().apply(x.psi_factors.c_left.column(k)))));
            lhs2.push_back(left_translate(a, x.psi, a.multiply(m.embed_b().apply(x.phi_factors.b_right.column(k)), ei)));
            rhs2.push_back(left_translate(a, x.phi, a.multiply(m.embed_c().apply(x.psi_factors.c_right.column(k)), ei)));
        }
    }
    r.add("phi-psi-translates-left", "uniqueness-phi-psi", same_span(lhs1, rhs1, n), "the two spans differ");
    r.add("phi-psi-translates-right", "uniqueness-phi-psi", same_span(lhs2, rhs2, n), "the two spans differ");

    std::vector<std::vector<Vector>> hats(4);
    for (std::size_t i = 0; i < n; ++i) {
        hats[0].push_back(right_translate(a, x.phi, a.basis(i)));
        hats[1].push_back(left_translate(a, x.phi, a.basis(i)));
        hats[2].push_back(right_translate(a, x.psi, a.basis(i)));
        hats[3].push_back(left_translate(a, x.psi, a.basis(i)));
    }
    const bool hat = same_span(hats[0], hats[1], n) && same_span(hats[0], hats[2], n) && same_span(hats[0], hats[3], n);
    r.add("dual-space-coincidence", "hata", hat, "A·φ, φ·A, A·ψ and ψ·A do not coincide");
    return out;
}

bool in_integral_family(const MeasuredAlgebroid& x, const Vector& omega, IntegralSide side) {
    const bool left = side == IntegralSide::left;
    const FiniteAlgebra& a = x.m().algebra();
    return span_contains(translates(a, left ? x.phi : x.psi, left ? x.m().embed_b() : x.m().embed_c(), true), omega,
                         a.dim());
}

ProjectivityCheck local_projectivity(const ModuleStructure& module) {
    const std::size_t n = module.algebra_dim();
    const std::vector<Matrix> maps = module_maps(module);
    ProjectivityCheck out;
    out.module_maps = maps.size();
    RowEchelon span(n * n);
    for (const Matrix& f : maps) {
        for (std::size_t j = 0; j < n; ++j) {
            const Vector e = unit_vector(n, j);
            span.insert(flatten(
                Matrix::from_function(n, n, [&](std::size_t i) { return module.act(f.column(i), e); })));
        }
    }
    out.projective = span.contains(flatten(Matrix::identity(n)));
    if (!out.projective) {
        out.witness = "the identity of " + module.tag() + " is not a sum of maps m -> υ(m)·e over " +
                      std::to_string(maps.size()) + " module maps";
    }
    return out;
}

Report check_local_projectivity(const Algebroid& m) {
    Report r;
    for (const auto& [tag, name] : {std::pair{Action::bsA, "_BA"}, std::pair{Action::bAs, "A_B"},
                                    std::pair{Action::csA, "_CA"}, std::pair{Action::cAs, "A_C"}}) {
        const ProjectivityCheck c = local_projectivity(m.action(tag));
        r.add(std::string("locally-projective-") + name, "projective", c.projective, c.witness,
              std::to_string(c.module_maps) + " module maps");
    }
    return r;
}

FaithfulnessCheck faithfulness_check(const Algebroid& m, const BaseWeight& w, const Vector& omega,
                                     IntegralSide side) {
    FaithfulnessCheck out;
    const bool left = side == IntegralSide::left;
    out.counital = check_base_weight(m, w).counital;
    out.locally_projective = check_local_projectivity(m).passed();
    out.integral = is_total_integral(m, w, omega, side);
    const FactorizationResult f = factorize(m, omega, w);
    if (f.factors) {
        out.full = left ? is_surjective(f.factors->b_left) && is_surjective(f.factors->b_right)
                        : is_surjective(f.factors->c_left) && is_surjective(f.factors->c_right);
    }
    out.faithful = is_faithful(m.algebra(), omega);

    std::string missing;
    for (const auto& [ok, what] : {std::pair{out.integral, "not an integral"}, std::pair{out.full, "not full"},
                                   std::pair{out.locally_projective, "not locally projective"},
                                   std::pair{out.counital, "base weight not counital"}}) {
        if (!ok) {
            missing += missing.empty() ? what : std::string(", ") + what;
        }
    }
    const std::string name = std::string("faithful-") + to_string(side);
    out.report.add(name, "integrals-faithful", !out.hypotheses() || out.faithful,
                   "a full integral with a singular Gram matrix",
                   out.hypotheses() ? (out.faithful ? "hypotheses hold; Gram matrix invertible"
                                                    : "hypotheses hold")
                                    : "outside the hypotheses: " + missing +
                                          (out.faithful ? "; faithful" : "; not faithful"));
    return out;
}

Report faithfulness_check(const MeasuredAlgebroid& x) {
    Report r;
    r.add("phi-gram-invertible", "integrals-faithful", is_faithful(x.m().algebra(), x.phi), "Gram matrix of φ is singular");
    r.add("psi-gram-invertible", "integrals-faithful", is_faithful(x.m().algebra(), x.psi), "Gram matrix of ψ is singular");
    r.append(faithfulness_check(x.m(), x.weight, x.phi, IntegralSide::left).report);
    r.append(faithfulness_check(x.m(), x.weight, x.psi, IntegralSide::right).report);
    return r;
}

Vector DualAlgebra::functional(const Vector& a) const { return right_translate(*total, phi, a); }

DualAlgebra dual_algebra(const MeasuredAlgebroid& x) {
    const Algebroid& m = x.m();
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    if (!m.t_lambda().bijective()) {
        throw std::logic_error("T_λ is not bijective on an assembled instance");
    }
    DualAlgebra out;
    out.total = m.data().total;
    out.phi = x.phi;
    Report& r = out.report;
    const Matrix gram = gram_matrix(a, x.phi);
    const Matrix gram_inv = inverse_or_throw(gram, "the Gram matrix of φ");

    // f = (φ_C ⊗ ι)(T_λ⁻¹(a ⊗ b)) on btA⊗bAt: e ⊗ d -> d φ_C(e).
    const Matrix slice = descended(try_slice_left(m.t_lambda_domain(), m.s_b_inverse() * x.phi_c), "φ_C ⊗ ι");
    const Matrix formula = slice * *m.t_lambda().inverse;
    const auto product = [&](const Vector& u, const Vector& v) { return formula.apply(m.q_b().project(tensor(u, v))); };

    std::vector<Matrix> rho(n);
    std::vector<Matrix> lam(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector omega = out.functional(a.basis(k));
        rho[k] = convolution(m, x.weight, omega, ConvolutionKind::rho).matrix;
        lam[k] = convolution(m, x.weight, omega, ConvolutionKind::lambda).matrix;
    }

    std::vector<Vector> products;
    FirstFailure oracle;
    FirstFailure symmetric;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Vector f = product(a.basis(i), a.basis(j));
            const Vector wi = out.functional(a.basis(i));
            const Vector wj = out.functional(a.basis(j));
            // ω∘ρ(ω') = g·φ, solved through the Gram pairing: φ(c g) = (ω∘ρ(ω'))(c).
            const Vector composed = pull_back(wi, rho[j]);
            compare(oracle, f, gram_inv.apply(composed), "product at " + pair(a, i, a, j));
            compare_functionals(symmetric, a, composed, pull_back(wj, lam[i]), "ω∘ρ(ω') vs ω'∘λ(ω)");
            products.push_back(f);
        }
    }
    add(r, "dual-product-formula", "dual-product", oracle);
    add(r, "dual-product-symmetric", "dual-algebra", symmetric);

    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) {
        labels.push_back(a.label(k) + "·φ");
    }
    out.algebra = FiniteAlgebra(n, products, labels);
    r.append(check_algebra(out.algebra), "dual ");

    r.add("dual-dimension", "hata", rank(gram) == n, "a -> a·φ is not injective");
    r.add("dual-idempotent", "dual-algebra", same_span(products, image(Matrix::identity(n)), n),
          "products do not span the dual algebra");

    // ω ≠ 0 implies ωÂ ≠ 0 and Âω ≠ 0.
    std::vector<Vector> left_rows;
    std::vector<Vector> right_rows;
    for (std::size_t j = 0; j < n; ++j) {
        const Matrix l = out.algebra.right_multiplication(out.algebra.basis(j));
        const Matrix rr = out.algebra.left_multiplication(out.algebra.basis(j));
        for (std::size_t i = 0; i < n; ++i) {
            left_rows.push_back(l.row(i));
            right_rows.push_back(rr.row(i));
        }
    }
    const bool nondegenerate = rank(Matrix::from_rows(n, left_rows)) == n && rank(Matrix::from_rows(n, right_rows)) == n;
    r.add("dual-nondegenerate", "dual-algebra", nondegenerate, "some nonzero ω annihilates Â");

    // ω∗a = ρ(ω)(a) and a∗ω = λ(ω)(a) make A an Â-bimodule.
    const auto combination = [&](const std::vector<Matrix>& ops, const Vector& c) {
        Matrix out_m(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            if (!c[k].is_zero()) {
                Matrix scaled = ops[k];
                for (std::size_t p = 0; p < n; ++p) {
                    for (std::size_t q = 0; q < n; ++q) {
                        scaled.at(p, q) *= c[k];
                    }
                }
                out_m = out_m + scaled;
            }
        }
        return out_m;
    };
    FirstFailure left_module;
    FirstFailure right_module;
    FirstFailure bimodule;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Vector ij = out.algebra.product(i, j);
            compare(left_module, combination(rho, ij), rho[i] * rho[j], "ρ(ωω') vs ρ(ω)ρ(ω') at " + pair(a, i, a, j));
            compare(right_module, combination(lam, ij), lam[j] * lam[i], "λ(ωω') vs λ(ω')λ(ω) at " + pair(a, i, a, j));
            compare(bimodule, rho[i] * lam[j], lam[j] * rho[i], "ρ(ω)λ(ω') at " + pair(a, i, a, j));
        }
    }
    add(r, "dual-module-left", "dual-algebra", left_module);
    add(r, "dual-module-right", "dual-algebra", right_module);
    add(r, "dual-bimodule", "dual-algebra", bimodule);

    // A is faithful: the common kernel of all ρ(ω) and of all λ(ω) is zero.
    std::vector<Vector> rho_rows;
    std::vector<Vector> lam_rows;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t p = 0; p < n; ++p) {
            rho_rows.push_back(rho[k].row(p));
            lam_rows.push_back(lam[k].row(p));
        }
    }
    r.add("dual-faithful-module", "dual-algebra",
          rank(Matrix::from_rows(n, rho_rows)) == n && rank(Matrix::from_rows(n, lam_rows)) == n,
          "some nonzero a is killed by every ω");

    // j(a·φ)(T) = φ(Ta) agrees with j(φ·a')(T) = φ(a'T) and j(b·ψ)(T) = ψ(Tb) for the same functional.
    const Matrix psi_gram = gram_matrix(a, x.psi);
    const Matrix psi_gram_inv = inverse_or_throw(psi_gram, "the Gram matrix of ψ");
    FirstFailure extension;
    for (std::size_t k = 0; k < n && extension.ok(); ++k) {
        const Vector omega = out.functional(a.basis(k));
        const Vector a_left = inverse_or_throw(gram.transpose(), "Gᵀ").apply(omega);
        const Vector b_psi = psi_gram_inv.apply(omega);
        for (std::size_t t = 0; t < n; ++t) {
            const Vector T = a.basis(t);
            const Scalar value = evaluate(x.phi, a.multiply(T, a.basis(k)));
            if (value != evaluate(x.phi, a.multiply(a_left, T)) || value != evaluate(x.psi, a.multiply(T, b_psi))) {
                extension.record("functional " + out.algebra.label(k) + " at " + a.label(t));
                break;
            }
        }
    }
    add(r, "dual-multiplier-extension", "extension-multipliers", extension);
    return out;
}

HaarConditions haar_conditions(const Algebroid& m, const BaseWeight& w, const Vector& h) {
    const FiniteAlgebra& a = m.algebra();
    HaarConditions out;
    out.left = is_total_integral(m, w, h, IntegralSide::left) && pull_back(h, m.embed_b()) == w.mu_b;
    out.right = is_total_integral(m, w, h, IntegralSide::right) && pull_back(h, m.embed_c()) == w.mu_c;
    const bool antipodal = check_base_weight(m, w).antipodal;
    out.report.add("haar-equivalence", "unital-uniqueness-2", !antipodal || out.left == out.right,
                   std::string("left condition ") + (out.left ? "holds" : "fails") + " but right condition " +
                       (out.right ? "holds" : "fails"),
                   antipodal ? "" : "base weight not antipodal");
    if (out.haar()) {
        FirstFailure invariant;
        compare_functionals(invariant, a, pull_back(h, antipode_of(m)), h, "h∘S vs h");
        add(out.report, "haar-antipode-invariant", "unital-uniqueness-2", invariant);
        const FactorizationResult f = factorize(m, h, w);
        FirstFailure units;
        if (!f.factors) {
            units.record("h is not factorizable");
        } else {
            const Vector& one = a.one();
            compare(units, f.factors->c_left.apply(one), m.base_c().one(), "Ch(1)");
            compare(units, f.factors->c_right.apply(one), m.base_c().one(), "h_C(1)");
            compare(units, f.factors->b_left.apply(one), m.base_b().one(), "Bh(1)");
            compare(units, f.factors->b_right.apply(one), m.base_b().one(), "h_B(1)");
        }
        add(out.report, "haar-unit-factors", "unital-uniqueness-2", units);
    }
    return out;
}

HaarAnalysis haar_analysis(const MeasuredAlgebroid& x) {
    const Algebroid& m = x.m();
    const FiniteAlgebra& a = m.algebra();
    if (!a.unit()) {
        throw MathematicalRejection("proper", "Haar rescaling needs a unital total algebra");
    }
    // BC ⊆ A holds whenever A is unital.
    HaarAnalysis out;
    Report& r = out.report;
    r.add("proper", "proper", true, {}, "BC lies in the unital total algebra");

    const ModularAutomorphism sigma = modular_automorphism(x, IntegralSide::left);
    r.add("haar-sigma-preserves-base", "integrals-proper", sigma.preserves_base, "σ^φ(B) ⊄ B");
    if (!sigma.preserves_base) {
        return out;
    }

    const FiniteAlgebra& b = m.base_b();
    const FiniteAlgebra& c = m.base_c();
    std::vector<Vector> candidates{c.one()};
    for (std::size_t k = 0; k < c.dim(); ++k) {
        candidates.push_back(c.basis(k));
    }
    for (const Vector& y : candidates) {
        const Vector z = x.phi_factors.b_left.apply(m.embed_c().apply(y));
        if (invertible_element(b, z)) {
            out.z = z;
            break;
        }
    }
    r.add("haar-invertible-z", "integrals-proper", out.z.has_value(), "Bφ(C) has no invertible element among the tried ones");
    if (!out.z) {
        return out;
    }
    const Vector z_inv = *element_inverse(b, *out.z);
    out.h = right_translate(a, x.phi, m.embed_b().apply(z_inv));

    r.add("haar-left-integral", "integrals-proper", is_total_integral(m, x.weight, *out.h, IntegralSide::left),
          "z⁻¹·φ is not a left integral");
    r.add("haar-right-integral", "integrals-proper", is_total_integral(m, x.weight, *out.h, IntegralSide::right),
          "z⁻¹·φ is not a right integral");
    FirstFailure invariant;
    compare_functionals(invariant, a, pull_back(*out.h, x.antipode), *out.h, "h∘S vs h");
    add(r, "haar-antipode-invariant", "integrals-proper", invariant);

    const ModularElement delta = modular_element(x);
    FirstFailure plus;
    compare(plus, delta.plus,
            a.multiply(m.embed_b().apply(z_inv), x.antipode.apply(m.embed_b().apply(*out.z))), "δ⁺ vs z⁻¹S(z)");
    add(r, "haar-modular-element", "integrals-proper", plus);
    r.append(haar_conditions(m, x.weight, *out.h).report);
    return out;
}

}  // namespace algebroid
