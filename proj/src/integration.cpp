#include "algebroid/integration.hpp"

#include <stdexcept>

#include "check_util.hpp"

namespace algebroid {

namespace {

using namespace detail;

Matrix stack(const std::vector<Matrix>& blocks, std::size_t cols) {
    std::vector<Vector> rows;
    for (const Matrix& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            rows.push_back(b.row(i));
        }
    }
    return Matrix::from_rows(cols, rows);
}

Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols) {
    Matrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out.at(r, c) = v[r * cols + c];
        }
    }
    return out;
}

const FiniteAlgebra& target_base(const Algebroid& m, IntegralSide side) {
    return side == IntegralSide::left ? m.base_c() : m.base_b();
}

const Matrix& target_embedding(const Algebroid& m, IntegralSide side) {
    return side == IntegralSide::left ? m.embed_c() : m.embed_b();
}

/// Module conditions map(u a) = u map(a) and map(a u) = map(a) u for the target base.
void check_module(const Algebroid& m, const Matrix& map, IntegralSide side, FirstFailure& left,
                  FirstFailure& right) {
    const FiniteAlgebra& a = m.algebra();
    const FiniteAlgebra& base = target_base(m, side);
    const Matrix& embed = target_embedding(m, side);
    for (std::size_t u = 0; u < base.dim(); ++u) {
        const Vector eu = embed.column(u);
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const Vector value = map.column(i);
            const std::string at = pair(base, u, a, i);
            compare(left, map.apply(a.multiply(eu, a.basis(i))), base.multiply(base.basis(u), value),
                    "u.a at " + at);
            compare(right, map.apply(a.multiply(a.basis(i), eu)), base.multiply(value, base.basis(u)),
                    "a.u at " + at);
        }
    }
}

/// Applies an induced slice to an ambient tensor, or records why it does not exist.
struct Slice {
    InducedMap map;
    const BalancedTensor* tensor;

    Vector operator()(const Vector& ambient) const { return map.matrix.apply(tensor->project(ambient)); }
};

std::string descent_witness(const InducedMap& map, const std::string& what) {
    return what + " does not descend to the balanced tensor product; relation " + to_string(map.failure->relation);
}

/// The three characterizations for a partial right integral ψ_B.
void check_right(const Algebroid& m, const Matrix& psi, PartialIntegralCheck& out) {
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    const Vector& one = a.one();
    FirstFailure mod_left;
    FirstFailure mod_right;
    check_module(m, psi, IntegralSide::right, mod_left, mod_right);

    const Slice slice_b{try_slice_left(m.q_b(), psi), &m.q_b()};
    const Slice slice_c{try_slice_left(m.q_c(), m.s_c_inverse() * psi), &m.q_c()};
    const Matrix S = antipode_of(m);

    FirstFailure deltab = mod_left;
    FirstFailure deltac = mod_right;
    FirstFailure strong = mod_left;
    if (strong.ok()) {
        strong = mod_right;
    }
    if (!slice_b.map.well_defined()) {
        deltab.record(descent_witness(slice_b.map, "ψ_B ⊗ ι"));
        strong.record(descent_witness(slice_b.map, "ψ_B ⊗ ι"));
    }
    if (!slice_c.map.well_defined()) {
        deltac.record(descent_witness(slice_c.map, "S_C⁻¹ψ_B ⊗ ι"));
        strong.record(descent_witness(slice_c.map, "S_C⁻¹ψ_B ⊗ ι"));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vector ea = a.basis(i);
        const Vector value = m.embed_b().apply(psi.column(i));
        for (std::size_t j = 0; j < n; ++j) {
            const Vector eb = a.basis(j);
            const std::string at = pair(a, i, a, j);
            if (deltab.ok()) {
                compare(deltab, slice_b(m.product2(m.delta_b(ea), tensor(one, eb))), a.multiply(value, eb), at);
            }
            if (deltac.ok()) {
                compare(deltac, slice_c(m.product2(tensor(one, eb), m.delta_c(ea))), a.multiply(eb, value), at);
            }
            if (strong.ok()) {
                compare(strong, slice_b(m.product2(m.delta_b(ea), tensor(eb, one))),
                        S.apply(slice_c(m.product2(tensor(ea, one), m.delta_c(eb)))), at);
            }
        }
    }
    add(out.report, "right-integral-deltab", "partial-left-deltab", deltab);
    add(out.report, "right-integral-deltac", "partial-left-deltac", deltac);
    add(out.report, "right-integral-strong", "strong-invariance-right", strong);
    out.verdicts = {deltab.ok(), deltac.ok(), strong.ok()};
}

/// The three characterizations for a partial left integral φ_C.
void check_left(const Algebroid& m, const Matrix& phi, PartialIntegralCheck& out) {
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    const Vector& one = a.one();
    FirstFailure mod_left;
    FirstFailure mod_right;
    check_module(m, phi, IntegralSide::left, mod_left, mod_right);

    const Slice slice_b{try_slice_right(m.q_b(), m.s_b_inverse() * phi), &m.q_b()};
    const Slice slice_c{try_slice_right(m.q_c(), phi), &m.q_c()};
    const Matrix S = antipode_of(m);

    FirstFailure deltab = mod_left;
    FirstFailure deltac = mod_right;
    FirstFailure strong = mod_left;
    if (strong.ok()) {
        strong = mod_right;
    }
    if (!slice_b.map.well_defined()) {
        deltab.record(descent_witness(slice_b.map, "ι ⊗ S_B⁻¹φ_C"));
        strong.record(descent_witness(slice_b.map, "ι ⊗ S_B⁻¹φ_C"));
    }
    if (!slice_c.map.well_defined()) {
        deltac.record(descent_witness(slice_c.map, "ι ⊗ φ_C"));
        strong.record(descent_witness(slice_c.map, "ι ⊗ φ_C"));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vector ea = a.basis(i);
        for (std::size_t j = 0; j < n; ++j) {
            const Vector eb = a.basis(j);
            const Vector value = m.embed_c().apply(phi.column(j));
            const std::string at = pair(a, i, a, j);
            if (deltab.ok()) {
                compare(deltab, slice_b(m.product2(m.delta_b(eb), tensor(ea, one))), a.multiply(value, ea), at);
            }
            if (deltac.ok()) {
                compare(deltac, slice_c(m.product2(tensor(ea, one), m.delta_c(eb))), a.multiply(ea, value), at);
            }
            if (strong.ok()) {
                compare(strong, S.apply(slice_b(m.product2(m.delta_b(ea), tensor(one, eb)))),
                        slice_c(m.product2(tensor(one, ea), m.delta_c(eb))), at);
            }
        }
    }
    add(out.report, "left-integral-deltab", "partial-right-deltab", deltab);
    add(out.report, "left-integral-deltac", "partial-right-deltac", deltac);
    add(out.report, "left-integral-strong", "strong-invariance-left", strong);
    out.verdicts = {deltab.ok(), deltac.ok(), strong.ok()};
}

/// Residual of the module condition and the Δ_B-invariance of characterization (a).
/// Linear in the map; vanishes exactly on partial integrals.
Vector invariance_residual(const Algebroid& m, const Matrix& map, IntegralSide side) {
    const FiniteAlgebra& a = m.algebra();
    const FiniteAlgebra& base = target_base(m, side);
    const Matrix& embed = target_embedding(m, side);
    const std::size_t n = a.dim();
    const Vector& one = a.one();
    Vector out;
    const auto append = [&](const Vector& v) { out.insert(out.end(), v.begin(), v.end()); };

    for (std::size_t u = 0; u < base.dim(); ++u) {
        const Vector eu = embed.column(u);
        for (std::size_t i = 0; i < n; ++i) {
            append(subtract(map.apply(a.multiply(eu, a.basis(i))), base.multiply(base.basis(u), map.column(i))));
        }
    }
    // The slice leg value for every basis element, skipping zeros.
    std::vector<Vector> legs(n);
    std::vector<bool> nonzero(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (side == IntegralSide::right) {
            legs[k] = m.left_target().apply(map.column(k));  // S_B(ψ(e_k)) acting on the second leg
        } else {
            legs[k] = m.embed_b().apply(m.s_b_inverse().apply(map.column(k)));  // s(S_B⁻¹φ(e_k)) on the first
        }
        nonzero[k] = !is_zero(legs[k]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vector lhs = zero_vector(n);
            Vector rhs;
            if (side == IntegralSide::right) {
                const Vector v = m.product2(m.delta_b(a.basis(i)), tensor(one, a.basis(j)));
                for (std::size_t p = 0; p < n; ++p) {
                    if (!nonzero[p]) {
                        continue;
                    }
                    for (std::size_t q = 0; q < n; ++q) {
                        const Scalar& c = v[p * n + q];
                        if (!c.is_zero()) {
                            axpy(c, a.multiply(legs[p], a.basis(q)), lhs);
                        }
                    }
                }
                rhs = a.multiply(m.embed_b().apply(map.column(i)), a.basis(j));
            } else {
                const Vector v = m.product2(m.delta_b(a.basis(j)), tensor(a.basis(i), one));
                for (std::size_t p = 0; p < n; ++p) {
                    for (std::size_t q = 0; q < n; ++q) {
                        const Scalar& c = v[p * n + q];
                        if (nonzero[q] && !c.is_zero()) {
                            axpy(c, a.multiply(legs[q], a.basis(p)), lhs);
                        }
                    }
                }
                rhs = a.multiply(m.embed_c().apply(map.column(j)), a.basis(i));
            }
            append(subtract(lhs, rhs));
        }
    }
    return out;
}

std::vector<Matrix> solve_basis(const Algebroid& m, IntegralSide side) {
    const std::size_t rows = target_base(m, side).dim();
    const std::size_t n = m.dim();
    const std::size_t unknowns = rows * n;
    std::vector<Vector> columns;
    columns.reserve(unknowns);
    for (std::size_t k = 0; k < unknowns; ++k) {
        columns.push_back(invariance_residual(m, unflatten(unit_vector(unknowns, k), rows, n), side));
    }
    const Matrix system = Matrix::from_columns(columns.front().size(), columns);
    std::vector<Matrix> basis;
    for (const Vector& v : kernel(system)) {
        basis.push_back(unflatten(v, rows, n));
    }
    return basis;
}

bool span_contains(const std::vector<Matrix>& basis, const Matrix& map) {
    if (basis.empty()) {
        return map.is_zero();
    }
    const std::size_t len = basis.front().rows() * basis.front().cols();
    RowEchelon e(len);
    for (const Matrix& b : basis) {
        e.insert(flatten(b));
    }
    return e.contains(flatten(map));
}

/// Gram matrix of a functional on a base algebra, with a readable failure.
Matrix base_gram(const FiniteAlgebra& base, const Vector& mu) {
    if (mu.size() != base.dim()) {
        throw std::invalid_argument("base functional has the wrong length");
    }
    return gram_matrix(base, mu);
}

std::optional<Matrix> solve_factor(const Matrix& gram, const std::function<Vector(std::size_t)>& rhs, std::size_t n) {
    std::vector<Vector> columns;
    for (std::size_t i = 0; i < n; ++i) {
        auto x = solve_linear(gram, rhs(i));
        if (!x) {
            return std::nullopt;
        }
        columns.push_back(std::move(*x));
    }
    return Matrix::from_columns(gram.rows(), columns);
}

}  // namespace

Scalar evaluate(const Vector& omega, const Vector& a) {
    if (omega.size() != a.size()) {
        throw std::invalid_argument("functional and vector have different lengths");
    }
    Scalar sum;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!a[k].is_zero() && !omega[k].is_zero()) {
            sum += omega[k] * a[k];
        }
    }
    return sum;
}

Vector pull_back(const Vector& omega, const Matrix& map) { return map.transpose().apply(omega); }

Matrix gram_matrix(const FiniteAlgebra& algebra, const Vector& omega) {
    const std::size_t n = algebra.dim();
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g.at(i, j) = evaluate(omega, algebra.product(i, j));
        }
    }
    return g;
}

bool is_faithful(const FiniteAlgebra& algebra, const Vector& omega) {
    return rank(gram_matrix(algebra, omega)) == algebra.dim();
}

std::optional<Matrix> modular_automorphism_of(const FiniteAlgebra& algebra, const Vector& omega) {
    const Matrix g = gram_matrix(algebra, omega);
    const auto inv = inverse(g);
    if (!inv) {
        return std::nullopt;
    }
    return *inv * g.transpose();
}

std::optional<Domination> dominate(const FiniteAlgebra& algebra, const Vector& upsilon, const Vector& omega) {
    const Matrix g = gram_matrix(algebra, omega);
    const auto inv = inverse(g);
    if (!inv) {
        return std::nullopt;
    }
    const auto inv_t = inverse(g.transpose());
    return Domination{inv->apply(upsilon), inv_t->apply(upsilon)};
}

std::string to_string(IntegralSide side) { return side == IntegralSide::left ? "left" : "right"; }

Matrix antipode_of(const Algebroid& m) {
    if (m.antipode()) {
        return *m.antipode();
    }
    Derivation d = derive_antipode(m);
    if (!d.map) {
        throw MathematicalRejection("hopf-characterization", "no antipode: " + d.witness);
    }
    return std::move(*d.map);
}

PartialIntegralCheck check_partial_integral(const Algebroid& m, const Matrix& map, IntegralSide side) {
    const std::size_t rows = target_base(m, side).dim();
    if (map.rows() != rows || map.cols() != m.dim()) {
        throw std::invalid_argument("partial " + to_string(side) + " integral must be a " + std::to_string(rows) +
                                    " x " + std::to_string(m.dim()) + " matrix");
    }
    PartialIntegralCheck out;
    out.side = side;
    out.degenerate = map.is_zero();
    if (side == IntegralSide::right) {
        check_right(m, map, out);
    } else {
        check_left(m, map, out);
    }
    const std::string prefix = to_string(side);
    out.report.add(prefix + "-integral-agreement", "partial-integrals", out.agree(),
                   "characterizations disagree: " + std::to_string(out.verdicts[0]) +
                       std::to_string(out.verdicts[1]) + std::to_string(out.verdicts[2]),
                   out.degenerate ? "degenerate: the zero map" : "");
    return out;
}

bool IntegralSpace::contains(const Matrix& map) const { return span_contains(basis, map); }

Matrix exchange_side(const Algebroid& m, const Matrix& map, IntegralSide side, int power) {
    const Matrix S = antipode_of(m);
    const auto S_inv = inverse(S);
    if (!S_inv) {
        throw MathematicalRejection("hopf-characterization", "antipode is not invertible");
    }
    // S restricts to S_B on B and to S_C on C.
    if (side == IntegralSide::left) {
        return power > 0 ? m.s_c() * map * *S_inv : m.s_b_inverse() * map * S;
    }
    return power > 0 ? m.s_b() * map * *S_inv : m.s_c_inverse() * map * S;
}

bool is_surjective(const Matrix& map) { return rank(map) == map.rows(); }

IntegralSpace solve_partial_integrals(const Algebroid& m, IntegralSide side) {
    IntegralSpace out;
    out.side = side;
    out.basis = solve_basis(m, side);
    const IntegralSide other = side == IntegralSide::left ? IntegralSide::right : IntegralSide::left;
    const std::vector<Matrix> other_basis = solve_basis(m, other);

    const FiniteAlgebra& a = m.algebra();
    // Partial left integrals are acted on by B, partial right integrals by C.
    const Matrix& acting = side == IntegralSide::left ? m.embed_b() : m.embed_c();
    const std::string prefix = to_string(side) + "-integrals";

    FirstFailure verified;
    for (std::size_t k = 0; k < out.basis.size() && verified.ok(); ++k) {
        const PartialIntegralCheck c = check_partial_integral(m, out.basis[k], side);
        if (!c.invariant()) {
            verified.record("basis element " + std::to_string(k) + "\n" + c.report.summary());
        }
    }
    add(out.report, prefix + "-solved", "partial-integrals", verified,
        "dimension " + std::to_string(out.basis.size()));

    FirstFailure bimodule;
    for (std::size_t k = 0; k < out.basis.size() && bimodule.ok(); ++k) {
        for (std::size_t u = 0; u < acting.cols(); ++u) {
            const Matrix left = a.left_multiplication(acting.column(u));
            const Matrix right = a.right_multiplication(acting.column(u));
            if (!out.contains(out.basis[k] * left) || !out.contains(out.basis[k] * right)) {
                bimodule.record("basis element " + std::to_string(k) + " moved by base element " + std::to_string(u));
                break;
            }
        }
    }
    add(out.report, prefix + "-bimodule", "partial-integrals-bimodule-antipode", bimodule);

    FirstFailure exchange;
    if (other_basis.size() != out.basis.size()) {
        exchange.record("left and right spaces have dimensions " + std::to_string(out.basis.size()) + " and " +
                        std::to_string(other_basis.size()));
    }
    for (std::size_t k = 0; k < out.basis.size() && exchange.ok(); ++k) {
        for (int power : {1, -1}) {
            if (!span_contains(other_basis, exchange_side(m, out.basis[k], side, power))) {
                exchange.record("S^" + std::to_string(power) + " conjugate of basis element " + std::to_string(k) +
                                " is not a partial " + to_string(other) + " integral");
                break;
            }
        }
    }
    add(out.report, prefix + "-antipode-exchange", "partial-integrals-bimodule-antipode", exchange);
    return out;
}

OrbitAlgebra orbit_algebra(const Algebroid& m) {
    OrbitAlgebra out;
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    const std::size_t nb = m.base_b().dim();
    const std::size_t nc = m.base_c().dim();

    // z = embed_b(x) = embed_c(y).
    Matrix joint(n, nb + nc);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t x = 0; x < nb; ++x) {
            joint.at(i, x) = m.embed_b().at(i, x);
        }
        for (std::size_t y = 0; y < nc; ++y) {
            joint.at(i, nb + y) = -m.embed_c().at(i, y);
        }
    }
    for (const Vector& k : kernel(joint)) {
        out.basis.push_back(m.embed_b().apply(Vector(k.begin(), k.begin() + static_cast<long>(nb))));
    }
    out.report.add("proper", "proper", true, {}, "BC lies in the unital total algebra");

    const Matrix S = antipode_of(m);
    FirstFailure trivial;
    for (std::size_t k = 0; k < out.basis.size(); ++k) {
        compare(trivial, S.apply(out.basis[k]), out.basis[k], "orbit basis element " + std::to_string(k));
    }
    add(out.report, "orbit-antipode", "orbit-antipode", trivial);

    // The characterization needs a surjective partial integral.
    const std::vector<Matrix> rights = solve_basis(m, IntegralSide::right);
    bool surjective = false;
    Matrix combined(nb, n);
    for (std::size_t k = 0; k < rights.size(); ++k) {
        surjective = surjective || is_surjective(rights[k]);
        for (std::size_t r = 0; r < nb; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                combined.at(r, c) += Scalar(static_cast<long>(k + 1)) * rights[k].at(r, c);
            }
        }
    }
    surjective = surjective || (!rights.empty() && is_surjective(combined));
    if (!surjective) {
        out.report.add("ergodic-characterization", "ergodic", true, {}, "skipped: no surjective partial integral found");
        return out;
    }

    const Vector& one = a.one();
    const Matrix one_left = Matrix::from_function(n * n, n, [&](std::size_t k) { return tensor(one, a.basis(k)); });
    const Matrix one_right = Matrix::from_function(n * n, n, [&](std::size_t k) { return tensor(a.basis(k), one); });
    const auto commutant = [&](const Matrix& embed) {
        std::vector<Matrix> blocks;
        for (std::size_t u = 0; u < embed.cols(); ++u) {
            blocks.push_back(a.right_multiplication(embed.column(u)) - a.left_multiplication(embed.column(u)));
        }
        return blocks;
    };
    const auto solve = [&](const Matrix& embed_commuting, const BalancedTensor& q, const Matrix& delta,
                           const Matrix& unit_leg) {
        std::vector<Matrix> blocks = commutant(embed_commuting);
        blocks.push_back(q.quotient().projection_matrix() * (delta - unit_leg));
        return kernel(stack(blocks, n));
    };
    const std::vector<Vector> mb = image(m.embed_b());
    const std::vector<Vector> mc = image(m.embed_c());
    FirstFailure ergodic;
    if (!same_span(solve(m.embed_c(), m.q_b(), m.delta_b_matrix(), one_left), mb, n)) {
        ergodic.record("M(B) differs from {z ∈ C' : Δ_B(z) = 1⊗z}");
    }
    if (!same_span(solve(m.embed_c(), m.q_c(), m.delta_c_matrix(), one_left), mb, n)) {
        ergodic.record("M(B) differs from {z ∈ C' : Δ_C(z) = 1⊗z}");
    }
    if (!same_span(solve(m.embed_b(), m.q_b(), m.delta_b_matrix(), one_right), mc, n)) {
        ergodic.record("M(C) differs from {z ∈ B' : Δ_B(z) = z⊗1}");
    }
    if (!same_span(solve(m.embed_b(), m.q_c(), m.delta_c_matrix(), one_right), mc, n)) {
        ergodic.record("M(C) differs from {z ∈ B' : Δ_C(z) = z⊗1}");
    }
    add(out.report, "ergodic-characterization", "ergodic", ergodic);
    return out;
}

Report expectation_identity(const Algebroid& m, const Matrix& phi_c, const Matrix& psi_b) {
    Report r;
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    const OrbitAlgebra orbit = orbit_algebra(m);
    RowEchelon o(n);
    for (const Vector& z : orbit.basis) {
        o.insert(z);
    }
    // Unital case: φ_C|_B(x) = φ_C(x) and ψ_B|_C(y) = ψ_B(y).
    const Matrix phi_on_b = phi_c * m.embed_b();
    const Matrix psi_on_c = psi_b * m.embed_c();
    FirstFailure left_values;
    for (std::size_t x = 0; x < m.base_b().dim(); ++x) {
        if (left_values.ok() && !o.contains(m.embed_c().apply(phi_on_b.column(x)))) {
            left_values.record("φ_C(" + m.base_b().label(x) + ") lies outside the orbit algebra");
        }
    }
    add(r, "left-extension-orbit", "proper-partial-integrals", left_values);
    FirstFailure right_values;
    for (std::size_t y = 0; y < m.base_c().dim(); ++y) {
        if (right_values.ok() && !o.contains(m.embed_b().apply(psi_on_c.column(y)))) {
            right_values.record("ψ_B(" + m.base_c().label(y) + ") lies outside the orbit algebra");
        }
    }
    add(r, "right-extension-orbit", "proper-partial-integrals", right_values);
    FirstFailure composed;
    for (std::size_t i = 0; i < n; ++i) {
        compare(composed, m.embed_c().apply(phi_on_b.apply(psi_b.column(i))),
                m.embed_b().apply(psi_on_c.apply(phi_c.column(i))), a.label(i));
    }
    add(r, "composed-partial-integrals", "proper-composed-partial-integrals", composed);
    return r;
}

BaseWeightCheck check_base_weight(const Algebroid& m, const BaseWeight& w) {
    BaseWeightCheck out;
    Report& r = out.report;
    const FiniteAlgebra& b = m.base_b();
    const FiniteAlgebra& c = m.base_c();
    const Matrix gb = base_gram(b, w.mu_b);
    const Matrix gc = base_gram(c, w.mu_c);

    const bool faithful_b = rank(gb) == b.dim();
    const bool faithful_c = rank(gc) == c.dim();
    out.faithful = faithful_b && faithful_c;
    r.add("base-weight-faithful", "base-weight", out.faithful,
          !faithful_b ? "μ_B has a degenerate Gram matrix" : "μ_C has a degenerate Gram matrix");

    FirstFailure antipodal;
    compare(antipodal, pull_back(w.mu_b, m.s_c()), w.mu_c, "μ_B∘S_C against μ_C");
    compare(antipodal, pull_back(w.mu_c, m.s_b()), w.mu_b, "μ_C∘S_B against μ_B");
    out.antipodal = antipodal.ok();
    add(r, "base-weight-antipodal", "base-weight", antipodal);

    // σ_B = S_B⁻¹S_C⁻¹ and σ_C = S_B S_C.
    const Matrix sigma_b = m.s_b_inverse() * m.s_c_inverse();
    const Matrix sigma_c = m.s_b() * m.s_c();
    FirstFailure modular;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            compare(modular, Vector{evaluate(w.mu_b, b.product(i, j))},
                    Vector{evaluate(w.mu_b, b.multiply(b.basis(j), sigma_b.column(i)))}, "σ_B at " + pair(b, i, b, j));
        }
    }
    for (std::size_t i = 0; i < c.dim(); ++i) {
        for (std::size_t j = 0; j < c.dim(); ++j) {
            compare(modular, Vector{evaluate(w.mu_c, c.product(i, j))},
                    Vector{evaluate(w.mu_c, c.multiply(c.basis(j), sigma_c.column(i)))}, "σ_C at " + pair(c, i, c, j));
        }
    }
    out.modular = modular.ok();
    add(r, "base-weight-modular", "base-weight", modular);

    const Derivation eb = m.counit_b() ? Derivation{*m.counit_b(), {}} : derive_left_counit(m);
    const Derivation ec = m.counit_c() ? Derivation{*m.counit_c(), {}} : derive_right_counit(m);
    if (!eb.map || !ec.map) {
        throw MathematicalRejection("counit", "the counits cannot be derived: " + eb.witness + ec.witness);
    }
    out.counit_functional = pull_back(w.mu_b, *eb.map);
    const Vector right_functional = pull_back(w.mu_c, *ec.map);
    FirstFailure counital;
    compare(counital, out.counit_functional, right_functional, "μ_B∘ε_B against μ_C∘ε_C");
    out.counital = counital.ok();
    add(r, "base-weight-counital", "base-weight-counital", counital);

    if (out.counital) {
        const bool surjective = is_surjective(*eb.map) && is_surjective(*ec.map);
        if (surjective) {
            r.add("counit-kms", "counit-kms", out.modular, "counital base weight is not modular");
        }
        FirstFailure invariant;
        compare(invariant, pull_back(out.counit_functional, antipode_of(m)), right_functional,
                "(μ_B∘ε_B)∘S against μ_C∘ε_C");
        add(r, "counit-antipode", "counit-antipode", invariant);
    }

    if (b.has_involution() && c.has_involution()) {
        const auto positive = [](const FiniteAlgebra& base, const Vector& mu) {
            // Hermitian form (x, x') -> μ(x* x') must be positive semidefinite.
            const std::size_t d = base.dim();
            Matrix h(d, d);
            for (std::size_t i = 0; i < d; ++i) {
                const Vector si = base.star(base.basis(i));
                for (std::size_t j = 0; j < d; ++j) {
                    h.at(i, j) = evaluate(mu, base.multiply(si, base.basis(j)));
                }
            }
            if (!(h.transpose().conj() == h)) {
                return false;
            }
            for (std::size_t k = 0; k < d; ++k) {
                const Scalar pivot = h.at(k, k);
                const int sign = pivot.sign();
                if (sign < 0) {
                    return false;
                }
                if (sign == 0) {
                    for (std::size_t j = k + 1; j < d; ++j) {
                        if (!h.at(k, j).is_zero()) {
                            return false;
                        }
                    }
                    continue;
                }
                for (std::size_t i = k + 1; i < d; ++i) {
                    const Scalar f = h.at(i, k) / pivot;
                    for (std::size_t j = k; j < d; ++j) {
                        h.at(i, j) -= f * h.at(k, j);
                    }
                }
            }
            return true;
        };
        out.positive = positive(b, w.mu_b) && positive(c, w.mu_c);
        r.add("base-weight-positive", "base-weight", *out.positive, "μ(x*x) < 0 for some x");
    }
    return out;
}

FactorizationResult factorize(const Algebroid& m, const Vector& omega, const BaseWeight& w) {
    const FiniteAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    if (omega.size() != n) {
        throw std::invalid_argument("functional has the wrong length");
    }
    const Matrix gb = base_gram(m.base_b(), w.mu_b);
    const Matrix gc = base_gram(m.base_c(), w.mu_c);
    if (rank(gb) != gb.rows() || rank(gc) != gc.rows()) {
        throw MathematicalRejection("base-weight", "factorization needs a faithful base weight");
    }
    const auto along = [&](const Matrix& embed, std::size_t i, bool left) {
        Vector rhs(embed.cols());
        for (std::size_t u = 0; u < embed.cols(); ++u) {
            rhs[u] = left ? evaluate(omega, a.multiply(embed.column(u), a.basis(i)))
                          : evaluate(omega, a.multiply(a.basis(i), embed.column(u)));
        }
        return rhs;
    };
    FactorizationResult out;
    // ω(xa) = μ_B(x Bω(a)) reads G_B Bω(a) = rhs; ω(ax) = μ_B(ω_B(a) x) reads G_Bᵀ ω_B(a) = rhs.
    auto b_left = solve_factor(gb, [&](std::size_t i) { return along(m.embed_b(), i, true); }, n);
    auto b_right = solve_factor(gb.transpose(), [&](std::size_t i) { return along(m.embed_b(), i, false); }, n);
    auto c_left = solve_factor(gc, [&](std::size_t i) { return along(m.embed_c(), i, true); }, n);
    auto c_right = solve_factor(gc.transpose(), [&](std::size_t i) { return along(m.embed_c(), i, false); }, n);
    if (!b_left) {
        out.failure = "Bω";
    } else if (!b_right) {
        out.failure = "ω_B";
    } else if (!c_left) {
        out.failure = "Cω";
    } else if (!c_right) {
        out.failure = "ω_C";
    } else {
        out.factors = Factorization{std::move(*b_left), std::move(*b_right), std::move(*c_left), std::move(*c_right)};
    }
    return out;
}

MeasuredAlgebroid assemble_measured(AlgebroidPtr mp, const BaseWeight& w, const Matrix& phi_c, const Matrix& psi_b) {
    const Algebroid& m = *mp;
    MeasuredAlgebroid out;
    out.algebroid = mp;
    out.weight = w;
    out.phi_c = phi_c;
    out.psi_b = psi_b;
    Report& r = out.certificates;

    const BaseWeightCheck weight = check_base_weight(m, w);
    r.append(weight.report);
    if (!weight.faithful) {
        throw MathematicalRejection("base-weight", "the base weight is not faithful");
    }
    if (!weight.counital) {
        throw MathematicalRejection("base-weight-counital", "the base weight is not counital: μ_B∘ε_B ≠ μ_C∘ε_C",
                                    "apply a Radon-Nikodym modifier such as groupoid_rn or crossed_rn");
    }

    for (const auto& [map, side] : {std::pair{&phi_c, IntegralSide::left}, std::pair{&psi_b, IntegralSide::right}}) {
        const PartialIntegralCheck c = check_partial_integral(m, *map, side);
        r.append(c.report);
        for (const ReportEntry& e : c.report.entries()) {
            if (!e.passed()) {
                throw MathematicalRejection(e.equation, "not a partial " + to_string(side) + " integral: " + e.witness);
            }
        }
    }

    out.phi = pull_back(w.mu_c, phi_c);
    out.psi = pull_back(w.mu_b, psi_b);
    const FactorizationResult fphi = factorize(m, out.phi, w);
    const FactorizationResult fpsi = factorize(m, out.psi, w);
    r.add("quasi-invariant-phi", "quasi-invariant", fphi.factors.has_value(), "no factor " + fphi.failure);
    r.add("quasi-invariant-psi", "quasi-invariant", fpsi.factors.has_value(), "no factor " + fpsi.failure);
    if (!fphi.factors || !fpsi.factors) {
        throw MathematicalRejection("quasi-invariant", "the total integrals are not factorizable");
    }
    out.phi_factors = *fphi.factors;
    out.psi_factors = *fpsi.factors;

    const bool phi_full = is_surjective(out.phi_factors.b_left) && is_surjective(out.phi_factors.b_right);
    const bool psi_full = is_surjective(out.psi_factors.c_left) && is_surjective(out.psi_factors.c_right);
    r.add("phi-full", "full", phi_full, "Bφ or φ_B is not surjective");
    r.add("psi-full", "full", psi_full, "Cψ or ψ_C is not surjective");
    if (!phi_full || !psi_full) {
        throw MathematicalRejection("full", std::string("the ") + (phi_full ? "right" : "left") +
                                                " integral is not full");
    }

    const bool phi_faithful = is_faithful(m.algebra(), out.phi);
    const bool psi_faithful = is_faithful(m.algebra(), out.psi);
    r.add("phi-faithful", "measured", phi_faithful, "Gram matrix of φ is singular");
    r.add("psi-faithful", "measured", psi_faithful, "Gram matrix of ψ is singular");
    if (!phi_faithful || !psi_faithful) {
        throw MathematicalRejection("measured", "the total integrals are not faithful");
    }

    const bool surjective = is_surjective(phi_c) && is_surjective(psi_b);
    r.add("full-partial-integrals-surjective", "full", surjective, "a partial integral of a full pair is not onto");
    if (!surjective) {
        throw std::logic_error("full total integrals with non-surjective partial integrals");
    }
    out.antipode = antipode_of(m);
    return out;
}

}  // namespace algebroid
