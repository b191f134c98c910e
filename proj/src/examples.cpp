#include "algebroid/examples.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "algebroid/tensor.hpp"

namespace algebroid {

namespace {

void require(bool condition, const std::string& equation, const std::string& message) {
    if (!condition) {
        throw MathematicalRejection(equation, message);
    }
}

Matrix permutation_matrix(const std::vector<std::size_t>& image) {
    Matrix m(image.size(), image.size());
    for (std::size_t j = 0; j < image.size(); ++j) {
        m.at(image[j], j) = Scalar(1);
    }
    return m;
}

/// Normalizes a spanning vector of a one-dimensional solution space.
Vector normalized(Vector v) {
    const auto it = std::find_if(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); });
    if (it == v.end()) {
        return v;
    }
    return scale(it->inverse(), v);
}

Vector functional_on_products(const FiniteAlgebra& h, const Vector& phi, std::size_t a) {
    // b -> φ(e_a e_b)
    Vector out(h.dim());
    for (std::size_t b = 0; b < h.dim(); ++b) {
        const Vector& p = h.product(a, b);
        for (std::size_t k = 0; k < h.dim(); ++k) {
            out[b] += p[k] * phi[k];
        }
    }
    return out;
}

Scalar pair(const Vector& functional, const Vector& v) {
    Scalar s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) {
            s += functional[k] * v[k];
        }
    }
    return s;
}

/// One-dimensional space of invariant functionals: (ι⊗φ)Δ(a) = φ(a)1 or (φ⊗ι)Δ(a) = φ(a)1.
Vector invariant_functional(const FiniteAlgebra& h, const Matrix& delta, bool left) {
    const std::size_t n = h.dim();
    const Vector& one = h.one();
    std::vector<Vector> rows;
    for (std::size_t a = 0; a < n; ++a) {
        const Vector d = delta.column(a);
        for (std::size_t r = 0; r < n; ++r) {
            Vector row(n);
            for (std::size_t idx = 0; idx < n * n; ++idx) {
                const std::size_t p = idx / n;
                const std::size_t q = idx % n;
                if (left && p == r) {
                    row[q] += d[idx];
                } else if (!left && q == r) {
                    row[p] += d[idx];
                }
            }
            row[a] -= one[r];
            rows.push_back(std::move(row));
        }
    }
    const auto k = kernel(Matrix::from_rows(n, rows));
    require(k.size() == 1, "integrals-mha", "the space of invariant functionals is not one-dimensional");
    return normalized(k.front());
}

void fill_integrals(FiniteHopf& hopf) {
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t n = h.dim();
    hopf.left_integral = invariant_functional(h, hopf.delta, true);
    hopf.right_integral = invariant_functional(h, hopf.delta, false);
    std::vector<Vector> gram_rows;
    for (std::size_t a = 0; a < n; ++a) {
        gram_rows.push_back(functional_on_products(h, hopf.left_integral, a));
    }
    // gram(a, b) = φ(e_a e_b)
    const Matrix gram = Matrix::from_rows(n, gram_rows);
    Vector rhs(n);
    for (std::size_t a = 0; a < n; ++a) {
        rhs[a] = pair(hopf.left_integral, hopf.antipode.column(a));
    }
    const auto delta = solve_linear(gram, rhs);
    require(delta.has_value(), "integrals-mha", "no modular element");
    hopf.modular_element = *delta;
    const Matrix gram_t = gram.transpose();
    std::vector<Vector> columns;
    for (std::size_t a = 0; a < n; ++a) {
        // Σ_r σ(r, a) φ(e_b e_r) = φ(e_a e_b) for all b.
        const auto col = solve_linear(gram, gram_t.column(a));
        require(col.has_value(), "integrals-mha", "no modular automorphism");
        columns.push_back(*col);
    }
    hopf.modular_automorphism = Matrix::from_columns(n, columns);
}

std::vector<std::string> group_labels(const FiniteGroup& group, const char* prefix) {
    std::vector<std::string> out;
    for (const auto& g : group.labels) {
        out.push_back(prefix + g);
    }
    return out;
}

AlgebraPtr make(FiniteAlgebra a) { return std::make_shared<const FiniteAlgebra>(std::move(a)); }

Vector action_on(const std::vector<Matrix>& action, const Vector& h, const Vector& y) {
    Vector out(y.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!h[k].is_zero()) {
            axpy(h[k], action[k].apply(y), out);
        }
    }
    return out;
}

Matrix action_matrix(const std::vector<Matrix>& action, const Vector& h, std::size_t dim) {
    Matrix out(dim, dim);
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (h[k].is_zero()) {
            continue;
        }
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                out.at(r, c) += h[k] * action[k].at(r, c);
            }
        }
    }
    return out;
}

Matrix vectors_to_matrix(std::size_t rows, const std::vector<Vector>& columns) {
    return Matrix::from_columns(rows, columns);
}

}  // namespace

std::size_t FiniteGroup::inverse(std::size_t g) const {
    for (std::size_t h = 0; h < order(); ++h) {
        if (multiply(g, h) == 0) {
            return h;
        }
    }
    throw MathematicalRejection("group", "element " + labels.at(g) + " has no inverse");
}

bool FiniteGroup::is_central(std::size_t g) const {
    for (std::size_t h = 0; h < order(); ++h) {
        if (multiply(g, h) != multiply(h, g)) {
            return false;
        }
    }
    return true;
}

FiniteGroup cyclic_group(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("cyclic group of order zero");
    }
    FiniteGroup g;
    for (std::size_t k = 0; k < n; ++k) {
        g.labels.push_back(k == 0 ? "e" : "g" + (k == 1 ? std::string{} : "^" + std::to_string(k)));
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            g.table.push_back((a + b) % n);
        }
    }
    return g;
}

FiniteGroup symmetric_group_3() {
    using Perm = std::array<std::size_t, 3>;
    const std::vector<Perm> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    FiniteGroup g;
    g.labels = {"e", "(01)", "(12)", "(02)", "(012)", "(021)"};
    for (const Perm& p : perms) {
        for (const Perm& q : perms) {
            // (pq)(i) = p(q(i))
            const Perm r = {p[q[0]], p[q[1]], p[q[2]]};
            g.table.push_back(static_cast<std::size_t>(std::find(perms.begin(), perms.end(), r) - perms.begin()));
        }
    }
    return g;
}

void validate_group(const FiniteGroup& group) {
    const std::size_t n = group.order();
    require(n > 0 && group.table.size() == n * n, "group", "table has the wrong size");
    for (std::size_t x : group.table) {
        require(x < n, "group", "table entry out of range");
    }
    for (std::size_t a = 0; a < n; ++a) {
        require(group.multiply(0, a) == a && group.multiply(a, 0) == a, "group", "element 0 is not the identity");
        group.inverse(a);
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                require(group.multiply(group.multiply(a, b), c) == group.multiply(a, group.multiply(b, c)), "group",
                        "multiplication is not associative");
            }
        }
    }
}

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> arrows, std::vector<std::size_t> units,
                               std::vector<std::size_t> source, std::vector<std::size_t> target,
                               std::vector<std::optional<std::size_t>> composition, std::vector<std::size_t> inverse)
    : arrows_(std::move(arrows)),
      units_(std::move(units)),
      source_(std::move(source)),
      target_(std::move(target)),
      composition_(std::move(composition)),
      inverse_(std::move(inverse)) {
    const std::size_t n = arrows_.size();
    if (n == 0 || source_.size() != n || target_.size() != n || inverse_.size() != n ||
        composition_.size() != n * n) {
        throw SchemaError("groupoid", "arrow, source, target, inverse and composition sizes disagree");
    }
    unit_position_.assign(n, std::nullopt);
    for (std::size_t k = 0; k < units_.size(); ++k) {
        if (units_[k] >= n || unit_position_[units_[k]]) {
            throw SchemaError("groupoid.units", "unit index out of range or repeated");
        }
        unit_position_[units_[k]] = k;
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (source_[a] >= n || target_[a] >= n || inverse_[a] >= n || !unit_position_[source_[a]] ||
            !unit_position_[target_[a]]) {
            throw SchemaError("groupoid.arrows[" + arrows_[a] + "]", "source, target or inverse is not valid");
        }
        for (std::size_t b = 0; b < n; ++b) {
            const auto& c = composition_[a * n + b];
            if (c && *c >= n) {
                throw SchemaError("groupoid.compose", "composite out of range");
            }
        }
    }
    const std::string eq = "groupoid";
    for (std::size_t u : units_) {
        require(source_[u] == u && target_[u] == u, eq, "unit " + arrows_[u] + " is not its own source and target");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto c = compose(a, b);
            require(c.has_value() == (source_[a] == target_[b]), eq,
                    "composite of " + arrows_[a] + " and " + arrows_[b] + " is defined exactly when s = t fails");
            if (c) {
                require(source_[*c] == source_[b] && target_[*c] == target_[a], eq,
                        "composite of " + arrows_[a] + " and " + arrows_[b] + " has the wrong source or target");
            }
        }
        require(compose(target_[a], a) == a && compose(a, source_[a]) == a, eq,
                "units are not neutral on " + arrows_[a]);
        const std::size_t inv = inverse_[a];
        require(compose(a, inv) == target_[a] && compose(inv, a) == source_[a], eq,
                "inverse of " + arrows_[a] + " is wrong");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto ab = compose(a, b);
            if (!ab) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                const auto bc = compose(b, c);
                if (bc) {
                    require(compose(*ab, c) == compose(a, *bc), eq,
                            "composition is not associative on (" + arrows_[a] + ", " + arrows_[b] + ", " +
                                arrows_[c] + ")");
                }
            }
        }
    }
}

std::vector<std::string> FiniteGroupoid::unit_labels() const {
    std::vector<std::string> out;
    for (std::size_t u : units_) {
        out.push_back(arrows_[u]);
    }
    return out;
}

std::optional<std::size_t> FiniteGroupoid::find(const std::string& label) const {
    const auto it = std::find(arrows_.begin(), arrows_.end(), label);
    if (it == arrows_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - arrows_.begin());
}

FiniteGroupoid pair_groupoid(std::size_t points) {
    const std::size_t n = points * points;
    const auto arrow = [points](std::size_t i, std::size_t j) { return i * points + j; };
    std::vector<std::string> arrows;
    std::vector<std::size_t> units;
    std::vector<std::size_t> source(n);
    std::vector<std::size_t> target(n);
    std::vector<std::size_t> inverse(n);
    std::vector<std::optional<std::size_t>> composition(n * n);
    for (std::size_t i = 0; i < points; ++i) {
        for (std::size_t j = 0; j < points; ++j) {
            arrows.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            target[arrow(i, j)] = arrow(i, i);
            source[arrow(i, j)] = arrow(j, j);
            inverse[arrow(i, j)] = arrow(j, i);
            for (std::size_t k = 0; k < points; ++k) {
                composition[arrow(i, j) * n + arrow(j, k)] = arrow(i, k);
            }
        }
        units.push_back(arrow(i, i));
    }
    return FiniteGroupoid(std::move(arrows), std::move(units), std::move(source), std::move(target),
                          std::move(composition), std::move(inverse));
}

FiniteGroupoid group_groupoid(const FiniteGroup& group) {
    validate_group(group);
    const std::size_t n = group.order();
    std::vector<std::optional<std::size_t>> composition(n * n);
    std::vector<std::size_t> inverse(n);
    for (std::size_t a = 0; a < n; ++a) {
        inverse[a] = group.inverse(a);
        for (std::size_t b = 0; b < n; ++b) {
            composition[a * n + b] = group.multiply(a, b);
        }
    }
    return FiniteGroupoid(group.labels, {0}, std::vector<std::size_t>(n, 0), std::vector<std::size_t>(n, 0),
                          std::move(composition), std::move(inverse));
}

FiniteGroupoid point_groupoid() { return FiniteGroupoid({"u"}, {0}, {0}, {0}, {std::size_t{0}}, {0}); }

FiniteGroupoid disjoint_union(const FiniteGroupoid& first, const FiniteGroupoid& second) {
    const std::size_t n1 = first.size();
    const std::size_t n = n1 + second.size();
    std::vector<std::string> arrows;
    for (const auto& a : first.arrows()) {
        arrows.push_back(a + ".1");
    }
    for (const auto& a : second.arrows()) {
        arrows.push_back(a + ".2");
    }
    std::vector<std::size_t> units = first.units();
    for (std::size_t u : second.units()) {
        units.push_back(u + n1);
    }
    std::vector<std::size_t> source;
    std::vector<std::size_t> target;
    std::vector<std::size_t> inverse;
    std::vector<std::optional<std::size_t>> composition(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        const bool in_first = a < n1;
        const FiniteGroupoid& g = in_first ? first : second;
        const std::size_t offset = in_first ? 0 : n1;
        const std::size_t local = a - offset;
        source.push_back(g.source(local) + offset);
        target.push_back(g.target(local) + offset);
        inverse.push_back(g.inverse(local) + offset);
        for (std::size_t b = offset; b < offset + g.size(); ++b) {
            const auto c = g.compose(local, b - offset);
            if (c) {
                composition[a * n + b] = *c + offset;
            }
        }
    }
    return FiniteGroupoid(std::move(arrows), std::move(units), std::move(source), std::move(target),
                          std::move(composition), std::move(inverse));
}

FiniteHopf group_algebra_hopf(const FiniteGroup& group) {
    validate_group(group);
    const std::size_t n = group.order();
    std::vector<Vector> products;
    std::vector<std::size_t> inverses;
    for (std::size_t a = 0; a < n; ++a) {
        inverses.push_back(group.inverse(a));
        for (std::size_t b = 0; b < n; ++b) {
            products.push_back(unit_vector(n, group.multiply(a, b)));
        }
    }
    FiniteHopf hopf;
    hopf.name = "group algebra";
    hopf.algebra =
        make(FiniteAlgebra(n, std::move(products), group.labels).with_involution(permutation_matrix(inverses)));
    std::vector<Vector> delta;
    for (std::size_t a = 0; a < n; ++a) {
        delta.push_back(unit_vector(n * n, a * n + a));
    }
    hopf.delta = Matrix::from_columns(n * n, delta);
    hopf.counit = Vector(n, Scalar(1));
    hopf.antipode = permutation_matrix(inverses);
    fill_integrals(hopf);
    return hopf;
}

FiniteHopf function_algebra_hopf(const FiniteGroup& group) {
    validate_group(group);
    const std::size_t n = group.order();
    std::vector<std::size_t> inverses;
    std::vector<Vector> delta(n, Vector(n * n));
    for (std::size_t a = 0; a < n; ++a) {
        inverses.push_back(group.inverse(a));
        for (std::size_t b = 0; b < n; ++b) {
            delta[group.multiply(a, b)][a * n + b] = Scalar(1);
        }
    }
    FiniteHopf hopf;
    hopf.name = "function algebra";
    hopf.algebra = make(function_algebra(n, group_labels(group, "δ")).with_involution(Matrix::identity(n)));
    hopf.delta = Matrix::from_columns(n * n, delta);
    hopf.counit = unit_vector(n, 0);
    hopf.antipode = permutation_matrix(inverses);
    fill_integrals(hopf);
    return hopf;
}

Report check_hopf(const FiniteHopf& hopf) {
    Report r;
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t n = h.dim();
    r.append(check_algebra(h), "H:");
    const Vector& one = h.one();
    const auto d = [&](const Vector& a) { return hopf.delta.apply(a); };

    std::string mult;
    if (d(one) != tensor(one, one)) {
        mult = "Δ(1)";
    }
    for (std::size_t a = 0; a < n && mult.empty(); ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (d(h.product(a, b)) != multiply_legs(h, d(h.basis(a)), d(h.basis(b)))) {
                mult = "(" + h.label(a) + ", " + h.label(b) + ")";
                break;
            }
        }
    }
    r.add("hopf-delta-multiplicative", "integrals-mha", mult.empty(), mult);

    std::string coassoc;
    std::string counit;
    std::string antipode;
    for (std::size_t a = 0; a < n; ++a) {
        const Vector da = d(h.basis(a));
        Vector lhs(n * n * n);
        Vector rhs(n * n * n);
        Vector left_counit(n);
        Vector right_counit(n);
        Vector s_left(n);
        Vector s_right(n);
        for (std::size_t idx = 0; idx < n * n; ++idx) {
            if (da[idx].is_zero()) {
                continue;
            }
            const std::size_t p = idx / n;
            const std::size_t q = idx % n;
            axpy(da[idx], tensor(d(h.basis(p)), h.basis(q)), lhs);
            axpy(da[idx], tensor(h.basis(p), d(h.basis(q))), rhs);
            axpy(da[idx] * hopf.counit[p], h.basis(q), left_counit);
            axpy(da[idx] * hopf.counit[q], h.basis(p), right_counit);
            axpy(da[idx], h.multiply(hopf.antipode.column(p), h.basis(q)), s_left);
            axpy(da[idx], h.multiply(h.basis(p), hopf.antipode.column(q)), s_right);
        }
        if (coassoc.empty() && lhs != rhs) {
            coassoc = "at " + h.label(a);
        }
        if (counit.empty() && (left_counit != h.basis(a) || right_counit != h.basis(a))) {
            counit = "at " + h.label(a);
        }
        const Vector expected = scale(hopf.counit[a], one);
        if (antipode.empty() && (s_left != expected || s_right != expected)) {
            antipode = "at " + h.label(a);
        }
    }
    r.add("hopf-coassociative", "integrals-mha", coassoc.empty(), coassoc);
    r.add("hopf-counit", "integrals-mha", counit.empty(), counit);
    r.add("hopf-antipode", "integrals-mha", antipode.empty(), antipode);
    std::string eps_mult;
    for (std::size_t a = 0; a < n && eps_mult.empty(); ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (pair(hopf.counit, h.product(a, b)) != hopf.counit[a] * hopf.counit[b]) {
                eps_mult = "(" + h.label(a) + ", " + h.label(b) + ")";
                break;
            }
        }
    }
    r.add("hopf-counit-multiplicative", "integrals-mha", eps_mult.empty(), eps_mult);

    std::string left;
    std::string right;
    for (std::size_t a = 0; a < n; ++a) {
        const Vector da = d(h.basis(a));
        Vector l(n);
        Vector rr(n);
        for (std::size_t idx = 0; idx < n * n; ++idx) {
            if (!da[idx].is_zero()) {
                axpy(da[idx] * hopf.left_integral[idx % n], h.basis(idx / n), l);
                axpy(da[idx] * hopf.right_integral[idx / n], h.basis(idx % n), rr);
            }
        }
        if (left.empty() && l != scale(hopf.left_integral[a], one)) {
            left = "at " + h.label(a);
        }
        if (right.empty() && rr != scale(hopf.right_integral[a], one)) {
            right = "at " + h.label(a);
        }
    }
    r.add("hopf-left-integral", "integrals-mha", left.empty() && !is_zero(hopf.left_integral), left);
    r.add("hopf-right-integral", "integrals-mha-right", right.empty() && !is_zero(hopf.right_integral), right);

    std::string modular;
    for (std::size_t a = 0; a < n && modular.empty(); ++a) {
        if (pair(hopf.left_integral, hopf.antipode.column(a)) !=
            pair(hopf.left_integral, h.multiply(h.basis(a), hopf.modular_element))) {
            modular = "φ∘S at " + h.label(a);
        }
        for (std::size_t b = 0; b < n && modular.empty(); ++b) {
            if (pair(hopf.left_integral, h.product(a, b)) !=
                pair(hopf.left_integral, h.multiply(h.basis(b), hopf.modular_automorphism.column(a)))) {
                modular = "σ at (" + h.label(a) + ", " + h.label(b) + ")";
            }
        }
    }
    r.add("hopf-modular-data", "integrals-mha", modular.empty(), modular);
    return r;
}

Report check_left_action(const FiniteAlgebra& c, const FiniteHopf& hopf, const std::vector<Matrix>& action) {
    Report r;
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t n = h.dim();
    const std::size_t m = c.dim();
    if (action.size() != n) {
        r.add("action-shape", "chb-action-algebra", false, "expected one matrix per basis element of H");
        return r;
    }
    std::string law;
    if (action_matrix(action, h.one(), m) != Matrix::identity(m)) {
        law = "1 does not act as the identity";
    }
    for (std::size_t a = 0; a < n && law.empty(); ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (action_matrix(action, h.product(a, b), m) != action[a] * action[b]) {
                law = "(" + h.label(a) + ", " + h.label(b) + ")";
                break;
            }
        }
    }
    r.add("left-action-module", "chb-action-algebra", law.empty(), law);
    std::string algebra;
    for (std::size_t k = 0; k < n && algebra.empty(); ++k) {
        const Vector dk = hopf.delta.column(k);
        if (c.unit() && action[k].apply(*c.unit()) != scale(hopf.counit[k], *c.unit())) {
            algebra = h.label(k) + " ▷ 1";
            break;
        }
        for (std::size_t i = 0; i < m && algebra.empty(); ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                Vector rhs(m);
                for (std::size_t idx = 0; idx < n * n; ++idx) {
                    if (!dk[idx].is_zero()) {
                        axpy(dk[idx],
                             c.multiply(action[idx / n].column(i), action[idx % n].column(j)), rhs);
                    }
                }
                if (action[k].apply(c.product(i, j)) != rhs) {
                    algebra = h.label(k) + " on (" + c.label(i) + ", " + c.label(j) + ")";
                    break;
                }
            }
        }
    }
    r.add("left-action-module-algebra", "chb-action-algebra", algebra.empty(), algebra);
    return r;
}

Report check_right_action(const FiniteAlgebra& b, const FiniteHopf& hopf, const std::vector<Matrix>& action) {
    Report r;
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t n = h.dim();
    const std::size_t m = b.dim();
    if (action.size() != n) {
        r.add("action-shape", "chb-action-algebra", false, "expected one matrix per basis element of H");
        return r;
    }
    std::string law;
    if (action_matrix(action, h.one(), m) != Matrix::identity(m)) {
        law = "1 does not act as the identity";
    }
    for (std::size_t p = 0; p < n && law.empty(); ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            // (x ◁ h) ◁ h' = x ◁ hh'
            if (action_matrix(action, h.product(p, q), m) != action[q] * action[p]) {
                law = "(" + h.label(p) + ", " + h.label(q) + ")";
                break;
            }
        }
    }
    r.add("right-action-module", "chb-action-algebra", law.empty(), law);
    std::string algebra;
    for (std::size_t k = 0; k < n && algebra.empty(); ++k) {
        const Vector dk = hopf.delta.column(k);
        if (b.unit() && action[k].apply(*b.unit()) != scale(hopf.counit[k], *b.unit())) {
            algebra = "1 ◁ " + h.label(k);
            break;
        }
        for (std::size_t i = 0; i < m && algebra.empty(); ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                Vector rhs(m);
                for (std::size_t idx = 0; idx < n * n; ++idx) {
                    if (!dk[idx].is_zero()) {
                        axpy(dk[idx], b.multiply(action[idx / n].column(i), action[idx % n].column(j)), rhs);
                    }
                }
                if (action[k].apply(b.product(i, j)) != rhs) {
                    algebra = h.label(k) + " on (" + b.label(i) + ", " + b.label(j) + ")";
                    break;
                }
            }
        }
    }
    r.add("right-action-module-algebra", "chb-action-algebra", algebra.empty(), algebra);
    return r;
}

std::optional<std::string> symmetry_witness(const FiniteHopf& hopf, const std::vector<Matrix>& action) {
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t n = h.dim();
    const std::size_t m = action.front().rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Vector dk = hopf.delta.column(k);
        for (std::size_t i = 0; i < m; ++i) {
            Vector lhs(n * m);
            Vector rhs(n * m);
            for (std::size_t idx = 0; idx < n * n; ++idx) {
                if (dk[idx].is_zero()) {
                    continue;
                }
                const std::size_t p = idx / n;
                const std::size_t q = idx % n;
                axpy(dk[idx], tensor(h.basis(p), action[q].column(i)), lhs);
                axpy(dk[idx], tensor(h.basis(q), action[p].column(i)), rhs);
            }
            if (lhs != rhs) {
                return h.label(k) + " on basis element " + std::to_string(i);
            }
        }
    }
    return std::nullopt;
}

std::vector<Matrix> swap_action(const FiniteHopf& group_algebra_z2) {
    if (group_algebra_z2.dim() != 2) {
        throw std::invalid_argument("swap action needs a two-dimensional Hopf algebra");
    }
    Matrix swap(2, 2);
    swap.at(0, 1) = Scalar(1);
    swap.at(1, 0) = Scalar(1);
    return {Matrix::identity(2), swap};
}

GradedAlgebra graded_subgroup_algebra(const FiniteGroup& group, const std::vector<std::size_t>& subgroup) {
    const std::size_t m = subgroup.size();
    std::vector<Vector> products;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
        labels.push_back(group.labels.at(subgroup[i]));
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t g = group.multiply(subgroup[i], subgroup[j]);
            const auto it = std::find(subgroup.begin(), subgroup.end(), g);
            require(it != subgroup.end(), "chb-action-algebra", "the given elements do not form a subgroup");
            products.push_back(unit_vector(m, static_cast<std::size_t>(it - subgroup.begin())));
        }
    }
    GradedAlgebra out;
    out.algebra = make(FiniteAlgebra(m, std::move(products), std::move(labels)));
    for (std::size_t g = 0; g < group.order(); ++g) {
        Matrix a(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            if (subgroup[i] == g) {
                a.at(i, i) = Scalar(1);
            }
        }
        out.action.push_back(std::move(a));
    }
    return out;
}

AlgebroidPtr build_function_algebroid(const FiniteGroupoid& groupoid) {
    const std::size_t n = groupoid.size();
    const std::size_t u = groupoid.unit_count();
    AlgebroidData d;
    d.name = "function algebroid";
    d.total = make(function_algebra(n, groupoid.arrows()).with_involution(Matrix::identity(n)));
    d.base_b = make(function_algebra(u, groupoid.unit_labels()).with_involution(Matrix::identity(u)));
    d.base_c = make(function_algebra(u, groupoid.unit_labels()).with_involution(Matrix::identity(u)));
    d.embed_b = Matrix(n, u);
    d.embed_c = Matrix(n, u);
    std::vector<std::size_t> inverses;
    Matrix counit(u, n);
    Matrix delta(n * n, n);
    for (std::size_t a = 0; a < n; ++a) {
        d.embed_b.at(a, groupoid.source_unit(a)) = Scalar(1);
        d.embed_c.at(a, groupoid.target_unit(a)) = Scalar(1);
        inverses.push_back(groupoid.inverse(a));
        if (groupoid.is_unit(a)) {
            counit.at(groupoid.source_unit(a), a) = Scalar(1);
        }
        for (std::size_t b = 0; b < n; ++b) {
            if (const auto c = groupoid.compose(a, b)) {
                delta.at(a * n + b, *c) = Scalar(1);
            }
        }
    }
    d.s_b = Matrix::identity(u);
    d.s_c = Matrix::identity(u);
    d.delta_b = delta;
    d.delta_c = delta;
    d.counit_b = counit;
    d.counit_c = counit;
    d.antipode = permutation_matrix(inverses);
    return make_algebroid(std::move(d));
}

AlgebroidPtr build_convolution_algebroid(const FiniteGroupoid& groupoid) {
    const std::size_t n = groupoid.size();
    const std::size_t u = groupoid.unit_count();
    std::vector<Vector> products;
    std::vector<std::size_t> inverses;
    for (std::size_t a = 0; a < n; ++a) {
        inverses.push_back(groupoid.inverse(a));
        for (std::size_t b = 0; b < n; ++b) {
            const auto c = groupoid.compose(a, b);
            products.push_back(c ? unit_vector(n, *c) : zero_vector(n));
        }
    }
    AlgebroidData d;
    d.name = "convolution algebroid";
    d.total = make(FiniteAlgebra(n, std::move(products), groupoid.arrows()).with_involution(permutation_matrix(inverses)));
    d.base_b = make(function_algebra(u, groupoid.unit_labels()).with_involution(Matrix::identity(u)));
    d.base_c = make(function_algebra(u, groupoid.unit_labels()).with_involution(Matrix::identity(u)));
    d.embed_b = Matrix(n, u);
    for (std::size_t k = 0; k < u; ++k) {
        d.embed_b.at(groupoid.units()[k], k) = Scalar(1);
    }
    d.embed_c = d.embed_b;
    d.s_b = Matrix::identity(u);
    d.s_c = Matrix::identity(u);
    Matrix delta(n * n, n);
    Matrix counit_b(u, n);
    Matrix counit_c(u, n);
    for (std::size_t a = 0; a < n; ++a) {
        delta.at(a * n + a, a) = Scalar(1);
        counit_b.at(groupoid.target_unit(a), a) = Scalar(1);
        counit_c.at(groupoid.source_unit(a), a) = Scalar(1);
    }
    d.delta_b = delta;
    d.delta_c = delta;
    d.counit_b = counit_b;
    d.counit_c = counit_c;
    d.antipode = permutation_matrix(inverses);
    return make_algebroid(std::move(d));
}

AlgebroidPtr build_tensor_algebroid(AlgebraPtr b, AlgebraPtr c, const Matrix& s_b, const Matrix& s_c) {
    const std::size_t nb = b->dim();
    const std::size_t nc = c->dim();
    const std::size_t n = nb * nc;
    const auto sb_hom = homomorphism_witness(*b, *c, s_b, true);
    const auto sc_hom = homomorphism_witness(*c, *b, s_c, true);
    require(!sb_hom && !sc_hom, "mult-hopf-algebroid", "S_B or S_C is not an anti-homomorphism");
    const auto sb_inv = inverse(s_b);
    const auto sc_inv = inverse(s_c);
    require(sb_inv && sc_inv, "mult-hopf-algebroid", "S_B or S_C is not bijective");
    FiniteAlgebra total = tensor_algebra(*c, *b);
    if (b->has_involution() && c->has_involution()) {
        total = total.with_involution(kronecker(c->involution(), b->involution()));
    }
    AlgebroidData d;
    d.name = "tensor algebroid";
    d.total = make(std::move(total));
    d.base_b = b;
    d.base_c = c;
    const Vector& one_b = b->one();
    const Vector& one_c = c->one();
    std::vector<Vector> eb;
    std::vector<Vector> ec;
    for (std::size_t j = 0; j < nb; ++j) {
        eb.push_back(tensor(one_c, b->basis(j)));
    }
    for (std::size_t i = 0; i < nc; ++i) {
        ec.push_back(tensor(c->basis(i), one_b));
    }
    d.embed_b = vectors_to_matrix(n, eb);
    d.embed_c = vectors_to_matrix(n, ec);
    d.s_b = s_b;
    d.s_c = s_c;
    Matrix delta(n * n, n);
    Matrix counit_b(nb, n);
    Matrix counit_c(nc, n);
    Matrix antipode(n, n);
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            const std::size_t a = i * nb + j;
            const Vector dv = tensor(ec[i], eb[j]);
            const Vector eps_b = b->multiply(b->basis(j), sb_inv->column(i));
            const Vector eps_c = c->multiply(sc_inv->column(j), c->basis(i));
            const Vector s = tensor(s_b.column(j), s_c.column(i));
            for (std::size_t k = 0; k < n * n; ++k) {
                delta.at(k, a) = dv[k];
            }
            for (std::size_t k = 0; k < nb; ++k) {
                counit_b.at(k, a) = eps_b[k];
            }
            for (std::size_t k = 0; k < nc; ++k) {
                counit_c.at(k, a) = eps_c[k];
            }
            for (std::size_t k = 0; k < n; ++k) {
                antipode.at(k, a) = s[k];
            }
        }
    }
    d.delta_b = delta;
    d.delta_c = delta;
    d.counit_b = counit_b;
    d.counit_c = counit_c;
    d.antipode = antipode;
    return make_algebroid(std::move(d));
}

AlgebroidPtr build_crossed_product(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action) {
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t nh = h.dim();
    const std::size_t nc = c->dim();
    const std::size_t n = nc * nh;
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            require(c->product(i, j) == c->product(j, i), "hopf-ch", "the base algebra is not commutative");
        }
    }
    const Report law = check_left_action(*c, hopf, action);
    require(law.passed(), "chb-action-algebra", "not a unital module-algebra action: " + law.summary());
    if (const auto w = symmetry_witness(hopf, action)) {
        throw MathematicalRejection("ch-symmetric", "the action is not symmetric at " + *w,
                                    "the grading must take values in the center");
    }
    const auto index = [nh](std::size_t i, std::size_t k) { return i * nh + k; };
    std::vector<Vector> products;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t a = 0; a < nh; ++a) {
            labels.push_back(c->label(i) + "·" + h.label(a));
        }
    }
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t a = 0; a < nh; ++a) {
            const Vector da = hopf.delta.column(a);
            for (std::size_t j = 0; j < nc; ++j) {
                for (std::size_t b = 0; b < nh; ++b) {
                    // (y_i h_a)(y_j h_b) = Σ y_i (h_p ▷ y_j) ⊗ h_q h_b
                    Vector out(n);
                    for (std::size_t idx = 0; idx < nh * nh; ++idx) {
                        if (!da[idx].is_zero()) {
                            const std::size_t p = idx / nh;
                            const std::size_t q = idx % nh;
                            axpy(da[idx], tensor(c->multiply(c->basis(i), action[p].column(j)), h.product(q, b)),
                                 out);
                        }
                    }
                    products.push_back(std::move(out));
                }
            }
        }
    }
    FiniteAlgebra total(n, std::move(products), labels);
    const Vector& one_h = h.one();
    const Vector& one_c = c->one();
    std::vector<Vector> embed;
    for (std::size_t i = 0; i < nc; ++i) {
        embed.push_back(tensor(c->basis(i), one_h));
    }
    if (c->has_involution() && h.has_involution()) {
        std::vector<Vector> stars;
        for (std::size_t i = 0; i < nc; ++i) {
            for (std::size_t a = 0; a < nh; ++a) {
                stars.push_back(total.multiply(tensor(one_c, h.star(h.basis(a))), tensor(c->star(c->basis(i)), one_h)));
            }
        }
        total = total.with_involution(Matrix::from_columns(n, stars));
    }
    AlgebroidData d;
    d.name = "crossed product";
    d.total = make(std::move(total));
    d.base_b = c;
    d.base_c = c;
    d.embed_b = vectors_to_matrix(n, embed);
    d.embed_c = d.embed_b;
    d.s_b = Matrix::identity(nc);
    d.s_c = Matrix::identity(nc);
    const auto sh_inv = inverse(hopf.antipode);
    require(sh_inv.has_value(), "hopf-ch", "the antipode of H is not bijective");
    Matrix delta(n * n, n);
    Matrix counit_b(nc, n);
    Matrix counit_c(nc, n);
    Matrix antipode(n, n);
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t a = 0; a < nh; ++a) {
            const std::size_t col = index(i, a);
            // y h = h(2) (S⁻¹(h(1)) ▷ y), so ε_C(y h) = S⁻¹(h) ▷ y.
            const Vector eps_c = action_on(action, sh_inv->column(a), c->basis(i));
            for (std::size_t k = 0; k < nc; ++k) {
                counit_c.at(k, col) = eps_c[k];
            }
            const Vector da = hopf.delta.column(a);
            Vector dv(n * n);
            for (std::size_t idx = 0; idx < nh * nh; ++idx) {
                if (!da[idx].is_zero()) {
                    axpy(da[idx], tensor(tensor(c->basis(i), h.basis(idx / nh)), tensor(one_c, h.basis(idx % nh))),
                         dv);
                }
            }
            for (std::size_t k = 0; k < n * n; ++k) {
                delta.at(k, col) = dv[k];
            }
            counit_b.at(i, col) = hopf.counit[a];
            const Vector s = d.total->multiply(tensor(one_c, hopf.antipode.column(a)), embed[i]);
            for (std::size_t k = 0; k < n; ++k) {
                antipode.at(k, col) = s[k];
            }
        }
    }
    d.delta_b = delta;
    d.delta_c = delta;
    d.counit_b = counit_b;
    d.counit_c = counit_c;
    d.antipode = antipode;
    return make_algebroid(std::move(d));
}

AlgebroidPtr build_two_sided(AlgebraPtr c, const FiniteHopf& hopf, AlgebraPtr b, const HopfAction& action,
                             const Matrix& s_b, const Matrix& s_c) {
    const FiniteAlgebra& h = *hopf.algebra;
    const std::size_t nh = h.dim();
    const std::size_t nc = c->dim();
    const std::size_t nb = b->dim();
    const std::size_t n = nc * nh * nb;
    const Report left = check_left_action(*c, hopf, action.on_c);
    require(left.passed(), "chb-action-algebra", "left action on C fails: " + left.summary());
    const Report right = check_right_action(*b, hopf, action.on_b);
    require(right.passed(), "chb-action-algebra", "right action on B fails: " + right.summary());
    require(!homomorphism_witness(*b, *c, s_b, true) && !homomorphism_witness(*c, *b, s_c, true),
            "mult-hopf-algebroid", "S_B or S_C is not an anti-homomorphism");
    const auto sb_inv = inverse(s_b);
    const auto sc_inv = inverse(s_c);
    const auto sh_inv = inverse(hopf.antipode);
    require(sb_inv && sc_inv && sh_inv, "mult-hopf-algebroid", "S_B, S_C or S_H is not bijective");
    for (std::size_t k = 0; k < nh; ++k) {
        const Vector sk = hopf.antipode.column(k);
        for (std::size_t j = 0; j < nb; ++j) {
            // S_B(x ◁ h) = S_H(h) ▷ S_B(x)
            if (s_b.apply(action.on_b[k].column(j)) != action_on(action.on_c, sk, s_b.column(j))) {
                throw MathematicalRejection("chb-action-antipode",
                                            "S_B(x ◁ h) differs from S_H(h) ▷ S_B(x) at (" + b->label(j) + ", " +
                                                h.label(k) + ")");
            }
        }
        for (std::size_t i = 0; i < nc; ++i) {
            // S_C(h ▷ y) = S_C(y) ◁ S_H(h)
            if (s_c.apply(action.on_c[k].column(i)) != action_on(action.on_b, sk, s_c.column(i))) {
                throw MathematicalRejection("chb-action-antipode",
                                            "S_C(h ▷ y) differs from S_C(y) ◁ S_H(h) at (" + h.label(k) + ", " +
                                                c->label(i) + ")");
            }
        }
    }
    const auto index = [nh, nb](std::size_t i, std::size_t k, std::size_t j) { return (i * nh + k) * nb + j; };
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t k = 0; k < nh; ++k) {
            for (std::size_t j = 0; j < nb; ++j) {
                labels[index(i, k, j)] = c->label(i) + "·" + h.label(k) + "·" + b->label(j);
            }
        }
    }
    std::vector<Vector> products;
    products.reserve(n * n);
    for (std::size_t lhs = 0; lhs < n; ++lhs) {
        const std::size_t i = lhs / (nh * nb);
        const std::size_t k = (lhs / nb) % nh;
        const std::size_t j = lhs % nb;
        const Vector dk = hopf.delta.column(k);
        for (std::size_t rhs = 0; rhs < n; ++rhs) {
            const std::size_t i2 = rhs / (nh * nb);
            const std::size_t k2 = (rhs / nb) % nh;
            const std::size_t j2 = rhs % nb;
            const Vector dk2 = hopf.delta.column(k2);
            // y (h(1) ▷ y') ⊗ h(2) h'(1) ⊗ (x ◁ h'(2)) x'
            Vector out(n);
            for (std::size_t a = 0; a < nh * nh; ++a) {
                if (dk[a].is_zero()) {
                    continue;
                }
                const Vector y = c->multiply(c->basis(i), action.on_c[a / nh].column(i2));
                for (std::size_t bb = 0; bb < nh * nh; ++bb) {
                    if (dk2[bb].is_zero()) {
                        continue;
                    }
                    const Vector x = b->multiply(action.on_b[bb % nh].column(j), b->basis(j2));
                    axpy(dk[a] * dk2[bb], tensor(y, h.product(a % nh, bb / nh), x), out);
                }
            }
            products.push_back(std::move(out));
        }
    }
    AlgebroidData d;
    d.name = "two-sided crossed product";
    d.total = make(FiniteAlgebra(n, std::move(products), std::move(labels)));
    d.base_b = b;
    d.base_c = c;
    const Vector& one_b = b->one();
    const Vector& one_c = c->one();
    const Vector& one_h = h.one();
    std::vector<Vector> eb;
    std::vector<Vector> ec;
    for (std::size_t j = 0; j < nb; ++j) {
        eb.push_back(tensor(one_c, one_h, b->basis(j)));
    }
    for (std::size_t i = 0; i < nc; ++i) {
        ec.push_back(tensor(c->basis(i), one_h, one_b));
    }
    d.embed_b = vectors_to_matrix(n, eb);
    d.embed_c = vectors_to_matrix(n, ec);
    d.s_b = s_b;
    d.s_c = s_c;
    Matrix delta(n * n, n);
    Matrix counit_b(nb, n);
    Matrix counit_c(nc, n);
    Matrix antipode(n, n);
    const FiniteAlgebra& a = *d.total;
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t k = 0; k < nh; ++k) {
            const Vector dk = hopf.delta.column(k);
            const Vector sk_inv = sh_inv->column(k);
            for (std::size_t j = 0; j < nb; ++j) {
                const std::size_t col = index(i, k, j);
                Vector dv(n * n);
                for (std::size_t idx = 0; idx < nh * nh; ++idx) {
                    if (!dk[idx].is_zero()) {
                        axpy(dk[idx],
                             tensor(tensor(c->basis(i), h.basis(idx / nh), one_b),
                                    tensor(one_c, h.basis(idx % nh), b->basis(j))),
                             dv);
                    }
                }
                // ε_B(y h x) = (x ◁ S_H⁻¹(h)) S_B⁻¹(y) and ε_C(y h x) = S_C⁻¹(x) (S_H⁻¹(h) ▷ y).
                const Vector eps_b =
                    b->multiply(action_matrix(action.on_b, sk_inv, nb).apply(b->basis(j)), sb_inv->column(i));
                const Vector eps_c =
                    c->multiply(sc_inv->column(j), action_matrix(action.on_c, sk_inv, nc).apply(c->basis(i)));
                const Vector s = a.multiply(a.multiply(d.embed_c.apply(s_b.column(j)),
                                                       tensor(one_c, hopf.antipode.column(k), one_b)),
                                            d.embed_b.apply(s_c.column(i)));
                for (std::size_t r = 0; r < n * n; ++r) {
                    delta.at(r, col) = dv[r];
                }
                for (std::size_t r = 0; r < nb; ++r) {
                    counit_b.at(r, col) = eps_b[r];
                }
                for (std::size_t r = 0; r < nc; ++r) {
                    counit_c.at(r, col) = eps_c[r];
                }
                for (std::size_t r = 0; r < n; ++r) {
                    antipode.at(r, col) = s[r];
                }
            }
        }
    }
    d.delta_b = delta;
    d.delta_c = delta;
    d.counit_b = counit_b;
    d.counit_c = counit_c;
    d.antipode = antipode;
    return make_algebroid(std::move(d));
}

IntegralPair groupoid_function_integrals(const FiniteGroupoid& groupoid, const Vector& weight) {
    const std::size_t n = groupoid.size();
    const std::size_t u = groupoid.unit_count();
    IntegralPair out{Matrix(u, n), Matrix(u, n)};
    for (std::size_t a = 0; a < n; ++a) {
        out.left.at(groupoid.target_unit(a), a) = weight.at(groupoid.source_unit(a));
        out.right.at(groupoid.source_unit(a), a) = weight.at(groupoid.target_unit(a));
    }
    return out;
}

IntegralPair convolution_integrals(const FiniteGroupoid& groupoid, const Vector& weight) {
    const std::size_t n = groupoid.size();
    const std::size_t u = groupoid.unit_count();
    IntegralPair out{Matrix(u, n), Matrix(u, n)};
    for (std::size_t k = 0; k < u; ++k) {
        out.left.at(k, groupoid.units()[k]) = weight.at(k);
        out.right.at(k, groupoid.units()[k]) = weight.at(k);
    }
    return out;
}

IntegralPair tensor_integrals(const FiniteAlgebra& b, const FiniteAlgebra& c, const Vector& upsilon,
                              const Vector& omega) {
    const std::size_t nb = b.dim();
    const std::size_t nc = c.dim();
    IntegralPair out{Matrix(nc, nc * nb), Matrix(nb, nc * nb)};
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            out.left.at(i, i * nb + j) = upsilon.at(j);
            out.right.at(j, i * nb + j) = omega.at(i);
        }
    }
    return out;
}

IntegralPair crossed_integrals(const FiniteAlgebra& c, const FiniteHopf& hopf) {
    const std::size_t nc = c.dim();
    const std::size_t nh = hopf.dim();
    IntegralPair out{Matrix(nc, nc * nh), Matrix(nc, nc * nh)};
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t k = 0; k < nh; ++k) {
            out.left.at(i, i * nh + k) = hopf.left_integral[k];
            out.right.at(i, i * nh + k) = hopf.right_integral[k];
        }
    }
    return out;
}

IntegralPair two_sided_integrals(const FiniteAlgebra& c, const FiniteHopf& hopf, const FiniteAlgebra& b,
                                 const Vector& upsilon, const Vector& omega) {
    const std::size_t nc = c.dim();
    const std::size_t nh = hopf.dim();
    const std::size_t nb = b.dim();
    const std::size_t n = nc * nh * nb;
    IntegralPair out{Matrix(nc, n), Matrix(nb, n)};
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t k = 0; k < nh; ++k) {
            for (std::size_t j = 0; j < nb; ++j) {
                const std::size_t col = (i * nh + k) * nb + j;
                out.left.at(i, col) = hopf.left_integral[k] * upsilon.at(j);
                out.right.at(j, col) = omega.at(i) * hopf.right_integral[k];
            }
        }
    }
    return out;
}

}  // namespace algebroid
