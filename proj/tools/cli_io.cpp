#include "cli_io.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

namespace cli {

using namespace algebroid;

namespace {

std::string rational_text(const mpq_class& q) { return q.get_str(); }

mpq_class rational_from(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        return mpq_class(j.get<long>());
    }
    if (!j.is_string()) {
        throw SchemaError(where, "expected a fraction string such as \"3/4\"");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(where, std::string("not an exact fraction: ") + e.what());
    }
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(where, std::string("missing \"") + key + "\"");
    }
    return j.at(key);
}

std::size_t index_from(const json& j, const std::string& where) {
    if (!j.is_number_unsigned()) {
        throw SchemaError(where, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

}  // namespace

json scalar_to_json(const Scalar& z) {
    if (const auto q = z.as_rational()) {
        return rational_text(*q);
    }
    json out = json::object();
    mpq_class re = 0;
    mpq_class im = 0;
    json roots = json::array();
    for (const Scalar::Term& t : z.terms()) {
        if (t.radicand == 1) {
            re = t.re;
            im = t.im;
        } else {
            roots.push_back({{"radicand", t.radicand}, {"re", rational_text(t.re)}, {"im", rational_text(t.im)}});
        }
    }
    out["re"] = rational_text(re);
    out["im"] = rational_text(im);
    if (!roots.empty()) {
        out["sqrt_part"] = roots;
    }
    return out;
}

Scalar scalar_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) {
        return Scalar(rational_from(j, where));
    }
    std::vector<Scalar::Term> terms;
    const mpq_class re = j.contains("re") ? rational_from(j.at("re"), where + ".re") : mpq_class(0);
    const mpq_class im = j.contains("im") ? rational_from(j.at("im"), where + ".im") : mpq_class(0);
    Scalar out(re, im);
    if (j.contains("sqrt_part")) {
        const json& roots = j.at("sqrt_part");
        if (!roots.is_array()) {
            throw SchemaError(where + ".sqrt_part", "expected an array");
        }
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const std::string at = where + ".sqrt_part[" + std::to_string(k) + "]";
            const std::size_t d = index_from(field(roots[k], "radicand", at), at + ".radicand");
            if (d == 0 || squarefree_kernel(d) != d) {
                throw SchemaError(at + ".radicand", "radicands must be square-free and positive");
            }
            const mpq_class r = roots[k].contains("re") ? rational_from(roots[k].at("re"), at + ".re") : mpq_class(0);
            const mpq_class i = roots[k].contains("im") ? rational_from(roots[k].at("im"), at + ".im") : mpq_class(0);
            out += Scalar(r, i) * Scalar::root(d);
        }
    }
    return out;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (const Scalar& z : v) {
        out.push_back(scalar_to_json(z));
    }
    return out;
}

Vector vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw SchemaError(where, "expected an array of scalars");
    }
    Vector out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(scalar_from_json(j[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.push_back(vector_to_json(m.row(i)));
    }
    return out;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw SchemaError(where, "expected an array of rows");
    }
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size()) {
            throw SchemaError(where + "[" + std::to_string(i) + "]", "rows differ in length");
        }
    }
    return Matrix::from_rows(rows.empty() ? 0 : rows.front().size(), rows);
}

json algebra_to_json(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    json structure = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            json sparse = json::array();
            const Vector& p = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (!p[k].is_zero()) {
                    sparse.push_back({k, scalar_to_json(p[k])});
                }
            }
            structure.push_back(sparse);
        }
    }
    json out = {{"dim", n}, {"structure", structure}, {"labels", a.labels()}};
    if (a.has_involution()) {
        out["involution"] = matrix_to_json(a.involution());
    }
    return out;
}

FiniteAlgebra algebra_from_json(const json& j, const std::string& where) {
    const std::size_t n = index_from(field(j, "dim", where), where + ".dim");
    const json& structure = field(j, "structure", where);
    if (!structure.is_array() || structure.size() != n * n) {
        throw SchemaError(where + ".structure", "expected dim² sparse products");
    }
    std::vector<Vector> products;
    for (std::size_t p = 0; p < n * n; ++p) {
        const std::string at = where + ".structure[" + std::to_string(p) + "]";
        Vector v(n);
        if (!structure[p].is_array()) {
            throw SchemaError(at, "expected [[k, coeff], ...]");
        }
        for (std::size_t t = 0; t < structure[p].size(); ++t) {
            const json& term = structure[p][t];
            const std::string tat = at + "[" + std::to_string(t) + "]";
            if (!term.is_array() || term.size() != 2) {
                throw SchemaError(tat, "expected [k, coeff]");
            }
            const std::size_t k = index_from(term[0], tat);
            if (k >= n) {
                throw SchemaError(tat, "basis index out of range");
            }
            v[k] += scalar_from_json(term[1], tat);
        }
        products.push_back(std::move(v));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        try {
            labels = j.at("labels").get<std::vector<std::string>>();
        } catch (const json::exception&) {
            throw SchemaError(where + ".labels", "expected an array of strings");
        }
        if (labels.size() != n) {
            throw SchemaError(where + ".labels", "expected dim labels");
        }
    }
    FiniteAlgebra a(n, std::move(products), std::move(labels));
    if (j.contains("involution")) {
        a = a.with_involution(matrix_from_json(j.at("involution"), where + ".involution"));
    }
    return a;
}

json algebroid_to_json(const AlgebroidData& d) {
    json out = {{"name", d.name},
                {"total", algebra_to_json(*d.total)},
                {"base_b", algebra_to_json(*d.base_b)},
                {"base_c", algebra_to_json(*d.base_c)},
                {"embed_b", matrix_to_json(d.embed_b)},
                {"embed_c", matrix_to_json(d.embed_c)},
                {"s_b", matrix_to_json(d.s_b)},
                {"s_c", matrix_to_json(d.s_c)},
                {"delta_b", matrix_to_json(d.delta_b)},
                {"delta_c", matrix_to_json(d.delta_c)}};
    if (d.counit_b) {
        out["counit_b"] = matrix_to_json(*d.counit_b);
    }
    if (d.counit_c) {
        out["counit_c"] = matrix_to_json(*d.counit_c);
    }
    if (d.antipode) {
        out["antipode"] = matrix_to_json(*d.antipode);
    }
    return out;
}

AlgebroidData algebroid_from_json(const json& j, const std::string& where) {
    AlgebroidData d;
    const auto algebra = [&](const char* key) {
        return std::make_shared<const FiniteAlgebra>(algebra_from_json(field(j, key, where), where + "." + key));
    };
    const auto matrix = [&](const char* key) { return matrix_from_json(field(j, key, where), where + "." + key); };
    const auto optional_matrix = [&](const char* key) -> std::optional<Matrix> {
        if (!j.contains(key)) {
            return std::nullopt;
        }
        return matrix(key);
    };
    d.name = j.value("name", std::string("algebroid"));
    d.total = algebra("total");
    d.base_b = algebra("base_b");
    d.base_c = algebra("base_c");
    d.embed_b = matrix("embed_b");
    d.embed_c = matrix("embed_c");
    d.s_b = matrix("s_b");
    d.s_c = matrix("s_c");
    d.delta_b = matrix("delta_b");
    d.delta_c = matrix("delta_c");
    d.counit_b = optional_matrix("counit_b");
    d.counit_c = optional_matrix("counit_c");
    d.antipode = optional_matrix("antipode");
    const std::size_t n = d.total->dim();
    const auto shape = [&](const Matrix& m, std::size_t rows, std::size_t cols, const char* key) {
        if (m.rows() != rows || m.cols() != cols) {
            throw SchemaError(where + "." + key, "expected a " + std::to_string(rows) + "×" + std::to_string(cols) + " matrix");
        }
    };
    const std::size_t nb = d.base_b->dim();
    const std::size_t nc = d.base_c->dim();
    shape(d.embed_b, n, nb, "embed_b");
    shape(d.embed_c, n, nc, "embed_c");
    shape(d.s_b, nc, nb, "s_b");
    shape(d.s_c, nb, nc, "s_c");
    shape(d.delta_b, n * n, n, "delta_b");
    shape(d.delta_c, n * n, n, "delta_c");
    if (d.counit_b) {
        shape(*d.counit_b, nb, n, "counit_b");
    }
    if (d.counit_c) {
        shape(*d.counit_c, nc, n, "counit_c");
    }
    if (d.antipode) {
        shape(*d.antipode, n, n, "antipode");
    }
    return d;
}

json groupoid_to_json(const FiniteGroupoid& g) {
    json s = json::object();
    json t = json::object();
    json inverse = json::object();
    json compose = json::array();
    for (std::size_t a = 0; a < g.size(); ++a) {
        s[g.label(a)] = g.label(g.source(a));
        t[g.label(a)] = g.label(g.target(a));
        inverse[g.label(a)] = g.label(g.inverse(a));
        for (std::size_t b = 0; b < g.size(); ++b) {
            if (const auto c = g.compose(a, b)) {
                compose.push_back({g.label(a), g.label(b), g.label(*c)});
            }
        }
    }
    json units = json::array();
    for (std::size_t u : g.units()) {
        units.push_back(g.label(u));
    }
    return {{"arrows", g.arrows()}, {"units", units}, {"s", s}, {"t", t}, {"compose", compose}, {"inverse", inverse}};
}

FiniteGroupoid groupoid_from_json(const json& j, const std::string& where) {
    std::vector<std::string> arrows;
    try {
        arrows = field(j, "arrows", where).get<std::vector<std::string>>();
    } catch (const json::exception&) {
        throw SchemaError(where + ".arrows", "expected an array of labels");
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        if (!index.emplace(arrows[a], a).second) {
            throw SchemaError(where + ".arrows", "repeated label \"" + arrows[a] + "\"");
        }
    }
    const auto lookup = [&](const json& label, const std::string& at) {
        if (!label.is_string() || !index.contains(label.get<std::string>())) {
            throw SchemaError(at, "unknown arrow " + label.dump());
        }
        return index.at(label.get<std::string>());
    };
    const auto table = [&](const char* key) {
        const json& m = field(j, key, where);
        const std::string at = where + "." + key;
        if (!m.is_object()) {
            throw SchemaError(at, "expected an object keyed by arrow labels");
        }
        std::vector<std::size_t> out(arrows.size());
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            if (!m.contains(arrows[a])) {
                throw SchemaError(at, "no entry for \"" + arrows[a] + "\"");
            }
            out[a] = lookup(m.at(arrows[a]), at + "." + arrows[a]);
        }
        return out;
    };
    std::vector<std::size_t> units;
    const json& u = field(j, "units", where);
    if (!u.is_array()) {
        throw SchemaError(where + ".units", "expected an array of labels");
    }
    for (std::size_t k = 0; k < u.size(); ++k) {
        units.push_back(lookup(u[k], where + ".units[" + std::to_string(k) + "]"));
    }
    const std::vector<std::size_t> source = table("s");
    const std::vector<std::size_t> target = table("t");
    const std::vector<std::size_t> inverse = table("inverse");
    const std::size_t n = arrows.size();
    std::vector<std::optional<std::size_t>> composition(n * n);
    const json& c = field(j, "compose", where);
    if (!c.is_array()) {
        throw SchemaError(where + ".compose", "expected [[a, b, ab], ...]");
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
        const std::string at = where + ".compose[" + std::to_string(k) + "]";
        if (!c[k].is_array() || c[k].size() != 3) {
            throw SchemaError(at, "expected [a, b, ab]");
        }
        const std::size_t a = lookup(c[k][0], at);
        const std::size_t b = lookup(c[k][1], at);
        if (composition[a * n + b]) {
            throw SchemaError(at, "composite given twice");
        }
        composition[a * n + b] = lookup(c[k][2], at);
    }
    return FiniteGroupoid(arrows, units, source, target, composition, inverse);
}

json entry_to_json(const ReportEntry& e) {
    json out = {{"type", "entry"},
                {"axiom", e.axiom},
                {"equation", e.equation},
                {"status", e.passed() ? "pass" : "fail"}};
    if (!e.witness.empty()) {
        out["witness"] = e.witness;
    }
    if (!e.detail.empty()) {
        out["detail"] = e.detail;
    }
    return out;
}

json parse(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(where, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace cli
