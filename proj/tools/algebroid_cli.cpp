#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "algebroid/modification.hpp"
#include "algebroid/structure.hpp"
#include "cli_io.hpp"

using namespace algebroid;
using cli::json;

namespace {

struct Options {
    std::string example;
    std::string groupoid;
    std::string mu;
    std::string recipe;
    std::string modifier;
    std::string u;
    std::string v;
    std::vector<std::uint64_t> sqrt;
    std::string in;
    std::string out;
};

/// An algebroid with whatever measuring data came with it.
struct Source {
    AlgebroidPtr algebroid;
    std::optional<BaseWeight> weight;
    std::optional<IntegralPair> integrals;
    std::optional<Matrix> expected_sigma;
    std::string hint;
};

class Output {
public:
    void line(json j) { lines_.push_back(std::move(j)); }

    void report(const Report& r) {
        for (const ReportEntry& e : r.entries()) {
            line(cli::entry_to_json(e));
            ++entries_;
            failures_ += e.passed() ? 0 : 1;
        }
    }

    std::size_t failures() const noexcept { return failures_; }
    std::size_t entries() const noexcept { return entries_; }

    void write(const std::string& path) const {
        std::ostringstream text;
        for (const json& j : lines_) {
            text << j.dump() << '\n';
        }
        if (path.empty() || path == "-") {
            std::cout << text.str();
            return;
        }
        std::ofstream file(path);
        if (!file) {
            throw SchemaError("--out", "cannot write " + path);
        }
        file << text.str();
    }

private:
    std::vector<json> lines_;
    std::size_t entries_ = 0;
    std::size_t failures_ = 0;
};

std::string read_text(const std::string& path, const std::string& where) {
    if (path.empty() || path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream file(path);
    if (!file) {
        throw SchemaError(where, "cannot read " + path);
    }
    std::ostringstream s;
    s << file.rdbuf();
    return s.str();
}

std::vector<json> read_lines(const std::string& path, const std::string& where) {
    std::vector<json> out;
    std::istringstream text(read_text(path, where));
    std::string line;
    std::size_t number = 0;
    while (std::getline(text, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        out.push_back(cli::parse(line, where + ":" + std::to_string(number)));
    }
    return out;
}

Vector parse_csv(const std::string& text, const std::string& where) {
    if (std::filesystem::exists(text)) {
        return cli::vector_from_json(cli::parse(read_text(text, where), where), where);
    }
    Vector out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            out.emplace_back(parse_rational(item));
        } catch (const std::exception& e) {
            throw SchemaError(where, "\"" + item + "\" is not an exact fraction");
        }
    }
    if (out.empty()) {
        throw SchemaError(where, "expected comma-separated fractions");
    }
    return out;
}

FiniteGroupoid load_groupoid(const Options& o) {
    if (o.groupoid.empty()) {
        return pair_groupoid(2);
    }
    return cli::groupoid_from_json(cli::parse(read_text(o.groupoid, "--groupoid"), o.groupoid), o.groupoid);
}

AlgebraPtr two_points() {
    return std::make_shared<const FiniteAlgebra>(function_algebra(2).with_involution(Matrix::identity(2)));
}

Vector ones(std::size_t n) { return Vector(n, Scalar(1)); }

void check_weight(const Vector& mu, std::size_t dim, const std::string& where) {
    if (mu.size() != dim) {
        throw SchemaError(where, "expected " + std::to_string(dim) + " weights, got " + std::to_string(mu.size()));
    }
}

Source example_source(const Options& o) {
    Source s;
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    const auto weight = [&](std::size_t dim) {
        Vector mu = o.mu.empty() ? ones(dim) : parse_csv(o.mu, "--mu");
        check_weight(mu, dim, "--mu");
        return BaseWeight{mu, mu};
    };
    if (o.example == "function-algebroid" || o.example == "convolution") {
        const FiniteGroupoid g = load_groupoid(o);
        const bool functions = o.example == "function-algebroid";
        s.algebroid = functions ? build_function_algebroid(g) : build_convolution_algebroid(g);
        s.weight = weight(g.unit_count());
        s.integrals = functions ? groupoid_function_integrals(g, ones(g.unit_count()))
                                : convolution_integrals(g, ones(g.unit_count()));
        s.hint = functions ? "" : "apply groupoid_rn modifier";
    } else if (o.example == "tensor") {
        s.algebroid = build_tensor_algebroid(two_points(), two_points(), Matrix::identity(2), Matrix::identity(2));
        s.weight = weight(2);
        s.integrals = tensor_integrals(s.algebroid->base_b(), s.algebroid->base_c(), s.weight->mu_b, s.weight->mu_c);
    } else if (o.example == "crossed") {
        s.algebroid = build_crossed_product(two_points(), z2, swap_action(z2));
        s.weight = weight(2);
        s.integrals = crossed_integrals(s.algebroid->base_c(), z2);
        s.hint = "apply crossed_rn modifier";
    } else if (o.example == "two-sided") {
        s.algebroid = build_two_sided(two_points(), z2, two_points(), HopfAction{swap_action(z2), swap_action(z2)},
                                      Matrix::identity(2), Matrix::identity(2));
        s.weight = weight(2);
        s.integrals = two_sided_integrals(s.algebroid->base_c(), z2, s.algebroid->base_b(), s.weight->mu_b,
                                          s.weight->mu_c);
        s.hint = "apply twosided_rn modifier";
    } else {
        throw SchemaError("--example", "unknown example \"" + o.example +
                                           "\"; expected function-algebroid, convolution, tensor, crossed or two-sided");
    }
    return s;
}

Source artifact_source(const Options& o) {
    const std::string where = o.in.empty() ? "stdin" : o.in;
    std::optional<json> artifact;
    for (const json& j : read_lines(o.in, where)) {
        if (j.is_object() && j.value("type", "") == "artifact") {
            artifact = j;
        }
    }
    if (!artifact) {
        throw SchemaError(where, "no artifact line; run build or modify first");
    }
    Source s;
    s.algebroid = make_algebroid(cli::algebroid_from_json(artifact->at("algebroid"), "artifact.algebroid"));
    if (artifact->contains("weight")) {
        const json& w = artifact->at("weight");
        s.weight = BaseWeight{cli::vector_from_json(w.at("mu_b"), "artifact.weight.mu_b"),
                              cli::vector_from_json(w.at("mu_c"), "artifact.weight.mu_c")};
    }
    if (artifact->contains("integrals")) {
        const json& p = artifact->at("integrals");
        s.integrals = IntegralPair{cli::matrix_from_json(p.at("left"), "artifact.integrals.left"),
                                   cli::matrix_from_json(p.at("right"), "artifact.integrals.right")};
    }
    if (artifact->contains("expected_sigma")) {
        s.expected_sigma = cli::matrix_from_json(artifact->at("expected_sigma"), "artifact.expected_sigma");
    }
    s.hint = artifact->value("hint", "");
    if (!o.mu.empty()) {
        const Vector mu = parse_csv(o.mu, "--mu");
        check_weight(mu, s.algebroid->base_b().dim(), "--mu");
        s.weight = BaseWeight{mu, mu};
    }
    return s;
}

Source load_source(const Options& o) { return o.example.empty() ? artifact_source(o) : example_source(o); }

json artifact(const Source& s) {
    json out = {{"type", "artifact"}, {"algebroid", cli::algebroid_to_json(s.algebroid->data())}};
    if (s.weight) {
        out["weight"] = {{"mu_b", cli::vector_to_json(s.weight->mu_b)}, {"mu_c", cli::vector_to_json(s.weight->mu_c)}};
    }
    if (s.integrals) {
        out["integrals"] = {{"left", cli::matrix_to_json(s.integrals->left)},
                            {"right", cli::matrix_to_json(s.integrals->right)}};
    }
    if (s.expected_sigma) {
        out["expected_sigma"] = cli::matrix_to_json(*s.expected_sigma);
    }
    if (!s.hint.empty()) {
        out["hint"] = s.hint;
    }
    return out;
}

MeasuredAlgebroid measured(const Source& s) {
    const BaseWeight w = s.weight.value_or(BaseWeight{ones(s.algebroid->base_b().dim()), ones(s.algebroid->base_c().dim())});
    if (!s.integrals) {
        throw SchemaError("input", "no partial integrals to measure with; use an example or a modify artifact");
    }
    try {
        return assemble_measured(s.algebroid, w, s.integrals->left, s.integrals->right);
    } catch (const MathematicalRejection& e) {
        if (e.equation() == "base-weight-counital" && !s.hint.empty()) {
            throw MathematicalRejection(e.equation(), e.what(), s.hint);
        }
        throw;
    }
}

int run_build(const Options& o, Output& out) {
    out.line(artifact(load_source(o)));
    return 0;
}

int run_verify(const Options& o, Output& out) {
    const Source s = load_source(o);
    out.report(verify_regular_mha(*s.algebroid));
    if (s.algebroid->algebra().has_involution()) {
        try {
            out.report(verify_star(*s.algebroid));
        } catch (const MathematicalRejection& e) {
            Report r;
            r.add("star-bases", e.equation(), false, e.what());
            out.report(r);
        }
    }
    return out.failures() == 0 ? 0 : 1;
}

int run_integrals(const Options& o, Output& out) {
    const Source s = load_source(o);
    Report r;
    for (IntegralSide side : {IntegralSide::left, IntegralSide::right}) {
        const IntegralSpace space = solve_partial_integrals(*s.algebroid, side);
        json basis = json::array();
        for (std::size_t k = 0; k < space.basis.size(); ++k) {
            basis.push_back(cli::matrix_to_json(space.basis[k]));
            const bool ok = check_partial_integral(*s.algebroid, space.basis[k], side).invariant();
            r.add("partial-" + to_string(side) + "-integral[" + std::to_string(k) + "]", "partial-integrals", ok);
        }
        out.line({{"type", "integrals"}, {"side", to_string(side)}, {"dimension", space.dim()}, {"basis", basis}});
    }
    out.report(r);
    return out.failures() == 0 ? 0 : 1;
}

int run_measure(const Options& o, Output& out) {
    const Source s = load_source(o);
    const MeasuredAlgebroid x = measured(s);
    out.report(x.certificates);
    const ModularAutomorphism left = modular_automorphism(x, IntegralSide::left);
    const ModularAutomorphism right = modular_automorphism(x, IntegralSide::right);
    const ModularElement delta = modular_element(x);
    out.report(left.report);
    out.report(right.report);
    out.report(delta.report);
    const Vector& one = x.m().algebra().one();
    if (s.expected_sigma) {
        Report r;
        r.add("modular-automorphism-expected", "modular-automorphism", left.sigma == *s.expected_sigma,
              left.sigma == *s.expected_sigma ? "" : "σ^φ differs from the expected automorphism");
        out.report(r);
    }
    out.line({{"type", "modular"},
              {"sigma_phi", cli::matrix_to_json(left.sigma)},
              {"sigma_psi", cli::matrix_to_json(right.sigma)},
              {"delta_plus", cli::vector_to_json(delta.plus)},
              {"delta_minus", cli::vector_to_json(delta.minus)},
              {"delta_trivial", delta.plus == one && delta.minus == one}});
    return out.failures() == 0 ? 0 : 1;
}

int run_dual(const Options& o, Output& out) {
    const DualAlgebra d = dual_algebra(measured(load_source(o)));
    out.report(d.report);
    out.line({{"type", "dual"}, {"algebra", cli::algebra_to_json(d.algebra)}, {"phi", cli::vector_to_json(d.phi)}});
    return out.failures() == 0 ? 0 : 1;
}

Modifier tuple_modifier(const json& j, std::size_t n) {
    const auto part = [&](const char* key) {
        if (!j.contains(key)) {
            throw SchemaError(std::string("modifier.") + key, "missing component");
        }
        Matrix m = cli::matrix_from_json(j.at(key), std::string("modifier.") + key);
        if (m.rows() != n || m.cols() != n) {
            throw SchemaError(std::string("modifier.") + key, "expected a " + std::to_string(n) + "×" + std::to_string(n) + " matrix");
        }
        return m;
    };
    return {"tuple", part("theta_lambda"), part("theta_rho"), part("lambda_theta"), part("rho_theta")};
}

int run_modify(Options o, Output& out) {
    json config = json::object();
    if (!o.modifier.empty()) {
        config = cli::parse(read_text(o.modifier, "--modifier"), o.modifier);
        if (!config.is_object() || !config.contains("recipe") || !config.at("recipe").is_string()) {
            throw SchemaError(o.modifier, "expected {\"recipe\": ..., parameters}");
        }
        o.recipe = config.at("recipe").get<std::string>();
        const auto csv = [&](const char* key, std::string& target) {
            if (config.contains(key)) {
                const Vector v = cli::vector_from_json(config.at(key), std::string("modifier.") + key);
                std::string text;
                for (const Scalar& z : v) {
                    text += (text.empty() ? "" : ",") + z.to_string();
                }
                target = text;
            }
        };
        csv("mu", o.mu);
        csv("u", o.u);
        csv("v", o.v);
        if (config.contains("sqrt")) {
            for (const json& d : config.at("sqrt")) {
                o.sqrt.push_back(d.get<std::uint64_t>());
            }
        }
    }
    const Field field(o.sqrt);
    const auto weight_of = [&](std::size_t dim) {
        Vector mu = o.mu.empty() ? ones(dim) : parse_csv(o.mu, "--mu");
        check_weight(mu, dim, "--mu");
        return mu;
    };
    const auto emit_pipeline = [&](const RnPipeline& p, Source s) {
        out.report(p.modification.modifier.report);
        out.report(p.modification.report);
        out.report(p.report);
        s.algebroid = p.modification.algebroid;
        out.line(artifact(s));
    };
    if (o.recipe == "groupoid_rn") {
        const FiniteGroupoid g = load_groupoid(o);
        const Vector mu = weight_of(g.unit_count());
        const GroupoidRn rn = groupoid_rn_modifier(g, mu, field);
        const RnPipeline p = groupoid_rn_pipeline(g, mu, field);
        Source s;
        s.weight = BaseWeight{mu, mu};
        Matrix restrict(g.unit_count(), g.size());
        for (std::size_t k = 0; k < g.unit_count(); ++k) {
            restrict.at(k, g.units()[k]) = Scalar(1);
        }
        s.integrals = IntegralPair{restrict, restrict};
        s.expected_sigma = rn.sigma_one();
        emit_pipeline(p, s);
    } else if (o.recipe == "crossed_rn" || o.recipe == "twosided_rn") {
        const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
        const Vector mu = weight_of(2);
        Source s;
        s.weight = BaseWeight{mu, mu};
        if (o.recipe == "crossed_rn") {
            const RnPipeline p = crossed_rn_pipeline(two_points(), z2, swap_action(z2), mu);
            s.integrals = crossed_integrals(*two_points(), z2);
            emit_pipeline(p, s);
        } else {
            const RnPipeline p = twosided_rn_pipeline(two_points(), z2, swap_action(z2), mu, Matrix::identity(2));
            s.integrals = two_sided_integrals(*two_points(), z2, *two_points(), mu, mu);
            emit_pipeline(p, s);
        }
    } else if (o.recipe == "identity" || o.recipe == "inner" || o.recipe == "tuple") {
        Source s = load_source(o);
        Modifier mod = identity_modifier(*s.algebroid);
        if (o.recipe == "inner") {
            if (o.u.empty() || o.v.empty()) {
                throw SchemaError("--u/--v", "the inner recipe needs invertible u and v in B");
            }
            const Vector u = parse_csv(o.u, "--u");
            const Vector v = parse_csv(o.v, "--v");
            check_weight(u, s.algebroid->base_b().dim(), "--u");
            check_weight(v, s.algebroid->base_b().dim(), "--v");
            mod = inner_modifier(*s.algebroid, u, v);
        } else if (o.recipe == "tuple") {
            mod = tuple_modifier(config, s.algebroid->dim());
        }
        const Modification m = modify(s.algebroid, mod);
        out.report(m.modifier.report);
        out.report(m.report);
        if (!m.modifier.trivial_on_base) {
            s.integrals.reset();
        }
        s.expected_sigma.reset();
        s.algebroid = m.algebroid;
        out.line(artifact(s));
    } else {
        throw SchemaError("--recipe", "unknown recipe \"" + o.recipe +
                                          "\"; expected groupoid_rn, crossed_rn, twosided_rn, inner, identity or tuple");
    }
    return out.failures() == 0 ? 0 : 1;
}

int run_report(const Options& o, Output& out) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> coverage;
    bool upstream_ok = true;
    for (const json& j : read_lines(o.in, o.in.empty() ? "stdin" : o.in)) {
        const std::string type = j.is_object() ? j.value("type", "") : "";
        if (type == "entry") {
            auto& [pass, fail] = coverage[j.value("equation", "")];
            (j.value("status", "") == "pass" ? pass : fail) += 1;
        } else if (type == "summary") {
            upstream_ok = upstream_ok && j.value("exit", 1) == 0;
        }
    }
    Report r;
    for (const auto& [equation, counts] : coverage) {
        out.line({{"type", "coverage"}, {"equation", equation}, {"pass", counts.first}, {"fail", counts.second}});
        r.add("coverage " + equation, equation, counts.second == 0,
              counts.second == 0 ? "" : std::to_string(counts.second) + " failing entries");
    }
    if (!upstream_ok) {
        r.add("upstream", "report", false, "an upstream command exited with a nonzero status");
    }
    out.report(r);
    return out.failures() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of finite multiplier Hopf algebroids and their integrals"};
    app.require_subcommand(1);
    Options o;
    const auto source_flags = [&](CLI::App* cmd) {
        cmd->add_option("--example", o.example, "function-algebroid, convolution, tensor, crossed or two-sided");
        cmd->add_option("--groupoid", o.groupoid, "groupoid JSON for the groupoid examples (default: pair groupoid on 2 points)");
        cmd->add_option("--mu", o.mu, "base weight as comma-separated fractions or a JSON file");
        cmd->add_option("--in", o.in, "JSON-lines artifact to read instead of an example (default: stdin)");
        cmd->add_option("--sqrt", o.sqrt, "adjoin the square root of d to the field (repeatable)");
        cmd->add_option("--out", o.out, "write the report here instead of stdout");
    };
    std::map<std::string, std::function<int(const Options&, Output&)>> commands = {
        {"build", run_build},   {"verify", run_verify}, {"integrals", run_integrals}, {"measure", run_measure},
        {"modify", run_modify}, {"dual", run_dual},     {"report", run_report},
    };
    const std::map<std::string, std::string> help = {
        {"build", "build an example and emit it as an artifact"},
        {"verify", "run the regular multiplier Hopf algebroid and star axiom suites"},
        {"integrals", "solve for all partial left and right integrals"},
        {"measure", "assemble the measured structure and compute σ and δ"},
        {"modify", "apply a modifier recipe and re-verify the result"},
        {"dual", "compute the dual algebra of a measured instance"},
        {"report", "summarize a JSON-lines report by equation"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, description] : help) {
        CLI::App* cmd = app.add_subcommand(name, description);
        if (name != "report") {
            source_flags(cmd);
        } else {
            cmd->add_option("--in", o.in, "JSON-lines report (default: stdin)");
            cmd->add_option("--out", o.out, "write the summary here instead of stdout");
        }
        if (name == "modify") {
            cmd->add_option("--recipe", o.recipe, "groupoid_rn, crossed_rn, twosided_rn, inner, identity or tuple");
            cmd->add_option("--modifier", o.modifier, "JSON recipe {\"recipe\": ..., parameters}");
            cmd->add_option("--u", o.u, "u in B for the inner recipe");
            cmd->add_option("--v", o.v, "v in B for the inner recipe");
        }
        subs[name] = cmd;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    std::string command;
    for (const auto& [name, cmd] : subs) {
        if (cmd->parsed()) {
            command = name;
        }
    }
    if (command == "modify" && o.recipe.empty() && o.modifier.empty()) {
        std::cerr << "modify: --recipe or --modifier is required\n";
        return 2;
    }

    Output out;
    json summary = {{"type", "summary"}, {"command", command}};
    int code = 0;
    try {
        code = commands.at(command)(o, out);
        summary["status"] = code == 0 ? "pass" : "fail";
    } catch (const SchemaError& e) {
        code = 2;
        summary["status"] = "schema-error";
        summary["location"] = e.location();
        summary["message"] = e.what();
        std::cerr << "schema error: " << e.what() << '\n';
    } catch (const MathematicalRejection& e) {
        code = 1;
        summary["status"] = "rejected";
        summary["equation"] = e.equation();
        summary["message"] = e.what();
        if (!e.hint().empty()) {
            summary["hint"] = e.hint();
        }
        std::cerr << "rejected (" << e.equation() << "): " << e.what() << '\n';
    } catch (const std::logic_error& e) {
        code = 1;
        summary["status"] = "fail";
        summary["message"] = e.what();
        std::cerr << e.what() << '\n';
    }
    summary["entries"] = out.entries();
    summary["failures"] = out.failures();
    summary["exit"] = code;
    out.line(summary);
    try {
        out.write(o.out);
    } catch (const SchemaError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return code;
}
