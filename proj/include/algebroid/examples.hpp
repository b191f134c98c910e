#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algebroid/algebra.hpp"
#include "algebroid/bialgebroid.hpp"
#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"

namespace algebroid {

/// Finite group by its multiplication table; element 0 is the identity.
struct FiniteGroup {
    std::vector<std::string> labels;
    std::vector<std::size_t> table;  // table[g * n + h] = gh

    std::size_t order() const noexcept { return labels.size(); }
    std::size_t multiply(std::size_t g, std::size_t h) const { return table.at(g * order() + h); }
    std::size_t inverse(std::size_t g) const;
    bool is_central(std::size_t g) const;
};

FiniteGroup cyclic_group(std::size_t n);
/// Permutations of three letters; element 1 is the transposition (0 1).
FiniteGroup symmetric_group_3();
/// Throws MathematicalRejection if the table is not a group with identity 0.
void validate_group(const FiniteGroup& group);

/// Finite groupoid given by an explicit composition table.
class FiniteGroupoid {
public:
    FiniteGroupoid() = default;
    /// composition[a * n + b] is ab, defined exactly when s(a) = t(b).
    FiniteGroupoid(std::vector<std::string> arrows, std::vector<std::size_t> units,
                   std::vector<std::size_t> source, std::vector<std::size_t> target,
                   std::vector<std::optional<std::size_t>> composition, std::vector<std::size_t> inverse);

    std::size_t size() const noexcept { return arrows_.size(); }
    std::size_t unit_count() const noexcept { return units_.size(); }
    const std::vector<std::string>& arrows() const noexcept { return arrows_; }
    const std::string& label(std::size_t a) const { return arrows_.at(a); }
    std::vector<std::string> unit_labels() const;
    const std::vector<std::size_t>& units() const noexcept { return units_; }
    bool is_unit(std::size_t a) const { return unit_position_.at(a).has_value(); }

    /// Source and target as arrows, and as positions in the unit list.
    std::size_t source(std::size_t a) const { return source_.at(a); }
    std::size_t target(std::size_t a) const { return target_.at(a); }
    std::size_t source_unit(std::size_t a) const { return *unit_position_.at(source_.at(a)); }
    std::size_t target_unit(std::size_t a) const { return *unit_position_.at(target_.at(a)); }
    std::optional<std::size_t> compose(std::size_t a, std::size_t b) const { return composition_.at(a * size() + b); }
    std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
    std::optional<std::size_t> find(const std::string& label) const;

private:
    std::vector<std::string> arrows_;
    std::vector<std::size_t> units_;
    std::vector<std::size_t> source_;
    std::vector<std::size_t> target_;
    std::vector<std::optional<std::size_t>> composition_;
    std::vector<std::size_t> inverse_;
    std::vector<std::optional<std::size_t>> unit_position_;
};

/// Pair groupoid on k points: arrows (i,j) with t = i, s = j, in row-major order.
FiniteGroupoid pair_groupoid(std::size_t points);
FiniteGroupoid group_groupoid(const FiniteGroup& group);
FiniteGroupoid point_groupoid();
FiniteGroupoid disjoint_union(const FiniteGroupoid& first, const FiniteGroupoid& second);

/// Finite-dimensional Hopf algebra with its integrals and modular data.
struct FiniteHopf {
    std::string name;
    AlgebraPtr algebra;
    Matrix delta;     // dim^2 x dim
    Vector counit;    // ε(e_k)
    Matrix antipode;  // dim x dim
    Vector left_integral;
    Vector right_integral;
    /// φ(S(a)) = φ(a δ) and φ(ab) = φ(b σ(a)).
    Vector modular_element;
    Matrix modular_automorphism;

    std::size_t dim() const noexcept { return algebra->dim(); }
};

FiniteHopf group_algebra_hopf(const FiniteGroup& group);
FiniteHopf function_algebra_hopf(const FiniteGroup& group);
/// Bialgebra, antipode, integral and modular-data axioms.
Report check_hopf(const FiniteHopf& hopf);

/// h_k acting on the left of C (h ▷ y) and on the right of B (x ◁ h).
struct HopfAction {
    std::vector<Matrix> on_c;
    std::vector<Matrix> on_b;
};

/// Module-algebra and unitality laws of a left action on C.
Report check_left_action(const FiniteAlgebra& c, const FiniteHopf& hopf, const std::vector<Matrix>& action);
/// The same for a right action on B.
Report check_right_action(const FiniteAlgebra& b, const FiniteHopf& hopf, const std::vector<Matrix>& action);
/// h(1) ⊗ h(2) ▷ y = h(2) ⊗ h(1) ▷ y.
std::optional<std::string> symmetry_witness(const FiniteHopf& hopf, const std::vector<Matrix>& action);

/// The group Z/2 acting on functions on two points by swapping them.
std::vector<Matrix> swap_action(const FiniteHopf& group_algebra_z2);
/// The group algebra of a subgroup K, graded by K inside G, as a module algebra over F^G.
struct GradedAlgebra {
    AlgebraPtr algebra;
    std::vector<Matrix> action;
};
GradedAlgebra graded_subgroup_algebra(const FiniteGroup& group, const std::vector<std::size_t>& subgroup);

AlgebroidPtr build_function_algebroid(const FiniteGroupoid& groupoid);
AlgebroidPtr build_convolution_algebroid(const FiniteGroupoid& groupoid);
/// A = C ⊗ B with S_B : B -> C and S_C : C -> B.
AlgebroidPtr build_tensor_algebroid(AlgebraPtr b, AlgebraPtr c, const Matrix& s_b, const Matrix& s_c);
/// Smash product C # H for a commutative C and a symmetric unital action.
AlgebroidPtr build_crossed_product(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action);
/// C # H # B with actions on both sides, basis y h x at (i * dim H + k) * dim B + j.
AlgebroidPtr build_two_sided(AlgebraPtr c, const FiniteHopf& hopf, AlgebraPtr b, const HopfAction& action,
                             const Matrix& s_b, const Matrix& s_c);

/// A partial left integral A -> C and a partial right integral A -> B as base-coordinate matrices.
struct IntegralPair {
    Matrix left;
    Matrix right;
};

/// Fiber sums weighted by h on the units.
IntegralPair groupoid_function_integrals(const FiniteGroupoid& groupoid, const Vector& weight);
/// f -> (u -> f(u) h(u)) on both sides.
IntegralPair convolution_integrals(const FiniteGroupoid& groupoid, const Vector& weight);
/// ι ⊗ υ and ω ⊗ ι on C ⊗ B.
IntegralPair tensor_integrals(const FiniteAlgebra& b, const FiniteAlgebra& c, const Vector& upsilon,
                              const Vector& omega);
/// y h -> y φ_H(h) and y h -> y ψ_H(h).
IntegralPair crossed_integrals(const FiniteAlgebra& c, const FiniteHopf& hopf);
/// y h x -> y φ_H(h) υ(x) and y h x -> ω(y) ψ_H(h) x.
IntegralPair two_sided_integrals(const FiniteAlgebra& c, const FiniteHopf& hopf, const FiniteAlgebra& b,
                                 const Vector& upsilon, const Vector& omega);

}  // namespace algebroid
