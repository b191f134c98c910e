#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algebroid/algebra.hpp"
#include "algebroid/bialgebroid.hpp"
#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"

namespace algebroid {

// Functionals on a finite-dimensional space are coefficient vectors: ω(a) = Σ ω_k a_k.
Scalar evaluate(const Vector& omega, const Vector& a);
/// The functional ω∘T.
Vector pull_back(const Vector& omega, const Matrix& map);

/// G(i, j) = ω(e_i e_j).
Matrix gram_matrix(const FiniteAlgebra& algebra, const Vector& omega);
bool is_faithful(const FiniteAlgebra& algebra, const Vector& omega);
/// The automorphism σ with ω(ab) = ω(bσ(a)); none if ω is not faithful.
std::optional<Matrix> modular_automorphism_of(const FiniteAlgebra& algebra, const Vector& omega);

/// δ and δ' with ω(xδ) = υ(x) = ω(δ'x), for a faithful ω.
struct Domination {
    Vector right;
    Vector left;
};
std::optional<Domination> dominate(const FiniteAlgebra& algebra, const Vector& upsilon, const Vector& omega);

/// Left: φ_C : A -> C (dim C x dim A). Right: ψ_B : A -> B (dim B x dim A).
enum class IntegralSide { left, right };

std::string to_string(IntegralSide side);

/// The antipode supplied with the algebroid, or the derived one; throws if neither exists.
Matrix antipode_of(const Algebroid& m);

struct PartialIntegralCheck {
    IntegralSide side = IntegralSide::left;
    Report report;
    /// Verdicts of the three equivalent characterizations, each including its module condition.
    std::array<bool, 3> verdicts{};
    bool degenerate = false;

    bool invariant() const noexcept { return verdicts[0] && verdicts[1] && verdicts[2]; }
    bool agree() const noexcept { return verdicts[0] == verdicts[1] && verdicts[1] == verdicts[2]; }
};

/// Evaluates all three characterizations on every basis pair; throws std::invalid_argument
/// if the map has the wrong shape.
PartialIntegralCheck check_partial_integral(const Algebroid& m, const Matrix& map, IntegralSide side);

struct IntegralSpace {
    IntegralSide side = IntegralSide::left;
    std::vector<Matrix> basis;
    /// Stability under the base bimodule action and the antipode exchange of sides.
    Report report;

    std::size_t dim() const noexcept { return basis.size(); }
    bool contains(const Matrix& map) const;
};

/// The full solution space of the invariance equations.
IntegralSpace solve_partial_integrals(const Algebroid& m, IntegralSide side);

/// φ_C -> S∘φ_C∘S⁻¹ (power 1) or S⁻¹∘φ_C∘S (power -1), and the same for ψ_B.
Matrix exchange_side(const Algebroid& m, const Matrix& map, IntegralSide side, int power);

/// Surjectivity of a partial integral onto its base.
bool is_surjective(const Matrix& map);

struct OrbitAlgebra {
    /// Basis of B ∩ C inside A.
    std::vector<Vector> basis;
    Report report;

    bool ergodic() const noexcept { return basis.size() == 1; }
};

OrbitAlgebra orbit_algebra(const Algebroid& m);

/// φ_C|_B∘ψ_B = ψ_B|_C∘φ_C as maps into the orbit algebra.
Report expectation_identity(const Algebroid& m, const Matrix& phi_c, const Matrix& psi_b);

struct BaseWeight {
    Vector mu_b;
    Vector mu_c;
};

struct BaseWeightCheck {
    Report report;
    bool faithful = false;
    bool antipodal = false;
    bool modular = false;
    bool counital = false;
    /// Set only when B and C carry involutions.
    std::optional<bool> positive;
    /// μ_B∘ε_B.
    Vector counit_functional;
};

BaseWeightCheck check_base_weight(const Algebroid& m, const BaseWeight& w);

/// Bω, ω_B, Cω, ω_C with ω(xa) = μ_B(x Bω(a)), ω(ax) = μ_B(ω_B(a) x) and the same over C.
struct Factorization {
    Matrix b_left;
    Matrix b_right;
    Matrix c_left;
    Matrix c_right;
};

struct FactorizationResult {
    std::optional<Factorization> factors;
    /// Names the first factor that has no solution.
    std::string failure;
};

FactorizationResult factorize(const Algebroid& m, const Vector& omega, const BaseWeight& w);

struct MeasuredAlgebroid {
    AlgebroidPtr algebroid;
    BaseWeight weight;
    Matrix phi_c;
    Matrix psi_b;
    Vector phi;  // μ_C∘φ_C
    Vector psi;  // μ_B∘ψ_B
    Factorization phi_factors;
    Factorization psi_factors;
    Matrix antipode;
    Report certificates;

    const Algebroid& m() const noexcept { return *algebroid; }
};

/// Checks counitality, quasi-invariance, fullness and faithfulness; throws
/// MathematicalRejection naming the first failing condition.
MeasuredAlgebroid assemble_measured(AlgebroidPtr m, const BaseWeight& w, const Matrix& phi_c,
                                    const Matrix& psi_b);

}  // namespace algebroid
