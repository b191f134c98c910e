#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algebroid/algebra.hpp"
#include "algebroid/bialgebroid.hpp"
#include "algebroid/integration.hpp"
#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"

namespace algebroid {

enum class ConvolutionKind { lambda, rho };

std::string to_string(ConvolutionKind kind);

/// λ(υ) = (υ ⊗ ι)∘Δ or ρ(υ) = (ι ⊗ υ)∘Δ as an endomorphism of A.
struct ConvolutionOperator {
    ConvolutionKind kind = ConvolutionKind::lambda;
    Vector functional;
    /// Slices of Δ_B by the B-factor and of Δ_C by the C-factor.
    Matrix from_b;
    Matrix from_c;
    Matrix matrix;
    Report report;
};

/// Throws MathematicalRejection("factorizable") if υ has no factorization.
ConvolutionOperator convolution(const Algebroid& m, const BaseWeight& w, const Vector& upsilon, ConvolutionKind kind);

/// Counit recovery, commutation of λ(υ) with ρ(ω), the pairing υ∘ρ(ω) = ω∘λ(υ), the antipode
/// exchange of λ and ρ and, for *-algebras, compatibility with the involution.
Report convolution_identities(const Algebroid& m, const BaseWeight& w, const Vector& upsilon, const Vector& omega);

/// The functional a -> conj(ω(a*)).
Vector star_functional(const FiniteAlgebra& algebra, const Vector& omega);

struct ModularAutomorphism {
    IntegralSide side = IntegralSide::left;
    Matrix sigma;
    /// σ^φ(B) = B for φ, σ^ψ(C) = C for ψ.
    bool preserves_base = false;
    Report report;
};

/// σ with ω(ab) = ω(bσ(a)) for ω = φ (left) or ψ (right); throws std::logic_error if the
/// Gram pairing is singular, which an assembled instance rules out.
ModularAutomorphism modular_automorphism(const MeasuredAlgebroid& x, IntegralSide side);

/// ψ⁺ = φ∘S = δ⁺·φ and ψ⁻ = φ∘S⁻¹ = φ·δ⁻.
struct ModularElement {
    Vector plus;
    Vector minus;
    Report report;
};

ModularElement modular_element(const MeasuredAlgebroid& x);

/// ω is factorizable and its C-factor (left) or B-factor (right) is a partial integral.
bool is_total_integral(const Algebroid& m, const BaseWeight& w, const Vector& omega, IntegralSide side);

struct UniquenessCheck {
    /// Bases of the spaces of left and right integrals for the fixed base weight.
    std::vector<Vector> left_integrals;
    std::vector<Vector> right_integrals;
    Report report;
};

UniquenessCheck uniqueness_check(const MeasuredAlgebroid& x);

/// Membership of ω in M(B)·φ (left) or in M(C)·ψ (right).
bool in_integral_family(const MeasuredAlgebroid& x, const Vector& omega, IntegralSide side);

struct ProjectivityCheck {
    bool projective = false;
    std::size_t module_maps = 0;
    std::string witness;
};

/// Looks for a dual basis: module maps υ_i and elements e_i with Σ υ_i(m)·e_i = m.
ProjectivityCheck local_projectivity(const ModuleStructure& module);
/// The four modules _BA, A_B, _CA, A_C.
Report check_local_projectivity(const Algebroid& m);

struct FaithfulnessCheck {
    bool integral = false;
    bool full = false;
    bool locally_projective = false;
    bool counital = false;
    bool faithful = false;

    bool hypotheses() const noexcept { return integral && full && locally_projective && counital; }
    Report report;
};

/// Whether a total integral meets the hypotheses of the faithfulness theorem, and whether it is faithful.
FaithfulnessCheck faithfulness_check(const Algebroid& m, const BaseWeight& w, const Vector& omega,
                                     IntegralSide side);
Report faithfulness_check(const MeasuredAlgebroid& x);

/// Â = A·φ with basis e_k·φ and the convolution product ωω' = ω∘ρ(ω').
struct DualAlgebra {
    FiniteAlgebra algebra;
    AlgebraPtr total;
    Vector phi;
    Report report;

    /// The functional a·φ : c -> φ(ca).
    Vector functional(const Vector& a) const;
};

DualAlgebra dual_algebra(const MeasuredAlgebroid& x);

/// Left integral with h|_B = μ_B, and right integral with h|_C = μ_C. The report checks their
/// equivalence for an antipodal weight and, when both hold, h = h∘S and the unit factors.
struct HaarConditions {
    bool left = false;
    bool right = false;
    Report report;

    bool haar() const noexcept { return left && right; }
};

HaarConditions haar_conditions(const Algebroid& m, const BaseWeight& w, const Vector& h);

struct HaarAnalysis {
    /// z in B, invertible, taken from Bφ(C).
    std::optional<Vector> z;
    /// h = z⁻¹·φ.
    std::optional<Vector> h;
    Report report;
};

/// Throws MathematicalRejection("proper") when A is not unital or not proper.
HaarAnalysis haar_analysis(const MeasuredAlgebroid& x);

}  // namespace algebroid
