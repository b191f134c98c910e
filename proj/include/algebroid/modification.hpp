#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebroid/algebra.hpp"
#include "algebroid/bialgebroid.hpp"
#include "algebroid/examples.hpp"
#include "algebroid/integration.hpp"
#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"
#include "algebroid/scalar.hpp"

namespace algebroid {

/// (Θ_λ, Θ_ρ, _λΘ, _ρΘ), automorphisms of A.
struct Modifier {
    std::string name;
    Matrix theta_lambda;
    Matrix theta_rho;
    Matrix lambda_theta;
    Matrix rho_theta;
};

Modifier identity_modifier(const Algebroid& m);
/// (Θ_λΘ'_λ, Θ'_ρΘ_ρ, _λΘ'_λΘ, _ρΘ_ρΘ').
Modifier compose(const Modifier& first, const Modifier& second);
/// Θ'Θ⁻¹ in every component: the modifier of the modification by `applied` that corresponds to `target`.
Modifier translate(const Modifier& target, const Modifier& applied);
/// Θ_λ(a) = v⁻¹av, Θ_ρ(a) = S_B(v⁻¹)aS_B(v), _λΘ(a) = uau⁻¹, _ρΘ(a) = S_C⁻¹(u)aS_C⁻¹(u⁻¹)
/// for invertible u, v in B; throws MathematicalRejection("inner-modifier") otherwise.
Modifier inner_modifier(const Algebroid& m, const Vector& u, const Vector& v);
/// Componentwise equality.
bool operator==(const Modifier& a, const Modifier& b);

struct ModifierCheck {
    Report report;
    /// Θ_λ|_B and _ρΘ|_C.
    std::optional<Matrix> theta_b;
    std::optional<Matrix> theta_c;
    /// The defining conditions; the report also carries their consequences.
    bool valid = false;
    bool trivial_on_base = false;
    bool self_adjoint = false;
};

ModifierCheck check_modifier(const Algebroid& m, const Modifier& mod);

/// Data of the modification: Δ̃_B = (Θ_λ ⊗ ι)Δ_B, Δ̃_C = (_λΘ ⊗ ι)Δ_C, S̃_B = S_B∘θ_B⁻¹,
/// S̃_C = S_C∘θ_C⁻¹, with the counits and antipode transported along the modifier.
AlgebroidData modified_data(const Algebroid& m, const Modifier& mod, const Matrix& theta_b, const Matrix& theta_c);

struct Modification {
    AlgebroidPtr algebroid;
    ModifierCheck modifier;
    Report report;
};

/// Throws MathematicalRejection("left-modifier") for an invalid modifier and std::logic_error
/// with a witness when the modification fails an axiom.
Modification modify(const AlgebroidPtr& m, const Modifier& mod);

/// (Θ, θ) is an isomorphism of the left bialgebroids of `source` and `target`, checked on all pairs.
Report left_isomorphism(const Algebroid& source, const Algebroid& target, const Matrix& big, const Matrix& theta);

/// Spaces of partial left and right integrals agree.
Report integral_spaces_coincide(const Algebroid& before, const Algebroid& after);

/// Invertible characters χ = ε_B∘Θ_λ of the left bialgebroid with Θ_λ = ρ(χ), Θ_ρ = λ(χ), and the
/// right-handed analogue; only for modifiers trivial on the base.
Report character_correspondence(const Algebroid& m, const Modifier& mod);

/// Radon–Nikodym cocycle D(γ) = μ(t(γ))/μ(s(γ)) and the modifier (σ_{1/2}, σ_{1/2}, σ_{-1/2}, σ_{-1/2})
/// of the convolution algebroid, σ_t(f)(γ) = f(γ)D(γ)^t.
struct GroupoidRn {
    AlgebroidPtr algebroid;
    std::vector<Scalar> cocycle;
    std::vector<Scalar> cocycle_half;
    Modifier modifier;
    Report report;

    Matrix sigma_one() const;
};

/// Throws MathematicalRejection("quasi-invariant") unless μ is positive and rational, and
/// MathematicalRejection("radon-nikodym-sqrt") naming the missing square roots.
GroupoidRn groupoid_rn_modifier(const FiniteGroupoid& groupoid, const Vector& mu, const Field& field);

/// Radon–Nikodym cocycle of μ on C: μ(S(h) ▷ y) = μ(D_h y).
struct HopfCocycle {
    std::vector<Vector> values;  // D at the basis of H
    Report report;

    Vector at(const Vector& h) const;
};

/// Throws MathematicalRejection("quasi-invariant") if μ is not faithful or no D exists.
HopfCocycle radon_nikodym_cocycle(const FiniteAlgebra& c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                                  const Vector& mu);

/// β_D(y#h) = yD_{h(1)}#h(2) and β†_D(y#h) = D_{h(2)}y#h(1) on C # H; modifier ((β†_D)⁻¹, β_D⁻¹, ι, ι).
struct CrossedRn {
    AlgebroidPtr algebroid;
    HopfCocycle cocycle;
    Matrix beta;
    Matrix beta_dagger;
    Modifier modifier;
    Report report;
};

/// Throws MathematicalRejection("ch-symmetric") for a non-symmetric action and
/// MathematicalRejection("chb-commutation") when D_{h(1)}(h(2) ▷ y) = (h(1) ▷ y)D_{h(2)} fails.
CrossedRn crossed_rn_modifier(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                              const Vector& mu);

/// C # H # C^op with S_B(y^op) = y, S_C(y) = σ(y)^op, Θ_λ(yhx) = y(D_{h(2)})^op h(1) x,
/// Θ_ρ(yhx) = yD_{h(1)}h(2)x and modifier (Θ_λ⁻¹, Θ_ρ⁻¹, ι, ι).
struct TwoSidedRn {
    AlgebroidPtr algebroid;
    HopfCocycle cocycle;
    Matrix sigma;
    Modifier modifier;
    Report report;
};

/// Throws MathematicalRejection naming the failing hypothesis ("modular", "chb-modular").
TwoSidedRn twosided_rn_modifier(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                                const Vector& mu, const Matrix& sigma);

/// Modification, measured assembly and the consequences stated for the modified structure.
struct RnPipeline {
    Modification modification;
    std::optional<MeasuredAlgebroid> measured;
    Report report;
};

RnPipeline groupoid_rn_pipeline(const FiniteGroupoid& groupoid, const Vector& mu, const Field& field);
RnPipeline crossed_rn_pipeline(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                               const Vector& mu);
RnPipeline twosided_rn_pipeline(AlgebraPtr c, const FiniteHopf& hopf, const std::vector<Matrix>& action,
                                const Vector& mu, const Matrix& sigma);

}  // namespace algebroid
