#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "algebroid/algebra.hpp"
#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"
#include "algebroid/tensor.hpp"

namespace algebroid {

/// Raw components of a multiplier bialgebroid with unital total algebra.
struct AlgebroidData {
    std::string name;
    AlgebraPtr total;
    AlgebraPtr base_b;
    AlgebraPtr base_c;
    Matrix embed_b;  // dim(A) x dim(B)
    Matrix embed_c;  // dim(A) x dim(C)
    Matrix s_b;      // dim(C) x dim(B), anti-isomorphism B -> C
    Matrix s_c;      // dim(B) x dim(C), anti-isomorphism C -> B
    Matrix delta_b;  // dim(A)^2 x dim(A), representatives in bsA⊗btA
    Matrix delta_c;  // dim(A)^2 x dim(A), representatives in cAt⊗cAs
    std::optional<Matrix> counit_b;  // dim(B) x dim(A)
    std::optional<Matrix> counit_c;  // dim(C) x dim(A)
    std::optional<Matrix> antipode;  // dim(A) x dim(A)
};

/// The eight ways B and C act on A.
enum class Action {
    bsA,  // x.a = x a
    btA,  // a.x = S_B(x) a
    bAs,  // a.x = a x
    bAt,  // x.a = a S_B(x)
    csA,  // y.a = y a
    ctA,  // a.y = S_C(y) a
    cAs,  // a.y = a y
    cAt,  // y.a = a S_C(y)
};

struct CanonicalMap {
    std::string name;
    Matrix matrix;
    std::optional<DescentFailure> descent_failure;
    std::optional<Matrix> inverse;
    std::optional<Vector> kernel_witness;

    bool bijective() const noexcept { return !descent_failure && inverse.has_value(); }
};

class Algebroid {
public:
    explicit Algebroid(AlgebroidData data);

    Algebroid(const Algebroid&) = delete;
    Algebroid& operator=(const Algebroid&) = delete;

    const AlgebroidData& data() const noexcept { return data_; }
    const std::string& name() const noexcept { return data_.name; }
    const FiniteAlgebra& algebra() const noexcept { return *data_.total; }
    std::size_t dim() const noexcept { return data_.total->dim(); }
    const FiniteAlgebra& base_b() const noexcept { return *data_.base_b; }
    const FiniteAlgebra& base_c() const noexcept { return *data_.base_c; }
    const Matrix& embed_b() const noexcept { return data_.embed_b; }
    const Matrix& embed_c() const noexcept { return data_.embed_c; }
    const Matrix& s_b() const noexcept { return data_.s_b; }
    const Matrix& s_c() const noexcept { return data_.s_c; }
    /// x -> S_B(x) in A and y -> S_C(y) in A.
    const Matrix& left_target() const noexcept { return left_target_; }
    const Matrix& right_target() const noexcept { return right_target_; }
    const std::optional<Matrix>& counit_b() const noexcept { return data_.counit_b; }
    const std::optional<Matrix>& counit_c() const noexcept { return data_.counit_c; }
    const std::optional<Matrix>& antipode() const noexcept { return data_.antipode; }
    /// Inverses of S_B and S_C; throws MathematicalRejection if they are singular.
    Matrix s_b_inverse() const;
    Matrix s_c_inverse() const;

    Vector delta_b(const Vector& a) const { return data_.delta_b.apply(a); }
    Vector delta_c(const Vector& a) const { return data_.delta_c.apply(a); }
    const Matrix& delta_b_matrix() const noexcept { return data_.delta_b; }
    const Matrix& delta_c_matrix() const noexcept { return data_.delta_c; }

    const ModuleStructure& action(Action tag) const { return actions_[static_cast<std::size_t>(tag)]; }
    /// bsA⊗btA and cAt⊗cAs.
    const BalancedTensor& q_b() const noexcept { return q_b_; }
    const BalancedTensor& q_c() const noexcept { return q_c_; }
    /// Domains of the four canonical maps: btA⊗bAt, bAs⊗bsA, cAs⊗csA, ctA⊗cAt.
    const BalancedTensor& t_lambda_domain() const noexcept { return t_lambda_domain_; }
    const BalancedTensor& t_rho_domain() const noexcept { return t_rho_domain_; }
    const BalancedTensor& c_lambda_domain() const noexcept { return c_lambda_domain_; }
    const BalancedTensor& c_rho_domain() const noexcept { return c_rho_domain_; }

    /// a⊗b -> Δ_B(b)(a⊗1), Δ_B(a)(1⊗b), (a⊗1)Δ_C(b), (1⊗b)Δ_C(a).
    const CanonicalMap& t_lambda() const noexcept { return t_lambda_; }
    const CanonicalMap& t_rho() const noexcept { return t_rho_; }
    const CanonicalMap& c_lambda() const noexcept { return c_lambda_; }
    const CanonicalMap& c_rho() const noexcept { return c_rho_; }

    /// Built on first use: bsA⊗(btA|bsA)⊗btA, cAt⊗(cAs|cAt)⊗cAs,
    /// bsA⊗(btA|cAt)⊗cAs, cAt⊗(cAs|bsA)⊗btA.
    const TripleTensor& left_triple() const;
    const TripleTensor& right_triple() const;
    const TripleTensor& mixed_triple_bc() const;
    const TripleTensor& mixed_triple_cb() const;

    /// Legwise product in A⊗A.
    Vector product2(const Vector& x, const Vector& y) const;

private:
    AlgebroidData data_;
    Matrix left_target_;
    Matrix right_target_;
    std::array<ModuleStructure, 8> actions_;
    BalancedTensor q_b_;
    BalancedTensor q_c_;
    BalancedTensor t_lambda_domain_;
    BalancedTensor t_rho_domain_;
    BalancedTensor c_lambda_domain_;
    BalancedTensor c_rho_domain_;
    CanonicalMap t_lambda_;
    CanonicalMap t_rho_;
    CanonicalMap c_lambda_;
    CanonicalMap c_rho_;

    mutable std::mutex triple_mutex_;
    mutable std::array<std::unique_ptr<TripleTensor>, 4> triples_;
    const TripleTensor& triple(std::size_t which) const;
};

using AlgebroidPtr = std::shared_ptr<const Algebroid>;

AlgebroidPtr make_algebroid(AlgebroidData data);

Report verify_left_bialgebroid(const Algebroid& m);
Report verify_right_bialgebroid(const Algebroid& m);
/// Mixed co-associativity of Δ_B and Δ_C.
Report verify_compatibility(const Algebroid& m);
/// Subspace conditions S_B(I_B)·A = A and the three companions.
Report verify_regularity_subspaces(const Algebroid& m);
Report verify_canonical_maps(const Algebroid& m);
/// Antipode conditions, inverse and flip diagrams and counit relations for a given S.
Report verify_antipode(const Algebroid& m, const Matrix& antipode);
/// Everything above, plus agreement of derived and supplied counits and antipode.
Report verify_regular_mha(const Algebroid& m);

struct Derivation {
    std::optional<Matrix> map;
    std::string witness;
};

/// Solves the counit equations; unique solution or a witness.
Derivation derive_left_counit(const Algebroid& m);
Derivation derive_right_counit(const Algebroid& m);
/// Solves the antipode diagrams together with the base conditions on S.
Derivation derive_antipode(const Algebroid& m);

/// Involutions induced on B and C (antilinear: x* = J conj(x)); throws if not *-subalgebras.
Matrix base_star_b(const Algebroid& m);
Matrix base_star_c(const Algebroid& m);
Report verify_star(const Algebroid& m);

/// (S ⊗ S) followed by the flip, as an ambient map on A⊗A.
Vector flip_antipode(const Matrix& antipode, std::size_t n, std::size_t index);

}  // namespace algebroid
