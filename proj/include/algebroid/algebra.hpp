#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"

namespace algebroid {

/// Finite-dimensional associative algebra given by structure constants.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    /// products[i * dim + j] is the coordinate vector of e_i e_j.
    FiniteAlgebra(std::size_t dim, std::vector<Vector> products, std::vector<std::string> labels = {});

    /// Algebra with the involution a* = J conj(a), where column k of J is e_k*.
    FiniteAlgebra with_involution(Matrix involution) const;
    FiniteAlgebra opposite() const;

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t k) const { return labels_.at(k); }

    const Vector& product(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }
    Vector multiply(const Vector& a, const Vector& b) const;
    Vector basis(std::size_t k) const { return unit_vector(dim_, k); }

    /// Matrices of b -> e_k b and b -> b e_k.
    const Matrix& left_basis(std::size_t k) const { return left_[k]; }
    const Matrix& right_basis(std::size_t k) const { return right_[k]; }
    Matrix left_multiplication(const Vector& a) const;
    Matrix right_multiplication(const Vector& a) const;

    const std::optional<Vector>& unit() const noexcept { return unit_; }
    /// The unit; throws MathematicalRejection if the algebra has none.
    const Vector& one() const;

    bool has_involution() const noexcept { return involution_.has_value(); }
    const Matrix& involution() const;
    Vector star(const Vector& a) const;

private:
    std::size_t dim_ = 0;
    std::vector<Vector> products_;
    std::vector<std::string> labels_;
    std::vector<Matrix> left_;
    std::vector<Matrix> right_;
    std::optional<Vector> unit_;
    std::optional<Matrix> involution_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Structure constants of the tensor product algebra, basis e_i (x) f_j at i * dim(b) + j.
FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b);
/// Functions on a finite set with pointwise product.
FiniteAlgebra function_algebra(std::size_t points, std::vector<std::string> labels = {});

Report check_algebra(const FiniteAlgebra& algebra);
std::optional<Vector> find_unit(const FiniteAlgebra& algebra);

/// True iff f is bijective and multiplicative (or anti-multiplicative).
bool automorphism_check(const FiniteAlgebra& algebra, const Matrix& f, bool anti = false);
/// As automorphism_check, naming the first failing basis pair.
std::optional<std::string> automorphism_witness(const FiniteAlgebra& algebra, const Matrix& f, bool anti = false);
/// Multiplicativity of a map between two algebras (or anti-multiplicativity).
std::optional<std::string> homomorphism_witness(const FiniteAlgebra& source, const FiniteAlgebra& target,
                                                const Matrix& f, bool anti = false);

/// A pair (L, R) of endomorphisms with R(a) b = a L(b).
struct Multiplier {
    Matrix left;
    Matrix right;
};

bool is_multiplier(const FiniteAlgebra& algebra, const Multiplier& m);

struct MultiplierAlgebra {
    FiniteAlgebra algebra;
    std::vector<Multiplier> basis;
    /// Matrix of a -> (L_a, R_a) in the multiplier basis.
    Matrix canonical_map;
    bool canonical_is_isomorphism = false;
};

/// Solves the multiplier equations; throws MathematicalRejection for degenerate algebras.
MultiplierAlgebra multiplier_algebra(const FiniteAlgebra& algebra);

/// Injective (anti-)homomorphism of a base algebra into A (identified with M(A)).
struct BaseEmbedding {
    AlgebraPtr source;
    Matrix map;  // dim(A) x dim(source)
    bool anti = false;
};

Report check_embedding(const FiniteAlgebra& algebra, const BaseEmbedding& embedding, const std::string& name);
/// Elementwise commutation of the images of two embeddings.
std::optional<std::string> commute_witness(const FiniteAlgebra& algebra, const Matrix& first, const Matrix& second);

enum class Multiplication { left, right };
enum class ModuleSide { left, right };

/// A acting as a module over a base algebra by left or right multiplication along
/// a homomorphism or an anti-homomorphism into M(A).
class ModuleStructure {
public:
    ModuleStructure() = default;
    ModuleStructure(const FiniteAlgebra& algebra, AlgebraPtr base, std::string base_name, Matrix images,
                    bool anti, Multiplication multiplication, std::string tag);

    const std::string& tag() const noexcept { return tag_; }
    const std::string& base_name() const noexcept { return base_name_; }
    const FiniteAlgebra& base() const { return *base_; }
    const AlgebraPtr& base_ptr() const noexcept { return base_; }
    const Matrix& images() const noexcept { return images_; }
    bool anti() const noexcept { return anti_; }
    Multiplication multiplication() const noexcept { return multiplication_; }
    ModuleSide side() const noexcept;
    std::size_t algebra_dim() const noexcept { return images_.rows(); }

    /// Matrix of a -> x . a for the base basis element x.
    const Matrix& action(std::size_t x) const { return actions_.at(x); }
    Matrix action_of(const Vector& x) const;
    Vector act(const Vector& x, const Vector& a) const;

    Report check(const std::string& name) const;
    bool faithful() const;
    bool idempotent() const;

private:
    std::string tag_;
    std::string base_name_;
    AlgebraPtr base_;
    Matrix images_;
    bool anti_ = false;
    Multiplication multiplication_ = Multiplication::left;
    std::vector<Matrix> actions_;
};

/// All module maps from A (with the given structure) to the base acting on itself on the same side.
std::vector<Matrix> module_maps(const ModuleStructure& structure);

std::string element_string(const FiniteAlgebra& algebra, const Vector& v);

}  // namespace algebroid
