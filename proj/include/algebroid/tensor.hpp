#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "algebroid/algebra.hpp"
#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"

namespace algebroid {

/// Coordinates of a (x) b in A (x) A, basis index i * dim(b) + j.
Vector tensor(const Vector& a, const Vector& b);
Vector tensor(const Vector& a, const Vector& b, const Vector& c);
/// Product in the tensor square of an algebra: (a (x) b)(c (x) d) = ac (x) bd.
Vector multiply_legs(const FiniteAlgebra& algebra, const Vector& x, const Vector& y);

/// A (x) A modulo span{ x.a (x) b - a (x) x.b }, where the first leg carries the
/// structure `first` and the second leg carries `second`.
class BalancedTensor {
public:
    BalancedTensor() = default;
    BalancedTensor(const FiniteAlgebra& algebra, ModuleStructure first, ModuleStructure second);

    /// Tag such as "bsA⊗btA".
    const std::string& flavor() const noexcept { return flavor_; }
    const ModuleStructure& first() const noexcept { return first_; }
    const ModuleStructure& second() const noexcept { return second_; }
    const QuotientSpace& quotient() const noexcept { return quotient_; }
    std::size_t algebra_dim() const noexcept { return n_; }
    std::size_t dim() const noexcept { return quotient_.dim(); }

    Vector project(const Vector& ambient) const { return quotient_.project(ambient); }
    Vector canonical(const Vector& ambient) const { return quotient_.canonical(ambient); }
    bool equal(const Vector& lhs, const Vector& rhs) const { return quotient_.in_relations(subtract(lhs, rhs)); }

    /// The same legs in the opposite order.
    BalancedTensor flipped(const FiniteAlgebra& algebra) const;

    /// Checks that multiplication on the side opposite to each leg's structure
    /// (by every basis element) maps relations to relations.
    Report multiplication_certificate(const FiniteAlgebra& algebra) const;

private:
    std::size_t n_ = 0;
    std::string flavor_;
    ModuleStructure first_;
    ModuleStructure second_;
    QuotientSpace quotient_;
};

/// A (x) A (x) A modulo two balancing relations, one on legs 1-2 and one on legs 2-3.
class TripleTensor {
public:
    TripleTensor() = default;
    TripleTensor(const BalancedTensor& legs12, const BalancedTensor& legs23);

    const std::string& flavor() const noexcept { return flavor_; }
    const QuotientSpace& quotient() const noexcept { return quotient_; }
    std::size_t dim() const noexcept { return quotient_.dim(); }
    bool equal(const Vector& lhs, const Vector& rhs) const { return quotient_.in_relations(subtract(lhs, rhs)); }

private:
    std::string flavor_;
    QuotientSpace quotient_;
};

/// Linear map out of a quotient induced by an ambient map; the failure names a relation
/// vector that is not sent into the target relations.
InducedMap descend(const QuotientSpace& source, const QuotientSpace& target,
                   const std::function<Vector(std::size_t)>& ambient_image);

/// The trivial quotient of F^n, used as the target of maps landing in A.
QuotientSpace full_space(std::size_t n);

/// c (x) d -> second.act(omega(c), d), with omega : A -> base as a dim(base) x n matrix.
InducedMap try_slice_left(const BalancedTensor& tensor, const Matrix& omega);
/// c (x) d -> first.act(omega(d), c).
InducedMap try_slice_right(const BalancedTensor& tensor, const Matrix& omega);
/// As above; throws MathematicalRejection naming an unbalanced relation.
Matrix slice_left(const BalancedTensor& tensor, const Matrix& omega);
Matrix slice_right(const BalancedTensor& tensor, const Matrix& omega);

/// a (x) b -> b (x) a between two flavors; throws MathematicalRejection if it does not descend.
Matrix flip(const BalancedTensor& source, const BalancedTensor& target);

/// Ambient map a (x) b -> f(a) (x) g(b) on basis index i * n + j.
Vector apply_legs(const Matrix& f, const Matrix& g, std::size_t i, std::size_t j);

}  // namespace algebroid
