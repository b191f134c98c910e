#include "algebroid/tensor.hpp"

#include <stdexcept>

namespace algebroid {

namespace {

std::string relation_string(const Vector& v) { return to_string(v); }

Vector tensor_basis(std::size_t n, std::size_t i, std::size_t j) { return unit_vector(n * n, i * n + j); }

}  // namespace

Vector tensor(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j].is_zero()) {
                out[i * b.size() + j] = a[i] * b[j];
            }
        }
    }
    return out;
}

Vector tensor(const Vector& a, const Vector& b, const Vector& c) { return tensor(tensor(a, b), c); }

Vector multiply_legs(const FiniteAlgebra& algebra, const Vector& x, const Vector& y) {
    const std::size_t n = algebra.dim();
    Vector out(n * n);
    for (std::size_t xi = 0; xi < n * n; ++xi) {
        if (x[xi].is_zero()) {
            continue;
        }
        for (std::size_t yi = 0; yi < n * n; ++yi) {
            if (y[yi].is_zero()) {
                continue;
            }
            const Scalar c = x[xi] * y[yi];
            const Vector& p = algebra.product(xi / n, yi / n);
            const Vector& q = algebra.product(xi % n, yi % n);
            for (std::size_t r = 0; r < n; ++r) {
                if (p[r].is_zero()) {
                    continue;
                }
                const Scalar cr = c * p[r];
                for (std::size_t s = 0; s < n; ++s) {
                    if (!q[s].is_zero()) {
                        out[r * n + s] += cr * q[s];
                    }
                }
            }
        }
    }
    return out;
}

Vector apply_legs(const Matrix& f, const Matrix& g, std::size_t i, std::size_t j) {
    return tensor(f.column(i), g.column(j));
}

BalancedTensor::BalancedTensor(const FiniteAlgebra& algebra, ModuleStructure first, ModuleStructure second)
    : n_(algebra.dim()),
      flavor_(first.tag() + "⊗" + second.tag()),
      first_(std::move(first)),
      second_(std::move(second)) {
    if (first_.algebra_dim() != n_ || second_.algebra_dim() != n_) {
        throw std::invalid_argument("balanced tensor legs act on a different algebra");
    }
    if (first_.base_ptr() != second_.base_ptr()) {
        throw std::invalid_argument("balanced tensor " + flavor_ + " mixes base algebras");
    }
    if (first_.side() == second_.side()) {
        throw std::invalid_argument("balanced tensor " + flavor_ + " pairs two modules of the same side");
    }
    RowEchelon relations(n_ * n_);
    const std::size_t nb = first_.base().dim();
    for (std::size_t x = 0; x < nb; ++x) {
        const Matrix& m1 = first_.action(x);
        const Matrix& m2 = second_.action(x);
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b = 0; b < n_; ++b) {
                Vector r = tensor(m1.column(a), unit_vector(n_, b));
                const Vector rhs = tensor(unit_vector(n_, a), m2.column(b));
                for (std::size_t k = 0; k < r.size(); ++k) {
                    r[k] -= rhs[k];
                }
                relations.insert(std::move(r));
            }
        }
    }
    quotient_ = QuotientSpace(n_ * n_, std::move(relations));
}

BalancedTensor BalancedTensor::flipped(const FiniteAlgebra& algebra) const {
    return BalancedTensor(algebra, second_, first_);
}

Report BalancedTensor::multiplication_certificate(const FiniteAlgebra& algebra) const {
    Report report;
    for (int leg = 0; leg < 2; ++leg) {
        const ModuleStructure& structure = leg == 0 ? first_ : second_;
        const bool right = structure.multiplication() == Multiplication::left;
        std::string witness;
        for (std::size_t k = 0; k < n_ && witness.empty(); ++k) {
            const Matrix& mult = right ? algebra.right_basis(k) : algebra.left_basis(k);
            const Matrix id = Matrix::identity(n_);
            const InducedMap map = descend(quotient_, quotient_, [&](std::size_t idx) {
                const std::size_t i = idx / n_;
                const std::size_t j = idx % n_;
                return leg == 0 ? apply_legs(mult, id, i, j) : apply_legs(id, mult, i, j);
            });
            if (!map.well_defined()) {
                witness = algebra.label(k) + " on relation " + relation_string(map.failure->relation);
            }
        }
        const std::string name = std::string(right ? "right" : "left") + "-multiplication-leg" + std::to_string(leg + 1);
        report.add(flavor_ + " " + name, "tensor-products", witness.empty(), witness);
    }
    return report;
}

TripleTensor::TripleTensor(const BalancedTensor& legs12, const BalancedTensor& legs23)
    : flavor_(legs12.first().tag() + "⊗(" + legs12.second().tag() + "|" + legs23.first().tag() + ")⊗" +
              legs23.second().tag()) {
    const std::size_t n = legs12.algebra_dim();
    if (legs23.algebra_dim() != n) {
        throw std::invalid_argument("triple tensor legs act on different algebras");
    }
    RowEchelon relations(n * n * n);
    for (const Vector& r : legs12.quotient().relations().basis()) {
        for (std::size_t k = 0; k < n; ++k) {
            relations.insert(tensor(r, unit_vector(n, k)));
        }
    }
    for (const Vector& r : legs23.quotient().relations().basis()) {
        for (std::size_t i = 0; i < n; ++i) {
            relations.insert(tensor(unit_vector(n, i), r));
        }
    }
    quotient_ = QuotientSpace(n * n * n, std::move(relations));
}

InducedMap descend(const QuotientSpace& source, const QuotientSpace& target,
                   const std::function<Vector(std::size_t)>& ambient_image) {
    return induced_map(source, target, ambient_image);
}

QuotientSpace full_space(std::size_t n) { return QuotientSpace(n, RowEchelon(n)); }

InducedMap try_slice_left(const BalancedTensor& tensor, const Matrix& omega) {
    const std::size_t n = tensor.algebra_dim();
    if (omega.cols() != n || omega.rows() != tensor.second().base().dim()) {
        throw std::invalid_argument("slice functional has the wrong shape");
    }
    return descend(tensor.quotient(), full_space(n), [&](std::size_t idx) {
        return tensor.second().act(omega.column(idx / n), unit_vector(n, idx % n));
    });
}

InducedMap try_slice_right(const BalancedTensor& tensor, const Matrix& omega) {
    const std::size_t n = tensor.algebra_dim();
    if (omega.cols() != n || omega.rows() != tensor.first().base().dim()) {
        throw std::invalid_argument("slice functional has the wrong shape");
    }
    return descend(tensor.quotient(), full_space(n), [&](std::size_t idx) {
        return tensor.first().act(omega.column(idx % n), unit_vector(n, idx / n));
    });
}

namespace {

Matrix require_descent(const InducedMap& map, const std::string& what) {
    if (!map.well_defined()) {
        throw MathematicalRejection("tensor-products", what + " is not balanced",
                                    "relation not killed: " + relation_string(map.failure->relation));
    }
    return map.matrix;
}

}  // namespace

Matrix slice_left(const BalancedTensor& tensor, const Matrix& omega) {
    return require_descent(try_slice_left(tensor, omega), "left slice on " + tensor.flavor());
}

Matrix slice_right(const BalancedTensor& tensor, const Matrix& omega) {
    return require_descent(try_slice_right(tensor, omega), "right slice on " + tensor.flavor());
}

Matrix flip(const BalancedTensor& source, const BalancedTensor& target) {
    const std::size_t n = source.algebra_dim();
    const InducedMap map = descend(source.quotient(), target.quotient(), [&](std::size_t idx) {
        return tensor_basis(n, idx % n, idx / n);
    });
    return require_descent(map, "flip " + source.flavor() + " -> " + target.flavor());
}

}  // namespace algebroid
