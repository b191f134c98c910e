#include "algebroid/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace algebroid {

namespace {

std::string pair_witness(const FiniteAlgebra& algebra, std::size_t i, std::size_t j) {
    return "(" + algebra.label(i) + ", " + algebra.label(j) + ")";
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::size_t dim, std::vector<Vector> products, std::vector<std::string> labels)
    : dim_(dim), products_(std::move(products)), labels_(std::move(labels)) {
    if (products_.size() != dim_ * dim_) {
        throw std::invalid_argument("structure constants must list dim^2 products");
    }
    for (const auto& p : products_) {
        if (p.size() != dim_) {
            throw std::invalid_argument("structure constant vector has the wrong length");
        }
    }
    if (labels_.empty()) {
        for (std::size_t k = 0; k < dim_; ++k) {
            labels_.push_back("e" + std::to_string(k));
        }
    }
    if (labels_.size() != dim_) {
        throw std::invalid_argument("label count does not match the dimension");
    }
    left_.reserve(dim_);
    right_.reserve(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        left_.push_back(Matrix::from_function(dim_, dim_, [&](std::size_t j) { return product(k, j); }));
        right_.push_back(Matrix::from_function(dim_, dim_, [&](std::size_t j) { return product(j, k); }));
    }
    unit_ = find_unit(*this);
}

FiniteAlgebra FiniteAlgebra::with_involution(Matrix involution) const {
    if (involution.rows() != dim_ || involution.cols() != dim_) {
        throw std::invalid_argument("involution matrix has the wrong shape");
    }
    FiniteAlgebra copy = *this;
    copy.involution_ = std::move(involution);
    return copy;
}

FiniteAlgebra FiniteAlgebra::opposite() const {
    std::vector<Vector> products(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            products[i * dim_ + j] = product(j, i);
        }
    }
    FiniteAlgebra op(dim_, std::move(products), labels_);
    if (involution_) {
        op.involution_ = involution_;
    }
    return op;
}

Vector FiniteAlgebra::multiply(const Vector& a, const Vector& b) const {
    if (a.size() != dim_ || b.size() != dim_) {
        throw std::invalid_argument("multiply: element dimension mismatch");
    }
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j].is_zero()) {
                continue;
            }
            const Vector& p = product(i, j);
            const Scalar c = a[i] * b[j];
            for (std::size_t k = 0; k < dim_; ++k) {
                if (!p[k].is_zero()) {
                    out[k] += c * p[k];
                }
            }
        }
    }
    return out;
}

Matrix FiniteAlgebra::left_multiplication(const Vector& a) const {
    Matrix m(dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        if (!a[k].is_zero()) {
            m = m + Matrix::from_function(dim_, dim_, [&](std::size_t j) { return scale(a[k], product(k, j)); });
        }
    }
    return m;
}

Matrix FiniteAlgebra::right_multiplication(const Vector& a) const {
    Matrix m(dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        if (!a[k].is_zero()) {
            m = m + Matrix::from_function(dim_, dim_, [&](std::size_t j) { return scale(a[k], product(j, k)); });
        }
    }
    return m;
}

const Vector& FiniteAlgebra::one() const {
    if (!unit_) {
        throw MathematicalRejection("local-units", "algebra has no unit");
    }
    return *unit_;
}

const Matrix& FiniteAlgebra::involution() const {
    if (!involution_) {
        throw std::logic_error("algebra carries no involution");
    }
    return *involution_;
}

Vector FiniteAlgebra::star(const Vector& a) const { return involution().apply(conjugate(a)); }

FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    const std::size_t n = a.dim();
    const std::size_t m = b.dim();
    std::vector<Vector> products(n * m * n * m);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            labels.push_back(a.label(i) + "(x)" + b.label(j));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < m; ++l) {
                    const Vector& p = a.product(i, k);
                    const Vector& q = b.product(j, l);
                    Vector out(n * m);
                    for (std::size_t r = 0; r < n; ++r) {
                        if (p[r].is_zero()) {
                            continue;
                        }
                        for (std::size_t s = 0; s < m; ++s) {
                            if (!q[s].is_zero()) {
                                out[r * m + s] = p[r] * q[s];
                            }
                        }
                    }
                    products[(i * m + j) * n * m + (k * m + l)] = std::move(out);
                }
            }
        }
    }
    return FiniteAlgebra(n * m, std::move(products), std::move(labels));
}

FiniteAlgebra function_algebra(std::size_t points, std::vector<std::string> labels) {
    std::vector<Vector> products(points * points, Vector(points));
    for (std::size_t k = 0; k < points; ++k) {
        products[k * points + k][k] = Scalar(1);
    }
    return FiniteAlgebra(points, std::move(products), std::move(labels));
}

std::optional<Vector> find_unit(const FiniteAlgebra& algebra) {
    const std::size_t n = algebra.dim();
    if (n == 0) {
        return std::nullopt;
    }
    // Unknown u with u e_j = e_j and e_j u = e_j for all j.
    Matrix system(2 * n * n, n);
    Vector target(2 * n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                system.at(j * n + k, i) = algebra.product(i, j)[k];
                system.at(n * n + j * n + k, i) = algebra.product(j, i)[k];
            }
            if (j == k) {
                target[j * n + k] = Scalar(1);
                target[n * n + j * n + k] = Scalar(1);
            }
        }
    }
    return solve_linear(system, target);
}

Report check_algebra(const FiniteAlgebra& algebra) {
    Report report;
    const std::size_t n = algebra.dim();
    std::string witness;
    for (std::size_t i = 0; i < n && witness.empty(); ++i) {
        for (std::size_t j = 0; j < n && witness.empty(); ++j) {
            for (std::size_t k = 0; k < n && witness.empty(); ++k) {
                const Vector lhs = algebra.multiply(algebra.product(i, j), algebra.basis(k));
                const Vector rhs = algebra.multiply(algebra.basis(i), algebra.product(j, k));
                if (lhs != rhs) {
                    witness = "(" + algebra.label(i) + ", " + algebra.label(j) + ", " + algebra.label(k) + ")";
                }
            }
        }
    }
    report.add("associativity", "associativity", witness.empty(), witness);

    // a -> (b -> ab) and a -> (b -> ba) must both be injective.
    Matrix left_regular(n * n, n);
    Matrix right_regular(n * n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t k = 0; k < n; ++k) {
                left_regular.at(b * n + k, a) = algebra.product(a, b)[k];
                right_regular.at(b * n + k, a) = algebra.product(b, a)[k];
            }
        }
    }
    const auto left_kernel = kernel(left_regular);
    const auto right_kernel = kernel(right_regular);
    const bool nondegenerate = left_kernel.empty() && right_kernel.empty();
    report.add("non-degeneracy", "non-degenerate", nondegenerate,
               nondegenerate ? "" : element_string(algebra, left_kernel.empty() ? right_kernel[0] : left_kernel[0]));

    std::vector<Vector> products;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            products.push_back(algebra.product(i, j));
        }
    }
    const bool idempotent = n == 0 || rank(Matrix::from_columns(n, products)) == n;
    report.add("idempotency", "idempotent", idempotent, "A.A is a proper subspace");
    report.add("local-units", "local-units", algebra.unit().has_value(), "no two-sided unit");

    if (algebra.has_involution()) {
        std::string inv_witness;
        for (std::size_t i = 0; i < n && inv_witness.empty(); ++i) {
            const Vector e = algebra.basis(i);
            if (algebra.star(algebra.star(e)) != e) {
                inv_witness = "** on " + algebra.label(i);
            }
            for (std::size_t j = 0; j < n && inv_witness.empty(); ++j) {
                const Vector lhs = algebra.star(algebra.product(i, j));
                const Vector rhs = algebra.multiply(algebra.star(algebra.basis(j)), algebra.star(e));
                if (lhs != rhs) {
                    inv_witness = "(ab)* != b*a* at " + pair_witness(algebra, i, j);
                }
            }
        }
        report.add("involution", "involution", inv_witness.empty(), inv_witness);
    }
    return report;
}

std::optional<std::string> homomorphism_witness(const FiniteAlgebra& source, const FiniteAlgebra& target,
                                                const Matrix& f, bool anti) {
    if (f.rows() != target.dim() || f.cols() != source.dim()) {
        return std::string("map has the wrong shape");
    }
    for (std::size_t i = 0; i < source.dim(); ++i) {
        for (std::size_t j = 0; j < source.dim(); ++j) {
            const Vector lhs = f.apply(source.product(i, j));
            const Vector fi = f.column(i);
            const Vector fj = f.column(j);
            const Vector rhs = anti ? target.multiply(fj, fi) : target.multiply(fi, fj);
            if (lhs != rhs) {
                return pair_witness(source, i, j);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> automorphism_witness(const FiniteAlgebra& algebra, const Matrix& f, bool anti) {
    if (f.rows() != algebra.dim() || f.cols() != algebra.dim()) {
        return std::string("map is not square of the algebra dimension");
    }
    if (!inverse(f)) {
        return std::string("map is not bijective");
    }
    return homomorphism_witness(algebra, algebra, f, anti);
}

bool automorphism_check(const FiniteAlgebra& algebra, const Matrix& f, bool anti) {
    return !automorphism_witness(algebra, f, anti).has_value();
}

bool is_multiplier(const FiniteAlgebra& algebra, const Multiplier& m) {
    const std::size_t n = algebra.dim();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Vector lhs = algebra.multiply(m.right.column(a), algebra.basis(b));
            const Vector rhs = algebra.multiply(algebra.basis(a), m.left.column(b));
            if (lhs != rhs) {
                return false;
            }
        }
    }
    return true;
}

MultiplierAlgebra multiplier_algebra(const FiniteAlgebra& algebra) {
    const Report base = check_algebra(algebra);
    if (!base.passed("non-degeneracy") || !base.passed("idempotency")) {
        throw MathematicalRejection("non-degenerate", "multiplier algebra requires a non-degenerate, idempotent algebra");
    }
    const std::size_t n = algebra.dim();
    const std::size_t half = n * n;
    // Unknowns: L entries at k*n + j (row k, column j), then R entries likewise.
    const auto l_index = [&](std::size_t row, std::size_t col) { return row * n + col; };
    const auto r_index = [&](std::size_t row, std::size_t col) { return half + row * n + col; };
    Matrix system(3 * n * n * n, 2 * half);
    std::size_t eq = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Vector& ab = algebra.product(a, b);
            for (std::size_t k = 0; k < n; ++k, ++eq) {
                // L(ab) - L(a) b = 0, component k.
                for (std::size_t j = 0; j < n; ++j) {
                    system.at(eq, l_index(k, j)) += ab[j];
                    system.at(eq, l_index(j, a)) -= algebra.product(j, b)[k];
                }
            }
            for (std::size_t k = 0; k < n; ++k, ++eq) {
                // R(ab) - a R(b) = 0.
                for (std::size_t j = 0; j < n; ++j) {
                    system.at(eq, r_index(k, j)) += ab[j];
                    system.at(eq, r_index(j, b)) -= algebra.product(a, j)[k];
                }
            }
            for (std::size_t k = 0; k < n; ++k, ++eq) {
                // R(a) b - a L(b) = 0.
                for (std::size_t j = 0; j < n; ++j) {
                    system.at(eq, r_index(j, a)) += algebra.product(j, b)[k];
                    system.at(eq, l_index(j, b)) -= algebra.product(a, j)[k];
                }
            }
        }
    }
    const auto solutions = kernel(system);
    const std::size_t d = solutions.size();
    const auto to_multiplier = [&](const Vector& v) {
        Multiplier m{Matrix(n, n), Matrix(n, n)};
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                m.left.at(r, c) = v[l_index(r, c)];
                m.right.at(r, c) = v[r_index(r, c)];
            }
        }
        return m;
    };
    const auto to_vector = [&](const Multiplier& m) {
        Vector v(2 * half);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                v[l_index(r, c)] = m.left.at(r, c);
                v[r_index(r, c)] = m.right.at(r, c);
            }
        }
        return v;
    };
    const Matrix basis_matrix = Matrix::from_columns(2 * half, solutions);
    const auto coordinates = [&](const Multiplier& m) {
        auto c = solve_linear(basis_matrix, to_vector(m));
        if (!c) {
            throw std::logic_error("multiplier product left the solution space");
        }
        return *c;
    };
    MultiplierAlgebra result;
    for (const auto& s : solutions) {
        result.basis.push_back(to_multiplier(s));
    }
    std::vector<Vector> products(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const Multiplier& x = result.basis[i];
            const Multiplier& y = result.basis[j];
            products[i * d + j] = coordinates(Multiplier{x.left * y.left, y.right * x.right});
        }
    }
    result.algebra = FiniteAlgebra(d, std::move(products));
    result.canonical_map = Matrix::from_function(d, n, [&](std::size_t a) {
        return coordinates(Multiplier{algebra.left_basis(a), algebra.right_basis(a)});
    });
    result.canonical_is_isomorphism = d == n && inverse(result.canonical_map).has_value();
    return result;
}

Report check_embedding(const FiniteAlgebra& algebra, const BaseEmbedding& embedding, const std::string& name) {
    Report report;
    const auto hom = homomorphism_witness(*embedding.source, algebra, embedding.map, embedding.anti);
    report.add(name + "-multiplicative", "base-embedding", !hom, hom.value_or(""));
    const bool injective = kernel(embedding.map).empty();
    report.add(name + "-injective", "base-embedding", injective, "embedding has a kernel");
    if (algebra.unit() && embedding.source->unit()) {
        const bool unital = embedding.map.apply(*embedding.source->unit()) == *algebra.unit();
        report.add(name + "-unital", "base-embedding", unital, "unit not preserved");
    }
    return report;
}

std::optional<std::string> commute_witness(const FiniteAlgebra& algebra, const Matrix& first, const Matrix& second) {
    for (std::size_t i = 0; i < first.cols(); ++i) {
        for (std::size_t j = 0; j < second.cols(); ++j) {
            const Vector x = first.column(i);
            const Vector y = second.column(j);
            if (algebra.multiply(x, y) != algebra.multiply(y, x)) {
                return "basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
            }
        }
    }
    return std::nullopt;
}

ModuleStructure::ModuleStructure(const FiniteAlgebra& algebra, AlgebraPtr base, std::string base_name, Matrix images,
                                 bool anti, Multiplication multiplication, std::string tag)
    : tag_(std::move(tag)),
      base_name_(std::move(base_name)),
      base_(std::move(base)),
      images_(std::move(images)),
      anti_(anti),
      multiplication_(multiplication) {
    if (images_.rows() != algebra.dim() || images_.cols() != base_->dim()) {
        throw std::invalid_argument("module structure images have the wrong shape");
    }
    for (std::size_t x = 0; x < base_->dim(); ++x) {
        const Vector image = images_.column(x);
        actions_.push_back(multiplication_ == Multiplication::left ? algebra.left_multiplication(image)
                                                                   : algebra.right_multiplication(image));
    }
}

ModuleSide ModuleStructure::side() const noexcept {
    const bool left_mult = multiplication_ == Multiplication::left;
    return left_mult != anti_ ? ModuleSide::left : ModuleSide::right;
}

Matrix ModuleStructure::action_of(const Vector& x) const {
    Matrix m(algebra_dim(), algebra_dim());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k].is_zero()) {
            const Matrix& a = actions_[k];
            Matrix scaled = a;
            for (std::size_t i = 0; i < a.rows(); ++i) {
                for (std::size_t j = 0; j < a.cols(); ++j) {
                    if (!a.at(i, j).is_zero()) {
                        scaled.at(i, j) = x[k] * a.at(i, j);
                    }
                }
            }
            m = m + scaled;
        }
    }
    return m;
}

Vector ModuleStructure::act(const Vector& x, const Vector& a) const {
    Vector out(algebra_dim());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k].is_zero()) {
            axpy(x[k], actions_[k].apply(a), out);
        }
    }
    return out;
}

bool ModuleStructure::faithful() const {
    const std::size_t n = algebra_dim();
    Matrix stacked(n * n, base_->dim());
    for (std::size_t x = 0; x < base_->dim(); ++x) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                stacked.at(i * n + j, x) = actions_[x].at(i, j);
            }
        }
    }
    return kernel(stacked).empty();
}

bool ModuleStructure::idempotent() const {
    std::vector<Vector> spans;
    for (const auto& a : actions_) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            spans.push_back(a.column(j));
        }
    }
    return spans.empty() ? algebra_dim() == 0 : rank(Matrix::from_columns(algebra_dim(), spans)) == algebra_dim();
}

Report ModuleStructure::check(const std::string& name) const {
    Report report;
    std::string witness;
    const std::size_t nb = base_->dim();
    for (std::size_t x = 0; x < nb && witness.empty(); ++x) {
        for (std::size_t y = 0; y < nb && witness.empty(); ++y) {
            const Matrix combined = action_of(base_->product(x, y));
            const Matrix composed = side() == ModuleSide::left ? actions_[x] * actions_[y] : actions_[y] * actions_[x];
            if (combined != composed) {
                witness = "(" + base_->label(x) + ", " + base_->label(y) + ")";
            }
        }
    }
    report.add(name + "-action", "module-action", witness.empty(), witness);
    report.add(name + "-faithful", "module-faithful", faithful(), "nonzero base element acts trivially");
    report.add(name + "-idempotent", "module-idempotent", idempotent(), "B.A is a proper subspace");
    return report;
}

std::vector<Matrix> module_maps(const ModuleStructure& structure) {
    const std::size_t n = structure.algebra_dim();
    const FiniteAlgebra& base = structure.base();
    const std::size_t nb = base.dim();
    const bool left = structure.side() == ModuleSide::left;
    // Unknown omega (nb x n) with entry (k, j) at k * n + j.
    Matrix system(nb * n * nb, nb * n);
    std::size_t eq = 0;
    for (std::size_t x = 0; x < nb; ++x) {
        const Matrix& act = structure.action(x);
        const Matrix& base_mult = left ? base.left_basis(x) : base.right_basis(x);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t k = 0; k < nb; ++k, ++eq) {
                for (std::size_t j = 0; j < n; ++j) {
                    system.at(eq, k * n + j) += act.at(j, a);
                }
                for (std::size_t l = 0; l < nb; ++l) {
                    system.at(eq, l * n + a) -= base_mult.at(k, l);
                }
            }
        }
    }
    std::vector<Matrix> maps;
    for (const auto& v : kernel(system)) {
        Matrix omega(nb, n);
        for (std::size_t k = 0; k < nb; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                omega.at(k, j) = v[k * n + j];
            }
        }
        maps.push_back(std::move(omega));
    }
    return maps;
}

std::string element_string(const FiniteAlgebra& algebra, const Vector& v) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) {
            continue;
        }
        out << (first ? "" : " + ");
        const std::string coeff = v[k].to_string();
        if (!v[k].is_one()) {
            out << (v[k].terms().size() > 1 ? "(" + coeff + ")" : coeff) << "*";
        }
        out << (k < algebra.labels().size() ? algebra.label(k) : "e" + std::to_string(k));
        first = false;
    }
    return first ? "0" : out.str();
}

}  // namespace algebroid
