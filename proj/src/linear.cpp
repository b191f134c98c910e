#include "algebroid/linear.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace algebroid {

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t k) {
    Vector v(n);
    v.at(k) = Scalar(1);
    return v;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& c) { return c.is_zero(); });
}

Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    Vector out = a;
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (!b[k].is_zero()) {
            out[k] += b[k];
        }
    }
    return out;
}

Vector subtract(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    Vector out = a;
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (!b[k].is_zero()) {
            out[k] -= b[k];
        }
    }
    return out;
}

Vector scale(const Scalar& c, const Vector& v) {
    Vector out(v.size());
    if (c.is_zero()) {
        return out;
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) {
            out[k] = c * v[k];
        }
    }
    return out;
}

void axpy(const Scalar& c, const Vector& x, Vector& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    if (c.is_zero()) {
        return;
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k].is_zero()) {
            y[k] += c * x[k];
        }
    }
}

Vector conjugate(const Vector& v) {
    Vector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        out[k] = v[k].conj();
    }
    return out;
}

std::string to_string(const Vector& v) {
    std::ostringstream out;
    out << '[';
    for (std::size_t k = 0; k < v.size(); ++k) {
        out << (k ? ", " : "") << v[k].to_string();
    }
    out << ']';
    return out.str();
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m.at(k, k) = Scalar(1);
    }
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const Vector> columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) {
            throw std::invalid_argument("column dimension mismatch");
        }
        for (std::size_t i = 0; i < rows; ++i) {
            m.at(i, j) = columns[j][i];
        }
    }
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::span<const Vector> rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw std::invalid_argument("row dimension mismatch");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::from_function(std::size_t rows, std::size_t cols,
                             const std::function<Vector(std::size_t)>& column) {
    Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        const Vector c = column(j);
        if (c.size() != rows) {
            throw std::invalid_argument("column dimension mismatch");
        }
        for (std::size_t i = 0; i < rows; ++i) {
            m.at(i, j) = c[i];
        }
    }
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = at(i, j);
    }
    return v;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<long>(i * cols_),
                  data_.begin() + static_cast<long>((i + 1) * cols_));
}

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols_) {
        throw std::invalid_argument("matrix-vector dimension mismatch");
    }
    Vector y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (x[j].is_zero()) {
            continue;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& a = at(i, j);
            if (!a.is_zero()) {
                y[i] += a * x[j];
            }
        }
    }
    return y;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t.at(j, i) = at(i, j);
        }
    }
    return t;
}

Matrix Matrix::conj() const {
    Matrix c(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) {
        c.data_[k] = data_[k].conj();
    }
    return c;
}

bool Matrix::is_zero() const { return algebroid::is_zero(data_); }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("matrix product dimension mismatch");
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a.at(i, k);
            if (x.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& y = b.at(k, j);
                if (!y.is_zero()) {
                    c.at(i, j) += x * y;
                }
            }
        }
    }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("matrix sum dimension mismatch");
    }
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) {
        c.data_[k] += b.data_[k];
    }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("matrix difference dimension mismatch");
    }
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) {
        c.data_[k] -= b.data_[k];
    }
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a.at(i, j);
            if (x.is_zero()) {
                continue;
            }
            for (std::size_t p = 0; p < b.rows(); ++p) {
                for (std::size_t q = 0; q < b.cols(); ++q) {
                    if (!b.at(p, q).is_zero()) {
                        k.at(i * b.rows() + p, j * b.cols() + q) = x * b.at(p, q);
                    }
                }
            }
        }
    }
    return k;
}

RowEchelon::RowEchelon(std::size_t dim) : dim_(dim), row_of_pivot_(dim, -1) {}

std::vector<std::size_t> RowEchelon::support_of(const Vector& v) {
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) {
            support.push_back(k);
        }
    }
    return support;
}

Vector RowEchelon::reduce(Vector v) const {
    if (v.size() != dim_) {
        throw std::invalid_argument("vector does not live in the ambient space");
    }
    for (const Row& row : rows_) {
        const std::size_t pivot = row.support.front();
        if (v[pivot].is_zero()) {
            continue;
        }
        const Scalar factor = v[pivot];
        for (const std::size_t k : row.support) {
            v[k] -= factor * row.values[k];
        }
    }
    return v;
}

bool RowEchelon::insert(Vector v) {
    v = reduce(std::move(v));
    auto support = support_of(v);
    if (support.empty()) {
        return false;
    }
    const std::size_t pivot = support.front();
    const Scalar lead_inverse = v[pivot].inverse();
    for (const std::size_t k : support) {
        v[k] *= lead_inverse;
    }
    for (Row& row : rows_) {
        if (row.values[pivot].is_zero()) {
            continue;
        }
        const Scalar factor = row.values[pivot];
        for (const std::size_t k : support) {
            row.values[k] -= factor * v[k];
        }
        row.support = support_of(row.values);
    }
    row_of_pivot_[pivot] = static_cast<long>(rows_.size());
    rows_.push_back(Row{std::move(v), std::move(support)});
    pivots_.insert(std::upper_bound(pivots_.begin(), pivots_.end(), pivot), pivot);
    return true;
}

bool RowEchelon::contains(const Vector& v) const { return algebroid::is_zero(reduce(v)); }

std::vector<Vector> RowEchelon::basis() const {
    std::vector<Vector> out;
    out.reserve(rows_.size());
    for (const std::size_t pivot : pivots_) {
        out.push_back(rows_[static_cast<std::size_t>(row_of_pivot_[pivot])].values);
    }
    return out;
}

std::vector<std::size_t> RowEchelon::free_columns() const {
    std::vector<std::size_t> free;
    for (std::size_t k = 0; k < dim_; ++k) {
        if (row_of_pivot_[k] < 0) {
            free.push_back(k);
        }
    }
    return free;
}

namespace {

// Reduced row echelon form of the rows of m; returns the pivot columns.
RowEchelon row_space(const Matrix& m) {
    RowEchelon echelon(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        echelon.insert(m.row(i));
    }
    return echelon;
}

}  // namespace

std::optional<Vector> solve_linear(const Matrix& map, const Vector& target) {
    if (target.size() != map.rows()) {
        throw std::invalid_argument("solve_linear: target dimension does not match the codomain");
    }
    // Row-reduce the augmented matrix [map | target] with the target column last.
    const std::size_t n = map.cols();
    RowEchelon echelon(n + 1);
    for (std::size_t i = 0; i < map.rows(); ++i) {
        Vector row = map.row(i);
        row.push_back(target[i]);
        echelon.insert(std::move(row));
    }
    Vector solution(n);
    for (const Vector& row : echelon.basis()) {
        std::size_t pivot = 0;
        while (row[pivot].is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            return std::nullopt;
        }
        solution[pivot] = row[n];
    }
    return solution;
}

std::vector<Vector> kernel(const Matrix& map) {
    const RowEchelon echelon = row_space(map);
    const auto rows = echelon.basis();
    const auto& pivots = echelon.pivots();
    std::vector<Vector> basis;
    for (const std::size_t free : echelon.free_columns()) {
        Vector v(map.cols());
        v[free] = Scalar(1);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            v[pivots[r]] = -rows[r][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Matrix& map) { return row_space(map).rank(); }

std::optional<Matrix> inverse(const Matrix& map) {
    if (map.rows() != map.cols()) {
        return std::nullopt;
    }
    const std::size_t n = map.rows();
    RowEchelon echelon(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector row = map.row(i);
        row.resize(2 * n);
        row[n + i] = Scalar(1);
        echelon.insert(std::move(row));
    }
    const auto& pivots = echelon.pivots();
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    Matrix inv(n, n);
    const auto rows = echelon.basis();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv.at(i, j) = rows[i][n + j];
        }
    }
    return inv;
}

std::vector<Vector> image(const Matrix& map) {
    const RowEchelon echelon = row_space(map);
    std::vector<Vector> basis;
    for (const std::size_t pivot : echelon.pivots()) {
        basis.push_back(map.column(pivot));
    }
    return basis;
}

QuotientSpace::QuotientSpace(std::size_t ambient_dim, RowEchelon relations)
    : relations_(std::move(relations)), free_index_(ambient_dim, -1) {
    if (relations_.dim() != ambient_dim) {
        throw std::invalid_argument("relation space does not match the ambient dimension");
    }
    free_ = relations_.free_columns();
    for (std::size_t k = 0; k < free_.size(); ++k) {
        free_index_[free_[k]] = static_cast<long>(k);
    }
}

Vector QuotientSpace::project(const Vector& v) const {
    const Vector reduced = relations_.reduce(v);
    Vector q(free_.size());
    for (std::size_t k = 0; k < free_.size(); ++k) {
        q[k] = reduced[free_[k]];
    }
    return q;
}

Vector QuotientSpace::lift(const Vector& q) const {
    if (q.size() != free_.size()) {
        throw std::invalid_argument("quotient vector dimension mismatch");
    }
    Vector v(ambient_dim());
    for (std::size_t k = 0; k < free_.size(); ++k) {
        v[free_[k]] = q[k];
    }
    return v;
}

Vector QuotientSpace::canonical(const Vector& v) const { return relations_.reduce(v); }

bool QuotientSpace::in_relations(const Vector& v) const { return relations_.contains(v); }

Matrix QuotientSpace::projection_matrix() const {
    return Matrix::from_function(dim(), ambient_dim(),
                                 [&](std::size_t j) { return project(unit_vector(ambient_dim(), j)); });
}

Matrix QuotientSpace::section_matrix() const {
    return Matrix::from_function(ambient_dim(), dim(),
                                 [&](std::size_t k) { return unit_vector(ambient_dim(), free_[k]); });
}

QuotientSpace quotient_by(std::size_t ambient_dim, std::span<const Vector> relations) {
    RowEchelon echelon(ambient_dim);
    for (const Vector& r : relations) {
        echelon.insert(r);
    }
    return QuotientSpace(ambient_dim, std::move(echelon));
}

InducedMap induced_map(const QuotientSpace& source, const QuotientSpace& target,
                       const std::function<Vector(std::size_t)>& ambient_image) {
    const std::size_t n = source.ambient_dim();
    std::vector<std::optional<Vector>> cache(n);
    const auto image_of = [&](std::size_t j) -> const Vector& {
        if (!cache[j]) {
            Vector v = ambient_image(j);
            if (v.size() != target.ambient_dim()) {
                throw std::invalid_argument("induced_map: image has the wrong dimension");
            }
            cache[j] = std::move(v);
        }
        return *cache[j];
    };
    InducedMap result;
    for (const Vector& relation : source.relations().basis()) {
        Vector img(target.ambient_dim());
        for (std::size_t j = 0; j < n; ++j) {
            if (!relation[j].is_zero()) {
                axpy(relation[j], image_of(j), img);
            }
        }
        if (!target.in_relations(img)) {
            result.failure = DescentFailure{relation, target.project(img)};
            return result;
        }
    }
    result.matrix = Matrix::from_function(target.dim(), source.dim(), [&](std::size_t k) {
        return target.project(image_of(source.free_columns()[k]));
    });
    return result;
}

}  // namespace algebroid
