#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algebroid/scalar.hpp"

namespace algebroid {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t k);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Scalar& c, const Vector& v);
void axpy(const Scalar& c, const Vector& x, Vector& y);
Vector conjugate(const Vector& v);
std::string to_string(const Vector& v);

// Dense row-major matrix; a linear map from F^cols to F^rows.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);
    static Matrix from_rows(std::size_t cols, std::span<const Vector> rows);
    // Matrix whose column k is f(k).
    static Matrix from_function(std::size_t rows, std::size_t cols,
                                const std::function<Vector(std::size_t)>& column);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const;
    Vector row(std::size_t i) const;
    Vector apply(const Vector& x) const;
    Matrix transpose() const;
    Matrix conj() const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix kronecker(const Matrix& a, const Matrix& b);

std::optional<Vector> solve_linear(const Matrix& map, const Vector& target);
std::vector<Vector> kernel(const Matrix& map);
std::size_t rank(const Matrix& map);
std::optional<Matrix> inverse(const Matrix& map);
// Basis of the column space, taken from the pivot columns.
std::vector<Vector> image(const Matrix& map);

// Incrementally maintained reduced row echelon basis of a subspace of F^n.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t dim = 0);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    // Adds v to the span; returns false if v was already in it.
    bool insert(Vector v);
    // Reduces v modulo the span, leaving zeros at every pivot column.
    Vector reduce(Vector v) const;
    bool contains(const Vector& v) const;
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    // Rows sorted by pivot column.
    std::vector<Vector> basis() const;
    std::vector<std::size_t> free_columns() const;

private:
    struct Row {
        Vector values;
        std::vector<std::size_t> support;
    };
    std::size_t dim_;
    std::vector<Row> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<long> row_of_pivot_;

    static std::vector<std::size_t> support_of(const Vector& v);
};

// F^n modulo the span of a relation set, with projection and section.
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(std::size_t ambient_dim, RowEchelon relations);

    std::size_t ambient_dim() const noexcept { return relations_.dim(); }
    std::size_t dim() const noexcept { return free_.size(); }
    const RowEchelon& relations() const noexcept { return relations_; }
    const std::vector<std::size_t>& free_columns() const noexcept { return free_; }

    Vector project(const Vector& v) const;
    Vector lift(const Vector& q) const;
    // Canonical representative: lift(project(v)).
    Vector canonical(const Vector& v) const;
    bool in_relations(const Vector& v) const;
    Matrix projection_matrix() const;
    Matrix section_matrix() const;

private:
    RowEchelon relations_;
    std::vector<std::size_t> free_;
    std::vector<long> free_index_;
};

QuotientSpace quotient_by(std::size_t ambient_dim, std::span<const Vector> relations);

// Thrown when a map on ambient spaces fails to descend to the quotients.
struct DescentFailure {
    Vector relation;
    Vector image;
};

// Matrix of the map induced on quotients by an ambient map given on basis vectors.
// Returns the failing relation when the ambient map does not send relations to relations.
struct InducedMap {
    Matrix matrix;
    std::optional<DescentFailure> failure;
    bool well_defined() const noexcept { return !failure.has_value(); }
};

InducedMap induced_map(const QuotientSpace& source, const QuotientSpace& target,
                       const std::function<Vector(std::size_t)>& ambient_image);

}  // namespace algebroid
