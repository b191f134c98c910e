#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "algebroid/algebra.hpp"
#include "algebroid/bialgebroid.hpp"
#include "algebroid/linear.hpp"
#include "algebroid/report.hpp"

namespace algebroid::detail {

/// Keeps the first failing instance of a quantified identity.
class FirstFailure {
public:
    void record(const std::string& witness) {
        if (witness_.empty()) {
            witness_ = witness;
        }
    }
    bool ok() const noexcept { return witness_.empty(); }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

inline std::string sides(const QuotientSpace& q, const Vector& lhs, const Vector& rhs) {
    return "lhs " + to_string(q.project(lhs)) + " rhs " + to_string(q.project(rhs));
}

inline std::string sides(const Vector& lhs, const Vector& rhs) { return "lhs " + to_string(lhs) + " rhs " + to_string(rhs); }

inline void compare(FirstFailure& f, const QuotientSpace& q, const Vector& lhs, const Vector& rhs, const std::string& at) {
    if (f.ok() && !q.in_relations(subtract(lhs, rhs))) {
        f.record(at + ": " + sides(q, lhs, rhs));
    }
}

inline void compare(FirstFailure& f, const Vector& lhs, const Vector& rhs, const std::string& at) {
    if (f.ok() && lhs != rhs) {
        f.record(at + ": " + sides(lhs, rhs));
    }
}

inline void compare(FirstFailure& f, const Matrix& lhs, const Matrix& rhs, const std::string& at) {
    if (!f.ok()) {
        return;
    }
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        f.record(at + ": shape mismatch");
        return;
    }
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
        if (lhs.column(j) != rhs.column(j)) {
            f.record(at + " on quotient basis vector " + std::to_string(j) + ": " +
                     sides(lhs.column(j), rhs.column(j)));
            return;
        }
    }
}

inline void add(Report& r, const std::string& axiom, const std::string& equation, const FirstFailure& f,
         const std::string& detail = {}) {
    r.add(axiom, equation, f.ok(), f.witness(), detail);
}

inline std::string label(const FiniteAlgebra& a, std::size_t i) { return a.label(i); }

inline std::string pair(const FiniteAlgebra& a, std::size_t i, const FiniteAlgebra& b, std::size_t j) {
    return "(" + a.label(i) + ", " + b.label(j) + ")";
}

/// Equality of the spans of two vector families in F^n.
inline bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t n) {
    RowEchelon ea(n);
    RowEchelon eb(n);
    for (const Vector& v : a) {
        ea.insert(v);
    }
    for (const Vector& v : b) {
        eb.insert(v);
    }
    if (ea.rank() != eb.rank()) {
        return false;
    }
    for (const Vector& v : b) {
        if (!ea.contains(v)) {
            return false;
        }
    }
    return true;
}

/// Row-major coordinates of a matrix.
inline Vector flatten(const Matrix& m) {
    Vector out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out.push_back(m.at(r, c));
        }
    }
    return out;
}

/// Builds a dense linear system row by row.
class LinearSystem {
public:
    explicit LinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

    Vector& new_row(const Scalar& rhs) {
        rows_.emplace_back(unknowns_);
        rhs_.push_back(rhs);
        return rows_.back();
    }

    Derivation solve(std::size_t rows, std::size_t cols) const {
        const Matrix m = Matrix::from_rows(unknowns_, rows_);
        Derivation d;
        const auto x = solve_linear(m, rhs_);
        if (!x) {
            d.witness = "linear system is inconsistent";
            return d;
        }
        const auto k = kernel(m);
        if (!k.empty()) {
            d.witness = "solution is not unique (kernel dimension " + std::to_string(k.size()) + ")";
            return d;
        }
        Matrix out(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                out.at(r, c) = (*x)[r * cols + c];
            }
        }
        d.map = std::move(out);
        return d;
    }

private:
    std::size_t unknowns_;
    std::vector<Vector> rows_;
    Vector rhs_;
};

}  // namespace algebroid::detail
