#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace algebroid {

// Element of Q(i)[sqrt(d_1), ..., sqrt(d_k)], stored as a sum c_r * sqrt(r)
// over square-free radicands r with coefficients c_r in Q(i).
class Scalar {
public:
    struct Term {
        std::uint64_t radicand = 1;
        mpq_class re;
        mpq_class im;
    };

    Scalar() = default;
    Scalar(long value);  // NOLINT(google-explicit-constructor)
    Scalar(const mpq_class& re, const mpq_class& im = 0);

    static Scalar fraction(long num, long den);
    static Scalar imaginary_unit();
    // sqrt(radicand) for a square-free radicand >= 1.
    static Scalar root(std::uint64_t radicand);
    static Scalar from_terms(std::vector<Term> terms);

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_one() const;
    bool is_real() const;
    bool is_rational() const;
    std::optional<mpq_class> as_rational() const;
    const std::vector<Term>& terms() const noexcept { return terms_; }

    Scalar conj() const;
    Scalar inverse() const;
    // Sign of a real scalar (-1, 0, 1); throws std::domain_error if not real.
    int sign() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    friend bool operator==(const Scalar& a, const Scalar& b);

    std::string to_string() const;

private:
    std::vector<Term> terms_;

    void normalize();
};

bool is_positive(const Scalar& z);

// Parses an exact fraction "p/q" or integer "p"; decimals are rejected.
mpq_class parse_rational(std::string_view text);

// The adjoined square roots available in a session.
class Field {
public:
    Field() : Field(std::vector<std::uint64_t>{}) {}
    explicit Field(std::vector<std::uint64_t> adjoined);

    const std::vector<std::uint64_t>& adjoined() const noexcept { return adjoined_; }
    bool contains_root(std::uint64_t radicand) const;
    // Square root of a positive rational, if it lies in the field.
    std::optional<Scalar> sqrt(const mpq_class& value) const;
    // Square-free part m of a positive rational q = s^2 * m.
    static std::uint64_t squarefree_part(const mpq_class& value);

private:
    std::vector<std::uint64_t> adjoined_;
    std::vector<std::uint64_t> span_;
};

std::uint64_t squarefree_kernel(std::uint64_t value);

}  // namespace algebroid
