#include "algebroid/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace algebroid {

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::vector<std::uint64_t> prime_factors(std::uint64_t value) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p * p <= value; ++p) {
        if (value % p == 0) {
            primes.push_back(p);
            while (value % p == 0) {
                value /= p;
            }
        }
    }
    if (value > 1) {
        primes.push_back(value);
    }
    return primes;
}

// Flips the sign of every term whose radicand is divisible by prime.
Scalar conjugate_at_prime(const Scalar& z, std::uint64_t prime) {
    std::vector<Scalar::Term> terms = z.terms();
    for (auto& term : terms) {
        if (term.radicand % prime == 0) {
            term.re = -term.re;
            term.im = -term.im;
        }
    }
    return Scalar::from_terms(std::move(terms));
}

mpz_class floor_sqrt(const mpz_class& value) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), value.get_mpz_t());
    return root;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::uint64_t squarefree_kernel(std::uint64_t value) {
    if (value == 0) {
        throw std::invalid_argument("square-free kernel of zero");
    }
    std::uint64_t kernel = 1;
    for (std::uint64_t p = 2; p * p <= value; ++p) {
        int exponent = 0;
        while (value % p == 0) {
            value /= p;
            ++exponent;
        }
        if (exponent % 2 == 1) {
            kernel *= p;
        }
    }
    return kernel * value;
}

Scalar::Scalar(long value) : Scalar(mpq_class(value), mpq_class(0)) {}

Scalar::Scalar(const mpq_class& re, const mpq_class& im) {
    if (re != 0 || im != 0) {
        terms_.push_back(Term{1, re, im});
        terms_.front().re.canonicalize();
        terms_.front().im.canonicalize();
    }
}

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::imaginary_unit() { return Scalar(0, 1); }

Scalar Scalar::root(std::uint64_t radicand) {
    if (radicand == 0 || squarefree_kernel(radicand) != radicand) {
        throw std::invalid_argument("radicand must be a positive square-free integer");
    }
    Scalar z;
    z.terms_.push_back(Term{radicand, 1, 0});
    return z;
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
    Scalar z;
    z.terms_ = std::move(terms);
    z.normalize();
    return z;
}

void Scalar::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& term : terms_) {
        if (!merged.empty() && merged.back().radicand == term.radicand) {
            merged.back().re += term.re;
            merged.back().im += term.im;
        } else {
            merged.push_back(std::move(term));
        }
    }
    terms_.clear();
    for (auto& term : merged) {
        if (term.re != 0 || term.im != 0) {
            terms_.push_back(std::move(term));
        }
    }
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_[0].radicand == 1 && terms_[0].re == 1 && terms_[0].im == 0;
}

bool Scalar::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.im == 0; });
}

bool Scalar::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1 && terms_[0].im == 0);
}

std::optional<mpq_class> Scalar::as_rational() const {
    if (!is_rational()) {
        return std::nullopt;
    }
    return terms_.empty() ? mpq_class(0) : terms_[0].re;
}

Scalar Scalar::conj() const {
    Scalar z = *this;
    for (auto& term : z.terms_) {
        term.im = -term.im;
    }
    return z;
}

Scalar Scalar::operator-() const {
    Scalar z = *this;
    for (auto& term : z.terms_) {
        term.re = -term.re;
        term.im = -term.im;
    }
    return z;
}

Scalar& Scalar::operator+=(const Scalar& other) {
    if (other.terms_.empty()) {
        return *this;
    }
    if (this == &other) {
        const Scalar copy = other;
        return *this += copy;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto lhs = terms_.begin();
    auto rhs = other.terms_.begin();
    while (lhs != terms_.end() || rhs != other.terms_.end()) {
        if (rhs == other.terms_.end() || (lhs != terms_.end() && lhs->radicand < rhs->radicand)) {
            merged.push_back(std::move(*lhs++));
        } else if (lhs == terms_.end() || rhs->radicand < lhs->radicand) {
            merged.push_back(*rhs++);
        } else {
            Term sum{lhs->radicand, lhs->re + rhs->re, lhs->im + rhs->im};
            if (sum.re != 0 || sum.im != 0) {
                merged.push_back(std::move(sum));
            }
            ++lhs;
            ++rhs;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) {
        return Scalar();
    }
    Scalar product;
    product.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            const std::uint64_t g = gcd_u64(x.radicand, y.radicand);
            const std::uint64_t radicand = (x.radicand / g) * (y.radicand / g);
            mpq_class re = x.re * y.re - x.im * y.im;
            mpq_class im = x.re * y.im + x.im * y.re;
            if (g != 1) {
                re *= g;
                im *= g;
            }
            product.terms_.push_back(Scalar::Term{radicand, std::move(re), std::move(im)});
        }
    }
    product.normalize();
    return product;
}

Scalar& Scalar::operator*=(const Scalar& other) { return *this = *this * other; }

Scalar& Scalar::operator/=(const Scalar& other) { return *this = *this * other.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) {
        throw std::domain_error("division by zero scalar");
    }
    Scalar current = *this;
    Scalar numerator(1);
    while (!(current.terms_.size() == 1 && current.terms_[0].radicand == 1)) {
        std::uint64_t radicand = 1;
        for (const auto& term : current.terms_) {
            if (term.radicand != 1) {
                radicand = term.radicand;
                break;
            }
        }
        const std::uint64_t prime = prime_factors(radicand).front();
        const Scalar partner = conjugate_at_prime(current, prime);
        numerator *= partner;
        current *= partner;
    }
    const mpq_class& re = current.terms_[0].re;
    const mpq_class& im = current.terms_[0].im;
    const mpq_class norm = re * re + im * im;
    return numerator * Scalar(re / norm, -im / norm);
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
        const auto& x = a.terms_[k];
        const auto& y = b.terms_[k];
        if (x.radicand != y.radicand || x.re != y.re || x.im != y.im) {
            return false;
        }
    }
    return true;
}

int Scalar::sign() const {
    if (!is_real()) {
        throw std::domain_error("sign of a non-real scalar");
    }
    if (is_zero()) {
        return 0;
    }
    for (unsigned long bits = 16;; bits += 32) {
        mpq_class low = 0;
        mpq_class high = 0;
        const mpz_class scale = mpz_class(1) << bits;
        for (const auto& term : terms_) {
            const mpz_class root_floor = floor_sqrt(mpz_class(term.radicand) << (2 * bits));
            const bool exact = term.radicand == 1;
            const mpq_class lo_root(root_floor, scale);
            const mpq_class hi_root = exact ? lo_root : mpq_class(root_floor + 1, scale);
            if (term.re > 0) {
                low += term.re * lo_root;
                high += term.re * hi_root;
            } else {
                low += term.re * hi_root;
                high += term.re * lo_root;
            }
        }
        if (low > 0) {
            return 1;
        }
        if (high < 0) {
            return -1;
        }
    }
}

std::string Scalar::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& term : terms_) {
        std::string coeff;
        if (term.im == 0) {
            coeff = rational_text(term.re);
        } else if (term.re == 0) {
            coeff = rational_text(term.im) + "i";
        } else {
            coeff = "(" + rational_text(term.re) + (term.im > 0 ? "+" : "") + rational_text(term.im) + "i)";
        }
        if (!first) {
            out << (coeff.front() == '-' ? " " : " + ");
        }
        out << coeff;
        if (term.radicand != 1) {
            out << "*sqrt(" << term.radicand << ")";
        }
        first = false;
    }
    return out.str();
}

bool is_positive(const Scalar& z) { return z.is_real() && z.sign() >= 0; }

mpq_class parse_rational(std::string_view text) {
    std::string trimmed(text);
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
    if (trimmed.empty()) {
        throw std::invalid_argument("empty rational");
    }
    const auto slash = trimmed.find('/');
    const auto valid_integer = [](const std::string& s) {
        if (s.empty()) {
            return false;
        }
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) {
            return false;
        }
        return std::all_of(s.begin() + static_cast<long>(start), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    const std::string num = trimmed.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : trimmed.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den)) {
        throw std::invalid_argument("not an exact fraction: '" + trimmed + "'");
    }
    mpz_class n(num[0] == '+' ? num.substr(1) : num);
    mpz_class d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + trimmed + "'");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

Field::Field(std::vector<std::uint64_t> adjoined) : adjoined_(std::move(adjoined)) {
    span_ = {1};
    for (const std::uint64_t d : adjoined_) {
        if (d < 2 || squarefree_kernel(d) != d) {
            throw std::invalid_argument("adjoined root must be a square-free integer >= 2, got " +
                                        std::to_string(d));
        }
        if (contains_root(d)) {
            throw std::invalid_argument("sqrt(" + std::to_string(d) + ") already lies in the field");
        }
        const std::size_t count = span_.size();
        for (std::size_t k = 0; k < count; ++k) {
            const std::uint64_t g = std::gcd(span_[k], d);
            span_.push_back((span_[k] / g) * (d / g));
        }
    }
    std::sort(span_.begin(), span_.end());
}

bool Field::contains_root(std::uint64_t radicand) const {
    return std::binary_search(span_.begin(), span_.end(), radicand);
}

std::uint64_t Field::squarefree_part(const mpq_class& value) {
    if (value <= 0) {
        throw std::domain_error("square-free part of a non-positive rational");
    }
    const mpz_class product = value.get_num() * value.get_den();
    if (!product.fits_ulong_p()) {
        throw std::domain_error("rational too large for radicand arithmetic");
    }
    return squarefree_kernel(product.get_ui());
}

std::optional<Scalar> Field::sqrt(const mpq_class& value) const {
    if (value < 0) {
        return std::nullopt;
    }
    if (value == 0) {
        return Scalar();
    }
    const std::uint64_t m = squarefree_part(value);
    if (!contains_root(m)) {
        return std::nullopt;
    }
    const mpz_class product = value.get_num() * value.get_den();
    const mpz_class square = product / m;
    const mpq_class coeff(floor_sqrt(square), value.get_den());
    return Scalar(coeff) * Scalar::root(m);
}

}  // namespace algebroid
