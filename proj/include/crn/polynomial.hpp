#pragma once

#include "crn/network.hpp"
#include "crn/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crn::symbolic {

/// Ordering is part of the canonical form: concentrations, then rate constants, then partials.
enum class IndeterminateKind : std::uint8_t { concentration = 0, rate_constant = 1, kinetic_partial = 2 };

/// A sign-annotated symbol: c_i, k_r, or the partial dK_r/dc_i.
struct Indeterminate {
    IndeterminateKind kind = IndeterminateKind::concentration;
    std::uint32_t primary = 0;   ///< species index (concentration) or reaction index
    std::uint32_t secondary = 0; ///< species index of a kinetic partial, else 0
    Sign sign = Sign::positive;

    static Indeterminate concentration(std::size_t species);
    static Indeterminate rate_constant(std::size_t reaction);
    static Indeterminate kinetic_partial(std::size_t reaction, std::size_t species, Sign sign);

    friend bool operator==(const Indeterminate&, const Indeterminate&) = default;
    friend auto operator<=>(const Indeterminate&, const Indeterminate&) = default;
};

/// Power product with strictly positive exponents, sorted by indeterminate.
class Monomial {
public:
    using Factor = std::pair<Indeterminate, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(const Indeterminate& x, std::uint32_t power = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::uint32_t exponent(const Indeterminate& x) const;
    std::uint32_t degree() const;

    /// Product of declared signs raised to their exponents; unknown if any factor is unknown.
    Sign sign() const;

    /// Factors of the given kind only.
    Monomial restricted_to(IndeterminateKind kind) const;
    /// Factors of every other kind.
    Monomial without(IndeterminateKind kind) const;

    bool divides(const Monomial& other) const;
    /// Precondition: divides(other).
    Monomial quotient_of(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend Monomial gcd(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

/// Renders one indeterminate, e.g. "c[A]" or "k[C->2A]".
using Namer = std::function<std::string(const Indeterminate&)>;

/// Fallback names "c[0]", "k[3]", "dK[3/1]".
std::string default_name(const Indeterminate& x);

/// Sparse polynomial with arbitrary-precision integer coefficients. Zero coefficients are
/// never stored, so the zero polynomial has no terms.
class Polynomial {
public:
    using Terms = std::map<Monomial, BigInt>;

    Polynomial() = default;
    Polynomial(long long constant);
    Polynomial(const BigInt& constant);
    explicit Polynomial(const Indeterminate& x);
    Polynomial(const Monomial& m, const BigInt& coefficient);

    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    BigInt coefficient(const Monomial& m) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    /// this += a * b without materialising the product.
    void add_product(const Polynomial& a, const Polynomial& b, const BigInt& scale = 1);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a);
    friend Polynomial operator*(const BigInt& s, const Polynomial& p);

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Formal partial derivative.
    Polynomial differentiate(const Indeterminate& x) const;

    /// Replaces every occurrence of x by `value`.
    Polynomial substitute(const Indeterminate& x, const Polynomial& value) const;

    /// Numeric value under an assignment of every indeterminate.
    double evaluate(const std::function<double(const Indeterminate&)>& value) const;

    /// Sorted "coef*x*y^2" terms joined by " + " (negative terms keep their sign).
    std::string to_string(const Namer& namer = default_name) const;

private:
    Terms terms_;
};

/// Sign of a single term: coefficient sign times declared signs.
Sign term_sign(const Monomial& m, const BigInt& coefficient);

/// Dense matrix of polynomials, row-major.
class PolynomialMatrix {
public:
    explicit PolynomialMatrix(std::size_t n = 0) : PolynomialMatrix(n, n) {}
    PolynomialMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Polynomial& operator()(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
    const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }

    PolynomialMatrix transposed() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Polynomial> entries_;
};

inline constexpr std::size_t default_determinant_cap = 16;

/// Exact expanded determinant via Laplace expansion with a dynamic program over column
/// subsets (2^n states). Throws std::invalid_argument for non-square input and
/// DeterminantTooLarge when n exceeds `max_dimension`.
Polynomial determinant(const PolynomialMatrix& m, std::size_t max_dimension = default_determinant_cap);

} // namespace crn::symbolic
