#include "crn/polynomial.hpp"

#include "crn/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace crn::symbolic {

Indeterminate Indeterminate::concentration(std::size_t species) {
    return {IndeterminateKind::concentration, static_cast<std::uint32_t>(species), 0, Sign::positive};
}

Indeterminate Indeterminate::rate_constant(std::size_t reaction) {
    return {IndeterminateKind::rate_constant, static_cast<std::uint32_t>(reaction), 0, Sign::positive};
}

Indeterminate Indeterminate::kinetic_partial(std::size_t reaction, std::size_t species, Sign sign) {
    return {IndeterminateKind::kinetic_partial, static_cast<std::uint32_t>(reaction),
            static_cast<std::uint32_t>(species), sign};
}

std::string default_name(const Indeterminate& x) {
    switch (x.kind) {
    case IndeterminateKind::concentration: return "c[" + std::to_string(x.primary) + "]";
    case IndeterminateKind::rate_constant: return "k[" + std::to_string(x.primary) + "]";
    case IndeterminateKind::kinetic_partial:
        return "dK[" + std::to_string(x.primary) + "/" + std::to_string(x.secondary) + "]";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const Indeterminate& x, std::uint32_t power) {
    if (power > 0) factors_.emplace_back(x, power);
}

std::uint32_t Monomial::exponent(const Indeterminate& x) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), x,
                               [](const Factor& f, const Indeterminate& v) { return f.first < v; });
    return (it != factors_.end() && it->first == x) ? it->second : 0;
}

std::uint32_t Monomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& [_, e] : factors_) d += e;
    return d;
}

Sign Monomial::sign() const {
    Sign s = Sign::positive;
    for (const auto& [x, e] : factors_) {
        if (x.sign == Sign::unknown) return Sign::unknown;
        if (x.sign == Sign::negative && (e % 2) == 1) s = s * Sign::negative;
    }
    return s;
}

Monomial Monomial::restricted_to(IndeterminateKind kind) const {
    Monomial out;
    for (const auto& f : factors_)
        if (f.first.kind == kind) out.factors_.push_back(f);
    return out;
}

Monomial Monomial::without(IndeterminateKind kind) const {
    Monomial out;
    for (const auto& f : factors_)
        if (f.first.kind != kind) out.factors_.push_back(f);
    return out;
}

bool Monomial::divides(const Monomial& other) const {
    for (const auto& [x, e] : factors_)
        if (other.exponent(x) < e) return false;
    return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
    Monomial out;
    for (const auto& [x, e] : other.factors_) {
        const auto mine = exponent(x);
        if (mine > e) throw std::invalid_argument("monomial does not divide");
        if (e > mine) out.factors_.emplace_back(x, e - mine);
    }
    return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
            out.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || j->first < i->first) {
            out.factors_.push_back(*j++);
        } else {
            out.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial out;
    for (const auto& [x, e] : a.factors_) {
        const auto other = b.exponent(x);
        if (other > 0) out.factors_.emplace_back(x, std::min(e, other));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long long constant) {
    if (constant != 0) terms_.emplace(Monomial{}, BigInt(constant));
}

Polynomial::Polynomial(const BigInt& constant) {
    if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Polynomial::Polynomial(const Indeterminate& x) { terms_.emplace(Monomial(x), BigInt(1)); }

Polynomial::Polynomial(const Monomial& m, const BigInt& coefficient) {
    if (coefficient != 0) terms_.emplace(m, coefficient);
}

BigInt Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
}

namespace {

void accumulate(Polynomial::Terms& terms, const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

} // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
    return *this;
}

void Polynomial::add_product(const Polynomial& a, const Polynomial& b, const BigInt& scale) {
    if (scale == 0) return;
    for (const auto& [ma, ca] : a.terms_) {
        const BigInt cs = ca * scale;
        for (const auto& [mb, cb] : b.terms_) accumulate(terms_, ma * mb, cs * cb);
    }
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    Polynomial product;
    product.add_product(*this, other);
    *this = std::move(product);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial product;
    product.add_product(a, b);
    return product;
}

Polynomial operator-(const Polynomial& a) {
    Polynomial out = a;
    for (auto& [_, c] : out.terms_) c = -c;
    return out;
}

Polynomial operator*(const BigInt& s, const Polynomial& p) {
    if (s == 0) return {};
    Polynomial out = p;
    for (auto& [_, c] : out.terms_) c *= s;
    return out;
}

Polynomial Polynomial::differentiate(const Indeterminate& x) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        const auto e = m.exponent(x);
        if (e == 0) continue;
        Monomial lowered = Monomial(x, e).quotient_of(m) * Monomial(x, e - 1);
        accumulate(out.terms_, lowered, c * e);
    }
    return out;
}

Polynomial Polynomial::substitute(const Indeterminate& x, const Polynomial& value) const {
    Polynomial out;
    std::vector<Polynomial> powers{Polynomial(1)};
    for (const auto& [m, c] : terms_) {
        const auto e = m.exponent(x);
        if (e == 0) {
            accumulate(out.terms_, m, c);
            continue;
        }
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        const Monomial rest = Monomial(x, e).quotient_of(m);
        out.add_product(Polynomial(rest, c), powers[e]);
    }
    return out;
}

double Polynomial::evaluate(const std::function<double(const Indeterminate&)>& value) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
        double term = c.convert_to<double>();
        for (const auto& [x, e] : m.factors()) term *= std::pow(value(x), static_cast<double>(e));
        total += term;
    }
    return total;
}

std::string Polynomial::to_string(const Namer& namer) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.str();
        for (const auto& [x, e] : m.factors()) {
            out += "*" + namer(x);
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

Sign term_sign(const Monomial& m, const BigInt& coefficient) {
    if (coefficient == 0) return Sign::unknown;
    const Sign s = m.sign();
    if (s == Sign::unknown) return s;
    return s * (coefficient > 0 ? Sign::positive : Sign::negative);
}

// ---------------------------------------------------------------------------
// Matrices

PolynomialMatrix PolynomialMatrix::transposed() const {
    PolynomialMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Polynomial determinant(const PolynomialMatrix& m, std::size_t max_dimension) {
    if (!m.square())
        throw std::invalid_argument("determinant of a non-square " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + " matrix");
    const std::size_t n = m.rows();
    if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
    if (n > max_dimension || n > 30) throw DeterminantTooLarge(n, max_dimension);

    // minors[S] = det of rows 0..|S|-1 restricted to the columns in S.
    const std::size_t states = std::size_t{1} << n;
    std::vector<Polynomial> minors(states);
    minors[0] = Polynomial(1);

    std::vector<std::vector<std::size_t>> layers(n + 1);
    for (std::size_t s = 0; s < states; ++s) layers[std::popcount(s)].push_back(s);

    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t row = k - 1;
        for (std::size_t s : layers[k]) {
            Polynomial acc;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t bit = std::size_t{1} << j;
                if (!(s & bit)) continue;
                const Polynomial& entry = m(row, j);
                const Polynomial& minor = minors[s ^ bit];
                if (entry.is_zero() || minor.is_zero()) continue;
                // sign of the cofactor: (-1)^(number of chosen columns to the right of j)
                const int greater = std::popcount(s >> (j + 1));
                acc.add_product(entry, minor, (greater % 2 == 0) ? BigInt(1) : BigInt(-1));
            }
            minors[s] = std::move(acc);
        }
        for (std::size_t s : layers[k - 1]) minors[s] = Polynomial{};
    }
    return minors[states - 1];
}

} // namespace crn::symbolic
