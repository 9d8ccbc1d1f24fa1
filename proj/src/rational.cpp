#include "crn/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace crn {

std::vector<std::size_t> row_reduce(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        const Rational lead = m[r][c];
        for (auto& v : m[r]) v /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational factor = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(RationalMatrix m) { return row_reduce(m).size(); }

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m, std::size_t cols) {
    RationalMatrix reduced = m;
    const auto pivots = row_reduce(reduced);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t row = 0; row < pivots.size(); ++row) v[pivots[row]] = -reduced[row][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("not a rational number: '" + text + "'"); };
    auto parse_int = [&](const std::string& s) {
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start == s.size()) fail();
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        const BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) fail();
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        const std::string frac = text.substr(dot + 1);
        std::string whole = text.substr(0, dot);
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (frac.empty()) return Rational(parse_int(whole));
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        const bool negative = whole[0] == '-';
        const BigInt digits = parse_int(frac);
        if (digits < 0 || frac[0] == '-' || frac[0] == '+') fail();
        Rational value = Rational(parse_int(whole)) + Rational(digits, scale) * (negative ? -1 : 1);
        return value;
    }
    return Rational(parse_int(text));
}

} // namespace crn
