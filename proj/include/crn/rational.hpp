#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace crn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix of exact rationals.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Basis of { x : m x = 0 } for an r x cols matrix, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m, std::size_t cols);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Inverse of to_string; also accepts decimals like "0.25". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

} // namespace crn
