#pragma once

#include "crn/rational.hpp"

#include <vector>

namespace crn {

/// minimize cost . x  subject to  A x = b,  x >= 0, over exact rationals.
struct LinearProgram {
    RationalMatrix constraints;
    std::vector<Rational> rhs;
    std::vector<Rational> cost;
};

struct LpSolution {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    std::vector<Rational> x;
    Rational objective = 0;
};

/// Two-phase dense tableau simplex with Bland's rule (terminates on degenerate problems).
LpSolution solve(const LinearProgram& lp);

} // namespace crn
