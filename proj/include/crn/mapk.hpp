#pragma once

#include "crn/numeric.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace crn::numeric {

/// Three-stage feedback loop with rational rates:
///   c1' = p1 c0 / (p2 + c3) - p3 c1
///   c2' = p3 c1 - p4 c2
///   c3' = p4 c2 - p5 c3 / (p6 + c3)
struct ThronParameters {
    std::array<double, 6> p{1, 1, 1, 1, 1, 1};
    double c0 = 1.0;
};

NumericSystem thron_system(const ThronParameters& params);

/// The equilibrium at p = 1: (c0/(1+c0), c0/(1+c0), c0).
Vector thron_reference_equilibrium(double c0);

/// delta = min(1/2 min_j min(q_j, 1/q_j), 0.49) over q = (p1 c0, p2, ..., p6).
double thron_delta(const ThronParameters& params);

/// (0, delta^-4)^3, sampled log-uniformly above 1e-6.
BoxDomain thron_box(const ThronParameters& params);

/// Linear interpolation of the parameters from `from` (lambda = 0) to `to` (lambda = 1).
HomotopyFamily thron_parameter_homotopy(const ThronParameters& from, const ThronParameters& to);

/// Unit-cube cascade with inhibitory feedback:
///   c1' = -b1 c1/(c1+a1) + d1 (1-c1)/(e1+1-c1) * mu/(1+k c3)
///   c2' = -b2 c2/(c2+a2) + d2 (1-c2)/(e2+1-c2) * c1
///   c3' = -b3 c3/(c3+a3) + d3 (1-c3)/(e3+1-c3) * c2
struct CascadeParameters {
    std::array<double, 3> a{1, 1, 1};
    std::array<double, 3> b{1, 1, 1};
    std::array<double, 3> d{1, 1, 1};
    std::array<double, 3> e{1, 1, 1};
    double mu = 1.0;
    double k = 1.0;
};

/// Admissible on the open unit cube.
NumericSystem cascade_system(const CascadeParameters& params);

HomotopyFamily cascade_parameter_homotopy(const CascadeParameters& from, const CascadeParameters& to);

/// A built-in numeric system with its domain and, when one is known, a starting point for
/// a parameter homotopy.
struct NumericFixtureInstance {
    NumericSystem system;
    std::shared_ptr<BoxDomain> domain;
    std::map<std::string, double> parameters;
    /// Family from the reference parameters to the requested ones, and the known zero at lambda = 0.
    std::optional<HomotopyFamily> homotopy;
    std::optional<Vector> homotopy_start;
};

struct NumericFixture {
    std::string name;
    std::string description;
    std::vector<std::string> parameters;
};

/// "mapk-thron" (p1..p6, c0) and "mapk-cube" (a1..a3, b1..b3, d1..d3, e1..e3, mu, k).
const std::vector<NumericFixture>& numeric_fixtures();

bool is_numeric_fixture(const std::string& name);

/// Unbound parameters default to 1; the key "*" sets a common default. Throws DomainError on an
/// unknown parameter name or a non-positive value.
NumericFixtureInstance make_numeric_fixture(const std::string& name, const std::map<std::string, double>& bindings);

} // namespace crn::numeric
