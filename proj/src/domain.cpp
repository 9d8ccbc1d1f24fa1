#include "crn/errors.hpp"
#include "crn/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace crn::numeric {

namespace {

constexpr double closure_slack = 1e-12;
constexpr double interior_floor = 1e-12;

} // namespace

BoundedDomain::BoundedDomain(std::vector<double> mass, std::vector<double> outflow, double bound)
    : mass_(std::move(mass)), outflow_(std::move(outflow)), bound_(bound) {
    if (mass_.size() != outflow_.size() || mass_.empty())
        throw DomainError("mass vector and outflow must have the same nonzero length");
    for (std::size_t i = 0; i < mass_.size(); ++i)
        if (!(mass_[i] > 0.0) || !(outflow_[i] > 0.0))
            throw DomainError("mass vector and outflow entries must be positive");
    if (!(bound_ > 0.0) || !std::isfinite(bound_)) throw DomainError("domain bound M must be positive");
}

double BoundedDomain::weighted_mass(const Vector& c) const {
    double total = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) total += mass_[i] * outflow_[i] * c[i];
    return total;
}

bool BoundedDomain::contains(const Vector& c) const {
    if (static_cast<std::size_t>(c.size()) != dimension() || !c.allFinite()) return false;
    return (c.array() > 0.0).all() && weighted_mass(c) < bound_;
}

bool BoundedDomain::contains_closure(const Vector& c) const {
    if (static_cast<std::size_t>(c.size()) != dimension() || !c.allFinite()) return false;
    const double slack = closure_slack * std::max(1.0, c.cwiseAbs().maxCoeff());
    return (c.array() >= -slack).all() && weighted_mass(c) <= bound_ * (1.0 + closure_slack);
}

Vector BoundedDomain::from_unit(std::span<const double> u) const {
    const std::size_t n = dimension();
    std::vector<double> v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(v.begin(), v.end());
    Vector c(static_cast<Eigen::Index>(n));
    double previous = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // spacing of the sorted sample; the last gap 1 - v[n-1] is the slack variable
        const double x = std::max(v[i] - previous, interior_floor);
        previous = v[i];
        c[i] = x * bound_ / (mass_[i] * outflow_[i]);
    }
    if (!(weighted_mass(c) < bound_)) c *= (1.0 - 1e-9) * bound_ / weighted_mass(c);
    return c;
}

Vector BoundedDomain::outer_point(std::span<const double> u) const {
    const std::size_t n = dimension();
    std::vector<double> v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n - 1));
    std::sort(v.begin(), v.end());
    v.push_back(1.0);
    Vector c(static_cast<Eigen::Index>(n));
    double previous = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = (v[i] - previous) * bound_ / (mass_[i] * outflow_[i]);
        previous = v[i];
    }
    return c;
}

double BoundedDomain::boundary_distance(const Vector& c) const {
    double norm = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) norm += std::pow(mass_[i] * outflow_[i], 2);
    return std::min(c.minCoeff(), (bound_ - weighted_mass(c)) / std::sqrt(norm));
}

double default_bound(std::span<const double> mass, const FlowAugmentation& flows, double multiplier) {
    double dot = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) dot += mass[i] * flows.inflow.at(i);
    return multiplier * dot;
}

BoundedDomain make_domain(std::span<const double> mass, const FlowAugmentation& flows, double bound) {
    flows.validate(mass.size());
    const double dot = default_bound(mass, flows, 1.0);
    if (!(bound > dot)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "domain bound must exceed m.c_in: M = " << bound << " <= m.c_in = " << dot;
        throw DomainError(msg.str());
    }
    return BoundedDomain({mass.begin(), mass.end()}, flows.outflow, bound);
}

BoundedDomain make_domain(const MassVector& mass, const FlowAugmentation& flows, double bound) {
    const auto m = mass.as_doubles();
    return make_domain(std::span<const double>(m), flows, bound);
}

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper, std::optional<double> log_floor)
    : lower_(std::move(lower)), upper_(std::move(upper)), log_floor_(log_floor) {
    if (lower_.size() != upper_.size() || lower_.empty()) throw DomainError("box bounds must have equal nonzero length");
    for (std::size_t i = 0; i < lower_.size(); ++i)
        if (!(upper_[i] > lower_[i])) throw DomainError("box upper bound must exceed the lower bound");
    if (log_floor_)
        for (std::size_t i = 0; i < lower_.size(); ++i)
            if (!(*log_floor_ > lower_[i] && *log_floor_ < upper_[i]))
                throw DomainError("log sampling floor must lie inside the box");
}

bool BoxDomain::contains(const Vector& c) const {
    if (static_cast<std::size_t>(c.size()) != dimension() || !c.allFinite()) return false;
    for (std::size_t i = 0; i < dimension(); ++i)
        if (!(c[i] > lower_[i] && c[i] < upper_[i])) return false;
    return true;
}

bool BoxDomain::contains_closure(const Vector& c) const {
    if (static_cast<std::size_t>(c.size()) != dimension() || !c.allFinite()) return false;
    for (std::size_t i = 0; i < dimension(); ++i) {
        const double slack = closure_slack * (upper_[i] - lower_[i]);
        if (c[i] < lower_[i] - slack || c[i] > upper_[i] + slack) return false;
    }
    return true;
}

Vector BoxDomain::from_unit(std::span<const double> u) const {
    Vector c(static_cast<Eigen::Index>(dimension()));
    for (std::size_t i = 0; i < dimension(); ++i) {
        const double t = std::clamp(u[i], interior_floor, 1.0 - interior_floor);
        if (log_floor_) {
            c[i] = std::exp(std::log(*log_floor_) + t * (std::log(upper_[i]) - std::log(*log_floor_)));
        } else {
            c[i] = lower_[i] + t * (upper_[i] - lower_[i]);
        }
        c[i] = std::min(c[i], upper_[i] - interior_floor * (upper_[i] - lower_[i]));
    }
    return c;
}

double BoxDomain::boundary_distance(const Vector& c) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dimension(); ++i) d = std::min({d, c[i] - lower_[i], upper_[i] - c[i]});
    return d;
}

BoxDomain unit_cube(std::size_t n) { return BoxDomain(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)); }

namespace {

std::vector<unsigned> first_primes(std::size_t count) {
    std::vector<unsigned> primes;
    for (unsigned p = 2; primes.size() < count; ++p) {
        bool prime = true;
        for (unsigned q : primes) {
            if (q * q > p) break;
            if (p % q == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(p);
    }
    return primes;
}

double radical_inverse(std::size_t index, unsigned base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

} // namespace

HaltonSequence::HaltonSequence(std::size_t dimension, std::uint64_t seed)
    : bases_(first_primes(dimension)), shift_(dimension) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift_) s = u(rng);
}

std::vector<double> HaltonSequence::next() {
    ++index_;
    std::vector<double> point(shift_.size());
    for (std::size_t i = 0; i < shift_.size(); ++i) {
        const double v = radical_inverse(index_, bases_[i]) + shift_[i];
        point[i] = v - std::floor(v);
    }
    return point;
}

} // namespace crn::numeric
