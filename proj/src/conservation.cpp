#include "crn/conservation.hpp"

#include "crn/errors.hpp"
#include "crn/simplex.hpp"

namespace crn {

std::vector<double> MassVector::as_doubles() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& q : entries) out.push_back(q.convert_to<double>());
    return out;
}

std::string to_string(MassVerdict v) {
    switch (v) {
    case MassVerdict::conserved: return "conserved";
    case MassVerdict::dissipating: return "dissipating";
    case MassVerdict::neither: return "neither";
    }
    return "neither";
}

namespace {

RationalMatrix stoichiometric_rows(const ReactionNetwork& net) {
    RationalMatrix rows;
    const auto vectors = reaction_vectors(net);
    for (std::size_t r = 0; r < net.reaction_count(); ++r) {
        if (flow_kind(net.reaction(r)) != FlowKind::none) continue;
        std::vector<Rational> row;
        for (auto v : vectors[r]) row.emplace_back(v);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Rational> to_coprime_integers(std::vector<Rational> v) {
    BigInt lcm = 1;
    for (const auto& q : v) lcm = boost::multiprecision::lcm(lcm, denominator(q));
    BigInt g = 0;
    for (auto& q : v) {
        q *= lcm;
        g = boost::multiprecision::gcd(g, numerator(q));
    }
    if (g > 1)
        for (auto& q : v) q /= g;
    return v;
}

} // namespace

std::optional<MassVector> conserved_mass_vector(const ReactionNetwork& net) {
    if (net.has_flows())
        throw NetworkError("a network with inflow or outflow reactions cannot be conservative");
    const std::size_t n = net.species_count();
    const auto basis = nullspace(stoichiometric_rows(net), n);
    if (basis.empty()) return std::nullopt;
    const std::size_t d = basis.size();

    // m = N (lp - lm) with lp, lm >= 0;  m_i - s_i = 1;  minimize sum_i m_i
    LinearProgram lp;
    lp.cost.assign(2 * d + n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> row(2 * d + n, Rational(0));
        for (std::size_t k = 0; k < d; ++k) {
            row[k] = basis[k][i];
            row[d + k] = -basis[k][i];
            lp.cost[k] += basis[k][i];
            lp.cost[d + k] -= basis[k][i];
        }
        row[2 * d + i] = -1;
        lp.constraints.push_back(std::move(row));
        lp.rhs.emplace_back(1);
    }
    const auto solution = solve(lp);
    if (solution.status != LpSolution::Status::optimal) return std::nullopt;

    std::vector<Rational> m(n, Rational(0));
    for (std::size_t k = 0; k < d; ++k) {
        const Rational coeff = solution.x[k] - solution.x[d + k];
        for (std::size_t i = 0; i < n; ++i) m[i] += coeff * basis[k][i];
    }
    return MassVector{to_coprime_integers(std::move(m))};
}

MassVerdict check_mass_vector(const ReactionNetwork& net, std::span<const Rational> m) {
    if (m.size() != net.species_count())
        throw DomainError("mass vector has " + std::to_string(m.size()) + " entries, network has " +
                          std::to_string(net.species_count()) + " species");
    for (const auto& q : m)
        if (q <= 0) return MassVerdict::neither;
    bool strict = false;
    for (const auto& row : stoichiometric_rows(net)) {
        Rational dot = 0;
        for (std::size_t i = 0; i < m.size(); ++i) dot += row[i] * m[i];
        if (dot > 0) return MassVerdict::neither;
        if (dot < 0) strict = true;
    }
    return strict ? MassVerdict::dissipating : MassVerdict::conserved;
}

} // namespace crn
