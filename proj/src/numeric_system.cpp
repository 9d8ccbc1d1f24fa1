#include "crn/errors.hpp"
#include "crn/numeric.hpp"

#include <cmath>

namespace crn::numeric {

bool NumericSystem::is_admissible(const Vector& c) const {
    if (static_cast<std::size_t>(c.size()) != dimension || !c.allFinite()) return false;
    if (admissible) return admissible(c);
    return (c.array() > 0.0).all();
}

std::vector<double> resolve_rate_constants(const ReactionNetwork& net, const RateBindings& bindings) {
    std::vector<double> k(net.reaction_count(), 0.0);
    std::vector<std::optional<double>> bound(net.reaction_count());
    std::optional<double> fallback;
    for (const auto& [label, value] : bindings) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw DomainError("rate constant for '" + label + "' must be positive");
        if (label == "*") {
            fallback = value;
            continue;
        }
        const auto r = net.find_reaction(label);
        if (!r) throw DomainError("no reaction matches '" + label + "'");
        bound[*r] = value;
    }
    for (std::size_t r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reaction(r);
        if (flow_kind(rx) != FlowKind::none) continue;
        const auto* ma = std::get_if<MassAction>(&rx.kinetics);
        if (!ma) continue;
        if (bound[r]) k[r] = *bound[r];
        else if (ma->rate_constant) k[r] = *ma->rate_constant;
        else if (fallback) k[r] = *fallback;
        else throw MissingBinding("no value for rate constant k[" + net.reaction_label(r) + "]");
    }
    return k;
}

namespace {

struct MassActionTerm {
    double k;
    std::vector<std::pair<std::size_t, std::uint32_t>> source;
    std::vector<std::pair<std::size_t, double>> change;
};

struct GeneralTerm {
    RateEvaluator evaluator;
    std::vector<std::pair<std::size_t, double>> change;
};

} // namespace

NumericSystem reaction_system(const ReactionNetwork& net, const RateBindings& bindings) {
    const std::size_t n = net.species_count();
    const auto k = resolve_rate_constants(net, bindings);
    const auto vectors = reaction_vectors(net);

    std::vector<MassActionTerm> mass_action;
    std::vector<GeneralTerm> general;
    for (std::size_t r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reaction(r);
        if (flow_kind(rx) != FlowKind::none) continue;
        std::vector<std::pair<std::size_t, double>> change;
        for (std::size_t j = 0; j < n; ++j)
            if (vectors[r][j] != 0) change.emplace_back(j, static_cast<double>(vectors[r][j]));
        if (std::holds_alternative<MassAction>(rx.kinetics)) {
            mass_action.push_back({k[r], {rx.source.terms().begin(), rx.source.terms().end()}, std::move(change)});
        } else {
            const auto& gm = std::get<GeneralMonotone>(rx.kinetics);
            if (!gm.evaluator)
                throw KineticsError("reaction " + net.reaction_label(r) + " has general kinetics but no evaluator");
            general.push_back({gm.evaluator, std::move(change)});
        }
    }

    NumericSystem sys;
    sys.dimension = n;
    sys.provenance = "network";
    sys.rate = [n, mass_action, general](const Vector& c) {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(n));
        for (const auto& t : mass_action) {
            double rate = t.k;
            for (const auto& [s, y] : t.source) rate *= std::pow(c[s], static_cast<double>(y));
            for (const auto& [j, v] : t.change) out[j] += v * rate;
        }
        for (const auto& t : general) {
            const double rate = t.evaluator({c.data(), n}).rate;
            for (const auto& [j, v] : t.change) out[j] += v * rate;
        }
        return out;
    };
    sys.jacobian = [n, mass_action, general](const Vector& c) {
        Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (const auto& t : mass_action) {
            for (const auto& [i, yi] : t.source) {
                double d = t.k * yi * std::pow(c[i], static_cast<double>(yi) - 1.0);
                for (const auto& [s, y] : t.source)
                    if (s != i) d *= std::pow(c[s], static_cast<double>(y));
                for (const auto& [j, v] : t.change) out(j, i) += v * d;
            }
        }
        for (const auto& t : general) {
            const auto value = t.evaluator({c.data(), n});
            if (value.gradient.size() != n) throw KineticsError("kinetics evaluator returned a gradient of wrong length");
            for (std::size_t i = 0; i < n; ++i)
                for (const auto& [j, v] : t.change) out(j, i) += v * value.gradient[i];
        }
        return out;
    };
    return sys;
}

FlowSystem::FlowSystem(FlowAugmentation flows, NumericSystem reactions)
    : flows_(std::move(flows)), reactions_(std::move(reactions)) {
    flows_.validate(reactions_.dimension);
}

NumericSystem FlowSystem::at(double lambda) const {
    NumericSystem sys;
    sys.dimension = dimension();
    sys.provenance = reactions_.provenance;
    sys.admissible = reactions_.admissible;
    const Vector in = Eigen::Map<const Vector>(flows_.inflow.data(), flows_.inflow.size());
    const Vector out = Eigen::Map<const Vector>(flows_.outflow.data(), flows_.outflow.size());
    const auto g = reactions_.rate;
    const auto dg = reactions_.jacobian;
    sys.rate = [in, out, g, lambda](const Vector& c) -> Vector {
        Vector f = in - out.cwiseProduct(c);
        if (lambda != 0.0) f += lambda * g(c);
        return f;
    };
    sys.jacobian = [out, dg, lambda](const Vector& c) -> Matrix {
        Matrix j = Matrix(out.asDiagonal()) * -1.0;
        if (lambda != 0.0) j += lambda * dg(c);
        return j;
    };
    return sys;
}

Vector FlowSystem::flow_equilibrium() const {
    Vector c(static_cast<Eigen::Index>(dimension()));
    for (std::size_t i = 0; i < dimension(); ++i) c[i] = flows_.inflow[i] / flows_.outflow[i];
    return c;
}

FlowSystem flow_system(const ReactionNetwork& core, const FlowAugmentation& flows, const RateBindings& bindings) {
    if (core.has_flows()) throw NetworkError("network already contains flow reactions");
    return FlowSystem(flows, reaction_system(core, bindings));
}

FlowSystem flow_system(const ReactionNetwork& augmented, const RateBindings& bindings) {
    return FlowSystem(extract_flows(augmented), reaction_system(augmented, bindings));
}

Matrix finite_difference_jacobian(const NumericSystem& sys, const Vector& c) {
    const auto n = static_cast<Eigen::Index>(sys.dimension);
    Matrix out(n, n);
    Vector x = c;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = 1e-6 * (1.0 + std::abs(c[i]));
        x[i] = c[i] + h;
        const Vector up = sys.rate(x);
        x[i] = c[i] - h;
        const Vector down = sys.rate(x);
        x[i] = c[i];
        out.col(i) = (up - down) / (2.0 * h);
    }
    return out;
}

} // namespace crn::numeric
