#include "crn/jacobian.hpp"

#include "crn/errors.hpp"

#include <algorithm>
#include <optional>
#include <boost/multiprecision/cpp_int.hpp>
#include <set>

namespace crn {

using symbolic::IndeterminateKind;

symbolic::Namer make_namer(const ReactionNetwork& net) {
    std::vector<std::string> species;
    for (const auto& s : net.species()) species.push_back(s.name);
    std::vector<std::string> reactions;
    for (std::size_t r = 0; r < net.reaction_count(); ++r) reactions.push_back(net.reaction_label(r));
    return [species = std::move(species), reactions = std::move(reactions)](const Indeterminate& x) -> std::string {
        switch (x.kind) {
        case IndeterminateKind::concentration:
            return x.primary < species.size() ? "c[" + species[x.primary] + "]" : symbolic::default_name(x);
        case IndeterminateKind::rate_constant:
            return x.primary < reactions.size() ? "k[" + reactions[x.primary] + "]" : symbolic::default_name(x);
        case IndeterminateKind::kinetic_partial:
            if (x.primary < reactions.size() && x.secondary < species.size())
                return "K'[" + reactions[x.primary] + ";" + species[x.secondary] + "]";
            return symbolic::default_name(x);
        }
        return symbolic::default_name(x);
    };
}

SymbolicRate build_mass_action_rate(const ReactionNetwork& net, OutflowMode outflows) {
    const std::size_t n = net.species_count();
    SymbolicRate rate{std::vector<Polynomial>(n)};
    const auto vectors = reaction_vectors(net);
    for (std::size_t r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reaction(r);
        if (!std::holds_alternative<MassAction>(rx.kinetics))
            throw KineticsError("reaction " + net.reaction_label(r) + " does not have mass-action kinetics");

        Monomial flux;
        if (!(outflows == OutflowMode::unit && flow_kind(rx) == FlowKind::outflow))
            flux = Monomial(Indeterminate::rate_constant(r));
        for (const auto& [s, coeff] : rx.source.terms())
            flux = flux * Monomial(Indeterminate::concentration(s), coeff);

        for (std::size_t j = 0; j < n; ++j)
            if (vectors[r][j] != 0) rate.entries[j] += Polynomial(flux, BigInt(vectors[r][j]));
    }
    return rate;
}

PolynomialMatrix symbolic_jacobian(const SymbolicRate& rate) {
    const std::size_t n = rate.entries.size();
    PolynomialMatrix jac(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            jac(j, i) = rate.entries[j].differentiate(Indeterminate::concentration(i));
    return jac;
}

PolynomialMatrix build_general_jacobian(const ReactionNetwork& net, OutflowMode outflows) {
    const std::size_t n = net.species_count();
    PolynomialMatrix jac(n);
    const auto vectors = reaction_vectors(net);
    for (std::size_t r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reaction(r);
        const auto kind = flow_kind(rx);
        if (kind == FlowKind::inflow) continue;
        if (kind == FlowKind::outflow && std::holds_alternative<MassAction>(rx.kinetics)) {
            const auto s = rx.source.terms().begin()->first;
            if (outflows == OutflowMode::unit) jac(s, s) -= Polynomial(1);
            else jac(s, s) -= Polynomial(Indeterminate::rate_constant(r));
            continue;
        }
        const auto* general = std::get_if<GeneralMonotone>(&rx.kinetics);
        if (!general)
            throw KineticsError("reaction " + net.reaction_label(r) +
                                " has mass-action kinetics; general analysis needs kinetics=general");
        if (general->partial_signs.empty() && !rx.source.empty())
            throw KineticsError("reaction " + net.reaction_label(r) + " has general kinetics with no dependencies");
        for (const auto& [i, sign] : general->partial_signs) {
            const Polynomial partial(Indeterminate::kinetic_partial(r, i, sign));
            for (std::size_t j = 0; j < n; ++j)
                if (vectors[r][j] != 0) jac(j, i) += BigInt(vectors[r][j]) * partial;
        }
    }
    return jac;
}

SignSummary sign_census(const Polynomial& det, std::size_t n) {
    SignSummary summary;
    summary.n = n;
    summary.reference_sign = (n % 2 == 0) ? 1 : -1;
    summary.total_terms = det.term_count();
    const Sign anomalous_sign = summary.reference_sign == 1 ? Sign::negative : Sign::positive;
    for (const auto& [m, c] : det.terms()) {
        const Sign s = symbolic::term_sign(m, c);
        if (s == Sign::unknown) {
            ++summary.unknown_sign_terms;
            continue;
        }
        const BigInt magnitude = boost::multiprecision::abs(c);
        ++summary.histogram[s == Sign::positive ? magnitude : BigInt(-magnitude)];
        if (s == anomalous_sign)
            summary.anomalous.push_back({Term{m, c}, m.restricted_to(IndeterminateKind::concentration)});
    }
    return summary;
}

std::string DominanceCondition::inequality(const symbolic::Namer& namer) const {
    return lhs.to_string(namer) + " <= " + rhs.to_string(namer);
}

namespace {

/// Builds the condition for one group; `anomalous_sign` identifies which side a term is on.
DominanceCondition make_condition(const std::vector<Term>& group, const Monomial& shared, Sign anomalous_sign,
                                  bool divide_shared) {
    DominanceCondition cond;
    cond.shared = shared;
    bool indeterminate = false;
    for (const auto& t : group) {
        const Sign s = symbolic::term_sign(t.monomial, t.coefficient);
        if (s == Sign::unknown) indeterminate = true;
        else if (s == anomalous_sign) cond.anomalous_terms.push_back(t);
        else cond.matched_terms.push_back(t);
    }

    auto reduced = [&](const Term& t) {
        return divide_shared ? shared.quotient_of(t.monomial)
                             : t.monomial.without(IndeterminateKind::concentration);
    };
    std::optional<Monomial> common;
    for (const auto* side : {&cond.anomalous_terms, &cond.matched_terms})
        for (const auto& t : *side) common = common ? gcd(*common, reduced(t)) : reduced(t);
    if (cond.matched_terms.empty()) common = Monomial{};

    for (const auto& t : cond.anomalous_terms)
        cond.lhs += Polynomial(common->quotient_of(reduced(t)), boost::multiprecision::abs(t.coefficient));
    for (const auto& t : cond.matched_terms)
        cond.rhs += Polynomial(common->quotient_of(reduced(t)), boost::multiprecision::abs(t.coefficient));
    cond.covered = !cond.matched_terms.empty() && !indeterminate;
    return cond;
}

} // namespace

std::vector<DominanceCondition> dominance_conditions(const Polynomial& det, std::size_t n) {
    const SignSummary summary = sign_census(det, n);
    std::vector<DominanceCondition> out;
    if (summary.anomalous.empty()) return out;
    const Sign anomalous_sign = summary.reference_sign == 1 ? Sign::negative : Sign::positive;

    const bool has_concentrations = std::any_of(det.terms().begin(), det.terms().end(), [](const auto& kv) {
        return !kv.first.restricted_to(IndeterminateKind::concentration).is_one();
    });

    if (has_concentrations) {
        std::set<Monomial> done;
        for (const auto& a : summary.anomalous) {
            if (!done.insert(a.concentration_part).second) continue;
            std::vector<Term> group;
            for (const auto& [m, c] : det.terms())
                if (m.restricted_to(IndeterminateKind::concentration) == a.concentration_part)
                    group.push_back(Term{m, c});
            out.push_back(make_condition(group, a.concentration_part, anomalous_sign, false));
        }
        return out;
    }

    for (const auto& a : summary.anomalous) {
        bool any = false;
        for (const auto& [x, e] : a.term.monomial.factors()) {
            const Monomial cofactor = Monomial(x, 1).quotient_of(a.term.monomial);
            std::vector<Term> group;
            for (const auto& [m, c] : det.terms())
                if (cofactor.divides(m)) group.push_back(Term{m, c});
            auto cond = make_condition(group, cofactor, anomalous_sign, true);
            if (cond.matched_terms.empty()) continue;
            out.push_back(std::move(cond));
            any = true;
        }
        if (!any) out.push_back(make_condition({a.term}, a.term.monomial, anomalous_sign, true));
    }
    return out;
}

Census run_census(const ReactionNetwork& net, const CensusOptions& options) {
    ReactionNetwork augmented = net;
    if (!net.has_flows()) {
        augmented = augment_with_flows(net, FlowAugmentation::uniform(net.species_count()));
    } else if (!net.fully_augmented()) {
        throw NetworkError("network has some flow reactions but not one inflow and one outflow per species");
    }
    if (options.kinetics == KineticsMode::general) augmented = with_general_kinetics(augmented);

    const std::size_t n = augmented.species_count();
    if (n > options.max_dimension) throw DeterminantTooLarge(n, options.max_dimension);

    PolynomialMatrix jac = options.kinetics == KineticsMode::general
                               ? build_general_jacobian(augmented, options.outflows)
                               : symbolic_jacobian(build_mass_action_rate(augmented, options.outflows));
    Polynomial det = symbolic::determinant(jac, options.max_dimension);
    SignSummary summary = sign_census(det, n);
    auto dominance = dominance_conditions(det, n);
    return Census{std::move(augmented), std::move(jac), std::move(det), std::move(summary), std::move(dominance)};
}

} // namespace crn
