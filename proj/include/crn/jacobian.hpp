#pragma once

#include "crn/network.hpp"
#include "crn/polynomial.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace crn {

using symbolic::Indeterminate;
using symbolic::Monomial;
using symbolic::Polynomial;
using symbolic::PolynomialMatrix;

/// How outflow constants enter symbolic expressions: as the number 1 or as k[A->0].
enum class OutflowMode { unit, symbolic };

enum class KineticsMode { mass_action, general };

/// Names indeterminates after the network: c[A], k[A+B->P], K'[A+B->P;A].
symbolic::Namer make_namer(const ReactionNetwork& net);

/// Species formation rate with every mass-action constant kept symbolic.
struct SymbolicRate {
    std::vector<Polynomial> entries;
};

/// Entry j is sum_r k_r c^{y_r} (y'_rj - y_rj). Inflows contribute k[0->A]; outflows
/// -k[A->0] c_A, or -c_A under OutflowMode::unit. Throws KineticsError on general kinetics.
SymbolicRate build_mass_action_rate(const ReactionNetwork& net, OutflowMode outflows = OutflowMode::symbolic);

/// Rows are equations, columns concentrations.
PolynomialMatrix symbolic_jacobian(const SymbolicRate& rate);

/// Jacobian in terms of the kinetic partials K'_r(i). Flow reactions must be mass-action;
/// inflows contribute nothing and outflows -1 (unit) or -k[A->0].
PolynomialMatrix build_general_jacobian(const ReactionNetwork& net, OutflowMode outflows = OutflowMode::unit);

/// One term of an expansion.
struct Term {
    Monomial monomial;
    BigInt coefficient;

    Polynomial as_polynomial() const { return Polynomial(monomial, coefficient); }
    friend bool operator==(const Term&, const Term&) = default;
};

struct AnomalousTerm {
    Term term;
    Monomial concentration_part;
};

/// Sign census of a determinant expansion relative to the flow-only degree (-1)^n.
struct SignSummary {
    std::size_t n = 0;
    int reference_sign = 1;
    std::size_t total_terms = 0;
    /// keyed by sign(term) * |coefficient|
    std::map<BigInt, std::size_t> histogram;
    std::vector<AnomalousTerm> anomalous;
    std::size_t unknown_sign_terms = 0;

    std::size_t anomalous_count() const { return anomalous.size(); }
    /// No anomalous and no unknown-sign terms: the determinant is one-signed.
    bool certified() const { return anomalous.empty() && unknown_sign_terms == 0; }
};

SignSummary sign_census(const Polynomial& det, std::size_t n);

/// A sufficient inequality `lhs <= rhs` under which the anomalous terms of a group are
/// absorbed by the opposite-signed terms sharing the same `shared` factor.
struct DominanceCondition {
    std::vector<Term> anomalous_terms;
    std::vector<Term> matched_terms;
    /// Concentration monomial (mass action) or common cofactor (general kinetics).
    Monomial shared;
    Polynomial lhs;
    Polynomial rhs;
    bool covered = false;

    std::string inequality(const symbolic::Namer& namer = symbolic::default_name) const;
};

/// Mass-action expansions group by concentration monomial. Expansions without
/// concentrations group, for each factor x of an anomalous term T, every term divisible
/// by T/x. Common factors are cancelled from both sides.
std::vector<DominanceCondition> dominance_conditions(const Polynomial& det, std::size_t n);

struct CensusOptions {
    KineticsMode kinetics = KineticsMode::mass_action;
    OutflowMode outflows = OutflowMode::unit;
    std::size_t max_dimension = symbolic::default_determinant_cap;
};

/// Everything produced by one census run.
struct Census {
    ReactionNetwork network; ///< the augmented network that was analysed
    PolynomialMatrix jacobian;
    Polynomial determinant;
    SignSummary summary;
    std::vector<DominanceCondition> dominance;
};

/// Augments `net` (unless it is already fully augmented), builds the Jacobian for the
/// requested kinetics, expands its determinant and censuses it.
Census run_census(const ReactionNetwork& net, const CensusOptions& options = {});

} // namespace crn
