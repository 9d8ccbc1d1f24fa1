#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace crn {

using SpeciesIndex = std::size_t;

/// Declared sign of a quantity on the open positive orthant.
enum class Sign : int { negative = -1, unknown = 0, positive = 1 };

inline Sign operator*(Sign a, Sign b) {
    return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

struct Species {
    std::string name;
    SpeciesIndex index = 0;

    friend bool operator==(const Species&, const Species&) = default;
};

/// A nonnegative integer combination of species. Zero coefficients are never stored;
/// the empty complex is the zero complex "0".
class Complex {
public:
    Complex() = default;

    /// Adds `coefficient` (>= 1) to the stoichiometry of species `s`.
    void add(SpeciesIndex s, std::uint32_t coefficient);

    std::uint32_t coefficient(SpeciesIndex s) const;
    const std::map<SpeciesIndex, std::uint32_t>& terms() const { return coefficients_; }
    std::vector<SpeciesIndex> support() const;
    bool empty() const { return coefficients_.empty(); }

    /// True for a single species with coefficient one ("A").
    bool is_unit_species() const;

    friend bool operator==(const Complex&, const Complex&) = default;
    friend auto operator<=>(const Complex&, const Complex&) = default;

private:
    std::map<SpeciesIndex, std::uint32_t> coefficients_;
};

/// k_{y->y'} c^y. A missing value means the rate constant stays symbolic.
struct MassAction {
    std::optional<double> rate_constant;
};

enum class Monotonicity { consumptively_increasing, strictly_monotone };

/// Rate and full concentration gradient returned by a user-supplied kinetics evaluator.
struct RateValue {
    double rate = 0.0;
    std::vector<double> gradient;
};

using RateEvaluator = std::function<RateValue(std::span<const double>)>;

/// Kinetics known only through the signs of its partial derivatives.
struct GeneralMonotone {
    /// dependency species -> declared sign of the partial derivative
    std::map<SpeciesIndex, Sign> partial_signs;
    Monotonicity monotonicity = Monotonicity::consumptively_increasing;
    RateEvaluator evaluator;
};

using Kinetics = std::variant<MassAction, GeneralMonotone>;

struct Reaction {
    Complex source;
    Complex target;
    Kinetics kinetics = MassAction{};
};

/// Structural equality: complexes, kinetics variant, constants and declared signs.
bool same_reaction(const Reaction& a, const Reaction& b);

/// Consumptively increasing general kinetics for `source`: one positive partial per reactant.
GeneralMonotone consumptively_increasing(const Complex& source);

enum class FlowKind { none, inflow, outflow };

/// 0 -> A is an inflow of A, A -> 0 an outflow.
FlowKind flow_kind(const Reaction& r);

/// Constant inflow c_in and diagonal linear outflow Lambda_o, one entry per species.
struct FlowAugmentation {
    std::vector<double> inflow;
    std::vector<double> outflow;

    static FlowAugmentation uniform(std::size_t n, double inflow = 1.0, double outflow = 1.0);

    /// Throws DomainError unless both vectors have length n and strictly positive entries.
    void validate(std::size_t n) const;
};

/// A chemical reaction network (species, complexes, reactions). Immutable once built.
class ReactionNetwork {
public:
    /// Validates the structural invariants; throws NetworkError on violation.
    ReactionNetwork(std::vector<std::string> species_names, std::vector<Reaction> reactions);

    std::size_t species_count() const { return species_.size(); }
    std::size_t reaction_count() const { return reactions_.size(); }
    const std::vector<Species>& species() const { return species_; }
    const std::vector<Reaction>& reactions() const { return reactions_; }
    const Reaction& reaction(std::size_t r) const { return reactions_.at(r); }

    std::optional<SpeciesIndex> find_species(std::string_view name) const;

    /// Distinct complexes in first-appearance order.
    std::vector<Complex> complexes() const;

    bool has_flows() const;
    /// Every species has exactly one inflow and one outflow reaction.
    bool fully_augmented() const;

    /// Network with flow reactions removed. Throws if nothing would remain.
    ReactionNetwork without_flows() const;

    /// "2A+B", or "0" for the zero complex.
    std::string complex_label(const Complex& c) const;
    /// "A+B->P"
    std::string reaction_label(std::size_t r) const;

    /// Index of the reaction whose label parses to the same source/target, if any.
    std::optional<std::size_t> find_reaction(std::string_view label) const;

private:
    std::vector<Species> species_;
    std::vector<Reaction> reactions_;
};

bool structurally_equal(const ReactionNetwork& a, const ReactionNetwork& b);

/// Parses the line-oriented network DSL. Throws ParseError with a line number.
ReactionNetwork parse_network(std::string_view text);

/// Renders `net` back to the DSL; reparsing yields a structurally equal network.
std::string serialize(const ReactionNetwork& net);

/// One vector y' - y per reaction, each of length n.
std::vector<std::vector<std::int64_t>> reaction_vectors(const ReactionNetwork& net);

/// Exact rank of the stoichiometric subspace.
std::size_t stoichiometric_rank(const ReactionNetwork& net);

/// Appends 0 -> A_j (rate c_in[j]) and A_j -> 0 (rate Lambda_o[j] c_j) for every species.
ReactionNetwork augment_with_flows(const ReactionNetwork& net, const FlowAugmentation& flows);

/// The augmented network made only of flow reactions.
ReactionNetwork flow_only_network(std::vector<std::string> species_names, const FlowAugmentation& flows);

/// Inflow/outflow vectors read back from a fully augmented network's numeric constants.
FlowAugmentation extract_flows(const ReactionNetwork& net);

/// Same network with every non-flow mass-action reaction replaced by consumptively
/// increasing general kinetics.
ReactionNetwork with_general_kinetics(const ReactionNetwork& net);

} // namespace crn
