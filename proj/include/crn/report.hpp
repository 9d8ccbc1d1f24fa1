#pragma once

#include "crn/conservation.hpp"
#include "crn/jacobian.hpp"
#include "crn/mapk.hpp"
#include "crn/numeric.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace crn::report {

using json = nlohmann::ordered_json;

/// FNV-1a 64-bit hash of the serialized network, as 16 hex digits.
std::string network_hash(const ReactionNetwork& net);

/// `input` is the network as given (hashed); the census carries its augmented form.
json census_json(const Census& census, const ReactionNetwork& input);

json conservation_json(const ReactionNetwork& net, const std::optional<MassVector>& mass,
                       const std::optional<MassVerdict>& candidate = std::nullopt);

/// Settings for a full numeric run on a network.
struct CountConfig {
    /// Ignored when the network already carries its flow reactions.
    std::optional<FlowAugmentation> flows;
    numeric::RateBindings rates;
    numeric::CountOptions count;
    double domain_multiplier = 10.0;
    /// Replaces the conserved mass vector; must be conserved or dissipating.
    std::optional<std::vector<Rational>> mass;
    std::size_t audit_samples = 2000;
    numeric::HomotopyOptions homotopy;
};

struct CountRun {
    std::string source; ///< network hash or fixture name
    std::vector<std::string> species;
    json domain;
    numeric::EquilibriumReport report;
    numeric::AuditReport audit;
    std::optional<SignSummary> census;
    int reference_sign = 1;

    /// One equilibrium, a clean audit, and a homotopy endpoint that matches it.
    bool clean() const;
};

/// Builds the flow system and Omega_M, then audits, counts and tracks the homotopy.
CountRun run_count(const ReactionNetwork& net, const CountConfig& config);

/// Same for a built-in numeric fixture on its box.
CountRun run_count_fixture(const std::string& name, const std::map<std::string, double>& parameters,
                           const numeric::CountOptions& count, std::size_t audit_samples = 300,
                           const numeric::HomotopyOptions& homotopy = {});

json count_json(const CountRun& run);

} // namespace crn::report
