#pragma once

#include "crn/network.hpp"
#include "crn/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crn {

/// Strictly positive vector orthogonal to every (non-flow) reaction vector.
struct MassVector {
    std::vector<Rational> entries;

    std::vector<double> as_doubles() const;
};

/// A conserved mass vector, or nullopt when the network is not conservative.
/// The vector minimizes total mass subject to every entry >= 1 and is then rescaled to
/// coprime integers. Throws NetworkError when the network contains flow reactions.
std::optional<MassVector> conserved_mass_vector(const ReactionNetwork& net);

enum class MassVerdict { conserved, dissipating, neither };

std::string to_string(MassVerdict v);

/// Classifies a candidate m against the non-flow reactions: conserved when every
/// m.(y'-y) is zero, dissipating when all are <= 0 and one is < 0. Entries must be
/// positive for either verdict. Throws DomainError on a length mismatch.
MassVerdict check_mass_vector(const ReactionNetwork& net, std::span<const Rational> m);

} // namespace crn
