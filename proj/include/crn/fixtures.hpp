#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace crn::fixtures {

/// A named reaction network shipped with the toolkit, in DSL form.
struct NetworkFixture {
    std::string name;
    std::string description;
    std::string text;
};

/// Every built-in network fixture, in a stable order.
const std::vector<NetworkFixture>& network_fixtures();

/// Throws std::out_of_range listing the known names when `name` is not a network fixture.
const NetworkFixture& network_fixture(std::string_view name);

/// Names of the Table-style reversible networks "table1-i" .. "table1-viii".
std::vector<std::string> table1_names();

} // namespace crn::fixtures
