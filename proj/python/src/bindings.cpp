#include "crn/errors.hpp"
#include "crn/fixtures.hpp"
#include "crn/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace crn;

namespace {

ReactionNetwork resolve(const std::string& text, const std::string& fixture) {
    if (!fixture.empty()) return parse_network(fixtures::network_fixture(fixture).text);
    return parse_network(text);
}

std::string census(const std::string& text, const std::string& fixture, const std::string& kinetics,
                   bool symbolic_outflows, std::size_t max_dimension) {
    const auto input = resolve(text, fixture);
    auto net = input;
    CensusOptions opts;
    if (kinetics == "general") {
        opts.kinetics = KineticsMode::general;
        net = with_general_kinetics(net);
    } else if (kinetics != "mass-action") {
        throw DomainError("kinetics must be 'mass-action' or 'general'");
    }
    opts.outflows = symbolic_outflows ? OutflowMode::symbolic : OutflowMode::unit;
    opts.max_dimension = max_dimension;
    auto j = report::census_json(run_census(net, opts), input);
    j["kinetics"] = kinetics;
    return j.dump();
}

std::string conserve(const std::string& text, const std::string& fixture,
                     const std::optional<std::vector<std::string>>& candidate) {
    const auto net = resolve(text, fixture);
    std::optional<MassVerdict> verdict;
    if (candidate) {
        std::vector<Rational> m;
        for (const auto& q : *candidate) m.push_back(parse_rational(q));
        verdict = check_mass_vector(net, m);
    }
    return report::conservation_json(net, conserved_mass_vector(net), verdict).dump();
}

std::string count(const std::string& text, const std::string& fixture, const std::map<std::string, double>& rates,
                  const std::optional<std::vector<double>>& inflow, const std::optional<std::vector<double>>& outflow,
                  std::size_t starts, std::uint64_t seed, double domain_mult,
                  const std::optional<std::vector<std::string>>& mass, std::size_t audit_samples) {
    numeric::CountOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    if (!fixture.empty() && numeric::is_numeric_fixture(fixture))
        return report::count_json(report::run_count_fixture(fixture, rates, opts, audit_samples)).dump();
    const auto net = resolve(text, fixture);
    report::CountConfig config;
    if (!net.has_flows()) {
        const auto n = net.species_count();
        config.flows = FlowAugmentation{inflow ? *inflow : std::vector<double>(n, 1.0),
                                        outflow ? *outflow : std::vector<double>(n, 1.0)};
    }
    for (const auto& [k, v] : rates) config.rates[k] = v;
    config.count = opts;
    config.domain_multiplier = domain_mult;
    config.audit_samples = audit_samples;
    if (mass) {
        std::vector<Rational> m;
        for (const auto& q : *mass) m.push_back(parse_rational(q));
        config.mass = m;
    }
    return report::count_json(report::run_count(net, config)).dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "reaction network census, conservation and equilibrium counting";

    const auto base = py::register_exception<Error>(m, "CrnError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    m.def("network_fixtures", [] {
        std::vector<std::string> names;
        for (const auto& f : fixtures::network_fixtures()) names.push_back(f.name);
        return names;
    });
    m.def("numeric_fixtures", [] {
        std::vector<std::string> names;
        for (const auto& f : numeric::numeric_fixtures()) names.push_back(f.name);
        return names;
    });
    m.def("fixture_text", [](const std::string& name) { return fixtures::network_fixture(name).text; });
    m.def("species", [](const std::string& text, const std::string& fixture) {
        const auto net = resolve(text, fixture);
        std::vector<std::string> names;
        for (const auto& sp : net.species()) names.push_back(sp.name);
        return names;
    }, py::arg("text") = "", py::arg("fixture") = "");
    m.def("normalize", [](const std::string& text) { return serialize(parse_network(text)); });
    m.def("network_hash", [](const std::string& text) { return report::network_hash(parse_network(text)); });
    m.def("census_json", &census, py::arg("text") = "", py::arg("fixture") = "", py::arg("kinetics") = "mass-action",
          py::arg("symbolic_outflows") = false, py::arg("max_dimension") = symbolic::default_determinant_cap);
    m.def("conserve_json", &conserve, py::arg("text") = "", py::arg("fixture") = "", py::arg("candidate") = py::none());
    m.def("count_json", &count, py::arg("text") = "", py::arg("fixture") = "",
          py::arg("rates") = std::map<std::string, double>{}, py::arg("inflow") = py::none(),
          py::arg("outflow") = py::none(), py::arg("starts") = 200, py::arg("seed") = 0, py::arg("domain_mult") = 10.0,
          py::arg("mass") = py::none(), py::arg("audit_samples") = 2000);
}
