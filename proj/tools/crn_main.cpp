#include "crn/errors.hpp"
#include "crn/fixtures.hpp"
#include "crn/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace crn;
using report::json;

namespace {

struct Args {
    std::string file;
    std::string fixture;
    std::string kinetics = "mass-action";
    bool symbolic_outflows = false;
    std::string inflow;
    std::string outflow;
    std::vector<std::string> k;
    std::size_t starts = 200;
    std::uint64_t seed = 0;
    double domain_mult = 10.0;
    std::string json_path;
    std::string candidate;
    std::string mass;
    std::size_t audit_samples = 2000;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError("not a number: '" + s + "'");
    return v;
}

/// "v" broadcasts; "x,y,.." must have one entry per species.
std::vector<double> flow_values(const std::string& text, std::size_t n, const char* what) {
    if (text.empty()) return std::vector<double>(n, 1.0);
    const auto parts = split(text, ',');
    if (parts.size() == 1) return std::vector<double>(n, parse_double(parts[0]));
    if (parts.size() != n)
        throw DomainError(std::string(what) + " needs 1 or " + std::to_string(n) + " values, got " +
                          std::to_string(parts.size()));
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(parse_double(p));
    return out;
}

std::vector<Rational> rationals(const std::string& text) {
    std::vector<Rational> out;
    for (const auto& p : split(text, ',')) {
        try {
            out.push_back(parse_rational(p));
        } catch (const std::invalid_argument&) {
            throw DomainError("not a rational: '" + p + "'");
        }
    }
    return out;
}

std::map<std::string, double> bindings(const std::vector<std::string>& ks) {
    std::map<std::string, double> out;
    for (const auto& kv : ks) {
        const auto eq = kv.rfind('=');
        if (eq == std::string::npos || eq == 0) throw DomainError("--k expects name=value, got '" + kv + "'");
        std::string name = kv.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
        out[name] = parse_double(kv.substr(eq + 1));
    }
    return out;
}

ReactionNetwork load_network(const Args& a) {
    if (!a.fixture.empty()) {
        try {
            return parse_network(fixtures::network_fixture(a.fixture).text);
        } catch (const std::out_of_range& e) {
            throw DomainError(e.what());
        }
    }
    if (a.file.empty()) throw DomainError("give a network file or --fixture NAME");
    std::ifstream in(a.file);
    if (!in) throw DomainError("cannot read " + a.file);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_network(ss.str());
}

std::size_t determinant_cap() {
    if (const char* env = std::getenv("CRN_MAX_SPECIES")) {
        const double v = parse_double(env);
        if (!(v >= 1) || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw DomainError("CRN_MAX_SPECIES must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return symbolic::default_determinant_cap;
}

void emit(const json& j, const Args& a) {
    const auto text = j.dump(2);
    std::cout << text << '\n';
    if (!a.json_path.empty()) {
        std::ofstream out(a.json_path);
        if (!out) throw DomainError("cannot write " + a.json_path);
        out << text << '\n';
    }
}

int cmd_census(const Args& a) {
    const auto input = load_network(a);
    auto net = input;
    CensusOptions opts;
    if (a.kinetics == "general") {
        opts.kinetics = KineticsMode::general;
        net = with_general_kinetics(net);
    }
    opts.outflows = a.symbolic_outflows ? OutflowMode::symbolic : OutflowMode::unit;
    opts.max_dimension = determinant_cap();
    const auto census = run_census(net, opts);
    auto j = report::census_json(census, input);
    j["kinetics"] = a.kinetics;
    emit(j, a);
    return census.summary.certified() ? 0 : 2;
}

int cmd_conserve(const Args& a) {
    const auto net = load_network(a);
    const auto mass = conserved_mass_vector(net);
    std::optional<MassVerdict> verdict;
    if (!a.candidate.empty()) verdict = check_mass_vector(net, rationals(a.candidate));
    emit(report::conservation_json(net, mass, verdict), a);
    return mass ? 0 : 2;
}

int cmd_count(const Args& a) {
    numeric::CountOptions count;
    count.starts = a.starts;
    count.seed = a.seed;
    report::CountRun run;
    if (!a.fixture.empty() && numeric::is_numeric_fixture(a.fixture)) {
        run = report::run_count_fixture(a.fixture, bindings(a.k), count);
    } else {
        const auto net = load_network(a);
        report::CountConfig config;
        const auto n = net.species_count();
        if (!net.has_flows())
            config.flows = FlowAugmentation{flow_values(a.inflow, n, "--inflow"), flow_values(a.outflow, n, "--outflow")};
        for (const auto& [name, v] : bindings(a.k)) config.rates[name] = v;
        config.count = count;
        config.domain_multiplier = a.domain_mult;
        config.audit_samples = a.audit_samples;
        if (!a.mass.empty()) config.mass = rationals(a.mass);
        run = report::run_count(net, config);
    }
    emit(report::count_json(run), a);
    return run.clean() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reaction network census, conservation and equilibrium counting"};
    app.require_subcommand(1);
    Args a;

    auto add_input = [&a](CLI::App* sub) {
        sub->add_option("file", a.file, "network file");
        sub->add_option("--fixture", a.fixture, "built-in fixture name");
        sub->add_option("--json", a.json_path, "also write the report here");
    };
    auto* census = app.add_subcommand("census", "sign census of the augmented Jacobian determinant");
    add_input(census);
    census->add_option("--kinetics", a.kinetics)->check(CLI::IsMember({"mass-action", "general"}));
    census->add_flag("--symbolic-outflows", a.symbolic_outflows, "keep outflow constants symbolic");

    auto* conserve = app.add_subcommand("conserve", "conserved mass vector");
    add_input(conserve);
    conserve->add_option("--candidate", a.candidate, "comma-separated candidate mass vector");

    auto* count = app.add_subcommand("count", "count equilibria in the bounded domain");
    add_input(count);
    count->add_option("--kinetics", a.kinetics)->check(CLI::IsMember({"mass-action"}));
    count->add_option("--inflow", a.inflow, "scalar or comma-separated c_in");
    count->add_option("--outflow", a.outflow, "scalar or comma-separated outflow constants");
    count->add_option("--k", a.k, "rate constant binding label=value; '*=v' sets the default")->allow_extra_args(false);
    count->add_option("--starts", a.starts)->check(CLI::PositiveNumber);
    count->add_option("--seed", a.seed);
    count->add_option("--domain-mult", a.domain_mult)->check(CLI::Range(1.0, 1e12));
    count->add_option("--mass", a.mass, "comma-separated conserved or dissipating mass vector");
    count->add_option("--audit-samples", a.audit_samples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (census->parsed()) return cmd_census(a);
        if (conserve->parsed()) return cmd_conserve(a);
        return cmd_count(a);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}
