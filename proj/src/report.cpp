#include "crn/errors.hpp"
#include "crn/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

namespace crn::report {

namespace {

json vector_json(const numeric::Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

std::vector<std::string> species_names(const ReactionNetwork& net) {
    std::vector<std::string> out;
    for (const auto& s : net.species()) out.push_back(s.name);
    return out;
}

json census_summary_json(const SignSummary& s) {
    return {{"anomalous", s.anomalous_count()},
            {"unknown_sign_terms", s.unknown_sign_terms},
            {"certified", s.certified()}};
}

} // namespace

std::string network_hash(const ReactionNetwork& net) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize(net)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json census_json(const Census& census, const ReactionNetwork& input) {
    const auto namer = make_namer(census.network);
    const auto& s = census.summary;
    json histogram = json::object();
    for (const auto& [key, count] : s.histogram) histogram[key.str()] = count;
    json anomalous = json::array();
    for (const auto& a : s.anomalous)
        anomalous.push_back({{"term", a.term.as_polynomial().to_string(namer)},
                             {"concentration_monomial", Polynomial(a.concentration_part, 1).to_string(namer)}});
    json dominance = json::array();
    for (const auto& d : census.dominance) dominance.push_back({{"inequality", d.inequality(namer)}, {"covered", d.covered}});
    return {{"network_hash", network_hash(input)},
            {"n", s.n},
            {"reference_sign", s.reference_sign},
            {"total_terms", s.total_terms},
            {"histogram", histogram},
            {"anomalous", anomalous},
            {"dominance_conditions", dominance},
            {"unknown_sign_terms", s.unknown_sign_terms}};
}

json conservation_json(const ReactionNetwork& net, const std::optional<MassVector>& mass,
                       const std::optional<MassVerdict>& candidate) {
    json out = {{"network_hash", network_hash(net)}, {"species", species_names(net)}, {"conservative", mass.has_value()}};
    if (mass) {
        json entries = json::array();
        for (const auto& q : mass->entries) entries.push_back(to_string(q));
        out["mass_vector"] = entries;
    } else {
        out["mass_vector"] = nullptr;
    }
    if (candidate) out["verdict_for_candidate"] = to_string(*candidate);
    return out;
}

bool CountRun::clean() const {
    return report.count() == 1 && audit.clean() && report.homotopy_match.has_value();
}

CountRun run_count(const ReactionNetwork& input, const CountConfig& config) {
    const bool flow_only = std::all_of(input.reactions().begin(), input.reactions().end(),
                                       [](const Reaction& r) { return flow_kind(r) != FlowKind::none; });
    const std::size_t n = input.species_count();
    const auto fs = input.has_flows()
                        ? numeric::flow_system(input, config.rates)
                        : numeric::flow_system(input, config.flows ? *config.flows : FlowAugmentation::uniform(n),
                                               config.rates);
    const auto& flows = fs.flows();

    std::vector<Rational> mass;
    if (config.mass) {
        mass = *config.mass;
        if (check_mass_vector(input, mass) == MassVerdict::neither)
            throw DomainError("supplied mass vector is neither conserved nor dissipating");
    } else if (flow_only) {
        mass.assign(n, Rational(1));
    } else {
        const auto m = conserved_mass_vector(input.has_flows() ? input.without_flows() : input);
        if (!m) throw NetworkError("network is not conservative; supply a dissipating mass vector");
        mass = m->entries;
    }
    MassVector mv{mass};
    const auto m = mv.as_doubles();

    const double bound = numeric::default_bound(m, flows, config.domain_multiplier);
    const auto domain = numeric::make_domain(m, flows, bound);

    CountRun run;
    run.source = network_hash(input);
    run.species = species_names(input);
    run.reference_sign = n % 2 == 0 ? 1 : -1;
    json mjson = json::array();
    for (const auto& q : mass) mjson.push_back(to_string(q));
    run.domain = {{"kind", "bounded"}, {"m", mjson}, {"M", bound}, {"outflow", flows.outflow}, {"inflow", flows.inflow}};

    run.audit = numeric::boundary_audit(fs, domain, config.audit_samples, config.count.seed);
    run.report = numeric::count_equilibria(fs.at(1.0), domain, config.count);
    auto path = numeric::track_homotopy(fs, domain, config.homotopy);
    if (path.completed) run.report.homotopy_match = numeric::match_equilibrium(run.report, path.endpoint, 1e-6);
    run.report.homotopy = std::move(path);

    try {
        run.census = run_census(input).summary;
    } catch (const Error&) {
        // census is informative only; general kinetics or oversize networks skip it
    }
    return run;
}

CountRun run_count_fixture(const std::string& name, const std::map<std::string, double>& parameters,
                           const numeric::CountOptions& count, std::size_t audit_samples,
                           const numeric::HomotopyOptions& homotopy) {
    const auto inst = numeric::make_numeric_fixture(name, parameters);
    CountRun run;
    run.source = name;
    for (std::size_t i = 0; i < inst.system.dimension; ++i) run.species.push_back("c" + std::to_string(i + 1));
    run.reference_sign = inst.system.dimension % 2 == 0 ? 1 : -1;
    run.domain = {{"kind", "box"}, {"lower", inst.domain->lower()}, {"upper", inst.domain->upper()},
                  {"parameters", inst.parameters}};
    run.audit = numeric::boundary_audit(inst.system, *inst.domain, audit_samples, count.seed);
    run.report = numeric::count_equilibria(inst.system, *inst.domain, count);
    if (inst.homotopy && inst.homotopy_start) {
        auto path = numeric::track_path(*inst.homotopy, *inst.homotopy_start,
                                        [&](const numeric::Vector& c) { return inst.domain->contains_closure(c); },
                                        homotopy);
        if (path.completed) run.report.homotopy_match = numeric::match_equilibrium(run.report, path.endpoint, 1e-6);
        run.report.homotopy = std::move(path);
    }
    return run;
}

json count_json(const CountRun& run) {
    const auto& r = run.report;
    json equilibria = json::array();
    for (const auto& e : r.equilibria)
        equilibria.push_back({{"c", vector_json(e.point)}, {"residual", e.residual}, {"det_sign", e.det_sign}});
    json out = {{"source", run.source},
                {"species", run.species},
                {"domain", run.domain},
                {"count", r.count()},
                {"equilibria", equilibria},
                {"degree_estimate", r.degree_estimate},
                {"reference_sign", run.reference_sign},
                {"starts", r.starts},
                {"converged_starts", r.converged_starts},
                {"residual_tolerance", r.residual_tolerance},
                {"dedup_radius", r.dedup_radius},
                {"seed", r.seed}};
    if (r.homotopy) {
        const auto& h = *r.homotopy;
        out["homotopy"] = {{"endpoint", vector_json(h.endpoint)},
                           {"steps", h.steps()},
                           {"completed", h.completed},
                           {"stalled", h.stalled},
                           {"left_domain", h.left_domain},
                           {"last_lambda", h.last_lambda},
                           {"matches", r.homotopy_match ? json(*r.homotopy_match) : json(nullptr)},
                           {"message", h.message}};
    } else {
        out["homotopy"] = nullptr;
    }
    json witnesses = json::array();
    for (const auto& w : run.audit.witnesses)
        witnesses.push_back({{"where", w.where}, {"point", vector_json(w.point)}, {"lambda", w.lambda},
                             {"coordinate", w.coordinate}, {"value", w.value}});
    out["boundary_audit"] = {{"side_violations", run.audit.side_violations},
                             {"outer_violations", run.audit.outer_violations},
                             {"samples", run.audit.samples},
                             {"witnesses", witnesses}};
    out["census"] = run.census ? census_summary_json(*run.census) : json(nullptr);
    out["clean"] = run.clean();
    return out;
}

} // namespace crn::report
