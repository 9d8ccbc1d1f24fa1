#include "crn/conservation.hpp"
#include "crn/fixtures.hpp"
#include "crn/jacobian.hpp"
#include "crn/mapk.hpp"
#include "crn/numeric.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace crn;
using namespace crn::numeric;

namespace {

using Clock = std::chrono::steady_clock;

ReactionNetwork fixture(const std::string& name) { return parse_network(fixtures::network_fixture(name).text); }

Polynomial conc(const ReactionNetwork& net, const char* s) {
    return Polynomial(Indeterminate::concentration(*net.find_species(s)));
}
Polynomial rate(const ReactionNetwork& net, const char* label) {
    return Polynomial(Indeterminate::rate_constant(*net.find_reaction(label)));
}
Polynomial partial(const ReactionNetwork& net, const char* label, const char* s) {
    return Polynomial(Indeterminate::kinetic_partial(*net.find_reaction(label), *net.find_species(s), Sign::positive));
}

std::vector<Rational> by_name(const ReactionNetwork& net, const std::vector<std::pair<const char*, int>>& m) {
    std::vector<Rational> out(net.species_count());
    for (const auto& [name, v] : m) out[*net.find_species(name)] = v;
    return out;
}

int reference_sign(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

std::map<std::string, double> draw_parameters(std::mt19937_64& rng, const std::string& name) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::map<std::string, double> out;
    for (const auto& f : numeric_fixtures())
        if (f.name == name)
            for (const auto& p : f.parameters) out[p] = std::pow(10.0, u(rng));
    return out;
}

BoundedDomain default_domain(const ReactionNetwork& net, const FlowAugmentation& flows) {
    const auto m = conserved_mass_vector(net)->as_doubles();
    return make_domain(m, flows, default_bound(m, flows));
}

/// Runs passing the boundary audit, for the degree identity.
struct DegreeLedger {
    std::size_t audited = 0;
    std::size_t mismatches = 0;

    void add(bool clean_audit, int degree, int reference) {
        if (!clean_audit) return;
        ++audited;
        if (degree != reference) ++mismatches;
    }
};

DegreeLedger degree_ledger;
int failures = 0;

void criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
    const auto start = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        std::tie(ok, detail) = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (!ok) ++failures;
    std::ostringstream time;
    time.precision(3);
    time << seconds;
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " (" << detail << "; " << time.str() << " s)"
              << std::endl;
}

std::string join(const std::vector<std::size_t>& xs) {
    std::string out;
    for (auto x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
}

} // namespace

int main() {
    criterion(1, [] {
        const auto start = Clock::now();
        std::vector<std::size_t> counts;
        for (const auto& name : fixtures::table1_names()) counts.push_back(run_census(fixture(name)).summary.anomalous_count());
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        const std::vector<std::size_t> expected{1, 0, 1, 0, 1, 1, 1, 1};
        return std::pair{counts == expected && seconds < 10.0, "anomalous counts " + join(counts)};
    });

    criterion(2, [] {
        const auto census = run_census(fixture("cf-irreversible"));
        const auto& net = census.network;
        const auto kp = rate(net, "A+B->P"), kq = rate(net, "B+C->Q"), k2 = rate(net, "C->2A");
        const auto ca = conc(net, "A"), cb = conc(net, "B"), cc = conc(net, "C");
        const Polynomial expected = Polynomial(-1) - kp * ca - kq * cc - kq * cb - kq * kp * ca * cb - k2 -
                                    k2 * kp * ca - k2 * kq * cc - kp * cb - kp * k2 * cb - kp * kq * cb * cb -
                                    kp * kq * cb * cc + kp * kq * k2 * cb * cc;
        const std::multiset<std::pair<Monomial, BigInt>> got(census.determinant.terms().begin(),
                                                             census.determinant.terms().end());
        const std::multiset<std::pair<Monomial, BigInt>> want(expected.terms().begin(), expected.terms().end());
        const bool one_positive = census.summary.anomalous_count() == 1 &&
                                  census.summary.anomalous[0].term.as_polynomial() == kp * kq * k2 * cb * cc;
        const bool dominance = census.dominance.size() == 1 && census.dominance[0].lhs == k2 &&
                               census.dominance[0].rhs == Polynomial(1);
        const auto namer = make_namer(net);
        return std::pair{got == want && one_positive && dominance,
                         std::to_string(census.determinant.term_count()) + " terms, condition " +
                             (census.dominance.empty() ? "none" : census.dominance[0].inequality(namer))};
    });

    criterion(3, [] {
        const auto census = run_census(fixture("table1-ii"), {KineticsMode::general});
        const std::map<BigInt, std::size_t> expected{{BigInt(-3), 2}, {BigInt(-2), 40}, {BigInt(-1), 96}};
        const auto& s = census.summary;
        return std::pair{s.total_terms == 138 && s.histogram == expected && s.anomalous_count() == 0,
                         std::to_string(s.total_terms) + " terms, " + std::to_string(s.anomalous_count()) + " positive"};
    });

    criterion(4, [] {
        const auto census = run_census(fixture("table1-v"), {KineticsMode::general});
        const auto& net = census.network;
        const auto& s = census.summary;
        const std::map<BigInt, std::size_t> expected{{BigInt(-2), 20}, {BigInt(-1), 146}, {BigInt(1), 1}};
        const auto term = partial(net, "B->C+D", "B") * partial(net, "D->C+E", "D") * partial(net, "A+C->G", "C") *
                          partial(net, "A+B->F", "A");
        const bool positive = s.anomalous_count() == 1 && s.anomalous[0].term.as_polynomial() == term;
        bool dominance = false;
        for (const auto& d : census.dominance)
            dominance = dominance || (d.lhs == partial(net, "B->C+D", "B") && d.rhs == Polynomial(1));
        return std::pair{s.total_terms == 167 && s.histogram == expected && positive && dominance,
                         std::to_string(s.total_terms) + " terms, " + std::to_string(s.anomalous_count()) + " positive"};
    });

    criterion(5, [] {
        const auto start = Clock::now();
        const auto four = run_census(fixture("enzyme-inhibition")).summary.anomalous_count();
        const auto six_census = run_census(fixture("two-substrate"));
        const auto six = six_census.summary.anomalous_count();
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return std::pair{four == 1 && six == 2 && six_census.summary.n == 7 && seconds < 120.0,
                         "anomalous " + std::to_string(four) + " and " + std::to_string(six)};
    });

    criterion(6, [] {
        const auto cf = fixture("cf-irreversible");
        const auto ii = fixture("table1-ii");
        const auto v = fixture("table1-v");
        bool ok = check_mass_vector(cf, by_name(cf, {{"A", 1}, {"B", 1}, {"C", 2}, {"P", 2}, {"Q", 3}})) ==
                      MassVerdict::conserved &&
                  check_mass_vector(ii, by_name(ii, {{"A", 1}, {"B", 1}, {"C", 1}, {"D", 2}, {"P", 2}, {"Q", 2}, {"R", 3}})) ==
                      MassVerdict::conserved &&
                  check_mass_vector(v, by_name(v, {{"A", 1}, {"B", 3}, {"C", 1}, {"D", 2}, {"E", 1}, {"F", 4}, {"G", 2}})) ==
                      MassVerdict::conserved;
        for (const auto* net : {&cf, &ii, &v}) {
            const auto m = conserved_mass_vector(*net);
            ok = ok && m && check_mass_vector(*net, m->entries) == MassVerdict::conserved;
            if (m)
                for (const auto& q : m->entries) ok = ok && q >= 1;
        }
        return std::pair{ok, "reference vectors conserved, computed vectors valid"};
    });

    criterion(7, [] {
        bool ok = true;
        for (double c0 : {0.1, 0.5, 1.0, 2.0}) {
            ThronParameters p;
            p.c0 = c0;
            const auto r = newton_solve(thron_system(p), Vector::Constant(3, 1.0));
            ok = ok && r.converged() && (r.x - thron_reference_equilibrium(c0)).cwiseAbs().maxCoeff() <= 1e-9;
        }
        std::mt19937_64 rng(2024);
        std::size_t unique = 0;
        for (int t = 0; t < 50; ++t) {
            const auto inst = make_numeric_fixture("mapk-thron", draw_parameters(rng, "mapk-thron"));
            CountOptions opts;
            opts.starts = 200;
            const auto report = count_equilibria(inst.system, *inst.domain, opts);
            if (report.count() == 1) ++unique;
            const bool clean = boundary_audit(inst.system, *inst.domain, 60, static_cast<std::uint64_t>(t)).clean();
            degree_ledger.add(clean, report.degree_estimate, -1);
        }
        return std::pair{ok && unique == 50, "reference points within 1e-9, " + std::to_string(unique) + "/50 unique"};
    });

    criterion(8, [] {
        std::mt19937_64 rng(2025);
        std::size_t unique = 0, near_boundary = 0;
        for (int t = 0; t < 50; ++t) {
            const auto inst = make_numeric_fixture("mapk-cube", draw_parameters(rng, "mapk-cube"));
            const auto report = count_equilibria(inst.system, *inst.domain, {});
            if (report.count() == 1) ++unique;
            for (const auto& e : report.equilibria)
                if (inst.domain->boundary_distance(e.point) <= 1e-8) ++near_boundary;
            const auto audit = boundary_audit(inst.system, *inst.domain, 300, static_cast<std::uint64_t>(t));
            near_boundary += audit.side_violations + audit.outer_violations;
            degree_ledger.add(audit.clean(), report.degree_estimate, -1);
        }
        return std::pair{unique == 50 && near_boundary == 0,
                         std::to_string(unique) + "/50 unique, " + std::to_string(near_boundary) + " near the boundary"};
    });

    criterion(9, [] {
        const auto net = fixture("cf-irreversible");
        const auto flows = FlowAugmentation::uniform(5);
        const auto domain = default_domain(net, flows);
        std::mt19937_64 rng(2026);
        std::uniform_real_distribution<double> u(-1.0, 1.0), small(0.01, 1.0);
        std::size_t unique = 0;
        for (int t = 0; t < 20; ++t) {
            RateBindings rates{{"A+B->P", std::pow(10.0, u(rng))}, {"B+C->Q", std::pow(10.0, u(rng))}, {"C->2A", small(rng)}};
            const auto fs = flow_system(net, flows, rates);
            const bool clean = boundary_audit(fs, domain, 500, static_cast<std::uint64_t>(t)).clean();
            for (std::uint64_t seed : {0u, 1u, 2u}) {
                CountOptions opts;
                opts.seed = seed;
                const auto report = count_equilibria(fs.at(1.0), domain, opts);
                if (report.count() == 1) ++unique;
                degree_ledger.add(clean, report.degree_estimate, -1);
            }
        }
        // certified networks under random rates
        for (const auto& f : fixtures::network_fixtures()) {
            const auto core = parse_network(f.text);
            if (!run_census(core).summary.certified() || !conserved_mass_vector(core)) continue;
            const auto fl = FlowAugmentation::uniform(core.species_count());
            const auto dom = default_domain(core, fl);
            for (int t = 0; t < 5; ++t) {
                const auto fs = flow_system(core, fl, log_uniform_sampler(-1.0, 1.0)(rng, core));
                const bool clean = boundary_audit(fs, dom, 300, static_cast<std::uint64_t>(t)).clean();
                degree_ledger.add(clean, count_equilibria(fs.at(1.0), dom, {}).degree_estimate,
                                  reference_sign(core.species_count()));
            }
        }
        const bool ok = unique == 60 && degree_ledger.mismatches == 0 && degree_ledger.audited > 0;
        return std::pair{ok, std::to_string(unique) + "/60 unique for k(C->2A) <= 1, " +
                                 std::to_string(degree_ledger.audited - degree_ledger.mismatches) + "/" +
                                 std::to_string(degree_ledger.audited) + " audited runs with degree (-1)^n"};
    });

    criterion(10, [] {
        std::mt19937_64 rng(2027);
        std::size_t runs = 0, matched = 0;
        for (const auto& f : fixtures::network_fixtures()) {
            const auto core = parse_network(f.text);
            if (!run_census(core).summary.certified() || !conserved_mass_vector(core)) continue;
            const auto fl = FlowAugmentation::uniform(core.species_count());
            const auto dom = default_domain(core, fl);
            for (int t = 0; t < 5; ++t) {
                const auto fs = flow_system(core, fl, log_uniform_sampler(-1.0, 1.0)(rng, core));
                CountOptions dense;
                dense.starts = 500;
                const auto report = count_equilibria(fs.at(1.0), dom, dense);
                const auto path = track_homotopy(fs, dom, {});
                ++runs;
                if (report.count() == 1 && path.completed && match_equilibrium(report, path.endpoint, 1e-6)) ++matched;
            }
        }
        for (const char* name : {"mapk-thron", "mapk-cube"}) {
            for (int t = 0; t < 10; ++t) {
                const auto inst = make_numeric_fixture(name, draw_parameters(rng, name));
                const auto report = count_equilibria(inst.system, *inst.domain, {});
                const auto path = track_path(*inst.homotopy, *inst.homotopy_start,
                                             [&](const Vector& c) { return inst.domain->contains_closure(c); }, {});
                ++runs;
                if (report.count() == 1 && path.completed && match_equilibrium(report, path.endpoint, 1e-6)) ++matched;
            }
        }
        return std::pair{runs > 0 && matched == runs, std::to_string(matched) + "/" + std::to_string(runs) + " endpoints matched"};
    });

    criterion(11, [] {
        bool excluded = true;
        for (const auto& f : fixtures::network_fixtures()) excluded = excluded && f.name.find("network-8") == std::string::npos;
        const auto net = fixture("cf-irreversible");
        SearchOptions opts;
        opts.budget = 3000;
        opts.seed = 2;
        opts.count.starts = 100;
        opts.flow_sampler = log_uniform_flow_sampler(-3.0, 3.0);
        const auto w = search_multistationarity(net, FlowAugmentation::uniform(5), opts, log_uniform_sampler(-3.0, 3.0));
        const bool skipped = !search_multistationarity(fixture("table1-ii"), FlowAugmentation::uniform(7)).has_value();
        if (!w) return std::pair{false, std::string("no witness within budget")};
        return std::pair{excluded && skipped && w->degree_identity && w->odd_count,
                         "witness with " + std::to_string(w->report.count()) + " equilibria after " +
                             std::to_string(w->attempts) + " draws, degree " + std::to_string(w->report.degree_estimate)};
    });

    return failures == 0 ? 0 : 1;
}
