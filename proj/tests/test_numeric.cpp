#include "crn/errors.hpp"
#include "crn/fixtures.hpp"
#include "crn/jacobian.hpp"
#include "crn/numeric.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace crn;
using namespace crn::numeric;

namespace {

ReactionNetwork chain() { return parse_network("A -> B\nB -> C\n"); }

ReactionNetwork fixture(const char* name) {
    return std::string(name) == "chain" ? chain() : parse_network(fixtures::network_fixture(name).text);
}

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

RateBindings random_rates(std::mt19937_64& rng, const ReactionNetwork& net, double lo = -1.0, double hi = 1.0) {
    return log_uniform_sampler(lo, hi)(rng, net);
}

Vector random_positive(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector c(static_cast<Eigen::Index>(n));
    for (auto& x : c) x = std::pow(10.0, u(rng));
    return c;
}

double relative_gap(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

struct Setup {
    ReactionNetwork net;
    FlowAugmentation flows;
    std::vector<double> mass;
};

Setup conservative(const char* name) {
    auto net = fixture(name);
    const auto n = net.species_count();
    return {net, FlowAugmentation::uniform(n), conserved_mass_vector(net)->as_doubles()};
}

BoundedDomain default_domain(const Setup& s) { return make_domain(s.mass, s.flows, default_bound(s.mass, s.flows)); }

int reference_sign(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

} // namespace

TEST_CASE("rate constants resolve by label, annotation, then default") {
    const auto net = parse_network("A+B -> P\nP -> A+B ; k=3\nA -> B\n");
    const auto k = resolve_rate_constants(net, {{"*", 2.0}, {"A->B", 5.0}});
    CHECK(k == std::vector<double>{2.0, 3.0, 5.0});
    CHECK(resolve_rate_constants(net, {{"*", 1.0}, {"P->A+B", 7.0}})[1] == 7.0);
    CHECK_THROWS_AS(resolve_rate_constants(net, {}), MissingBinding);
    CHECK_THROWS_AS(resolve_rate_constants(net, {{"*", 1.0}, {"B->A", 1.0}}), DomainError);
    CHECK_THROWS_AS(resolve_rate_constants(net, {{"*", -1.0}}), DomainError);
}

TEST_CASE("mass-action rate of the irreversible network") {
    const auto net = fixture("cf-irreversible");
    const auto sys = reaction_system(net, {{"*", 1.0}, {"C->2A", 0.5}});
    Vector c(5);
    const auto a = *net.find_species("A"), b = *net.find_species("B"), cc = *net.find_species("C");
    const auto p = *net.find_species("P"), q = *net.find_species("Q");
    c[a] = 2.0;
    c[b] = 3.0;
    c[cc] = 5.0;
    c[p] = 7.0;
    c[q] = 11.0;
    const auto g = sys.rate(c);
    // rates: A+B->P = 6, B+C->Q = 15, C->2A = 2.5
    CHECK(g[a] == doctest::Approx(-6.0 + 5.0));
    CHECK(g[b] == doctest::Approx(-6.0 - 15.0));
    CHECK(g[cc] == doctest::Approx(-15.0 - 2.5));
    CHECK(g[p] == doctest::Approx(6.0));
    CHECK(g[q] == doctest::Approx(15.0));
}

TEST_CASE("analytic Jacobians agree with central differences") {
    std::mt19937_64 rng(11);
    for (const auto& f : fixtures::network_fixtures()) {
        const auto net = parse_network(f.text);
        const auto sys = flow_system(net, FlowAugmentation::uniform(net.species_count()), random_rates(rng, net)).at(1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto c = random_positive(rng, sys.dimension);
            INFO(f.name);
            CHECK(relative_gap(sys.jacobian(c), finite_difference_jacobian(sys, c)) <= 1e-6);
        }
    }
}

TEST_CASE("mass-action rates are nonnegative on the coordinate faces") {
    std::mt19937_64 rng(12);
    for (const auto& f : fixtures::network_fixtures()) {
        const auto net = parse_network(f.text);
        const auto g = reaction_system(net, random_rates(rng, net));
        for (int trial = 0; trial < 200; ++trial) {
            auto c = random_positive(rng, g.dimension);
            const auto j = static_cast<Eigen::Index>(trial % g.dimension);
            c[j] = 0.0;
            INFO(f.name);
            CHECK(g.rate(c)[j] >= 0.0);
        }
    }
}

TEST_CASE("flow systems") {
    const auto net = fixture("cf-irreversible");
    FlowAugmentation flows{{1, 2, 3, 4, 5}, {2, 2, 2, 2, 2}};
    const auto fs = flow_system(net, flows, {{"*", 1.0}});
    CHECK(fs.flow_equilibrium().isApprox(vec({0.5, 1.0, 1.5, 2.0, 2.5})));
    const auto f0 = fs.at(0.0);
    CHECK(f0.rate(fs.flow_equilibrium()).norm() == 0.0);
    CHECK(f0.jacobian(vec({1, 1, 1, 1, 1})).isApprox(-2.0 * Matrix::Identity(5, 5)));

    const auto augmented = augment_with_flows(net, flows);
    const auto again = flow_system(augmented, {{"*", 1.0}});
    const Vector c = vec({0.3, 1.1, 2.0, 0.7, 1.9});
    CHECK(again.at(1.0).rate(c).isApprox(fs.at(1.0).rate(c)));
    CHECK_THROWS_AS(flow_system(augmented, flows, {{"*", 1.0}}), NetworkError);
    CHECK_THROWS_AS(flow_system(net, FlowAugmentation::uniform(4), {{"*", 1.0}}), DomainError);
}

TEST_CASE("general kinetics need evaluators") {
    const auto net = with_general_kinetics(chain());
    CHECK_THROWS_AS(reaction_system(net).rate(vec({1, 1, 1})), KineticsError);
}

TEST_CASE("make_domain") {
    SUBCASE("two species") {
        const std::vector<double> m{1, 1};
        const auto d = make_domain(m, FlowAugmentation::uniform(2), 3.0);
        CHECK(d.contains(vec({1.0, 1.9})));
        CHECK_FALSE(d.contains(vec({1.0, 2.0})));
        CHECK_FALSE(d.contains(vec({0.0, 1.0})));
        CHECK(d.contains_closure(vec({0.0, 3.0})));
        CHECK(d.boundary_distance(vec({1.0, 1.0})) == doctest::Approx(std::min(1.0, 1.0 / std::sqrt(2.0))));
    }
    SUBCASE("bound equal to m.c_in is rejected") {
        const std::vector<double> m{1, 1};
        try {
            make_domain(m, FlowAugmentation::uniform(2), 2.0);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("m.c_in") != std::string::npos);
        }
    }
    SUBCASE("irreversible network with unit flows and M = 10") {
        const auto s = conservative("cf-irreversible");
        const std::vector<double> reference{1, 1, 2, 2, 3};
        CHECK(default_bound(reference, s.flows, 1.0) == 9.0);
        CHECK(make_domain(reference, s.flows, 10.0).bound() == 10.0);
    }
    SUBCASE("sampling stays inside") {
        const auto s = conservative("cf-irreversible");
        const auto d = default_domain(s);
        HaltonSequence h(5, 4);
        for (int i = 0; i < 1000; ++i) CHECK(d.contains(d.from_unit(h.next())));
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u;
        for (int i = 0; i < 100; ++i) {
            std::vector<double> w(5);
            for (auto& x : w) x = u(rng);
            const auto o = d.outer_point(w);
            CHECK(d.weighted_mass(o) == doctest::Approx(d.bound()));
            CHECK((o.array() >= 0.0).all());
        }
    }
}

TEST_CASE("box domains") {
    const auto cube = unit_cube(3);
    CHECK(cube.contains(vec({0.5, 0.5, 0.5})));
    CHECK_FALSE(cube.contains(vec({0.5, 1.0, 0.5})));
    CHECK(cube.boundary_distance(vec({0.2, 0.9, 0.5})) == doctest::Approx(0.1));
    CHECK_THROWS_AS(BoxDomain({0.0}, {0.0}), DomainError);
    CHECK_THROWS_AS(BoxDomain({0.0}, {1.0}, 2.0), DomainError);
    const BoxDomain logbox({0.0, 0.0}, {1e6, 1e6}, 1e-6);
    HaltonSequence h(2, 0);
    for (int i = 0; i < 500; ++i) {
        const auto c = logbox.from_unit(h.next());
        CHECK(logbox.contains(c));
        CHECK(c.minCoeff() >= 1e-6 * (1 - 1e-12));
    }
}

TEST_CASE("Halton sequence is seeded and in range") {
    HaltonSequence a(6, 9), b(6, 9), c(6, 10);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next(), y = b.next(), z = c.next();
        CHECK(x == y);
        differs = differs || x != z;
        for (double v : x) CHECK((v >= 0.0 && v < 1.0));
    }
    CHECK(differs);
}

TEST_CASE("newton_solve") {
    SUBCASE("linear system is solved in one step") {
        const FlowSystem fs(FlowAugmentation{{1.5, 0.25, 4.0}, {1, 1, 1}}, reaction_system(chain(), {{"*", 1.0}}));
        const auto sys = fs.at(0.0);
        const auto r = newton_solve(sys, vec({7.0, 0.1, 2.0}));
        CHECK(r.converged());
        CHECK(r.iterations == 1);
        CHECK(r.x.isApprox(vec({1.5, 0.25, 4.0})));
    }
    SUBCASE("singular Jacobian is reported") {
        NumericSystem sys;
        sys.dimension = 1;
        sys.rate = [](const Vector& c) { return Vector::Constant(1, (c[0] - 2.0) * (c[0] - 2.0) - 1.0); };
        sys.jacobian = [](const Vector& c) { return Matrix::Constant(1, 1, 2.0 * (c[0] - 2.0)); };
        const auto r = newton_solve(sys, vec({2.0}));
        CHECK(r.status == NewtonStatus::singular_jacobian);
        CHECK(to_string(r.status) == "singular jacobian");
        const auto ok = newton_solve(sys, vec({2.5}));
        CHECK(ok.converged());
        CHECK(ok.x[0] == doctest::Approx(3.0));
    }
    SUBCASE("iterates stay positive") {
        NumericSystem sys;
        sys.dimension = 1;
        sys.rate = [](const Vector& c) { return Vector::Constant(1, 1.0 - 100.0 * c[0]); };
        sys.jacobian = [](const Vector&) { return Matrix::Constant(1, 1, -100.0); };
        const auto r = newton_solve(sys, vec({5.0}));
        CHECK(r.converged());
        CHECK(r.x[0] == doctest::Approx(0.01));
    }
    SUBCASE("a point outside the orthant is rejected") {
        const auto sys = reaction_system(chain(), {{"*", 1.0}});
        CHECK_THROWS_AS(newton_solve(sys, vec({-1.0, 1.0, 1.0})), DomainError);
    }
    SUBCASE("no positive zero") {
        NumericSystem sys;
        sys.dimension = 1;
        sys.rate = [](const Vector& c) { return Vector::Constant(1, 1.0 + c[0]); };
        sys.jacobian = [](const Vector&) { return Matrix::Constant(1, 1, 1.0); };
        const auto r = newton_solve(sys, vec({1.0}));
        CHECK_FALSE(r.converged());
    }
}

TEST_CASE("flow-only systems have the single zero c_in / Lambda_o") {
    for (std::size_t n : {1u, 2u, 3u, 5u}) {
        FlowAugmentation flows;
        for (std::size_t i = 0; i < n; ++i) {
            flows.inflow.push_back(1.0 + static_cast<double>(i));
            flows.outflow.push_back(2.0);
        }
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i));
        const auto net = flow_only_network(names, flows);
        const auto fs = flow_system(net);
        const std::vector<double> m(n, 1.0);
        const auto domain = make_domain(m, flows, default_bound(m, flows));
        const auto report = count_equilibria(fs.at(1.0), domain, {});
        REQUIRE(report.count() == 1);
        CHECK(report.equilibria[0].point.isApprox(fs.flow_equilibrium()));
        CHECK(report.degree_estimate == reference_sign(n));

        const auto path = track_homotopy(fs, domain, {});
        CHECK(path.completed);
        for (const auto& s : path.samples) CHECK(s.c.isApprox(fs.flow_equilibrium()));

        const auto audit = boundary_audit(fs, domain, 500, 3);
        CHECK(audit.clean());
        CHECK_FALSE(search_multistationarity(net, flows).has_value());
    }
}

TEST_CASE("irreversible network with k(C->2A) = 1/2") {
    auto s = conservative("cf-irreversible");
    const auto fs = flow_system(s.net, s.flows, {{"*", 1.0}, {"C->2A", 0.5}});
    const auto domain = default_domain(s);
    CountOptions dense;
    dense.starts = 1000;
    const auto report = count_equilibria(fs.at(1.0), domain, dense);
    REQUIRE(report.count() == 1);
    CHECK(report.degree_estimate == -1);
    CHECK(report.equilibria[0].det_sign == -1);
    CHECK(report.equilibria[0].residual <= dense.residual_tolerance);

    const auto path = track_homotopy(fs, domain, {});
    REQUIRE(path.completed);
    CHECK(path.last_lambda == 1.0);
    CHECK(match_equilibrium(report, path.endpoint, 1e-6) == std::optional<std::size_t>(0));
    CHECK(jacobian_sign(fs.at(1.0), path.endpoint) == -1);
    double previous = -1.0;
    for (const auto& sample : path.samples) {
        CHECK(sample.lambda >= previous);
        previous = sample.lambda;
        CHECK(fs.at(sample.lambda).rate(sample.c).cwiseAbs().maxCoeff() <= 1e-10);
    }

    const auto audit = boundary_audit(fs, domain, 10000, 5);
    CHECK(audit.samples == 10000);
    CHECK(audit.clean());
}

TEST_CASE("irreversible network is unique whenever k(C->2A) <= 1") {
    auto s = conservative("cf-irreversible");
    const auto domain = default_domain(s);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> small(0.01, 1.0);
    for (int draw = 0; draw < 20; ++draw) {
        auto rates = random_rates(rng, s.net);
        rates["C->2A"] = small(rng);
        const auto sys = flow_system(s.net, s.flows, rates).at(1.0);
        for (std::uint64_t seed : {0u, 1u, 2u}) {
            CountOptions opts;
            opts.seed = seed;
            const auto report = count_equilibria(sys, domain, opts);
            CHECK(report.count() == 1);
            CHECK(report.degree_estimate == -1);
        }
    }
}

TEST_CASE("certified networks have one equilibrium and degree (-1)^n") {
    std::mt19937_64 rng(31);
    for (const char* name : {"table1-ii", "table1-iv", "chain"}) {
        auto s = conservative(name);
        REQUIRE(run_census(s.net).summary.certified());
        const auto domain = default_domain(s);
        for (int draw = 0; draw < 20; ++draw) {
            const auto fs = flow_system(s.net, s.flows, random_rates(rng, s.net));
            const auto report = count_equilibria(fs.at(1.0), domain, {});
            INFO(name << " draw " << draw);
            REQUIRE(report.count() == 1);
            CHECK(report.degree_estimate == reference_sign(s.net.species_count()));
            const auto path = track_homotopy(fs, domain, {});
            CHECK(path.completed);
            CHECK(match_equilibrium(report, path.endpoint, 1e-6).has_value());
        }
        CHECK_FALSE(search_multistationarity(s.net, s.flows).has_value());
    }
}

TEST_CASE("degree estimate equals (-1)^n whenever the audit is clean") {
    std::mt19937_64 rng(41);
    for (const char* name : {"cf-irreversible", "table1-i", "table1-vi"}) {
        auto s = conservative(name);
        const auto domain = default_domain(s);
        for (int draw = 0; draw < 5; ++draw) {
            const auto fs = flow_system(s.net, s.flows, random_rates(rng, s.net));
            if (!boundary_audit(fs, domain, 500, static_cast<std::uint64_t>(draw)).clean()) continue;
            const auto report = count_equilibria(fs.at(1.0), domain, {});
            INFO(name << " draw " << draw);
            CHECK(report.degree_estimate == reference_sign(s.net.species_count()));
        }
    }
}

TEST_CASE("counting is deterministic in the seed") {
    auto s = conservative("cf-irreversible");
    const auto domain = default_domain(s);
    const auto sys = flow_system(s.net, s.flows, {{"*", 1.0}, {"C->2A", 3.0}}).at(1.0);
    CountOptions opts;
    opts.seed = 77;
    const auto a = count_equilibria(sys, domain, opts);
    const auto b = count_equilibria(sys, domain, opts);
    REQUIRE(a.count() == b.count());
    CHECK(a.converged_starts == b.converged_starts);
    CHECK(a.degree_estimate == b.degree_estimate);
    for (std::size_t i = 0; i < a.count(); ++i) {
        CHECK(a.equilibria[i].point == b.equilibria[i].point);
        CHECK(a.equilibria[i].residual == b.equilibria[i].residual);
    }
    CHECK_THROWS_AS(count_equilibria(sys, unit_cube(3), opts), DomainError);
    opts.starts = 0;
    CHECK_THROWS_AS(count_equilibria(sys, domain, opts), DomainError);
}

TEST_CASE("outer boundary audit flags a bound that is too tight for the reactions") {
    // with the domain invalid for the flows (M below m.c_in) the outer face is not repelling
    const auto net = chain();
    const auto flows = FlowAugmentation::uniform(3);
    const auto fs = flow_system(net, flows, {{"*", 1.0}});
    const BoundedDomain tight({1, 1, 1}, {1, 1, 1}, 2.0);
    const auto audit = boundary_audit(fs, tight, 100, 0);
    CHECK(audit.outer_violations == 100);
    REQUIRE_FALSE(audit.witnesses.empty());
    CHECK(audit.witnesses[0].where == "outer");
}

TEST_CASE("homotopy without a starting zero") {
    HomotopyFamily family;
    family.dimension = 1;
    family.value = [](double lambda, const Vector& c) { return Vector::Constant(1, 1.0 + c[0] * c[0] - lambda); };
    family.jacobian = [](double, const Vector& c) { return Matrix::Constant(1, 1, 2.0 * c[0]); };
    const auto path = track_path(family, vec({0.5}), [](const Vector&) { return true; }, {});
    CHECK(path.stalled);
    CHECK_FALSE(path.completed);
}

TEST_CASE("homotopy stalls at a fold") {
    // zeros c = 1 +- sqrt(1 - 2 lambda) merge at lambda = 1/2
    HomotopyFamily family;
    family.dimension = 1;
    family.value = [](double lambda, const Vector& c) { return Vector::Constant(1, c[0] * c[0] - 2.0 * c[0] + 2.0 * lambda); };
    family.jacobian = [](double, const Vector& c) { return Matrix::Constant(1, 1, 2.0 * c[0] - 2.0); };
    const auto path = track_path(family, vec({2.0}), [](const Vector&) { return true; }, {});
    CHECK(path.stalled);
    CHECK(path.last_lambda <= 0.5);
    CHECK(path.last_lambda > 0.45);
    CHECK(path.message.find("stalled") != std::string::npos);
}

TEST_CASE("homotopy reports leaving the domain") {
    const auto fs = flow_system(fixture("cf-irreversible"), FlowAugmentation::uniform(5), {{"*", 1.0}});
    const Vector start = fs.flow_equilibrium();
    const auto path = track_path(flow_homotopy(fs), start,
                                 [&start](const Vector& c) { return (c - start).norm() < 0.05; }, {});
    CHECK(path.left_domain);
    CHECK(path.last_lambda < 1.0);
    CHECK(path.message.find("left the domain") != std::string::npos);
}

TEST_CASE("multistationarity search") {
    const auto net = fixture("cf-irreversible");
    SUBCASE("witness with sampled flows satisfies the degree identity") {
        SearchOptions opts;
        opts.budget = 3000;
        opts.seed = 2;
        opts.count.starts = 100;
        opts.flow_sampler = log_uniform_flow_sampler(-3.0, 3.0);
        const auto w = search_multistationarity(net, FlowAugmentation::uniform(5), opts, log_uniform_sampler(-3.0, 3.0));
        REQUIRE(w.has_value());
        CHECK(w->report.count() >= 2);
        CHECK(w->degree_identity);
        CHECK(w->odd_count);
        CHECK(w->report.degree_estimate == -1);
        // re-run independently with a denser count
        const auto domain = make_domain(conserved_mass_vector(net)->as_doubles(), w->flows,
                                        default_bound(conserved_mass_vector(net)->as_doubles(), w->flows));
        CountOptions dense;
        dense.starts = 1000;
        const auto again = count_equilibria(flow_system(net, w->flows, w->rates).at(1.0), domain, dense);
        CHECK(again.count() >= 2);
        CHECK(again.degree_estimate == -1);
    }
    SUBCASE("non-conservative networks need a mass vector") {
        const auto grow = parse_network("A -> 2A\nA+B -> 0\n");
        (void)grow;
        const auto leaky = parse_network("A+B -> C\nC -> A+B\nA -> 2A\n");
        REQUIRE(run_census(leaky).summary.anomalous_count() > 0);
        CHECK_THROWS_AS(search_multistationarity(leaky, FlowAugmentation::uniform(3)), NetworkError);
    }
}
