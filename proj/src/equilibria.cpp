#include "crn/errors.hpp"
#include "crn/jacobian.hpp"
#include "crn/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace crn::numeric {

namespace {

double norm_inf(const Vector& v) { return v.cwiseAbs().maxCoeff(); }

bool lexicographic_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool near(const Vector& a, const Vector& b, double radius) {
    const double scale = std::max({1.0, norm_inf(a), norm_inf(b)});
    return norm_inf(a - b) <= radius * scale;
}

} // namespace

EquilibriumReport count_equilibria(const NumericSystem& sys, const Domain& domain, const CountOptions& options) {
    if (domain.dimension() != sys.dimension) throw DomainError("domain and system dimensions differ");
    if (options.starts == 0) throw DomainError("at least one start is required");

    // Iterates stay inside the open domain as well as the system's own admissible set.
    NumericSystem constrained = sys;
    constrained.admissible = [&sys, &domain](const Vector& c) {
        return domain.contains(c) && (!sys.admissible || sys.admissible(c));
    };

    EquilibriumReport report;
    report.starts = options.starts;
    report.seed = options.seed;
    report.residual_tolerance = options.residual_tolerance;
    report.dedup_radius = options.dedup_radius;

    std::vector<Vector> roots;
    HaltonSequence halton(sys.dimension, options.seed);
    for (std::size_t s = 0; s < options.starts; ++s) {
        const auto u = halton.next();
        const Vector x0 = domain.from_unit(u);
        if (!constrained.is_admissible(x0)) continue;
        const auto result = newton_solve(constrained, x0, options.newton);
        if (!result.converged() || result.residual > options.residual_tolerance) continue;
        ++report.converged_starts;
        roots.push_back(result.x);
    }

    std::sort(roots.begin(), roots.end(), lexicographic_less);
    for (const auto& x : roots) {
        const bool seen = std::any_of(report.equilibria.begin(), report.equilibria.end(),
                                      [&](const Equilibrium& e) { return near(e.point, x, options.dedup_radius); });
        if (seen) continue;
        Equilibrium e;
        e.point = x;
        e.residual = norm_inf(sys.rate(x));
        e.det_sign = jacobian_sign(sys, x);
        report.degree_estimate += e.det_sign;
        report.equilibria.push_back(std::move(e));
    }
    return report;
}

std::optional<std::size_t> match_equilibrium(const EquilibriumReport& report, const Vector& point, double radius) {
    for (std::size_t i = 0; i < report.equilibria.size(); ++i)
        if (near(report.equilibria[i].point, point, radius)) return i;
    return std::nullopt;
}

namespace {

constexpr double audit_lambdas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
constexpr std::size_t max_witnesses = 10;

void record(AuditReport& report, BoundaryWitness w) {
    if (report.witnesses.size() < max_witnesses) report.witnesses.push_back(std::move(w));
}

std::vector<double> uniform_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& x : out) x = u(rng);
    return out;
}

} // namespace

AuditReport boundary_audit(const FlowSystem& sys, const BoundedDomain& domain, std::size_t samples,
                           std::uint64_t seed) {
    const std::size_t n = sys.dimension();
    if (domain.dimension() != n) throw DomainError("domain and system dimensions differ");
    std::vector<NumericSystem> family;
    for (double lambda : audit_lambdas) family.push_back(sys.at(lambda));
    const auto& m = domain.mass();

    AuditReport report;
    report.samples = samples;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t j = s % n;
        Vector side = domain.from_unit(uniform_point(rng, n));
        side[static_cast<Eigen::Index>(j)] = 0.0;
        bool side_bad = false;
        for (std::size_t l = 0; l < family.size(); ++l) {
            const double v = family[l].rate(side)[static_cast<Eigen::Index>(j)];
            if (!(v > 0.0)) {
                if (!side_bad) record(report, {"side", side, audit_lambdas[l], j, v});
                side_bad = true;
            }
        }
        if (side_bad) ++report.side_violations;

        const Vector outer = domain.outer_point(uniform_point(rng, n));
        bool outer_bad = false;
        for (std::size_t l = 0; l < family.size(); ++l) {
            const Vector f = family[l].rate(outer);
            double v = 0.0;
            for (std::size_t i = 0; i < n; ++i) v += m[i] * f[static_cast<Eigen::Index>(i)];
            if (!(v < 0.0)) {
                if (!outer_bad) record(report, {"outer", outer, audit_lambdas[l], 0, v});
                outer_bad = true;
            }
        }
        if (outer_bad) ++report.outer_violations;
    }
    return report;
}

AuditReport boundary_audit(const NumericSystem& sys, const BoxDomain& domain, std::size_t samples,
                           std::uint64_t seed, double proximity) {
    const std::size_t n = sys.dimension;
    if (domain.dimension() != n) throw DomainError("domain and system dimensions differ");
    NumericSystem constrained = sys;
    constrained.admissible = [&sys, &domain](const Vector& c) {
        return domain.contains(c) && (!sys.admissible || sys.admissible(c));
    };

    AuditReport report;
    report.samples = samples;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t j = s % n;
        const bool upper = (s / n) % 2 == 1;
        const auto idx = static_cast<Eigen::Index>(j);
        Vector c = domain.from_unit(uniform_point(rng, n));
        const double lo = domain.lower()[j], hi = domain.upper()[j];
        const double inset = std::min(1e-6 * (hi - lo), 1e-6 * std::max(1.0, std::abs(upper ? hi : lo)));

        // a zero exactly on the face
        Vector face = c;
        face[idx] = upper ? hi : lo;
        const Vector f = sys.rate(face);
        if (f.allFinite() && norm_inf(f) <= proximity) {
            record(report, {"face", face, 1.0, j, norm_inf(f)});
            ++(upper ? report.outer_violations : report.side_violations);
            continue;
        }

        // a zero just inside the face
        c[idx] = upper ? hi - inset : lo + inset;
        if (!constrained.is_admissible(c)) continue;
        const auto result = newton_solve(constrained, c, {});
        if (!result.converged()) continue;
        const double d = domain.boundary_distance(result.x);
        if (d <= proximity) {
            record(report, {"face", result.x, 1.0, j, d});
            ++(upper ? report.outer_violations : report.side_violations);
        }
    }
    return report;
}

ParameterSampler log_uniform_sampler(double lo, double hi) {
    return [lo, hi](std::mt19937_64& rng, const ReactionNetwork& net) {
        std::uniform_real_distribution<double> u(lo, hi);
        RateBindings rates;
        for (std::size_t r = 0; r < net.reaction_count(); ++r)
            if (flow_kind(net.reaction(r)) == FlowKind::none) rates[net.reaction_label(r)] = std::pow(10.0, u(rng));
        return rates;
    };
}

FlowSampler log_uniform_flow_sampler(double lo, double hi) {
    return [lo, hi](std::mt19937_64& rng, std::size_t n) {
        std::uniform_real_distribution<double> u(lo, hi);
        FlowAugmentation flows;
        for (std::size_t i = 0; i < n; ++i) {
            flows.inflow.push_back(std::pow(10.0, u(rng)));
            flows.outflow.push_back(std::pow(10.0, 0.5 * u(rng)));
        }
        return flows;
    };
}

std::optional<MultistationarityWitness> search_multistationarity(const ReactionNetwork& core,
                                                                 const FlowAugmentation& flows,
                                                                 const SearchOptions& options,
                                                                 const ParameterSampler& sampler) {
    const auto census = run_census(core);
    if (census.summary.anomalous_count() == 0) return std::nullopt;

    const ReactionNetwork reactions = core.has_flows() ? core.without_flows() : core;
    const FlowAugmentation used = core.has_flows() ? extract_flows(core) : flows;
    used.validate(reactions.species_count());

    std::vector<double> mass;
    if (options.mass) {
        mass = *options.mass;
    } else {
        const auto m = conserved_mass_vector(reactions);
        if (!m) throw NetworkError("network is not conservative; supply a dissipating mass vector");
        mass = m->as_doubles();
    }
    const ParameterSampler draw = sampler ? sampler : log_uniform_sampler();
    const int reference = reactions.species_count() % 2 == 0 ? 1 : -1;

    std::mt19937_64 rng(options.seed);
    for (std::size_t attempt = 0; attempt < options.budget; ++attempt) {
        auto rates = draw(rng, reactions);
        const FlowAugmentation current = options.flow_sampler ? options.flow_sampler(rng, reactions.species_count()) : used;
        const auto domain = make_domain(mass, current, default_bound(mass, current, options.domain_multiplier));
        const auto sys = flow_system(reactions, current, rates).at(1.0);
        CountOptions count = options.count;
        count.seed = options.count.seed + attempt;
        if (count_equilibria(sys, domain, count).count() >= 2) {
            count.starts *= std::max<std::size_t>(1, options.confirm_factor);
            auto report = count_equilibria(sys, domain, count);
            MultistationarityWitness w;
            w.rates = std::move(rates);
            w.flows = current;
            w.degree_identity = report.degree_estimate == reference;
            w.odd_count = report.count() % 2 == 1;
            w.report = std::move(report);
            w.attempts = attempt + 1;
            return w;
        }
    }
    return std::nullopt;
}

} // namespace crn::numeric
