#pragma once

#include "crn/conservation.hpp"
#include "crn/network.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace crn::numeric {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A map f : R^n -> R^n with its Jacobian (rows are equations, columns variables).
struct NumericSystem {
    std::size_t dimension = 0;
    std::function<Vector(const Vector&)> rate;
    std::function<Matrix(const Vector&)> jacobian;
    /// Points where f may be evaluated; Newton damping keeps iterates inside. Defaults to c > 0.
    std::function<bool(const Vector&)> admissible;
    std::string provenance;

    bool is_admissible(const Vector& c) const;
};

/// Rate constants by reaction label ("A+B->P"); the key "*" supplies a default.
using RateBindings = std::map<std::string, double>;

/// One numeric constant per reaction: a binding for its label wins over the k= annotation,
/// which wins over "*". Flow and general-kinetics reactions get 0. Throws MissingBinding,
/// or DomainError for a label that names no reaction.
std::vector<double> resolve_rate_constants(const ReactionNetwork& net, const RateBindings& bindings);

/// f_lambda(c) = c_in - Lambda_o c + lambda g(c), where g collects the non-flow reactions.
class FlowSystem {
public:
    FlowSystem(FlowAugmentation flows, NumericSystem reactions);

    std::size_t dimension() const { return reactions_.dimension; }
    const FlowAugmentation& flows() const { return flows_; }
    const NumericSystem& reactions() const { return reactions_; }

    /// The family member at `lambda`; at(1) is the full system.
    NumericSystem at(double lambda) const;
    /// Lambda_o^{-1} c_in, the unique zero of f_0.
    Vector flow_equilibrium() const;

private:
    FlowAugmentation flows_;
    NumericSystem reactions_;
};

/// g(c) for the non-flow reactions of `net`. Mass-action reactions need a numeric constant
/// (see resolve_rate_constants); general kinetics need an evaluator.
NumericSystem reaction_system(const ReactionNetwork& net, const RateBindings& bindings = {});

/// Core network plus separately supplied flows. Throws NetworkError when `core` already has flows.
FlowSystem flow_system(const ReactionNetwork& core, const FlowAugmentation& flows, const RateBindings& bindings = {});

/// Fully augmented network; flows are read from its flow reactions.
FlowSystem flow_system(const ReactionNetwork& augmented, const RateBindings& bindings = {});

/// Central-difference Jacobian with step 1e-6 (1 + |c_i|).
Matrix finite_difference_jacobian(const NumericSystem& sys, const Vector& c);

// ---------------------------------------------------------------------------
// Domains

class Domain {
public:
    virtual ~Domain() = default;

    virtual std::size_t dimension() const = 0;
    /// Open domain membership.
    virtual bool contains(const Vector& c) const = 0;
    /// Membership in the closure, with a small relative slack.
    virtual bool contains_closure(const Vector& c) const = 0;
    /// Maps a point of [0,1)^n into the interior.
    virtual Vector from_unit(std::span<const double> u) const = 0;
    /// Distance to the nearest boundary face (<= 0 outside).
    virtual double boundary_distance(const Vector& c) const = 0;
    virtual std::string kind() const = 0;
};

/// Omega_M = { c > 0 : m . (Lambda_o c) < M }.
class BoundedDomain final : public Domain {
public:
    BoundedDomain(std::vector<double> mass, std::vector<double> outflow, double bound);

    const std::vector<double>& mass() const { return mass_; }
    const std::vector<double>& outflow() const { return outflow_; }
    double bound() const { return bound_; }

    /// m . (Lambda_o c)
    double weighted_mass(const Vector& c) const;

    std::size_t dimension() const override { return mass_.size(); }
    bool contains(const Vector& c) const override;
    bool contains_closure(const Vector& c) const override;
    /// Uniform on the simplex slice via sorted spacings.
    Vector from_unit(std::span<const double> u) const override;
    double boundary_distance(const Vector& c) const override;
    std::string kind() const override { return "bounded"; }

    /// Point on the outer boundary m . (Lambda_o c) = M, from a point of [0,1)^n.
    Vector outer_point(std::span<const double> u) const;

private:
    std::vector<double> mass_;
    std::vector<double> outflow_;
    double bound_;
};

/// Throws DomainError reporting "M <= m.c_in" when the bound is too small.
BoundedDomain make_domain(std::span<const double> mass, const FlowAugmentation& flows, double bound);
BoundedDomain make_domain(const MassVector& mass, const FlowAugmentation& flows, double bound);

/// The default bound 10 (m . c_in).
double default_bound(std::span<const double> mass, const FlowAugmentation& flows, double multiplier = 10.0);

/// Open box lower < c < upper. Sampling is uniform, or log-uniform above `log_floor` when set.
class BoxDomain final : public Domain {
public:
    BoxDomain(std::vector<double> lower, std::vector<double> upper, std::optional<double> log_floor = std::nullopt);

    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }

    std::size_t dimension() const override { return lower_.size(); }
    bool contains(const Vector& c) const override;
    bool contains_closure(const Vector& c) const override;
    Vector from_unit(std::span<const double> u) const override;
    double boundary_distance(const Vector& c) const override;
    std::string kind() const override { return "box"; }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::optional<double> log_floor_;
};

BoxDomain unit_cube(std::size_t n);

// ---------------------------------------------------------------------------
// Low-discrepancy points

/// Halton points in [0,1)^n with a Cranley-Patterson shift drawn from `seed`.
class HaltonSequence {
public:
    HaltonSequence(std::size_t dimension, std::uint64_t seed);
    std::vector<double> next();

private:
    std::size_t index_ = 0;
    std::vector<unsigned> bases_;
    std::vector<double> shift_;
};

// ---------------------------------------------------------------------------
// Newton

struct NewtonOptions {
    double tolerance = 1e-10;
    int max_iterations = 100;
    int max_halvings = 40;
};

enum class NewtonStatus { converged, singular_jacobian, max_iterations, left_domain };

std::string to_string(NewtonStatus s);

struct NewtonResult {
    NewtonStatus status = NewtonStatus::max_iterations;
    Vector x;
    double residual = 0.0;
    int iterations = 0;

    bool converged() const { return status == NewtonStatus::converged; }
};

/// Damped Newton. Steps are halved until the iterate is admissible and the residual does
/// not grow. Throws DomainError when x0 itself is not admissible.
NewtonResult newton_solve(const NumericSystem& sys, const Vector& x0, const NewtonOptions& options = {});

/// Sign of det J(c): -1, 0 or +1.
int jacobian_sign(const NumericSystem& sys, const Vector& c);

// ---------------------------------------------------------------------------
// Homotopy continuation

/// F(lambda, c) for lambda in [0,1] with partial derivatives.
struct HomotopyFamily {
    std::size_t dimension = 0;
    std::function<Vector(double, const Vector&)> value;
    std::function<Matrix(double, const Vector&)> jacobian;
    /// dF/dlambda; central differences in lambda when empty.
    std::function<Vector(double, const Vector&)> lambda_derivative;
    /// Where F may be evaluated; corrector iterates outside count as a failed step.
    std::function<bool(const Vector&)> admissible;
};

HomotopyFamily flow_homotopy(const FlowSystem& sys);

struct HomotopyOptions {
    double initial_step = 0.05;
    double max_step = 0.25;
    double min_step = 1e-10;
    double corrector_tolerance = 1e-10;
    int corrector_iterations = 8;
    int easy_iterations = 3;
    std::size_t max_steps = 100000;
};

struct PathSample {
    double lambda = 0.0;
    Vector c;
    double step = 0.0;
};

struct HomotopyPath {
    std::vector<PathSample> samples;
    Vector endpoint;
    bool completed = false;
    bool stalled = false;
    bool left_domain = false;
    double last_lambda = 0.0;
    std::string message;

    std::size_t steps() const { return samples.empty() ? 0 : samples.size() - 1; }
};

/// Euler tangent predictor and Newton corrector from (0, start). Step grows by 1.5 after
/// two consecutive easy corrections and halves on failure.
HomotopyPath track_path(const HomotopyFamily& family, const Vector& start,
                        const std::function<bool(const Vector&)>& inside, const HomotopyOptions& options = {});

/// Tracks f_lambda from Lambda_o^{-1} c_in at lambda = 0 to lambda = 1 inside the domain closure.
HomotopyPath track_homotopy(const FlowSystem& sys, const Domain& domain, const HomotopyOptions& options = {});

// ---------------------------------------------------------------------------
// Equilibrium counting

struct CountOptions {
    std::size_t starts = 200;
    std::uint64_t seed = 0;
    NewtonOptions newton;
    double residual_tolerance = 1e-8;
    double dedup_radius = 1e-7;
};

struct Equilibrium {
    Vector point;
    double residual = 0.0;
    int det_sign = 0;
};

struct EquilibriumReport {
    std::vector<Equilibrium> equilibria;
    int degree_estimate = 0;
    std::size_t starts = 0;
    std::uint64_t seed = 0;
    double residual_tolerance = 0.0;
    double dedup_radius = 0.0;
    std::size_t converged_starts = 0;
    std::optional<HomotopyPath> homotopy;
    std::optional<std::size_t> homotopy_match;

    std::size_t count() const { return equilibria.size(); }
};

/// Multistart damped Newton from Halton points mapped into `domain`. Roots are sorted
/// lexicographically, then merged within dedup_radius * max(1, |x|_inf).
EquilibriumReport count_equilibria(const NumericSystem& sys, const Domain& domain, const CountOptions& options = {});

/// Index of the equilibrium within `radius` (relative) of `point`, if any.
std::optional<std::size_t> match_equilibrium(const EquilibriumReport& report, const Vector& point, double radius);

// ---------------------------------------------------------------------------
// Boundary audits

struct BoundaryWitness {
    std::string where; ///< "side", "outer" or "face"
    Vector point;
    double lambda = 1.0;
    std::size_t coordinate = 0;
    double value = 0.0;
};

struct AuditReport {
    std::size_t samples = 0;
    std::size_t side_violations = 0;
    std::size_t outer_violations = 0;
    std::vector<BoundaryWitness> witnesses;

    bool clean() const { return side_violations == 0 && outer_violations == 0; }
};

/// Sides: f_lambda,j > 0 where c_j = 0. Outer: m . f_lambda < 0 where m . (Lambda_o c) = M.
/// Checked for lambda in {0, 1/4, 1/2, 3/4, 1}; `samples` points per kind.
AuditReport boundary_audit(const FlowSystem& sys, const BoundedDomain& domain, std::size_t samples,
                           std::uint64_t seed);

/// Box faces: Newton is started just inside each sampled face point; any root closer than
/// `proximity` to the boundary is a violation. Lower faces count as sides, upper faces as outer.
AuditReport boundary_audit(const NumericSystem& sys, const BoxDomain& domain, std::size_t samples,
                           std::uint64_t seed, double proximity = 1e-8);

// ---------------------------------------------------------------------------
// Multistationarity search

using ParameterSampler = std::function<RateBindings(std::mt19937_64&, const ReactionNetwork&)>;

/// Log-uniform constants in [10^lo, 10^hi] for every non-flow reaction.
ParameterSampler log_uniform_sampler(double lo = -2.0, double hi = 2.0);

using FlowSampler = std::function<FlowAugmentation(std::mt19937_64&, std::size_t n)>;

/// Inflows log-uniform in [10^lo, 10^hi], outflows in [10^(lo/2), 10^(hi/2)].
FlowSampler log_uniform_flow_sampler(double lo = -2.0, double hi = 2.0);

struct SearchOptions {
    std::size_t budget = 100;
    std::uint64_t seed = 0;
    CountOptions count;
    double domain_multiplier = 10.0;
    /// Used instead of the conserved mass vector (e.g. a dissipating one).
    std::optional<std::vector<double>> mass;
    /// When set, flows are redrawn per attempt instead of using the fixed ones.
    FlowSampler flow_sampler;
    /// A candidate with two or more zeros is recounted with this many times the starts.
    std::size_t confirm_factor = 10;
};

struct MultistationarityWitness {
    RateBindings rates;
    FlowAugmentation flows;
    /// The confirming recount.
    EquilibriumReport report;
    /// degree_estimate == (-1)^n
    bool degree_identity = false;
    bool odd_count = false;
    std::size_t attempts = 0;
};

/// Randomized search for parameters with two or more equilibria in Omega_M. Returns nullopt
/// straight away when the mass-action census has no anomalous terms.
std::optional<MultistationarityWitness> search_multistationarity(const ReactionNetwork& core,
                                                                 const FlowAugmentation& flows,
                                                                 const SearchOptions& options = {},
                                                                 const ParameterSampler& sampler = {});

} // namespace crn::numeric
