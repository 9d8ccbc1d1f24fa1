#include "crn/errors.hpp"
#include "crn/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crn::numeric {

std::string to_string(NewtonStatus s) {
    switch (s) {
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::singular_jacobian: return "singular jacobian";
    case NewtonStatus::max_iterations: return "iteration cap exceeded";
    case NewtonStatus::left_domain: return "left the domain";
    }
    return "?";
}

namespace {

double norm_inf(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Newton direction, or nullopt when J is singular at working precision.
std::optional<Vector> newton_step(const Matrix& j, const Vector& f) {
    Eigen::FullPivLU<Matrix> lu(j);
    if (!lu.isInvertible()) return std::nullopt;
    Vector dx = lu.solve(-f);
    if (!dx.allFinite()) return std::nullopt;
    return dx;
}

} // namespace

NewtonResult newton_solve(const NumericSystem& sys, const Vector& x0, const NewtonOptions& options) {
    if (!sys.is_admissible(x0)) throw DomainError("Newton start point is not admissible");
    NewtonResult result;
    result.x = x0;
    Vector f = sys.rate(result.x);
    result.residual = norm_inf(f);

    for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
        if (result.residual <= options.tolerance) {
            // one undamped polishing step, kept only if it helps
            if (const auto dx = newton_step(sys.jacobian(result.x), f)) {
                const Vector trial = result.x + *dx;
                if (sys.is_admissible(trial)) {
                    const Vector f_trial = sys.rate(trial);
                    if (f_trial.allFinite() && norm_inf(f_trial) < result.residual) {
                        result.x = trial;
                        result.residual = norm_inf(f_trial);
                    }
                }
            }
            result.status = NewtonStatus::converged;
            return result;
        }
        const auto dx = newton_step(sys.jacobian(result.x), f);
        if (!dx) {
            result.status = NewtonStatus::singular_jacobian;
            return result;
        }

        double t = 1.0;
        int halvings = 0;
        Vector trial = result.x + *dx;
        while (!sys.is_admissible(trial)) {
            if (++halvings > options.max_halvings) {
                result.status = NewtonStatus::left_domain;
                return result;
            }
            t *= 0.5;
            trial = result.x + t * *dx;
        }
        Vector f_trial = sys.rate(trial);
        while (!(norm_inf(f_trial) <= (1.0 - 1e-4 * t) * result.residual) && halvings < options.max_halvings) {
            ++halvings;
            t *= 0.5;
            trial = result.x + t * *dx;
            f_trial = sys.rate(trial);
        }
        if (!f_trial.allFinite()) {
            result.status = NewtonStatus::left_domain;
            return result;
        }
        result.x = trial;
        f = f_trial;
        result.residual = norm_inf(f);
    }
    result.status = result.residual <= options.tolerance ? NewtonStatus::converged : NewtonStatus::max_iterations;
    return result;
}

int jacobian_sign(const NumericSystem& sys, const Vector& c) {
    const double det = Eigen::PartialPivLU<Matrix>(sys.jacobian(c)).determinant();
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

HomotopyFamily flow_homotopy(const FlowSystem& sys) {
    HomotopyFamily family;
    family.dimension = sys.dimension();
    const Vector in = Eigen::Map<const Vector>(sys.flows().inflow.data(), sys.flows().inflow.size());
    const Vector out = Eigen::Map<const Vector>(sys.flows().outflow.data(), sys.flows().outflow.size());
    const auto g = sys.reactions().rate;
    const auto dg = sys.reactions().jacobian;
    family.value = [in, out, g](double lambda, const Vector& c) -> Vector {
        return in - out.cwiseProduct(c) + lambda * g(c);
    };
    family.jacobian = [out, dg](double lambda, const Vector& c) -> Matrix {
        return lambda * dg(c) - Matrix(out.asDiagonal());
    };
    family.lambda_derivative = [g](double, const Vector& c) -> Vector { return g(c); };
    const NumericSystem reactions = sys.reactions();
    family.admissible = [reactions](const Vector& c) { return reactions.is_admissible(c); };
    return family;
}

namespace {

Vector lambda_derivative(const HomotopyFamily& family, double lambda, const Vector& c) {
    if (family.lambda_derivative) return family.lambda_derivative(lambda, c);
    const double h = 1e-7;
    const double lo = std::max(0.0, lambda - h);
    const double hi = std::min(1.0, lambda + h);
    return (family.value(hi, c) - family.value(lo, c)) / (hi - lo);
}

struct Correction {
    bool converged = false;
    int iterations = 0;
    Vector c;
};

Correction correct(const HomotopyFamily& family, double lambda, Vector c, const HomotopyOptions& options) {
    Correction out;
    for (out.iterations = 0; out.iterations <= options.corrector_iterations; ++out.iterations) {
        if (family.admissible && !family.admissible(c)) break;
        const Vector f = family.value(lambda, c);
        if (!f.allFinite()) break;
        if (norm_inf(f) <= options.corrector_tolerance) {
            out.converged = true;
            break;
        }
        if (out.iterations == options.corrector_iterations) break;
        const auto dx = newton_step(family.jacobian(lambda, c), f);
        if (!dx) break;
        c += *dx;
    }
    out.c = std::move(c);
    return out;
}

std::string at_lambda(const char* what, double lambda) {
    std::ostringstream msg;
    msg << what << " at lambda = " << lambda;
    return msg.str();
}

} // namespace

HomotopyPath track_path(const HomotopyFamily& family, const Vector& start,
                        const std::function<bool(const Vector&)>& inside, const HomotopyOptions& options) {
    HomotopyPath path;
    auto first = correct(family, 0.0, start, options);
    if (!first.converged) {
        path.stalled = true;
        path.message = "start point is not a zero of the lambda = 0 system";
        path.endpoint = start;
        return path;
    }
    Vector c = first.c;
    double lambda = 0.0;
    double step = options.initial_step;
    int easy_streak = 0;
    path.samples.push_back({0.0, c, step});

    while (lambda < 1.0) {
        if (path.samples.size() > options.max_steps) {
            path.stalled = true;
            path.message = at_lambda("step budget exhausted", lambda);
            break;
        }
        step = std::min(step, 1.0 - lambda);
        const double next = (1.0 - lambda - step) < 1e-14 ? 1.0 : lambda + step;

        Vector predicted = c;
        if (const auto tangent = newton_step(family.jacobian(lambda, c), lambda_derivative(family, lambda, c)))
            predicted += (next - lambda) * *tangent;

        const auto corrected = correct(family, next, predicted, options);
        if (!corrected.converged) {
            step *= 0.5;
            easy_streak = 0;
            if (step < options.min_step) {
                path.stalled = true;
                path.message = at_lambda("path tracking stalled", lambda);
                break;
            }
            continue;
        }
        if (!inside(corrected.c)) {
            path.left_domain = true;
            path.message = at_lambda("path left the domain closure after the last good point", lambda);
            break;
        }
        lambda = next;
        c = corrected.c;
        path.samples.push_back({lambda, c, step});
        if (corrected.iterations <= options.easy_iterations) {
            if (++easy_streak >= 2) {
                step = std::min(step * 1.5, options.max_step);
                easy_streak = 0;
            }
        } else {
            easy_streak = 0;
        }
    }

    path.last_lambda = lambda;
    path.endpoint = c;
    path.completed = lambda >= 1.0 && !path.stalled && !path.left_domain;
    return path;
}

HomotopyPath track_homotopy(const FlowSystem& sys, const Domain& domain, const HomotopyOptions& options) {
    if (domain.dimension() != sys.dimension()) throw DomainError("domain and system dimensions differ");
    return track_path(flow_homotopy(sys), sys.flow_equilibrium(),
                      [&domain](const Vector& c) { return domain.contains_closure(c); }, options);
}

} // namespace crn::numeric
