#include "crn/errors.hpp"
#include "crn/mapk.hpp"

#include <algorithm>
#include <cmath>

namespace crn::numeric {

NumericSystem thron_system(const ThronParameters& params) {
    const auto [p1, p2, p3, p4, p5, p6] = params.p;
    const double c0 = params.c0;
    NumericSystem sys;
    sys.dimension = 3;
    sys.provenance = "mapk-thron";
    sys.rate = [=](const Vector& c) {
        Vector f(3);
        f << p1 * c0 / (p2 + c[2]) - p3 * c[0], p3 * c[0] - p4 * c[1], p4 * c[1] - p5 * c[2] / (p6 + c[2]);
        return f;
    };
    sys.jacobian = [=](const Vector& c) {
        Matrix j(3, 3);
        j << -p3, 0.0, -p1 * c0 / std::pow(p2 + c[2], 2),
             p3, -p4, 0.0,
             0.0, p4, -p5 * p6 / std::pow(p6 + c[2], 2);
        return j;
    };
    return sys;
}

Vector thron_reference_equilibrium(double c0) {
    Vector c(3);
    c << c0 / (1.0 + c0), c0 / (1.0 + c0), c0;
    return c;
}

double thron_delta(const ThronParameters& params) {
    double delta = 0.49;
    auto fold = [&](double q) { delta = std::min(delta, 0.5 * std::min(q, 1.0 / q)); };
    fold(params.p[0] * params.c0);
    for (std::size_t j = 1; j < 6; ++j) fold(params.p[j]);
    return delta;
}

BoxDomain thron_box(const ThronParameters& params) {
    const double upper = std::pow(thron_delta(params), -4.0);
    return BoxDomain(std::vector<double>(3, 0.0), std::vector<double>(3, upper), 1e-6);
}

namespace {

ThronParameters mix(const ThronParameters& a, const ThronParameters& b, double lambda) {
    ThronParameters out;
    for (std::size_t j = 0; j < 6; ++j) out.p[j] = (1.0 - lambda) * a.p[j] + lambda * b.p[j];
    out.c0 = (1.0 - lambda) * a.c0 + lambda * b.c0;
    return out;
}

CascadeParameters mix(const CascadeParameters& x, const CascadeParameters& y, double lambda) {
    auto blend = [lambda](double u, double v) { return (1.0 - lambda) * u + lambda * v; };
    CascadeParameters out;
    for (std::size_t i = 0; i < 3; ++i) {
        out.a[i] = blend(x.a[i], y.a[i]);
        out.b[i] = blend(x.b[i], y.b[i]);
        out.d[i] = blend(x.d[i], y.d[i]);
        out.e[i] = blend(x.e[i], y.e[i]);
    }
    out.mu = blend(x.mu, y.mu);
    out.k = blend(x.k, y.k);
    return out;
}

template <typename Params, typename Build>
HomotopyFamily parameter_homotopy(const Params& from, const Params& to, Build build) {
    HomotopyFamily family;
    family.dimension = 3;
    family.value = [=](double lambda, const Vector& c) { return build(mix(from, to, lambda)).rate(c); };
    family.jacobian = [=](double lambda, const Vector& c) { return build(mix(from, to, lambda)).jacobian(c); };
    family.admissible = [=](const Vector& c) { return build(from).is_admissible(c); };
    return family;
}

} // namespace

HomotopyFamily thron_parameter_homotopy(const ThronParameters& from, const ThronParameters& to) {
    return parameter_homotopy(from, to, thron_system);
}

NumericSystem cascade_system(const CascadeParameters& q) {
    NumericSystem sys;
    sys.dimension = 3;
    sys.provenance = "mapk-cube";
    // activation factor d (1-c)/(e+1-c) and its derivative -d e/(e+1-c)^2
    auto act = [](double d, double e, double c) { return d * (1.0 - c) / (e + 1.0 - c); };
    auto dact = [](double d, double e, double c) { return -d * e / std::pow(e + 1.0 - c, 2); };
    auto deact = [](double a, double b, double c) { return -b * c / (c + a); };
    auto ddeact = [](double a, double b, double c) { return -b * a / std::pow(c + a, 2); };
    sys.rate = [=](const Vector& c) {
        const double feedback = q.mu / (1.0 + q.k * c[2]);
        Vector f(3);
        f << deact(q.a[0], q.b[0], c[0]) + act(q.d[0], q.e[0], c[0]) * feedback,
             deact(q.a[1], q.b[1], c[1]) + act(q.d[1], q.e[1], c[1]) * c[0],
             deact(q.a[2], q.b[2], c[2]) + act(q.d[2], q.e[2], c[2]) * c[1];
        return f;
    };
    sys.jacobian = [=](const Vector& c) {
        const double feedback = q.mu / (1.0 + q.k * c[2]);
        const double dfeedback = -q.mu * q.k / std::pow(1.0 + q.k * c[2], 2);
        Matrix j = Matrix::Zero(3, 3);
        j(0, 0) = ddeact(q.a[0], q.b[0], c[0]) + dact(q.d[0], q.e[0], c[0]) * feedback;
        j(0, 2) = act(q.d[0], q.e[0], c[0]) * dfeedback;
        j(1, 0) = act(q.d[1], q.e[1], c[1]);
        j(1, 1) = ddeact(q.a[1], q.b[1], c[1]) + dact(q.d[1], q.e[1], c[1]) * c[0];
        j(2, 1) = act(q.d[2], q.e[2], c[2]);
        j(2, 2) = ddeact(q.a[2], q.b[2], c[2]) + dact(q.d[2], q.e[2], c[2]) * c[1];
        return j;
    };
    sys.admissible = [](const Vector& c) { return (c.array() > 0.0).all() && (c.array() < 1.0).all(); };
    return sys;
}

HomotopyFamily cascade_parameter_homotopy(const CascadeParameters& from, const CascadeParameters& to) {
    return parameter_homotopy(from, to, cascade_system);
}

const std::vector<NumericFixture>& numeric_fixtures() {
    static const std::vector<NumericFixture> all = {
        {"mapk-thron", "three-stage loop with rational feedback on the positive orthant",
         {"p1", "p2", "p3", "p4", "p5", "p6", "c0"}},
        {"mapk-cube", "MAPK cascade with inhibitory feedback on the open unit cube",
         {"a1", "a2", "a3", "b1", "b2", "b3", "d1", "d2", "d3", "e1", "e2", "e3", "mu", "k"}},
    };
    return all;
}

bool is_numeric_fixture(const std::string& name) {
    const auto& all = numeric_fixtures();
    return std::any_of(all.begin(), all.end(), [&](const NumericFixture& f) { return f.name == name; });
}

NumericFixtureInstance make_numeric_fixture(const std::string& name, const std::map<std::string, double>& bindings) {
    const auto& all = numeric_fixtures();
    const auto it = std::find_if(all.begin(), all.end(), [&](const NumericFixture& f) { return f.name == name; });
    if (it == all.end()) throw DomainError("unknown numeric fixture '" + name + "'");

    std::map<std::string, double> values;
    const double fallback = bindings.count("*") ? bindings.at("*") : 1.0;
    for (const auto& p : it->parameters) values[p] = fallback;
    for (const auto& [key, v] : bindings) {
        if (key == "*") continue;
        if (!values.count(key)) throw DomainError("fixture " + name + " has no parameter '" + key + "'");
        values[key] = v;
    }
    for (const auto& [key, v] : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("parameter " + key + " must be positive");

    NumericFixtureInstance out;
    out.parameters = values;
    if (name == "mapk-thron") {
        ThronParameters target;
        for (std::size_t j = 0; j < 6; ++j) target.p[j] = values["p" + std::to_string(j + 1)];
        target.c0 = values["c0"];
        ThronParameters reference;
        reference.c0 = target.c0;
        out.system = thron_system(target);
        out.domain = std::make_shared<BoxDomain>(thron_box(target));
        out.homotopy = thron_parameter_homotopy(reference, target);
        out.homotopy_start = thron_reference_equilibrium(target.c0);
    } else {
        CascadeParameters target;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto s = std::to_string(i + 1);
            target.a[i] = values["a" + s];
            target.b[i] = values["b" + s];
            target.d[i] = values["d" + s];
            target.e[i] = values["e" + s];
        }
        target.mu = values["mu"];
        target.k = values["k"];
        out.system = cascade_system(target);
        out.domain = std::make_shared<BoxDomain>(unit_cube(3));
        // the reference zero is found numerically from the cube centre
        const CascadeParameters reference;
        const auto start = newton_solve(cascade_system(reference), Vector::Constant(3, 0.5));
        if (start.converged()) {
            out.homotopy = cascade_parameter_homotopy(reference, target);
            out.homotopy_start = start.x;
        }
    }
    return out;
}

} // namespace crn::numeric
