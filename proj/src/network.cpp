#include "crn/network.hpp"

#include "crn/errors.hpp"
#include "crn/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace crn {

// ---------------------------------------------------------------------------
// Complex / Reaction

void Complex::add(SpeciesIndex s, std::uint32_t coefficient) {
    if (coefficient == 0) throw NetworkError("stoichiometric coefficients must be positive");
    auto& slot = coefficients_[s];
    if (slot > std::numeric_limits<std::uint32_t>::max() - coefficient)
        throw NetworkError("stoichiometric coefficient overflows 32 bits");
    slot += coefficient;
}

std::uint32_t Complex::coefficient(SpeciesIndex s) const {
    auto it = coefficients_.find(s);
    return it == coefficients_.end() ? 0 : it->second;
}

std::vector<SpeciesIndex> Complex::support() const {
    std::vector<SpeciesIndex> out;
    out.reserve(coefficients_.size());
    for (const auto& [s, _] : coefficients_) out.push_back(s);
    return out;
}

bool Complex::is_unit_species() const {
    return coefficients_.size() == 1 && coefficients_.begin()->second == 1;
}

bool same_reaction(const Reaction& a, const Reaction& b) {
    if (a.source != b.source || a.target != b.target) return false;
    if (a.kinetics.index() != b.kinetics.index()) return false;
    if (const auto* ma = std::get_if<MassAction>(&a.kinetics)) {
        return ma->rate_constant == std::get<MassAction>(b.kinetics).rate_constant;
    }
    const auto& ga = std::get<GeneralMonotone>(a.kinetics);
    const auto& gb = std::get<GeneralMonotone>(b.kinetics);
    return ga.partial_signs == gb.partial_signs && ga.monotonicity == gb.monotonicity;
}

GeneralMonotone consumptively_increasing(const Complex& source) {
    GeneralMonotone g;
    for (auto s : source.support()) g.partial_signs[s] = Sign::positive;
    g.monotonicity = Monotonicity::consumptively_increasing;
    return g;
}

FlowKind flow_kind(const Reaction& r) {
    if (r.source.empty() && r.target.is_unit_species()) return FlowKind::inflow;
    if (r.target.empty() && r.source.is_unit_species()) return FlowKind::outflow;
    return FlowKind::none;
}

FlowAugmentation FlowAugmentation::uniform(std::size_t n, double inflow, double outflow) {
    return FlowAugmentation{std::vector<double>(n, inflow), std::vector<double>(n, outflow)};
}

void FlowAugmentation::validate(std::size_t n) const {
    if (inflow.size() != n || outflow.size() != n)
        throw DomainError("flow vectors must have one entry per species (" + std::to_string(n) + ")");
    for (std::size_t j = 0; j < n; ++j) {
        if (!(inflow[j] > 0.0) || !std::isfinite(inflow[j]))
            throw DomainError("inflow entry " + std::to_string(j) + " must be strictly positive");
        if (!(outflow[j] > 0.0) || !std::isfinite(outflow[j]))
            throw DomainError("outflow entry " + std::to_string(j) + " must be strictly positive");
    }
}

// ---------------------------------------------------------------------------
// ReactionNetwork

namespace {

void validate_kinetics(const Reaction& r, std::size_t n, std::size_t index) {
    const std::string where = "reaction " + std::to_string(index + 1);
    if (const auto* ma = std::get_if<MassAction>(&r.kinetics)) {
        if (ma->rate_constant && (!(*ma->rate_constant > 0.0) || !std::isfinite(*ma->rate_constant)))
            throw KineticsError(where + ": mass-action rate constant must be positive");
        return;
    }
    const auto& g = std::get<GeneralMonotone>(r.kinetics);
    for (const auto& [s, sign] : g.partial_signs) {
        if (s >= n) throw KineticsError(where + ": dependency on an unknown species");
        (void)sign;
    }
    if (g.monotonicity == Monotonicity::consumptively_increasing) {
        const auto support = r.source.support();
        std::vector<SpeciesIndex> deps;
        for (const auto& [s, sign] : g.partial_signs) {
            if (sign != Sign::positive)
                throw KineticsError(where + ": consumptively increasing kinetics need positive partials");
            deps.push_back(s);
        }
        if (deps != support)
            throw KineticsError(where + ": consumptively increasing kinetics must depend on exactly the reactants");
    }
}

} // namespace

ReactionNetwork::ReactionNetwork(std::vector<std::string> species_names, std::vector<Reaction> reactions)
    : reactions_(std::move(reactions)) {
    std::set<std::string> seen;
    species_.reserve(species_names.size());
    for (std::size_t i = 0; i < species_names.size(); ++i) {
        if (species_names[i].empty()) throw NetworkError("species names must be nonempty");
        if (!seen.insert(species_names[i]).second)
            throw NetworkError("duplicate species name '" + species_names[i] + "'");
        species_.push_back(Species{std::move(species_names[i]), i});
    }
    if (reactions_.empty()) throw NetworkError("a reaction network needs at least one reaction");

    const std::size_t n = species_.size();
    std::vector<bool> used(n, false);
    for (std::size_t r = 0; r < reactions_.size(); ++r) {
        const auto& rx = reactions_[r];
        for (const Complex* c : {&rx.source, &rx.target}) {
            for (const auto& [s, coeff] : c->terms()) {
                if (s >= n) throw NetworkError("reaction " + std::to_string(r + 1) + " uses an unknown species");
                if (coeff == 0) throw NetworkError("zero stoichiometric coefficient");
                used[s] = true;
            }
        }
        if (rx.source == rx.target)
            throw NetworkError("reaction " + std::to_string(r + 1) + " has identical source and target");
        validate_kinetics(rx, n, r);
    }
    for (std::size_t s = 0; s < n; ++s)
        if (!used[s]) throw NetworkError("species '" + species_[s].name + "' appears in no complex");
}

std::optional<SpeciesIndex> ReactionNetwork::find_species(std::string_view name) const {
    for (const auto& s : species_)
        if (s.name == name) return s.index;
    return std::nullopt;
}

std::vector<Complex> ReactionNetwork::complexes() const {
    std::vector<Complex> out;
    for (const auto& r : reactions_)
        for (const Complex* c : {&r.source, &r.target})
            if (std::find(out.begin(), out.end(), *c) == out.end()) out.push_back(*c);
    return out;
}

bool ReactionNetwork::has_flows() const {
    return std::any_of(reactions_.begin(), reactions_.end(),
                       [](const Reaction& r) { return flow_kind(r) != FlowKind::none; });
}

bool ReactionNetwork::fully_augmented() const {
    std::vector<int> in(species_.size(), 0), out(species_.size(), 0);
    for (const auto& r : reactions_) {
        switch (flow_kind(r)) {
        case FlowKind::inflow: ++in[r.target.terms().begin()->first]; break;
        case FlowKind::outflow: ++out[r.source.terms().begin()->first]; break;
        case FlowKind::none: break;
        }
    }
    for (std::size_t s = 0; s < species_.size(); ++s)
        if (in[s] != 1 || out[s] != 1) return false;
    return true;
}

ReactionNetwork ReactionNetwork::without_flows() const {
    std::vector<Reaction> core;
    for (const auto& r : reactions_)
        if (flow_kind(r) == FlowKind::none) core.push_back(r);
    std::vector<std::string> names;
    for (const auto& s : species_) names.push_back(s.name);
    return ReactionNetwork(std::move(names), std::move(core));
}

std::string ReactionNetwork::complex_label(const Complex& c) const {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [s, coeff] : c.terms()) {
        if (!out.empty()) out += "+";
        if (coeff != 1) out += std::to_string(coeff);
        out += species_.at(s).name;
    }
    return out;
}

std::string ReactionNetwork::reaction_label(std::size_t r) const {
    const auto& rx = reactions_.at(r);
    return complex_label(rx.source) + "->" + complex_label(rx.target);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

/// Complex as (species name, coefficient) pairs in textual order.
using RawComplex = std::vector<std::pair<std::string, std::uint32_t>>;

RawComplex parse_complex(std::string_view text, std::size_t line) {
    text = trim(text);
    if (text.empty()) throw ParseError(line, "missing complex");
    if (text == "0") return {};
    RawComplex out;
    for (auto part : split(text, '+')) {
        part = trim(part);
        if (part.empty()) throw ParseError(line, "empty term in complex '" + std::string(text) + "'");
        if (part.front() == '-') throw ParseError(line, "negative stoichiometric coefficient in '" + std::string(part) + "'");
        std::size_t digits = 0;
        while (digits < part.size() && std::isdigit(static_cast<unsigned char>(part[digits]))) ++digits;
        std::uint32_t coeff = 1;
        if (digits > 0) {
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + digits, value);
            if (ec != std::errc() || value > std::numeric_limits<std::uint32_t>::max())
                throw ParseError(line, "stoichiometric coefficient out of range in '" + std::string(part) + "'");
            if (value == 0) throw ParseError(line, "zero stoichiometric coefficient in '" + std::string(part) + "'");
            coeff = static_cast<std::uint32_t>(value);
        }
        const auto name = trim(part.substr(digits));
        if (!is_identifier(name)) throw ParseError(line, "invalid species term '" + std::string(part) + "'");
        out.emplace_back(std::string(name), coeff);
    }
    return out;
}

struct RawAnnotations {
    std::vector<double> rate_constants;
    bool general = false;
    std::optional<std::vector<std::string>> deps;
    std::optional<std::vector<std::pair<std::string, Sign>>> signs;
};

double parse_positive_decimal(std::string_view s, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
        throw ParseError(line, "invalid rate constant '" + std::string(s) + "'");
    if (!(value > 0.0)) throw ParseError(line, "rate constant must be positive, got '" + std::string(s) + "'");
    return value;
}

RawAnnotations parse_annotations(std::string_view text, std::size_t line) {
    RawAnnotations out;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        const std::string key = eq == std::string::npos ? token : token.substr(0, eq);
        const std::string_view value = eq == std::string::npos ? std::string_view{} : std::string_view(token).substr(eq + 1);
        if (key == "k" && eq != std::string::npos) {
            out.rate_constants.push_back(parse_positive_decimal(value, line));
        } else if (key == "kinetics" && value == "general") {
            out.general = true;
        } else if (key == "kinetics" && value == "mass-action") {
            out.general = false;
        } else if (key == "deps" && eq != std::string::npos) {
            std::vector<std::string> deps;
            for (auto d : split(value, ',')) {
                if (!is_identifier(d)) throw ParseError(line, "invalid dependency '" + std::string(d) + "'");
                deps.emplace_back(d);
            }
            out.deps = std::move(deps);
        } else if (key == "signs" && eq != std::string::npos) {
            std::vector<std::pair<std::string, Sign>> signs;
            for (auto d : split(value, ',')) {
                if (d.size() < 2 || (d[0] != '+' && d[0] != '-') || !is_identifier(d.substr(1)))
                    throw ParseError(line, "invalid signed dependency '" + std::string(d) + "'");
                signs.emplace_back(std::string(d.substr(1)), d[0] == '+' ? Sign::positive : Sign::negative);
            }
            out.signs = std::move(signs);
        } else {
            throw ParseError(line, "unknown kinetics annotation '" + token + "'");
        }
    }
    if (!out.general && (out.deps || out.signs))
        throw ParseError(line, "deps= and signs= require kinetics=general");
    if (out.general && !out.rate_constants.empty())
        throw ParseError(line, "k= cannot be combined with kinetics=general");
    return out;
}

struct RawReaction {
    RawComplex source;
    RawComplex target;
    RawAnnotations annotations;
    bool reversed = false;
    std::size_t line = 0;
};

} // namespace

ReactionNetwork parse_network(std::string_view text) {
    std::vector<RawReaction> raw;
    std::vector<std::string> names;
    auto note_species = [&](const RawComplex& c) {
        for (const auto& [name, _] : c)
            if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    };

    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::string_view body = line;
        std::string_view annotation_text;
        if (auto semi = line.find(';'); semi != std::string_view::npos) {
            body = line.substr(0, semi);
            annotation_text = line.substr(semi + 1);
        }
        bool reversible = false;
        std::size_t arrow = body.find("<->");
        std::size_t arrow_len = 3;
        if (arrow != std::string_view::npos) {
            reversible = true;
        } else {
            arrow = body.find("->");
            arrow_len = 2;
        }
        if (arrow == std::string_view::npos) throw ParseError(line_no, "expected '->' or '<->'");
        if (body.find("->", arrow + arrow_len) != std::string_view::npos)
            throw ParseError(line_no, "more than one arrow on a line");

        RawReaction forward;
        forward.line = line_no;
        forward.source = parse_complex(body.substr(0, arrow), line_no);
        forward.target = parse_complex(body.substr(arrow + arrow_len), line_no);
        forward.annotations = parse_annotations(annotation_text, line_no);
        note_species(forward.source);
        note_species(forward.target);

        auto& ks = forward.annotations.rate_constants;
        if (!reversible && ks.size() > 1) throw ParseError(line_no, "more than one k= on an irreversible reaction");
        if (reversible && !(ks.empty() || ks.size() == 2))
            throw ParseError(line_no, "a reversible reaction takes either no k= or exactly two (forward, reverse)");
        if (reversible && (forward.annotations.deps || forward.annotations.signs))
            throw ParseError(line_no, "deps= and signs= are only allowed on irreversible reactions");

        if (reversible) {
            RawReaction backward = forward;
            std::swap(backward.source, backward.target);
            backward.reversed = true;
            if (!ks.empty()) {
                backward.annotations.rate_constants = {ks[1]};
                ks.resize(1);
            }
            raw.push_back(std::move(forward));
            raw.push_back(std::move(backward));
        } else {
            raw.push_back(std::move(forward));
        }
    }
    if (raw.empty()) throw ParseError(0, "no reactions in network text");

    auto index_of = [&](const std::string& name, std::size_t line) -> SpeciesIndex {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw ParseError(line, "unknown species '" + name + "' in annotation");
        return static_cast<SpeciesIndex>(it - names.begin());
    };

    std::vector<Reaction> reactions;
    reactions.reserve(raw.size());
    for (const auto& rr : raw) {
        Reaction r;
        for (const auto& [name, coeff] : rr.source) r.source.add(index_of(name, rr.line), coeff);
        for (const auto& [name, coeff] : rr.target) r.target.add(index_of(name, rr.line), coeff);
        if (r.source == r.target) throw ParseError(rr.line, "reaction has identical source and target");

        const auto& ann = rr.annotations;
        if (!ann.general) {
            MassAction ma;
            if (!ann.rate_constants.empty()) ma.rate_constant = ann.rate_constants.front();
            r.kinetics = ma;
        } else {
            GeneralMonotone g;
            if (ann.deps) {
                for (const auto& d : *ann.deps) g.partial_signs[index_of(d, rr.line)] = Sign::unknown;
            } else {
                for (auto s : r.source.support()) g.partial_signs[s] = Sign::positive;
            }
            if (ann.signs) {
                if (!ann.deps) {
                    // explicit signs replace the default dependency set
                    g.partial_signs.clear();
                }
                for (const auto& [name, sign] : *ann.signs) {
                    const auto s = index_of(name, rr.line);
                    if (ann.deps && !g.partial_signs.count(s))
                        throw ParseError(rr.line, "signed species '" + name + "' is not listed in deps=");
                    g.partial_signs[s] = sign;
                }
            }
            std::vector<SpeciesIndex> deps;
            bool all_positive = true;
            for (const auto& [s, sign] : g.partial_signs) {
                deps.push_back(s);
                all_positive = all_positive && sign == Sign::positive;
            }
            g.monotonicity = (all_positive && deps == r.source.support()) ? Monotonicity::consumptively_increasing
                                                                          : Monotonicity::strictly_monotone;
            r.kinetics = std::move(g);
        }
        reactions.push_back(std::move(r));
    }

    try {
        return ReactionNetwork(std::move(names), std::move(reactions));
    } catch (const NetworkError& e) {
        throw ParseError(0, e.what());
    } catch (const KineticsError& e) {
        throw ParseError(0, e.what());
    }
}

std::optional<std::size_t> ReactionNetwork::find_reaction(std::string_view label) const {
    auto arrow = label.find("->");
    if (arrow == std::string_view::npos) return std::nullopt;
    Complex source, target;
    try {
        for (const auto& [name, coeff] : parse_complex(label.substr(0, arrow), 0)) {
            auto s = find_species(name);
            if (!s) return std::nullopt;
            source.add(*s, coeff);
        }
        for (const auto& [name, coeff] : parse_complex(label.substr(arrow + 2), 0)) {
            auto s = find_species(name);
            if (!s) return std::nullopt;
            target.add(*s, coeff);
        }
    } catch (const ParseError&) {
        return std::nullopt;
    }
    for (std::size_t r = 0; r < reactions_.size(); ++r)
        if (reactions_[r].source == source && reactions_[r].target == target) return r;
    return std::nullopt;
}

bool structurally_equal(const ReactionNetwork& a, const ReactionNetwork& b) {
    if (a.species() != b.species() || a.reaction_count() != b.reaction_count()) return false;
    for (std::size_t r = 0; r < a.reaction_count(); ++r)
        if (!same_reaction(a.reaction(r), b.reaction(r))) return false;
    return true;
}

std::string serialize(const ReactionNetwork& net) {
    std::string out;
    char buffer[64];
    for (std::size_t r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reaction(r);
        out += net.complex_label(rx.source) + " -> " + net.complex_label(rx.target);
        if (const auto* ma = std::get_if<MassAction>(&rx.kinetics)) {
            if (ma->rate_constant) {
                std::snprintf(buffer, sizeof buffer, "%.17g", *ma->rate_constant);
                out += std::string(" ; k=") + buffer;
            }
        } else {
            const auto& g = std::get<GeneralMonotone>(rx.kinetics);
            out += " ; kinetics=general deps=";
            std::string signs;
            bool first = true;
            for (const auto& [s, sign] : g.partial_signs) {
                if (!first) out += ",";
                out += net.species()[s].name;
                first = false;
                if (sign != Sign::unknown) {
                    if (!signs.empty()) signs += ",";
                    signs += (sign == Sign::positive ? "+" : "-") + net.species()[s].name;
                }
            }
            if (!signs.empty()) out += " signs=" + signs;
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stoichiometry and flows

std::vector<std::vector<std::int64_t>> reaction_vectors(const ReactionNetwork& net) {
    const std::size_t n = net.species_count();
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(net.reaction_count());
    for (const auto& r : net.reactions()) {
        std::vector<std::int64_t> v(n, 0);
        for (const auto& [s, c] : r.target.terms()) v[s] += c;
        for (const auto& [s, c] : r.source.terms()) v[s] -= c;
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t stoichiometric_rank(const ReactionNetwork& net) {
    RationalMatrix m;
    for (const auto& v : reaction_vectors(net)) {
        std::vector<Rational> row;
        row.reserve(v.size());
        for (auto x : v) row.emplace_back(x);
        m.push_back(std::move(row));
    }
    return rank(std::move(m));
}

namespace {

void append_flows(std::vector<Reaction>& reactions, const FlowAugmentation& flows) {
    const std::size_t n = flows.inflow.size();
    for (std::size_t j = 0; j < n; ++j) {
        Reaction in;
        in.target.add(j, 1);
        in.kinetics = MassAction{flows.inflow[j]};
        reactions.push_back(std::move(in));
    }
    for (std::size_t j = 0; j < n; ++j) {
        Reaction out;
        out.source.add(j, 1);
        out.kinetics = MassAction{flows.outflow[j]};
        reactions.push_back(std::move(out));
    }
}

} // namespace

ReactionNetwork augment_with_flows(const ReactionNetwork& net, const FlowAugmentation& flows) {
    flows.validate(net.species_count());
    if (net.has_flows()) throw NetworkError("network already contains inflow/outflow reactions");
    std::vector<Reaction> reactions = net.reactions();
    append_flows(reactions, flows);
    std::vector<std::string> names;
    for (const auto& s : net.species()) names.push_back(s.name);
    return ReactionNetwork(std::move(names), std::move(reactions));
}

ReactionNetwork flow_only_network(std::vector<std::string> species_names, const FlowAugmentation& flows) {
    flows.validate(species_names.size());
    std::vector<Reaction> reactions;
    append_flows(reactions, flows);
    return ReactionNetwork(std::move(species_names), std::move(reactions));
}

FlowAugmentation extract_flows(const ReactionNetwork& net) {
    if (!net.fully_augmented()) throw NetworkError("network is not fully augmented with flows");
    const std::size_t n = net.species_count();
    FlowAugmentation flows{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t r = 0; r < net.reaction_count(); ++r) {
        const auto& rx = net.reaction(r);
        const auto kind = flow_kind(rx);
        if (kind == FlowKind::none) continue;
        const auto* ma = std::get_if<MassAction>(&rx.kinetics);
        if (!ma || !ma->rate_constant)
            throw MissingBinding("flow reaction " + net.reaction_label(r) + " needs a numeric mass-action constant");
        if (kind == FlowKind::inflow) flows.inflow[rx.target.terms().begin()->first] = *ma->rate_constant;
        else flows.outflow[rx.source.terms().begin()->first] = *ma->rate_constant;
    }
    return flows;
}

ReactionNetwork with_general_kinetics(const ReactionNetwork& net) {
    std::vector<Reaction> reactions = net.reactions();
    for (auto& r : reactions)
        if (flow_kind(r) == FlowKind::none && std::holds_alternative<MassAction>(r.kinetics))
            r.kinetics = consumptively_increasing(r.source);
    std::vector<std::string> names;
    for (const auto& s : net.species()) names.push_back(s.name);
    return ReactionNetwork(std::move(names), std::move(reactions));
}

} // namespace crn
