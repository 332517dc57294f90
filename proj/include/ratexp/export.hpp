#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ratexp/automaton.hpp"

namespace ratexp {

namespace detail {

/// State display names, suffixed with #k on repetition so that the JSON
/// maps keyed by name stay unambiguous.
template <Semiring S, Monoid M>
std::vector<std::string> unique_state_names(const WeightedAutomaton<S, M>& a) {
    std::vector<std::string> names = a.states;
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::size_t duplicate = 1;
        for (std::size_t j = 0; j < i; ++j)
            if (a.states[j] == a.states[i]) ++duplicate;
        if (duplicate > 1) names[i] += "#" + std::to_string(duplicate);
    }
    return names;
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

template <Semiring S, Monoid M>
nlohmann::json to_json(const WeightedAutomaton<S, M>& a) {
    auto names = detail::unique_state_names(a);
    nlohmann::json out;
    out["states"] = names;
    out["initial"] = nlohmann::json::object();
    out["final"] = nlohmann::json::object();
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (!is_zero<S>(a.initial[q])) out["initial"][names[q]] = S::str(a.initial[q]);
        if (!is_zero<S>(a.final_weights[q])) out["final"][names[q]] = S::str(a.final_weights[q]);
    }
    out["transitions"] = nlohmann::json::array();
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = 0; q < a.size(); ++q)
            for (const auto& [label, w] : a.transitions[p][q].terms())
                out["transitions"].push_back({{"from", names[p]},
                                              {"to", names[q]},
                                              {"weight", S::str(w)},
                                              {"label", M::atom_str(label)}});
    return out;
}

/// One node per state (doublecircle when final, weight annotated when not
/// one), an entry arrow per initial state, one edge per monomial.
template <Semiring S, Monoid M>
std::string to_dot(const WeightedAutomaton<S, M>& a) {
    auto names = detail::unique_state_names(a);
    std::string out = "digraph automaton {\n  rankdir = LR;\n  node [shape = circle];\n";
    for (std::size_t q = 0; q < a.size(); ++q) {
        out += "  n" + std::to_string(q) + " [label = \"" + detail::dot_escape(names[q]) + "\"";
        if (!is_zero<S>(a.final_weights[q])) {
            out += ", shape = doublecircle";
            if (!is_one<S>(a.final_weights[q]))
                out += ", xlabel = \"" + detail::dot_escape(S::str(a.final_weights[q])) + "\"";
        }
        out += "];\n";
    }
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (is_zero<S>(a.initial[q])) continue;
        out += "  i" + std::to_string(q) + " [shape = point, style = invis];\n";
        out += "  i" + std::to_string(q) + " -> n" + std::to_string(q);
        if (!is_one<S>(a.initial[q]))
            out += " [label = \"" + detail::dot_escape(S::str(a.initial[q])) + "\"]";
        out += ";\n";
    }
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = 0; q < a.size(); ++q)
            for (const auto& [label, w] : a.transitions[p][q].terms())
                out += "  n" + std::to_string(p) + " -> n" + std::to_string(q) + " [label = \"" +
                       detail::dot_escape(monomial_str<S, M>(label, w)) + "\"];\n";
    out += "}\n";
    return out;
}

template <Semiring S, Monoid M>
std::string to_text(const WeightedAutomaton<S, M>& a) {
    auto names = detail::unique_state_names(a);
    std::string out = "states " + std::to_string(a.size()) + "\n";
    for (std::size_t q = 0; q < a.size(); ++q) {
        out += "state " + std::to_string(q) + "\t" + names[q];
        if (!is_zero<S>(a.initial[q])) out += "\tinitial " + S::str(a.initial[q]);
        if (!is_zero<S>(a.final_weights[q])) out += "\tfinal " + S::str(a.final_weights[q]);
        out += "\n";
    }
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = 0; q < a.size(); ++q)
            for (const auto& [label, w] : a.transitions[p][q].terms())
                out += std::to_string(p) + " -> " + std::to_string(q) + "\t" + S::str(w) + "\t" +
                       M::atom_str(label) + "\n";
    return out;
}

}  // namespace ratexp
