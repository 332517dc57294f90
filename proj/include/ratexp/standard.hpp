#pragma once

#include <optional>
#include <string>

#include "ratexp/automaton.hpp"
#include "ratexp/expr.hpp"

namespace ratexp {

/// An automaton with a single initial state (index 0, weight one) that no
/// transition enters.  Row 0 over the core states is the J block, the core
/// square is F, the initial final weight is the constant term c, and the
/// core final weights are U; the behaviour is c + J F* U.
template <Semiring S, Monoid M>
struct StandardAutomaton {
    WeightedAutomaton<S, M> aut;

    std::size_t core_size() const { return aut.size() - 1; }
    typename S::Weight constant() const { return aut.final_weights[0]; }
};

namespace detail {

template <Semiring S, Monoid M>
void renumber_states(WeightedAutomaton<S, M>& a) {
    for (std::size_t q = 0; q < a.size(); ++q) a.states[q] = std::to_string(q);
}

}  // namespace detail

template <Semiring S, Monoid M>
std::optional<std::string> not_standard(const StandardAutomaton<S, M>& a) {
    if (auto bad = a.aut.malformed()) return bad;
    if (a.aut.size() == 0) return "no initial state";
    if (!is_one<S>(a.aut.initial[0])) return "initial weight is not one";
    for (std::size_t q = 1; q < a.aut.size(); ++q)
        if (!is_zero<S>(a.aut.initial[q])) return "more than one initial state";
    for (std::size_t p = 0; p < a.aut.size(); ++p)
        if (!a.aut.transitions[p][0].empty()) return "a transition enters the initial state";
    return std::nullopt;
}

template <Semiring S, Monoid M>
StandardAutomaton<S, M> standard_zero() {
    auto a = WeightedAutomaton<S, M>::with_size(1);
    a.initial[0] = S::one();
    detail::renumber_states(a);
    return {std::move(a)};
}

template <Semiring S, Monoid M>
StandardAutomaton<S, M> standard_one() {
    auto a = standard_zero<S, M>();
    a.aut.final_weights[0] = S::one();
    return a;
}

/// Two states, one transition labelled by the (proper) element.
template <Semiring S, Monoid M>
StandardAutomaton<S, M> standard_atom(const typename M::Element& m) {
    auto a = WeightedAutomaton<S, M>::with_size(2);
    a.initial[0] = S::one();
    a.transitions[0][1] = Polynomial<S, M>::monomial(m, S::one());
    a.final_weights[1] = S::one();
    detail::renumber_states(a);
    return {std::move(a)};
}

/// <k.J, F, k.c, U>
template <Semiring S, Monoid M>
StandardAutomaton<S, M> scale_left(const typename S::Weight& k, StandardAutomaton<S, M> a) {
    for (std::size_t q = 1; q < a.aut.size(); ++q)
        a.aut.transitions[0][q] = scale_left(k, a.aut.transitions[0][q]);
    a.aut.final_weights[0] = S::mul(k, a.aut.final_weights[0]);
    return a;
}

/// <J, F, c.k, U.k>
template <Semiring S, Monoid M>
StandardAutomaton<S, M> scale_right(StandardAutomaton<S, M> a, const typename S::Weight& k) {
    for (std::size_t q = 0; q < a.aut.size(); ++q)
        a.aut.final_weights[q] = S::mul(a.aut.final_weights[q], k);
    return a;
}

/// Merged initial state, block-diagonal cores, c+d at the initial state.
template <Semiring S, Monoid M>
StandardAutomaton<S, M> sum(const StandardAutomaton<S, M>& a, const StandardAutomaton<S, M>& b) {
    std::size_t na = a.core_size(), nb = b.core_size();
    auto out = WeightedAutomaton<S, M>::with_size(1 + na + nb);
    out.initial[0] = S::one();
    out.final_weights[0] = S::add(a.constant(), b.constant());
    for (std::size_t i = 0; i < na; ++i) {
        out.transitions[0][1 + i] = a.aut.transitions[0][1 + i];
        out.final_weights[1 + i] = a.aut.final_weights[1 + i];
        for (std::size_t j = 0; j < na; ++j)
            out.transitions[1 + i][1 + j] = a.aut.transitions[1 + i][1 + j];
    }
    for (std::size_t i = 0; i < nb; ++i) {
        out.transitions[0][1 + na + i] = b.aut.transitions[0][1 + i];
        out.final_weights[1 + na + i] = b.aut.final_weights[1 + i];
        for (std::size_t j = 0; j < nb; ++j)
            out.transitions[1 + na + i][1 + na + j] = b.aut.transitions[1 + i][1 + j];
    }
    detail::renumber_states(out);
    return {std::move(out)};
}

/// Initial row (J  c.K), middle block U.K, finals (c.d; U.d; V).
template <Semiring S, Monoid M>
StandardAutomaton<S, M> product(const StandardAutomaton<S, M>& a,
                                const StandardAutomaton<S, M>& b) {
    std::size_t na = a.core_size(), nb = b.core_size();
    auto out = WeightedAutomaton<S, M>::with_size(1 + na + nb);
    out.initial[0] = S::one();
    out.final_weights[0] = S::mul(a.constant(), b.constant());
    for (std::size_t i = 0; i < na; ++i) {
        out.transitions[0][1 + i] = a.aut.transitions[0][1 + i];
        out.final_weights[1 + i] = S::mul(a.aut.final_weights[1 + i], b.constant());
        for (std::size_t j = 0; j < na; ++j)
            out.transitions[1 + i][1 + j] = a.aut.transitions[1 + i][1 + j];
        for (std::size_t j = 0; j < nb; ++j)
            out.transitions[1 + i][1 + na + j] =
                scale_left(a.aut.final_weights[1 + i], b.aut.transitions[0][1 + j]);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        out.transitions[0][1 + na + j] = scale_left(a.constant(), b.aut.transitions[0][1 + j]);
        out.final_weights[1 + na + j] = b.aut.final_weights[1 + j];
        for (std::size_t j2 = 0; j2 < nb; ++j2)
            out.transitions[1 + na + j][1 + na + j2] = b.aut.transitions[1 + j][1 + j2];
    }
    detail::renumber_states(out);
    return {std::move(out)};
}

/// <c*.J, U.c*.J + F, c*, U.c*>; defined when c is starrable, and fails
/// eagerly otherwise, mirroring expression validity.
template <Semiring S, Monoid M>
StandardAutomaton<S, M> star(const StandardAutomaton<S, M>& a) {
    auto c_star = S::star(a.constant());
    if (!c_star)
        throw ValidityError("constant term " + S::str(a.constant()) + " is not starrable");
    std::size_t n = a.core_size();
    auto out = WeightedAutomaton<S, M>::with_size(1 + n);
    out.initial[0] = S::one();
    out.final_weights[0] = *c_star;
    for (std::size_t j = 0; j < n; ++j)
        out.transitions[0][1 + j] = scale_left(*c_star, a.aut.transitions[0][1 + j]);
    for (std::size_t i = 0; i < n; ++i) {
        out.final_weights[1 + i] = S::mul(a.aut.final_weights[1 + i], *c_star);
        auto u_cstar = S::mul(a.aut.final_weights[1 + i], *c_star);
        for (std::size_t j = 0; j < n; ++j)
            out.transitions[1 + i][1 + j] =
                add(a.aut.transitions[1 + i][1 + j],
                    scale_left(u_cstar, a.aut.transitions[0][1 + j]));
    }
    detail::renumber_states(out);
    return {std::move(out)};
}

namespace detail {

template <Semiring S, Monoid M>
StandardAutomaton<S, M> position_rec(ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    switch (e->kind) {
        case Kind::zero:
            return standard_zero<S, M>();
        case Kind::one:
            return standard_one<S, M>();
        case Kind::atom:
            return standard_atom<S, M>(e->element);
        case Kind::left_scale:
            return scale_left(e->scale, position_rec<S, M>(e->left));
        case Kind::right_scale:
            return scale_right(position_rec<S, M>(e->left), e->scale);
        case Kind::sum:
            return sum(position_rec<S, M>(e->left), position_rec<S, M>(e->right));
        case Kind::product:
            return product(position_rec<S, M>(e->left), position_rec<S, M>(e->right));
        case Kind::star:
            return star(position_rec<S, M>(e->left));
    }
    return standard_zero<S, M>();
}

}  // namespace detail

/// The position (Glushkov) automaton, by structural induction with the
/// five operations above; dimension is literal_length(e) + 1.
template <Semiring S, Monoid M>
StandardAutomaton<S, M> position_automaton(ExprRef<S, M> e) {
    require_valid<S, M>(e);
    return detail::position_rec<S, M>(e);
}

}  // namespace ratexp
