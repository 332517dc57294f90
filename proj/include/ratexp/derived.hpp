#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ratexp/standard.hpp"

namespace ratexp {

/// Right-multiplication of a derived term, collapsing the trivial unit:
/// 1.G is G.  This is the only rewriting performed anywhere; everything
/// else is strict structural identity on interned nodes.
template <Semiring S, Monoid M>
ExprRef<S, M> right_multiply(ExprPool<S, M>& pool, ExprRef<S, M> k, ExprRef<S, M> g) {
    return k->kind == Expr<S, M>::Kind::one ? g : pool.product(k, g);
}

namespace detail {

template <Semiring S, Monoid M>
void push_unique(std::vector<ExprRef<S, M>>& terms, ExprRef<S, M> e) {
    if (std::find(terms.begin(), terms.end(), e) == terms.end()) terms.push_back(e);
}

}  // namespace detail

/// The set of derived terms, in construction order: left operand's terms
/// first, preserving sub-order.  Validity is not required.
template <Semiring S, Monoid M>
std::vector<ExprRef<S, M>> derived_terms(ExprPool<S, M>& pool, ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    std::vector<ExprRef<S, M>> out;
    switch (e->kind) {
        case Kind::zero:
        case Kind::one:
            break;
        case Kind::atom:
            out.push_back(pool.one());
            break;
        case Kind::left_scale:
            out = derived_terms(pool, e->left);
            break;
        case Kind::right_scale:
            for (auto k : derived_terms(pool, e->left))
                out.push_back(pool.right_scale(k, e->scale));
            break;
        case Kind::sum:
            out = derived_terms(pool, e->left);
            for (auto k : derived_terms(pool, e->right)) detail::push_unique(out, k);
            break;
        case Kind::product:
            for (auto k : derived_terms(pool, e->left))
                out.push_back(right_multiply(pool, k, e->right));
            for (auto k : derived_terms(pool, e->right)) detail::push_unique(out, k);
            break;
        case Kind::star:
            for (auto k : derived_terms(pool, e->left))
                out.push_back(right_multiply(pool, k, e));
            break;
    }
    return out;
}

/// Polynomial-valued vector indexed by derived terms; absent entries are
/// zero.  Entry order follows the derived-term construction order.
template <Semiring S, Monoid M>
class LinearForm {
public:
    using Entry = std::pair<ExprRef<S, M>, Polynomial<S, M>>;

    const std::vector<Entry>& entries() const { return entries_; }

    const Polynomial<S, M>& at(ExprRef<S, M> term) const {
        static const Polynomial<S, M> zero{};
        for (const auto& [t, p] : entries_)
            if (t == term) return p;
        return zero;
    }

    void add_entry(ExprRef<S, M> term, Polynomial<S, M> p) {
        if (p.empty()) return;
        for (auto& [t, q] : entries_) {
            if (t == term) {
                q = add(q, p);
                if (q.empty())
                    entries_.erase(std::find_if(entries_.begin(), entries_.end(),
                                                [&](const Entry& x) { return x.first == term; }));
                return;
            }
        }
        entries_.push_back({term, std::move(p)});
    }

private:
    std::vector<Entry> entries_;
};

/// The vector N(E): initial row and matrix rows of the standard
/// derived-term automaton.  Requires constant terms at star and product.
template <Semiring S, Monoid M>
LinearForm<S, M> linear_form(ExprPool<S, M>& pool, ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    LinearForm<S, M> out;
    switch (e->kind) {
        case Kind::zero:
        case Kind::one:
            break;
        case Kind::atom:
            out.add_entry(pool.one(), Polynomial<S, M>::monomial(e->element, S::one()));
            break;
        case Kind::left_scale: {
            auto sub = linear_form(pool, e->left);
            for (const auto& [t, p] : sub.entries())
                out.add_entry(t, scale_left(e->scale, p));
            break;
        }
        case Kind::right_scale: {
            auto sub = linear_form(pool, e->left);
            for (const auto& [t, p] : sub.entries())
                out.add_entry(pool.right_scale(t, e->scale), p);
            break;
        }
        case Kind::sum: {
            auto lhs = linear_form(pool, e->left);
            for (const auto& [t, p] : lhs.entries()) out.add_entry(t, p);
            auto rhs = linear_form(pool, e->right);
            for (const auto& [t, p] : rhs.entries()) out.add_entry(t, p);
            break;
        }
        case Kind::product: {
            auto c = require_valid<S, M>(e->left);
            auto lhs = linear_form(pool, e->left);
            for (const auto& [t, p] : lhs.entries())
                out.add_entry(right_multiply(pool, t, e->right), p);
            auto rhs = linear_form(pool, e->right);
            for (const auto& [t, p] : rhs.entries())
                out.add_entry(t, scale_left(c, p));
            break;
        }
        case Kind::star: {
            auto c = require_valid<S, M>(e->left);
            auto c_star = S::star(c);
            if (!c_star)
                throw ValidityError("expression is not valid: constant term " + S::str(c) +
                                    " of '" + print<S, M>(e->left) + "' is not starrable");
            auto sub = linear_form(pool, e->left);
            for (const auto& [t, p] : sub.entries())
                out.add_entry(right_multiply(pool, t, e), scale_left(*c_star, p));
            break;
        }
    }
    return out;
}

/// A standard derived-term automaton T_E (or, after the final merge, the
/// derived-term automaton D_E), its state terms, and the surjection from
/// the position automaton recorded along the construction.  The
/// amalgamation matrix of `from_standard` is a conjugacy witness
/// S_E => this automaton.
template <Semiring S, Monoid M>
struct DerivedTermAutomaton {
    WeightedAutomaton<S, M> aut;
    std::vector<ExprRef<S, M>> terms;  // D(E), construction order
    bool initial_merged = false;       // true: D_E with E merged into its term
    StateMap from_standard;
};

/// Claims 1-3 of the construction, checkable on any standard-form result:
/// the initial row is N(E), final weights are constant terms, and the row
/// of every term K is N(K).
template <Semiring S, Monoid M>
std::optional<std::string> claims_diagnostic(ExprPool<S, M>& pool,
                                             const WeightedAutomaton<S, M>& aut,
                                             const std::vector<ExprRef<S, M>>& terms,
                                             ExprRef<S, M> e) {
    auto check_row = [&](std::size_t row, ExprRef<S, M> source) -> std::optional<std::string> {
        auto form = linear_form(pool, source);
        std::size_t matched = 0;
        for (std::size_t j = 0; j < terms.size(); ++j) {
            const auto& expected = form.at(terms[j]);
            if (!expected.empty()) ++matched;
            if (!poly_eq(aut.transitions[row][1 + j], expected))
                return "row of '" + print<S, M>(source) + "' differs from its vector at '" +
                       print<S, M>(terms[j]) + "'";
        }
        if (matched != form.entries().size())
            return "vector of '" + print<S, M>(source) + "' has support outside the derived terms";
        return std::nullopt;
    };
    if (aut.size() != terms.size() + 1) return "dimension differs from |D(E)| + 1";
    if (auto d = check_row(0, e)) return d;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        auto c = constant_term<S, M>(terms[j]);
        if (!c) return "derived term '" + print<S, M>(terms[j]) + "' has no constant term";
        if (!S::eq(aut.final_weights[1 + j], *c))
            return "final weight of '" + print<S, M>(terms[j]) + "' is not its constant term";
        if (auto d = check_row(1 + j, terms[j])) return d;
    }
    return std::nullopt;
}

namespace detail {

template <Semiring S, Monoid M>
struct TermBuild {
    StandardAutomaton<S, M> aut;
    std::vector<ExprRef<S, M>> terms;
    StateMap from_standard;
};

template <Semiring S, Monoid M>
void name_term_states(WeightedAutomaton<S, M>& aut, ExprRef<S, M> e,
                      const std::vector<ExprRef<S, M>>& terms) {
    aut.states[0] = print<S, M>(e);
    for (std::size_t j = 0; j < terms.size(); ++j) aut.states[1 + j] = print<S, M>(terms[j]);
}

/// Lifts the per-operand surjections to the disjoint sum of standard
/// automata: initial to initial, cores block by block.
inline StateMap lift_pair(const StateMap& f, const StateMap& g) {
    std::size_t nf_src = f.domain() - 1, ng_src = g.domain() - 1;
    std::size_t nf_tgt = f.codomain() - 1;
    std::vector<std::size_t> to(1 + nf_src + ng_src);
    to[0] = 0;
    for (std::size_t i = 0; i < nf_src; ++i) to[1 + i] = f(1 + i);
    for (std::size_t j = 0; j < ng_src; ++j) to[1 + nf_src + j] = nf_tgt + g(1 + j);
    return StateMap(std::move(to), 1 + nf_tgt + (g.codomain() - 1));
}

/// Equality merge across the two operand term lists: targets keep the left
/// list's order, then the right list's new terms.
template <Semiring S, Monoid M>
std::pair<StateMap, std::vector<ExprRef<S, M>>> merge_map(
    const std::vector<ExprRef<S, M>>& left, const std::vector<ExprRef<S, M>>& right) {
    std::vector<ExprRef<S, M>> merged = left;
    for (auto k : right) push_unique(merged, k);
    auto index_of = [&](ExprRef<S, M> k) {
        return static_cast<std::size_t>(std::find(merged.begin(), merged.end(), k) -
                                        merged.begin());
    };
    std::vector<std::size_t> to(1 + left.size() + right.size());
    to[0] = 0;
    for (std::size_t i = 0; i < left.size(); ++i) to[1 + i] = 1 + index_of(left[i]);
    for (std::size_t j = 0; j < right.size(); ++j)
        to[1 + left.size() + j] = 1 + index_of(right[j]);
    return {StateMap(std::move(to), 1 + merged.size()), std::move(merged)};
}

template <Semiring S, Monoid M>
TermBuild<S, M> term_build(ExprPool<S, M>& pool, ExprRef<S, M> e);

template <Semiring S, Monoid M>
TermBuild<S, M> term_build_node(ExprPool<S, M>& pool, ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    switch (e->kind) {
        case Kind::zero:
            return {standard_zero<S, M>(), {}, StateMap::identity(1)};
        case Kind::one:
            return {standard_one<S, M>(), {}, StateMap::identity(1)};
        case Kind::atom:
            return {standard_atom<S, M>(e->element), {pool.one()}, StateMap::identity(2)};
        case Kind::left_scale: {
            auto sub = term_build(pool, e->left);
            return {scale_left(e->scale, std::move(sub.aut)), std::move(sub.terms),
                    std::move(sub.from_standard)};
        }
        case Kind::right_scale: {
            auto sub = term_build(pool, e->left);
            std::vector<ExprRef<S, M>> terms;
            for (auto k : sub.terms) terms.push_back(pool.right_scale(k, e->scale));
            return {scale_right(std::move(sub.aut), e->scale), std::move(terms),
                    std::move(sub.from_standard)};
        }
        case Kind::star: {
            auto sub = term_build(pool, e->left);
            std::vector<ExprRef<S, M>> terms;
            for (auto k : sub.terms) terms.push_back(right_multiply(pool, k, e));
            return {star(sub.aut), std::move(terms), std::move(sub.from_standard)};
        }
        case Kind::sum: {
            auto lhs = term_build(pool, e->left);
            auto rhs = term_build(pool, e->right);
            auto pre = sum(lhs.aut, rhs.aut);
            auto [merge, terms] = merge_map<S, M>(lhs.terms, rhs.terms);
            auto morphism = check_morphism(pre.aut, merge);
            if (!morphism)
                throw StructureError("internal: sum merge is not a morphism: " +
                                     morphism.diagnostic);
            StandardAutomaton<S, M> aut{quotient_by(pre.aut, merge)};
            return {std::move(aut), std::move(terms),
                    lift_pair(lhs.from_standard, rhs.from_standard).then(merge)};
        }
        case Kind::product: {
            auto lhs = term_build(pool, e->left);
            auto rhs = term_build(pool, e->right);
            // Indices of the left operand are multiplied by G on the right
            // before the equality merge.
            std::vector<ExprRef<S, M>> left_terms;
            for (auto k : lhs.terms) left_terms.push_back(right_multiply(pool, k, e->right));
            auto pre = product(lhs.aut, rhs.aut);
            auto [merge, terms] = merge_map<S, M>(left_terms, rhs.terms);
            auto morphism = check_morphism(pre.aut, merge);
            if (!morphism)
                throw StructureError("internal: product merge is not a morphism: " +
                                     morphism.diagnostic);
            StandardAutomaton<S, M> aut{quotient_by(pre.aut, merge)};
            return {std::move(aut), std::move(terms),
                    lift_pair(lhs.from_standard, rhs.from_standard).then(merge)};
        }
    }
    return {standard_zero<S, M>(), {}, StateMap::identity(1)};
}

template <Semiring S, Monoid M>
TermBuild<S, M> term_build(ExprPool<S, M>& pool, ExprRef<S, M> e) {
    auto out = term_build_node(pool, e);
    name_term_states(out.aut.aut, e, out.terms);
#ifndef NDEBUG
    if (auto d = claims_diagnostic(pool, out.aut.aut, out.terms, e))
        throw StructureError("internal: construction invariant failed: " + *d);
#endif
    return out;
}

}  // namespace detail

/// T_E: built purely by induction on the expression, applying an equality
/// merge (a morphism, asserted) at every sum and product.
template <Semiring S, Monoid M>
DerivedTermAutomaton<S, M> standard_derived_term_automaton(ExprPool<S, M>& pool,
                                                           ExprRef<S, M> e) {
    require_valid<S, M>(e);
    auto build = detail::term_build(pool, e);
    return {std::move(build.aut.aut), std::move(build.terms), false,
            std::move(build.from_standard)};
}

/// D_E: if E itself is a derived term, the initial state (indexed by E) is
/// merged into it; otherwise D_E is T_E.
template <Semiring S, Monoid M>
DerivedTermAutomaton<S, M> derived_term_automaton(ExprPool<S, M>& pool, ExprRef<S, M> e) {
    auto t = standard_derived_term_automaton(pool, e);
    auto self = std::find(t.terms.begin(), t.terms.end(), e);
    if (self == t.terms.end()) return t;

    std::size_t self_index = static_cast<std::size_t>(self - t.terms.begin());
    std::vector<std::size_t> to(t.aut.size());
    to[0] = self_index;
    for (std::size_t j = 0; j < t.terms.size(); ++j) to[1 + j] = j;
    StateMap merge(std::move(to), t.terms.size());

    auto morphism = check_morphism(t.aut, merge);
    if (!morphism)
        throw StructureError("internal: initial-state merge is not a morphism: " +
                             morphism.diagnostic);
    std::vector<std::string> names;
    for (auto k : t.terms) names.push_back(print<S, M>(k));
    auto aut = quotient_by(t.aut, merge, std::move(names));
    return {std::move(aut), std::move(t.terms), true, t.from_standard.then(merge)};
}

}  // namespace ratexp
