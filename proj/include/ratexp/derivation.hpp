#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "ratexp/derived.hpp"

namespace ratexp {

/// K-linear combination of expressions, canonical (no zero weights), in
/// insertion order.
template <Semiring S, Monoid M>
class LinearCombination {
public:
    using Entry = std::pair<ExprRef<S, M>, typename S::Weight>;

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    typename S::Weight at(ExprRef<S, M> term) const {
        for (const auto& [t, w] : entries_)
            if (t == term) return w;
        return S::zero();
    }

    void add_term(ExprRef<S, M> term, typename S::Weight w) {
        if (is_zero<S>(w)) return;
        for (auto it = entries_.begin(); it != entries_.end(); ++it) {
            if (it->first == term) {
                it->second = S::add(it->second, w);
                if (is_zero<S>(it->second)) entries_.erase(it);
                return;
            }
        }
        entries_.push_back({term, std::move(w)});
    }

private:
    std::vector<Entry> entries_;
};

template <Semiring S, Monoid M>
bool combination_eq(const LinearCombination<S, M>& a, const LinearCombination<S, M>& b) {
    if (a.entries().size() != b.entries().size()) return false;
    for (const auto& [t, w] : a.entries())
        if (!S::eq(b.at(t), w)) return false;
    return true;
}

namespace detail {

template <Semiring S, Monoid M>
void require_letter_atoms(ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    switch (e->kind) {
        case Kind::zero:
        case Kind::one:
            return;
        case Kind::atom:
            if (M::length(e->element) > 1)
                throw UnsupportedError("derivation requires letter atoms; '" +
                                       M::atom_str(e->element) + "' has length " +
                                       std::to_string(M::length(e->element)));
            return;
        case Kind::left_scale:
        case Kind::right_scale:
        case Kind::star:
            require_letter_atoms<S, M>(e->left);
            return;
        case Kind::sum:
        case Kind::product:
            require_letter_atoms<S, M>(e->left);
            require_letter_atoms<S, M>(e->right);
            return;
    }
}

template <Semiring S, Monoid M>
LinearCombination<S, M> derive_rec(ExprPool<S, M>& pool, ExprRef<S, M> e, char letter) {
    using Kind = typename Expr<S, M>::Kind;
    LinearCombination<S, M> out;
    switch (e->kind) {
        case Kind::zero:
        case Kind::one:
            break;
        case Kind::atom:
            if (e->element == typename M::Element(1, letter))
                out.add_term(pool.one(), S::one());
            break;
        case Kind::left_scale: {
            auto sub = derive_rec(pool, e->left, letter);
            for (const auto& [t, w] : sub.entries())
                out.add_term(t, S::mul(e->scale, w));
            break;
        }
        case Kind::right_scale: {
            auto sub = derive_rec(pool, e->left, letter);
            for (const auto& [t, w] : sub.entries())
                out.add_term(pool.right_scale(t, e->scale), w);
            break;
        }
        case Kind::sum: {
            auto lhs = derive_rec(pool, e->left, letter);
            for (const auto& [t, w] : lhs.entries()) out.add_term(t, w);
            auto rhs = derive_rec(pool, e->right, letter);
            for (const auto& [t, w] : rhs.entries()) out.add_term(t, w);
            break;
        }
        case Kind::product: {
            auto c = require_valid<S, M>(e->left);
            auto lhs = derive_rec(pool, e->left, letter);
            for (const auto& [t, w] : lhs.entries())
                out.add_term(right_multiply(pool, t, e->right), w);
            auto rhs = derive_rec(pool, e->right, letter);
            for (const auto& [t, w] : rhs.entries())
                out.add_term(t, S::mul(c, w));
            break;
        }
        case Kind::star: {
            auto c = require_valid<S, M>(e->left);
            auto c_star = S::star(c);
            if (!c_star)
                throw ValidityError("expression is not valid: constant term " + S::str(c) +
                                    " of '" + print<S, M>(e->left) + "' is not starrable");
            auto sub = derive_rec(pool, e->left, letter);
            for (const auto& [t, w] : sub.entries())
                out.add_term(right_multiply(pool, t, e), S::mul(*c_star, w));
            break;
        }
    }
    return out;
}

}  // namespace detail

/// Derivation of a free-monoid expression by a letter.  Deliberately its
/// own recursion, independent of the linear-form route, so comparing the
/// two is a genuine cross-check.
template <Semiring S, Monoid M>
LinearCombination<S, M> derive(ExprPool<S, M>& pool, ExprRef<S, M> e, char letter) {
    if constexpr (!M::is_free) {
        throw UnsupportedError("derivation is defined over free monoids only");
    } else {
        detail::require_letter_atoms<S, M>(e);
        require_valid<S, M>(e);
        return detail::derive_rec(pool, e, letter);
    }
}

/// The differential of E: the linear form presented as a formal sum of
/// monomial-weighted derived terms.
template <Semiring S, Monoid M>
LinearForm<S, M> differential(ExprPool<S, M>& pool, ExprRef<S, M> e) {
    require_valid<S, M>(e);
    return linear_form(pool, e);
}

/// The coefficient of a letter in the differential: one weight per derived
/// term, read off the length-1 monomials.
template <Semiring S, Monoid M>
LinearCombination<S, M> letter_slice(const LinearForm<S, M>& form, char letter) {
    if constexpr (!M::is_free) {
        throw UnsupportedError("letter slices exist over free monoids only");
    } else {
        LinearCombination<S, M> out;
        typename M::Element m(1, letter);
        for (const auto& [t, p] : form.entries()) out.add_term(t, p.coeff(m));
        return out;
    }
}

/// Checks that the derivation by `letter` equals the letter's slice of the
/// differential, term by term and weight by weight.
template <Semiring S, Monoid M>
bool reconcile(ExprPool<S, M>& pool, ExprRef<S, M> e, char letter) {
    if constexpr (!M::is_free) {
        throw UnsupportedError("derivation is defined over free monoids only");
    } else {
        auto direct = derive(pool, e, letter);
        auto sliced = letter_slice<S, M>(differential(pool, e), letter);
        return combination_eq(direct, sliced);
    }
}

}  // namespace ratexp
