#pragma once

#include <cstddef>
#include <map>

#include "ratexp/errors.hpp"
#include "ratexp/expr.hpp"
#include "ratexp/polynomial.hpp"

namespace ratexp {

/// The denotational oracle: all coefficients of a series on elements of
/// length <= bound.  Conceptually total on that domain; zero coefficients
/// are stored implicitly.
template <Semiring S, Monoid M>
class TruncatedSeries {
public:
    using Element = typename M::Element;
    using Weight = typename S::Weight;
    using Map = std::map<Element, Weight, typename M::Less>;

    explicit TruncatedSeries(std::size_t bound) : bound_(bound) {}

    static TruncatedSeries constant(Weight w, std::size_t bound) {
        TruncatedSeries s(bound);
        s.add_coeff(M::identity(), std::move(w));
        return s;
    }
    static TruncatedSeries one(std::size_t bound) { return constant(S::one(), bound); }

    static TruncatedSeries atom(const Element& m, std::size_t bound) {
        TruncatedSeries s(bound);
        s.add_coeff(m, S::one());
        return s;
    }

    static TruncatedSeries from_polynomial(const Polynomial<S, M>& p, std::size_t bound) {
        TruncatedSeries s(bound);
        for (const auto& [m, w] : p.terms()) s.add_coeff(m, w);
        return s;
    }

    std::size_t bound() const { return bound_; }
    const Map& coeffs() const { return coeffs_; }

    Weight coeff(const Element& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? S::zero() : it->second;
    }

    /// Accumulates; entries beyond the bound are discarded, zeros erased.
    void add_coeff(Element m, Weight w) {
        if (M::length(m) > bound_ || is_zero<S>(w)) return;
        auto [it, inserted] = coeffs_.try_emplace(std::move(m), w);
        if (!inserted) {
            it->second = S::add(it->second, w);
            if (is_zero<S>(it->second)) coeffs_.erase(it);
        }
    }

private:
    std::size_t bound_;
    Map coeffs_;
};

template <Semiring S, Monoid M>
TruncatedSeries<S, M> add(const TruncatedSeries<S, M>& a, const TruncatedSeries<S, M>& b) {
    TruncatedSeries<S, M> out(std::min(a.bound(), b.bound()));
    for (const auto& [m, w] : a.coeffs()) out.add_coeff(m, w);
    for (const auto& [m, w] : b.coeffs()) out.add_coeff(m, w);
    return out;
}

template <Semiring S, Monoid M>
TruncatedSeries<S, M> scale_left(const typename S::Weight& k, const TruncatedSeries<S, M>& s) {
    TruncatedSeries<S, M> out(s.bound());
    for (const auto& [m, w] : s.coeffs()) out.add_coeff(m, S::mul(k, w));
    return out;
}

template <Semiring S, Monoid M>
TruncatedSeries<S, M> scale_right(const TruncatedSeries<S, M>& s, const typename S::Weight& k) {
    TruncatedSeries<S, M> out(s.bound());
    for (const auto& [m, w] : s.coeffs()) out.add_coeff(m, S::mul(w, k));
    return out;
}

/// Cauchy product, truncated at the smaller bound.
template <Semiring S, Monoid M>
TruncatedSeries<S, M> mul(const TruncatedSeries<S, M>& a, const TruncatedSeries<S, M>& b) {
    TruncatedSeries<S, M> out(std::min(a.bound(), b.bound()));
    for (const auto& [m, w] : a.coeffs()) {
        if (M::length(m) > out.bound()) continue;
        for (const auto& [n, v] : b.coeffs()) {
            if (M::length(m) + M::length(n) > out.bound()) continue;
            out.add_coeff(M::mul(m, n), S::mul(w, v));
        }
    }
    return out;
}

/// Polynomial times series.  All monomials of p are proper (length >= 1),
/// so the product is exact one length further than s.
template <Semiring S, Monoid M>
TruncatedSeries<S, M> mul_poly_series(const Polynomial<S, M>& p, const TruncatedSeries<S, M>& s) {
    TruncatedSeries<S, M> out(s.bound() + 1);
    for (const auto& [m, w] : p.terms())
        for (const auto& [n, v] : s.coeffs()) out.add_coeff(M::mul(m, n), S::mul(w, v));
    return out;
}

/// Series star via the constant-term reduction: with s0 the constant term
/// and s_p the proper part, s* = (s0* s_p)* s0*.  The inner star is a
/// finite iteration because s_p has no support below length 1.
template <Semiring S, Monoid M>
TruncatedSeries<S, M> star(const TruncatedSeries<S, M>& s) {
    auto s0 = s.coeff(M::identity());
    auto s0_star = S::star(s0);
    if (!s0_star)
        throw ValidityError("constant term " + S::str(s0) + " is not starrable");
    TruncatedSeries<S, M> proper(s.bound());
    for (const auto& [m, w] : s.coeffs())
        if (M::length(m) > 0) proper.add_coeff(m, w);
    auto t = scale_left<S, M>(*s0_star, proper);
    auto acc = TruncatedSeries<S, M>::one(s.bound());
    for (std::size_t i = 0; i < s.bound(); ++i)
        acc = add(TruncatedSeries<S, M>::one(s.bound()), mul(t, acc));
    return scale_right<S, M>(acc, *s0_star);
}

template <Semiring S, Monoid M>
TruncatedSeries<S, M> restrict_bound(const TruncatedSeries<S, M>& s, std::size_t bound) {
    TruncatedSeries<S, M> out(std::min(bound, s.bound()));
    for (const auto& [m, w] : s.coeffs()) out.add_coeff(m, w);
    return out;
}

template <Semiring S, Monoid M>
bool series_eq(const TruncatedSeries<S, M>& a, const TruncatedSeries<S, M>& b) {
    if (a.bound() != b.bound() || a.coeffs().size() != b.coeffs().size()) return false;
    auto it = b.coeffs().begin();
    for (const auto& [m, w] : a.coeffs()) {
        if (!M::eq(m, it->first) || !S::eq(w, it->second)) return false;
        ++it;
    }
    return true;
}

/// Left quotient u^-1 s: coefficient of v is the coefficient of u.v in s.
/// Defined on series over a free monoid only.
template <Semiring S, Monoid M>
TruncatedSeries<S, M> quotient(const TruncatedSeries<S, M>& s, const typename M::Element& u) {
    if constexpr (!M::is_free) {
        throw UnsupportedError("series quotient is defined over free monoids only");
    } else {
        if (M::length(u) > s.bound())
            throw StructureError("quotient word longer than the series bound");
        TruncatedSeries<S, M> out(s.bound() - M::length(u));
        for (const auto& [m, w] : s.coeffs())
            if (auto v = M::left_divide(u, m)) out.add_coeff(*v, w);
        return out;
    }
}

namespace detail {

template <Semiring S, Monoid M>
TruncatedSeries<S, M> denote_rec(ExprRef<S, M> e, std::size_t bound) {
    using Kind = typename Expr<S, M>::Kind;
    switch (e->kind) {
        case Kind::zero:
            return TruncatedSeries<S, M>(bound);
        case Kind::one:
            return TruncatedSeries<S, M>::one(bound);
        case Kind::atom:
            return TruncatedSeries<S, M>::atom(e->element, bound);
        case Kind::left_scale:
            return scale_left<S, M>(e->scale, denote_rec<S, M>(e->left, bound));
        case Kind::right_scale:
            return scale_right<S, M>(denote_rec<S, M>(e->left, bound), e->scale);
        case Kind::sum:
            return add(denote_rec<S, M>(e->left, bound), denote_rec<S, M>(e->right, bound));
        case Kind::product:
            return mul(denote_rec<S, M>(e->left, bound), denote_rec<S, M>(e->right, bound));
        case Kind::star:
            return star(denote_rec<S, M>(e->left, bound));
    }
    return TruncatedSeries<S, M>(bound);
}

}  // namespace detail

/// Coefficients of the series denoted by a valid expression on all elements
/// of length <= bound, by structural induction.
template <Semiring S, Monoid M>
TruncatedSeries<S, M> denote(ExprRef<S, M> e, std::size_t bound) {
    require_valid<S, M>(e);
    return detail::denote_rec<S, M>(e, bound);
}

}  // namespace ratexp
