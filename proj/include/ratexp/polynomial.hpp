#pragma once

#include <map>
#include <string>

#include "ratexp/monoid.hpp"
#include "ratexp/semiring.hpp"

namespace ratexp {

/// Finite K-linear combination of monoid elements, kept canonical: no
/// zero-weight entries are stored.  Iteration order is (length, lex).
template <Semiring S, Monoid M>
class Polynomial {
public:
    using Element = typename M::Element;
    using Weight = typename S::Weight;
    using Map = std::map<Element, Weight, typename M::Less>;

    Polynomial() = default;

    static Polynomial monomial(Element m, Weight w) {
        Polynomial p;
        p.add_term(std::move(m), std::move(w));
        return p;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    Weight coeff(const Element& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? S::zero() : it->second;
    }

    void add_term(Element m, Weight w) {
        if (is_zero<S>(w)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), w);
        if (!inserted) {
            it->second = S::add(it->second, w);
            if (is_zero<S>(it->second)) terms_.erase(it);
        }
    }

private:
    Map terms_;
};

template <Semiring S, Monoid M>
Polynomial<S, M> add(const Polynomial<S, M>& a, const Polynomial<S, M>& b) {
    Polynomial<S, M> out = a;
    for (const auto& [m, w] : b.terms()) out.add_term(m, w);
    return out;
}

template <Semiring S, Monoid M>
Polynomial<S, M> scale_left(const typename S::Weight& k, const Polynomial<S, M>& p) {
    Polynomial<S, M> out;
    for (const auto& [m, w] : p.terms()) out.add_term(m, S::mul(k, w));
    return out;
}

template <Semiring S, Monoid M>
Polynomial<S, M> scale_right(const Polynomial<S, M>& p, const typename S::Weight& k) {
    Polynomial<S, M> out;
    for (const auto& [m, w] : p.terms()) out.add_term(m, S::mul(w, k));
    return out;
}

/// Cauchy product; exact since both supports are finite.
template <Semiring S, Monoid M>
Polynomial<S, M> mul(const Polynomial<S, M>& a, const Polynomial<S, M>& b) {
    Polynomial<S, M> out;
    for (const auto& [m, w] : a.terms())
        for (const auto& [n, v] : b.terms()) out.add_term(M::mul(m, n), S::mul(w, v));
    return out;
}

template <Semiring S, Monoid M>
bool poly_eq(const Polynomial<S, M>& a, const Polynomial<S, M>& b) {
    if (a.size() != b.size()) return false;
    auto it = b.terms().begin();
    for (const auto& [m, w] : a.terms()) {
        if (!M::eq(m, it->first) || !S::eq(w, it->second)) return false;
        ++it;
    }
    return true;
}

template <Semiring S, Monoid M>
std::string monomial_str(const typename M::Element& m, const typename S::Weight& w) {
    if (is_one<S>(w)) return M::atom_str(m);
    return "<" + S::str(w) + ">" + M::atom_str(m);
}

template <Semiring S, Monoid M>
std::string str(const Polynomial<S, M>& p) {
    if (p.empty()) return "0";
    std::string out;
    for (const auto& [m, w] : p.terms()) {
        if (!out.empty()) out += "+";
        out += monomial_str<S, M>(m, w);
    }
    return out;
}

}  // namespace ratexp
