#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratexp/errors.hpp"
#include "ratexp/polynomial.hpp"
#include "ratexp/series.hpp"

namespace ratexp {

template <Semiring S>
using WeightRow = std::vector<typename S::Weight>;
template <Semiring S>
using WeightMatrix = std::vector<WeightRow<S>>;
template <Semiring S, Monoid M>
using PolyMatrix = std::vector<std::vector<Polynomial<S, M>>>;

/// A weighted automaton as the triple (initial vector, transition matrix of
/// polynomials with proper labels, final vector).  State labels are opaque
/// display names; constructions that care about identity track it alongside.
template <Semiring S, Monoid M>
struct WeightedAutomaton {
    std::vector<std::string> states;
    WeightRow<S> initial;
    PolyMatrix<S, M> transitions;
    WeightRow<S> final_weights;

    std::size_t size() const { return states.size(); }

    static WeightedAutomaton with_size(std::size_t n) {
        WeightedAutomaton a;
        a.states.resize(n);
        a.initial.assign(n, S::zero());
        a.final_weights.assign(n, S::zero());
        a.transitions.assign(n, std::vector<Polynomial<S, M>>(n));
        return a;
    }

    /// Structural well-formedness: dimensions agree, labels are proper.
    std::optional<std::string> malformed() const {
        std::size_t n = states.size();
        if (initial.size() != n || final_weights.size() != n || transitions.size() != n)
            return "vector/matrix dimensions disagree with the state list";
        for (std::size_t p = 0; p < n; ++p) {
            if (transitions[p].size() != n) return "ragged transition matrix";
            for (std::size_t q = 0; q < n; ++q)
                for (const auto& [m, w] : transitions[p][q].terms())
                    if (M::length(m) == 0) return "transition label of length 0";
        }
        return std::nullopt;
    }
};

/// Surjective map between state sets, with its amalgamation matrix view.
class StateMap {
public:
    StateMap() = default;
    StateMap(std::vector<std::size_t> to, std::size_t codomain)
        : to_(std::move(to)), codomain_(codomain) {}

    static StateMap identity(std::size_t n) {
        std::vector<std::size_t> to(n);
        std::iota(to.begin(), to.end(), std::size_t{0});
        return StateMap(std::move(to), n);
    }

    std::size_t domain() const { return to_.size(); }
    std::size_t codomain() const { return codomain_; }
    std::size_t operator()(std::size_t q) const { return to_[q]; }

    bool surjective() const {
        std::vector<bool> hit(codomain_, false);
        for (std::size_t t : to_) {
            if (t >= codomain_) return false;
            hit[t] = true;
        }
        for (bool h : hit)
            if (!h) return false;
        return true;
    }

    /// Composition: first this map, then `next`.
    StateMap then(const StateMap& next) const {
        std::vector<std::size_t> to(to_.size());
        for (std::size_t q = 0; q < to_.size(); ++q) to[q] = next(to_[q]);
        return StateMap(std::move(to), next.codomain());
    }

    /// 0-1 amalgamation matrix: exactly one 1 per row, >= 1 per column.
    template <Semiring S>
    WeightMatrix<S> matrix() const {
        WeightMatrix<S> x(domain(), WeightRow<S>(codomain_, S::zero()));
        for (std::size_t q = 0; q < domain(); ++q) x[q][to_[q]] = S::one();
        return x;
    }

    /// First source state of each class (the default representative choice).
    std::vector<std::size_t> representatives() const {
        std::vector<std::size_t> rep(codomain_, domain());
        for (std::size_t q = domain(); q-- > 0;) rep[to_[q]] = q;
        return rep;
    }

private:
    std::vector<std::size_t> to_;
    std::size_t codomain_ = 0;
};

// ---------------------------------------------------------------------------
// Vector/matrix arithmetic over the semiring.

template <Semiring S>
WeightRow<S> mul(const WeightRow<S>& row, const WeightMatrix<S>& x) {
    WeightRow<S> out(x.empty() ? 0 : x[0].size(), S::zero());
    for (std::size_t q = 0; q < row.size(); ++q)
        for (std::size_t r = 0; r < out.size(); ++r)
            out[r] = S::add(out[r], S::mul(row[q], x[q][r]));
    return out;
}

template <Semiring S>
WeightRow<S> mul(const WeightMatrix<S>& x, const WeightRow<S>& col) {
    WeightRow<S> out(x.size(), S::zero());
    for (std::size_t q = 0; q < x.size(); ++q)
        for (std::size_t r = 0; r < col.size(); ++r)
            out[q] = S::add(out[q], S::mul(x[q][r], col[r]));
    return out;
}

template <Semiring S, Monoid M>
PolyMatrix<S, M> mul(const PolyMatrix<S, M>& e, const WeightMatrix<S>& x) {
    std::size_t rows = e.size();
    std::size_t cols = x.empty() ? 0 : x[0].size();
    PolyMatrix<S, M> out(rows, std::vector<Polynomial<S, M>>(cols));
    for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t q = 0; q < e[p].size(); ++q) {
            if (e[p][q].empty()) continue;
            for (std::size_t r = 0; r < cols; ++r) {
                if (is_zero<S>(x[q][r])) continue;
                out[p][r] = add(out[p][r], scale_right(e[p][q], x[q][r]));
            }
        }
    return out;
}

template <Semiring S, Monoid M>
PolyMatrix<S, M> mul(const WeightMatrix<S>& x, const PolyMatrix<S, M>& f) {
    std::size_t rows = x.size();
    std::size_t cols = f.empty() ? 0 : f[0].size();
    PolyMatrix<S, M> out(rows, std::vector<Polynomial<S, M>>(cols));
    for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t q = 0; q < f.size(); ++q) {
            if (is_zero<S>(x[p][q])) continue;
            for (std::size_t r = 0; r < cols; ++r)
                out[p][r] = add(out[p][r], scale_left(x[p][q], f[q][r]));
        }
    return out;
}

template <Semiring S>
bool row_eq(const WeightRow<S>& a, const WeightRow<S>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!S::eq(a[i], b[i])) return false;
    return true;
}

template <Semiring S, Monoid M>
bool poly_row_eq(const std::vector<Polynomial<S, M>>& a, const std::vector<Polynomial<S, M>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!poly_eq(a[i], b[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Behaviour.

/// Coefficient of a single element in the behaviour I.E*.T: the sum over all
/// ordered factorizations of m into proper labels, memoized on
/// (state, residual).  For the identity this is I.T.
template <Semiring S, Monoid M>
typename S::Weight behaviour_coeff(const WeightedAutomaton<S, M>& a,
                                   const typename M::Element& m) {
    using Element = typename M::Element;
    using Weight = typename S::Weight;
    struct KeyLess {
        bool operator()(const std::pair<std::size_t, Element>& x,
                        const std::pair<std::size_t, Element>& y) const {
            if (x.first != y.first) return x.first < y.first;
            typename M::Less less;
            if (less(x.second, y.second)) return true;
            if (less(y.second, x.second)) return false;
            return false;
        }
    };
    std::map<std::pair<std::size_t, Element>, Weight, KeyLess> memo;

    auto go = [&](auto&& self, std::size_t p, const Element& rest) -> Weight {
        if (M::length(rest) == 0) return a.final_weights[p];
        auto key = std::make_pair(p, rest);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Weight acc = S::zero();
        for (std::size_t q = 0; q < a.size(); ++q)
            for (const auto& [label, k] : a.transitions[p][q].terms())
                if (auto tail = M::left_divide(label, rest))
                    acc = S::add(acc, S::mul(k, self(self, q, *tail)));
        memo.emplace(std::move(key), acc);
        return acc;
    };

    Weight out = S::zero();
    for (std::size_t p = 0; p < a.size(); ++p)
        if (!is_zero<S>(a.initial[p]))
            out = S::add(out, S::mul(a.initial[p], go(go, p, m)));
    return out;
}

/// All behaviour coefficients up to a length bound in one forward pass over
/// elements in (length, lex) order.
template <Semiring S, Monoid M>
TruncatedSeries<S, M> behaviour_up_to(const WeightedAutomaton<S, M>& a, const M& monoid,
                                      std::size_t bound) {
    using Element = typename M::Element;
    auto elements = monoid.enumerate_up_to(bound);
    std::map<Element, WeightRow<S>, typename M::Less> reach;
    reach[M::identity()] = a.initial;
    TruncatedSeries<S, M> out(bound);
    for (const auto& m : elements) {
        if (M::length(m) > 0) {
            WeightRow<S> row(a.size(), S::zero());
            for (std::size_t p = 0; p < a.size(); ++p)
                for (std::size_t q = 0; q < a.size(); ++q)
                    for (const auto& [label, k] : a.transitions[p][q].terms())
                        if (auto head = M::right_divide(m, label)) {
                            const auto& prev = reach.at(*head);
                            row[q] = S::add(row[q], S::mul(prev[p], k));
                        }
            reach.emplace(m, std::move(row));
        }
        const auto& v = reach.at(m);
        auto w = S::zero();
        for (std::size_t q = 0; q < a.size(); ++q)
            w = S::add(w, S::mul(v[q], a.final_weights[q]));
        out.add_coeff(m, w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conjugacy and morphisms.

/// Exact check of the three transfer identities I.X = J, E.X = X.F, T = X.U.
template <Semiring S, Monoid M>
bool is_conjugate(const WeightedAutomaton<S, M>& a, const WeightedAutomaton<S, M>& b,
                  const WeightMatrix<S>& x) {
    if (x.size() != a.size())
        throw StructureError("transfer matrix row count differs from the source dimension");
    for (const auto& row : x)
        if (row.size() != b.size())
            throw StructureError("transfer matrix column count differs from the target dimension");
    if (!row_eq<S>(mul<S>(a.initial, x), b.initial)) return false;
    if (!row_eq<S>(a.final_weights, mul<S>(x, b.final_weights))) return false;
    auto ex = mul(a.transitions, x);
    auto xf = mul(x, b.transitions);
    for (std::size_t p = 0; p < a.size(); ++p)
        if (!poly_row_eq<S, M>(ex[p], xf[p])) return false;
    return true;
}

struct MorphismCheck {
    bool ok = true;
    std::string diagnostic;
    std::pair<std::size_t, std::size_t> offending{0, 0};
    explicit operator bool() const { return ok; }
};

/// A surjective state map is a morphism iff rows of E.X whose indices are
/// map-equivalent are equal and likewise the entries of T.
template <Semiring S, Monoid M>
MorphismCheck check_morphism(const WeightedAutomaton<S, M>& a, const StateMap& map) {
    if (map.domain() != a.size())
        throw StructureError("state map domain differs from the automaton dimension");
    if (!map.surjective()) throw StructureError("state map is not surjective");
    auto ex = mul(a.transitions, map.matrix<S>());
    auto reps = map.representatives();
    for (std::size_t p = 0; p < a.size(); ++p) {
        std::size_t rep = reps[map(p)];
        if (rep == p) continue;
        if (!S::eq(a.final_weights[p], a.final_weights[rep]))
            return {false,
                    "states " + a.states[rep] + " and " + a.states[p] +
                        " are merged but their final weights differ",
                    {rep, p}};
        if (!poly_row_eq<S, M>(ex[p], ex[rep]))
            return {false,
                    "states " + a.states[rep] + " and " + a.states[p] +
                        " are merged but their rows of E.X differ",
                    {rep, p}};
    }
    return {};
}

/// Morphic image <I.X, Y.E.X, Y.T>.  Independent of the representative
/// selection encoded in Y; an explicit selection can be supplied to check
/// exactly that.
template <Semiring S, Monoid M>
WeightedAutomaton<S, M> quotient_by(const WeightedAutomaton<S, M>& a, const StateMap& map,
                                    std::vector<std::string> names = {},
                                    std::optional<std::vector<std::size_t>> selection =
                                        std::nullopt) {
    auto check = check_morphism(a, map);
    if (!check) throw StructureError("not a morphism: " + check.diagnostic);
    auto reps = selection ? *selection : map.representatives();
    if (reps.size() != map.codomain())
        throw StructureError("selection size differs from the target dimension");
    for (std::size_t r = 0; r < reps.size(); ++r)
        if (reps[r] >= a.size() || map(reps[r]) != r)
            throw StructureError("selection does not pick a representative per class");

    auto out = WeightedAutomaton<S, M>::with_size(map.codomain());
    auto ex = mul(a.transitions, map.matrix<S>());
    for (std::size_t q = 0; q < a.size(); ++q)
        out.initial[map(q)] = S::add(out.initial[map(q)], a.initial[q]);
    for (std::size_t r = 0; r < map.codomain(); ++r) {
        out.transitions[r] = ex[reps[r]];
        out.final_weights[r] = a.final_weights[reps[r]];
        out.states[r] = names.empty() ? a.states[reps[r]] : std::move(names[r]);
    }
    return out;
}

}  // namespace ratexp
