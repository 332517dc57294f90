#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratexp/errors.hpp"

namespace ratexp {

/// A graded monoid: identity, an additive length, concatenation, prefix and
/// suffix division, and bounded enumeration over the declared alphabet(s).
/// Atoms and transition labels are always proper elements (length >= 1).
template <class M>
concept Monoid = requires(const M& m, const typename M::Element& x,
                          const typename M::Element& y, std::size_t n) {
    typename M::Element;
    typename M::Less;
    { M::is_free } -> std::convertible_to<bool>;
    { M::identity() } -> std::same_as<typename M::Element>;
    { M::length(x) } -> std::same_as<std::size_t>;
    { M::mul(x, y) } -> std::same_as<typename M::Element>;
    { M::eq(x, y) } -> std::same_as<bool>;
    { M::left_divide(x, y) } -> std::same_as<std::optional<typename M::Element>>;
    { M::right_divide(x, y) } -> std::same_as<std::optional<typename M::Element>>;
    { M::str(x) } -> std::same_as<std::string>;
    { M::atom_str(x) } -> std::same_as<std::string>;
    { M::key(x) } -> std::same_as<std::string>;
    { m.enumerate_up_to(n) } -> std::same_as<std::vector<typename M::Element>>;
};

namespace detail {

inline std::vector<char> checked_alphabet(std::vector<char> letters, const char* which) {
    if (letters.empty())
        throw StructureError(std::string(which) + " alphabet must not be empty");
    std::sort(letters.begin(), letters.end());
    if (std::adjacent_find(letters.begin(), letters.end()) != letters.end())
        throw StructureError(std::string(which) + " alphabet letters must be distinct");
    return letters;
}

inline std::string word_str(const std::string& w) { return w.empty() ? "\\e" : w; }

}  // namespace detail

/// Words over a finite alphabet, graded by word length.
class FreeMonoid {
public:
    using Element = std::string;
    static constexpr bool is_free = true;

    /// (length, lexicographic) order.
    struct Less {
        bool operator()(const Element& a, const Element& b) const {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        }
    };

    explicit FreeMonoid(std::vector<char> letters)
        : letters_(detail::checked_alphabet(std::move(letters), "first")) {}

    const std::vector<char>& letters() const { return letters_; }
    bool contains_letter(char c) const {
        return std::binary_search(letters_.begin(), letters_.end(), c);
    }

    static Element identity() { return {}; }
    static std::size_t length(const Element& x) { return x.size(); }
    static Element mul(const Element& a, const Element& b) { return a + b; }
    static bool eq(const Element& a, const Element& b) { return a == b; }

    static std::optional<Element> left_divide(const Element& prefix, const Element& x) {
        if (prefix.size() > x.size() || x.compare(0, prefix.size(), prefix) != 0)
            return std::nullopt;
        return x.substr(prefix.size());
    }
    static std::optional<Element> right_divide(const Element& x, const Element& suffix) {
        if (suffix.size() > x.size() ||
            x.compare(x.size() - suffix.size(), suffix.size(), suffix) != 0)
            return std::nullopt;
        return x.substr(0, x.size() - suffix.size());
    }

    static std::string str(const Element& x) { return detail::word_str(x); }
    /// Atom concrete syntax: `a` for a letter, `(ab)` for a longer word.
    static std::string atom_str(const Element& x) {
        return x.size() == 1 ? x : "(" + x + ")";
    }
    static std::string key(const Element& x) { return x; }

    /// All words of length <= n in (length, lexicographic) order.
    std::vector<Element> enumerate_up_to(std::size_t n) const {
        std::vector<Element> out{identity()};
        std::size_t level_begin = 0;
        for (std::size_t len = 1; len <= n; ++len) {
            std::size_t level_end = out.size();
            for (std::size_t i = level_begin; i < level_end; ++i)
                for (char c : letters_) out.push_back(out[i] + c);
            level_begin = level_end;
        }
        return out;
    }

    /// Words as concatenated letters; "" and "\e" denote the identity.
    Element parse_element(std::string_view text) const {
        if (text == "\\e") return identity();
        for (char c : text)
            if (!contains_letter(c))
                throw StructureError(std::string("letter '") + c + "' not in alphabet");
        return Element(text);
    }

private:
    std::vector<char> letters_;
};

/// Pairs of words over two alphabets, graded by |u| + |v|; automata over
/// this monoid are transducers.
class ProductMonoid {
public:
    using Element = std::pair<std::string, std::string>;
    static constexpr bool is_free = false;

    /// Total length first, then first-component-major.
    struct Less {
        bool operator()(const Element& a, const Element& b) const {
            std::size_t la = a.first.size() + a.second.size();
            std::size_t lb = b.first.size() + b.second.size();
            if (la != lb) return la < lb;
            if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        }
    };

    ProductMonoid(std::vector<char> first, std::vector<char> second)
        : first_(detail::checked_alphabet(std::move(first), "first")),
          second_(detail::checked_alphabet(std::move(second), "second")) {}

    const std::vector<char>& first_letters() const { return first_; }
    const std::vector<char>& second_letters() const { return second_; }

    static Element identity() { return {}; }
    static std::size_t length(const Element& x) { return x.first.size() + x.second.size(); }
    static Element mul(const Element& a, const Element& b) {
        return {a.first + b.first, a.second + b.second};
    }
    static bool eq(const Element& a, const Element& b) { return a == b; }

    static std::optional<Element> left_divide(const Element& prefix, const Element& x) {
        auto u = FreeMonoid::left_divide(prefix.first, x.first);
        auto v = FreeMonoid::left_divide(prefix.second, x.second);
        if (!u || !v) return std::nullopt;
        return Element{*u, *v};
    }
    static std::optional<Element> right_divide(const Element& x, const Element& suffix) {
        auto u = FreeMonoid::right_divide(x.first, suffix.first);
        auto v = FreeMonoid::right_divide(x.second, suffix.second);
        if (!u || !v) return std::nullopt;
        return Element{*u, *v};
    }

    static std::string str(const Element& x) {
        return detail::word_str(x.first) + "|" + detail::word_str(x.second);
    }
    static std::string atom_str(const Element& x) {
        if (x.first.size() <= 1 && x.second.size() <= 1) return str(x);
        return "(" + str(x) + ")";
    }
    static std::string key(const Element& x) { return x.first + "|" + x.second; }

    /// All pairs (u, v) with |u| + |v| <= n, ordered by Less.
    std::vector<Element> enumerate_up_to(std::size_t n) const {
        FreeMonoid left(first_), right(second_);
        std::vector<Element> out;
        for (const auto& u : left.enumerate_up_to(n))
            for (const auto& v : right.enumerate_up_to(n - u.size()))
                out.push_back({u, v});
        std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
            return Less{}(a, b);
        });
        return out;
    }

    /// Pairs written `u|v`; a bare word is read as (u, identity).
    Element parse_element(std::string_view text) const {
        FreeMonoid left(first_), right(second_);
        auto bar = text.find('|');
        if (bar == std::string_view::npos) return {left.parse_element(text), {}};
        return {left.parse_element(text.substr(0, bar)),
                right.parse_element(text.substr(bar + 1))};
    }

private:
    std::vector<char> first_;
    std::vector<char> second_;
};

static_assert(Monoid<FreeMonoid>);
static_assert(Monoid<ProductMonoid>);

}  // namespace ratexp
