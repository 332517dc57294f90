#pragma once

#include <charconv>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ratexp {

/// A weight domain: commutative addition with identity zero, associative
/// multiplication with identity one and annihilating zero, and a *partial*
/// star.  star() returns nullopt outside its domain; absence is a value,
/// not an error.
template <class S>
concept Semiring = requires(const typename S::Weight& a, const typename S::Weight& b,
                            std::string_view text) {
    typename S::Weight;
    { S::zero() } -> std::same_as<typename S::Weight>;
    { S::one() } -> std::same_as<typename S::Weight>;
    { S::add(a, b) } -> std::same_as<typename S::Weight>;
    { S::mul(a, b) } -> std::same_as<typename S::Weight>;
    { S::star(a) } -> std::same_as<std::optional<typename S::Weight>>;
    { S::eq(a, b) } -> std::same_as<bool>;
    { S::parse(text) } -> std::same_as<std::optional<typename S::Weight>>;
    { S::str(a) } -> std::same_as<std::string>;
};

template <Semiring S>
bool is_zero(const typename S::Weight& w) {
    return S::eq(w, S::zero());
}

template <Semiring S>
bool is_one(const typename S::Weight& w) {
    return S::eq(w, S::one());
}

/// The two-element Boolean semiring; every element is starrable (k* = 1).
struct BooleanSemiring {
    using Weight = bool;
    static Weight zero() { return false; }
    static Weight one() { return true; }
    static Weight add(Weight a, Weight b) { return a || b; }
    static Weight mul(Weight a, Weight b) { return a && b; }
    static std::optional<Weight> star(Weight) { return true; }
    static bool eq(Weight a, Weight b) { return a == b; }
    static std::optional<Weight> parse(std::string_view text) {
        if (text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        return std::nullopt;
    }
    static std::string str(Weight a) { return a ? "true" : "false"; }
};

/// The integers; only 0 is starrable (0* = 1), anything else diverges.
struct IntegerSemiring {
    using Weight = std::int64_t;
    static Weight zero() { return 0; }
    static Weight one() { return 1; }
    static Weight add(Weight a, Weight b) { return a + b; }
    static Weight mul(Weight a, Weight b) { return a * b; }
    static std::optional<Weight> star(Weight a) {
        if (a == 0) return Weight{1};
        return std::nullopt;
    }
    static bool eq(Weight a, Weight b) { return a == b; }
    static std::optional<Weight> parse(std::string_view text) {
        Weight value = 0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) return std::nullopt;
        return value;
    }
    static std::string str(Weight a) { return std::to_string(a); }
};

/// Exact rationals (arbitrary-precision numerator/denominator).  Star is
/// deliberately restricted to 0; see AnalyticRationalSemiring for the
/// widened domain behind the `rational-star=analytic` flag.
struct RationalSemiring {
    using Weight = boost::multiprecision::cpp_rational;
    static Weight zero() { return Weight(0); }
    static Weight one() { return Weight(1); }
    static Weight add(const Weight& a, const Weight& b) { return a + b; }
    static Weight mul(const Weight& a, const Weight& b) { return a * b; }
    static std::optional<Weight> star(const Weight& a) {
        if (a == 0) return Weight(1);
        return std::nullopt;
    }
    static bool eq(const Weight& a, const Weight& b) { return a == b; }

    static std::optional<Weight> parse(std::string_view text) {
        auto slash = text.find('/');
        auto numerator = parse_integer(text.substr(0, slash));
        if (!numerator) return std::nullopt;
        if (slash == std::string_view::npos) return Weight(*numerator);
        auto denominator = parse_integer(text.substr(slash + 1));
        if (!denominator || *denominator == 0) return std::nullopt;
        return Weight(*numerator, *denominator);
    }

    static std::string str(const Weight& a) {
        if (boost::multiprecision::denominator(a) == 1)
            return boost::multiprecision::numerator(a).str();
        return boost::multiprecision::numerator(a).str() + "/" +
               boost::multiprecision::denominator(a).str();
    }

private:
    static std::optional<boost::multiprecision::cpp_int> parse_integer(std::string_view text) {
        bool negative = false;
        if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
            negative = text.front() == '-';
            text.remove_prefix(1);
        }
        if (text.empty()) return std::nullopt;
        boost::multiprecision::cpp_int value = 0;
        for (char c : text) {
            if (c < '0' || c > '9') return std::nullopt;
            value = value * 10 + (c - '0');
        }
        return negative ? -value : value;
    }
};

/// Rationals with k* = 1/(1-k) for every k != 1.
struct AnalyticRationalSemiring : RationalSemiring {
    static std::optional<Weight> star(const Weight& a) {
        if (a == 1) return std::nullopt;
        return Weight(1) / (Weight(1) - a);
    }
};

/// Tropical integers: min as addition, + as multiplication, +oo as zero.
/// k* = 0 (the one) for every k >= 0, undefined for k < 0.
struct MinPlusSemiring {
    struct Weight {
        bool infinite = true;
        std::int64_t value = 0;
    };
    static Weight zero() { return {}; }
    static Weight one() { return {false, 0}; }
    static Weight add(const Weight& a, const Weight& b) {
        if (a.infinite) return b;
        if (b.infinite) return a;
        return {false, std::min(a.value, b.value)};
    }
    static Weight mul(const Weight& a, const Weight& b) {
        if (a.infinite || b.infinite) return {};
        return {false, a.value + b.value};
    }
    static std::optional<Weight> star(const Weight& a) {
        if (a.infinite || a.value >= 0) return one();
        return std::nullopt;
    }
    static bool eq(const Weight& a, const Weight& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    static std::optional<Weight> parse(std::string_view text) {
        if (text == "oo" || text == "inf") return zero();
        std::int64_t value = 0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) return std::nullopt;
        return Weight{false, value};
    }
    static std::string str(const Weight& a) {
        return a.infinite ? "oo" : std::to_string(a.value);
    }
};

static_assert(Semiring<BooleanSemiring>);
static_assert(Semiring<IntegerSemiring>);
static_assert(Semiring<RationalSemiring>);
static_assert(Semiring<AnalyticRationalSemiring>);
static_assert(Semiring<MinPlusSemiring>);

}  // namespace ratexp
