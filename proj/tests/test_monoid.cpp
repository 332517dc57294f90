#include <doctest.h>

#include "ratexp/monoid.hpp"

using namespace ratexp;

TEST_CASE("free monoid product and identity") {
    CHECK(FreeMonoid::mul("ab", "ba") == "abba");
    CHECK(FreeMonoid::mul(FreeMonoid::identity(), "m") == "m");
    CHECK(FreeMonoid::mul("m", FreeMonoid::identity()) == "m");
    CHECK(FreeMonoid::length(FreeMonoid::identity()) == 0);
}

TEST_CASE("product monoid is componentwise") {
    ProductMonoid::Element a1{"a", ""};
    ProductMonoid::Element b2{"", "b"};
    CHECK(ProductMonoid::mul(a1, b2) == ProductMonoid::Element{"a", "b"});
    CHECK(ProductMonoid::mul(ProductMonoid::identity(), a1) == a1);
    CHECK(ProductMonoid::length(ProductMonoid::Element{"ab", "x"}) == 3);
}

TEST_CASE("enumeration order and counts") {
    FreeMonoid free({'a', 'b'});
    auto words1 = free.enumerate_up_to(1);
    REQUIRE(words1.size() == 3);
    CHECK(words1[0] == "");
    CHECK(words1[1] == "a");
    CHECK(words1[2] == "b");
    // brute-force count for n = 2: 1 + 2 + 4
    CHECK(free.enumerate_up_to(2).size() == 7);

    ProductMonoid prod({'a'}, {'b'});
    auto pairs = prod.enumerate_up_to(1);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == ProductMonoid::Element{"", ""});
    CHECK(pairs[1] == ProductMonoid::Element{"a", ""});
    CHECK(pairs[2] == ProductMonoid::Element{"", "b"});
}

TEST_CASE("closed-form size of free enumeration") {
    FreeMonoid free({'a', 'b'});
    for (std::size_t n = 0; n <= 5; ++n) {
        std::size_t expected = 0, power = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            expected += power;
            power *= 2;
        }
        CHECK(free.enumerate_up_to(n).size() == expected);
    }
}

TEST_CASE("gradation on all pairs up to length 3") {
    FreeMonoid free({'a', 'b'});
    auto words = free.enumerate_up_to(3);
    for (const auto& u : words)
        for (const auto& v : words)
            CHECK(FreeMonoid::length(FreeMonoid::mul(u, v)) ==
                  FreeMonoid::length(u) + FreeMonoid::length(v));

    ProductMonoid prod({'a'}, {'x'});
    auto pairs = prod.enumerate_up_to(3);
    for (const auto& u : pairs)
        for (const auto& v : pairs)
            CHECK(ProductMonoid::length(ProductMonoid::mul(u, v)) ==
                  ProductMonoid::length(u) + ProductMonoid::length(v));
}

TEST_CASE("division helpers") {
    CHECK(*FreeMonoid::left_divide("ab", "abba") == "ba");
    CHECK_FALSE(FreeMonoid::left_divide("b", "abba").has_value());
    CHECK(*FreeMonoid::right_divide("abba", "ba") == "ab");
    CHECK_FALSE(FreeMonoid::right_divide("abba", "ab").has_value());
    auto rest = ProductMonoid::left_divide({"a", ""}, {"ab", "x"});
    CHECK(*rest == ProductMonoid::Element{"b", "x"});
}

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(FreeMonoid({'a', 'a'}), StructureError);
    FreeMonoid free({'a', 'b'});
    CHECK(free.parse_element("abba") == "abba");
    CHECK(free.parse_element("\\e") == "");
    CHECK_THROWS_AS(free.parse_element("abc"), StructureError);
    ProductMonoid prod({'a'}, {'x', 'y'});
    CHECK(prod.parse_element("a|xy") == ProductMonoid::Element{"a", "xy"});
    CHECK(prod.parse_element("|y") == ProductMonoid::Element{"", "y"});
}
