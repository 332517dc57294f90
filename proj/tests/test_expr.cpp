#include <doctest.h>

#include "ratexp/expr.hpp"
#include "random_exprs.hpp"

using namespace ratexp;

namespace {

using S = IntegerSemiring;
using M = FreeMonoid;
using E = Expr<S, M>;

struct Fixture {
    ExprPool<S, M> pool;
    FreeMonoid monoid{{'a', 'b'}};
    ExprRef<S, M> parse_it(const std::string& text) { return parse(pool, monoid, text); }
};

}  // namespace

TEST_CASE("parsing the running example") {
    Fixture f;
    auto e = f.parse_it("a*.(a*+<-1>b*)*");
    REQUIRE(e->kind == E::Kind::product);
    auto lhs = e->left;
    REQUIRE(lhs->kind == E::Kind::star);
    CHECK(lhs->left->kind == E::Kind::atom);
    CHECK(lhs->left->element == "a");
    auto rhs = e->right;
    REQUIRE(rhs->kind == E::Kind::star);
    auto body = rhs->left;
    REQUIRE(body->kind == E::Kind::sum);
    CHECK(body->left->kind == E::Kind::star);
    REQUIRE(body->right->kind == E::Kind::left_scale);
    CHECK(body->right->scale == -1);
    CHECK(body->right->left->kind == E::Kind::star);
    CHECK(body->right->left->left->element == "b");
}

TEST_CASE("interning gives structural equality by pointer") {
    Fixture f;
    CHECK(f.parse_it("a*.(a*+<-1>b*)*") == f.parse_it("a* . (a* + <-1> b*)*"));
    CHECK(f.parse_it("a.b") != f.parse_it("b.a"));
    CHECK(f.parse_it("(ab)") != f.parse_it("a.b"));
    CHECK(f.parse_it("(ab)")->kind == E::Kind::atom);
}

TEST_CASE("constants, juxtaposition, postfix weights") {
    Fixture f;
    CHECK(f.parse_it("\\e")->kind == E::Kind::one);
    CHECK(f.parse_it("\\z")->kind == E::Kind::zero);
    CHECK(f.parse_it("ab") == f.parse_it("a.b"));
    auto e = f.parse_it("a<2>");
    REQUIRE(e->kind == E::Kind::right_scale);
    CHECK(e->scale == 2);
    // postfix weight binds to the preceding base, prefix scale to the rest
    CHECK(f.parse_it("a<2>b") == f.pool.product(e, f.parse_it("b")));
    CHECK(f.parse_it("a.<2>b") ==
          f.pool.product(f.parse_it("a"), f.pool.left_scale(2, f.parse_it("b"))));
    CHECK(f.parse_it("<2>a<3>") == f.pool.left_scale(2, f.pool.right_scale(f.parse_it("a"), 3)));
}

TEST_CASE("pair atoms over a product monoid") {
    using PM = ProductMonoid;
    ExprPool<S, PM> pool;
    PM monoid({'a'}, {'x', 'y'});
    auto e = parse(pool, monoid, "a|x . \\e|y");
    REQUIRE(e->kind == Expr<S, PM>::Kind::product);
    CHECK(e->left->element == PM::Element{"a", "x"});
    CHECK(e->right->element == PM::Element{"", "y"});
    CHECK(parse(pool, monoid, "(a|xy)")->element == PM::Element{"a", "xy"});
    // a bare letter is an atom with an empty second component
    CHECK(parse(pool, monoid, "a")->element == PM::Element{"a", ""});
    CHECK_THROWS_AS(parse(pool, monoid, "\\e|\\e"), ParseError);
}

TEST_CASE("parse errors carry byte offsets") {
    Fixture f;
    CHECK_THROWS_AS(f.parse_it("a+"), ParseError);
    CHECK_THROWS_AS(f.parse_it("c"), ParseError);
    CHECK_THROWS_AS(f.parse_it("a|b"), ParseError);  // pair atom over a free monoid
    CHECK_THROWS_AS(f.parse_it("<x>a"), ParseError);
    CHECK_THROWS_AS(f.parse_it("(a"), ParseError);
    try {
        f.parse_it("a+%");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.offset() == 2);
    }
}

TEST_CASE("constant term") {
    Fixture f;
    auto e1 = f.parse_it("a*.(a*+<-1>b*)*");
    REQUIRE(constant_term<S, M>(e1).has_value());
    CHECK(*constant_term<S, M>(e1) == 1);
    CHECK_FALSE(constant_term<S, M>(f.parse_it("\\e*")).has_value());
    CHECK(*constant_term<S, M>(f.parse_it("a*")) == 1);
    CHECK_THROWS_AS((require_valid<S, M>(f.parse_it("\\e*"))), ValidityError);
    try {
        require_valid<S, M>(f.parse_it("(a*+b)*"));
        FAIL("expected a validity error");
    } catch (const ValidityError& err) {
        CHECK(std::string(err.what()).find("a*+b") != std::string::npos);
        CHECK(std::string(err.what()).find("1") != std::string::npos);
    }
}

TEST_CASE("literal length") {
    Fixture f;
    CHECK(literal_length<S, M>(f.parse_it("a*.(a*+<-1>b*)*")) == 3);
    CHECK(literal_length<S, M>(f.parse_it("\\e")) == 0);
    CHECK(literal_length<S, M>(f.parse_it("<2>a<3>")) == 1);
    CHECK(literal_length<S, M>(f.parse_it("(ab)")) == 1);
}

TEST_CASE("print emits the input grammar") {
    Fixture f;
    CHECK(print<S, M>(f.parse_it("a*.(a*+<-1>b*)*")) == "a*.(a*+<-1>b*)*");
    CHECK(print<S, M>(f.parse_it("(ab)*")) == "(ab)*");
    CHECK(print<S, M>(f.pool.right_scale(f.pool.left_scale(2, f.parse_it("a")), 3)) ==
          "(<2>a)<3>");
}

TEST_CASE("parse after print is the identity on 1000 random expressions") {
    Fixture f;
    testing::ExprGen<S, M> gen(f.pool, testing::letter_atoms(f.monoid.letters()), 20240811);
    for (int i = 0; i < 1000; ++i) {
        auto e = gen.expr(5);
        auto text = print<S, M>(e);
        CAPTURE(text);
        CHECK(f.parse_it(print<S, M>(e)) == e);
    }
}

TEST_CASE("round trip holds for pair atoms too") {
    using PM = ProductMonoid;
    ExprPool<S, PM> pool;
    PM monoid({'a', 'b'}, {'x'});
    std::vector<PM::Element> atoms{{"a", ""}, {"", "x"}, {"b", "x"}, {"ab", "x"}};
    testing::ExprGen<S, PM> gen(pool, atoms, 77);
    for (int i = 0; i < 300; ++i) {
        auto e = gen.expr(4);
        auto text = print<S, PM>(e);
        CAPTURE(text);
        CHECK(parse(pool, monoid, print<S, PM>(e)) == e);
    }
}
