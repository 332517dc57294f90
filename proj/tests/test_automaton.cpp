#include <doctest.h>

#include "ratexp/automaton.hpp"
#include "ratexp/standard.hpp"
#include "random_exprs.hpp"

using namespace ratexp;

namespace {

using S = IntegerSemiring;
using M = FreeMonoid;

Polynomial<S, M> mono(const std::string& label, std::int64_t w) {
    return Polynomial<S, M>::monomial(label, w);
}

// The two-state automaton of the running example: loop 2a, arcs -b and a.
WeightedAutomaton<S, M> loop_automaton() {
    auto a = WeightedAutomaton<S, M>::with_size(2);
    a.states = {"p", "q"};
    a.initial = {1, 0};
    a.final_weights = {1, 1};
    a.transitions[0][0] = mono("a", 2);
    a.transitions[0][1] = mono("b", -1);
    a.transitions[1][0] = mono("a", 1);
    return a;
}

}  // namespace

TEST_CASE("behaviour coefficients of the running example automaton") {
    auto a = loop_automaton();
    CHECK(behaviour_coeff(a, FreeMonoid::identity()) == 1);  // I.T
    CHECK(behaviour_coeff(a, std::string("a")) == 2);
    CHECK(behaviour_coeff(a, std::string("b")) == -1);
    CHECK(behaviour_coeff(a, std::string("aa")) == 4);
    CHECK(behaviour_coeff(a, std::string("ba")) == -1);
    CHECK(behaviour_coeff(a, std::string("bb")) == 0);
}

TEST_CASE("single-coefficient and vectorized behaviour agree") {
    ExprPool<S, M> pool;
    FreeMonoid monoid({'a', 'b'});
    testing::ExprGen<S, M> gen(pool, testing::letter_atoms(monoid.letters()), 99);
    for (int i = 0; i < 40; ++i) {
        auto e = gen.valid_expr(4);
        auto aut = position_automaton<S, M>(e).aut;
        auto series = behaviour_up_to(aut, monoid, 3);
        for (const auto& m : monoid.enumerate_up_to(3))
            CHECK(S::eq(series.coeff(m), behaviour_coeff(aut, m)));
    }
}

TEST_CASE("behaviour over a product monoid factors pairs") {
    using PM = ProductMonoid;
    auto a = WeightedAutomaton<S, PM>::with_size(2);
    a.states = {"0", "1"};
    a.initial = {1, 0};
    a.final_weights = {0, 1};
    // (a, e) then (e, x) in either order composes to (a, x)
    a.transitions[0][1] = Polynomial<S, PM>::monomial({"a", ""}, 1);
    a.transitions[1][1] = Polynomial<S, PM>::monomial({"", "x"}, 1);
    CHECK(behaviour_coeff(a, PM::Element{"a", "x"}) == 1);
    CHECK(behaviour_coeff(a, PM::Element{"a", ""}) == 1);
    CHECK(behaviour_coeff(a, PM::Element{"", "x"}) == 0);
    PM monoid({'a'}, {'x'});
    auto series = behaviour_up_to(a, monoid, 3);
    CHECK(series.coeff(PM::Element{"a", "xx"}) == 1);
}

TEST_CASE("conjugacy by the identity matrix") {
    auto a = loop_automaton();
    CHECK(is_conjugate(a, a, StateMap::identity(2).matrix<S>()));
}

TEST_CASE("zero transfer matrix is not a conjugacy to a nonzero-initial automaton") {
    auto a = loop_automaton();
    WeightMatrix<S> zero(2, WeightRow<S>(2, 0));
    CHECK_FALSE(is_conjugate(a, a, zero));
    WeightMatrix<S> ragged(1, WeightRow<S>(2, 0));
    CHECK_THROWS_AS(is_conjugate(a, a, ragged), StructureError);
}

TEST_CASE("conjugacy implies equivalence, exhaustively to length 4") {
    // quotients produced by the derived construction supply conjugate pairs
    ExprPool<S, M> pool;
    FreeMonoid monoid({'a', 'b'});
    auto e = parse(pool, monoid, "a*.(a*+<-1>b*)*");
    auto standard = position_automaton<S, M>(e).aut;
    auto quotient_pair = [&](const WeightedAutomaton<S, M>& b, const WeightMatrix<S>& x) {
        REQUIRE(is_conjugate(standard, b, x));
        auto lhs = behaviour_up_to(standard, monoid, 4);
        auto rhs = behaviour_up_to(b, monoid, 4);
        CHECK(series_eq(lhs, rhs));
    };
    StateMap merge({0, 1, 1, 2}, 3);
    REQUIRE(check_morphism(standard, merge).ok);
    quotient_pair(quotient_by(standard, merge), merge.matrix<S>());
}

TEST_CASE("morphism check diagnoses the first offending pair") {
    auto a = loop_automaton();
    auto bad = check_morphism(a, StateMap({0, 0}, 1));
    CHECK_FALSE(bad.ok);
    CHECK(bad.diagnostic.find("p") != std::string::npos);
    CHECK(bad.diagnostic.find("q") != std::string::npos);
    CHECK(check_morphism(a, StateMap::identity(2)).ok);
}

TEST_CASE("quotient by the identity map is the automaton itself") {
    auto a = loop_automaton();
    auto q = quotient_by(a, StateMap::identity(2));
    CHECK(q.states == a.states);
    CHECK(row_eq<S>(q.initial, a.initial));
    CHECK(row_eq<S>(q.final_weights, a.final_weights));
    for (std::size_t p = 0; p < 2; ++p)
        CHECK(poly_row_eq<S, M>(q.transitions[p], a.transitions[p]));
}

TEST_CASE("quotient rejects merging states with different final weights") {
    auto a = loop_automaton();
    a.final_weights = {1, 2};
    CHECK_THROWS_AS(quotient_by(a, StateMap({0, 0}, 1)), StructureError);
}

TEST_CASE("quotient does not depend on the representative selection") {
    ExprPool<S, M> pool;
    FreeMonoid monoid({'a', 'b'});
    auto e = parse(pool, monoid, "a*.(a*+<-1>b*)*");
    auto standard = position_automaton<S, M>(e).aut;
    StateMap merge({0, 1, 1, 2}, 3);
    auto first = quotient_by(standard, merge, {}, std::vector<std::size_t>{0, 1, 3});
    auto second = quotient_by(standard, merge, {}, std::vector<std::size_t>{0, 2, 3});
    CHECK(row_eq<S>(first.initial, second.initial));
    CHECK(row_eq<S>(first.final_weights, second.final_weights));
    for (std::size_t p = 0; p < first.size(); ++p)
        CHECK(poly_row_eq<S, M>(first.transitions[p], second.transitions[p]));
    CHECK_THROWS_AS(quotient_by(standard, merge, {}, std::vector<std::size_t>{0, 3, 3}),
                    StructureError);
}

TEST_CASE("composed quotients equal the quotient by the composition") {
    ExprPool<S, M> pool;
    FreeMonoid monoid({'a', 'b'});
    auto e = parse(pool, monoid, "(a+a)+(a+a)");
    auto standard = position_automaton<S, M>(e).aut;  // 5 states, cores all alike
    StateMap first({0, 1, 1, 2, 2}, 3);
    StateMap second({0, 1, 1}, 2);
    REQUIRE(check_morphism(standard, first).ok);
    auto once = quotient_by(quotient_by(standard, first), second);
    auto composed = quotient_by(standard, first.then(second));
    CHECK(row_eq<S>(once.initial, composed.initial));
    CHECK(row_eq<S>(once.final_weights, composed.final_weights));
    for (std::size_t p = 0; p < once.size(); ++p)
        CHECK(poly_row_eq<S, M>(once.transitions[p], composed.transitions[p]));
}
