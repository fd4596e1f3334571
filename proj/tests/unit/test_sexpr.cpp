#include "doctest.h"
#include "pcaforge/sexpr.hpp"
#include "pcaforge/stdlib.hpp"

using namespace pcaforge;

TEST_CASE("reader basics") {
    auto v = sexpr::read_all("(a \"b \\\"c\" (d)) ; comment\n x");
    REQUIRE(v.size() == 2);
    CHECK(v[0].is_form("a"));
    CHECK(v[0].items[1].text == "b \"c");
    CHECK(v[1].is_symbol("x"));
    CHECK(sexpr::read_one(sexpr::print(v[0])) == v[0]);
    CHECK_THROWS_AS(sexpr::read_one("(a"), ParseError);
    CHECK_THROWS_AS(sexpr::read_one(")"), ParseError);
    CHECK_THROWS_AS(sexpr::read_one("\"abc"), ParseError);
}

TEST_CASE("set round trip") {
    RSet a = RSet::of({{numeral(2), canonical_numeral(2)}, {Term::k(), omega_truncation(2)}});
    Document d = read_document("(define a " + sexpr::print(to_sexpr(a)) + ")", 1000);
    REQUIRE(d.values.size() == 1);
    CHECK(as_plain(d.values[0]) == a);

    LabeledRSet l = LabeledRSet::of({{1, Term::s(), label_zero(canonical_numeral(1))}, {0, parse("a3"), {}}});
    Document e = read_document("(define l " + sexpr::print(to_sexpr(l)) + ")", 1000);
    CHECK(as_labeled(e.values[0]) == l);
}

TEST_CASE("verdict round trip") {
    for (Verdict v : {Verdict::realized({.cap = 10}), Verdict::not_realized({.cap = 3}),
                      Verdict::unknown(Verdict::Reason::Budget, {.cap = 1000}),
                      Verdict::unknown(Verdict::Reason::ApproximateFragment, {100, 2, 3, std::nullopt})}) {
        Verdict w = verdict_from_sexpr(sexpr::read_one(sexpr::print(to_sexpr(v))));
        CHECK(w.same_outcome(v));
        CHECK(w.bounds == v.bounds);
    }
    CHECK(sexpr::print(to_sexpr(Verdict::unknown(Verdict::Reason::Budget, {.cap = 1000}))) ==
          "(verdict UNKNOWN budget (cap 1000))");
}

TEST_CASE("documents") {
    Document d = read_document(R"(
        (define one (numeral 1))
        (define two (rset (pair "K" one) (pair "S K K" (numeral 0))))
        (check "$p #0 I" (mem (numeral 0) one))
        (approx "I" (implies (mem one two) (mem one two)) (candidates "I" "K") (universe one))
        (iplemma (numeral 2) two "I" "K")
        (check "K" (ball one (bex two (eq %0 %1))))
    )", 10000);
    CHECK(d.names.size() >= 3);
    REQUIRE(d.queries.size() == 4);
    CHECK(d.queries[0].kind == Query::Kind::Check);
    CHECK(d.queries[1].candidates.size() == 2);
    CHECK(d.queries[1].universe.size() == 1);
    CHECK(d.queries[2].kind == Query::Kind::IpLemma);
    CHECK(d.queries[3].formula.is_closed());
    auto params = d.plain_params();
    CHECK(check(d.queries[0].realizer, d.queries[0].formula, params, 10000).is_realized());

    CHECK_THROWS_AS(read_document("(check \"K\" (mem %0 x))", 100), ParseError);
    CHECK_THROWS_AS(read_document("(define x (numeral 1)) (define x (numeral 2))", 100), ParseError);
    CHECK_THROWS_AS(read_document("(define x (rset (pair \"K (\" x)))", 100), ParseError);
    CHECK_THROWS_AS(read_document("(frob)", 100), ParseError);
}
