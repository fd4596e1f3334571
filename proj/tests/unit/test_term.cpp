#include <random>

#include "doctest.h"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"
#include "pcaforge/term.hpp"

using namespace pcaforge;

namespace {

Term random_term(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 4);
    switch (pick(rng)) {
        case 0:
            return Term::s();
        case 1:
            return Term::k();
        case 2:
            return Term::atom(1 + rng() % 6);
        case 3:
            return Term::var(rng() % 3);
        case 4: {
            std::uint32_t a = 1 + rng() % 5, b = 1 + rng() % 5;
            return Term::oracle(Perm::swap(a, b));
        }
        default:
            return Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1));
    }
}

Perm random_perm(std::mt19937_64& rng) {
    std::vector<std::uint32_t> pts{1, 2, 3, 4, 5, 6, 7};
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<Perm::Pair> pairs;
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
        pairs.emplace_back(i + 1, pts[i]);
    }
    return Perm::from_pairs(pairs);
}

}  // namespace

TEST_CASE("parse reads the grammar") {
    CHECK(parse("K a1 a2") == Term::app(Term::app(Term::k(), Term::atom(1)), Term::atom(2)));
    CHECK(parse("z[] (K K a1)") ==
          Term::app(Term::oracle(Perm{}), Term::app(Term::app(Term::k(), Term::k()), Term::atom(1))));
    CHECK(parse("z[1->2,2->1] x0") == Term::app(Term::oracle(Perm::swap(1, 2)), Term::var(0)));
    CHECK(parse("I") == parse("S K K"));
    CHECK(parse("#0") == parse("S K K"));
    CHECK(parse("$succ #2") != parse("#3"));
    CHECK(parse("( ( S ) K )K") == parse("S K K"));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("K )"), ParseError);
    CHECK_THROWS_AS(parse("(K"), ParseError);
    CHECK_THROWS_AS(parse("a0"), ParseError);
    CHECK_THROWS_AS(parse("z[1->2,1->3]"), ParseError);
    CHECK_THROWS_AS(parse("$nosuch"), ParseError);
    try {
        parse("S K q");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("print uses minimal parentheses") {
    CHECK(print(ap(Term::s(), Term::k(), Term::k())) == "S K K");
    CHECK(print(Term::atom(7)) == "a7");
    CHECK(print(Term::app(Term::k(), Term::app(Term::k(), Term::atom(1)))) == "K (K a1)");
    CHECK(print(parse("z[2->1,1->2] x3")) == "z[1->2,2->1] x3");
    CHECK(print(parse("K #3"), {.fold_numerals = true}) == "K #3");
    CHECK(print(parse("#3 a1"), {.fold_numerals = true}) == "#3 a1");
}

TEST_CASE("parse inverts print on random terms") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Term t = random_term(rng, 6);
        CHECK(parse(print(t)) == t);
        CHECK(parse(print(t, {.fold_numerals = true})) == t);
    }
}

TEST_CASE("structural predicates") {
    CHECK(parse("K a1").is_normal());
    CHECK_FALSE(parse("K a1 a2").is_normal());
    CHECK(parse("z[] x0").is_normal());
    CHECK_FALSE(parse("z[] a1").is_normal());
    CHECK_FALSE(parse("S a1 a2 a3").is_normal());
    CHECK(parse("S a1 a2").is_normal());
    CHECK_FALSE(parse("a1 (K a1 a2)").is_normal());

    CHECK(parse("S K K").is_closed());
    CHECK_FALSE(parse("x3").is_closed());
    CHECK_FALSE(parse("K (z[] a1) x0").is_closed());

    CHECK(atoms_of(parse("K a1 (a3 a1)")) == AtomSet{1, 3});
    CHECK(atoms_of(parse("z[5->6]")).empty());
    CHECK(atoms_of(parse("S K K")).empty());
}

TEST_CASE("perm algebra") {
    auto p = Perm::from_pairs({{1, 2}, {2, 1}});
    auto q = Perm::from_pairs({{2, 3}, {3, 2}});
    CHECK(compose(Perm::swap(1, 2), Perm::swap(1, 2)).is_identity());
    CHECK(Perm::from_pairs({{1, 2}, {2, 3}, {3, 1}}).inverse() == Perm::from_pairs({{1, 3}, {2, 1}, {3, 2}}));
    // q is applied first.
    CHECK(compose(p, q) == Perm::from_pairs({{1, 2}, {2, 3}, {3, 1}}));
    CHECK(compose(q, p) == Perm::from_pairs({{1, 3}, {2, 1}, {3, 2}}));
    CHECK(Perm::from_pairs({{5, 6}}) == Perm::swap(5, 6));
    CHECK(Perm::from_pairs({{4, 4}}).is_identity());
    CHECK(to_string(Perm::from_pairs({{3, 1}, {1, 3}})) == "[1->3,3->1]");
    CHECK_THROWS_AS(Perm::from_pairs({{1, 2}, {3, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Perm::from_pairs({{0, 2}}), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Perm a = random_perm(rng), b = random_perm(rng);
        auto ab = compose(a, b);
        for (std::uint32_t n = 1; n < 10; ++n) {
            CHECK(ab(n) == a(b(n)));
            CHECK(a.inverse()(a(n)) == n);
        }
    }
}

TEST_CASE("automorphism action") {
    CHECK(apply_automorphism(Perm::swap(1, 2), parse("a1 a2")) == parse("a2 a1"));
    CHECK(apply_automorphism(Perm::swap(3, 9), parse("S K K")) == parse("S K K"));
    // F = [1->7] is the transposition of 1 and 7; F after swap(1,2)^-1 sends 2 -> 7, 7 -> 1.
    CHECK(apply_automorphism(Perm::swap(1, 2), parse("z[1->7]")) == parse("z[2->7,7->1]"));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Term t = random_term(rng, 6);
        Perm p = random_perm(rng), q = random_perm(rng);
        CHECK(apply_automorphism(Perm{}, t) == t);
        CHECK(apply_automorphism(compose(p, q), t) == apply_automorphism(p, apply_automorphism(q, t)));
        Term u = apply_automorphism(p, t);
        CHECK(u.is_normal() == t.is_normal());
        CHECK(u.is_closed() == t.is_closed());
        CHECK(u.size() == t.size());
        AtomSet image;
        for (auto a : t.atoms()) {
            image.push_back(p(a));
        }
        std::sort(image.begin(), image.end());
        CHECK(u.atoms() == image);
    }
}

TEST_CASE("deep terms do not exhaust the native stack") {
    Term t = Term::k();
    for (int i = 0; i < 500000; ++i) {
        t = Term::app(Term::atom(1), std::move(t));
    }
    Term u = t;
    CHECK(u == t);
    CHECK(substitute(t, 0, Term::s()) == t);
    CHECK(print(t).size() > 500000);
}
