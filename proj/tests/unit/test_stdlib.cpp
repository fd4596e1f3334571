#include <random>

#include "doctest.h"
#include "pcaforge/primrec.hpp"
#include "pcaforge/reduce.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

using namespace pcaforge;

namespace {

constexpr std::uint64_t kCap = 10000;

Term run(const Term& t) {
    auto o = red(t, kCap);
    REQUIRE(o.reduced());
    return o.value();
}

bool only_s_and_k(const Term& t) { return t.is_closed() && t.atoms().empty() && !t.has_oracle(); }

}  // namespace

TEST_CASE("bracket abstraction") {
    CHECK(bracket_abstract(0, Term::var(0)) == parse("S K K"));
    CHECK(bracket_abstract(0, Term::k()) == parse("K K"));
    CHECK(run(ap(bracket_abstract(0, Term::var(0)), Term::atom(3))) == Term::atom(3));
    Term self = bracket_abstract(0, Term::app(Term::var(0), Term::var(0)));
    CHECK(run(Term::app(self, Term::k())) == parse("K K"));
    // Applications are abstracted structurally even without the variable.
    CHECK(bracket_abstract(0, parse("K a1")) == parse("S (K K) (K a1)"));
    CHECK(bracket_abstract(0, parse("K a1")).is_normal());
}

TEST_CASE("stdlib members are S/K normal forms") {
    for (const auto& [name, t] : stdlib::members()) {
        INFO(name);
        CHECK(t.is_normal());
        CHECK(only_s_and_k(t));
        CHECK(apply_automorphism(Perm::swap(1, 2), t) == t);
    }
}

TEST_CASE("numerals") {
    CHECK(numeral(0) == parse("S K K"));
    for (std::uint32_t n = 0; n < 40; ++n) {
        CHECK(numeral_value(numeral(n)) == n);
        CHECK(numeral(n).is_normal());
    }
    for (std::uint32_t n = 1; n < 12; ++n) {
        CHECK(run(ap(stdlib::pair(), stdlib::fls(), numeral(n - 1))) == numeral(n));
    }
    CHECK_FALSE(numeral_value(parse("a1")).has_value());
    CHECK_FALSE(numeral_value(parse("K")).has_value());
    CHECK(numeral_value(numeral(1000)) == 1000u);
}

TEST_CASE("boolean, pairing and numeral laws") {
    const Term a = parse("a1 a2"), b = parse("K a3");
    CHECK(run(ap(stdlib::tru(), a, b)) == a);
    CHECK(run(ap(stdlib::fls(), a, b)) == b);
    CHECK(run(stdlib::proj0(stdlib::mkpair(a, b))) == a);
    CHECK(run(stdlib::proj1(stdlib::mkpair(a, b))) == b);
    CHECK(run(ap(stdlib::iszero(), numeral(0))) == stdlib::tru());
    for (std::uint32_t n = 0; n < 16; ++n) {
        CHECK(run(ap(stdlib::iszero(), numeral(n + 1))) == stdlib::fls());
        CHECK(run(ap(stdlib::pred(), numeral(n + 1))) == numeral(n));
        CHECK(run(ap(stdlib::succ(), numeral(n))) == numeral(n + 1));
    }
    for (std::uint32_t n = 0; n <= 12; ++n) {
        for (std::uint32_t m = 0; m <= 12; ++m) {
            CHECK(run(ap(stdlib::eqnat(), numeral(n), numeral(m))) == (n == m ? stdlib::tru() : stdlib::fls()));
        }
    }
}

TEST_CASE("fixed points") {
    // Innermost evaluation unfolds y f forever; both sides of y f = f (y f) stay undefined.
    for (const char* f : {"K a1", "S K K", "K"}) {
        Term ft = parse(f);
        CHECK_FALSE(red(Term::app(stdlib::y(), ft), 2000).reduced());
        CHECK_FALSE(red(Term::app(ft, Term::app(stdlib::y(), ft)), 2000).reduced());
    }
    Term f = lambda({0, 1}, Term::var(1));
    auto ypf = red(Term::app(stdlib::yp(), f), kCap);
    REQUIRE(ypf.reduced());
    Term e = Term::atom(4);
    CHECK(run(ap(stdlib::yp(), f, e)) == run(ap(f, ypf.value(), e)));
    CHECK(run(ap(stdlib::yp(), f, e)) == e);
}

TEST_CASE("numeral case tables") {
    Term c = numeral_case({{0, numeral(1)}, {3, Term::atom(2)}}, Term::k());
    CHECK(run(ap(c, numeral(0))) == numeral(1));
    CHECK(run(ap(c, numeral(1))) == Term::k());
    CHECK(run(ap(c, numeral(3))) == Term::atom(2));
    CHECK(run(ap(c, numeral(9))) == Term::k());
    CHECK(run(ap(numeral_case({}, Term::atom(1)), numeral(4))) == Term::atom(1));
}

TEST_CASE("primitive recursive compilation") {
    CHECK(run(ap(compile_primrec(PRFun::succ()), numeral(3))) == numeral(4));
    CHECK(run(ap(compile_primrec(prlib::add()), numeral(2), numeral(3))) == numeral(5));
    Term bc = compile_primrec(PRFun::bounded_case({{0, 1}}, 0));
    CHECK(run(ap(bc, numeral(0))) == numeral(1));
    CHECK(run(ap(bc, numeral(9))) == numeral(0));
    CHECK(compile_primrec(PRFun::zero()) == numeral(0));

    const std::vector<std::pair<const char*, PRFun>> fns = {
        {"add", prlib::add()}, {"mul", prlib::mul()}, {"pred", prlib::pred()}, {"monus", prlib::monus()},
        {"proj", PRFun::proj(3, 2)}, {"zero2", PRFun::zero(2)},
        {"comp", PRFun::comp(prlib::add(), {PRFun::succ(), PRFun::succ()})},
    };
    for (const auto& [name, fn] : fns) {
        INFO(name);
        Term t = compile_primrec(fn);
        CHECK(only_s_and_k(t));
        CHECK(t.is_normal());
        for (std::uint64_t a = 0; a < 5; ++a) {
            for (std::uint64_t b = 0; b < 5; ++b) {
                std::vector<std::uint64_t> args{a, b, 1};
                args.resize(fn.arity());
                Term call = t;
                for (auto v : args) {
                    call = Term::app(call, numeral(static_cast<std::uint32_t>(v)));
                }
                auto o = red(call, 200000);
                REQUIRE(o.reduced());
                CHECK(numeral_value(o.value()) == evaluate(fn, args));
            }
        }
    }
    CHECK_THROWS_AS(PRFun::comp(prlib::add(), {PRFun::succ()}), std::invalid_argument);
    CHECK_THROWS_AS(PRFun::primrec(PRFun::zero(1), PRFun::succ()), std::invalid_argument);
    CHECK_THROWS_AS(PRFun::proj(2, 2), std::invalid_argument);
    std::vector<std::uint64_t> one{1};
    CHECK_THROWS_AS(evaluate(prlib::add(), one), std::invalid_argument);
}
