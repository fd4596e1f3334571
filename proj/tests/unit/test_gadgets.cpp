#include "doctest.h"
#include "pcaforge/gadgets.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

using namespace pcaforge;

namespace {

Term run(const Term& t, std::uint64_t cap = 100000) {
    auto o = red(t, cap);
    REQUIRE(o.reduced());
    return o.value();
}

bool only_s_and_k(const Term& t) { return t.is_closed() && t.atoms().empty() && !t.has_oracle(); }

const Term kk0 = parse("K (K #0)");

}  // namespace

TEST_CASE("profiles") {
    auto h3 = HaltingProfile::parse("halts@3");
    CHECK_FALSE(h3.halts_by(0, 2));
    CHECK(h3.halts_by(0, 3));
    CHECK(h3.halting_stage(0) == 3u);
    CHECK_FALSE(HaltingProfile::parse("never").halts_by(0, 1000));
    CHECK_THROWS_AS(HaltingProfile::parse("halts@"), std::invalid_argument);
    CHECK_THROWS_AS(HaltingProfile::parse("sometimes"), std::invalid_argument);

    auto even = [](std::uint64_t m, std::uint64_t k) { return k >= m; };
    auto fp = HaltingProfile::from_function(even, 8, "k>=m", 5);
    CHECK(fp.halts_by(5, 6));
    CHECK_THROWS_AS(fp.halts_by(5, 8), std::out_of_range);
    CHECK_THROWS_AS(HaltingProfile::from_function([](auto, std::uint64_t k) { return k == 2; }, 5, "blip", 0),
                    std::invalid_argument);
}

TEST_CASE("stage indicator g") {
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    CHECK(run(ap(h3.g(), numeral(2))) == kk0);
    CHECK(run(ap(h3.g(), numeral(5))) == parse("S K K"));
    CHECK(run(ap(h3.g(), numeral(3))) == parse("S K K"));
    Gadgets nv(HaltingProfile::never(), 0);
    CHECK(run(ap(nv.g(), numeral(100))) == kk0);
    for (const auto* t : {&h3.g(), &h3.u(), &h3.v(), &h3.t(), &nv.v()}) {
        CHECK(t->is_normal());
        CHECK(only_s_and_k(*t));
    }
}

TEST_CASE("stage machine u") {
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    CHECK(run(ap(h3.u(), numeral(3))) == parse("K I"));
    CHECK(run(ap(h3.u(), numeral(3), parse("a1"))) == parse("I"));
    CHECK(run(ap(h3.u(), numeral(1), parse("I"))) == numeral(2));
    Gadgets nv(HaltingProfile::never(), 0);
    CHECK(run(ap(nv.u(), numeral(9), parse("I"))) == numeral(10));
}

TEST_CASE("fixed point chain v") {
    Gadgets h0(HaltingProfile::halts_at(0), 0);
    CHECK(run(ap(h0.v(), numeral(0)), 10000) == parse("I"));
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    CHECK(run(ap(h3.v(), numeral(0))) == parse("I"));
    CHECK(run(ap(h3.v(), numeral(2))) == parse("I"));
    Gadgets nv(HaltingProfile::never(), 0);
    for (std::uint64_t cap : {1000u, 10000u}) {
        CHECK_FALSE(red(ap(nv.v(), numeral(0)), cap).reduced());
    }
}

TEST_CASE("t and t-prime") {
    Gadgets h0(HaltingProfile::halts_at(0), 0);
    CHECK(run(ap(h0.t(), parse("a9")), 10000) == parse("I"));
    CHECK(run(ap(h0.t_prime(5, Term::oracle(Perm{})), parse("a9")), 10000) == numeral(5));
    CHECK(run(ap(h0.t_prime(5, Term::oracle(Perm::swap(5, 8))), parse("K")), 10000) == numeral(8));
    CHECK(h0.t().atoms().empty());
    CHECK(h0.t_prime(5, Term::oracle(Perm{})).atoms() == AtomSet{5});
    Gadgets nv(HaltingProfile::never(), 0);
    CHECK_FALSE(red(ap(nv.t(), parse("a9")), 5000).reduced());
}

TEST_CASE("probe family f") {
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    Term f = h3.f(5, Perm{});
    CHECK(f.is_normal());
    CHECK(run(ap(f, numeral(1))) == numeral(0));
    CHECK(run(ap(f, numeral(4))) == numeral(5));
    CHECK(run(ap(h3.f(5, Perm::swap(5, 6)), numeral(4))) == numeral(6));
    Gadgets nv(HaltingProfile::never(), 0);
    for (std::uint32_t l = 0; l <= 20; ++l) {
        CHECK(run(ap(nv.f(9, Perm::swap(9, 10)), numeral(l))) == numeral(0));
    }
}

TEST_CASE("type 1 probes") {
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    CHECK(probe_type1(h3.f(5, Perm{}), 20, 100000).consistent());
    auto k = probe_type1(Term::k(), 5, 1000);
    REQUIRE_FALSE(k.consistent());
    CHECK(k.witness->input == 0);
    CHECK(k.witness->outcome.value() == parse("K #0"));
    CHECK(probe_type1(stdlib::succ(), 10, 1000).consistent());
    auto omega = parse("S I I (S I I)");
    auto d = probe_type1(parse("K (S I I (S I I))"), 3, 200);
    CHECK_FALSE(d.consistent());
    CHECK_FALSE(d.witness->outcome.reduced());
    (void)omega;
}

TEST_CASE("type 2 identity probes") {
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    std::vector<Term> probes{stdlib::succ(), h3.f(5, Perm{})};
    Term id = lambda({0}, Term::var(0));
    CHECK(probe_type2_identity(id, probes, 6, 100000).consistent());

    // [x][n] succ (x n)
    Term shift = define({0, 1}, Term::app(Term::var(100), Term::app(Term::var(0), Term::var(1))),
                        {{100, stdlib::succ()}});
    auto r = probe_type2_identity(shift, probes, 6, 100000);
    REQUIRE_FALSE(r.consistent());
    CHECK(r.witness->input == 0);

    Term via_pair = define({0}, Term::app(Term::var(100), ap(Term::var(101), Term::var(0), Term::var(0))),
                           {{100, stdlib::p0()}, {101, stdlib::pair()}});
    CHECK(probe_type2_identity(via_pair, probes, 6, 100000).consistent());

    CHECK_THROWS_AS(probe_type2_identity(id, {Term::k()}, 3, 1000), std::invalid_argument);
}

TEST_CASE("atom preservation probe") {
    Gadgets h0(HaltingProfile::halts_at(0), 0);
    Term id = lambda({0}, Term::var(0));
    auto r = atom_preservation_probe(id, h0, 5, Perm{}, Perm::swap(5, 6), 100000);
    REQUIRE(r.outcome.reduced());
    CHECK(r.outcome.value() == h0.f(5, Perm{}));
    CHECK(r.atom_present);
    CHECK(r.variants_equal == false);

    Term const0 = lambda({0}, numeral(0));
    auto c = atom_preservation_probe(const0, h0, 5, Perm{}, Perm::swap(5, 6), 100000);
    CHECK(c.outcome.value() == numeral(0));
    CHECK_FALSE(c.atom_present);
    CHECK(c.variants_equal == true);

    Gadgets h3(HaltingProfile::halts_at(3), 0);
    Term at7 = define({0}, Term::app(Term::var(0), Term::var(100)), {{100, numeral(7)}});
    auto a = atom_preservation_probe(at7, h3, 5, Perm{}, Perm::swap(5, 6), 100000);
    CHECK(a.outcome.value() == numeral(5));
    (void)a;

    CHECK_THROWS_AS(atom_preservation_probe(id, h0, 5, Perm{}, Perm::swap(6, 7), 1000), std::invalid_argument);
    Term mentions = Term::app(Term::k(), Term::oracle(Perm{}));
    CHECK_THROWS_AS(atom_preservation_probe(mentions, h0, 5, Perm{}, Perm::swap(5, 6), 1000), std::invalid_argument);
}

TEST_CASE("gadgets commute with automorphisms") {
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    Perm F = Perm::swap(5, 6);
    for (const Perm& p : {Perm::swap(5, 9), Perm::swap(1, 5), Perm::swap(2, 3)}) {
        CHECK(apply_automorphism(p, h3.f(5, F)) == h3.f(p(5), compose(F, p.inverse())));
    }
}
