#include <vector>

#include "doctest.h"
#include "pcaforge/gadgets.hpp"
#include "pcaforge/realize.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

using namespace pcaforge;

namespace {

constexpr std::uint64_t kCap = 100000;

RSet nbar(std::uint32_t n) { return canonical_numeral(n); }

Formula mem01() { return Formula::mem(SetExpr::param(0), SetExpr::param(1)); }
Formula eq01() { return Formula::eq(SetExpr::param(0), SetExpr::param(1)); }

Verdict chk(const Term& e, const Formula& f, std::vector<RSet> params) { return check(e, f, params, kCap); }

Term nf(const Term& t) { return normalize(t); }

// m = p #0 I; R = p (K m) (K m) realizes x = y whenever every child on both
// sides is empty and #0 is a key of both.
Term flat_eq() {
    Term m = nf(stdlib::mkpair(numeral(0), stdlib::identity()));
    Term km = Term::app(Term::k(), m);
    return nf(stdlib::mkpair(km, km));
}

struct IpInstance {
    RSet a, b;
    Term f, g;
};

// a = 2-bar; b = {<#0, 0>, <#2, c>, <#2, c'>}, c = {<#0,0>}, c' = {<#0,0>,<#1,0>}.
IpInstance two_bar_instance() {
    const Term m = nf(stdlib::mkpair(numeral(0), stdlib::identity()));
    const Term r = flat_eq();
    RSet c = RSet::of({{numeral(0), RSet{}}});
    RSet c2 = RSet::of({{numeral(0), RSet{}}, {numeral(1), RSet{}}});
    RSet b = RSet::of({{numeral(0), RSet{}}, {numeral(2), c}, {numeral(2), c2}});
    Term f0 = numeral_case({{0, m}, {1, nf(stdlib::mkpair(numeral(2), r))}}, stdlib::identity());
    Term f1 = numeral_case({{0, m}, {2, nf(stdlib::mkpair(numeral(1), r))}}, stdlib::identity());
    return {nbar(2), b, nf(stdlib::mkpair(f0, f1)), numeral(2)};
}

}  // namespace

TEST_CASE("check: worked examples") {
    CHECK(chk(Term::k(), eq01(), {nbar(0), nbar(0)}).is_realized());
    CHECK(chk(parse("S (K a4)"), eq01(), {nbar(0), nbar(0)}).is_realized());
    CHECK(chk(parse("$p #0 K"), mem01(), {nbar(0), nbar(1)}).is_realized());
    CHECK(chk(parse("$p #1 K"), mem01(), {nbar(0), nbar(1)}).is_not_realized());
    const auto& r = equality_realizers();
    CHECK(chk(r.ir, eq01(), {nbar(2), nbar(2)}).is_realized());
    CHECK(chk(r.ir, eq01(), {nbar(5), nbar(5)}).is_realized());
    CHECK(chk(r.ir, eq01(), {nbar(2), nbar(3)}).is_not_realized());
    CHECK(chk(r.ir, mem01(), {nbar(2), nbar(4)}).is_not_realized());
    CHECK(chk(parse("$p #2 $ir"), mem01(), {nbar(2), nbar(4)}).is_realized());
}

TEST_CASE("check: connectives") {
    const Term ir = equality_realizers().ir;
    Formula both = Formula::conj(eq01(), mem01());
    CHECK(chk(stdlib::mkpair(ir, parse("$p #0 K")), both, {nbar(0), nbar(1)}).is_not_realized());
    CHECK(chk(stdlib::mkpair(ir, parse("$p #0 K")), both, {nbar(1), nbar(1)}).is_not_realized());
    CHECK(chk(stdlib::mkpair(ir, parse("$p #0 K")), both, {nbar(0), nbar(0)}).is_not_realized());
    Formula either = Formula::disj(mem01(), eq01());
    CHECK(chk(stdlib::mkpair(numeral(1), ir), either, {nbar(3), nbar(3)}).is_realized());
    CHECK(chk(stdlib::mkpair(numeral(0), ir), either, {nbar(3), nbar(3)}).is_not_realized());
    CHECK(chk(stdlib::mkpair(numeral(2), ir), either, {nbar(3), nbar(3)}).is_not_realized());

    // (forall x in 3)(x in 3): realized by [f] p f ir
    Formula self = Formula::ball(SetExpr::param(0), Formula::mem(SetExpr::bound(0), SetExpr::param(0)));
    Term e = define({0}, stdlib::mkpair(Term::var(0), Term::var(100)), {{100, ir}});
    CHECK(chk(e, self, {nbar(3)}).is_realized());
    CHECK(chk(Term::k(), self, {nbar(3)}).is_not_realized());
    // (exists x in 3)(x = 2)
    Formula two = Formula::bex(SetExpr::param(0), Formula::eq(SetExpr::bound(0), SetExpr::param(1)));
    CHECK(chk(stdlib::mkpair(numeral(2), ir), two, {nbar(3), nbar(2)}).is_realized());
    CHECK(chk(stdlib::mkpair(numeral(1), ir), two, {nbar(3), nbar(2)}).is_not_realized());
}

TEST_CASE("check: budget and approximate fragment") {
    auto v = check(parse("S I I (S I I)"), eq01(), std::vector<RSet>{nbar(0), nbar(0)}, 500);
    CHECK(v.is_unknown());
    CHECK(v.reason == Verdict::Reason::Budget);
    CHECK(to_string(v) == "UNKNOWN(budget, cap=500)");
    // Its parts diverge too, but no realizer proves 1 in 0 or 1 = 0.
    CHECK(check(parse("S I I (S I I)"), mem01(), std::vector<RSet>{nbar(0), nbar(0)}, 500).is_not_realized());
    CHECK(check(parse("S I I (S I I)"), eq01(), std::vector<RSet>{nbar(1), nbar(0)}, 500).is_not_realized());
    CHECK(check(parse("S I I (S I I)"), eq01(), std::vector<RSet>{nbar(1), nbar(1)}, 500).is_unknown());
    // A normal form whose parts both loop: either branch might apply.
    Term loop_tag = parse("S (K (S I I)) (K (S I I))");
    CHECK(chk(loop_tag, Formula::disj(mem01(), mem01()), {nbar(1), nbar(0)}).is_not_realized());
    CHECK(chk(loop_tag, Formula::disj(mem01(), eq01()), {nbar(0), nbar(0)}).is_unknown());
    auto a = chk(Term::k(), Formula::negate(eq01()), {nbar(0), nbar(0)});
    CHECK(a.reason == Verdict::Reason::ApproximateFragment);
    CHECK(to_string(Verdict::realized()) == "REALIZED");
    CHECK(to_string(Verdict::not_realized()) == "NOT-REALIZED");
}

TEST_CASE("bounded approximation") {
    std::vector<RSet> params{nbar(0), nbar(0)};
    std::vector<Term> k{Term::k()}, ks{Term::k(), Term::s()};
    std::vector<RSet> universe{nbar(0), nbar(1)};
    auto v1 = check_bounded_approx(parse("S"), Formula::negate(eq01()), params, k, universe, kCap);
    CHECK(v1.is_not_realized());
    auto v2 = check_bounded_approx(Term::k(), Formula::implies(eq01(), eq01()), params, ks, universe, kCap);
    CHECK(v2.is_unknown());
    CHECK(v2.bounds.candidates == 2u);
    CHECK(to_string(v2) == "UNKNOWN(approximate-fragment, cap=100000,candidates=2,universe=2)");
    auto v3 = check_bounded_approx(Term::k(), Formula::implies(eq01(), mem01()), params, k, universe, kCap);
    CHECK(v3.is_not_realized());
    // forall x. x = x: ir is never refuted; K is refuted at 1-bar.
    Formula refl = Formula::all(Formula::eq(SetExpr::bound(0), SetExpr::bound(0)));
    CHECK(check_bounded_approx(equality_realizers().ir, refl, {}, k, universe, kCap).is_unknown());
    CHECK(check_bounded_approx(Term::k(), refl, {}, k, universe, kCap).is_not_realized());
    Formula some = Formula::ex(Formula::eq(SetExpr::bound(0), SetExpr::bound(0)));
    CHECK(check_bounded_approx(equality_realizers().ir, some, {}, k, universe, kCap).is_unknown());
}

TEST_CASE("V_Gamma forcing") {
    std::vector<LabeledRSet> p0{label_zero(nbar(0)), label_zero(nbar(0))};
    CHECK(check0_gamma(Term::s(), eq01(), p0, kCap).is_realized());
    LabeledRSet one_lab1 = LabeledRSet::of({{1, numeral(0), label_zero(nbar(0))}});
    LabeledRSet one_lab0 = LabeledRSet::of({{0, numeral(0), label_zero(nbar(0))}});
    std::vector<LabeledRSet> p1{label_zero(nbar(0)), one_lab1};
    std::vector<LabeledRSet> p2{label_zero(nbar(0)), one_lab0};
    CHECK(check0_gamma(parse("$p #0 K"), mem01(), p1, kCap).is_not_realized());
    CHECK(check0_gamma(parse("$p #0 K"), mem01(), p2, kCap).is_realized());
    // Eq carries the projected conjunct: K realizes 0 = {<1,..>} at level 0
    // vacuously but not on the projection.
    std::vector<LabeledRSet> p3{label_zero(nbar(0)), one_lab1};
    CHECK(check0_gamma(Term::k(), eq01(), p3, kCap).is_not_realized());
    CHECK(check(Term::k(), eq01(), std::vector<RSet>{nbar(0), project(one_lab1)}, kCap).is_not_realized());
    std::vector<LabeledRSet> p4{label_zero(nbar(3)), label_zero(nbar(3))};
    CHECK(check0_gamma(equality_realizers().ir, eq01(), p4, kCap).is_realized());
}

TEST_CASE("V_ip forcing") {
    std::vector<RSet> ok{nbar(0), nbar(1)};
    CHECK(check0_ip(parse("$p #0 K"), mem01(), ok, kCap).is_realized());
    std::vector<RSet> bad{nbar(0), RSet::of({{Term::k(), nbar(0)}, {Term::k(), nbar(1)}})};
    CHECK_THROWS_AS(check0_ip(parse("$p #0 K"), mem01(), bad, kCap), std::invalid_argument);
}

TEST_CASE("equality realizers") {
    const auto& r = equality_realizers();
    for (const Term* t : {&r.ir, &r.is, &r.it, &r.i0, &r.i1, &iplemma_realizer()}) {
        CHECK(t->is_normal());
        CHECK(t->is_closed());
        CHECK(t->atoms().empty());
        CHECK_FALSE(t->has_oracle());
    }
    for (const Term& f : {Term::k(), parse("S K"), numeral(4), parse("a7")}) {
        Term l = red(Term::app(stdlib::p0(), r.ir), kCap).value();
        Term rr = red(Term::app(stdlib::p1(), r.ir), kCap).value();
        CHECK(red(stdlib::proj0(Term::app(l, f)), kCap).value() == f);
        CHECK(red(stdlib::proj1(Term::app(l, f)), kCap).value() == r.ir);
        CHECK(red(stdlib::proj0(Term::app(rr, f)), kCap).value() == f);
        CHECK(red(stdlib::proj1(Term::app(rr, f)), kCap).value() == r.ir);
    }

    IpInstance in = two_bar_instance();
    std::vector<RSet> ab{in.a, in.b}, ba{in.b, in.a}, aa{in.a, in.a};
    REQUIRE(chk(in.f, eq01(), ab).is_realized());
    CHECK(chk(Term::app(r.is, in.f), eq01(), ba).is_realized());
    Term back = red(Term::app(r.is, in.f), kCap).value();
    CHECK(chk(ap(r.it, in.f, back), eq01(), aa).is_realized());
    CHECK(chk(ap(r.it, back, in.f), eq01(), std::vector<RSet>{in.b, in.b}).is_realized());

    RSet holder = RSet::of({{numeral(3), in.b}});
    Term b_in = nf(stdlib::mkpair(numeral(3), r.ir));
    REQUIRE(chk(b_in, mem01(), {in.b, holder}).is_realized());
    CHECK(chk(ap(r.i0, in.f, b_in), mem01(), {in.a, holder}).is_realized());

    Term one_in = nf(stdlib::mkpair(numeral(1), r.ir));
    REQUIRE(chk(one_in, mem01(), {nbar(1), in.a}).is_realized());
    CHECK(chk(ap(r.i1, in.f, one_in), mem01(), {nbar(1), in.b}).is_realized());
}

TEST_CASE("iplemma") {
    IpInstance in = two_bar_instance();
    CHECK(iplemma_check(in.a, in.b, in.f, in.g, kCap).is_realized());
    RSet distinct = RSet::of({{numeral(0), RSet{}}, {numeral(1), nbar(1)}});
    CHECK_THROWS_AS(iplemma_check(nbar(2), distinct, equality_realizers().ir, numeral(1), kCap),
                    std::invalid_argument);
    RSet not_ip = RSet::of({{Term::k(), nbar(0)}, {Term::k(), nbar(1)}});
    CHECK_THROWS_AS(iplemma_check(not_ip, in.b, in.f, in.g, kCap), std::invalid_argument);
    CHECK_THROWS_AS(iplemma_check(in.a, in.b, Term::k(), in.g, kCap), std::invalid_argument);
}

TEST_CASE("type 2 composite") {
    Gadgets h3(HaltingProfile::halts_at(3), 0);
    std::vector<Term> probes{stdlib::succ(), h3.f(5, Perm{})};
    Term pk = define({0}, stdlib::mkpair(Term::var(0), Term::k()), {});
    CHECK(probe_type2_identity(build_type2_composite(pk, pk), probes, 6, kCap).consistent());
    Term pxx = define({0}, stdlib::mkpair(Term::var(0), Term::var(0)), {});
    CHECK(probe_type2_identity(build_type2_composite(pxx, pxx), probes, 6, kCap).consistent());
    // e y = p (succ . (y)_0) K shifts every value by one.
    Term shift = define({0, 1}, Term::app(Term::var(100), Term::app(stdlib::proj0(Term::var(0)), Term::var(1))),
                        {{100, stdlib::succ()}});
    Term e = define({0}, stdlib::mkpair(Term::app(Term::var(101), Term::var(0)), Term::k()), {{101, shift}});
    CHECK_FALSE(probe_type2_identity(build_type2_composite(e, pk), probes, 6, kCap).consistent());
}

TEST_CASE("R_N approximants") {
    Gadgets h0(HaltingProfile::halts_at(0), 0);
    std::vector<Term> probes{h0.f(5, Perm{})};
    RNApprox r = build_R_N(probes, 7, 4, kCap);
    REQUIRE(r.triples.size() == 1);
    CHECK(r.triples[0].n == 5);
    CHECK(r.triples[0].low_clause);
    CHECK(rn_part3_violations(r, kCap).empty());

    std::vector<Term> succ{stdlib::succ()};
    RNApprox s = build_R_N(succ, 7, 4, kCap);
    CHECK(s.triples[0].n == 0);
    CHECK(s.triples[0].low_clause);

    std::vector<Term> high{h0.f(9, Perm{})};
    RNApprox hi = build_R_N(high, 7, 4, kCap);
    CHECK(hi.triples.size() == 3);  // n = 8, 9, 10
    CHECK_FALSE(hi.triples[0].low_clause);
    CHECK(rn_part3_violations(hi, kCap).empty());
    CHECK(rn_totality_check(hi, kCap).is_realized());
    CHECK(rn_totality_check(r, kCap).is_realized());

    std::vector<Term> bad{Term::k()};
    CHECK_THROWS_AS(build_R_N(bad, 7, 4, kCap), std::invalid_argument);
}
