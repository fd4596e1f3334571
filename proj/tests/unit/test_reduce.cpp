#include <random>

#include "doctest.h"
#include "pcaforge/reduce.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

using namespace pcaforge;

namespace {

const char* const kOmega = "S I I (S I I)";

Term random_closed(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 3);
    switch (pick(rng)) {
        case 0:
            return Term::s();
        case 1:
            return Term::k();
        case 2:
            return Term::atom(1 + rng() % 4);
        case 3:
            return rng() % 4 == 0 ? Term::oracle(Perm::swap(1 + rng() % 4, 1 + rng() % 4)) : Term::k();
        default:
            return Term::app(random_closed(rng, depth - 1), random_closed(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("RED_n on the base clauses") {
    CHECK(red_n(0, parse("K a1 a2")) == parse("a1"));
    CHECK(red_n(1, parse("S K K a1")) == parse("a1"));
    CHECK_FALSE(red_n(0, parse("S K K a1")).has_value());
    CHECK(red_n(0, parse("a5")) == parse("a5"));
    CHECK(red_n(0, parse("z[] a5")) == parse("#5"));
    CHECK(red_n(0, parse("z[5->9] (a5 a2)")) == parse("#9"));
    CHECK(red_n(0, parse("z[] K")) == parse("#0"));
    // An open argument leaves the oracle stuck.
    CHECK(red_n(0, parse("z[] x0")) == parse("z[] x0"));
}

TEST_CASE("red reports the least stage") {
    auto o = red(parse("z[] (K K a1)"), 10);
    REQUIRE(o.reduced());
    CHECK(o.value() == parse("#0"));
    CHECK(o.stage() == 1);

    auto d = red(parse(kOmega), 1000);
    REQUIRE_FALSE(d.reduced());
    CHECK(d.exhausted().cap == 1000);
    CHECK(d.exhausted().reason == ExhaustReason::StageCap);

    auto k = red(parse("K"), 0);
    REQUIRE(k.reduced());
    CHECK(k.stage() == 0);

    auto s = red(parse("S K K a1"), 100);
    CHECK(s.stage() == 1);
    // Stage is exactly the least n: one budget below fails.
    auto t = parse("S (K a1) I (S K K a2)");
    auto full = red(t, 100);
    REQUIRE(full.reduced());
    CHECK(red(t, full.stage()).reduced());
    CHECK_FALSE(red(t, full.stage() - 1).reduced());
}

TEST_CASE("pca application") {
    auto ka = pca_apply(Term::k(), Term::atom(1), 10);
    REQUIRE(ka.reduced());
    CHECK(pca_apply(ka.value(), Term::atom(2), 10).value() == Term::atom(1));
    CHECK(pca_apply(parse("S K K"), parse("a9"), 10).value() == parse("a9"));
    CHECK(pca_apply(parse("z[]"), parse("K"), 10).value() == parse("#0"));
    CHECK_THROWS_AS(pca_apply(parse("K a1 a2"), Term::k(), 10), std::invalid_argument);
}

TEST_CASE("denotation of application trees") {
    auto leaf = [](const char* s) { return AppTree::leaf(parse(s)); };
    CHECK(denote(AppTree::node(AppTree::node(leaf("S"), leaf("K")), leaf("K")), 100).value() == parse("S K K"));
    CHECK(denote(AppTree::node(AppTree::node(leaf("K"), leaf("a1")), leaf("a2")), 100).value() == parse("a1"));
    CHECK_FALSE(denote(AppTree::node(leaf("S I I"), leaf("S I I")), 1000).reduced());
    CHECK_THROWS_AS(denote(leaf("K a1 a2"), 10), std::invalid_argument);
}

TEST_CASE("trace lines") {
    auto t = trace(parse("K a1 a2"), 10);
    REQUIRE(t.size() == 1);
    CHECK(t[0].tag == TraceTag::Red0K);

    auto s = trace(parse("S K K a1"), 10);
    REQUIRE(s.size() == 4);
    CHECK(s[0].tag == TraceTag::RednS);
    CHECK(*s[0].contractum == parse("K a1 (K a1)"));
    CHECK(s.back().tag == TraceTag::Red0K);
    CHECK(*s.back().contractum == parse("a1"));
    CHECK(format_trace(s).rfind("REDn-S | S K K a1 -> K a1 (K a1)\n", 0) == 0);

    auto a = trace(parse("a1"), 10);
    REQUIRE(a.size() == 1);
    CHECK(a[0].tag == TraceTag::Red0Nf);

    auto w = trace(parse(kOmega), 5);
    CHECK(w.back().tag == TraceTag::Exhausted);
}

TEST_CASE("step limit is reported separately") {
    Engine tight(EngineConfig{.step_limit = 50});
    auto o = tight.red(parse(kOmega), 100000);
    REQUIRE_FALSE(o.reduced());
    CHECK(o.exhausted().reason == ExhaustReason::StepLimit);
}

TEST_CASE("memoization never changes an outcome") {
    Engine plain(EngineConfig{.memoize = false});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 400; ++i) {
        Term t = random_closed(rng, 7);
        for (std::uint64_t cap : {3u, 20u, 200u}) {
            auto a = default_engine().red(t, cap);
            auto b = plain.red(t, cap);
            CHECK(a == b);
            if (a.reduced()) {
                CHECK(a.value().is_normal());
            }
        }
    }
}

TEST_CASE("fault hook swaps the K rule") {
    Engine faulty(EngineConfig{.fault_k_rule = true});
    CHECK(faulty.red(parse("K a1 a2"), 10).value() == parse("a2"));
}
