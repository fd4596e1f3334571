#include "doctest.h"
#include "pcaforge/rset.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

using namespace pcaforge;

namespace {

LabeledRSet lab(std::initializer_list<LElement> e) { return LabeledRSet::of(e); }

}  // namespace

TEST_CASE("rank") {
    CHECK(rank(RSet{}) == 0);
    CHECK(rank(canonical_numeral(3)) == 3);
    CHECK(rank(RSet::of({{Term::k(), RSet{}}, {Term::s(), canonical_numeral(1)}})) == 2);
}

TEST_CASE("canonical numerals and graphs") {
    CHECK(canonical_numeral(0).empty());
    CHECK(canonical_numeral(2) == RSet::of({{numeral(0), canonical_numeral(0)}, {numeral(1), canonical_numeral(1)}}));
    CHECK(omega_truncation(4).size() == 4);
    RSet g = graph_rset(stdlib::succ(), 3, 10000);
    std::vector<RElement> want;
    for (std::uint32_t n = 0; n < 3; ++n) {
        want.push_back({numeral(n), ordered_pair(canonical_numeral(n), canonical_numeral(n + 1))});
    }
    CHECK(g == RSet::of(want));
    CHECK_THROWS_AS(graph_rset(Term::k(), 2, 1000), std::invalid_argument);
}

TEST_CASE("set identity is extensional") {
    RSet a = RSet::of({{Term::k(), RSet{}}, {Term::s(), RSet{}}, {Term::k(), RSet{}}});
    RSet b = RSet::of({{Term::s(), RSet{}}, {Term::k(), RSet{}}});
    CHECK(a == b);
    CHECK(a.size() == 2);
    CHECK(a.hash() == b.hash());
    CHECK_THROWS_AS(RSet::of({{parse("K a1 a2"), RSet{}}}), std::invalid_argument);
    CHECK_THROWS_AS(LabeledRSet::of({{2, Term::k(), LabeledRSet{}}}), std::invalid_argument);
}

TEST_CASE("projection") {
    CHECK(project(lab({{0, Term::k(), {}}, {1, Term::s(), {}}})) ==
          RSet::of({{Term::k(), RSet{}}, {Term::s(), RSet{}}}));
    CHECK(project(LabeledRSet{}).empty());
    CHECK(project(label_zero(canonical_numeral(2))) == canonical_numeral(2));
    CHECK(project(label_zero(canonical_numeral(4))).rank() == 4);
}

TEST_CASE("permutation action and support") {
    CHECK(lift_perm(Perm::swap(1, 2), lab({{0, parse("a1"), {}}})) == lab({{0, parse("a2"), {}}}));
    LabeledRSet three = label_zero(canonical_numeral(3));
    CHECK(support(three) == AtomSet{});
    CHECK(lift_perm(Perm::swap(4, 9), three) == three);
    LabeledRSet mixed = lab({{0, parse("a3"), lab({{1, parse("K a5"), {}}})}});
    CHECK(support(mixed) == AtomSet{3, 5});
    CHECK(lift_perm(Perm::swap(1, 2), mixed) == mixed);
    CHECK(lift_perm(Perm::swap(3, 4), mixed) != mixed);
    CHECK_FALSE(support(lab({{0, Term::app(Term::k(), Term::oracle(Perm{})), {}}})).has_value());

    // project commutes with the action.
    Perm p = Perm::swap(3, 5);
    CHECK(project(lift_perm(p, mixed)) == apply_perm(p, project(mixed)));
}

TEST_CASE("symmetry predicates") {
    NormalFilterSpec gamma(8);
    LabeledRSet three = label_zero(canonical_numeral(3));
    CHECK(is_partly_symmetric(three, gamma));
    CHECK(is_completely_symmetric(three));
    LabeledRSet one = lab({{1, Term::k(), {}}});
    CHECK(is_partly_symmetric(one, gamma));
    CHECK_FALSE(is_completely_symmetric(one));
    LabeledRSet nested = lab({{0, Term::k(), one}});
    CHECK(is_partly_symmetric(nested, gamma));
    CHECK_FALSE(is_completely_symmetric(nested));
    LabeledRSet oracle = lab({{1, Term::app(Term::k(), Term::oracle(Perm{})), {}}});
    CHECK_FALSE(is_partly_symmetric(oracle, gamma));
}

TEST_CASE("normal filter laws on pointwise stabilizers") {
    NormalFilterSpec gamma(3);
    const AtomSet e{1, 4}, f{2, 4};
    CHECK(gamma.contains_fix({}));
    auto both = NormalFilterSpec::fix_intersection(e, f);
    CHECK(both == AtomSet{1, 2, 4});
    CHECK(gamma.contains_fix(both));
    CHECK(NormalFilterSpec::fix_subgroup(both, e));
    CHECK_FALSE(NormalFilterSpec::fix_subgroup(e, both));
    CHECK(NormalFilterSpec::fix_conjugate(Perm::swap(1, 9), e) == AtomSet{4, 9});
    CHECK(gamma.contains_fix(NormalFilterSpec::fix_conjugate(Perm::swap(1, 9), e)));
}

TEST_CASE("injective presentation") {
    CHECK(is_injectively_presented(canonical_numeral(4)));
    CHECK(is_injectively_presented(omega_truncation(5)));
    CHECK_FALSE(is_injectively_presented(RSet::of({{Term::k(), canonical_numeral(0)}, {Term::k(), canonical_numeral(1)}})));
    CHECK(is_injectively_presented(RSet::of({{Term::k(), canonical_numeral(0)}, {Term::s(), canonical_numeral(0)}})));
    RSet deep = RSet::of({{Term::k(), RSet::of({{Term::s(), RSet{}}, {Term::s(), canonical_numeral(1)}})}});
    CHECK_FALSE(is_injectively_presented(deep));
    CHECK(is_injectively_presented(ordered_pair(canonical_numeral(2), canonical_numeral(3))));
}
