#include <map>
#include <sstream>

#include "pcaforge/primrec.hpp"
#include "pcaforge/realize.hpp"
#include "pcaforge/sexpr.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/suites/expander.hpp"
#include "pcaforge/suites/generators.hpp"
#include "pcaforge/suites/suites.hpp"
#include "pcaforge/suites/synth.hpp"
#include "pcaforge/syntax.hpp"

namespace pcaforge::suites {

namespace {

constexpr std::uint64_t kCap = 10'000;
// Resampling allowance when an instance's preconditions cannot be met.
constexpr int kAttempts = 40;

std::string show(const RSet& a) { return sexpr::print(to_sexpr(a)); }
std::string show(const LabeledRSet& a) { return sexpr::print(to_sexpr(a)); }
std::string show(const Term& t) { return print(t, {.fold_numerals = true}); }

Formula mem01() { return Formula::mem(SetExpr::param(0), SetExpr::param(1)); }
Formula eq01() { return Formula::eq(SetExpr::param(0), SetExpr::param(1)); }

Verdict::Kind kind_of(Tri t) {
    switch (t) {
        case Tri::True:
            return Verdict::Kind::Realized;
        case Tri::False:
            return Verdict::Kind::NotRealized;
        default:
            return Verdict::Kind::Unknown;
    }
}

const char* kind_name(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Realized:
            return "REALIZED";
        case Verdict::Kind::NotRealized:
            return "NOT-REALIZED";
        default:
            return "UNKNOWN";
    }
}

struct Tally {
    std::map<Verdict::Kind, std::size_t> n;
    void add(const Verdict& v) { ++n[v.kind]; }
    std::string str() const {
        std::string out;
        for (auto k : {Verdict::Kind::Realized, Verdict::Kind::NotRealized, Verdict::Kind::Unknown}) {
            auto it = n.find(k);
            out += (out.empty() ? "" : " ") + std::string(kind_name(k)) + "=" +
                   std::to_string(it == n.end() ? 0 : it->second);
        }
        return out;
    }
};

SetShape numeric_sets() { return {.max_rank = 3, .max_width = 3, .keys = 3}; }

/// a, a variant of a, and a verified realizer of a = variant.
struct EqInstance {
    RSet a, b;
    Term e;
};

std::optional<EqInstance> equal_pair(Gen& g, const Context& c, const RSet& a) {
    for (int i = 0; i < kAttempts; ++i) {
        RSet b = g.variant(a, 4);
        auto e = synth_eq(a, b);
        if (!e) {
            continue;
        }
        std::vector<RSet> ps{a, b};
        if (Checker(kCap, c.eng()).check(*e, eq01(), ps).is_realized()) {
            return EqInstance{a, b, *e};
        }
    }
    return std::nullopt;
}

std::optional<EqInstance> equal_pair(Gen& g, const Context& c) {
    return equal_pair(g, c, g.rset(numeric_sets()));
}

/// f realizing a in c, where c holds a variant of a under a random key.
std::optional<std::pair<RSet, Term>> holder_of(Gen& g, const Context& c, const RSet& a) {
    auto in = equal_pair(g, c, a);
    if (!in) {
        return std::nullopt;
    }
    std::uint32_t k = static_cast<std::uint32_t>(g.below(4));
    std::vector<RElement> elems{{numeral(k), in->b}};
    RSet others = g.rset_of_rank(numeric_sets(), rank(a) + 1);
    for (const auto& el : others.elements()) {
        elems.push_back(el);
    }
    RSet holder = RSet::of(elems);
    Term f = normalize(stdlib::mkpair(numeral(k), in->e));
    std::vector<RSet> ps{a, holder};
    if (!Checker(kCap, c.eng()).check(f, mem01(), ps).is_realized()) {
        return std::nullopt;
    }
    return std::pair{holder, f};
}

}  // namespace

Result kernel_oracle(const Context& c) {
    Result r("kernel-oracle");
    Gen g(c.seed + 11);
    ClauseExpander oracle(kCap, c.eng());
    Tally tally;
    SetShape shape = numeric_sets();
    shape.odd_key = 0.1;
    for (int i = 0; i < 1000; ++i) {
        std::vector<RSet> params;
        std::uint32_t np = 2 + static_cast<std::uint32_t>(g.below(2));
        for (std::uint32_t j = 0; j < np; ++j) {
            params.push_back(g.chance(0.2) ? canonical_numeral(static_cast<std::uint32_t>(g.below(4)))
                                           : g.rset(shape));
        }
        Formula phi = g.formula(np, static_cast<int>(g.below(3)), true);
        Term e = Term::k();
        double roll = std::uniform_real_distribution<double>(0, 1)(g.rng());
        if (roll < 0.2) {
            // Equal by construction, so the realized side gets exercised.
            if (auto in = equal_pair(g, c)) {
                params[0] = in->a;
                params[1] = in->b;
                phi = g.chance(0.5) ? eq01()
                                    : Formula::conj(eq01(), Formula::ball(SetExpr::param(0),
                                                                          Formula::mem(SetExpr::bound(0),
                                                                                       SetExpr::param(1))));
                e = phi.kind() == Formula::Kind::Eq
                        ? in->e
                        : normalize(stdlib::mkpair(in->e, Term::app(stdlib::p0(), in->e)));
            }
        } else if (roll < 0.65) {
            e = g.shaped_realizer(phi, 3, c.eng());
        } else if (roll < 0.85) {
            e = g.normal({.depth = 5, .max_atom = 2}, c.eng());
        } else {
            e = equality_realizers().ir;
        }
        ++r.cases;
        Verdict v = Checker(kCap, c.eng()).check(e, phi, params);
        Tri t = oracle.realizes(e, phi, params);
        tally.add(v);
        if (v.kind != kind_of(t)) {
            std::string where;
            for (const auto& p : params) {
                where += " " + show(p);
            }
            r.fail(show(e) + " " + to_string(phi) + " on" + where + ": checker " + to_string(v) + ", expansion " +
                   kind_name(kind_of(t)));
        }
    }
    r.stats = tally.str();
    return r;
}

Result equality_realizer_laws(const Context& c) {
    Result r("equality-realizers");
    Gen g(c.seed + 12);
    const auto& R = equality_realizers();
    ClauseExpander oracle(kCap, c.eng());
    std::size_t resampled = 0;

    auto expect = [&](const char* law, const Term& e, const Formula& phi, std::vector<RSet> ps) {
        ++r.cases;
        Verdict v = Checker(kCap, c.eng()).check(e, phi, ps);
        if (!v.is_realized()) {
            Tri t = oracle.realizes(e, phi, ps);
            std::string where;
            for (const auto& p : ps) {
                where += " " + show(p);
            }
            r.fail(std::string(law) + ": " + to_string(v) + " (expansion " + kind_name(kind_of(t)) + ") on" + where);
        }
    };

    SetShape any_keys = numeric_sets();
    any_keys.odd_key = 0.2;
    for (int i = 0; i < 200; ++i) {
        RSet a = g.rset(any_keys);
        expect("i_r", R.ir, eq01(), {a, a});
    }
    for (int i = 0; i < 200; ++i) {
        auto in = equal_pair(g, c);
        if (!in) {
            ++resampled, --i;
            continue;
        }
        expect("i_s", Term::app(R.is, in->e), eq01(), {in->b, in->a});
    }
    for (int i = 0; i < 200; ++i) {
        auto ab = equal_pair(g, c);
        auto bc = ab ? equal_pair(g, c, ab->b) : std::nullopt;
        if (!bc) {
            ++resampled, --i;
            continue;
        }
        expect("i_t", ap(R.it, ab->e, bc->e), eq01(), {ab->a, bc->b});
    }
    for (int i = 0; i < 200; ++i) {
        // e |- a = b, f |- b in c  =>  i_0 e f |- a in c
        auto ab = equal_pair(g, c);
        auto held = ab ? holder_of(g, c, ab->b) : std::nullopt;
        if (!held) {
            ++resampled, --i;
            continue;
        }
        expect("i_0", ap(R.i0, ab->e, held->second), mem01(), {ab->a, held->first});
    }
    for (int i = 0; i < 200; ++i) {
        // f |- a in b, e |- b = c  =>  i_1 e f |- a in c
        RSet a = g.rset(numeric_sets());
        auto held = holder_of(g, c, a);
        auto bc = held ? equal_pair(g, c, held->first) : std::nullopt;
        if (!bc) {
            ++resampled, --i;
            continue;
        }
        expect("i_1", ap(R.i1, bc->e, held->second), mem01(), {a, bc->b});
    }
    r.stats = std::to_string(resampled) + " instances resampled";
    return r;
}

Result realpreserve(const Context& c) {
    Result r("realpreserve");
    Gen g(c.seed + 13);
    Tally tally;
    SetShape shape = numeric_sets();
    for (int i = 0; i < 200; ++i) {
        std::vector<LabeledRSet> params{g.lrset(shape, 0.3), g.lrset(shape, 0.3)};
        std::vector<RSet> proj{project(params[0]), project(params[1])};
        Formula phi = g.formula(2, static_cast<int>(g.below(3)));
        Term e = g.chance(0.3) ? synth_eq(proj[0], proj[1]).value_or(equality_realizers().ir)
                               : g.shaped_realizer(phi, 3, c.eng());
        ++r.cases;
        Verdict v0 = GammaChecker(kCap, c.eng()).check0(e, phi, params);
        tally.add(v0);
        if (v0.is_realized()) {
            Verdict v1 = Checker(kCap, c.eng()).check(e, phi, proj);
            if (!v1.is_realized()) {
                r.fail(show(e) + " " + to_string(phi) + " on " + show(params[0]) + " " + show(params[1]) +
                       ": projected " + to_string(v1));
            }
        }
    }
    r.stats = "gamma " + tally.str();
    return r;
}

Result boundedpreserve1(const Context& c) {
    Result r("boundedpreserve1");
    Gen g(c.seed + 14);
    Tally tally;
    for (int i = 0; i < 200; ++i) {
        std::vector<RSet> plain{g.rset(numeric_sets()), g.rset(numeric_sets())};
        std::vector<LabeledRSet> params{label_zero(plain[0]), label_zero(plain[1])};
        if (!is_completely_symmetric(params[0]) || !is_completely_symmetric(params[1])) {
            r.fail("label_zero is not completely symmetric");
        }
        Formula phi = g.formula(2, static_cast<int>(g.below(3)));
        Term e = g.chance(0.3) ? synth_eq(plain[0], plain[1]).value_or(equality_realizers().ir)
                               : g.shaped_realizer(phi, 3, c.eng());
        ++r.cases;
        Verdict v0 = GammaChecker(kCap, c.eng()).check0(e, phi, params);
        Verdict v1 = Checker(kCap, c.eng()).check(e, phi, plain);
        tally.add(v0);
        if (!v0.same_outcome(v1)) {
            r.fail(show(e) + " " + to_string(phi) + ": gamma " + to_string(v0) + ", plain " + to_string(v1));
        }
    }
    r.stats = tally.str();
    return r;
}

Result boundedsame(const Context& c) {
    Result r("boundedsame");
    Gen g(c.seed + 15);
    Tally tally;
    SetShape ip = numeric_sets();
    ip.injective = true;
    for (int i = 0; i < 200; ++i) {
        std::vector<RSet> params{g.rset(ip), g.rset(ip)};
        Formula phi = g.formula(2, static_cast<int>(g.below(3)));
        Term e = g.chance(0.3) ? synth_eq(params[0], params[1]).value_or(equality_realizers().ir)
                               : g.shaped_realizer(phi, 3, c.eng());
        ++r.cases;
        Verdict v1 = Checker(kCap, c.eng()).check(e, phi, params);
        try {
            Verdict v0 = check0_ip(e, phi, params, kCap);
            tally.add(v0);
            if (!v0.same_outcome(v1)) {
                r.fail(show(e) + " " + to_string(phi) + ": ip " + to_string(v0) + ", plain " + to_string(v1));
            }
        } catch (const std::invalid_argument& ex) {
            r.fail(std::string("generated parameter rejected: ") + ex.what());
        }
    }
    r.stats = tally.str();
    return r;
}

Result sympreserved(const Context& c) {
    Result r("sympreserved");
    Gen g(c.seed + 16);
    std::size_t fixed = 0;
    for (int i = 0; i < 200; ++i) {
        LabeledRSet a = g.lrset(numeric_sets(), 0.3, 5);
        Perm p = g.perm(8);
        if (g.chance(0.5)) {
            // Pick a perm fixing the support pointwise so fixity transfer is exercised.
            AtomSet s = support(a).value_or(AtomSet{});
            std::vector<std::uint32_t> free;
            for (std::uint32_t x = 1; x <= 10; ++x) {
                if (!std::binary_search(s.begin(), s.end(), x)) {
                    free.push_back(x);
                }
            }
            p = Perm::swap(free[0], free[1 + g.below(free.size() - 1)]);
        }
        ++r.cases;
        LabeledRSet moved = lift_perm(p, a);
        if (project(moved) != apply_perm(p, project(a))) {
            r.fail(to_string(p) + " on " + show(a) + ": projection does not commute");
        }
        if (moved == a) {
            ++fixed;
            if (apply_perm(p, project(a)) != project(a)) {
                r.fail(to_string(p) + " fixes " + show(a) + " but not its projection");
            }
        }
    }
    r.stats = std::to_string(fixed) + " fixed by their perm";
    return r;
}

Result eqrank(const Context& c) {
    Result r("eqrank");
    Gen g(c.seed + 17);
    std::size_t realized = 0;
    for (int i = 0; i < 200; ++i) {
        RSet a = g.rset(numeric_sets());
        RSet b = g.chance(0.6) ? g.variant(a, 4) : g.rset(numeric_sets());
        std::vector<Term> tried{equality_realizers().ir, g.shaped_realizer(eq01(), 3, c.eng())};
        if (auto e = synth_eq(a, b)) {
            tried.push_back(*e);
        }
        ++r.cases;
        std::vector<RSet> ps{a, b};
        for (const Term& e : tried) {
            if (Checker(kCap, c.eng()).check(e, eq01(), ps).is_realized()) {
                ++realized;
                if (rank(a) != rank(b)) {
                    r.fail(show(e) + " realizes " + show(a) + " = " + show(b) + " across ranks");
                }
                break;
            }
        }
    }
    r.stats = std::to_string(realized) + " pairs realized equal";
    return r;
}

Result iplemma_instances(const Context&) {
    Result r("iplemma");
    struct Instance {
        std::string label;
        RSet a, b;
        Term f, g;
    };
    std::vector<Instance> instances;

    // Written out: a = 2, b = {<#0,0>, <#2,{<#0,0>}>, <#2,{<#0,0>,<#1,0>}>}.
    {
        const Term m = normalize(stdlib::mkpair(numeral(0), stdlib::identity()));
        const Term km = Term::app(Term::k(), m);
        const Term flat = normalize(stdlib::mkpair(km, km));
        RSet cc = RSet::of({{numeral(0), RSet{}}});
        RSet cc2 = RSet::of({{numeral(0), RSet{}}, {numeral(1), RSet{}}});
        RSet b = RSet::of({{numeral(0), RSet{}}, {numeral(2), cc}, {numeral(2), cc2}});
        Term f0 = numeral_case({{0, m}, {1, normalize(stdlib::mkpair(numeral(2), flat))}}, stdlib::identity());
        Term f1 = numeral_case({{0, m}, {2, normalize(stdlib::mkpair(numeral(1), flat))}}, stdlib::identity());
        instances.push_back({"2-bar by hand", canonical_numeral(2), b, normalize(stdlib::mkpair(f0, f1)), numeral(2)});
    }

    // Each base a is injectively presented. Pick a member <#m, x> with x
    // nonempty, extend x by one redundant member under two different fresh
    // keys to get c and c', and add both under a fresh key g.
    const std::vector<std::pair<std::string, RSet>> bases{
        {"3", canonical_numeral(3)},
        {"4", canonical_numeral(4)},
        {"5", canonical_numeral(5)},
        {"6", canonical_numeral(6)},
        {"(1,2)", ordered_pair(canonical_numeral(1), canonical_numeral(2))},
        {"(2,3)", ordered_pair(canonical_numeral(2), canonical_numeral(3))},
        {"graph succ 3", graph_rset(stdlib::succ(), 3, kCap)},
        {"graph pred 3", graph_rset(compile_primrec(prlib::pred()), 3, kCap)},
        {"mixed", RSet::of({{numeral(0), canonical_numeral(2)},
                            {numeral(3), ordered_pair(canonical_numeral(0), canonical_numeral(1))}})},
        {"2", canonical_numeral(2)},
    };
    for (const auto& [label, a] : bases) {
        std::vector<RElement> members;
        for (const auto& el : a.elements()) {
            if (!el.child.empty()) {
                members.push_back(el);
            }
        }
        for (int variant = 0; variant < 2 && instances.size() < 20; ++variant) {
            const RElement& pick = members[variant == 0 ? members.size() - 1 : 0];
            const RElement& extra = pick.child.elements()[0];
            std::uint32_t fresh = 10 + 2 * static_cast<std::uint32_t>(variant);
            RSet cc = RSet::of([&] {
                auto v = std::vector<RElement>(pick.child.elements().begin(), pick.child.elements().end());
                v.push_back({numeral(fresh), extra.child});
                return v;
            }());
            RSet cc2 = RSet::of([&] {
                auto v = std::vector<RElement>(pick.child.elements().begin(), pick.child.elements().end());
                v.push_back({numeral(fresh + 1), extra.child});
                return v;
            }());
            std::uint32_t g = 20 + static_cast<std::uint32_t>(variant);
            std::vector<RElement> bel(a.elements().begin(), a.elements().end());
            bel.push_back({numeral(g), cc});
            bel.push_back({numeral(g), cc2});
            RSet b = RSet::of(bel);
            auto f = synth_eq(a, b);
            instances.push_back({label + (variant ? " / first member" : " / last member"), a, b,
                                 f.value_or(Term::k()), numeral(g)});
        }
    }

    for (const auto& in : instances) {
        ++r.cases;
        try {
            Verdict v = iplemma_check(in.a, in.b, in.f, in.g, 100'000);
            if (!v.is_realized()) {
                r.fail(in.label + ": " + to_string(v));
            }
        } catch (const std::invalid_argument& ex) {
            r.fail(in.label + ": " + ex.what());
        }
    }
    return r;
}

Result rn_approximants(const Context& c) {
    Result r("rn");
    (void)c;
    std::vector<Term> pool;
    for (const char* prof : {"halts@0", "halts@1", "halts@3"}) {
        Gadgets gd(HaltingProfile::parse(prof), 0);
        for (std::uint32_t n : {2u, 5u, 9u, 12u}) {
            pool.push_back(gd.f(n, Perm{}));
        }
    }
    pool.push_back(stdlib::succ());
    pool.push_back(compile_primrec(prlib::pred()));
    pool.push_back(numeral_case({{0, numeral(3)}, {1, numeral(1)}}, numeral(2)));
    pool.push_back(Term::app(Term::k(), numeral(4)));

    std::size_t triples = 0, high = 0;
    std::size_t family = 0;
    for (std::size_t size = 1; size <= 8; ++size) {
        for (std::uint32_t N : {3u, 7u, 10u}) {
            std::vector<Term> probes;
            for (std::size_t j = 0; j < size; ++j) {
                probes.push_back(pool[(family * 5 + j * 3) % pool.size()]);
            }
            ++family;
            ++r.cases;
            RNApprox rn = build_R_N(probes, N, 4, 100'000);
            triples += rn.triples.size();
            for (const auto& t : rn.triples) {
                high += !t.low_clause;
            }
            auto bad = rn_part3_violations(rn, 100'000);
            if (!bad.empty()) {
                r.fail("family " + std::to_string(family) + " N=" + std::to_string(N) + ": " +
                       std::to_string(bad.size()) + " part-3 violations");
            }
            Verdict v = rn_totality_check(rn, 100'000);
            if (!v.is_realized()) {
                r.fail("family " + std::to_string(family) + " N=" + std::to_string(N) + ": totality " + to_string(v));
            }
        }
    }
    r.stats = std::to_string(triples) + " triples, " + std::to_string(high) + " from the upper clause";
    return r;
}

}  // namespace pcaforge::suites
