#include <sstream>

#include "pcaforge/named.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/suites/generators.hpp"
#include "pcaforge/suites/suites.hpp"
#include "pcaforge/syntax.hpp"

namespace pcaforge::suites {

namespace {

constexpr std::uint64_t kCap = 10'000;
// A one-sided success is re-run on the other side at this multiple of the
// cap before it counts as a disagreement: stages of the two sides differ.
constexpr std::uint64_t kRecheck = 10;

const PrintOptions kFold{.fold_numerals = true};

std::string show(const ReductionOutcome& o) { return to_string(o); }

/// Kleene agreement of two computations; empty on agreement.
std::string kleene(const Engine& eng, const Term& x, const Term& y, std::uint64_t cap = kCap) {
    auto ox = eng.red(x, cap);
    auto oy = eng.red(y, cap);
    if (ox.reduced() != oy.reduced()) {
        if (!ox.reduced()) {
            ox = eng.red(x, cap * kRecheck);
        } else {
            oy = eng.red(y, cap * kRecheck);
        }
    }
    if (ox.reduced() != oy.reduced()) {
        return "definedness differs: " + show(ox) + " vs " + show(oy);
    }
    if (ox.reduced() && ox.value() != oy.value()) {
        return "values differ: " + show(ox) + " vs " + show(oy);
    }
    return {};
}

TermShape normal_shape() { return {.depth = 5, .max_atom = 3}; }

}  // namespace

Result k_law(const Context& c) {
    Result r("k-law");
    Gen g(c.seed + 1);
    for (int i = 0; i < 1000; ++i) {
        Term x = g.normal(normal_shape(), c.eng());
        Term y = g.normal(normal_shape(), c.eng());
        ++r.cases;
        auto o = c.eng().red(ap(Term::k(), x, y), kCap);
        if (!o.reduced() || o.value() != x) {
            r.fail("K " + print(x) + " " + print(y) + " gave " + show(o));
        }
    }
    return r;
}

Result s_law(const Context& c) {
    Result r("s-law");
    Gen g(c.seed + 2);
    for (int i = 0; i < 1000; ++i) {
        Term x = g.normal(normal_shape(), c.eng());
        Term y = g.normal(normal_shape(), c.eng());
        Term z = g.normal(normal_shape(), c.eng());
        ++r.cases;
        std::string why = kleene(c.eng(), ap(Term::s(), x, y, z), ap(x, z, Term::app(y, z)));
        if (!why.empty()) {
            r.fail("S " + print(x) + " " + print(y) + " " + print(z) + ": " + why);
        }
    }
    return r;
}

Result partial_apps(const Context& c) {
    Result r("partial-apps");
    Gen g(c.seed + 3);
    for (int i = 0; i < 1000; ++i) {
        Term x = g.normal(normal_shape(), c.eng());
        Term y = g.normal(normal_shape(), c.eng());
        for (const Term& t : {Term::app(Term::s(), x), ap(Term::s(), x, y), Term::app(Term::k(), x)}) {
            ++r.cases;
            auto o = c.eng().red(t, kCap);
            if (!o.reduced() || o.value() != t) {
                r.fail(print(t) + " gave " + show(o));
            }
        }
    }
    return r;
}

Result red_monotone(const Context& c) {
    Result r("red-monotone");
    Gen g(c.seed + 4);
    std::size_t reduced = 0;
    for (int i = 0; i < 1000; ++i) {
        Term t = g.term({.depth = 7, .max_atom = 4, .oracles = true, .loops = true});
        ++r.cases;
        std::optional<ReductionOutcome> first;
        for (std::uint64_t cap : {100u, 1000u, 10000u}) {
            auto o = c.eng().red(t, cap);
            if (o.reduced() && o.stage() > cap) {
                r.fail(print(t) + ": stage past cap " + std::to_string(cap));
            }
            if (first && !(o == *first)) {
                r.fail(print(t) + ": " + show(*first) + " then " + show(o) + " at cap " + std::to_string(cap));
                break;
            }
            if (o.reduced() && !first) {
                first = o;
            }
        }
        reduced += first.has_value();
    }
    r.stats = std::to_string(reduced) + " reduced";
    return r;
}

Result termdefs(const Context& c) {
    Result r("termdefs");
    Gen g(c.seed + 5);
    std::vector<Term> pool;
    for (int i = 0; i < 40; ++i) {
        pool.push_back(g.normal({.depth = 4, .max_atom = 3}, c.eng()));
    }
    for (const char* s : {"S", "K", "I", "S I I", "a1", "#2", "$succ", "$p"}) {
        pool.push_back(normalize(parse(s)));
    }
    std::size_t defined = 0;
    for (int i = 0; i < 500; ++i) {
        AppTree tree = g.app_tree(6, pool);
        ++r.cases;
        auto d = c.eng().denote(tree, kCap);
        auto f = c.eng().red(tree.flatten(), kCap);
        if (d.reduced() != f.reduced()) {
            // Stages of the tree and of its flattening differ; settle the
            // lagging side at a larger cap.
            if (!d.reduced()) {
                d = c.eng().denote(tree, kCap * kRecheck);
            } else {
                f = c.eng().red(tree.flatten(), kCap * kRecheck);
            }
        }
        if (d.reduced() != f.reduced() || (d.reduced() && d.value() != f.value())) {
            r.fail(print(tree.flatten()) + ": denote " + show(d) + ", red " + show(f));
        }
        defined += d.reduced();
    }
    r.stats = std::to_string(defined) + " defined";
    return r;
}

Result equivariance(const Context& c) {
    Result r("equivariance");
    Gen g(c.seed + 6);
    std::vector<Term> env;
    for (const auto& name : named_terms()) {
        env.push_back(*lookup_named(name));
    }
    for (int i = 0; i < 500; ++i) {
        Term t = g.term({.depth = 6, .max_atom = 6, .oracles = true, .loops = true});
        Perm p = g.perm(8);
        ++r.cases;
        auto lhs = c.eng().red(apply_automorphism(p, t), kCap);
        auto o = c.eng().red(t, kCap);
        bool ok = lhs.reduced() == o.reduced();
        if (ok && o.reduced()) {
            ok = lhs.value() == apply_automorphism(p, o.value()) && lhs.stage() == o.stage();
        }
        if (!ok) {
            r.fail(to_string(p) + " on " + print(t) + ": " + show(lhs) + " vs image of " + show(o));
        }
        for (const Term& m : env) {
            if (apply_automorphism(p, m) != m) {
                r.fail(to_string(p) + " moves a standard term");
            }
        }
    }
    return r;
}

Result lambda_sim(const Context& c) {
    Result r("lambda");
    Gen g(c.seed + 7);
    for (int i = 0; i < 500; ++i) {
        std::uint32_t nvars = 1 + static_cast<std::uint32_t>(g.below(2));
        Term body = g.term({.depth = 5, .max_atom = 3, .vars = nvars, .loops = true});
        std::vector<Term> args;
        for (std::uint32_t v = 0; v < nvars; ++v) {
            args.push_back(g.normal(normal_shape(), c.eng()));
        }
        ++r.cases;
        std::vector<std::uint32_t> vars;
        Term subst = body;
        for (std::uint32_t v = 0; v < nvars; ++v) {
            vars.push_back(v);
            subst = substitute(subst, v, args[v]);
        }
        Term abs = lambda(vars, body);
        if (!abs.is_normal() || contains_var(abs, 0) || contains_var(abs, 1)) {
            r.fail("abstraction of " + print(body) + " is not a closed-over normal form");
            continue;
        }
        std::string why = kleene(c.eng(), apply_all(abs, args), subst);
        if (!why.empty()) {
            r.fail(print(body) + " at " + print(args[0]) + ": " + why);
        }
        if (nvars == 2 && !c.eng().red(Term::app(abs, args[0]), kCap).reduced()) {
            r.fail("partial application of " + print(abs) + " undefined");
        }
    }
    return r;
}

Result fixpoints(const Context& c) {
    Result r("fixpoints");
    Gen g(c.seed + 8);
    const Term y = stdlib::y();
    const Term yp = stdlib::yp();
    std::size_t both_defined = 0;
    for (int i = 0; i < 100; ++i) {
        Term f = g.normal(normal_shape(), c.eng());
        Term e = g.normal(normal_shape(), c.eng());
        ++r.cases;
        // Kleene: y f and f (y f) agree, including in being undefined.
        std::string why = kleene(c.eng(), Term::app(y, f), Term::app(f, Term::app(y, f)), 1000);
        if (!why.empty()) {
            r.fail("y " + print(f) + ": " + why);
        }
        auto ypf = c.eng().red(Term::app(yp, f), kCap);
        if (!ypf.reduced()) {
            r.fail("y' " + print(f) + " undefined");
            continue;
        }
        why = kleene(c.eng(), Term::app(ypf.value(), e), ap(f, ypf.value(), e));
        if (!why.empty()) {
            r.fail("y' " + print(f) + " " + print(e) + ": " + why);
        }
        both_defined += c.eng().red(Term::app(ypf.value(), e), kCap).reduced();
    }
    r.stats = std::to_string(both_defined) + " y' f e defined";
    return r;
}

}  // namespace pcaforge::suites
