#include "pcaforge/suites/expander.hpp"

#include <stdexcept>

#include "pcaforge/stdlib.hpp"

namespace pcaforge::suites {

namespace {

Tri tri_and(Tri x, Tri y) {
    if (x == Tri::False || y == Tri::False) {
        return Tri::False;
    }
    if (x == Tri::Undetermined || y == Tri::Undetermined) {
        return Tri::Undetermined;
    }
    return Tri::True;
}

Tri tri_or(Tri x, Tri y) {
    if (x == Tri::True || y == Tri::True) {
        return Tri::True;
    }
    if (x == Tri::Undetermined || y == Tri::Undetermined) {
        return Tri::Undetermined;
    }
    return Tri::False;
}

// An exhausted realizer may or may not be defined, so every clause about it
// carries an undetermined conjunct.
Tri defined(const ReductionOutcome& x) { return x.reduced() ? Tri::True : Tri::Undetermined; }

Tri same_term(const ReductionOutcome& x, const Term& t) {
    if (!x.reduced()) {
        return Tri::Undetermined;
    }
    return x.value() == t ? Tri::True : Tri::False;
}

RSet set_of(const SetExpr& x, std::span<const RSet> params, const std::vector<RSet>& env) {
    switch (x.kind()) {
        case SetExpr::Kind::Param:
            return params[x.index()];
        case SetExpr::Kind::Bound:
            return env[env.size() - 1 - x.index()];
        case SetExpr::Kind::OPair: {
            // (a, b) = {{a, a}, {a, b}} with {a, b} = {<#0, a>, <#1, b>}
            RSet a = set_of(x.first(), params, env);
            RSet b = set_of(x.second(), params, env);
            auto upair = [](const RSet& l, const RSet& r) {
                return RSet::of({{numeral(0), l}, {numeral(1), r}});
            };
            return upair(upair(a, a), upair(a, b));
        }
    }
    throw std::logic_error("bad set expression");
}

}  // namespace

ReductionOutcome ClauseExpander::app(const ReductionOutcome& f, const Term& x) const {
    if (!f.reduced()) {
        return f;
    }
    return engine_.red(Term::app(f.value(), x), cap_);
}

ReductionOutcome ClauseExpander::part(const ReductionOutcome& e, int which) const {
    if (!e.reduced()) {
        return e;
    }
    return engine_.red(Term::app(which == 0 ? stdlib::p0() : stdlib::p1(), e.value()), cap_);
}

Tri ClauseExpander::mem(const ReductionOutcome& e, const RSet& a, const RSet& b) const {
    // some <(e)_0, c> in b with (e)_1 |- a = c
    Tri out = Tri::False;
    for (const auto& [key, c] : b.elements()) {
        out = tri_or(out, tri_and(same_term(part(e, 0), key), eq(part(e, 1), a, c)));
    }
    return tri_and(defined(e), out);
}

Tri ClauseExpander::eq(const ReductionOutcome& e, const RSet& a, const RSet& b) const {
    // every <f, c> in a: (e)_0 f |- c in b; every <f, c> in b: (e)_1 f |- c in a
    Tri out = Tri::True;
    for (const auto& [f, c] : a.elements()) {
        out = tri_and(out, mem(app(part(e, 0), f), c, b));
    }
    for (const auto& [f, c] : b.elements()) {
        out = tri_and(out, mem(app(part(e, 1), f), c, a));
    }
    return tri_and(defined(e), out);
}

Tri ClauseExpander::walk(const ReductionOutcome& e, const Formula& phi, std::span<const RSet> params,
                         const std::vector<RSet>& env) const {
    return tri_and(defined(e), clause(e, phi, params, env));
}

Tri ClauseExpander::clause(const ReductionOutcome& e, const Formula& phi, std::span<const RSet> params,
                           const std::vector<RSet>& env) const {
    using K = Formula::Kind;
    switch (phi.kind()) {
        case K::Mem:
            return mem(e, set_of(phi.lhs(), params, env), set_of(phi.rhs(), params, env));
        case K::Eq:
            return eq(e, set_of(phi.lhs(), params, env), set_of(phi.rhs(), params, env));
        case K::And:
            return tri_and(walk(part(e, 0), phi.left(), params, env), walk(part(e, 1), phi.right(), params, env));
        case K::Or: {
            ReductionOutcome e0 = part(e, 0);
            Tri left = tri_and(same_term(e0, numeral(0)), walk(part(e, 1), phi.left(), params, env));
            Tri right = tri_and(same_term(e0, numeral(1)), walk(part(e, 1), phi.right(), params, env));
            return tri_or(left, right);
        }
        case K::BoundedExists: {
            Tri out = Tri::False;
            for (const auto& [key, c] : set_of(phi.lhs(), params, env).elements()) {
                std::vector<RSet> inner = env;
                inner.push_back(c);
                out = tri_or(out, tri_and(same_term(part(e, 0), key), walk(part(e, 1), phi.left(), params, inner)));
            }
            return out;
        }
        case K::BoundedForall: {
            Tri out = Tri::True;
            for (const auto& [f, c] : set_of(phi.lhs(), params, env).elements()) {
                std::vector<RSet> inner = env;
                inner.push_back(c);
                out = tri_and(out, walk(app(e, f), phi.left(), params, inner));
            }
            return out;
        }
        default:
            throw std::invalid_argument("clause expander covers the decidable fragment only");
    }
}

Tri ClauseExpander::realizes(const Term& e, const Formula& phi, std::span<const RSet> params) const {
    return walk(engine_.red(e, cap_), phi, params, {});
}

}  // namespace pcaforge::suites
