#include "pcaforge/realize.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hashing.hpp"
#include "pcaforge/gadgets.hpp"
#include "pcaforge/stdlib.hpp"

namespace pcaforge {

std::string to_string(const Bounds& b) {
    std::string out = "cap=" + std::to_string(b.cap);
    if (b.candidates) {
        out += ",candidates=" + std::to_string(*b.candidates);
    }
    if (b.universe) {
        out += ",universe=" + std::to_string(*b.universe);
    }
    if (b.truncation) {
        out += ",truncation=" + std::to_string(*b.truncation);
    }
    return out;
}

std::string to_string(const Verdict& v) {
    switch (v.kind) {
        case Verdict::Kind::Realized:
            return "REALIZED";
        case Verdict::Kind::NotRealized:
            return "NOT-REALIZED";
        case Verdict::Kind::Unknown:
            break;
    }
    const char* reason = v.reason == Verdict::Reason::Budget ? "budget" : "approximate-fragment";
    return std::string("UNKNOWN(") + reason + ", " + to_string(v.bounds) + ")";
}

namespace {

// Strong Kleene folds. A decisive value stops the scan; otherwise the first
// Unknown seen is kept.
class AllOf {
public:
    explicit AllOf(Bounds b) : result_(Verdict::realized(b)) {}
    /// False once the outcome is settled.
    bool add(const Verdict& v) {
        if (v.is_not_realized()) {
            result_ = v;
            return false;
        }
        if (v.is_unknown() && !result_.is_unknown()) {
            result_ = v;
        }
        return true;
    }
    Verdict result() const { return result_; }

private:
    Verdict result_;
};

class AnyOf {
public:
    explicit AnyOf(Bounds b) : result_(Verdict::not_realized(b)) {}
    bool add(const Verdict& v) {
        if (v.is_realized()) {
            result_ = v;
            return false;
        }
        if (v.is_unknown() && !result_.is_unknown()) {
            result_ = v;
        }
        return true;
    }
    Verdict result() const { return result_; }

private:
    Verdict result_;
};

template <class Set>
Set eval_set(const SetExpr& x, std::span<const Set> params, const std::vector<Set>& bound) {
    switch (x.kind()) {
        case SetExpr::Kind::Param:
            return params[x.index()];
        case SetExpr::Kind::Bound:
            return bound[bound.size() - 1 - x.index()];
        case SetExpr::Kind::OPair:
            return ordered_pair(eval_set(x.first(), params, bound), eval_set(x.second(), params, bound));
    }
    throw std::logic_error("unknown set expression");
}

void validate_scope(const Formula& phi, std::size_t params) {
    if (!phi.is_closed()) {
        throw std::invalid_argument("formula has a bound variable outside its binder");
    }
    if (phi.param_count() > params) {
        throw std::invalid_argument("formula uses " + std::to_string(phi.param_count()) + " parameters, " +
                                    std::to_string(params) + " supplied");
    }
}

struct BoundGuard {
    template <class Set>
    BoundGuard(std::vector<Set>& v, Set s) : pop([&v] { v.pop_back(); }) {
        v.push_back(std::move(s));
    }
    ~BoundGuard() { pop(); }
    std::function<void()> pop;
};

}  // namespace

std::size_t Checker::AtomKeyHash::operator()(const AtomKey& k) const {
    std::uint64_t h = detail::combine(k.e ? k.e->hash() : 0x9e37u, k.is_eq ? 1 : 2);
    h = detail::combine(h, k.a.hash());
    return static_cast<std::size_t>(detail::combine(h, k.b.hash()));
}

Checker::Checker(std::uint64_t cap, const Engine& engine) : cap_(cap), engine_(engine) {}

Bounds Checker::bounds() const {
    Bounds b{cap_, std::nullopt, std::nullopt, std::nullopt};
    if (approximating_) {
        b.candidates = candidates_.size();
        b.universe = universe_.size();
    }
    return b;
}

const ReductionOutcome& Checker::reduce(const Term& t) {
    if (auto it = red_memo_.find(t); it != red_memo_.end()) {
        return it->second;
    }
    return red_memo_.emplace(t, engine_.red(t, cap_)).first->second;
}

const Term* Checker::part(const Term* e, int which) {
    if (!e) {
        return nullptr;
    }
    const ReductionOutcome& o = reduce(which == 0 ? stdlib::proj0(*e) : stdlib::proj1(*e));
    return o.reduced() ? &o.value() : nullptr;
}

const Term* Checker::app(const Term* f, const Term& x) {
    if (!f) {
        return nullptr;
    }
    const ReductionOutcome& o = reduce(Term::app(*f, x));
    return o.reduced() ? &o.value() : nullptr;
}

Verdict Checker::check(const Term& e, const Formula& phi, std::span<const RSet> params) {
    validate_scope(phi, params.size());
    const ReductionOutcome& o = reduce(e);
    std::vector<RSet> bound;
    return walk(o.reduced() ? &o.value() : nullptr, phi, params, bound);
}

Verdict Checker::check_bounded_approx(const Term& e, const Formula& phi, std::span<const RSet> params,
                                      std::span<const Term> candidates, std::span<const RSet> universe) {
    candidates_ = candidates;
    universe_ = universe;
    approximating_ = true;
    // Memoized atoms never depend on the approximation, but their bounds do.
    atom_memo_.clear();
    Verdict v = check(e, phi, params);
    approximating_ = false;
    atom_memo_.clear();
    if (!phi.is_decidable() && v.is_realized()) {
        throw std::logic_error("bounded approximation produced Realized outside the decidable fragment");
    }
    return v;
}

Verdict Checker::check_env(const Term& e, const Formula& phi, std::span<const RSet> params, std::vector<RSet>& bound) {
    return walk(&e, phi, params, bound);
}

Verdict Checker::mem(const Term& e, const RSet& a, const RSet& b) { return atomic(&e, false, a, b); }

Verdict Checker::eq(const Term& e, const RSet& a, const RSet& b) { return atomic(&e, true, a, b); }

Verdict Checker::atomic(const Term* e, bool is_eq, const RSet& a, const RSet& b) {
    return atomic(e, is_eq, a, b, 1, 2 * std::max(a.rank(), b.rank()) + 1);
}

Verdict Checker::atomic(const Term* e, bool is_eq, const RSet& a, const RSet& b, std::uint32_t depth,
                        std::uint32_t allowance) {
    if (depth > allowance) {
        throw std::logic_error("membership/equality recursion exceeded 2 * rank + 1");
    }
    max_depth_ = std::max(max_depth_, depth);
    AtomKey key{e ? std::optional<Term>(*e) : std::nullopt, is_eq, a, b};
    if (auto it = atom_memo_.find(key); it != atom_memo_.end()) {
        return it->second;
    }
    Verdict v = atomic_body(e, is_eq, a, b, depth, allowance);
    if (!e) {
        v = demote(v);
    }
    atom_memo_.emplace(std::move(key), v);
    return v;
}

// A null realizer stands for a term whose reduction ran out of budget. Its
// parts are null too, and the clause is read in strong Kleene fashion: it can
// still come out NotRealized when no realizer at all could satisfy it, and is
// otherwise Unknown.
Verdict Checker::atomic_body(const Term* e, bool is_eq, const RSet& a, const RSet& b, std::uint32_t depth,
                             std::uint32_t allowance) {
    if (!is_eq) {
        // (exists <(e)_0, c> in b) (e)_1 |- a = c
        if (b.empty()) {
            return Verdict::not_realized(bounds());
        }
        const Term* e0 = part(e, 0);
        const Term* e1 = nullptr;
        bool e1_done = false;
        AnyOf any(bounds());
        for (const auto& el : b.elements()) {
            if (e0 && *e0 != el.realizer) {
                continue;
            }
            if (!e1_done) {
                e1 = part(e, 1);
                e1_done = true;
            }
            Verdict v = atomic(e1, true, a, el.child, depth + 1, allowance);
            if (!any.add(e0 ? v : demote(v))) {
                break;
            }
        }
        return any.result();
    }
    // (forall <f, c> in a) (e)_0 f |- c in b, and symmetrically with (e)_1.
    AllOf all(bounds());
    auto side = [&](const RSet& from, const RSet& to, int which) {
        if (from.empty()) {
            return true;
        }
        const Term* ei = part(e, which);
        for (const auto& el : from.elements()) {
            if (!all.add(atomic(app(ei, el.realizer), false, el.child, to, depth + 1, allowance))) {
                return false;
            }
        }
        return true;
    };
    if (side(a, b, 0)) {
        side(b, a, 1);
    }
    return all.result();
}

Verdict Checker::walk(const Term* e, const Formula& phi, std::span<const RSet> params, std::vector<RSet>& bound) {
    Verdict v = walk_body(e, phi, params, bound);
    return e ? v : demote(v);
}

Verdict Checker::walk_body(const Term* e, const Formula& phi, std::span<const RSet> params,
                           std::vector<RSet>& bound) {
    using K = Formula::Kind;
    switch (phi.kind()) {
        case K::Mem:
        case K::Eq: {
            RSet a = eval_set(phi.lhs(), params, bound);
            RSet b = eval_set(phi.rhs(), params, bound);
            return atomic(e, phi.kind() == K::Eq, a, b);
        }
        case K::And: {
            AllOf all(bounds());
            if (all.add(walk(part(e, 0), phi.left(), params, bound))) {
                all.add(walk(part(e, 1), phi.right(), params, bound));
            }
            return all.result();
        }
        case K::Or: {
            const Term* e0 = part(e, 0);
            if (!e0) {
                // Either tag is possible.
                const Term* e1 = part(e, 1);
                AnyOf any(bounds());
                if (any.add(demote(walk(e1, phi.left(), params, bound)))) {
                    any.add(demote(walk(e1, phi.right(), params, bound)));
                }
                return any.result();
            }
            const Formula* branch = nullptr;
            if (*e0 == numeral(0)) {
                branch = &phi.left();
            } else if (*e0 == numeral(1)) {
                branch = &phi.right();
            } else {
                return Verdict::not_realized(bounds());
            }
            return walk(part(e, 1), *branch, params, bound);
        }
        case K::BoundedExists: {
            RSet a = eval_set(phi.lhs(), params, bound);
            if (a.empty()) {
                return Verdict::not_realized(bounds());
            }
            const Term* e0 = part(e, 0);
            const Term* e1 = nullptr;
            bool e1_done = false;
            AnyOf any(bounds());
            for (const auto& el : a.elements()) {
                if (e0 && *e0 != el.realizer) {
                    continue;
                }
                if (!e1_done) {
                    e1 = part(e, 1);
                    e1_done = true;
                }
                BoundGuard g(bound, el.child);
                Verdict v = walk(e1, phi.left(), params, bound);
                if (!any.add(e0 ? v : demote(v))) {
                    break;
                }
            }
            return any.result();
        }
        case K::BoundedForall: {
            RSet a = eval_set(phi.lhs(), params, bound);
            AllOf all(bounds());
            for (const auto& el : a.elements()) {
                BoundGuard g(bound, el.child);
                if (!all.add(walk(app(e, el.realizer), phi.left(), params, bound))) {
                    break;
                }
            }
            return all.result();
        }
        case K::Implies:
        case K::Not:
        case K::Exists:
        case K::Forall:
            if (!approximating_) {
                return Verdict::unknown(Verdict::Reason::ApproximateFragment, bounds());
            }
            return approx(e, phi, params, bound);
    }
    throw std::logic_error("unknown formula kind");
}

Verdict Checker::approx(const Term* e, const Formula& phi, std::span<const RSet> params, std::vector<RSet>& bound) {
    using K = Formula::Kind;
    const Verdict open = Verdict::unknown(Verdict::Reason::ApproximateFragment, bounds());
    switch (phi.kind()) {
        case K::Implies:
        case K::Not:
            for (const Term& c : candidates_) {
                const ReductionOutcome& f = reduce(c);
                if (!f.reduced() || !walk(&f.value(), phi.left(), params, bound).is_realized()) {
                    continue;
                }
                if (phi.kind() == K::Not) {
                    // f realizes the negated formula.
                    return Verdict::not_realized(bounds());
                }
                if (walk(app(e, f.value()), phi.right(), params, bound).is_not_realized()) {
                    return Verdict::not_realized(bounds());
                }
            }
            return open;
        case K::Forall:
            for (const RSet& u : universe_) {
                BoundGuard g(bound, u);
                if (walk(e, phi.left(), params, bound).is_not_realized()) {
                    return Verdict::not_realized(bounds());
                }
            }
            return open;
        case K::Exists:
            // A witness from the universe would be sound, but the approximate
            // fragment never answers Realized; no finite search refutes it.
            return open;
        default:
            throw std::logic_error("approx called on a decidable connective");
    }
}
Verdict check(const Term& e, const Formula& phi, std::span<const RSet> params, std::uint64_t cap) {
    Checker c(cap);
    return c.check(e, phi, params);
}

Verdict check_bounded_approx(const Term& e, const Formula& phi, std::span<const RSet> params,
                             std::span<const Term> candidates, std::span<const RSet> universe, std::uint64_t cap) {
    Checker c(cap);
    return c.check_bounded_approx(e, phi, params, candidates, universe);
}

GammaChecker::GammaChecker(std::uint64_t cap, const Engine& engine) : v_(cap, engine) {}

const RSet& GammaChecker::proj(const LabeledRSet& a) {
    if (auto it = proj_memo_.find(a.identity()); it != proj_memo_.end()) {
        return it->second;
    }
    keep_alive_.push_back(a);
    return proj_memo_.emplace(a.identity(), project(a)).first->second;
}

Verdict GammaChecker::check0(const Term& e, const Formula& phi, std::span<const LabeledRSet> params) {
    validate_scope(phi, params.size());
    const ReductionOutcome& o = v_.reduce(e);
    std::vector<LabeledRSet> bound;
    return walk(o.reduced() ? &o.value() : nullptr, phi, params, bound);
}

std::size_t GammaChecker::AtomKeyHash::operator()(const AtomKey& k) const {
    std::uint64_t h = detail::combine(k.e ? k.e->hash() : 0x9e37u, k.is_eq ? 3 : 4);
    h = detail::combine(h, k.a.hash());
    return static_cast<std::size_t>(detail::combine(h, k.b.hash()));
}

Verdict GammaChecker::mem(const Term& e, const LabeledRSet& a, const LabeledRSet& b) { return atomic(&e, false, a, b); }

Verdict GammaChecker::eq(const Term& e, const LabeledRSet& a, const LabeledRSet& b) { return atomic(&e, true, a, b); }

Verdict GammaChecker::atomic(const Term* e, bool is_eq, const LabeledRSet& a, const LabeledRSet& b) {
    AtomKey key{e ? std::optional<Term>(*e) : std::nullopt, is_eq, a, b};
    if (auto it = memo_.find(key); it != memo_.end()) {
        return it->second;
    }
    Verdict v = is_eq ? eq_body(e, a, b) : mem_body(e, a, b);
    if (!e) {
        v = v_.demote(v);
    }
    memo_.emplace(std::move(key), v);
    return v;
}

Verdict GammaChecker::mem_body(const Term* e, const LabeledRSet& a, const LabeledRSet& b) {
    const Bounds bd{v_.cap(), {}, {}, {}};
    bool any_zero = std::any_of(b.elements().begin(), b.elements().end(), [](const LElement& x) { return x.label == 0; });
    if (!any_zero) {
        return Verdict::not_realized(bd);
    }
    const Term* e0 = v_.part(e, 0);
    const Term* e1 = nullptr;
    bool e1_done = false;
    AnyOf any(bd);
    for (const auto& el : b.elements()) {
        if (el.label != 0 || (e0 && *e0 != el.realizer)) {
            continue;
        }
        if (!e1_done) {
            e1 = v_.part(e, 1);
            e1_done = true;
        }
        Verdict v = atomic(e1, true, a, el.child);
        if (!any.add(e0 ? v : v_.demote(v))) {
            break;
        }
    }
    return any.result();
}

Verdict GammaChecker::eq_body(const Term* e, const LabeledRSet& a, const LabeledRSet& b) {
    const Bounds bd{v_.cap(), {}, {}, {}};
    AllOf all(bd);
    auto side = [&](const LabeledRSet& from, const LabeledRSet& to, int which) {
        const Term* ei = nullptr;
        bool ei_done = false;
        for (const auto& el : from.elements()) {
            if (el.label != 0) {
                continue;
            }
            if (!ei_done) {
                ei = v_.part(e, which);
                ei_done = true;
            }
            if (!all.add(atomic(v_.app(ei, el.realizer), false, el.child, to))) {
                return false;
            }
        }
        return true;
    };
    if (side(a, b, 0) && side(b, a, 1)) {
        // e |-_1 a = b
        all.add(v_.atomic(e, true, proj(a), proj(b)));
    }
    return all.result();
}

Verdict GammaChecker::walk(const Term* e, const Formula& phi, std::span<const LabeledRSet> params,
                           std::vector<LabeledRSet>& bound) {
    Verdict v = walk_body(e, phi, params, bound);
    return e ? v : v_.demote(v);
}

Verdict GammaChecker::walk_body(const Term* e, const Formula& phi, std::span<const LabeledRSet> params,
                                std::vector<LabeledRSet>& bound) {
    using K = Formula::Kind;
    const Bounds bd{v_.cap(), {}, {}, {}};
    switch (phi.kind()) {
        case K::Mem:
        case K::Eq: {
            LabeledRSet a = eval_set(phi.lhs(), params, bound);
            LabeledRSet b = eval_set(phi.rhs(), params, bound);
            return atomic(e, phi.kind() == K::Eq, a, b);
        }
        case K::And: {
            AllOf all(bd);
            if (all.add(walk(v_.part(e, 0), phi.left(), params, bound))) {
                all.add(walk(v_.part(e, 1), phi.right(), params, bound));
            }
            return all.result();
        }
        case K::Or: {
            const Term* e0 = v_.part(e, 0);
            if (!e0) {
                const Term* e1 = v_.part(e, 1);
                AnyOf any(bd);
                if (any.add(v_.demote(walk(e1, phi.left(), params, bound)))) {
                    any.add(v_.demote(walk(e1, phi.right(), params, bound)));
                }
                return any.result();
            }
            const Formula* branch = nullptr;
            if (*e0 == numeral(0)) {
                branch = &phi.left();
            } else if (*e0 == numeral(1)) {
                branch = &phi.right();
            } else {
                return Verdict::not_realized(bd);
            }
            return walk(v_.part(e, 1), *branch, params, bound);
        }
        case K::BoundedExists: {
            LabeledRSet a = eval_set(phi.lhs(), params, bound);
            AnyOf any(bd);
            const Term* e0 = nullptr;
            const Term* e1 = nullptr;
            bool e0_done = false, e1_done = false;
            for (const auto& el : a.elements()) {
                if (el.label != 0) {
                    continue;
                }
                if (!e0_done) {
                    e0 = v_.part(e, 0);
                    e0_done = true;
                }
                if (e0 && *e0 != el.realizer) {
                    continue;
                }
                if (!e1_done) {
                    e1 = v_.part(e, 1);
                    e1_done = true;
                }
                BoundGuard g(bound, el.child);
                Verdict v = walk(e1, phi.left(), params, bound);
                if (!any.add(e0 ? v : v_.demote(v))) {
                    break;
                }
            }
            return any.result();
        }
        case K::BoundedForall: {
            LabeledRSet a = eval_set(phi.lhs(), params, bound);
            AllOf all(bd);
            for (const auto& el : a.elements()) {
                if (el.label != 0) {
                    continue;
                }
                BoundGuard g(bound, el.child);
                if (!all.add(walk(v_.app(e, el.realizer), phi.left(), params, bound))) {
                    return all.result();
                }
            }
            // e |-_1 (forall x in a) phi(x): the same formula on projections.
            std::vector<RSet> pparams;
            for (const auto& p : params) {
                pparams.push_back(proj(p));
            }
            std::vector<RSet> pbound;
            for (const auto& b : bound) {
                pbound.push_back(proj(b));
            }
            all.add(v_.walk(e, phi, pparams, pbound));
            return all.result();
        }
        case K::Implies:
        case K::Not:
        case K::Exists:
        case K::Forall:
            return Verdict::unknown(Verdict::Reason::ApproximateFragment, bd);
    }
    throw std::logic_error("unknown formula kind");
}
Verdict check0_gamma(const Term& e, const Formula& phi, std::span<const LabeledRSet> params, std::uint64_t cap) {
    GammaChecker c(cap);
    return c.check0(e, phi, params);
}

Verdict check0_ip(const Term& e, const Formula& phi, std::span<const RSet> params, std::uint64_t cap) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!is_injectively_presented(params[i])) {
            throw std::invalid_argument("parameter " + std::to_string(i) + " is not injectively presented");
        }
    }
    return check(e, phi, params, cap);
}

namespace {

Term x(std::uint32_t i) { return Term::var(i); }

// Constant slots shared by the realizer definitions below.
constexpr std::uint32_t P = 100, P0 = 101, P1 = 102, YP = 103, IT = 104, IS = 105, IR = 106, Z = 107;

Term def(std::vector<std::uint32_t> vars, const Term& body, const std::vector<std::pair<std::uint32_t, Term>>& consts) {
    return define(std::span<const std::uint32_t>(vars), body, std::span<const std::pair<std::uint32_t, Term>>(consts));
}

Term pr(Term a, Term b) { return ap(x(P), std::move(a), std::move(b)); }
Term pi0(Term a) { return Term::app(x(P0), std::move(a)); }
Term pi1(Term a) { return Term::app(x(P1), std::move(a)); }

EqualityRealizers build_equality_realizers() {
    const std::pair<std::uint32_t, Term> base[] = {
        {P, stdlib::pair()}, {P0, stdlib::p0()}, {P1, stdlib::p1()}, {YP, stdlib::yp()}};
    auto with = [&](std::initializer_list<std::pair<std::uint32_t, Term>> extra) {
        std::vector<std::pair<std::uint32_t, Term>> out(std::begin(base), std::end(base));
        out.insert(out.end(), extra.begin(), extra.end());
        return out;
    };
    const std::vector<std::uint32_t> none;
    EqualityRealizers r{Term::s(), Term::s(), Term::s(), Term::s(), Term::s()};

    // R = y' ([r][d] p ([f] p f (r d)) ([f] p f (r d))); i_r = R I
    {
        const Term rd = Term::app(x(0), x(1));
        Term half = lambda({2}, pr(x(2), rd));
        Term rec = Term::app(x(YP), lambda({0, 1}, pr(half, half)));
        auto consts = with({});
        Term big_r = define(none, rec, consts);
        r.ir = normalize(Term::app(big_r, stdlib::identity()));
    }
    // i_s = [e] p (e)_1 (e)_0
    r.is = def({0}, pr(pi1(x(0)), pi0(x(0))), with({}));

    // i_t = y' ([r][e][f] p ([h] T0) ([h] T1)) where, with k = ((e)_0 h)_0,
    // T0 = p ((f)_0 k)_0 (r ((e)_0 h)_1 ((f)_0 k)_1), and T1 mirrors it
    // through (f)_1 then (e)_1.
    {
        const Term rr = x(0), e = x(1), f = x(2), h = x(3);
        const Term eh = Term::app(pi0(e), h);
        const Term fk = Term::app(pi0(f), pi0(eh));
        const Term t0 = pr(pi0(fk), ap(rr, pi1(eh), pi1(fk)));
        const Term fh = Term::app(pi1(f), h);
        const Term ek = Term::app(pi1(e), pi0(fh));
        const Term t1 = pr(pi0(ek), ap(rr, pi1(fh), pi1(ek)));
        Term body = pr(lambda({3}, t0), lambda({3}, t1));
        r.it = define(none, Term::app(x(YP), lambda({0, 1, 2}, body)), with({}));
    }
    // i_0 = [e][f] p (f)_0 (i_t e (f)_1)
    r.i0 = def({0, 1}, pr(pi0(x(1)), ap(x(IT), x(0), pi1(x(1)))), with({{IT, r.it}}));
    // i_1 = [e][f] p ((e)_0 (f)_0)_0 (i_t (f)_1 ((e)_0 (f)_0)_1)
    {
        const Term ef = Term::app(pi0(x(0)), pi0(x(1)));
        r.i1 = def({0, 1}, pr(pi0(ef), ap(x(IT), pi1(x(1)), pi1(ef))), with({{IT, r.it}}));
    }
    return r;
}

}  // namespace

const EqualityRealizers& equality_realizers() {
    static const EqualityRealizers r = build_equality_realizers();
    return r;
}

const Term& iplemma_realizer() {
    static const Term t = [] {
        const auto& eqr = equality_realizers();
        const Term w = pi1(Term::app(pi1(x(0)), x(1)));
        return define({0, 1}, ap(x(IT), w, Term::app(x(IS), w)),
                      {{P0, stdlib::p0()}, {P1, stdlib::p1()}, {IT, eqr.it}, {IS, eqr.is}});
    }();
    return t;
}

Verdict iplemma_check(const RSet& a, const RSet& b, const Term& f, const Term& g, std::uint64_t cap) {
    if (!is_injectively_presented(a)) {
        throw std::invalid_argument("iplemma: a is not injectively presented");
    }
    std::vector<RSet> children;
    for (const auto& el : b.elements()) {
        if (el.realizer == g) {
            children.push_back(el.child);
        }
    }
    if (children.size() < 2) {
        throw std::invalid_argument("iplemma: b has " + std::to_string(children.size()) +
                                    " member(s) under key g, two are needed");
    }
    Checker checker(cap);
    Verdict pre = checker.eq(f, a, b);
    if (!f.is_normal() || !pre.is_realized()) {
        throw std::invalid_argument("iplemma: f is not verified to realize a = b (" + to_string(pre) + ")");
    }
    const ReductionOutcome& efg = checker.reduce(ap(iplemma_realizer(), f, g));
    if (!efg.reduced()) {
        return Verdict::unknown(Verdict::Reason::Budget, {cap, {}, {}, {}});
    }
    AllOf all({cap, {}, {}, {}});
    for (const auto& c : children) {
        for (const auto& c2 : children) {
            if (c != c2 && !all.add(checker.eq(efg.value(), c, c2))) {
                return all.result();
            }
        }
    }
    return all.result();
}

Term zeta1() { return Term::oracle(Perm{}); }

const Term& zeta_mvf_realizer() {
    static const Term t = define({0}, pr(Term::app(x(Z), x(0)), pr(x(0), x(IR))),
                                 {{P, stdlib::pair()}, {Z, zeta1()}, {IR, equality_realizers().ir}});
    return t;
}

Term build_type2_composite(const Term& e, const Term& f) {
    // Slots 110/111 keep e and f apart from the projection constant.
    return define({0}, pi0(Term::app(x(110), pi0(Term::app(x(111), x(0))))),
                  {{P0, stdlib::p0()}, {110, e}, {111, f}});
}

RNApprox build_R_N(std::span<const Term> probes, std::uint32_t N, std::uint32_t T, std::uint64_t cap) {
    RNApprox out;
    out.N = N;
    out.T = T;
    std::vector<LElement> elems;
    std::vector<LElement> domain;
    std::uint32_t top = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const Term& f = probes[i];
        if (!f.is_normal() || !probe_type1(f, T, cap).consistent()) {
            throw std::invalid_argument("R_N: probe " + std::to_string(i) + " is not type 1 up to " +
                                        std::to_string(T));
        }
        auto z = red(Term::app(zeta1(), f), cap);
        std::optional<std::uint32_t> zv = z.reduced() ? numeral_value(z.value()) : std::nullopt;
        if (!zv) {
            throw std::logic_error("zeta1 applied to a closed normal probe did not give a numeral");
        }
        RSet graph = graph_rset(f, T, cap);
        domain.push_back({0, f, label_zero(graph)});
        auto add = [&](std::uint32_t n, bool low) {
            LabeledRSet value = label_zero(ordered_pair(graph, canonical_numeral(n)));
            elems.push_back({0, f, value});
            out.triples.push_back({f, *zv, n, low, value});
            top = std::max(top, n);
        };
        if (*zv <= N) {
            add(*zv, true);
        } else {
            for (std::uint32_t n = N + 1; n <= *zv + 1; ++n) {
                add(n, false);
            }
        }
    }
    out.set = LabeledRSet::of(std::move(elems));
    out.domain = LabeledRSet::of(std::move(domain));
    out.omega = label_zero(omega_truncation(top + 1));
    return out;
}

std::vector<RNTriple> rn_part3_violations(const RNApprox& r, std::uint64_t cap) {
    std::vector<RNTriple> bad;
    for (const auto& t : r.triples) {
        const auto& at = t.f.atoms();
        if (!at.empty() && at.back() > r.N) {
            continue;
        }
        auto z = red(Term::app(zeta1(), t.f), cap);
        auto n = z.reduced() ? numeral_value(z.value()) : std::nullopt;
        bool ok = n && *n <= r.N && t.n == *n &&
                  t.value == label_zero(ordered_pair(graph_rset(t.f, r.T, cap), canonical_numeral(*n)));
        if (!ok) {
            bad.push_back(t);
        }
    }
    return bad;
}

Formula rn_totality_formula() {
    return Formula::ball(SetExpr::param(0),
                         Formula::bex(SetExpr::param(1),
                                      Formula::mem(SetExpr::opair(SetExpr::bound(1), SetExpr::bound(0)),
                                                   SetExpr::param(2))));
}

Verdict rn_totality_check(const RNApprox& r, std::uint64_t cap) {
    const LabeledRSet params[] = {r.domain, r.omega, r.set};
    Verdict v = check0_gamma(zeta_mvf_realizer(), rn_totality_formula(), params, cap);
    v.bounds.truncation = r.T;
    return v;
}

}  // namespace pcaforge
