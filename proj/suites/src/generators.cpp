#include "pcaforge/suites/generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pcaforge/realize.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

namespace pcaforge::suites {

std::uint64_t Gen::below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

bool Gen::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Term Gen::leaf(const TermShape& shape) {
    std::vector<int> kinds{0, 0, 1, 1};
    if (shape.max_atom) {
        kinds.push_back(2);
    }
    if (shape.vars) {
        kinds.push_back(3);
        kinds.push_back(3);
    }
    if (shape.oracles) {
        kinds.push_back(4);
    }
    if (shape.loops) {
        kinds.push_back(5);
        kinds.push_back(5);
    }
    switch (pick(kinds)) {
        case 0:
            return Term::s();
        case 1:
            return Term::k();
        case 2:
            return Term::atom(1 + static_cast<std::uint32_t>(below(shape.max_atom)));
        case 3:
            return Term::var(static_cast<std::uint32_t>(below(shape.vars)));
        case 5:
            return parse("S I I");
        default:
            return Term::oracle(perm(std::max<std::uint32_t>(shape.max_atom, 4)));
    }
}

Term Gen::term(const TermShape& shape) {
    if (shape.depth <= 0 || chance(0.3)) {
        return leaf(shape);
    }
    TermShape sub = shape;
    sub.depth = shape.depth - 1;
    return Term::app(term(sub), term(sub));
}

Term Gen::normal(const TermShape& shape, const Engine& engine, std::uint64_t cap) {
    while (true) {
        auto o = engine.red(term(shape), cap);
        if (o.reduced()) {
            return o.value();
        }
    }
}

Perm Gen::perm(std::uint32_t max_point) {
    std::vector<std::uint32_t> pts(max_point);
    std::iota(pts.begin(), pts.end(), 1u);
    std::shuffle(pts.begin(), pts.end(), rng_);
    std::size_t n = 2 + below(std::min<std::uint32_t>(max_point, 5) - 1);
    pts.resize(std::min<std::size_t>(n, pts.size()));
    return Perm::cycle(pts);
}

AppTree Gen::app_tree(int depth, const std::vector<Term>& pool) {
    if (depth <= 0 || chance(0.25)) {
        return AppTree::leaf(pick(pool));
    }
    return AppTree::node(app_tree(depth - 1, pool), app_tree(depth - 1, pool));
}

Term Gen::key(const SetShape& shape) {
    if (shape.odd_key > 0 && chance(shape.odd_key)) {
        static const std::vector<Term> odd{Term::k(), Term::s(), parse("S K"), parse("K K"), parse("S I I")};
        return pick(odd);
    }
    return numeral(static_cast<std::uint32_t>(below(shape.keys)));
}

RSet Gen::rset_of_rank(const SetShape& shape, std::uint32_t rank) {
    if (rank == 0) {
        return RSet{};
    }
    // One member carries rank - 1; the rest are anything lower.
    std::vector<RElement> elems;
    std::size_t width = 1 + below(shape.max_width);
    std::vector<std::uint32_t> fresh(shape.keys);
    std::iota(fresh.begin(), fresh.end(), 0u);
    std::shuffle(fresh.begin(), fresh.end(), rng_);
    for (std::size_t i = 0; i < width; ++i) {
        Term k = shape.injective ? numeral(fresh[i % fresh.size()]) : key(shape);
        if (shape.injective && i >= fresh.size()) {
            break;
        }
        std::uint32_t r = i == 0 ? rank - 1 : static_cast<std::uint32_t>(below(rank));
        elems.push_back({k, rset_of_rank(shape, r)});
    }
    RSet out = RSet::of(std::move(elems));
    return out;
}

RSet Gen::rset(const SetShape& shape) {
    return rset_of_rank(shape, static_cast<std::uint32_t>(below(shape.max_rank + 1)));
}

LabeledRSet Gen::lrset(const SetShape& shape, double one_label, std::uint32_t max_atom) {
    std::uint32_t rank = static_cast<std::uint32_t>(below(shape.max_rank + 1));
    std::function<LabeledRSet(std::uint32_t)> go = [&](std::uint32_t r) {
        if (r == 0) {
            return LabeledRSet{};
        }
        std::vector<LElement> elems;
        std::size_t width = 1 + below(shape.max_width);
        for (std::size_t i = 0; i < width; ++i) {
            Term k = key(shape);
            if (max_atom && chance(0.3)) {
                k = Term::app(Term::k(), Term::atom(1 + static_cast<std::uint32_t>(below(max_atom))));
            }
            std::uint32_t sub = i == 0 ? r - 1 : static_cast<std::uint32_t>(below(r));
            elems.push_back({static_cast<std::uint8_t>(chance(one_label) ? 1 : 0), k, go(sub)});
        }
        return LabeledRSet::of(std::move(elems));
    };
    return go(rank);
}

RSet Gen::variant(const RSet& a, std::uint32_t keys) {
    std::vector<RElement> out;
    for (const auto& el : a.elements()) {
        RSet child = chance(0.5) ? variant(el.child, keys) : el.child;
        Term k = chance(0.3) ? numeral(static_cast<std::uint32_t>(below(keys))) : el.realizer;
        out.push_back({k, child});
        if (chance(0.2)) {
            out.push_back({numeral(static_cast<std::uint32_t>(below(keys + 2))), variant(el.child, keys)});
        }
    }
    return RSet::of(std::move(out));
}

SetExpr Gen::operand(std::uint32_t params, std::uint32_t depth, bool allow_opair) {
    if (allow_opair && chance(0.1)) {
        return SetExpr::opair(operand(params, depth, false), operand(params, depth, false));
    }
    if (depth > 0 && chance(0.5)) {
        return SetExpr::bound(static_cast<std::uint32_t>(below(depth)));
    }
    return SetExpr::param(static_cast<std::uint32_t>(below(params)));
}

Formula Gen::formula(std::uint32_t params, int depth, bool allow_opair) {
    std::function<Formula(int, std::uint32_t)> go = [&](int d, std::uint32_t scope) -> Formula {
        int choice = d <= 0 ? static_cast<int>(below(2)) : static_cast<int>(below(6));
        switch (choice) {
            case 0:
                return Formula::mem(operand(params, scope, allow_opair), operand(params, scope, allow_opair));
            case 1:
                return Formula::eq(operand(params, scope, allow_opair), operand(params, scope, allow_opair));
            case 2:
                return Formula::conj(go(d - 1, scope), go(d - 1, scope));
            case 3:
                return Formula::disj(go(d - 1, scope), go(d - 1, scope));
            case 4:
                return Formula::bex(operand(params, scope, false), go(d - 1, scope + 1));
            default:
                return Formula::ball(operand(params, scope, false), go(d - 1, scope + 1));
        }
    };
    return go(depth, 0);
}

Term Gen::shaped_eq(std::uint32_t keys, int budget) {
    if (budget <= 0 || chance(0.2)) {
        // The last one loops whenever it is applied.
        static const std::vector<Term> tails{equality_realizers().ir, Term::k(), stdlib::identity(),
                                             parse("S I I"), parse("S (K (S I I)) (K (S I I))")};
        return pick(tails);
    }
    // p (K m0) (K m1) with m = p #k r
    auto m = [&] {
        return ap(stdlib::pair(), numeral(static_cast<std::uint32_t>(below(keys))), shaped_eq(keys, budget - 1));
    };
    return ap(stdlib::pair(), Term::app(Term::k(), m()), Term::app(Term::k(), m()));
}

Term Gen::shaped(const Formula& phi, std::uint32_t keys, int budget) {
    using K = Formula::Kind;
    auto num = [&] { return numeral(static_cast<std::uint32_t>(below(keys))); };
    switch (phi.kind()) {
        case K::Mem:
            return ap(stdlib::pair(), num(), shaped_eq(keys, budget));
        case K::Eq:
            return shaped_eq(keys, budget);
        case K::And:
            return ap(stdlib::pair(), shaped(phi.left(), keys, budget), shaped(phi.right(), keys, budget));
        case K::Or: {
            bool left = chance(0.5);
            return ap(stdlib::pair(), numeral(left ? 0 : 1), shaped(left ? phi.left() : phi.right(), keys, budget));
        }
        case K::BoundedExists:
            return ap(stdlib::pair(), num(), shaped(phi.left(), keys, budget));
        case K::BoundedForall:
            return Term::app(Term::k(), shaped(phi.left(), keys, budget));
        default:
            return Term::k();
    }
}

Term Gen::shaped_realizer(const Formula& phi, std::uint32_t keys, const Engine& engine) {
    Term t = shaped(phi, keys, 3);
    auto o = engine.red(t, 100000);
    return o.reduced() ? o.value() : Term::k();
}

}  // namespace pcaforge::suites
