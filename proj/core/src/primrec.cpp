#include "pcaforge/primrec.hpp"

#include <string>

#include "pcaforge/stdlib.hpp"

namespace pcaforge {

PRFun PRFun::zero(std::size_t arity) {
    PRFun f;
    f.kind_ = Kind::Zero;
    f.arity_ = arity;
    return f;
}

PRFun PRFun::succ() {
    PRFun f;
    f.kind_ = Kind::Succ;
    f.arity_ = 1;
    return f;
}

PRFun PRFun::proj(std::size_t arity, std::size_t index) {
    if (index >= arity) {
        throw std::invalid_argument("projection index " + std::to_string(index) + " out of arity " +
                                    std::to_string(arity));
    }
    PRFun f;
    f.kind_ = Kind::Proj;
    f.arity_ = arity;
    f.index_ = index;
    return f;
}

PRFun PRFun::comp(PRFun outer, std::vector<PRFun> inners) {
    if (outer.arity() != inners.size()) {
        throw std::invalid_argument("composition: outer arity " + std::to_string(outer.arity()) + " but " +
                                    std::to_string(inners.size()) + " inner functions");
    }
    if (inners.empty()) {
        throw std::invalid_argument("composition needs at least one inner function");
    }
    for (const auto& g : inners) {
        if (g.arity() != inners.front().arity()) {
            throw std::invalid_argument("composition: inner functions disagree on arity");
        }
    }
    PRFun f;
    f.kind_ = Kind::Comp;
    f.arity_ = inners.front().arity();
    inners.insert(inners.begin(), std::move(outer));
    f.children_ = std::make_shared<const std::vector<PRFun>>(std::move(inners));
    return f;
}

PRFun PRFun::primrec(PRFun base, PRFun step) {
    if (step.arity() != base.arity() + 2) {
        throw std::invalid_argument("primitive recursion: step arity must be base arity + 2");
    }
    PRFun f;
    f.kind_ = Kind::PrimRec;
    f.arity_ = base.arity() + 1;
    f.children_ = std::make_shared<const std::vector<PRFun>>(std::vector<PRFun>{std::move(base), std::move(step)});
    return f;
}

PRFun PRFun::bounded_case(std::map<std::uint64_t, std::uint64_t> table, std::uint64_t fallback) {
    PRFun f;
    f.kind_ = Kind::BoundedCase;
    f.arity_ = 1;
    f.table_ = std::make_shared<const std::map<std::uint64_t, std::uint64_t>>(std::move(table));
    f.fallback_ = fallback;
    return f;
}

std::uint64_t evaluate(const PRFun& f, std::span<const std::uint64_t> args) {
    if (args.size() != f.arity()) {
        throw std::invalid_argument("expected " + std::to_string(f.arity()) + " arguments, got " +
                                    std::to_string(args.size()));
    }
    switch (f.kind()) {
        case PRFun::Kind::Zero:
            return 0;
        case PRFun::Kind::Succ:
            return args[0] + 1;
        case PRFun::Kind::Proj:
            return args[f.index()];
        case PRFun::Kind::Comp: {
            const auto& ch = f.children();
            std::vector<std::uint64_t> mid;
            for (std::size_t i = 1; i < ch.size(); ++i) {
                mid.push_back(evaluate(ch[i], args));
            }
            return evaluate(ch[0], mid);
        }
        case PRFun::Kind::PrimRec: {
            const auto& base = f.children()[0];
            const auto& step = f.children()[1];
            std::vector<std::uint64_t> rest(args.begin() + 1, args.end());
            std::uint64_t acc = evaluate(base, rest);
            std::vector<std::uint64_t> sargs(rest.size() + 2);
            std::copy(rest.begin(), rest.end(), sargs.begin() + 2);
            for (std::uint64_t i = 0; i < args[0]; ++i) {
                sargs[0] = i;
                sargs[1] = acc;
                acc = evaluate(step, sargs);
            }
            return acc;
        }
        case PRFun::Kind::BoundedCase: {
            auto it = f.table().find(args[0]);
            return it == f.table().end() ? f.fallback() : it->second;
        }
    }
    return 0;
}

namespace {

Term x(std::uint32_t i) { return Term::var(i); }

std::vector<std::uint32_t> iota(std::uint32_t from, std::size_t n) {
    std::vector<std::uint32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = from + static_cast<std::uint32_t>(i);
    }
    return v;
}

Term apply_vars(Term head, std::span<const std::uint32_t> vars) {
    for (auto v : vars) {
        head = Term::app(std::move(head), x(v));
    }
    return head;
}

std::uint32_t to_numeral_index(std::uint64_t n) {
    if (n > 0xffffffffULL) {
        throw std::invalid_argument("case value too large for a numeral");
    }
    return static_cast<std::uint32_t>(n);
}

}  // namespace

Term compile_primrec(const PRFun& f) {
    switch (f.kind()) {
        case PRFun::Kind::Zero: {
            auto xs = iota(0, f.arity());
            const std::pair<std::uint32_t, Term> zero{100, numeral(0)};
            return define(xs, x(100), std::span(&zero, 1));
        }
        case PRFun::Kind::Succ:
            return stdlib::succ();
        case PRFun::Kind::Proj: {
            auto xs = iota(0, f.arity());
            return lambda(xs, x(static_cast<std::uint32_t>(f.index())));
        }
        case PRFun::Kind::Comp: {
            const auto& ch = f.children();
            auto xs = iota(0, f.arity());
            std::vector<std::pair<std::uint32_t, Term>> consts;
            consts.emplace_back(100, compile_primrec(ch[0]));
            Term body = x(100);
            for (std::size_t i = 1; i < ch.size(); ++i) {
                auto cv = static_cast<std::uint32_t>(100 + i);
                consts.emplace_back(cv, compile_primrec(ch[i]));
                body = Term::app(std::move(body), apply_vars(x(cv), xs));
            }
            return define(xs, body, consts);
        }
        case PRFun::Kind::PrimRec: {
            // y' ([r][n][xs] iszero n (\d. B xs) (\d. St (pred n) (r (pred n) xs) xs) I)
            const auto xs = iota(10, f.arity() - 1);
            const Term b = x(100), st = x(101), z = x(102), pr = x(103), i = x(104), yp = x(105);
            const Term pn = Term::app(pr, x(1));
            Term when_zero = lambda({9}, apply_vars(b, xs));
            Term when_succ = lambda({9}, apply_vars(ap(st, pn, apply_vars(ap(x(0), pn), xs)), xs));
            std::vector<std::uint32_t> params{0, 1};
            params.insert(params.end(), xs.begin(), xs.end());
            Term rec = lambda(params, ap(Term::app(z, x(1)), when_zero, when_succ, i));
            return define({}, Term::app(yp, rec),
                          {{100, compile_primrec(f.children()[0])},
                           {101, compile_primrec(f.children()[1])},
                           {102, stdlib::iszero()},
                           {103, stdlib::pred()},
                           {104, stdlib::identity()},
                           {105, stdlib::yp()}});
        }
        case PRFun::Kind::BoundedCase: {
            std::map<std::uint32_t, Term> table;
            for (const auto& [k, v] : f.table()) {
                table.emplace(to_numeral_index(k), numeral(to_numeral_index(v)));
            }
            return numeral_case(table, numeral(to_numeral_index(f.fallback())));
        }
    }
    throw std::logic_error("unknown PRFun kind");
}

namespace prlib {

PRFun add() { return PRFun::primrec(PRFun::proj(1, 0), PRFun::comp(PRFun::succ(), {PRFun::proj(3, 1)})); }

PRFun mul() {
    // mul(0, x) = 0; mul(n+1, x) = add(mul(n, x), x)
    return PRFun::primrec(PRFun::zero(1), PRFun::comp(add(), {PRFun::proj(3, 1), PRFun::proj(3, 2)}));
}

PRFun pred() { return PRFun::primrec(PRFun::zero(0), PRFun::proj(2, 0)); }

PRFun monus() {
    // monus(x, y) by recursion on y: m(0, x) = x; m(y+1, x) = pred(m(y, x)); then swap arguments.
    PRFun flipped = PRFun::primrec(PRFun::proj(1, 0), PRFun::comp(pred(), {PRFun::proj(3, 1)}));
    return PRFun::comp(flipped, {PRFun::proj(2, 1), PRFun::proj(2, 0)});
}

}  // namespace prlib

}  // namespace pcaforge
