#include "pcaforge/stdlib.hpp"

#include <mutex>
#include <stdexcept>

#include "pcaforge/reduce.hpp"
#include "pcaforge/syntax.hpp"

namespace pcaforge {

namespace {

constexpr std::uint64_t kInternalCap = 1'000'000;
constexpr std::uint32_t kMaxNumeral = 1'000'000;

// Variable numbering for the templates below; constants use 100+.
Term x(std::uint32_t i) { return Term::var(i); }

}  // namespace

Term bracket_abstract(std::uint32_t var, const Term& t) {
    // Post-order over the application tree; the abstraction of every
    // variable-free subtree is still taken structurally.
    struct Item {
        const Term* t;
        bool expanded;
    };
    std::vector<Item> stack{{&t, false}};
    std::vector<Term> done;
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        const Term& cur = *item.t;
        if (!cur.is_app()) {
            if (cur.kind() == TermKind::Var && cur.index() == var) {
                done.push_back(ap(Term::s(), Term::k(), Term::k()));
            } else {
                done.push_back(Term::app(Term::k(), cur));
            }
            continue;
        }
        if (!item.expanded) {
            stack.push_back({item.t, true});
            stack.push_back({&cur.right(), false});
            stack.push_back({&cur.left(), false});
            continue;
        }
        Term r = std::move(done.back());
        done.pop_back();
        Term l = std::move(done.back());
        done.pop_back();
        done.push_back(ap(Term::s(), std::move(l), std::move(r)));
    }
    return done.back();
}

Term lambda(std::span<const std::uint32_t> vars, const Term& body) {
    Term t = body;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        t = bracket_abstract(*it, t);
    }
    return t;
}

Term normalize(const Term& t) {
    auto o = red(t, kInternalCap);
    if (!o.reduced()) {
        throw std::runtime_error("internal construction did not normalize: " + print(t).substr(0, 200));
    }
    return o.value();
}

Term define(std::span<const std::uint32_t> vars, const Term& body,
            std::span<const std::pair<std::uint32_t, Term>> constants) {
    std::vector<std::uint32_t> all;
    for (const auto& c : constants) {
        all.push_back(c.first);
    }
    all.insert(all.end(), vars.begin(), vars.end());
    Term t = lambda(all, body);
    for (const auto& c : constants) {
        t = Term::app(std::move(t), c.second);
    }
    return normalize(t);
}

Term define(std::initializer_list<std::uint32_t> vars, const Term& body,
            std::initializer_list<std::pair<std::uint32_t, Term>> constants) {
    return define(std::span<const std::uint32_t>(vars.begin(), vars.size()), body,
                  std::span<const std::pair<std::uint32_t, Term>>(constants.begin(), constants.size()));
}

namespace stdlib {

Term identity() {
    static const Term t = ap(Term::s(), Term::k(), Term::k());
    return t;
}

Term tru() { return Term::k(); }

Term fls() {
    static const Term t = lambda({0, 1}, x(1));
    return t;
}

Term pair() {
    static const Term t = lambda({0, 1, 2}, ap(x(2), x(0), x(1)));
    return t;
}

Term p0() {
    static const Term t = define({0}, ap(x(0), x(100)), {{100, tru()}});
    return t;
}

Term p1() {
    static const Term t = define({0}, ap(x(0), x(100)), {{100, fls()}});
    return t;
}

Term y() {
    // W = [x][f] f (x x f); y = W W.
    static const Term t = [] {
        Term w = lambda({0, 1}, ap(x(1), ap(x(0), x(0), x(1))));
        return normalize(Term::app(w, w));
    }();
    return t;
}

Term yp() {
    // D = [x][f][e] f (x x f) e; y' = D D.
    static const Term t = [] {
        Term d = lambda({0, 1, 2}, ap(x(1), ap(x(0), x(0), x(1)), x(2)));
        return normalize(Term::app(d, d));
    }();
    return t;
}

Term succ() {
    static const Term t = define({0}, ap(x(100), x(101), x(0)), {{100, pair()}, {101, fls()}});
    return t;
}

Term pred() { return p1(); }

Term iszero() { return p0(); }

Term eqnat() {
    // E r n m = iszero n (\d. iszero m) (\d. iszero m (\d. false) (\d. r (pred n) (pred m)) I) I
    static const Term t = [] {
        const Term z = x(100), pr = x(101), f = x(102), i = x(103), yp_ = x(104);
        Term inner = ap(ap(z, x(2)), lambda({9}, f), lambda({9}, ap(x(0), ap(pr, x(1)), ap(pr, x(2)))), i);
        Term body = ap(ap(z, x(1)), lambda({9}, ap(z, x(2))), lambda({9}, inner), i);
        Term e = lambda({0, 1, 2}, body);
        return define({}, Term::app(yp_, e),
                      {{100, iszero()}, {101, pred()}, {102, fls()}, {103, identity()}, {104, yp()}});
    }();
    return t;
}

const std::vector<std::pair<std::string, Term>>& members() {
    static const std::vector<std::pair<std::string, Term>> table = {
        {"I", identity()}, {"true", tru()},   {"false", fls()},   {"p", pair()},
        {"p0", p0()},      {"p1", p1()},      {"y", y()},         {"yp", yp()},
        {"succ", succ()},  {"pred", pred()},  {"iszero", iszero()}, {"eqnat", eqnat()},
    };
    return table;
}

std::optional<Term> lookup(std::string_view name) {
    for (const auto& [n, t] : members()) {
        if (n == name) {
            return t;
        }
    }
    return std::nullopt;
}

}  // namespace stdlib

namespace {

// Normal form of p false x0; numeral n+1 is this with x0 := numeral n.
const Term& numeral_template() {
    static const Term t = normalize(ap(stdlib::pair(), stdlib::fls(), x(0)));
    return t;
}

// Matches t against the template, returning what x0 is bound to.
std::optional<Term> match_template(const Term& pattern, const Term& t) {
    std::optional<Term> bound;
    std::vector<std::pair<const Term*, const Term*>> stack{{&pattern, &t}};
    while (!stack.empty()) {
        auto [p, u] = stack.back();
        stack.pop_back();
        if (p->kind() == TermKind::Var) {
            if (bound && *bound != *u) {
                return std::nullopt;
            }
            bound = *u;
            continue;
        }
        if (p->kind() != u->kind()) {
            return std::nullopt;
        }
        if (p->is_app()) {
            stack.emplace_back(&p->right(), &u->right());
            stack.emplace_back(&p->left(), &u->left());
        } else if (*p != *u) {
            return std::nullopt;
        }
    }
    return bound;
}

std::mutex g_numeral_mutex;
std::vector<Term> g_numerals;

}  // namespace

Term numeral(std::uint32_t n) {
    if (n > kMaxNumeral) {
        throw std::invalid_argument("numeral " + std::to_string(n) + " is too large");
    }
    const Term& tmpl = numeral_template();
    std::lock_guard lock(g_numeral_mutex);
    if (g_numerals.empty()) {
        g_numerals.push_back(stdlib::identity());
    }
    while (g_numerals.size() <= n) {
        g_numerals.push_back(substitute(tmpl, 0, g_numerals.back()));
    }
    return g_numerals[n];
}

std::optional<std::uint32_t> numeral_value(const Term& t) {
    const Term& tmpl = numeral_template();
    const Term zero = stdlib::identity();
    const std::uint64_t step = tmpl.size() - 1;
    std::uint32_t count = 0;
    const Term* cur = &t;
    std::optional<Term> hold;
    while (true) {
        if (cur->size() == zero.size() && *cur == zero) {
            return count;
        }
        if (cur->size() < zero.size() + step || !cur->atoms().empty() || !cur->is_closed()) {
            return std::nullopt;
        }
        auto inner = match_template(tmpl, *cur);
        if (!inner) {
            return std::nullopt;
        }
        hold = std::move(inner);
        cur = &*hold;
        ++count;
    }
}

Term numeral_case(const std::map<std::uint32_t, Term>& table, const Term& fallback) {
    for (const auto& [k, v] : table) {
        if (!v.is_normal()) {
            throw std::invalid_argument("numeral_case value is not normal");
        }
    }
    if (!fallback.is_normal()) {
        throw std::invalid_argument("numeral_case fallback is not normal");
    }
    // C_j n = iszero n (\d. v_j) (\d. C_{j+1} (pred n)) I, built from the top key down.
    static const Term step_template = [] {
        const Term z = x(100), pr = x(101), i = x(103), v = x(104), next = x(105);
        Term body = ap(ap(z, x(0)), lambda({9}, v), lambda({9}, Term::app(next, ap(pr, x(0)))), i);
        return define({}, lambda({104, 105, 0}, body), {{100, stdlib::iszero()}, {101, stdlib::pred()}, {103, stdlib::identity()}});
    }();
    Term c = Term::app(Term::k(), fallback);
    if (table.empty()) {
        return c;
    }
    const std::uint32_t top = table.rbegin()->first;
    for (std::uint64_t j = top + 1; j-- > 0;) {
        auto it = table.find(static_cast<std::uint32_t>(j));
        const Term& v = it == table.end() ? fallback : it->second;
        c = normalize(ap(step_template, v, c));
    }
    return c;
}

}  // namespace pcaforge
