#include "pcaforge/formula.hpp"

#include <algorithm>

namespace pcaforge {

SetExpr SetExpr::param(std::uint32_t index) {
    SetExpr e;
    e.kind_ = Kind::Param;
    e.index_ = index;
    return e;
}

SetExpr SetExpr::bound(std::uint32_t depth) {
    SetExpr e;
    e.kind_ = Kind::Bound;
    e.index_ = depth;
    return e;
}

SetExpr SetExpr::opair(SetExpr first, SetExpr second) {
    SetExpr e;
    e.kind_ = Kind::OPair;
    e.children_ = std::make_shared<const std::vector<SetExpr>>(std::vector<SetExpr>{std::move(first), std::move(second)});
    return e;
}

std::uint32_t SetExpr::free_depth() const {
    switch (kind_) {
        case Kind::Param:
            return 0;
        case Kind::Bound:
            return index_ + 1;
        case Kind::OPair:
            return std::max(first().free_depth(), second().free_depth());
    }
    return 0;
}

std::uint32_t SetExpr::param_count() const {
    switch (kind_) {
        case Kind::Param:
            return index_ + 1;
        case Kind::Bound:
            return 0;
        case Kind::OPair:
            return std::max(first().param_count(), second().param_count());
    }
    return 0;
}

bool operator==(const SetExpr& a, const SetExpr& b) {
    if (a.kind_ != b.kind_) {
        return false;
    }
    if (a.kind_ == SetExpr::Kind::OPair) {
        return a.first() == b.first() && a.second() == b.second();
    }
    return a.index_ == b.index_;
}

struct Formula::Node {
    Kind kind;
    SetExpr a, b;
    std::vector<Formula> sub;
    bool decidable = true;
    std::uint32_t free_depth = 0;
    std::uint32_t params = 0;
};

namespace {

bool binds(Formula::Kind k) {
    using K = Formula::Kind;
    return k == K::BoundedExists || k == K::BoundedForall || k == K::Exists || k == K::Forall;
}

}  // namespace

Formula::Kind Formula::kind() const { return node_->kind; }
const SetExpr& Formula::lhs() const { return node_->a; }
const SetExpr& Formula::rhs() const { return node_->b; }
const Formula& Formula::left() const { return node_->sub.at(0); }
const Formula& Formula::right() const { return node_->sub.at(1); }
bool Formula::is_decidable() const { return node_->decidable; }
std::uint32_t Formula::free_depth() const { return node_->free_depth; }
std::uint32_t Formula::param_count() const { return node_->params; }

struct FormulaBuilder {
    static Formula wrap(std::shared_ptr<const Formula::Node> n) { return Formula(std::move(n)); }
};

namespace {

Formula make(Formula::Kind kind, SetExpr a, SetExpr b, std::vector<Formula> sub);

}  // namespace

Formula Formula::mem(SetExpr a, SetExpr b) { return make(Kind::Mem, std::move(a), std::move(b), {}); }
Formula Formula::eq(SetExpr a, SetExpr b) { return make(Kind::Eq, std::move(a), std::move(b), {}); }
Formula Formula::conj(Formula l, Formula r) { return make(Kind::And, {}, {}, {std::move(l), std::move(r)}); }
Formula Formula::disj(Formula l, Formula r) { return make(Kind::Or, {}, {}, {std::move(l), std::move(r)}); }
Formula Formula::implies(Formula l, Formula r) { return make(Kind::Implies, {}, {}, {std::move(l), std::move(r)}); }
Formula Formula::negate(Formula f) { return make(Kind::Not, {}, {}, {std::move(f)}); }
Formula Formula::bex(SetExpr bound, Formula body) { return make(Kind::BoundedExists, std::move(bound), {}, {std::move(body)}); }
Formula Formula::ball(SetExpr bound, Formula body) { return make(Kind::BoundedForall, std::move(bound), {}, {std::move(body)}); }
Formula Formula::ex(Formula body) { return make(Kind::Exists, {}, {}, {std::move(body)}); }
Formula Formula::all(Formula body) { return make(Kind::Forall, {}, {}, {std::move(body)}); }

namespace {

Formula make(Formula::Kind kind, SetExpr a, SetExpr b, std::vector<Formula> sub) {
    using K = Formula::Kind;
    auto n = std::make_shared<Formula::Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    n->sub = std::move(sub);
    n->decidable = !(kind == K::Implies || kind == K::Not || kind == K::Exists || kind == K::Forall);
    bool has_sets = kind == K::Mem || kind == K::Eq || kind == K::BoundedExists || kind == K::BoundedForall;
    if (has_sets) {
        n->free_depth = n->a.free_depth();
        n->params = n->a.param_count();
        if (kind == K::Mem || kind == K::Eq) {
            n->free_depth = std::max(n->free_depth, n->b.free_depth());
            n->params = std::max(n->params, n->b.param_count());
        }
    }
    for (const auto& s : n->sub) {
        n->decidable = n->decidable && s.is_decidable();
        std::uint32_t d = s.free_depth();
        if (binds(kind) && d > 0) {
            --d;
        }
        n->free_depth = std::max(n->free_depth, d);
        n->params = std::max(n->params, s.param_count());
    }
    return FormulaBuilder::wrap(std::move(n));
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
    if (a.identity() == b.identity()) {
        return true;
    }
    if (a.kind() != b.kind() || !(a.lhs() == b.lhs()) || !(a.rhs() == b.rhs())) {
        return false;
    }
    const auto& sa = a.node_->sub;
    const auto& sb = b.node_->sub;
    if (sa.size() != sb.size()) {
        return false;
    }
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (!(sa[i] == sb[i])) {
            return false;
        }
    }
    return true;
}

std::string to_string(const SetExpr& e, const std::vector<std::string>& names) {
    switch (e.kind()) {
        case SetExpr::Kind::Param:
            return e.index() < names.size() ? names[e.index()] : "p" + std::to_string(e.index());
        case SetExpr::Kind::Bound:
            return "%" + std::to_string(e.index());
        case SetExpr::Kind::OPair:
            return "(opair " + to_string(e.first(), names) + " " + to_string(e.second(), names) + ")";
    }
    return {};
}

std::string to_string(const Formula& f, const std::vector<std::string>& names) {
    using K = Formula::Kind;
    auto bin = [&](const char* op) {
        return std::string("(") + op + " " + to_string(f.left(), names) + " " + to_string(f.right(), names) + ")";
    };
    switch (f.kind()) {
        case K::Mem:
            return "(mem " + to_string(f.lhs(), names) + " " + to_string(f.rhs(), names) + ")";
        case K::Eq:
            return "(eq " + to_string(f.lhs(), names) + " " + to_string(f.rhs(), names) + ")";
        case K::And:
            return bin("and");
        case K::Or:
            return bin("or");
        case K::Implies:
            return bin("implies");
        case K::Not:
            return "(not " + to_string(f.left(), names) + ")";
        case K::BoundedExists:
            return "(bex " + to_string(f.lhs(), names) + " " + to_string(f.left(), names) + ")";
        case K::BoundedForall:
            return "(ball " + to_string(f.lhs(), names) + " " + to_string(f.left(), names) + ")";
        case K::Exists:
            return "(ex " + to_string(f.left(), names) + ")";
        case K::Forall:
            return "(all " + to_string(f.left(), names) + ")";
    }
    return {};
}

}  // namespace pcaforge
