#include "pcaforge/term.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hashing.hpp"

namespace pcaforge {

class TermNode {
public:
    TermKind kind{};
    bool normal = true;
    bool closed = true;
    bool oracle = false;
    std::uint32_t index = 0;
    Perm perm;
    std::uint64_t size = 1;
    std::uint64_t hash = 0;
    std::shared_ptr<const AtomSet> atoms;
    Term left{nullptr};
    Term right{nullptr};

    TermNode() = default;
    TermNode(const TermNode&) = delete;
    TermNode& operator=(const TermNode&) = delete;

    // Long spines (numerals, long reduction results) would overflow the
    // stack under the default recursive shared_ptr teardown.
    ~TermNode() {
        std::vector<std::shared_ptr<const TermNode>> pending;
        auto take = [&pending](Term& t) {
            if (t.node_ && t.node_.use_count() == 1) {
                pending.push_back(std::move(t.node_));
            }
        };
        take(left);
        take(right);
        while (!pending.empty()) {
            std::shared_ptr<const TermNode> n = std::move(pending.back());
            pending.pop_back();
            auto* owned = const_cast<TermNode*>(n.get());
            take(owned->left);
            take(owned->right);
        }
    }

    static Term wrap(std::shared_ptr<const TermNode> node) { return Term(std::move(node)); }
};

namespace {

const std::shared_ptr<const AtomSet>& empty_atoms() {
    static const auto empty = std::make_shared<const AtomSet>();
    return empty;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    const auto max = std::numeric_limits<std::uint64_t>::max();
    return a > max - b ? max : a + b;
}

Term make_leaf(TermKind kind, std::uint32_t index, Perm perm) {
    auto node = std::make_shared<TermNode>();
    node->kind = kind;
    node->index = index;
    node->atoms = empty_atoms();
    std::uint64_t h = detail::mix(static_cast<std::uint64_t>(kind) + 1);
    switch (kind) {
        case TermKind::Var:
            node->closed = false;
            h = detail::combine(h, index);
            break;
        case TermKind::Atom:
            node->atoms = std::make_shared<const AtomSet>(AtomSet{index});
            h = detail::combine(h, index);
            break;
        case TermKind::Oracle:
            node->oracle = true;
            h = detail::combine(h, perm.hash());
            node->perm = std::move(perm);
            break;
        default:
            break;
    }
    node->hash = h;
    return TermNode::wrap(std::move(node));
}

bool is_top_redex(const Term& l, const Term& r) {
    if (l.kind() == TermKind::Oracle) {
        return r.is_closed();
    }
    if (!l.is_app()) {
        return false;
    }
    const Term& head = l.left();
    if (head.kind() == TermKind::K) {
        return true;
    }
    return head.is_app() && head.left().kind() == TermKind::S;
}

}  // namespace

Term Term::s() {
    static const Term t = make_leaf(TermKind::S, 0, {});
    return t;
}

Term Term::k() {
    static const Term t = make_leaf(TermKind::K, 0, {});
    return t;
}

Term Term::var(std::uint32_t index) { return make_leaf(TermKind::Var, index, {}); }

Term Term::atom(std::uint32_t index) {
    if (index == 0) {
        throw std::invalid_argument("atom indices start at 1");
    }
    return make_leaf(TermKind::Atom, index, {});
}

Term Term::oracle(Perm perm) { return make_leaf(TermKind::Oracle, 0, std::move(perm)); }

Term Term::app(Term left, Term right) {
    auto node = std::make_shared<TermNode>();
    node->kind = TermKind::App;
    node->closed = left.is_closed() && right.is_closed();
    node->oracle = left.has_oracle() || right.has_oracle();
    node->normal = left.is_normal() && right.is_normal() && !is_top_redex(left, right);
    node->size = saturating_add(saturating_add(left.size(), right.size()), 1);
    node->hash = detail::combine(detail::combine(detail::mix(0xa99), left.hash()), right.hash());

    const auto& la = left.node_->atoms;
    const auto& ra = right.node_->atoms;
    if (ra->empty() || la == ra) {
        node->atoms = la;
    } else if (la->empty()) {
        node->atoms = ra;
    } else {
        AtomSet merged;
        merged.reserve(la->size() + ra->size());
        std::set_union(la->begin(), la->end(), ra->begin(), ra->end(), std::back_inserter(merged));
        if (merged.size() == la->size()) {
            node->atoms = la;
        } else if (merged.size() == ra->size()) {
            node->atoms = ra;
        } else {
            node->atoms = std::make_shared<const AtomSet>(std::move(merged));
        }
    }

    node->left = std::move(left);
    node->right = std::move(right);
    return TermNode::wrap(std::move(node));
}

TermKind Term::kind() const { return node_->kind; }
std::uint32_t Term::index() const { return node_->index; }
const Perm& Term::perm() const { return node_->perm; }
const Term& Term::left() const { return node_->left; }
const Term& Term::right() const { return node_->right; }
bool Term::is_normal() const { return node_->normal; }
bool Term::is_closed() const { return node_->closed; }
bool Term::has_oracle() const { return node_->oracle; }
std::uint64_t Term::size() const { return node_->size; }
std::uint64_t Term::hash() const { return node_->hash; }
const AtomSet& Term::atoms() const { return *node_->atoms; }

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<const TermNode*, const TermNode*>& p) const {
        return std::hash<const void*>{}(p.first) * 31 + std::hash<const void*>{}(p.second);
    }
};

}  // namespace

int compare(const Term& a, const Term& b) {
    // Pairs already known equal are skipped once the walk gets long, so
    // heavily shared terms compare in time linear in their DAG size.
    constexpr std::size_t kTrackAfter = 4096;
    std::unordered_set<std::pair<const TermNode*, const TermNode*>, PairHash> seen;
    std::size_t steps = 0;
    std::vector<std::pair<const TermNode*, const TermNode*>> stack;
    stack.emplace_back(a.node(), b.node());
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (x == y) {
            continue;
        }
        if (++steps > kTrackAfter && x->kind == TermKind::App && !seen.emplace(x, y).second) {
            continue;
        }
        if (x->hash != y->hash) {
            return x->hash < y->hash ? -1 : 1;
        }
        if (x->kind != y->kind) {
            return x->kind < y->kind ? -1 : 1;
        }
        switch (x->kind) {
            case TermKind::Var:
            case TermKind::Atom:
                if (x->index != y->index) {
                    return x->index < y->index ? -1 : 1;
                }
                break;
            case TermKind::Oracle:
                if (x->perm != y->perm) {
                    return x->perm < y->perm ? -1 : 1;
                }
                break;
            case TermKind::App:
                stack.emplace_back(x->right.node(), y->right.node());
                stack.emplace_back(x->left.node(), y->left.node());
                break;
            default:
                break;
        }
    }
    return 0;
}

Term apply_all(Term f, std::span<const Term> args) {
    for (const auto& a : args) {
        f = Term::app(std::move(f), a);
    }
    return f;
}

AtomSet atoms_of(const Term& t) { return t.atoms(); }

namespace {

template <class Visit>
void for_each_distinct_node(const Term& t, Visit&& visit) {
    std::vector<const TermNode*> stack{t.node()};
    std::unordered_map<const TermNode*, bool> seen;
    while (!stack.empty()) {
        const TermNode* n = stack.back();
        stack.pop_back();
        if (!seen.emplace(n, true).second) {
            continue;
        }
        visit(*n);
        if (n->kind == TermKind::App) {
            stack.push_back(n->left.node());
            stack.push_back(n->right.node());
        }
    }
}

}  // namespace

AtomSet oracle_support(const Term& t) {
    AtomSet out;
    if (!t.has_oracle()) {
        return out;
    }
    for_each_distinct_node(t, [&out](const TermNode& n) {
        if (n.kind == TermKind::Oracle) {
            for (auto p : n.perm.support()) {
                out.push_back(p);
            }
        }
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool mentions_oracle(const Term& t, const Perm& perm) {
    if (!t.has_oracle()) {
        return false;
    }
    bool found = false;
    for_each_distinct_node(t, [&](const TermNode& n) {
        if (n.kind == TermKind::Oracle && n.perm == perm) {
            found = true;
        }
    });
    return found;
}

namespace {

class Rewriter {
public:
    template <class Leaf, class Untouched>
    Term run(const Term& root, Leaf&& leaf, Untouched&& untouched) {
        struct Item {
            const Term* t;
            bool expanded;
        };
        std::vector<Item> stack{{&root, false}};
        std::vector<Term> done;
        while (!stack.empty()) {
            Item item = stack.back();
            stack.pop_back();
            const Term& t = *item.t;
            if (!item.expanded) {
                if (untouched(t)) {
                    done.push_back(t);
                    continue;
                }
                if (auto it = memo_.find(t.node()); it != memo_.end()) {
                    done.push_back(it->second);
                    continue;
                }
                if (!t.is_app()) {
                    Term out = leaf(t);
                    memo_.emplace(t.node(), out);
                    done.push_back(std::move(out));
                    continue;
                }
                stack.push_back({item.t, true});
                stack.push_back({&t.right(), false});
                stack.push_back({&t.left(), false});
                continue;
            }
            Term r = std::move(done.back());
            done.pop_back();
            Term l = std::move(done.back());
            done.pop_back();
            Term out = (l.node() == t.left().node() && r.node() == t.right().node()) ? t
                                                                                    : Term::app(std::move(l), std::move(r));
            memo_.emplace(t.node(), out);
            done.push_back(std::move(out));
        }
        return done.back();
    }

private:
    std::unordered_map<const TermNode*, Term> memo_;
};

}  // namespace

Term apply_automorphism(const Perm& p, const Term& t) {
    if (p.is_identity()) {
        return t;
    }
    const Perm p_inv = p.inverse();
    Rewriter rw;
    return rw.run(
        t,
        [&](const Term& leaf) {
            switch (leaf.kind()) {
                case TermKind::Atom:
                    return Term::atom(p(leaf.index()));
                case TermKind::Oracle:
                    return Term::oracle(compose(leaf.perm(), p_inv));
                default:
                    return leaf;
            }
        },
        [](const Term& sub) { return sub.atoms().empty() && !sub.has_oracle(); });
}

bool contains_var(const Term& t, std::uint32_t var) {
    if (t.is_closed()) {
        return false;
    }
    bool found = false;
    for_each_distinct_node(t, [&](const TermNode& n) {
        if (n.kind == TermKind::Var && n.index == var) {
            found = true;
        }
    });
    return found;
}

Term substitute(const Term& t, std::uint32_t var, const Term& value) {
    Rewriter rw;
    return rw.run(
        t, [&](const Term& leaf) { return leaf.kind() == TermKind::Var && leaf.index() == var ? value : leaf; },
        [](const Term& sub) { return sub.is_closed(); });
}

}  // namespace pcaforge
