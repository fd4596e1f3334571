#include "pcaforge/rset.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "hashing.hpp"
#include "pcaforge/reduce.hpp"
#include "pcaforge/stdlib.hpp"

namespace pcaforge {

struct RSet::Node {
    std::vector<RElement> elements;
    std::uint32_t rank = 0;
    std::uint64_t hash = 0;
};

struct LabeledRSet::Node {
    std::vector<LElement> elements;
    std::uint32_t rank = 0;
    std::uint64_t hash = 0;
};

namespace {

const std::uint64_t kEmptyHash = detail::mix(0x5e7);

int compare_element(const RElement& a, const RElement& b) {
    if (int c = compare(a.realizer, b.realizer)) {
        return c;
    }
    return compare(a.child, b.child);
}

int compare_element(const LElement& a, const LElement& b) {
    if (a.label != b.label) {
        return a.label < b.label ? -1 : 1;
    }
    if (int c = compare(a.realizer, b.realizer)) {
        return c;
    }
    return compare(a.child, b.child);
}

std::uint64_t element_hash(const RElement& e) { return detail::combine(e.realizer.hash(), e.child.hash()); }
std::uint64_t element_hash(const LElement& e) {
    return detail::combine(detail::combine(e.label + 1, e.realizer.hash()), e.child.hash());
}

template <class Node, class Elem>
std::shared_ptr<const Node> canonical(std::vector<Elem> elements) {
    if (elements.empty()) {
        return nullptr;
    }
    for (const auto& e : elements) {
        if (!e.realizer.is_normal()) {
            throw std::invalid_argument("realizers inside a set must be normal forms");
        }
    }
    std::sort(elements.begin(), elements.end(),
              [](const Elem& a, const Elem& b) { return compare_element(a, b) < 0; });
    elements.erase(std::unique(elements.begin(), elements.end(),
                               [](const Elem& a, const Elem& b) { return compare_element(a, b) == 0; }),
                   elements.end());
    auto node = std::make_shared<Node>();
    std::uint64_t h = kEmptyHash;
    for (const auto& e : elements) {
        node->rank = std::max(node->rank, e.child.rank() + 1);
        h = detail::combine(h, element_hash(e));
    }
    node->hash = detail::combine(h, elements.size());
    node->elements = std::move(elements);
    return node;
}

template <class Set>
int compare_sets(const Set& a, const Set& b) {
    if (a.identity() == b.identity()) {
        return 0;
    }
    if (a.hash() != b.hash()) {
        return a.hash() < b.hash() ? -1 : 1;
    }
    if (a.size() != b.size()) {
        return a.size() < b.size() ? -1 : 1;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (int c = compare_element(a.elements()[i], b.elements()[i])) {
            return c;
        }
    }
    return 0;
}

}  // namespace

RSet RSet::of(std::vector<RElement> elements) {
    RSet s;
    s.node_ = canonical<Node>(std::move(elements));
    return s;
}

const std::vector<RElement>& RSet::elements() const {
    static const std::vector<RElement> none;
    return node_ ? node_->elements : none;
}
std::size_t RSet::size() const { return node_ ? node_->elements.size() : 0; }
std::uint32_t RSet::rank() const { return node_ ? node_->rank : 0; }
std::uint64_t RSet::hash() const { return node_ ? node_->hash : kEmptyHash; }
bool operator==(const RSet& a, const RSet& b) { return compare_sets(a, b) == 0; }
int compare(const RSet& a, const RSet& b) { return compare_sets(a, b); }

LabeledRSet LabeledRSet::of(std::vector<LElement> elements) {
    for (const auto& e : elements) {
        if (e.label > 1) {
            throw std::invalid_argument("labels are 0 or 1, got " + std::to_string(e.label));
        }
    }
    LabeledRSet s;
    s.node_ = canonical<Node>(std::move(elements));
    return s;
}

const std::vector<LElement>& LabeledRSet::elements() const {
    static const std::vector<LElement> none;
    return node_ ? node_->elements : none;
}
std::size_t LabeledRSet::size() const { return node_ ? node_->elements.size() : 0; }
std::uint32_t LabeledRSet::rank() const { return node_ ? node_->rank : 0; }
std::uint64_t LabeledRSet::hash() const { return node_ ? node_->hash : kEmptyHash; }
bool operator==(const LabeledRSet& a, const LabeledRSet& b) { return compare_sets(a, b) == 0; }
int compare(const LabeledRSet& a, const LabeledRSet& b) { return compare_sets(a, b); }

RSet canonical_numeral(std::uint32_t n) {
    static std::mutex mu;
    static std::vector<RSet> cache{RSet{}};
    std::lock_guard lock(mu);
    while (cache.size() <= n) {
        auto m = static_cast<std::uint32_t>(cache.size());
        std::vector<RElement> elems;
        for (std::uint32_t i = 0; i < m; ++i) {
            elems.push_back({numeral(i), cache[i]});
        }
        cache.push_back(RSet::of(std::move(elems)));
    }
    return cache[n];
}

RSet omega_truncation(std::uint32_t n) {
    std::vector<RElement> elems;
    for (std::uint32_t i = 0; i < n; ++i) {
        elems.push_back({numeral(i), canonical_numeral(i)});
    }
    return RSet::of(std::move(elems));
}

RSet unordered_pair(const RSet& a, const RSet& b) { return RSet::of({{numeral(0), a}, {numeral(1), b}}); }
RSet ordered_pair(const RSet& a, const RSet& b) { return unordered_pair(unordered_pair(a, a), unordered_pair(a, b)); }

LabeledRSet unordered_pair(const LabeledRSet& a, const LabeledRSet& b) {
    return LabeledRSet::of({{0, numeral(0), a}, {0, numeral(1), b}});
}
LabeledRSet ordered_pair(const LabeledRSet& a, const LabeledRSet& b) {
    return unordered_pair(unordered_pair(a, a), unordered_pair(a, b));
}

RSet graph_rset(const Term& f, std::uint32_t bound, std::uint64_t cap) {
    std::vector<RElement> elems;
    for (std::uint32_t n = 0; n < bound; ++n) {
        auto o = red(Term::app(f, numeral(n)), cap);
        std::optional<std::uint32_t> v = o.reduced() ? numeral_value(o.value()) : std::nullopt;
        if (!v) {
            throw std::invalid_argument("graph: f " + std::to_string(n) + " is not a numeral within cap " +
                                        std::to_string(cap));
        }
        elems.push_back({numeral(n), ordered_pair(canonical_numeral(n), canonical_numeral(*v))});
    }
    return RSet::of(std::move(elems));
}

namespace {

// Structure-preserving maps, memoized on shared nodes.
template <class From, class To, class Fn>
class SetMap {
public:
    explicit SetMap(Fn fn) : fn_(std::move(fn)) {}

    To operator()(const From& a) {
        if (a.empty()) {
            return To{};
        }
        if (auto it = memo_.find(a.identity()); it != memo_.end()) {
            return it->second;
        }
        To out = fn_(a, *this);
        memo_.emplace(a.identity(), out);
        return out;
    }

private:
    Fn fn_;
    std::unordered_map<const void*, To> memo_;
};

template <class From, class To, class Fn>
To map_set(const From& a, Fn fn) {
    SetMap<From, To, Fn> m(std::move(fn));
    return m(a);
}

}  // namespace

RSet project(const LabeledRSet& a) {
    return map_set<LabeledRSet, RSet>(a, [](const LabeledRSet& s, auto& self) {
        std::vector<RElement> out;
        for (const auto& e : s.elements()) {
            out.push_back({e.realizer, self(e.child)});
        }
        return RSet::of(std::move(out));
    });
}

LabeledRSet label_zero(const RSet& a) {
    return map_set<RSet, LabeledRSet>(a, [](const RSet& s, auto& self) {
        std::vector<LElement> out;
        for (const auto& e : s.elements()) {
            out.push_back({0, e.realizer, self(e.child)});
        }
        return LabeledRSet::of(std::move(out));
    });
}

RSet apply_perm(const Perm& p, const RSet& a) {
    return map_set<RSet, RSet>(a, [&p](const RSet& s, auto& self) {
        std::vector<RElement> out;
        for (const auto& e : s.elements()) {
            out.push_back({apply_automorphism(p, e.realizer), self(e.child)});
        }
        return RSet::of(std::move(out));
    });
}

LabeledRSet lift_perm(const Perm& p, const LabeledRSet& a) {
    return map_set<LabeledRSet, LabeledRSet>(a, [&p](const LabeledRSet& s, auto& self) {
        std::vector<LElement> out;
        for (const auto& e : s.elements()) {
            out.push_back({e.label, apply_automorphism(p, e.realizer), self(e.child)});
        }
        return LabeledRSet::of(std::move(out));
    });
}

namespace {

template <class Set>
std::optional<AtomSet> support_of(const Set& a) {
    AtomSet acc;
    std::unordered_map<const void*, bool> seen;
    std::vector<Set> stack{a};
    while (!stack.empty()) {
        Set s = std::move(stack.back());
        stack.pop_back();
        if (s.empty() || !seen.emplace(s.identity(), true).second) {
            continue;
        }
        for (const auto& e : s.elements()) {
            if (e.realizer.has_oracle()) {
                return std::nullopt;
            }
            const auto& at = e.realizer.atoms();
            AtomSet merged;
            std::set_union(acc.begin(), acc.end(), at.begin(), at.end(), std::back_inserter(merged));
            acc = std::move(merged);
            stack.push_back(e.child);
        }
    }
    return acc;
}

}  // namespace

std::optional<AtomSet> support(const RSet& a) { return support_of(a); }
std::optional<AtomSet> support(const LabeledRSet& a) { return support_of(a); }

bool NormalFilterSpec::contains_fix(const AtomSet&) const { return true; }

bool NormalFilterSpec::fix_subgroup(const AtomSet& a, const AtomSet& b) {
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

AtomSet NormalFilterSpec::fix_intersection(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

AtomSet NormalFilterSpec::fix_conjugate(const Perm& g, const AtomSet& a) {
    AtomSet out;
    for (auto n : a) {
        out.push_back(g(n));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_partly_symmetric(const LabeledRSet& a, const NormalFilterSpec& gamma) {
    // A finite support E gives Fix(E) <= Stab(a); members hereditarily share it,
    // so the 0-labelled children are covered by the same check.
    auto sup = support(a);
    return sup && gamma.contains_fix(*sup);
}

bool is_completely_symmetric(const LabeledRSet& a) {
    if (!support(a)) {
        return false;
    }
    std::vector<LabeledRSet> stack{a};
    while (!stack.empty()) {
        LabeledRSet s = std::move(stack.back());
        stack.pop_back();
        for (const auto& e : s.elements()) {
            if (e.label != 0) {
                return false;
            }
            stack.push_back(e.child);
        }
    }
    return true;
}

bool is_injectively_presented(const RSet& a) {
    std::unordered_map<const void*, bool> checked;
    std::vector<RSet> stack{a};
    while (!stack.empty()) {
        RSet s = std::move(stack.back());
        stack.pop_back();
        if (s.empty() || !checked.emplace(s.identity(), true).second) {
            continue;
        }
        // Sorted by realizer first, so equal keys are adjacent.
        const auto& es = s.elements();
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (i + 1 < es.size() && es[i].realizer == es[i + 1].realizer) {
                return false;
            }
            stack.push_back(es[i].child);
        }
    }
    return true;
}

}  // namespace pcaforge
