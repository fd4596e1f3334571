#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pcaforge/perm.hpp"
#include "pcaforge/term.hpp"

namespace pcaforge {

struct RElement;
struct LElement;

/// A hereditarily finite realizability set: a finite set of (realizer, child)
/// pairs. Elements are kept sorted and duplicate-free, so == is set equality.
class RSet {
public:
    RSet() = default;
    /// Throws std::invalid_argument if a realizer is not a normal form.
    static RSet of(std::vector<RElement> elements);

    const std::vector<RElement>& elements() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::uint32_t rank() const;
    std::uint64_t hash() const;
    const void* identity() const { return node_.get(); }

    friend bool operator==(const RSet& a, const RSet& b);
    friend bool operator!=(const RSet& a, const RSet& b) { return !(a == b); }

    struct Node;

private:
    std::shared_ptr<const Node> node_;
};

struct RElement {
    Term realizer;
    RSet child;
};

/// An element of V_1: every member also carries a label 0 or 1.
class LabeledRSet {
public:
    LabeledRSet() = default;
    /// Throws std::invalid_argument on a label other than 0/1 or a non-normal realizer.
    static LabeledRSet of(std::vector<LElement> elements);

    const std::vector<LElement>& elements() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::uint32_t rank() const;
    std::uint64_t hash() const;
    const void* identity() const { return node_.get(); }

    friend bool operator==(const LabeledRSet& a, const LabeledRSet& b);
    friend bool operator!=(const LabeledRSet& a, const LabeledRSet& b) { return !(a == b); }

    struct Node;

private:
    std::shared_ptr<const Node> node_;
};

struct LElement {
    std::uint8_t label;
    Term realizer;
    LabeledRSet child;
};

int compare(const RSet& a, const RSet& b);
int compare(const LabeledRSet& a, const LabeledRSet& b);

struct RSetLess {
    bool operator()(const RSet& a, const RSet& b) const { return compare(a, b) < 0; }
};
struct RSetHash {
    std::size_t operator()(const RSet& a) const { return static_cast<std::size_t>(a.hash()); }
};
struct LabeledRSetHash {
    std::size_t operator()(const LabeledRSet& a) const { return static_cast<std::size_t>(a.hash()); }
};

inline std::uint32_t rank(const RSet& a) { return a.rank(); }
inline std::uint32_t rank(const LabeledRSet& a) { return a.rank(); }

/// n-bar = {<m, m-bar> : m < n}
RSet canonical_numeral(std::uint32_t n);
/// omega-bar cut to indices below n.
RSet omega_truncation(std::uint32_t n);

/// {<0, a>, <1, b>}
RSet unordered_pair(const RSet& a, const RSet& b);
/// (a, b) = {{a, a}, {a, b}} built from unordered_pair.
RSet ordered_pair(const RSet& a, const RSet& b);
LabeledRSet unordered_pair(const LabeledRSet& a, const LabeledRSet& b);
LabeledRSet ordered_pair(const LabeledRSet& a, const LabeledRSet& b);

/// f-bar cut to n < bound: {<n, (n-bar, (f n)-bar)>}. Throws
/// std::invalid_argument if some f n is not a numeral within cap.
RSet graph_rset(const Term& f, std::uint32_t bound, std::uint64_t cap);

/// The label-forgetting map.
RSet project(const LabeledRSet& a);
/// Every member labelled 0, hereditarily.
LabeledRSet label_zero(const RSet& a);

RSet apply_perm(const Perm& p, const RSet& a);
LabeledRSet lift_perm(const Perm& p, const LabeledRSet& a);

/// Atoms occurring hereditarily in realizers. Empty optional when an oracle
/// constant occurs: no nontrivial automorphism fixes z[F], so such a set has
/// no finite support.
std::optional<AtomSet> support(const RSet& a);
std::optional<AtomSet> support(const LabeledRSet& a);

/// Gamma generated by the stabilizers of single atoms, represented through
/// pointwise stabilizers Fix(E) of finite atom sets E.
class NormalFilterSpec {
public:
    explicit NormalFilterSpec(std::uint32_t generator_bound = 0) : bound_(generator_bound) {}

    std::uint32_t generator_bound() const { return bound_; }
    /// Fix(E) is in Gamma for every finite E (closure under conjugation
    /// reaches every atom whatever the generator bound).
    bool contains_fix(const AtomSet& e) const;
    /// Fix(a) is a subgroup of Fix(b) iff b is contained in a.
    static bool fix_subgroup(const AtomSet& a, const AtomSet& b);
    /// Fix(a) intersected with Fix(b) = Fix(a u b)
    static AtomSet fix_intersection(const AtomSet& a, const AtomSet& b);
    /// g Fix(a) g^-1 = Fix(g(a))
    static AtomSet fix_conjugate(const Perm& g, const AtomSet& a);

private:
    std::uint32_t bound_;
};

bool is_partly_symmetric(const LabeledRSet& a, const NormalFilterSpec& gamma);
bool is_completely_symmetric(const LabeledRSet& a);

/// No two members share a realizer with different children, hereditarily.
bool is_injectively_presented(const RSet& a);
inline bool validate_injectively_presented(const RSet& a) { return is_injectively_presented(a); }

}  // namespace pcaforge
