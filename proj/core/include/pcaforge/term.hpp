#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pcaforge/perm.hpp"

namespace pcaforge {

enum class TermKind : std::uint8_t { S, K, Var, Atom, Oracle, App };

/// Sorted, duplicate-free list of atom indices.
using AtomSet = std::vector<std::uint32_t>;

class TermNode;

/// An immutable combinatory term: S, K, variables x_i, atoms a_i (i >= 1),
/// oracle constants z[F] and binary application.
///
/// Terms are shared handles; copying is cheap. Structural facts that the
/// reduction engine consults on every step (normality, closedness, atom
/// content, hash) are computed once at construction.
class Term {
public:
    static Term s();
    static Term k();
    static Term var(std::uint32_t index);
    /// Throws std::invalid_argument for index 0.
    static Term atom(std::uint32_t index);
    static Term oracle(Perm perm);
    static Term app(Term left, Term right);

    TermKind kind() const;
    bool is_app() const { return kind() == TermKind::App; }

    /// Index of a Var or Atom.
    std::uint32_t index() const;
    /// Perm of an Oracle.
    const Perm& perm() const;
    const Term& left() const;
    const Term& right() const;

    /// No subterm is a K-redex, an S-redex, or an oracle applied to a closed normal term.
    bool is_normal() const;
    bool is_closed() const;
    /// True when some oracle constant occurs.
    bool has_oracle() const;
    /// Node count of the term read as a tree; saturates at UINT64_MAX.
    std::uint64_t size() const;
    std::uint64_t hash() const;
    const AtomSet& atoms() const;

    const TermNode* node() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    friend class TermNode;
    explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

    std::shared_ptr<const TermNode> node_;
};

/// Total order consistent with ==; hash-major, so not alphabetical.
int compare(const Term& a, const Term& b);

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return static_cast<std::size_t>(t.hash()); }
};

/// Left-associative application of f to each argument in turn.
Term apply_all(Term f, std::span<const Term> args);

template <class... Args>
Term ap(Term f, Args... args) {
    const Term list[] = {std::move(args)...};
    return apply_all(std::move(f), list);
}

AtomSet atoms_of(const Term& t);

/// Every point moved by some oracle perm in t.
AtomSet oracle_support(const Term& t);

bool mentions_oracle(const Term& t, const Perm& perm);

/// The automorphism induced by p: a_n -> a_p(n), z[F] -> z[F . p^-1], S, K
/// and variables fixed, application preserved.
Term apply_automorphism(const Perm& p, const Term& t);

/// Replaces every occurrence of x_var by value.
Term substitute(const Term& t, std::uint32_t var, const Term& value);

bool contains_var(const Term& t, std::uint32_t var);

}  // namespace pcaforge
