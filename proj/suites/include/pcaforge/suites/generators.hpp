#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pcaforge/formula.hpp"
#include "pcaforge/perm.hpp"
#include "pcaforge/reduce.hpp"
#include "pcaforge/rset.hpp"
#include "pcaforge/term.hpp"

namespace pcaforge::suites {

struct TermShape {
    int depth = 6;
    /// Atoms a_1..a_max_atom; 0 disables.
    std::uint32_t max_atom = 0;
    /// Variables x_0..x_{vars-1}.
    std::uint32_t vars = 0;
    bool oracles = false;
    /// Adds S I I as a leaf, so self-application loops turn up.
    bool loops = false;
};

struct SetShape {
    std::uint32_t max_rank = 3;
    std::uint32_t max_width = 3;
    /// Keys are numerals below this bound.
    std::uint32_t keys = 4;
    /// Chance that a key is a non-numeral normal form instead.
    double odd_key = 0.0;
    /// Distinct keys on every level, so the result is injectively presented.
    bool injective = false;
};

/// Seeded source of random terms, perms, sets and formulas. Same seed, same
/// stream.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }
    std::uint64_t below(std::uint64_t n);
    bool chance(double p);
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    Term term(const TermShape& shape);
    /// A random term reduced at `cap`; retries until one reduces.
    Term normal(const TermShape& shape, const Engine& engine, std::uint64_t cap = 200);
    /// Moves points among 1..max_point.
    Perm perm(std::uint32_t max_point);
    AppTree app_tree(int depth, const std::vector<Term>& pool);

    RSet rset(const SetShape& shape);
    RSet rset_of_rank(const SetShape& shape, std::uint32_t rank);
    LabeledRSet lrset(const SetShape& shape, double one_label, std::uint32_t max_atom = 0);
    /// A set that a realizer can prove equal to a: keys renamed, members
    /// duplicated under fresh keys, children replaced by variants of their own.
    RSet variant(const RSet& a, std::uint32_t keys);

    /// Decidable-fragment formula over params 0..params-1.
    Formula formula(std::uint32_t params, int depth, bool allow_opair = false);

    /// A realizer whose shape follows phi (pairs, numeral tags, constant
    /// functions), so random checks land on both verdicts.
    Term shaped_realizer(const Formula& phi, std::uint32_t keys, const Engine& engine);

private:
    Term leaf(const TermShape& shape);
    SetExpr operand(std::uint32_t params, std::uint32_t depth, bool allow_opair);
    Term shaped(const Formula& phi, std::uint32_t keys, int budget);
    Term shaped_eq(std::uint32_t keys, int budget);
    Term key(const SetShape& shape);

    std::mt19937_64 rng_;
};

}  // namespace pcaforge::suites
