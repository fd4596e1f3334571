#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcaforge/formula.hpp"
#include "pcaforge/reduce.hpp"
#include "pcaforge/rset.hpp"

namespace pcaforge::suites {

enum class Tri : std::uint8_t { True, False, Undetermined };

/// Brute-force reading of the V(A) clauses, kept apart from the checker on
/// purpose: no memo tables, no short cuts, strong Kleene connectives written
/// out as the clauses are. Only the decidable fragment; anything else throws
/// std::invalid_argument.
class ClauseExpander {
public:
    ClauseExpander(std::uint64_t cap, const Engine& engine) : cap_(cap), engine_(engine) {}

    Tri realizes(const Term& e, const Formula& phi, std::span<const RSet> params) const;

private:
    Tri walk(const ReductionOutcome& e, const Formula& phi, std::span<const RSet> params,
             const std::vector<RSet>& env) const;
    Tri clause(const ReductionOutcome& e, const Formula& phi, std::span<const RSet> params,
             const std::vector<RSet>& env) const;
    Tri mem(const ReductionOutcome& e, const RSet& a, const RSet& b) const;
    Tri eq(const ReductionOutcome& e, const RSet& a, const RSet& b) const;
    ReductionOutcome app(const ReductionOutcome& f, const Term& x) const;
    ReductionOutcome part(const ReductionOutcome& e, int which) const;

    std::uint64_t cap_;
    const Engine& engine_;
};

}  // namespace pcaforge::suites
