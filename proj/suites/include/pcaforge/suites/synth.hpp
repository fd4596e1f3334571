#pragma once

#include <optional>
#include <span>
#include <utility>

#include "pcaforge/rset.hpp"
#include "pcaforge/term.hpp"

namespace pcaforge::suites {

/// Searches for one term realizing every a_i = b_i at once. Keys must be
/// numerals: each side of the realizer is a numeral_case table from keys to
/// membership witnesses, and shared keys force shared witnesses, which is
/// where the backtracking comes in. Results are unchecked; callers verify
/// with the checker before relying on them.
std::optional<Term> synth_eq(std::span<const std::pair<RSet, RSet>> targets);
std::optional<Term> synth_eq(const RSet& a, const RSet& b);

/// One term realizing every c_i in b_i.
std::optional<Term> synth_mem(std::span<const std::pair<RSet, RSet>> targets);

}  // namespace pcaforge::suites
