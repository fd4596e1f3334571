#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcaforge/term.hpp"

namespace pcaforge {

/// Every closed term addressable as "$name": the stdlib members plus the
/// equality realizers ir, is, it, i0, i1 and the injective-presentation
/// realizer iplemma.
std::optional<Term> lookup_named(std::string_view name);

std::vector<std::string> named_terms();

}  // namespace pcaforge
