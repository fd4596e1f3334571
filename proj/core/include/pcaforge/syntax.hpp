#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcaforge/term.hpp"

namespace pcaforge {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("at " + std::to_string(position) + ": " + message), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Resolves "$name" tokens. Returning nullopt makes the name a parse error.
using NameResolver = std::function<std::optional<Term>(std::string_view)>;

/// Parses the term grammar. "I" expands to S K K and "#n" to numeral n;
/// "$name" goes through `names`, which defaults to the stdlib and the
/// equality realizers.
Term parse(std::string_view text, const NameResolver& names = {});

struct PrintOptions {
    /// Print numerals 1, 2, ... as #1, #2, ...
    bool fold_numerals = false;
};

std::string print(const Term& t, PrintOptions options = {});

}  // namespace pcaforge
