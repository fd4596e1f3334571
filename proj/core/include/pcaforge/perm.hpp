#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pcaforge {

/// A bijection of the positive naturals that moves only finitely many points.
///
/// Stored canonically: pairs sorted by source, fixed points dropped. Two perms
/// are equal exactly when their pair lists are equal.
class Perm {
public:
    using Pair = std::pair<std::uint32_t, std::uint32_t>;

    Perm() = default;

    /// Builds a perm from an injective listing of (source, target) pairs.
    ///
    /// A listing that is injective but not closed under the map, such as
    /// [5->6], is completed by sending the end of every open chain back to
    /// its start, so [5->6] becomes the transposition of 5 and 6. Throws
    /// std::invalid_argument on a zero index, a duplicate source, or a
    /// duplicate target.
    static Perm from_pairs(std::vector<Pair> pairs);

    static Perm swap(std::uint32_t a, std::uint32_t b);

    /// The cycle c0 -> c1 -> ... -> c0.
    static Perm cycle(std::span<const std::uint32_t> points);

    std::uint32_t operator()(std::uint32_t n) const;

    Perm inverse() const;

    bool is_identity() const { return pairs_.empty(); }
    std::span<const Pair> pairs() const { return pairs_; }

    /// Points moved by the perm, ascending.
    std::vector<std::uint32_t> support() const;

    std::uint64_t hash() const;

    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;

private:
    explicit Perm(std::vector<Pair> canonical) : pairs_(std::move(canonical)) {}

    std::vector<Pair> pairs_;
};

/// p after q: x maps to p(q(x)).
Perm compose(const Perm& p, const Perm& q);

/// "[1->2,2->1]"; "[]" for the identity.
std::string to_string(const Perm& p);

}  // namespace pcaforge
