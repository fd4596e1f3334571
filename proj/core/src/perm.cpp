#include "pcaforge/perm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hashing.hpp"

namespace pcaforge {

Perm Perm::from_pairs(std::vector<Pair> pairs) {
    std::map<std::uint32_t, std::uint32_t> forward;
    std::map<std::uint32_t, std::uint32_t> backward;
    for (const auto& [src, dst] : pairs) {
        if (src == 0 || dst == 0) {
            throw std::invalid_argument("perm indices must be positive");
        }
        if (!forward.emplace(src, dst).second) {
            throw std::invalid_argument("duplicate source " + std::to_string(src) + " in perm");
        }
        if (!backward.emplace(dst, src).second) {
            throw std::invalid_argument("duplicate target " + std::to_string(dst) + " in perm");
        }
    }

    // Close every open chain: a start has no preimage, an end has no image.
    std::vector<Pair> closing;
    for (const auto& [src, dst] : forward) {
        if (backward.count(src) != 0) {
            continue;
        }
        std::uint32_t end = dst;
        while (true) {
            auto it = forward.find(end);
            if (it == forward.end()) {
                break;
            }
            end = it->second;
        }
        closing.emplace_back(end, src);
    }
    for (const auto& pair : closing) {
        forward.insert(pair);
    }

    std::vector<Pair> canonical;
    for (const auto& [src, dst] : forward) {
        if (src != dst) {
            canonical.emplace_back(src, dst);
        }
    }
    return Perm(std::move(canonical));
}

Perm Perm::swap(std::uint32_t a, std::uint32_t b) {
    if (a == b) {
        return from_pairs({{a, a}});
    }
    return from_pairs({{a, b}, {b, a}});
}

Perm Perm::cycle(std::span<const std::uint32_t> points) {
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < points.size(); ++i) {
        pairs.emplace_back(points[i], points[(i + 1) % points.size()]);
    }
    return from_pairs(std::move(pairs));
}

std::uint32_t Perm::operator()(std::uint32_t n) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), n,
                               [](const Pair& p, std::uint32_t v) { return p.first < v; });
    if (it != pairs_.end() && it->first == n) {
        return it->second;
    }
    return n;
}

Perm Perm::inverse() const {
    std::vector<Pair> inv;
    inv.reserve(pairs_.size());
    for (const auto& [src, dst] : pairs_) {
        inv.emplace_back(dst, src);
    }
    std::sort(inv.begin(), inv.end());
    return Perm(std::move(inv));
}

std::vector<std::uint32_t> Perm::support() const {
    std::vector<std::uint32_t> out;
    out.reserve(pairs_.size());
    for (const auto& pair : pairs_) {
        out.push_back(pair.first);
    }
    return out;
}

std::uint64_t Perm::hash() const {
    std::uint64_t h = detail::mix(0x9e3779b97f4a7c15ULL);
    for (const auto& [src, dst] : pairs_) {
        h = detail::combine(h, (std::uint64_t{src} << 32) | dst);
    }
    return h;
}

Perm compose(const Perm& p, const Perm& q) {
    std::set<std::uint32_t> points;
    for (auto n : p.support()) {
        points.insert(n);
    }
    for (auto n : q.support()) {
        points.insert(n);
    }
    std::vector<Perm::Pair> pairs;
    for (auto n : points) {
        pairs.emplace_back(n, p(q(n)));
    }
    return Perm::from_pairs(std::move(pairs));
}

std::string to_string(const Perm& p) {
    std::string out = "[";
    bool first = true;
    for (const auto& [src, dst] : p.pairs()) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += std::to_string(src) + "->" + std::to_string(dst);
    }
    out += ']';
    return out;
}

}  // namespace pcaforge
