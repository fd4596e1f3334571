#include "pcaforge/suites/synth.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "pcaforge/stdlib.hpp"

namespace pcaforge::suites {

namespace {

using Targets = std::vector<std::pair<RSet, RSet>>;

// Bounds the search so adversarial inputs cannot stall a suite.
constexpr std::size_t kMaxCombos = 256;

struct TargetsLess {
    bool operator()(const Targets& x, const Targets& y) const {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const auto& l, const auto& r) {
            int c = compare(l.first, r.first);
            return c != 0 ? c < 0 : compare(l.second, r.second) < 0;
        });
    }
};

struct Search {
    // Failed combinations tried so far, across the whole search.
    std::size_t spent = 0;
    std::map<Targets, std::optional<Term>, TargetsLess> memo;

    std::optional<Term> eq(Targets t) {
        dedup(t);
        if (auto it = memo.find(t); it != memo.end()) {
            return it->second;
        }
        auto out = eq_body(t);
        memo.emplace(std::move(t), out);
        return out;
    }

    std::optional<Term> eq_body(const Targets& t) {
        auto side = [&](bool forward) -> std::optional<Term> {
            std::map<std::uint32_t, Targets> by_key;
            for (const auto& [a, b] : t) {
                const RSet& from = forward ? a : b;
                const RSet& to = forward ? b : a;
                for (const auto& el : from.elements()) {
                    auto k = numeral_value(el.realizer);
                    if (!k) {
                        return std::nullopt;
                    }
                    by_key[*k].push_back({el.child, to});
                }
            }
            std::map<std::uint32_t, Term> table;
            for (auto& [k, sub] : by_key) {
                auto r = mem(sub);
                if (!r) {
                    return std::nullopt;
                }
                table.emplace(k, *r);
            }
            return table.empty() ? stdlib::identity() : numeral_case(table, stdlib::identity());
        };
        auto e0 = side(true);
        if (!e0) {
            return std::nullopt;
        }
        auto e1 = side(false);
        if (!e1) {
            return std::nullopt;
        }
        return normalize(stdlib::mkpair(*e0, *e1));
    }

    std::optional<Term> mem(Targets t) {
        dedup(t);
        // Keys present in every b_i.
        std::optional<std::set<std::uint32_t>> common;
        for (const auto& [c, b] : t) {
            std::set<std::uint32_t> keys;
            for (const auto& el : b.elements()) {
                if (auto k = numeral_value(el.realizer)) {
                    keys.insert(*k);
                }
            }
            if (!common) {
                common = keys;
            } else {
                std::set<std::uint32_t> both;
                std::set_intersection(common->begin(), common->end(), keys.begin(), keys.end(),
                                      std::inserter(both, both.begin()));
                common = both;
            }
        }
        if (!common) {
            return std::nullopt;
        }
        for (std::uint32_t k : *common) {
            std::vector<std::vector<RSet>> options;
            for (const auto& [c, b] : t) {
                std::vector<RSet> opts;
                for (const auto& el : b.elements()) {
                    if (el.realizer == numeral(k) && rank(el.child) == rank(c)) {
                        opts.push_back(el.child);
                    }
                }
                options.push_back(std::move(opts));
            }
            std::vector<std::size_t> pick(t.size(), 0);
            if (std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); })) {
                continue;
            }
            while (true) {
                Targets sub;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    sub.push_back({t[i].first, options[i][pick[i]]});
                }
                if (auto r = eq(sub)) {
                    return normalize(stdlib::mkpair(numeral(k), *r));
                }
                if (++spent > kMaxCombos) {
                    return std::nullopt;
                }
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == options[i].size()) {
                    pick[i++] = 0;
                }
                if (i == pick.size()) {
                    break;
                }
            }
        }
        return std::nullopt;
    }

    static void dedup(Targets& t) {
        std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) {
            int c = compare(x.first, y.first);
            return c != 0 ? c < 0 : compare(x.second, y.second) < 0;
        });
        t.erase(std::unique(t.begin(), t.end()), t.end());
    }
};

}  // namespace

std::optional<Term> synth_eq(std::span<const std::pair<RSet, RSet>> targets) {
    return Search{}.eq(Targets(targets.begin(), targets.end()));
}

std::optional<Term> synth_eq(const RSet& a, const RSet& b) {
    const std::pair<RSet, RSet> one[] = {{a, b}};
    return synth_eq(one);
}

std::optional<Term> synth_mem(std::span<const std::pair<RSet, RSet>> targets) {
    return Search{}.mem(Targets(targets.begin(), targets.end()));
}

}  // namespace pcaforge::suites
