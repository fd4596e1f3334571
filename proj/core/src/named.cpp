#include "pcaforge/named.hpp"

#include "pcaforge/realize.hpp"
#include "pcaforge/stdlib.hpp"

namespace pcaforge {

namespace {

const std::vector<std::pair<std::string, Term>>& realizer_table() {
    static const std::vector<std::pair<std::string, Term>> table = [] {
        const auto& r = equality_realizers();
        return std::vector<std::pair<std::string, Term>>{
            {"ir", r.ir}, {"is", r.is}, {"it", r.it}, {"i0", r.i0}, {"i1", r.i1}, {"iplemma", iplemma_realizer()}};
    }();
    return table;
}

}  // namespace

std::optional<Term> lookup_named(std::string_view name) {
    if (auto t = stdlib::lookup(name)) {
        return t;
    }
    for (const auto& [n, t] : realizer_table()) {
        if (n == name) {
            return t;
        }
    }
    return std::nullopt;
}

std::vector<std::string> named_terms() {
    std::vector<std::string> out;
    for (const auto& [n, t] : stdlib::members()) {
        out.push_back(n);
    }
    for (const auto& [n, t] : realizer_table()) {
        out.push_back(n);
    }
    return out;
}

}  // namespace pcaforge
