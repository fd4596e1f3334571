#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcaforge/term.hpp"

namespace pcaforge {

/// Plain bracket abstraction: [x]x = S K K, [x]c = K c for any other leaf,
/// [x](M N) = S [x]M [x]N for every application.
Term bracket_abstract(std::uint32_t var, const Term& t);

/// [x1]...[xn]body, innermost variable last.
Term lambda(std::span<const std::uint32_t> vars, const Term& body);
inline Term lambda(std::initializer_list<std::uint32_t> vars, const Term& body) {
    return lambda(std::span<const std::uint32_t>(vars.begin(), vars.size()), body);
}

/// A normal form behaving as [vars]body with each constant variable bound to
/// its term. Constants are passed in by application and reduced away, so
/// large closed terms are not pushed through the abstraction algorithm.
Term define(std::span<const std::uint32_t> vars, const Term& body,
            std::span<const std::pair<std::uint32_t, Term>> constants);
Term define(std::initializer_list<std::uint32_t> vars, const Term& body,
            std::initializer_list<std::pair<std::uint32_t, Term>> constants);

/// red at a generous internal budget; throws std::runtime_error on exhaustion.
Term normalize(const Term& t);

Term numeral(std::uint32_t n);
std::optional<std::uint32_t> numeral_value(const Term& t);

/// A closed normal term C with C n = table[n] for keys of the table and
/// C n = fallback for every other numeral n. Values must be normal.
Term numeral_case(const std::map<std::uint32_t, Term>& table, const Term& fallback);

namespace stdlib {

Term identity();
Term tru();
Term fls();
Term pair();
Term p0();
Term p1();
Term y();
Term yp();
Term succ();
Term pred();
Term iszero();
Term eqnat();

/// Named members: I, true, false, p, p0, p1, y, yp, succ, pred, iszero, eqnat.
const std::vector<std::pair<std::string, Term>>& members();
std::optional<Term> lookup(std::string_view name);

/// (e)_0 and (e)_1 as unreduced applications.
inline Term proj0(Term e) { return Term::app(p0(), std::move(e)); }
inline Term proj1(Term e) { return Term::app(p1(), std::move(e)); }
inline Term mkpair(Term a, Term b) { return ap(pair(), std::move(a), std::move(b)); }

}  // namespace stdlib

}  // namespace pcaforge
