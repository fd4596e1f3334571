#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcaforge/formula.hpp"
#include "pcaforge/realize.hpp"
#include "pcaforge/rset.hpp"
#include "pcaforge/syntax.hpp"
#include "pcaforge/term.hpp"

namespace pcaforge {

namespace sexpr {

struct Value {
    enum class Kind : std::uint8_t { Symbol, String, List };

    Kind kind = Kind::List;
    std::string text;
    std::vector<Value> items;
    /// Byte offset in the source, for diagnostics.
    std::size_t position = 0;

    bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
    /// A list whose head is the symbol s.
    bool is_form(std::string_view s) const { return kind == Kind::List && !items.empty() && items[0].is_symbol(s); }

    friend bool operator==(const Value& a, const Value& b) {
        return a.kind == b.kind && a.text == b.text && a.items == b.items;
    }
};

Value symbol(std::string s);
Value string(std::string s);
Value list(std::vector<Value> items);

/// Every top-level datum; ';' starts a line comment. Throws ParseError.
std::vector<Value> read_all(std::string_view text);
Value read_one(std::string_view text);

std::string print(const Value& v);

}  // namespace sexpr

sexpr::Value to_sexpr(const RSet& a);
sexpr::Value to_sexpr(const LabeledRSet& a);
sexpr::Value to_sexpr(const Verdict& v);
/// Inverse of to_sexpr(Verdict); throws ParseError on anything else.
Verdict verdict_from_sexpr(const sexpr::Value& v);

/// A parameter value: plain or labelled. Plain sets are read as all-0
/// labelled where a labelled set is needed, and labelled ones are projected
/// where a plain one is.
using SetValue = std::variant<RSet, LabeledRSet>;

RSet as_plain(const SetValue& v);
LabeledRSet as_labeled(const SetValue& v);

struct Query {
    enum class Kind : std::uint8_t { Check, Approx, IpLemma };

    Kind kind = Kind::Check;
    Term realizer = Term::s();
    Formula formula = Formula::eq(SetExpr::param(0), SetExpr::param(0));
    /// Approx only.
    std::vector<Term> candidates;
    std::vector<SetValue> universe;
    /// IpLemma only: a, b as parameter indices, f is the realizer, g the key.
    std::uint32_t a = 0, b = 0;
    Term key = Term::s();
    std::string source;
};

/// A parsed RSet/Formula file:
///   (define NAME SET)
///   (check "TERM" FORMULA)
///   (approx "TERM" FORMULA (candidates "T" ...) (universe SET ...))
///   (iplemma SET SET "F" "G")
/// SET is NAME, (rset (pair "T" SET) ...), (lrset (labeled 0|1 "T" SET) ...),
/// (numeral N), (omega N), (graph "T" BOUND) or (opair SET SET). Formulas:
/// (mem A B) (eq A B) (and F G) (or F G) (implies F G) (not F) (bex A F)
/// (ball A F) (ex F) (all F); %k is the k-th innermost bound variable.
struct Document {
    std::vector<std::string> names;
    /// Parameter values, indexed like names; unnamed literals get "_k".
    std::vector<SetValue> values;
    std::vector<Query> queries;

    std::vector<RSet> plain_params() const;
    std::vector<LabeledRSet> labeled_params() const;
};

/// Throws ParseError with a byte position on malformed input. `cap` bounds
/// graph construction.
Document read_document(std::string_view text, std::uint64_t cap);

}  // namespace pcaforge
