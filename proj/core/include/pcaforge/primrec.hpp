#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcaforge/term.hpp"

namespace pcaforge {

/// Primitive-recursive function descriptions, plus a finite case table.
///
/// PrimRec(base, step) recurses on its first argument:
///   h(0, xs) = base(xs), h(n+1, xs) = step(n, h(n, xs), xs).
class PRFun {
public:
    enum class Kind { Zero, Succ, Proj, Comp, PrimRec, BoundedCase };

    static PRFun zero(std::size_t arity = 0);
    static PRFun succ();
    /// Returns argument `index` (0-based) of `arity`.
    static PRFun proj(std::size_t arity, std::size_t index);
    static PRFun comp(PRFun outer, std::vector<PRFun> inners);
    static PRFun primrec(PRFun base, PRFun step);
    static PRFun bounded_case(std::map<std::uint64_t, std::uint64_t> table, std::uint64_t fallback);

    Kind kind() const { return kind_; }
    std::size_t arity() const { return arity_; }
    std::size_t index() const { return index_; }
    const std::vector<PRFun>& children() const { return *children_; }
    const std::map<std::uint64_t, std::uint64_t>& table() const { return *table_; }
    std::uint64_t fallback() const { return fallback_; }

private:
    PRFun() = default;

    Kind kind_ = Kind::Zero;
    std::size_t arity_ = 0;
    std::size_t index_ = 0;
    std::shared_ptr<const std::vector<PRFun>> children_;
    std::shared_ptr<const std::map<std::uint64_t, std::uint64_t>> table_;
    std::uint64_t fallback_ = 0;
};

/// Host evaluation; throws std::invalid_argument on an arity mismatch.
std::uint64_t evaluate(const PRFun& f, std::span<const std::uint64_t> args);

/// A closed S/K-only normal form F with F n1 ... nk = numeral f(n1..nk).
Term compile_primrec(const PRFun& f);

namespace prlib {

PRFun add();
PRFun mul();
PRFun pred();
/// max(x - y, 0)
PRFun monus();

}  // namespace prlib

}  // namespace pcaforge
