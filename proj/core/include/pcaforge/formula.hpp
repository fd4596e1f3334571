#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pcaforge {

/// A set-valued expression inside a formula: a parameter slot, a bound
/// variable (de Bruijn, 0 = innermost binder) or an internal ordered pair.
class SetExpr {
public:
    enum class Kind : std::uint8_t { Param, Bound, OPair };

    static SetExpr param(std::uint32_t index);
    static SetExpr bound(std::uint32_t depth);
    static SetExpr opair(SetExpr first, SetExpr second);

    Kind kind() const { return kind_; }
    std::uint32_t index() const { return index_; }
    const SetExpr& first() const { return (*children_)[0]; }
    const SetExpr& second() const { return (*children_)[1]; }

    /// One past the largest de Bruijn index occurring free.
    std::uint32_t free_depth() const;
    /// One past the largest parameter index used, 0 if none.
    std::uint32_t param_count() const;

    friend bool operator==(const SetExpr& a, const SetExpr& b);

private:
    Kind kind_ = Kind::Param;
    std::uint32_t index_ = 0;
    std::shared_ptr<const std::vector<SetExpr>> children_;
};

class Formula {
public:
    enum class Kind : std::uint8_t { Mem, Eq, And, Or, Implies, Not, BoundedExists, BoundedForall, Exists, Forall };

    static Formula mem(SetExpr a, SetExpr b);
    static Formula eq(SetExpr a, SetExpr b);
    static Formula conj(Formula l, Formula r);
    static Formula disj(Formula l, Formula r);
    static Formula implies(Formula l, Formula r);
    static Formula negate(Formula f);
    /// The body sees the bounded variable as SetExpr::bound(0).
    static Formula bex(SetExpr bound, Formula body);
    static Formula ball(SetExpr bound, Formula body);
    static Formula ex(Formula body);
    static Formula all(Formula body);

    Kind kind() const;
    /// Mem/Eq operands, or the bound of a bounded quantifier in lhs().
    const SetExpr& lhs() const;
    const SetExpr& rhs() const;
    /// Left operand, sole operand (Not), or quantifier body.
    const Formula& left() const;
    const Formula& right() const;

    /// Built from Mem, Eq, And, Or and bounded quantifiers only.
    bool is_decidable() const;
    std::uint32_t free_depth() const;
    std::uint32_t param_count() const;
    /// No bound variable escapes its binder.
    bool is_closed() const { return free_depth() == 0; }

    const void* identity() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);

    struct Node;

private:
    friend struct FormulaBuilder;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// S-expression text, parameters printed by name (p0, p1, ... when names run out).
std::string to_string(const SetExpr& e, const std::vector<std::string>& names = {});
std::string to_string(const Formula& f, const std::vector<std::string>& names = {});

}  // namespace pcaforge
