#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcaforge/syntax.hpp"
#include "pcaforge/term.hpp"

namespace pcaforge {

struct Reduced {
    Term value;
    /// Least n with RED_n defined.
    std::uint64_t stage;
};

enum class ExhaustReason : std::uint8_t {
    StageCap,
    /// The engine's work guard tripped before the stage cap was reached.
    StepLimit,
};

struct BudgetExhausted {
    std::uint64_t cap;
    ExhaustReason reason = ExhaustReason::StageCap;
};

class ReductionOutcome {
public:
    ReductionOutcome(Reduced r) : v_(std::move(r)) {}
    ReductionOutcome(BudgetExhausted b) : v_(b) {}

    bool reduced() const { return std::holds_alternative<Reduced>(v_); }
    explicit operator bool() const { return reduced(); }

    /// Throws std::logic_error when exhausted.
    const Term& value() const;
    std::uint64_t stage() const;
    const BudgetExhausted& exhausted() const;

    friend bool operator==(const ReductionOutcome& a, const ReductionOutcome& b);

private:
    std::variant<Reduced, BudgetExhausted> v_;
};

std::string to_string(const ReductionOutcome& o, PrintOptions options = {.fold_numerals = true});

enum class TraceTag : std::uint8_t { Red0Nf, Red0K, Red0Zeta, RednMono, RednS, RednApp, Exhausted };

const char* tag_name(TraceTag tag);

struct TraceEntry {
    TraceTag tag;
    Term redex;
    std::optional<Term> contractum;
};

std::string format_trace(const std::vector<TraceEntry>& trace, PrintOptions options = {.fold_numerals = true});

struct EngineConfig {
    /// Hard bound on evaluator work per red call, independent of the stage cap.
    std::uint64_t step_limit = 400'000'000;
    /// Reuse results for repeated subterms within one call. Stages are
    /// intrinsic to the term, so this never changes an outcome.
    bool memoize = true;
    /// Test-only mutation: K r s contracts to s.
    bool fault_k_rule = false;
};

/// A finite application tree whose leaves are normal forms.
class AppTree {
public:
    static AppTree leaf(Term value);
    static AppTree node(AppTree left, AppTree right);

    bool is_leaf() const { return !left_; }
    const Term& value() const { return value_; }
    const AppTree& left() const { return *left_; }
    const AppTree& right() const { return *right_; }

    /// The tree read as a single term.
    Term flatten() const;
    std::size_t depth() const;

private:
    Term value_ = Term::s();
    std::shared_ptr<const AppTree> left_;
    std::shared_ptr<const AppTree> right_;
};

class Engine {
public:
    Engine() = default;
    explicit Engine(EngineConfig config) : config_(config) {}

    const EngineConfig& config() const { return config_; }

    /// The least stage n <= cap at which RED_n is defined, with its value.
    ReductionOutcome red(const Term& t, std::uint64_t cap, std::vector<TraceEntry>* trace = nullptr) const;

    std::optional<Term> red_n(std::uint64_t n, const Term& t) const;

    /// red(s t); throws std::invalid_argument unless s and t are normal.
    ReductionOutcome apply(const Term& s, const Term& t, std::uint64_t cap) const;

    /// Denotation of an application tree. Every inner node is one pca
    /// application at `cap`; the reported stage is the largest one used.
    ReductionOutcome denote(const AppTree& tree, std::uint64_t cap) const;

    /// Evaluator steps spent by the most recent call on this thread.
    static std::uint64_t last_steps();

private:
    EngineConfig config_;
};

const Engine& default_engine();

inline ReductionOutcome red(const Term& t, std::uint64_t cap) { return default_engine().red(t, cap); }
inline std::optional<Term> red_n(std::uint64_t n, const Term& t) { return default_engine().red_n(n, t); }
inline ReductionOutcome pca_apply(const Term& s, const Term& t, std::uint64_t cap) {
    return default_engine().apply(s, t, cap);
}
inline ReductionOutcome denote(const AppTree& tree, std::uint64_t cap) { return default_engine().denote(tree, cap); }

std::vector<TraceEntry> trace(const Term& t, std::uint64_t cap);

}  // namespace pcaforge
