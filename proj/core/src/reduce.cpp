#include "pcaforge/reduce.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "pcaforge/stdlib.hpp"

namespace pcaforge {

const Term& ReductionOutcome::value() const {
    if (!reduced()) {
        throw std::logic_error("reduction exhausted its budget");
    }
    return std::get<Reduced>(v_).value;
}

std::uint64_t ReductionOutcome::stage() const {
    if (!reduced()) {
        throw std::logic_error("reduction exhausted its budget");
    }
    return std::get<Reduced>(v_).stage;
}

const BudgetExhausted& ReductionOutcome::exhausted() const {
    if (reduced()) {
        throw std::logic_error("reduction succeeded");
    }
    return std::get<BudgetExhausted>(v_);
}

bool operator==(const ReductionOutcome& a, const ReductionOutcome& b) {
    if (a.reduced() != b.reduced()) {
        return false;
    }
    if (a.reduced()) {
        return a.stage() == b.stage() && a.value() == b.value();
    }
    return a.exhausted().cap == b.exhausted().cap && a.exhausted().reason == b.exhausted().reason;
}

std::string to_string(const ReductionOutcome& o, PrintOptions options) {
    if (o.reduced()) {
        return print(o.value(), options);
    }
    const auto& b = o.exhausted();
    std::string out = "BUDGET-EXHAUSTED(" + std::to_string(b.cap);
    if (b.reason == ExhaustReason::StepLimit) {
        out += ", step-limit";
    }
    return out + ")";
}

const char* tag_name(TraceTag tag) {
    switch (tag) {
        case TraceTag::Red0Nf:
            return "RED0-NF";
        case TraceTag::Red0K:
            return "RED0-K";
        case TraceTag::Red0Zeta:
            return "RED0-ZETA";
        case TraceTag::RednMono:
            return "REDn-MONO";
        case TraceTag::RednS:
            return "REDn-S";
        case TraceTag::RednApp:
            return "REDn-APP";
        case TraceTag::Exhausted:
            return "BUDGET-EXHAUSTED";
    }
    return "?";
}

std::string format_trace(const std::vector<TraceEntry>& trace, PrintOptions options) {
    std::string out;
    for (const auto& e : trace) {
        out += tag_name(e.tag);
        out += " | ";
        out += print(e.redex, options);
        if (e.contractum) {
            out += " -> ";
            out += print(*e.contractum, options);
        }
        out += '\n';
    }
    return out;
}

AppTree AppTree::leaf(Term value) {
    AppTree t;
    t.value_ = std::move(value);
    return t;
}

AppTree AppTree::node(AppTree left, AppTree right) {
    AppTree t;
    t.left_ = std::make_shared<const AppTree>(std::move(left));
    t.right_ = std::make_shared<const AppTree>(std::move(right));
    return t;
}

Term AppTree::flatten() const {
    if (is_leaf()) {
        return value_;
    }
    return Term::app(left_->flatten(), right_->flatten());
}

std::size_t AppTree::depth() const {
    if (is_leaf()) {
        return 0;
    }
    return 1 + std::max(left_->depth(), right_->depth());
}

namespace {

thread_local std::uint64_t g_last_steps = 0;

struct Base {
    Term value;
    TraceTag tag;
};

// The RED_0 clauses.
std::optional<Base> base_case(const Term& t, bool fault_k) {
    if (t.is_normal()) {
        return Base{t, TraceTag::Red0Nf};
    }
    const Term& l = t.left();
    const Term& r = t.right();
    if (l.kind() == TermKind::Oracle && r.is_normal() && r.is_closed()) {
        std::uint32_t best = 0;
        const Perm& f = l.perm();
        for (auto m : r.atoms()) {
            best = std::max(best, f(m));
        }
        return Base{numeral(best), TraceTag::Red0Zeta};
    }
    if (l.is_app() && l.left().kind() == TermKind::K && l.right().is_normal() && r.is_normal()) {
        return Base{fault_k ? r : l.right(), TraceTag::Red0K};
    }
    return std::nullopt;
}

bool is_s_redex(const Term& t) {
    if (!t.is_app() || !t.left().is_app()) {
        return false;
    }
    const Term& sr = t.left().left();
    return sr.is_app() && sr.left().kind() == TermKind::S && sr.right().is_normal() && t.left().right().is_normal() &&
           t.right().is_normal();
}

enum class Rule : std::uint8_t { S, App };

struct Frame {
    Term term;
    std::uint64_t budget;
    std::uint8_t phase = 0;
    Rule rule = Rule::App;
    Term a{Term::s()};
    std::uint64_t max_stage = 0;
    std::size_t trace_index = 0;
};

}  // namespace

std::uint64_t Engine::last_steps() { return g_last_steps; }

ReductionOutcome Engine::red(const Term& root, std::uint64_t cap, std::vector<TraceEntry>* trace) const {
    std::unordered_map<Term, Reduced, TermHash> memo;
    const bool use_memo = config_.memoize && trace == nullptr;

    std::vector<Frame> stack;
    stack.push_back(Frame{root, cap});
    Term ret = root;
    std::uint64_t ret_stage = 0;
    std::uint64_t steps = 0;

    auto give_up = [&](const Term& at, ExhaustReason reason) {
        if (trace) {
            trace->push_back({TraceTag::Exhausted, at, std::nullopt});
        }
        g_last_steps = steps;
        return ReductionOutcome(BudgetExhausted{cap, reason});
    };

    while (!stack.empty()) {
        Frame& f = stack.back();
        switch (f.phase) {
            case 0: {
                if (++steps > config_.step_limit) {
                    return give_up(f.term, ExhaustReason::StepLimit);
                }
                if (auto base = base_case(f.term, config_.fault_k_rule)) {
                    if (trace) {
                        trace->push_back({base->tag, f.term, base->value});
                    }
                    ret = std::move(base->value);
                    ret_stage = 0;
                    stack.pop_back();
                    continue;
                }
                if (use_memo) {
                    auto it = memo.find(f.term);
                    if (it != memo.end()) {
                        if (it->second.stage > f.budget) {
                            return give_up(f.term, ExhaustReason::StageCap);
                        }
                        ret = it->second.value;
                        ret_stage = it->second.stage;
                        stack.pop_back();
                        continue;
                    }
                }
                if (f.budget == 0) {
                    return give_up(f.term, ExhaustReason::StageCap);
                }
                f.phase = 1;
                Term first{Term::s()};
                if (is_s_redex(f.term)) {
                    f.rule = Rule::S;
                    const Term& r = f.term.left().left().right();
                    const Term& s = f.term.left().right();
                    const Term& u = f.term.right();
                    first = Term::app(r, u);
                    if (trace) {
                        trace->push_back({TraceTag::RednS, f.term, Term::app(first, Term::app(s, u))});
                    }
                } else {
                    f.rule = Rule::App;
                    first = f.term.left();
                    if (trace) {
                        f.trace_index = trace->size();
                        trace->push_back({TraceTag::RednApp, f.term, std::nullopt});
                    }
                }
                std::uint64_t child_budget = f.budget - 1;
                stack.push_back(Frame{std::move(first), child_budget});
                break;
            }
            case 1: {
                f.a = ret;
                f.max_stage = ret_stage;
                f.phase = 2;
                Term second = f.rule == Rule::S ? Term::app(f.term.left().right(), f.term.right()) : f.term.right();
                std::uint64_t child_budget = f.budget - 1;
                stack.push_back(Frame{std::move(second), child_budget});
                break;
            }
            case 2: {
                f.max_stage = std::max(f.max_stage, ret_stage);
                f.phase = 3;
                Term combined = Term::app(f.a, ret);
                if (trace && f.rule == Rule::App) {
                    (*trace)[f.trace_index].contractum = combined;
                }
                std::uint64_t child_budget = f.budget - 1;
                stack.push_back(Frame{std::move(combined), child_budget});
                break;
            }
            default: {
                ret_stage = std::max(f.max_stage, ret_stage) + 1;
                if (use_memo) {
                    memo.emplace(f.term, Reduced{ret, ret_stage});
                }
                stack.pop_back();
                break;
            }
        }
    }
    g_last_steps = steps;
    return Reduced{ret, ret_stage};
}

std::optional<Term> Engine::red_n(std::uint64_t n, const Term& t) const {
    auto o = red(t, n);
    if (!o.reduced()) {
        return std::nullopt;
    }
    return o.value();
}

ReductionOutcome Engine::apply(const Term& s, const Term& t, std::uint64_t cap) const {
    if (!s.is_normal() || !t.is_normal()) {
        throw std::invalid_argument("pca application needs normal arguments");
    }
    return red(Term::app(s, t), cap);
}

ReductionOutcome Engine::denote(const AppTree& tree, std::uint64_t cap) const {
    if (tree.is_leaf()) {
        if (!tree.value().is_normal()) {
            throw std::invalid_argument("application tree leaf is not normal");
        }
        return Reduced{tree.value(), 0};
    }
    auto l = denote(tree.left(), cap);
    if (!l.reduced()) {
        return l;
    }
    auto r = denote(tree.right(), cap);
    if (!r.reduced()) {
        return r;
    }
    auto v = apply(l.value(), r.value(), cap);
    if (!v.reduced()) {
        return v;
    }
    return Reduced{v.value(), std::max({l.stage(), r.stage(), v.stage()})};
}

const Engine& default_engine() {
    static const Engine engine;
    return engine;
}

std::vector<TraceEntry> trace(const Term& t, std::uint64_t cap) {
    std::vector<TraceEntry> out;
    default_engine().red(t, cap, &out);
    return out;
}

}  // namespace pcaforge
