#include "pcaforge/gadgets.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

namespace pcaforge {

HaltingProfile HaltingProfile::halts_at(std::uint64_t k) {
    HaltingProfile p;
    p.name_ = "halts@" + std::to_string(k);
    p.halt_stage_ = k;
    return p;
}

HaltingProfile HaltingProfile::never() {
    HaltingProfile p;
    p.name_ = "never";
    return p;
}

HaltingProfile HaltingProfile::from_function(Predicate halts_by, std::uint64_t horizon, std::string name,
                                             std::uint64_t m) {
    bool seen = false;
    for (std::uint64_t k = 0; k < horizon; ++k) {
        bool h = halts_by(m, k);
        if (seen && !h) {
            throw std::invalid_argument("profile " + name + " is not monotone at stage " + std::to_string(k));
        }
        seen = seen || h;
    }
    HaltingProfile p;
    p.name_ = std::move(name);
    p.predicate_ = std::move(halts_by);
    p.horizon_ = horizon;
    p.predicate_m_ = m;
    return p;
}

HaltingProfile HaltingProfile::parse(std::string_view spec) {
    if (spec == "never") {
        return never();
    }
    constexpr std::string_view prefix = "halts@";
    if (spec.substr(0, prefix.size()) == prefix) {
        auto digits = spec.substr(prefix.size());
        std::uint64_t k = 0;
        auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (!digits.empty() && ec == std::errc{} && end == digits.data() + digits.size()) {
            return halts_at(k);
        }
    }
    throw std::invalid_argument("profile must be 'halts@K' or 'never', got '" + std::string(spec) + "'");
}

bool HaltingProfile::halts_by(std::uint64_t m, std::uint64_t k) const {
    if (predicate_) {
        if (k >= *horizon_) {
            throw std::out_of_range("profile " + name_ + " is only known below stage " + std::to_string(*horizon_));
        }
        return predicate_(m, k);
    }
    return halt_stage_ && k >= *halt_stage_;
}

std::optional<std::uint64_t> HaltingProfile::halting_stage(std::uint64_t m) const {
    if (!predicate_) {
        return halt_stage_;
    }
    for (std::uint64_t k = 0; k < *horizon_; ++k) {
        if (predicate_(m, k)) {
            return k;
        }
    }
    return std::nullopt;
}

PRFun HaltingProfile::indicator(std::uint64_t m) const {
    std::map<std::uint64_t, std::uint64_t> table;
    if (predicate_) {
        if (m != predicate_m_) {
            throw std::invalid_argument("profile " + name_ + " was validated for machine " +
                                        std::to_string(predicate_m_));
        }
        for (std::uint64_t k = 0; k < *horizon_; ++k) {
            if (predicate_(m, k)) {
                table.emplace(k, 1);
            }
        }
        return PRFun::bounded_case(std::move(table), 0);
    }
    if (!halt_stage_) {
        return PRFun::bounded_case({}, 0);
    }
    for (std::uint64_t k = 0; k < *halt_stage_; ++k) {
        table.emplace(k, 0);
    }
    return PRFun::bounded_case(std::move(table), 1);
}

namespace {

Term x(std::uint32_t i) { return Term::var(i); }

}  // namespace

Gadgets::Gadgets(HaltingProfile profile, std::uint64_t m)
    : profile_(std::move(profile)), m_(m), hb_(compile_primrec(profile_.indicator(m))), g_(hb_), u_(hb_), v_(hb_),
      t_(hb_) {
    const Term hb = x(100), z = x(101), i = x(102), sc = x(103);
    const Term kk0 = ap(Term::k(), Term::app(Term::k(), numeral(0)));
    const Term ki = Term::app(Term::k(), stdlib::identity());

    // g l = iszero (hb l) (\d. K (K #0)) (\d. I) I
    g_ = define({0}, ap(ap(z, Term::app(hb, x(0))), lambda({9}, x(104)), lambda({9}, i), i),
                {{100, hb_}, {101, stdlib::iszero()}, {102, stdlib::identity()}, {104, kk0}});

    // u k = iszero (hb k) (\d. [z'] z' (succ k)) (\d. K I) I
    Term not_yet = lambda({9, 1}, Term::app(x(1), Term::app(sc, x(0))));
    u_ = define({0}, ap(ap(z, Term::app(hb, x(0))), not_yet, lambda({9}, x(104)), i),
                {{100, hb_}, {101, stdlib::iszero()}, {102, stdlib::identity()}, {103, stdlib::succ()}, {104, ki}});

    // w = [x]([y] u y (x x)); v = w w
    Term w = define({0}, lambda({1}, ap(x(105), x(1), Term::app(x(0), x(0)))), {{105, u_}});
    v_ = normalize(Term::app(w, w));

    t_ = ap(Term::s(), Term::app(Term::k(), v_), Term::app(Term::k(), numeral(0)));
}

Term Gadgets::t_prime(std::uint32_t n, const Term& xt) const {
    return ap(Term::s(), ap(Term::s(), t_, Term::app(Term::k(), xt)), Term::app(Term::k(), Term::atom(n)));
}

Term Gadgets::f(std::uint32_t n, const Term& xt) const {
    return ap(Term::s(), ap(Term::s(), g_, Term::app(Term::k(), t_prime(n, xt))), stdlib::identity());
}

void Gadgets::check_stage(std::uint64_t l) const {
    if (auto h = profile_.horizon(); h && l >= *h) {
        throw std::out_of_range("stage " + std::to_string(l) + " lies past the horizon of profile " +
                                profile_.name());
    }
}

std::string to_string(const ProbeReport& report) {
    PrintOptions opts{.fold_numerals = true};
    if (report.consistent()) {
        return "CONSISTENT-UP-TO " + std::to_string(report.bound) + " (cap " + std::to_string(report.budget) + ")";
    }
    std::string out = "COUNTEREXAMPLE-AT " + std::to_string(report.witness->input);
    if (report.witness->probe_index > 0 || report.witness->expected) {
        out += " probe " + std::to_string(report.witness->probe_index);
    }
    out += ": got " + to_string(report.witness->outcome, opts);
    if (report.witness->expected) {
        out += ", expected " + print(*report.witness->expected, opts);
    }
    return out;
}

ProbeReport probe_type1(const Term& t, std::uint64_t bound, std::uint64_t cap) {
    ProbeReport report{t, ProbeReport::Verdict::ConsistentUpTo, bound, cap, std::nullopt};
    for (std::uint64_t n = 0; n <= bound; ++n) {
        auto o = red(Term::app(t, numeral(static_cast<std::uint32_t>(n))), cap);
        if (!o.reduced() || !numeral_value(o.value())) {
            report.verdict = ProbeReport::Verdict::CounterexampleAt;
            report.witness = ProbeWitness{0, n, o, std::nullopt};
            return report;
        }
    }
    return report;
}

ProbeReport probe_type2_identity(const Term& e, const std::vector<Term>& probes, std::uint64_t bound,
                                 std::uint64_t cap) {
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (!probe_type1(probes[i], bound, cap).consistent()) {
            throw std::invalid_argument("probe " + std::to_string(i) + " is not type 1 up to " +
                                        std::to_string(bound));
        }
    }
    ProbeReport report{e, ProbeReport::Verdict::ConsistentUpTo, bound, cap, std::nullopt};
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::uint64_t n = 0; n <= bound; ++n) {
            Term num = numeral(static_cast<std::uint32_t>(n));
            Term expected = red(Term::app(probes[i], num), cap).value();
            auto got = red(ap(e, probes[i], num), cap);
            if (!got.reduced() || got.value() != expected) {
                report.verdict = ProbeReport::Verdict::CounterexampleAt;
                report.witness = ProbeWitness{i, n, got, expected};
                return report;
            }
        }
    }
    return report;
}

AtomProbeReport atom_preservation_probe(const Term& e, const Gadgets& gadgets, std::uint32_t n, const Perm& F,
                                        const Perm& Fp, std::uint64_t cap) {
    if (F(n) == Fp(n)) {
        throw std::invalid_argument("the two oracles must differ at the probed atom");
    }
    if (mentions_oracle(e, F) || mentions_oracle(e, Fp)) {
        throw std::invalid_argument("the probed term already mentions one of the oracles");
    }
    AtomProbeReport report{e, BudgetExhausted{0}, BudgetExhausted{0}, false, {}, std::nullopt};
    report.outcome = red(Term::app(e, gadgets.f(n, F)), cap);
    report.variant_outcome = red(Term::app(e, gadgets.f(n, Fp)), cap);
    if (report.outcome.reduced()) {
        report.atoms = report.outcome.value().atoms();
        report.atom_present = std::binary_search(report.atoms.begin(), report.atoms.end(), n);
    }
    if (report.outcome.reduced() && report.variant_outcome.reduced()) {
        report.variants_equal = report.outcome.value() == report.variant_outcome.value();
    }
    return report;
}

}  // namespace pcaforge
