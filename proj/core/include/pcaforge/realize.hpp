#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pcaforge/formula.hpp"
#include "pcaforge/reduce.hpp"
#include "pcaforge/rset.hpp"
#include "pcaforge/term.hpp"

namespace pcaforge {

/// The finite bounds a verdict was computed under.
struct Bounds {
    std::uint64_t cap = 0;
    std::optional<std::size_t> candidates;
    std::optional<std::size_t> universe;
    std::optional<std::uint32_t> truncation;

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

std::string to_string(const Bounds& b);

struct Verdict {
    enum class Kind : std::uint8_t { Realized, NotRealized, Unknown };
    enum class Reason : std::uint8_t { None, Budget, ApproximateFragment };

    Kind kind = Kind::Unknown;
    Reason reason = Reason::None;
    Bounds bounds;

    static Verdict realized(Bounds b = {}) { return {Kind::Realized, Reason::None, b}; }
    static Verdict not_realized(Bounds b = {}) { return {Kind::NotRealized, Reason::None, b}; }
    static Verdict unknown(Reason r, Bounds b = {}) { return {Kind::Unknown, r, b}; }

    bool is_realized() const { return kind == Kind::Realized; }
    bool is_not_realized() const { return kind == Kind::NotRealized; }
    bool is_unknown() const { return kind == Kind::Unknown; }

    /// Kind and reason only; bounds are bookkeeping.
    bool same_outcome(const Verdict& o) const { return kind == o.kind && reason == o.reason; }
};

/// REALIZED | NOT-REALIZED | UNKNOWN(<reason>, <bounds>)
std::string to_string(const Verdict& v);

/// The relation on V(A). One instance holds memo tables for a fixed cap and
/// engine; reuse it across calls that share subproblems.
class Checker {
public:
    explicit Checker(std::uint64_t cap, const Engine& engine = default_engine());

    /// e is reduced first when it is not already normal.
    Verdict check(const Term& e, const Formula& phi, std::span<const RSet> params);

    /// The same relation with Implies/Not/Exists/Forall interpreted over the
    /// given candidate realizers and parameter universe. Never Realized on a
    /// formula outside the decidable fragment.
    Verdict check_bounded_approx(const Term& e, const Formula& phi, std::span<const RSet> params,
                                 std::span<const Term> candidates, std::span<const RSet> universe);

    Verdict mem(const Term& e, const RSet& a, const RSet& b);
    Verdict eq(const Term& e, const RSet& a, const RSet& b);

    /// Internal use by the V_Gamma checker: the relation under an explicit
    /// bound-variable environment (innermost binder last).
    Verdict check_env(const Term& e, const Formula& phi, std::span<const RSet> params, std::vector<RSet>& bound);

    /// red with memo; the outcome of t at this checker's cap.
    const ReductionOutcome& reduce(const Term& t);

    std::uint64_t cap() const { return cap_; }
    /// Deepest Mem/Eq nesting seen, and its allowance 2 * rank + 1 at the time.
    std::uint32_t max_atomic_depth() const { return max_depth_; }

private:
    friend class GammaChecker;

    // Realizer positions are pointers; null marks a term whose reduction ran
    // out of budget.
    struct AtomKey {
        std::optional<Term> e;
        bool is_eq;
        RSet a, b;
        friend bool operator==(const AtomKey&, const AtomKey&) = default;
    };
    struct AtomKeyHash {
        std::size_t operator()(const AtomKey& k) const;
    };

    const Term* part(const Term* e, int which);
    const Term* app(const Term* f, const Term& x);
    Verdict walk(const Term* e, const Formula& phi, std::span<const RSet> params, std::vector<RSet>& bound);
    Verdict walk_body(const Term* e, const Formula& phi, std::span<const RSet> params, std::vector<RSet>& bound);
    Verdict atomic(const Term* e, bool is_eq, const RSet& a, const RSet& b);
    Verdict atomic(const Term* e, bool is_eq, const RSet& a, const RSet& b, std::uint32_t depth,
                   std::uint32_t allowance);
    Verdict atomic_body(const Term* e, bool is_eq, const RSet& a, const RSet& b, std::uint32_t depth,
                        std::uint32_t allowance);
    Verdict approx(const Term* e, const Formula& phi, std::span<const RSet> params, std::vector<RSet>& bound);
    /// Realized becomes Unknown(budget); the rest is unchanged.
    Verdict demote(const Verdict& v) const { return v.is_realized() ? budget() : v; }
    Bounds bounds() const;
    Verdict budget() const { return Verdict::unknown(Verdict::Reason::Budget, bounds()); }

    std::uint64_t cap_;
    const Engine& engine_;
    std::unordered_map<Term, ReductionOutcome, TermHash> red_memo_;
    std::unordered_map<AtomKey, Verdict, AtomKeyHash> atom_memo_;
    std::uint32_t max_depth_ = 0;

    // Bounded-approximation state, set only inside check_bounded_approx.
    std::span<const Term> candidates_;
    std::span<const RSet> universe_;
    bool approximating_ = false;
};

Verdict check(const Term& e, const Formula& phi, std::span<const RSet> params, std::uint64_t cap);
Verdict check_bounded_approx(const Term& e, const Formula& phi, std::span<const RSet> params,
                             std::span<const Term> candidates, std::span<const RSet> universe, std::uint64_t cap);

/// The forcing relation on V_Gamma over the decidable fragment. Membership
/// and bounded quantifiers range over 0-labelled triples; Eq and bounded
/// forall also require the corresponding relation on the projections.
class GammaChecker {
public:
    explicit GammaChecker(std::uint64_t cap, const Engine& engine = default_engine());

    Verdict check0(const Term& e, const Formula& phi, std::span<const LabeledRSet> params);
    Verdict mem(const Term& e, const LabeledRSet& a, const LabeledRSet& b);
    Verdict eq(const Term& e, const LabeledRSet& a, const LabeledRSet& b);

    Checker& projected() { return v_; }

private:
    Verdict walk(const Term* e, const Formula& phi, std::span<const LabeledRSet> params,
                 std::vector<LabeledRSet>& bound);
    Verdict walk_body(const Term* e, const Formula& phi, std::span<const LabeledRSet> params,
                      std::vector<LabeledRSet>& bound);
    const RSet& proj(const LabeledRSet& a);
    Verdict atomic(const Term* e, bool is_eq, const LabeledRSet& a, const LabeledRSet& b);
    Verdict mem_body(const Term* e, const LabeledRSet& a, const LabeledRSet& b);
    Verdict eq_body(const Term* e, const LabeledRSet& a, const LabeledRSet& b);

    struct AtomKey {
        std::optional<Term> e;
        bool is_eq;
        LabeledRSet a, b;
        friend bool operator==(const AtomKey&, const AtomKey&) = default;
    };
    struct AtomKeyHash {
        std::size_t operator()(const AtomKey& k) const;
    };

    Checker v_;
    std::unordered_map<AtomKey, Verdict, AtomKeyHash> memo_;
    std::unordered_map<const void*, RSet> proj_memo_;
    std::vector<LabeledRSet> keep_alive_;
};

Verdict check0_gamma(const Term& e, const Formula& phi, std::span<const LabeledRSet> params, std::uint64_t cap);

/// The relation on V_ip for the decidable fragment: the V(A) relation after
/// checking that every parameter is injectively presented. Throws
/// std::invalid_argument naming the first offending parameter.
Verdict check0_ip(const Term& e, const Formula& phi, std::span<const RSet> params, std::uint64_t cap);

struct EqualityRealizers {
    Term ir, is, it, i0, i1;
};

/// Closed S/K-only normal forms, built once.
const EqualityRealizers& equality_realizers();

/// [x][y] i_t ((x)_1 y)_1 (i_s ((x)_1 y)_1)
const Term& iplemma_realizer();

/// Checks e f g against c = c' for every ordered pair of distinct children
/// c, c' of b under key g. Throws std::invalid_argument when a is not
/// injectively presented, f is not verified to realize a = b, or fewer than
/// two members of b carry key g.
Verdict iplemma_check(const RSet& a, const RSet& b, const Term& f, const Term& g, std::uint64_t cap);

/// z[id]
Term zeta1();

/// [x] p (zeta1 x) (p x i_r)
const Term& zeta_mvf_realizer();

/// [x] (e (f x)_0)_0
Term build_type2_composite(const Term& e, const Term& f);

struct RNTriple {
    Term f;
    /// Value of zeta1 f.
    std::uint32_t zeta;
    /// The numeral component n of (f-bar, n-bar).
    std::uint32_t n;
    bool low_clause;
    LabeledRSet value;
};

struct RNApprox {
    std::uint32_t N = 0;
    /// Graphs cut at n < T.
    std::uint32_t T = 0;
    /// Upper-clause triples take N < n <= zeta + 1.
    LabeledRSet set;
    std::vector<RNTriple> triples;
    /// {<0, f, f-bar>} over the probes.
    LabeledRSet domain;
    /// omega-bar cut high enough to hold every numeral component.
    LabeledRSet omega;
};

/// Throws std::invalid_argument unless each probe is type 1 up to T at cap.
RNApprox build_R_N(std::span<const Term> probes, std::uint32_t N, std::uint32_t T, std::uint64_t cap);

/// Triples violating: atoms of f within 1..N implies value = (f-bar, n-bar), n = zeta1 f <= N.
std::vector<RNTriple> rn_part3_violations(const RNApprox& r, std::uint64_t cap);

/// (ball x domain (bex y omega (mem (opair x y) R)))
Formula rn_totality_formula();

/// zeta_mvf_realizer against rn_totality_formula on [domain, omega, set] under the V_Gamma relation.
Verdict rn_totality_check(const RNApprox& r, std::uint64_t cap);

}  // namespace pcaforge
