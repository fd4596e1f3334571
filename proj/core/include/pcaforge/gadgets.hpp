#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcaforge/primrec.hpp"
#include "pcaforge/reduce.hpp"
#include "pcaforge/term.hpp"

namespace pcaforge {

/// A monotone stage predicate: does machine m halt by stage k.
class HaltingProfile {
public:
    using Predicate = std::function<bool(std::uint64_t m, std::uint64_t k)>;

    static HaltingProfile halts_at(std::uint64_t k);
    static HaltingProfile never();
    /// A profile given by a predicate known up to stage horizon - 1. Stages at
    /// or past the horizon read as "not halted" inside compiled gadgets, and
    /// querying them directly throws std::out_of_range. Throws
    /// std::invalid_argument if the predicate is not monotone below the horizon.
    static HaltingProfile from_function(Predicate halts_by, std::uint64_t horizon, std::string name, std::uint64_t m);

    /// "halts@k" or "never"; throws std::invalid_argument otherwise.
    static HaltingProfile parse(std::string_view spec);

    bool halts_by(std::uint64_t m, std::uint64_t k) const;
    /// First stage at which m has halted, if it does within the known range.
    std::optional<std::uint64_t> halting_stage(std::uint64_t m) const;
    std::optional<std::uint64_t> horizon() const { return horizon_; }
    const std::string& name() const { return name_; }

    /// hb(k) = 1 iff m has halted by stage k, as a finite case table.
    PRFun indicator(std::uint64_t m) const;

private:
    HaltingProfile() = default;

    std::string name_;
    std::optional<std::uint64_t> halt_stage_;
    Predicate predicate_;
    std::optional<std::uint64_t> horizon_;
    std::uint64_t predicate_m_ = 0;
};

/// The halting gadgets for one (profile, m). All terms are normal; the
/// stage-level ones (g, u, v, t) are S/K-only.
class Gadgets {
public:
    Gadgets(HaltingProfile profile, std::uint64_t m);

    const HaltingProfile& profile() const { return profile_; }
    std::uint64_t machine() const { return m_; }

    /// The compiled indicator hb.
    const Term& hb() const { return hb_; }
    /// g l = K (K #0) before halting by l, I after.
    const Term& g() const { return g_; }
    /// u k = K I once halted by k, otherwise a term behaving as [z] z (k+1).
    const Term& u() const { return u_; }
    /// The normal form of w w, w = [x]([y] u y (x x)).
    const Term& v() const { return v_; }
    /// S (K v) (K #0)
    const Term& t() const { return t_; }
    /// S (S t (K x)) (K a_n)
    Term t_prime(std::uint32_t n, const Term& x) const;
    /// S (S g (K t'(x))) I
    Term f(std::uint32_t n, const Term& x) const;
    Term f(std::uint32_t n, const Perm& oracle) const { return f(n, Term::oracle(oracle)); }

    /// Throws std::out_of_range if stage l lies past the profile's horizon.
    void check_stage(std::uint64_t l) const;

private:
    HaltingProfile profile_;
    std::uint64_t m_;
    Term hb_, g_, u_, v_, t_;
};

struct ProbeWitness {
    std::size_t probe_index = 0;
    std::uint64_t input = 0;
    ReductionOutcome outcome = BudgetExhausted{0};
    std::optional<Term> expected;
};

struct ProbeReport {
    enum class Verdict { ConsistentUpTo, CounterexampleAt };

    Term subject;
    Verdict verdict;
    std::uint64_t bound;
    std::uint64_t budget;
    std::optional<ProbeWitness> witness;

    bool consistent() const { return verdict == Verdict::ConsistentUpTo; }
};

std::string to_string(const ProbeReport& report);

/// red(t n) is a numeral for every n <= bound, each within `cap`.
ProbeReport probe_type1(const Term& t, std::uint64_t bound, std::uint64_t cap);

/// red(e f n) = red(f n) for every probe f and n <= bound. Throws
/// std::invalid_argument if a probe fails probe_type1 at the same bound.
ProbeReport probe_type2_identity(const Term& e, const std::vector<Term>& probes, std::uint64_t bound,
                                 std::uint64_t cap);

struct AtomProbeReport {
    Term subject;
    /// red(e f_m(z[F]))
    ReductionOutcome outcome = BudgetExhausted{0};
    /// red(e f_m(z[F']))
    ReductionOutcome variant_outcome = BudgetExhausted{0};
    bool atom_present = false;
    AtomSet atoms;
    /// Both variants reduced to the same term; unset if either exhausted.
    std::optional<bool> variants_equal;
};

/// The case split from the atom preservation argument. Throws
/// std::invalid_argument unless F(n) != Fp(n) and neither oracle occurs in e.
AtomProbeReport atom_preservation_probe(const Term& e, const Gadgets& gadgets, std::uint32_t n, const Perm& F,
                                        const Perm& Fp, std::uint64_t cap);

}  // namespace pcaforge
