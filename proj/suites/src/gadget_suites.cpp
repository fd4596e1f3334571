#include "pcaforge/stdlib.hpp"
#include "pcaforge/suites/suites.hpp"
#include "pcaforge/syntax.hpp"

namespace pcaforge::suites {

std::vector<HaltingProfile> Context::gadget_profiles() const {
    if (!profiles.empty()) {
        return profiles;
    }
    return {HaltingProfile::halts_at(0), HaltingProfile::halts_at(1), HaltingProfile::halts_at(3),
            HaltingProfile::halts_at(10), HaltingProfile::never()};
}

Result gadgets(const Context& c) {
    Result r("gadgets");
    const Term id = stdlib::identity();
    for (const HaltingProfile& profile : c.gadget_profiles()) {
        Gadgets gd(profile, 0);
        const std::string tag = profile.name() + ": ";
        auto halt = profile.halting_stage(0);
        Term v0 = Term::app(gd.v(), numeral(0));
        if (halt) {
            ++r.cases;
            auto o = c.eng().red(v0, 1'000'000);
            if (!o.reduced() || o.value() != id) {
                r.fail(tag + "v #0 gave " + to_string(o));
            }
        } else {
            for (std::uint64_t cap : {1'000u, 10'000u, 100'000u}) {
                ++r.cases;
                auto o = c.eng().red(v0, cap);
                if (o.reduced()) {
                    r.fail(tag + "v #0 reduced at cap " + std::to_string(cap));
                }
            }
        }
        for (std::uint32_t n : {5u, 9u}) {
            for (const Perm& F : {Perm{}, Perm::swap(n, n + 1)}) {
                Term f = gd.f(n, F);
                Term tp = gd.t_prime(n, Term::oracle(F));
                ++r.cases;
                if (tp.atoms() != AtomSet{n}) {
                    r.fail(tag + "t' atoms for n=" + std::to_string(n));
                }
                for (std::uint32_t l = 0; l <= 20; ++l) {
                    ++r.cases;
                    Term want = halt && l >= *halt ? numeral(F(n)) : numeral(0);
                    auto o = c.eng().red(Term::app(f, numeral(l)), 1'000'000);
                    if (!o.reduced() || o.value() != want) {
                        r.fail(tag + "f(z" + to_string(F) + ") #" + std::to_string(l) + " gave " + to_string(o));
                    }
                }
            }
        }
    }
    return r;
}

Result atom_preservation(const Context& c) {
    Result r("atom-preservation");
    const Term e = lambda({0}, Term::var(0));
    for (const HaltingProfile& profile : c.gadget_profiles()) {
        Gadgets gd(profile, 0);
        for (std::uint32_t n : {5u, 9u}) {
            const std::pair<Perm, Perm> variants[] = {{Perm{}, Perm::swap(n, n + 1)},
                                                      {Perm::swap(n, n + 2), Perm::swap(n, n + 3)}};
            for (const auto& [F, Fp] : variants) {
                ++r.cases;
                auto rep = atom_preservation_probe(e, gd, n, F, Fp, 1'000'000);
                if (!rep.atom_present || rep.variants_equal != false || rep.atoms != AtomSet{n}) {
                    r.fail(profile.name() + " n=" + std::to_string(n) + " F=" + to_string(F) + ": atom " +
                           (rep.atom_present ? "present" : "absent") + ", atoms " + std::to_string(rep.atoms.size()));
                }
            }
        }
    }
    return r;
}

}  // namespace pcaforge::suites
