#include "pcaforge/suites/suites.hpp"

namespace pcaforge::suites {

void Result::fail(std::string what) {
    ++failures;
    if (samples.size() < 5) {
        samples.push_back(std::move(what));
    }
}

const std::vector<Suite>& registry() {
    static const std::vector<Suite> all{
        {"k-law", 1, "K r s reduces to r", k_law},
        {"s-law", 1, "S r s u agrees with r u (s u)", s_law},
        {"partial-apps", 1, "S r, S r s and K r are defined", partial_apps},
        {"red-monotone", 2, "raising the cap never changes a reduced value or stage", red_monotone},
        {"termdefs", 3, "denotation of application trees matches red of the flattening", termdefs},
        {"equivariance", 4, "red commutes with automorphisms; standard terms are fixed", equivariance},
        {"lambda", 5, "bracket abstraction simulates substitution", lambda_sim},
        {"fixpoints", 5, "y f ~ f (y f); y' f defined and y' f e ~ f (y' f) e", fixpoints},
        {"gadgets", 6, "v, f and t' behave per halting profile", gadgets},
        {"atom-preservation", 7, "identity keeps atom n and separates oracle variants", atom_preservation},
        {"kernel-oracle", 8, "checker agrees with brute-force clause expansion", kernel_oracle},
        {"equality-realizers", 8, "i_r, i_s, i_t, i_0, i_1 realize their laws", equality_realizer_laws},
        {"realpreserve", 9, "forcing on V_Gamma implies forcing on projections", realpreserve},
        {"boundedpreserve1", 9, "completely symmetric parameters: both relations agree", boundedpreserve1},
        {"boundedsame", 9, "V_ip agrees with V on the decidable fragment", boundedsame},
        {"sympreserved", 9, "projection commutes with the action and keeps fixity", sympreserved},
        {"eqrank", 9, "realized equality forces equal rank", eqrank},
        {"iplemma", 10, "injective-presentation realizer on constructed instances", iplemma_instances},
        {"rn", 11, "R_N approximants: part 3 and the multivalued-function realizer", rn_approximants},
    };
    return all;
}

const Suite* find_suite(const std::string& name) {
    for (const auto& s : registry()) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

}  // namespace pcaforge::suites
