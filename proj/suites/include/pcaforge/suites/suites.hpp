#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pcaforge/gadgets.hpp"
#include "pcaforge/reduce.hpp"

namespace pcaforge::suites {

struct Context {
    const Engine* engine = &default_engine();
    std::uint64_t seed = 20260101;
    /// Profiles for the gadget suites; empty means the standard set
    /// halts@0, halts@1, halts@3, halts@10, never.
    std::vector<HaltingProfile> profiles;

    const Engine& eng() const { return *engine; }
    std::vector<HaltingProfile> gadget_profiles() const;
};

struct Result {
    explicit Result(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    /// Counts worth reporting next to the verdict, e.g. how many instances
    /// were Realized.
    std::string stats;
    /// First few failures, human readable.
    std::vector<std::string> samples;

    bool passed() const { return failures == 0 && cases > 0; }
    void fail(std::string what);
};

struct Suite {
    std::string name;
    /// Acceptance criterion this suite belongs to (1..11).
    int criterion;
    std::string summary;
    std::function<Result(const Context&)> run;
};

const std::vector<Suite>& registry();
const Suite* find_suite(const std::string& name);

// Criterion 1
Result k_law(const Context& c);
Result s_law(const Context& c);
Result partial_apps(const Context& c);
// 2
Result red_monotone(const Context& c);
// 3
Result termdefs(const Context& c);
// 4
Result equivariance(const Context& c);
// 5
Result lambda_sim(const Context& c);
Result fixpoints(const Context& c);
// 6
Result gadgets(const Context& c);
// 7
Result atom_preservation(const Context& c);
// 8
Result kernel_oracle(const Context& c);
Result equality_realizer_laws(const Context& c);
// 9
Result realpreserve(const Context& c);
Result boundedpreserve1(const Context& c);
Result boundedsame(const Context& c);
Result sympreserved(const Context& c);
Result eqrank(const Context& c);
// 10
Result iplemma_instances(const Context& c);
// 11
Result rn_approximants(const Context& c);

}  // namespace pcaforge::suites
