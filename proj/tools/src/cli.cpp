#include "pcaforge/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "pcaforge/gadgets.hpp"
#include "pcaforge/realize.hpp"
#include "pcaforge/reduce.hpp"
#include "pcaforge/sexpr.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/suites/suites.hpp"
#include "pcaforge/syntax.hpp"

namespace pcaforge::cli {

namespace {

constexpr std::uint64_t kDefaultCap = 100'000;
const PrintOptions kFold{.fold_numerals = true};

/// Bad user input; reported with exit code 3.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t cap = kDefaultCap;
    bool trace = false;
    std::string format = "text";

    bool machine() const { return format == "machine"; }
};

/// Worst verdict wins: any negative gives 1, else any unknown gives 2.
class Tally {
public:
    void add(const Verdict& v) {
        neg_ |= v.is_not_realized();
        unk_ |= v.is_unknown();
    }
    void negative() { neg_ = true; }
    void unknown() { unk_ = true; }
    int code() const { return neg_ ? kNegative : unk_ ? kUnknown : kSuccess; }

private:
    bool neg_ = false;
    bool unk_ = false;
};

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
        throw UsageError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

Term parse_term(const std::string& text) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw UsageError("cannot parse term '" + text + "': " + e.what());
    }
}

/// "1->2,2->1", "[1->2,2->1]" or "z[1->2,2->1]".
Perm parse_perm(std::string text) {
    if (text.starts_with('z')) {
        text.erase(0, 1);
    }
    if (!text.starts_with('[')) {
        text = "[" + text + "]";
    }
    Term t = parse_term("z" + text);
    if (t.kind() != TermKind::Oracle) {
        throw UsageError("not a permutation: " + text);
    }
    return t.perm();
}

HaltingProfile parse_profile(const std::string& spec) {
    try {
        return HaltingProfile::parse(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad profile: ") + e.what());
    }
}

std::string read_source(const std::string& file, const std::string& inline_text) {
    if (file.empty() == inline_text.empty()) {
        throw UsageError("give exactly one of --file or an inline document");
    }
    if (!inline_text.empty()) {
        return inline_text;
    }
    std::ostringstream buf;
    if (file == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(file);
    if (!in) {
        throw UsageError("cannot read " + file);
    }
    buf << in.rdbuf();
    return buf.str();
}

sexpr::Value num(std::uint64_t n) { return sexpr::symbol(std::to_string(n)); }

sexpr::Value outcome_sexpr(const ReductionOutcome& o) {
    using sexpr::list, sexpr::symbol;
    if (o.reduced()) {
        return list({symbol("reduced"), sexpr::string(print(o.value(), kFold)), num(o.stage())});
    }
    const auto& b = o.exhausted();
    return list({symbol("exhausted"), num(b.cap),
                 symbol(b.reason == ExhaustReason::StageCap ? "stage-cap" : "step-limit")});
}

std::string atoms_text(const AtomSet& atoms) {
    std::string s = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        s += (i ? "," : "") + std::to_string(atoms[i]);
    }
    return s + "}";
}

sexpr::Value atoms_sexpr(const AtomSet& atoms) {
    std::vector<sexpr::Value> items{sexpr::symbol("atoms")};
    for (auto a : atoms) {
        items.push_back(num(a));
    }
    return sexpr::list(std::move(items));
}

void emit_term(const Common& c, std::ostream& out, const Term& t) {
    if (c.machine()) {
        out << sexpr::print(sexpr::list({sexpr::symbol("term"), sexpr::string(print(t, kFold))})) << '\n';
    } else {
        out << print(t, kFold) << '\n';
    }
}

void emit_verdict(const Common& c, std::ostream& out, const Verdict& v) {
    out << (c.machine() ? sexpr::print(to_sexpr(v)) : to_string(v)) << '\n';
}

// eval ----------------------------------------------------------------------

int cmd_eval(const Common& c, const std::vector<std::string>& terms, std::ostream& out, std::ostream& err) {
    Tally tally;
    for (const auto& text : terms) {
        Term t = parse_term(text);
        std::vector<TraceEntry> tr;
        auto o = default_engine().red(t, c.cap, c.trace ? &tr : nullptr);
        if (c.trace) {
            // Keep stdout one datum per result in machine mode.
            (c.machine() ? err : out) << format_trace(tr);
        }
        if (!o.reduced()) {
            tally.unknown();
        }
        out << (c.machine() ? sexpr::print(outcome_sexpr(o)) : to_string(o)) << '\n';
    }
    return tally.code();
}

// abstract, perm --------------------------------------------------------------

std::uint32_t parse_var(std::string s) {
    if (s.starts_with('x')) {
        s.erase(0, 1);
    }
    auto v = parse_u64(s, "variable");
    if (v > UINT32_MAX) {
        throw UsageError("variable index too large");
    }
    return static_cast<std::uint32_t>(v);
}

int cmd_abstract(const Common& c, const std::vector<std::string>& vars, const std::string& body, std::ostream& out) {
    std::vector<std::uint32_t> idx;
    for (const auto& v : vars) {
        idx.push_back(parse_var(v));
    }
    emit_term(c, out, lambda(idx, parse_term(body)));
    return kSuccess;
}

int cmd_perm(const Common& c, const std::string& perm, const std::vector<std::string>& terms, std::ostream& out) {
    Perm p = parse_perm(perm);
    if (terms.empty()) {
        if (c.machine()) {
            out << sexpr::print(sexpr::list({sexpr::symbol("perm"), sexpr::string(to_string(p)),
                                             sexpr::string(to_string(p.inverse()))}))
                << '\n';
        } else {
            out << to_string(p) << " inverse " << to_string(p.inverse()) << '\n';
        }
        return kSuccess;
    }
    for (const auto& t : terms) {
        emit_term(c, out, apply_automorphism(p, parse_term(t)));
    }
    return kSuccess;
}

// gadget --------------------------------------------------------------------

struct GadgetArgs {
    std::string which;
    std::string profile = "never";
    std::uint64_t m = 0;
    std::uint32_t atom = 1;
    std::string perm = "[]";
    std::string perm2;
    std::string term;
    std::vector<std::string> probes;
    std::uint64_t bound = 20;
};

int cmd_gadget_build(const Common& c, const GadgetArgs& a, std::ostream& out) {
    Gadgets gd(parse_profile(a.profile), a.m);
    Term x = Term::oracle(parse_perm(a.perm));
    if (a.which == "g") {
        emit_term(c, out, gd.g());
    } else if (a.which == "u") {
        emit_term(c, out, gd.u());
    } else if (a.which == "v") {
        emit_term(c, out, gd.v());
    } else if (a.which == "t") {
        emit_term(c, out, gd.t());
    } else if (a.which == "tprime") {
        emit_term(c, out, gd.t_prime(a.atom, x));
    } else {
        emit_term(c, out, gd.f(a.atom, x));
    }
    return kSuccess;
}

void emit_probe(const Common& c, std::ostream& out, const ProbeReport& r) {
    if (!c.machine()) {
        out << to_string(r) << '\n';
        return;
    }
    using sexpr::list, sexpr::symbol;
    std::vector<sexpr::Value> items{symbol("probe")};
    if (r.consistent()) {
        items.push_back(symbol("consistent-up-to"));
        items.push_back(num(r.bound));
    } else {
        items.push_back(symbol("counterexample-at"));
        items.push_back(num(r.witness ? r.witness->input : 0));
    }
    items.push_back(list({symbol("cap"), num(r.budget)}));
    if (r.witness) {
        items.push_back(list({symbol("probe-index"), num(r.witness->probe_index)}));
        items.push_back(outcome_sexpr(r.witness->outcome));
        if (r.witness->expected) {
            items.push_back(list({symbol("expected"), sexpr::string(print(*r.witness->expected, kFold))}));
        }
    }
    out << sexpr::print(list(std::move(items))) << '\n';
}

int cmd_gadget_probe(const Common& c, const GadgetArgs& a, std::ostream& out) {
    Term t = parse_term(a.term);
    if (a.which == "type1") {
        auto r = probe_type1(t, a.bound, c.cap);
        emit_probe(c, out, r);
        return r.consistent() ? kSuccess : kNegative;
    }
    if (a.which == "type2id") {
        if (a.probes.empty()) {
            throw UsageError("type2id needs at least one --probe");
        }
        std::vector<Term> probes;
        for (const auto& p : a.probes) {
            probes.push_back(parse_term(p));
        }
        ProbeReport r = [&] {
            try {
                return probe_type2_identity(t, probes, a.bound, c.cap);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }();
        emit_probe(c, out, r);
        return r.consistent() ? kSuccess : kNegative;
    }
    // atoms: the preservation case split for e = term.
    Gadgets gd(parse_profile(a.profile), a.m);
    Perm F = parse_perm(a.perm);
    Perm Fp = a.perm2.empty() ? Perm::swap(a.atom, a.atom + 1) : parse_perm(a.perm2);
    AtomProbeReport r = [&] {
        try {
            return atom_preservation_probe(t, gd, a.atom, F, Fp, c.cap);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    const char* eq = !r.variants_equal ? "unknown" : *r.variants_equal ? "yes" : "no";
    if (c.machine()) {
        using sexpr::list, sexpr::symbol;
        out << sexpr::print(list({symbol("atom-probe"), outcome_sexpr(r.outcome), outcome_sexpr(r.variant_outcome),
                                  list({symbol("atom-present"), symbol(r.atom_present ? "yes" : "no")}),
                                  atoms_sexpr(r.atoms), list({symbol("variants-equal"), symbol(eq)})}))
            << '\n';
    } else {
        out << "value " << to_string(r.outcome) << '\n'
            << "variant " << to_string(r.variant_outcome) << '\n'
            << "atom " << a.atom << (r.atom_present ? " present" : " absent") << ", atoms " << atoms_text(r.atoms)
            << '\n'
            << "variants equal: " << eq << '\n';
    }
    return r.outcome.reduced() ? kSuccess : kUnknown;
}

int cmd_gadget_atoms(const Common& c, const std::string& term, std::ostream& out) {
    Term t = parse_term(term);
    out << (c.machine() ? sexpr::print(atoms_sexpr(t.atoms())) : atoms_text(t.atoms())) << '\n';
    return kSuccess;
}

// realize -------------------------------------------------------------------

enum class Relation { Plain, Gamma, Ip, IpLemma };

int cmd_realize(const Common& c, Relation rel, const std::string& file, const std::string& text, std::ostream& out) {
    Document doc = [&] {
        try {
            return read_document(read_source(file, text), c.cap);
        } catch (const ParseError& e) {
            throw UsageError(std::string("document error: ") + e.what());
        }
    }();
    Tally tally;
    std::size_t ran = 0;
    const auto plain = doc.plain_params();
    for (const Query& q : doc.queries) {
        if (rel == Relation::IpLemma && q.kind != Query::Kind::IpLemma) {
            continue;
        }
        Verdict v = Verdict::realized();
        try {
            switch (q.kind) {
                case Query::Kind::Check:
                    if (rel == Relation::Gamma) {
                        v = check0_gamma(q.realizer, q.formula, doc.labeled_params(), c.cap);
                    } else if (rel == Relation::Ip) {
                        v = check0_ip(q.realizer, q.formula, plain, c.cap);
                    } else {
                        v = check(q.realizer, q.formula, plain, c.cap);
                    }
                    break;
                case Query::Kind::Approx: {
                    if (rel != Relation::Plain) {
                        throw UsageError("approx queries are only supported by 'realize check'");
                    }
                    std::vector<RSet> universe;
                    for (const auto& u : q.universe) {
                        universe.push_back(as_plain(u));
                    }
                    v = check_bounded_approx(q.realizer, q.formula, plain, q.candidates, universe, c.cap);
                    break;
                }
                case Query::Kind::IpLemma:
                    v = iplemma_check(plain[q.a], plain[q.b], q.realizer, q.key, c.cap);
                    break;
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(q.source.empty() ? e.what() : q.source + ": " + e.what());
        }
        ++ran;
        tally.add(v);
        emit_verdict(c, out, v);
    }
    if (ran == 0) {
        throw UsageError(rel == Relation::IpLemma ? "no iplemma queries in the document" : "no queries in the document");
    }
    return tally.code();
}

struct RnArgs {
    std::vector<std::string> probes;
    std::uint32_t N = 3;
    std::uint32_t T = 4;
};

int cmd_rn(const Common& c, const RnArgs& a, std::ostream& out) {
    std::vector<Term> probes;
    for (const auto& p : a.probes) {
        probes.push_back(parse_term(p));
    }
    RNApprox r = [&] {
        try {
            return build_R_N(probes, a.N, a.T, c.cap);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    auto bad = rn_part3_violations(r, c.cap);
    Verdict v = rn_totality_check(r, c.cap);
    if (c.machine()) {
        using sexpr::list, sexpr::symbol;
        out << sexpr::print(list({symbol("rn"), list({symbol("triples"), num(r.triples.size())}),
                                  list({symbol("violations"), num(bad.size())}), to_sexpr(v)}))
            << '\n';
    } else {
        out << "triples " << r.triples.size() << '\n' << "part3 violations " << bad.size() << '\n';
        for (const auto& t : bad) {
            out << "  f = " << print(t.f, kFold) << ", zeta " << t.zeta << ", n " << t.n << '\n';
        }
        out << "totality " << to_string(v) << '\n';
    }
    Tally tally;
    tally.add(v);
    if (!bad.empty()) {
        tally.negative();
    }
    return tally.code();
}

// selftest ------------------------------------------------------------------

struct SelftestArgs {
    std::vector<std::string> suites;
    std::vector<std::string> profiles;
    std::string mutate;
    std::uint64_t seed = suites::Context{}.seed;
};

int cmd_selftest(const Common& c, const SelftestArgs& a, std::ostream& out) {
    EngineConfig cfg;
    if (!a.mutate.empty()) {
        if (a.mutate != "k-law") {
            throw UsageError("unknown mutation '" + a.mutate + "' (only k-law)");
        }
        cfg.fault_k_rule = true;
    }
    const Engine engine(cfg);
    suites::Context ctx;
    ctx.engine = &engine;
    ctx.seed = a.seed;
    for (const auto& p : a.profiles) {
        ctx.profiles.push_back(parse_profile(p));
    }
    std::vector<const suites::Suite*> chosen;
    if (a.suites.empty()) {
        for (const auto& s : suites::registry()) {
            chosen.push_back(&s);
        }
    } else {
        for (const auto& name : a.suites) {
            const suites::Suite* s = suites::find_suite(name);
            if (!s) {
                std::string known;
                for (const auto& r : suites::registry()) {
                    known += " " + r.name;
                }
                throw UsageError("unknown suite '" + name + "'; known:" + known);
            }
            chosen.push_back(s);
        }
    }
    bool all_ok = true;
    for (const suites::Suite* s : chosen) {
        suites::Result r = s->run(ctx);
        all_ok &= r.passed();
        const char* verdict = r.passed() ? "PASS" : "FAIL";
        if (c.machine()) {
            using sexpr::list, sexpr::symbol;
            out << sexpr::print(list({symbol("suite"), sexpr::string(s->name), symbol(verdict),
                                      list({symbol("cases"), num(r.cases)}),
                                      list({symbol("failures"), num(r.failures)})}))
                << '\n';
            continue;
        }
        out << verdict << ' ' << s->name << ": " << r.cases << " cases, " << r.failures << " failures";
        if (!r.stats.empty()) {
            out << " (" << r.stats << ')';
        }
        out << '\n';
        for (const auto& sample : r.samples) {
            out << "    " << sample << '\n';
        }
    }
    return all_ok ? kSuccess : kNegative;
}

std::uint64_t env_cap() {
    const char* env = std::getenv("PCA_FORGE_CAP");
    if (!env) {
        return kDefaultCap;
    }
    return parse_u64(env, "PCA_FORGE_CAP");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Common common;
    try {
        common.cap = env_cap();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    CLI::App app{"Term-model pca, halting gadgets and realizability checks"};
    app.name("pcaforge");
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--cap", common.cap, "Stage cap for every reduction (env PCA_FORGE_CAP, default 100000)");
    app.add_flag("--trace", common.trace, "Print the reduction trace (eval)");
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    app.footer("Exit status: 0 success, 1 negative verdict, 2 unknown or budget exhausted, 3 usage or parse error.");

    std::function<int()> action;

    std::vector<std::string> eval_terms;
    auto* eval = app.add_subcommand("eval", "Reduce terms at the cap");
    eval->add_option("term", eval_terms, "Terms to reduce")->required();
    eval->callback([&] { action = [&] { return cmd_eval(common, eval_terms, out, err); }; });

    std::vector<std::string> abs_vars;
    std::string abs_body;
    auto* abs = app.add_subcommand("abstract", "Bracket abstraction over variables, outermost first");
    abs->add_option("-v,--var", abs_vars, "Variable to abstract, x<i> or <i>")->required();
    abs->add_option("body", abs_body, "Term with variables")->required();
    abs->callback([&] { action = [&] { return cmd_abstract(common, abs_vars, abs_body, out); }; });

    std::string perm_spec;
    std::vector<std::string> perm_terms;
    auto* perm = app.add_subcommand("perm", "Apply the automorphism of an atom permutation to terms");
    perm->add_option("perm", perm_spec, "Permutation such as 1->2,2->1")->required();
    perm->add_option("term", perm_terms, "Terms to transform; none prints the perm and its inverse");
    perm->callback([&] { action = [&] { return cmd_perm(common, perm_spec, perm_terms, out); }; });

    GadgetArgs ga;
    auto* gadget = app.add_subcommand("gadget", "Halting gadgets and probes");
    gadget->require_subcommand(1);
    auto gadget_opts = [&](CLI::App* s) {
        s->add_option("--profile", ga.profile, "halts@k or never")->capture_default_str();
        s->add_option("--m", ga.m, "Machine index")->capture_default_str();
        s->add_option("--atom", ga.atom, "Atom index n")->capture_default_str()->check(CLI::PositiveNumber);
        s->add_option("--perm", ga.perm, "Oracle permutation F")->capture_default_str();
    };
    auto* build = gadget->add_subcommand("build", "Print g, u, v, t, tprime or f");
    build->add_option("which", ga.which)->required()->check(CLI::IsMember({"g", "u", "v", "t", "tprime", "f"}));
    gadget_opts(build);
    build->callback([&] { action = [&] { return cmd_gadget_build(common, ga, out); }; });
    auto* probe = gadget->add_subcommand("probe", "Bounded type 1, type 2 identity or atom preservation probe");
    probe->add_option("which", ga.which)->required()->check(CLI::IsMember({"type1", "type2id", "atoms"}));
    probe->add_option("term", ga.term, "Subject term")->required();
    probe->add_option("--bound", ga.bound, "Largest numeral input")->capture_default_str();
    probe->add_option("--probe", ga.probes, "Type 1 probe for type2id (repeatable)");
    probe->add_option("--perm2", ga.perm2, "Second oracle permutation F' for atoms (default swap n, n+1)");
    gadget_opts(probe);
    probe->callback([&] { action = [&] { return cmd_gadget_probe(common, ga, out); }; });
    std::string atoms_term;
    auto* atoms = gadget->add_subcommand("atoms", "Atom content of a term");
    atoms->add_option("term", atoms_term)->required();
    atoms->callback([&] { action = [&] { return cmd_gadget_atoms(common, atoms_term, out); }; });

    auto* realize = app.add_subcommand("realize", "Realizability checks over a document");
    realize->require_subcommand(1);
    std::string file, doc_text;
    auto doc_cmd = [&](const char* name, const char* help, Relation rel) {
        auto* s = realize->add_subcommand(name, help);
        s->add_option("-f,--file", file, "Document file, - for stdin");
        s->add_option("document", doc_text, "Inline document text");
        s->callback([&, s, rel] {
            (void)s;
            action = [&, rel] { return cmd_realize(common, rel, file, doc_text, out); };
        });
    };
    doc_cmd("check", "V(A) relation; approx and iplemma queries too", Relation::Plain);
    doc_cmd("check0g", "Forcing on V_Gamma; plain sets read as label 0", Relation::Gamma);
    doc_cmd("check0ip", "Relation on V_ip; parameters must be injectively presented", Relation::Ip);
    doc_cmd("iplemma", "Only the iplemma queries", Relation::IpLemma);
    RnArgs rn;
    auto* rns = realize->add_subcommand("rn", "R_N approximant over type 1 probes");
    rns->add_option("--probe", rn.probes, "Type 1 probe term (repeatable)")->required();
    rns->add_option("--N", rn.N, "N")->capture_default_str();
    rns->add_option("--T", rn.T, "Graph cut T")->capture_default_str();
    rns->callback([&] { action = [&] { return cmd_rn(common, rn, out); }; });

    SelftestArgs st;
    auto* self = app.add_subcommand("selftest", "Run the property suites at fixed seeds and caps (ignores --cap)");
    self->add_option("--suite", st.suites, "Suite name (repeatable; default all)");
    self->add_option("--profile", st.profiles, "Gadget profile (repeatable)");
    self->add_option("--seed", st.seed, "Base seed")->capture_default_str();
    self->add_option("--mutate", st.mutate, "Test-only fault injection: k-law");
    self->callback([&] { action = [&] { return cmd_selftest(common, st, out); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }
    if (!action) {
        err << app.help();
        return kUsage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kUsage;
}

}  // namespace pcaforge::cli
