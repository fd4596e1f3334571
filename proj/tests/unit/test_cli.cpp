#include <sstream>

#include "doctest.h"
#include "pcaforge/cli.hpp"
#include "pcaforge/sexpr.hpp"
#include "pcaforge/syntax.hpp"

using namespace pcaforge;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kDoc = R"doc((define zero (numeral 0))
(define one (numeral 1))
(check "$p #0 K" (mem zero one))
(check "$p #1 K" (mem zero one))
(check "S I I (S I I)" (eq one one))
)doc";

}  // namespace

TEST_CASE("eval") {
    auto r = run({"eval", "K a1 a2"});
    CHECK(r.code == 0);
    CHECK(r.out == "a1\n");
    r = run({"eval", "--cap", "1000", "S I I (S I I)"});
    CHECK(r.code == 2);
    CHECK(r.out == "BUDGET-EXHAUSTED(1000)\n");
    r = run({"--cap", "1000", "eval", "S I I (S I I)", "K a1 a2"});
    CHECK(r.code == 2);
    r = run({"eval", "--trace", "K a1 a2"});
    CHECK(r.out == "RED0-K | K a1 a2 -> a1\na1\n");
}

TEST_CASE("usage errors exit 3") {
    CHECK(run({}).code == 3);
    CHECK(run({"eval"}).code == 3);
    CHECK(run({"eval", "K ("}).code == 3);
    CHECK(run({"eval", "--format", "xml", "K"}).code == 3);
    CHECK(run({"gadget", "build", "q"}).code == 3);
    CHECK(run({"gadget", "build", "v", "--profile", "sometimes"}).code == 3);
    CHECK(run({"realize", "check", "(check \"K\" (mem nowhere nowhere))"}).code == 3);
    CHECK(run({"realize", "check", "--file", "/nonexistent/x.rz"}).code == 3);
    CHECK(run({"selftest", "--suite", "nope"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("machine output parses back") {
    auto r = run({"--format", "machine", "eval", "K a1 a2", "S K K a3", "--cap", "500", "S I I (S I I)"});
    auto data = sexpr::read_all(r.out);
    REQUIRE(data.size() == 3);
    CHECK(data[0].is_form("reduced"));
    CHECK(parse(data[0].items[1].text) == parse("a1"));
    CHECK(data[1].is_form("reduced"));
    CHECK(data[2] == sexpr::read_one("(exhausted 500 stage-cap)"));

    r = run({"--format", "machine", "realize", "check", kDoc});
    CHECK(r.code == 1);
    data = sexpr::read_all(r.out);
    REQUIRE(data.size() == 3);
    CHECK(verdict_from_sexpr(data[0]).is_realized());
    CHECK(verdict_from_sexpr(data[1]).is_not_realized());
    CHECK(verdict_from_sexpr(data[2]).is_unknown());
    CHECK(sexpr::print(to_sexpr(verdict_from_sexpr(data[2]))) == sexpr::print(data[2]));

    r = run({"--format", "machine", "gadget", "build", "f", "--profile", "halts@0", "--atom", "5"});
    data = sexpr::read_all(r.out);
    REQUIRE(data.size() == 1);
    CHECK(parse(data[0].items[1].text).atoms() == AtomSet{5});
}

TEST_CASE("identical invocations give identical output") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"--format", "machine", "realize", "check", kDoc},
          {"--format", "machine", "selftest", "--suite", "kernel-oracle"},
          {"gadget", "probe", "type1", "K", "--bound", "3"}}) {
        auto a = run(args);
        auto b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("realize") {
    auto r = run({"realize", "check", "(check \"$p #0 K\" (mem (numeral 0) (numeral 1)))"});
    CHECK(r.code == 0);
    CHECK(r.out == "REALIZED\n");
    r = run({"realize", "check0g", "(check \"$p #0 K\" (mem (numeral 0) (numeral 1)))"});
    CHECK(r.code == 0);
    // Not injectively presented: two members under key #0.
    r = run({"realize", "check0ip",
             R"((check "K" (eq (rset (pair "#0" (numeral 0)) (pair "#0" (numeral 1))) (numeral 0))))"});
    CHECK(r.code == 3);
    r = run({"realize", "iplemma", kDoc});
    CHECK(r.code == 3);
    r = run({"realize", "rn", "--probe", "$succ", "--probe", "K #0", "--N", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("totality REALIZED") != std::string::npos);
}

TEST_CASE("gadget probes") {
    CHECK(run({"gadget", "probe", "type1", "$succ", "--bound", "5"}).code == 0);
    CHECK(run({"gadget", "probe", "type1", "K", "--bound", "5"}).code == 1);
    auto id = run({"abstract", "-v", "x0", "x0"});
    REQUIRE(id.code == 0);
    std::string e = id.out.substr(0, id.out.size() - 1);
    CHECK(run({"gadget", "probe", "type2id", e, "--probe", "$succ", "--bound", "5"}).code == 0);
    auto r = run({"gadget", "probe", "atoms", e, "--profile", "halts@0", "--atom", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("atom 5 present, atoms {5}") != std::string::npos);
    CHECK(r.out.find("variants equal: no") != std::string::npos);
    CHECK(run({"gadget", "atoms", "a3 (K a1)"}).out == "{1,3}\n");
}

TEST_CASE("selftest and the k-law mutation") {
    CHECK(run({"selftest", "--suite", "k-law"}).code == 0);
    auto r = run({"selftest", "--suite", "k-law", "--mutate", "k-law"});
    CHECK(r.code == 1);
    CHECK(r.out.starts_with("FAIL k-law"));
    r = run({"selftest", "--suite", "gadgets", "--profile", "halts@3"});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("PASS gadgets"));
}

TEST_CASE("perm") {
    CHECK(run({"perm", "1->2,2->1", "a1 (K a2)"}).out == "a2 (K a1)\n");
    CHECK(run({"perm", "z[1->2,2->3,3->1]"}).out == "[1->2,2->3,3->1] inverse [1->3,2->1,3->2]\n");
}
