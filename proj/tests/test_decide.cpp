#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "decide.hpp"
#include "doctest.h"

using namespace naclog;

namespace {
Sequent sq(const char* s) { return parse_sequent(s); }
SearchLimits quick_limits() {
    SearchLimits lim;
    lim.backward_depth = 8;
    lim.forward_stages = 2;
    lim.work_budget = 400'000;
    lim.budget_ms = 30'000;
    return lim;
}
}  // namespace

TEST_CASE("spec_to_class examples") {
    AlgebraClass c1 = spec_to_class(parse_logic_spec("nacill+eci"));
    CHECK(c1.base == AlgBase::NACILL);
    CHECK(c1.equations == std::set<Eq>{Eq::E, Eq::C, Eq::I});

    AlgebraClass c2 = spec_to_class(parse_logic_spec("cyinfnl+w"));
    CHECK(c2.base == AlgBase::CyInRLUG);
    CHECK(c2.equations == std::set<Eq>{Eq::I, Eq::O});

    AlgebraClass c3 = spec_to_class(parse_logic_spec("fnl"));
    CHECK(c3.base == AlgBase::RLUG);
    CHECK(c3.equations.empty());

    // uncovered combinations are reported, not guessed
    CHECK_THROWS_AS(spec_to_class(parse_logic_spec("fnl+a")), error);
    CHECK_THROWS_AS(spec_to_class(parse_logic_spec("infnl+i")), error);  // (w) only as a pair
    CHECK(spec_to_class(parse_logic_spec("infnl+w")).base == AlgBase::InRLUG);
    CHECK(spec_to_class(parse_logic_spec("nacill0+o")).base == AlgBase::NACILL0);
}

TEST_CASE("prove_backward basics") {
    LogicSpec nacill = parse_logic_spec("nacill");

    // e => 1 at depth 0
    auto p = prove_backward(sq("e => 1"), nacill, 0);
    REQUIRE(p.has_value());
    CHECK(p->rule().id == RuleId::OneR);
    CHECK(check_proof(*p, nacill, {}).ok);

    // !a => a within depth 2
    p = prove_backward(sq("!a => a"), nacill, 2);
    REQUIRE(p.has_value());
    CHECK(p->height() <= 2);
    CHECK(check_proof(*p, nacill, {}).ok);

    // !a => !!a exercises the K side condition of (=>!)
    p = prove_backward(sq("!a => !!a"), nacill, 2);
    REQUIRE(p.has_value());
    CHECK(check_proof(*p, nacill, {}).ok);
    bool uses_bangr = false;
    std::function<void(const Proof&)> scan = [&](const Proof& pr) {
        if (pr.rule().id == RuleId::BangR) uses_bangr = true;
        for (const auto& q : pr.premises()) scan(q);
    };
    scan(*p);
    CHECK(uses_bangr);

    // not provable: a => b at any depth (finishes definitively)
    CHECK(!prove_backward(sq("a => b"), nacill, 6).has_value());
}

TEST_CASE("prove_backward needs the right structural rules") {
    CHECK(!prove_backward(sq("(a o b) => a"), parse_logic_spec("fnl"), 4).has_value());
    CHECK(prove_backward(sq("(a o b) => a"), parse_logic_spec("fnl+i"), 4).has_value());
    CHECK(!prove_backward(sq("(a . b) => (b . a)"), parse_logic_spec("fnl"), 6).has_value());
    CHECK(prove_backward(sq("(a . b) => (b . a)"), parse_logic_spec("fnl+e"), 6).has_value());
    CHECK(prove_backward(sq("a => (a . a)"), parse_logic_spec("fnl+c"), 6).has_value());
    CHECK(prove_backward(sq("!a => 1"), parse_logic_spec("nacill"), 4).has_value());
    CHECK(prove_backward(sq("(b o !a) => (!a . b)"), parse_logic_spec("nacill"), 6).has_value());
}

TEST_CASE("enumerate_deducible basics") {
    LogicSpec fnl = parse_logic_spec("fnl");
    SearchLimits lim = quick_limits();

    // cut through the hypotheses
    auto p = enumerate_deducible(fnl, {sq("a => b"), sq("b => c")}, sq("a => c"), lim);
    REQUIRE(p.has_value());
    CHECK(check_proof(*p, fnl, {sq("a => b"), sq("b => c")}).ok);
    bool uses_cut = false;
    std::function<void(const Proof&)> scan = [&](const Proof& pr) {
        if (pr.rule().id == RuleId::Cut) uses_cut = true;
        for (const auto& q : pr.premises()) scan(q);
    };
    scan(*p);
    CHECK(uses_cut);

    // immediate hit
    p = enumerate_deducible(fnl, {}, sq("a => a"), lim);
    REQUIRE(p.has_value());

    // no proof exists; the budget runs out or the stages finish
    SearchLimits tiny = lim;
    tiny.work_budget = 20'000;
    tiny.forward_stages = 1;
    CHECK(!enumerate_deducible(fnl, {}, sq("a => b"), tiny).has_value());
}

TEST_CASE("decide basics") {
    SearchLimits lim = quick_limits();

    Verdict v = decide(sq("a => a"), parse_logic_spec("fnl"), {}, lim);
    CHECK(v.status == Verdict::Status::Provable);

    v = decide(sq("(a . (b . c)) => ((a . b) . c)"), parse_logic_spec("fnl"), {}, lim);
    REQUIRE(v.status == Verdict::Status::Refuted);
    CHECK(v.countermodel->algebra.n == 4);

    v = decide(sq("a => b"), parse_logic_spec("fnl"), {sq("a => b")}, lim);
    CHECK(v.status == Verdict::Status::Provable);
    CHECK(v.proof->rule().id == RuleId::Assumption);
}

TEST_CASE("decide is deterministic") {
    SearchLimits lim = quick_limits();
    Verdict v1 = decide(sq("(a . b) => (b . a)"), parse_logic_spec("fnl"), {}, lim);
    Verdict v2 = decide(sq("(a . b) => (b . a)"), parse_logic_spec("fnl"), {}, lim);
    REQUIRE(v1.status == Verdict::Status::Refuted);
    REQUIRE(v2.status == Verdict::Status::Refuted);
    CHECK(v1.countermodel->algebra == v2.countermodel->algebra);
    CHECK(v1.countermodel->valuation == v2.countermodel->valuation);
    std::string r1 = verdict_to_record("q", parse_logic_spec("fnl"), v1, lim);
    std::string r2 = verdict_to_record("q", parse_logic_spec("fnl"), v2, lim);
    CHECK(r1 == r2);
}

TEST_CASE("decide returns exhausted when neither side can answer") {
    // (a\0)/b => a\(0/b) is valid in every rluz-groupoid of size <= 3
    // (they are all associative) but not cut-free provable in nacill0
    SearchLimits lim = quick_limits();
    lim.work_budget = 2'000'000;
    Verdict v = decide(sq("((a \\ 0) / b) => (a \\ (0 / b))"), parse_logic_spec("nacill0"), {},
                       lim);
    CHECK(v.status == Verdict::Status::Exhausted);
    CHECK(v.info.algebra_size_reached == 3);

    // same sequent is an initial sequent classically
    Verdict w = decide(sq("((a \\ 0) / b) => (a \\ (0 / b))"), parse_logic_spec("naccll-"), {},
                       lim);
    CHECK(w.status == Verdict::Status::Provable);
}

TEST_CASE("decide with internalization worker (classical specs)") {
    SearchLimits lim = quick_limits();
    LogicSpec naccll = parse_logic_spec("naccll+w");

    Verdict v = decide(sq("a => c"), naccll, {sq("a => b"), sq("b => c")}, lim);
    REQUIRE(v.status == Verdict::Status::Provable);
    CHECK(check_proof(*v.proof, naccll, {sq("a => b"), sq("b => c")}).ok);

    Verdict w = decide(sq("b => a"), naccll, {sq("a => b")}, lim);
    REQUIRE(w.status == Verdict::Status::Refuted);
    CHECK(sequent_holds(w.countermodel->algebra, w.countermodel->valuation, sq("a => b")));
    CHECK(!sequent_holds(w.countermodel->algebra, w.countermodel->valuation, sq("b => a")));
}

TEST_CASE("verdict payloads audit independently") {
    SearchLimits lim = quick_limits();
    struct Case {
        const char* logic;
        const char* goal;
    };
    Case cases[] = {
        {"fnl", "a => a"},
        {"fnl+e", "(a . b) => (b . a)"},
        {"nacill", "!a => !!a"},
        {"nacill0+w", "0 => !0"},
        {"naccll", "(a \\ 0) => (0 / a)"},
        {"fnl", "a => b"},
        {"nacill", "a => !a"},
    };
    for (const auto& c : cases) {
        LogicSpec logic = parse_logic_spec(c.logic);
        Verdict v = decide(parse_sequent(c.goal), logic, {}, lim);
        CAPTURE(c.goal);
        if (v.status == Verdict::Status::Provable) {
            CHECK(check_proof(*v.proof, logic, {}).ok);
        } else if (v.status == Verdict::Status::Refuted) {
            CHECK(!sequent_holds(v.countermodel->algebra, v.countermodel->valuation,
                                 parse_sequent(c.goal)));
            CHECK(check_class(v.countermodel->algebra, spec_to_class(logic)).ok);
        } else {
            CHECK(false);  // all of these are decidable at these limits
        }
    }
}

TEST_CASE("records are stable and machine readable") {
    SearchLimits lim = quick_limits();
    LogicSpec fnl = parse_logic_spec("fnl");
    Verdict v = decide(sq("a => a"), fnl, {}, lim);
    std::string rec = verdict_to_record("a => a", fnl, v, lim);
    CHECK(rec.find("\"status\":\"provable\"") != std::string::npos);
    CHECK(rec.find("\"query\":\"a => a\"") != std::string::npos);
    CHECK(rec.find("\"proof\"") != std::string::npos);

    Verdict r = decide(sq("a => b"), fnl, {}, lim);
    rec = verdict_to_record("a => b", fnl, r, lim);
    CHECK(rec.find("\"status\":\"refuted\"") != std::string::npos);
    CHECK(rec.find("\"size\":2") != std::string::npos);
}

TEST_CASE("backward and forward provers agree on small provable goals") {
    struct Q {
        const char* logic;
        const char* goal;
    };
    Q cases[] = {
        {"fnl", "e => 1"},
        {"fnl", "(a o b) => (a . b)"},
        {"fnl", "a => (1 . a)"},
        {"fnl+e", "(a . b) => (b . a)"},
        {"fnl+i", "(a o b) => a"},
        {"nacill", "!a => a"},
        {"nacill", "!a => 1"},
        {"nacill0", "0 => 0"},
        {"infnl", "(0 / (a \\ 0)) => a"},
    };
    SearchLimits lim;
    lim.forward_stages = 1;
    lim.work_budget = 2'000'000;
    for (const auto& c : cases) {
        LogicSpec logic = parse_logic_spec(c.logic);
        Sequent goal = parse_sequent(c.goal);
        auto b = prove_backward(goal, logic, 8);
        REQUIRE_MESSAGE(b.has_value(), c.goal);
        auto f = enumerate_deducible(logic, {}, goal, lim);
        CAPTURE(c.goal);
        REQUIRE(f.has_value());
        CHECK(check_proof(*f, logic, {}).ok);
    }
}

TEST_CASE("proof serialization golden file") {
    LogicSpec nacill = parse_logic_spec("nacill");
    auto p = prove_backward(parse_sequent("!(a /\\ b) => (!a . !b)"), nacill, 8);
    REQUIRE(p.has_value());
    std::ifstream golden(std::string(NACLOG_TESTS_DIR) + "/data/proof_bang_chain.golden");
    REQUIRE(golden.good());
    std::stringstream want;
    want << golden.rdbuf();
    CHECK(proof_to_string(*p) == want.str());
}

TEST_CASE("goal outside fragment is an error") {
    SearchLimits lim = quick_limits();
    CHECK_THROWS_AS(decide(sq("!a => a"), parse_logic_spec("fnl"), {}, lim), error);
    CHECK_THROWS_AS(decide(sq("a => a"), parse_logic_spec("fnl"), {sq("!a => a")}, lim), error);
}
