#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "calculus.hpp"
#include "doctest.h"

using namespace naclog;

namespace {

Formula v(const char* n) { return Formula::var(n); }
Sequent sq(const char* s) { return parse_sequent(s); }

Formula random_formula(std::mt19937_64& rng, int depth, const Fragment& frag) {
    std::vector<Conn> conns = {Conn::Var, Conn::Var};
    if (frag.has(Conn::One)) conns.push_back(Conn::One);
    if (frag.has(Conn::Zero)) conns.push_back(Conn::Zero);
    if (depth > 0)
        for (Conn c : {Conn::Bang, Conn::Meet, Conn::Join, Conn::Prod, Conn::Ldiv, Conn::Rdiv})
            if (frag.has(c)) conns.push_back(c);
    Conn c = conns[rng() % conns.size()];
    static const char* names[] = {"a", "b", "c"};
    switch (c) {
        case Conn::Var: return Formula::var(names[rng() % 3]);
        case Conn::One: return Formula::one();
        case Conn::Zero: return Formula::zero();
        case Conn::Bang: return Formula::bang(random_formula(rng, depth - 1, frag));
        default:
            return Formula::binary(c, random_formula(rng, depth - 1, frag),
                                   random_formula(rng, depth - 1, frag));
    }
}

StructTerm random_term(std::mt19937_64& rng, int depth, const Fragment& frag) {
    unsigned r = rng() % (depth > 0 ? 4u : 2u);
    if (r == 0 && depth > 0) return StructTerm::unit();
    if (r <= 1 || depth == 0) return StructTerm::leaf(random_formula(rng, 2, frag));
    return StructTerm::node(random_term(rng, depth - 1, frag), random_term(rng, depth - 1, frag));
}

Sequent random_sequent(std::mt19937_64& rng, const LogicSpec& logic) {
    StructTerm ant = random_term(rng, 3, logic.fragment);
    if (logic.fragment.has(Conn::Zero) && rng() % 6 == 0)
        return Sequent::with_empty_stoup(ant);
    return Sequent(ant, random_formula(rng, 2, logic.fragment));
}

}  // namespace

TEST_CASE("logic spec parsing") {
    LogicSpec fnl = parse_logic_spec("fnl");
    CHECK(fnl.fragment == Fragment::full_lambek());
    CHECK(fnl.classical == Classical::None);
    CHECK(!fnl.k_rules_enabled());

    LogicSpec n0 = parse_logic_spec("nacill0+ec");
    CHECK(n0.fragment == Fragment::all());
    CHECK(n0.rule_e);
    CHECK(n0.rule_c);
    CHECK(!n0.rule_i);
    CHECK(n0.k_rules_enabled());

    LogicSpec cy = parse_logic_spec("cyinfnl+w");
    CHECK(cy.classical == Classical::Cyclic);
    CHECK(cy.rule_i);
    CHECK(cy.rule_o);
    CHECK(!cy.fragment.has(Conn::Bang));

    CHECK_THROWS_AS(parse_logic_spec("bogus"), error);
    CHECK_THROWS_AS(parse_logic_spec("fnl+z"), error);
    CHECK_THROWS_AS(parse_logic_spec("fnl+o"), error);  // (o) needs 0
    CHECK_THROWS_AS(parse_logic_spec("nacill+o"), error);
}

TEST_CASE("check_proof accepts canonical derivations") {
    LogicSpec nacill = parse_logic_spec("nacill");

    // [Id: a => a]
    Proof id(RuleApp{RuleId::Id}, sq("a => a"), {});
    CHECK(check_proof(id, nacill, {}).ok);
    CHECK(check_proof(id, parse_logic_spec("fnl"), {}).ok);

    // [Id] then (!=>) gives !a => a
    RuleApp bangl{RuleId::BangL};
    bangl.u = Context::hole();
    bangl.formulas = {v("a")};
    Proof p(bangl, sq("!a => a"), {id});
    CHECK(check_proof(p, nacill, {}).ok);

    // (=>!) with k = a (not a K-term) must be rejected
    Proof bad_leaf(RuleApp{RuleId::Id}, sq("a => a"), {});
    Proof bad(RuleApp{RuleId::BangR}, sq("a => !a"), {bad_leaf});
    CheckResult r = check_proof(bad, nacill, {});
    CHECK(!r.ok);
    CHECK(r.message.find("k must range over K") != std::string::npos);
}

TEST_CASE("check_proof rejects rules outside the logic") {
    Proof id(RuleApp{RuleId::Id}, sq("a => a"), {});
    RuleApp e{RuleId::StructE};
    e.u = Context::hole();
    e.terms = {StructTerm::leaf(v("a")), StructTerm::leaf(v("b"))};
    // (a o b) => ... from (b o a) needs the exchange rule
    Proof pe(e, sq("(b o a) => (b . a)"), {Proof(RuleApp{RuleId::ProdR}, sq("x => x"), {})});
    CHECK(!check_proof(pe, parse_logic_spec("fnl"), {}).ok);
    (void)id;
}

TEST_CASE("assumption leaves") {
    Proof asmp(RuleApp{RuleId::Assumption}, sq("a => b"), {});
    LogicSpec fnl = parse_logic_spec("fnl");
    CHECK(check_proof(asmp, fnl, {sq("a => b")}).ok);
    CHECK(!check_proof(asmp, fnl, {sq("b => a")}).ok);
    CHECK(!check_proof(asmp, fnl, {}).ok);
}

TEST_CASE("backward_instances basics") {
    LogicSpec nacill = parse_logic_spec("nacill");

    // goal !a => a includes ((!=>), u = hole, premise a => a)
    auto insts = backward_instances(sq("!a => a"), nacill);
    bool found = false;
    for (const auto& inst : insts)
        if (inst.app.id == RuleId::BangL && inst.app.u.is_hole() &&
            inst.premises == std::vector<Sequent>{sq("a => a")})
            found = true;
    CHECK(found);

    // goal e => 1 includes the (=>1) initial with no premises
    insts = backward_instances(sq("e => 1"), nacill);
    found = false;
    for (const auto& inst : insts)
        if (inst.app.id == RuleId::OneR && inst.premises.empty()) found = true;
    CHECK(found);

    // goal (a o b) => (a . b) includes (=>.) with premises a => a, b => b
    insts = backward_instances(sq("(a o b) => (a . b)"), nacill);
    found = false;
    for (const auto& inst : insts)
        if (inst.app.id == RuleId::ProdR &&
            inst.premises == std::vector<Sequent>{sq("a => a"), sq("b => b")})
            found = true;
    CHECK(found);
}

TEST_CASE("backward_instances soundness: every instance re-checks") {
    std::mt19937_64 rng(2024);
    std::vector<LogicSpec> logics = {parse_logic_spec("fnl"),       parse_logic_spec("fnl+eci"),
                                     parse_logic_spec("nacill"),    parse_logic_spec("nacill0+w"),
                                     parse_logic_spec("naccll+ec"), parse_logic_spec("infnl+e")};
    for (const auto& logic : logics) {
        for (int i = 0; i < 60; i++) {
            Sequent goal = sequent_normalize(random_sequent(rng, logic));
            for (const auto& inst : backward_instances(goal, logic)) {
                std::string why;
                auto prem = rule_premises(inst.app, goal, logic, &why);
                REQUIRE_MESSAGE(prem.has_value(), why);
                CHECK(*prem == inst.premises);
            }
        }
    }
}

TEST_CASE("backward_instances completeness: root instances of found proofs appear") {
    // whatever the forward search produces must be rediscoverable backward
    // from its conclusion (cut aside, which the fast path never uses)
    for (const char* lname : {"nacill0+w", "naccll+ec", "infnl+e", "fnl+i"}) {
        LogicSpec logic = parse_logic_spec(lname);
        std::vector<Formula> universe = {v("a"), v("b"), Formula::one()};
        ForwardEngine eng(logic, {}, 8, universe);
        long long budget = 20000;
        eng.run(&budget);
        int checked = 0;
        for (const auto& [s, pf] : eng.known()) {
            if (pf.rule().id == RuleId::Assumption || rule_is_initial(pf.rule().id)) continue;
            if (pf.rule().id == RuleId::Cut) continue;
            auto insts = backward_instances(s, logic);
            bool found = false;
            for (const auto& inst : insts) {
                if (inst.app.id != pf.rule().id) continue;
                bool same = inst.premises.size() == pf.premises().size();
                if (same)
                    for (std::size_t i = 0; i < inst.premises.size(); i++)
                        if (!(inst.premises[i] ==
                              sequent_normalize(pf.premises()[i].conclusion())))
                            same = false;
                if (same) found = true;
            }
            CHECK_MESSAGE(found, s.to_string());
            checked++;
            if (checked > 200) break;
        }
        CAPTURE(lname);
        CHECK(checked > 50);
    }
}

TEST_CASE("forward_step basics") {
    LogicSpec nacill = parse_logic_spec("nacill");
    std::vector<Formula> universe = {v("a"), Formula::bang(v("a"))};

    // known = {a => a} adds !a => a
    std::set<Sequent> known = {sq("a => a")};
    auto step = forward_step(known, nacill, {}, 8, universe);
    CHECK(step.count(sq("!a => a")) == 1);

    // known = {} returns the initial sequents within bound
    auto base = forward_step({}, nacill, {}, 8, universe);
    CHECK(base.count(sq("e => 1")) == 1);
    CHECK(base.count(sq("a => a")) == 1);
    CHECK(base.count(sq("!a => !a")) == 1);

    // monotone in known
    for (const auto& s : base) CHECK(step.count(s) == 1);

    // monotone in the size bound
    auto small = forward_step(known, nacill, {}, 6, universe);
    for (const auto& s : small) CHECK(step.count(s) == 1);
}

TEST_CASE("forward closure reaches cut") {
    LogicSpec fnl = parse_logic_spec("fnl");
    std::vector<Formula> universe = {v("a"), v("b"), v("c")};
    ForwardEngine eng(fnl, {sq("a => b"), sq("b => c")}, 8, universe);
    long long budget = 1000000;
    eng.run(&budget);
    REQUIRE(eng.knows(sq("a => c")));
    auto pf = eng.proof_of(sq("a => c"));
    REQUIRE(pf.has_value());
    CHECK(check_proof(*pf, fnl, {sq("a => b"), sq("b => c")}).ok);
}

TEST_CASE("forward engine proofs all re-check") {
    LogicSpec logic = parse_logic_spec("nacill+e");
    std::vector<Formula> universe = {v("a"), Formula::bang(v("a")), v("b")};
    ForwardEngine eng(logic, {sq("a => b")}, 7, universe);
    long long budget = 30000;
    eng.run(&budget);
    CHECK(eng.known().size() > 20);
    for (const auto& [s, pf] : eng.known()) {
        CheckResult r = check_proof(pf, logic, {sq("a => b")});
        std::string msg = s.to_string() + ": " + r.message;
        CHECK_MESSAGE(r.ok, msg);
    }
}

TEST_CASE("unit handling: derived sequents through e-splits") {
    // a => 1 . a needs the x = e split of (=>.)
    LogicSpec fnl = parse_logic_spec("fnl");
    auto insts = backward_instances(sq("a => (1 . a)"), fnl);
    bool found = false;
    for (const auto& inst : insts)
        if (inst.app.id == RuleId::ProdR &&
            inst.premises == std::vector<Sequent>{sq("e => 1"), sq("a => a")})
            found = true;
    CHECK(found);

    // (1 \ a) => a needs the x = e split of (\=>)
    insts = backward_instances(sq("(1 \\ a) => a"), fnl);
    found = false;
    for (const auto& inst : insts)
        if (inst.app.id == RuleId::LdivL &&
            inst.premises == std::vector<Sequent>{sq("e => 1"), sq("a => a")})
            found = true;
    CHECK(found);
}

TEST_CASE("check_proof rejects corrupted proofs") {
    LogicSpec nacill = parse_logic_spec("nacill");
    // a valid derivation of !(a /\ b) => (!a . !b), then systematic damage
    Proof id_a(RuleApp{RuleId::Id}, sq("a => a"), {});
    RuleApp meetl{RuleId::MeetL};
    meetl.u = Context::hole();
    meetl.which = 1;
    meetl.formulas = {v("a"), v("b")};
    Proof pm(meetl, sq("(a /\\ b) => a"), {id_a});
    RuleApp bangl{RuleId::BangL};
    bangl.u = Context::hole();
    bangl.formulas = {Formula::meet(v("a"), v("b"))};
    Proof pb(bangl, sq("!(a /\\ b) => a"), {pm});
    REQUIRE(check_proof(pb, nacill, {}).ok);

    // wrong conclusion antecedent
    Proof bad1(bangl, sq("(!(a /\\ b) o c) => a"), {pm});
    CHECK(!check_proof(bad1, nacill, {}).ok);
    // wrong succedent
    Proof bad2(bangl, sq("!(a /\\ b) => b"), {pm});
    CHECK(!check_proof(bad2, nacill, {}).ok);
    // missing premise
    Proof bad3(bangl, sq("!(a /\\ b) => a"), {});
    CHECK(!check_proof(bad3, nacill, {}).ok);
    // premise conclusion swapped for a different sequent
    Proof bad4(bangl, sq("!(a /\\ b) => a"), {id_a});
    CHECK(!check_proof(bad4, nacill, {}).ok);
    // instantiation formula tampered with
    RuleApp tampered = bangl;
    tampered.formulas = {Formula::meet(v("a"), v("c"))};
    Proof bad5(tampered, sq("!(a /\\ b) => a"), {pm});
    CHECK(!check_proof(bad5, nacill, {}).ok);
    // deep corruption is found and named
    Proof deep(bangl, sq("!(a /\\ b) => a"),
               {Proof(meetl, sq("(a /\\ b) => a"), {Proof(RuleApp{RuleId::Id}, sq("a => b"), {})})});
    CheckResult r = check_proof(deep, nacill, {});
    CHECK(!r.ok);
    // the mismatch surfaces at the inner meet node, which expected a => a
    CHECK(r.message.find("node [0]") != std::string::npos);
    CHECK(r.message.find("a => a") != std::string::npos);
}

TEST_CASE("proof serialization") {
    Proof id(RuleApp{RuleId::Id}, sq("a => a"), {});
    RuleApp bangl{RuleId::BangL};
    bangl.u = Context::hole();
    bangl.formulas = {v("a")};
    Proof p(bangl, sq("!a => a"), {id});
    auto lines = proof_to_lines(p);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "0 id | a => a");
    CHECK(lines[1] == "1 bangL 0 | !a => a");
}

TEST_CASE("classical initial sequents") {
    LogicSpec naccll = parse_logic_spec("naccll");
    LogicSpec nacillz = parse_logic_spec("nacill0");

    // DNE1: 0/(a\0) => a
    Sequent dne1 = sq("(0 / (a \\ 0)) => a");
    bool found = false;
    for (const auto& inst : backward_instances(dne1, naccll))
        if (inst.app.id == RuleId::Dne1) found = true;
    CHECK(found);
    found = false;
    for (const auto& inst : backward_instances(dne1, nacillz))
        if (inst.app.id == RuleId::Dne1) found = true;
    CHECK(!found);  // not an initial sequent intuitionistically

    // CYC both ways, only in cyclic logics
    Sequent cyc = sq("(a \\ 0) => (0 / a)");
    found = false;
    for (const auto& inst : backward_instances(cyc, naccll))
        if (inst.app.id == RuleId::Cyc) found = true;
    CHECK(found);
    found = false;
    for (const auto& inst : backward_instances(cyc, parse_logic_spec("naccll-")))
        if (inst.app.id == RuleId::Cyc) found = true;
    CHECK(!found);

    // COMP
    Sequent comp = sq("((a \\ 0) / b) => (a \\ (0 / b))");
    found = false;
    for (const auto& inst : backward_instances(comp, parse_logic_spec("infnl")))
        if (inst.app.id == RuleId::Comp && !inst.app.reversed) found = true;
    CHECK(found);
}
