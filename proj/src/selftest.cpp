#include "selftest.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "constructions.hpp"
#include "decide.hpp"

namespace naclog {

namespace {

struct Suite {
    SelftestResult* res;
    void run(const std::string& name, const std::function<std::string()>& body) {
        std::string why;
        try {
            why = body();
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (why.empty()) {
            res->lines.push_back("ok - " + name);
        } else {
            res->ok = false;
            res->lines.push_back("FAIL - " + name + ": " + why);
        }
    }
};

std::vector<FiniteAlgebra> interior_pool(int max_n) {
    std::vector<FiniteAlgebra> out;
    for (int n = 1; n <= max_n; n++) {
        for (const auto& A : enumerate_algebras(n, parse_class("interior"))) out.push_back(A);
        for (const auto& A : enumerate_algebras(n, parse_class("interior0"))) out.push_back(A);
    }
    return out;
}

}  // namespace

SelftestResult run_selftest(bool thorough) {
    SelftestResult res;
    Suite s{&res};
    int max_n = thorough ? 3 : 2;

    s.run("galois and nucleus laws", [&]() -> std::string {
        for (const auto& A : interior_pool(max_n)) {
            Frame F = dm_frame(A).frame;
            long long space = 1LL << F.gn;
            for (long long m = 0; m < space; m++) {
                Bitset X(F.gn);
                for (int i = 0; i < F.gn; i++)
                    if (m & (1LL << i)) X.set(i);
                Bitset g = gamma(F, X);
                if (!X.subset_of(g)) return "closure not extensive";
                if (!(gamma(F, g) == g)) return "closure not idempotent";
                if (!(polarity_right(F, g) == polarity_right(F, X)))
                    return "triple polarity unstable";
                for (long long m2 = 0; m2 < space; m2++) {
                    Bitset Y(F.gn);
                    for (int i = 0; i < F.gn; i++)
                        if (m2 & (1LL << i)) Y.set(i);
                    Bitset lhs(F.gn), prodset(F.gn);
                    for (int a : g.members())
                        for (int b : gamma(F, Y).members()) lhs.set(F.gprod(a, b));
                    for (int a : X.members())
                        for (int b : Y.members()) prodset.set(F.gprod(a, b));
                    if (!lhs.subset_of(gamma(F, prodset))) return "nucleus law fails";
                }
            }
        }
        return "";
    });

    s.run("frame rule correspondence", [&]() -> std::string {
        for (const auto& A : interior_pool(max_n)) {
            Frame F = dm_frame(A).frame;
            FPlusAlgebra fp = frame_plus(F);
            for (FrameRule r : {FrameRule::E, FrameRule::C, FrameRule::I, FrameRule::Ki,
                                FrameRule::Kc, FrameRule::Ke, FrameRule::Ka1, FrameRule::Ka2}) {
                if (check_frame_rule(F, r) != equation_holds(fp.alg, frame_rule_equation(r)))
                    return std::string("rule/equation mismatch at ") + frame_rule_name(r);
            }
        }
        return "";
    });

    s.run("completions pass their class checks", [&]() -> std::string {
        for (const auto& A : interior_pool(max_n)) {
            FPlusAlgebra fp = frame_plus(dm_frame(A).frame);
            AlgebraClass cls{A.zero ? AlgBase::Interior0 : AlgBase::Interior, {}};
            ClassReport rep = check_class(fp.alg, cls);
            if (!rep.ok) return rep.message;
        }
        return "";
    });

    s.run("embeddings are injective homomorphisms", [&]() -> std::string {
        for (const auto& A : interior_pool(max_n)) {
            BuiltFrame bf = dm_frame(A);
            FPlusAlgebra fp = frame_plus(bf.frame);
            if (auto bad = verify_embedding(A, Bitset::full(A.n), bf, fp)) return *bad;
            long long subsets = 1LL << A.n;
            for (long long m = 0; m < subsets; m++) {
                Bitset B(A.n);
                for (int i = 0; i < A.n; i++)
                    if (m & (1LL << i)) B.set(i);
                BuiltFrame fbf = fep_frame(A, B, false);
                FPlusAlgebra ffp = frame_plus(fbf.frame);
                if (auto bad = verify_embedding(A, B, fbf, ffp)) return *bad;
            }
        }
        return "";
    });

    s.run("star extension battery", [&]() -> std::string {
        for (int n = 1; n <= max_n; n++) {
            for (const auto& A : enumerate_algebras(n, parse_class("rlug"))) {
                StarAlgebra st = star_extension(A);  // internal cross-checks throw
                ClassReport rep = check_class(st.alg, parse_class("cyinrlug"));
                if (!rep.ok) return rep.message;
            }
        }
        return "";
    });

    s.run("central core completion", [&]() -> std::string {
        for (int n = 1; n <= max_n; n++) {
            for (const auto& A : enumerate_algebras(n, parse_class("inrlug"))) {
                ConucleusCompletion c = dm_with_conucleus(A);
                bool cyc = check_class(A, parse_class("cyinrlug")).ok;
                ClassReport rep =
                    check_class(c.fplus.alg, parse_class(cyc ? "naccll" : "naccll-"));
                if (!rep.ok) return rep.message;
            }
        }
        return "";
    });

    s.run("serialization round trips", [&]() -> std::string {
        for (const auto& A : interior_pool(2)) {
            if (!(parse_algebra(algebra_to_string(A)) == A)) return "algebra round trip";
            Frame F = dm_frame(A).frame;
            if (frame_to_string(parse_frame(frame_to_string(F))) != frame_to_string(F))
                return "frame round trip";
        }
        std::mt19937_64 rng(11);
        for (int i = 0; i < 50; i++) {
            std::vector<std::string> vars = {"a", "b"};
            auto fs = formulas_up_to(vars, Fragment::all(), 3);
            Formula f = fs[rng() % fs.size()];
            Sequent q(StructTerm::leaf(f), fs[rng() % fs.size()]);
            if (!(parse_sequent(q.to_string()) == q)) return "sequent round trip";
        }
        return "";
    });

    s.run("prover and refuter never disagree on a sample corpus", [&]() -> std::string {
        SearchLimits lim;
        lim.backward_depth = 6;
        lim.forward_stages = 1;
        lim.work_budget = 100'000;
        struct Q {
            const char* logic;
            const char* goal;
        };
        Q corpus[] = {
            {"fnl", "a => a"},          {"fnl", "a => b"},
            {"fnl+e", "(a . b) => (b . a)"}, {"fnl", "(a . b) => (b . a)"},
            {"nacill", "!a => a"},      {"nacill", "a => !a"},
            {"nacill+i", "(a o b) => a"},   {"naccll", "(a \\ 0) => (0 / a)"},
        };
        for (const auto& q : corpus) {
            LogicSpec logic = parse_logic_spec(q.logic);
            Verdict v = decide(parse_sequent(q.goal), logic, {}, lim);
            if (v.status == Verdict::Status::Provable) {
                CheckResult chk = check_proof(*v.proof, logic, {});
                if (!chk.ok) return chk.message;
                auto cm = find_countermodel(parse_sequent(q.goal), {}, spec_to_class(logic), 2);
                if (cm.has_value()) return std::string("both proof and countermodel for ") + q.goal;
            } else if (v.status == Verdict::Status::Refuted) {
                if (sequent_holds(v.countermodel->algebra, v.countermodel->valuation,
                                  parse_sequent(q.goal)))
                    return std::string("countermodel does not refute ") + q.goal;
                if (prove_backward(parse_sequent(q.goal), logic, 5).has_value())
                    return std::string("both proof and countermodel for ") + q.goal;
            }
        }
        return "";
    });

    return res;
}

}  // namespace naclog
