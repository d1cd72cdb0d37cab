#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "frames.hpp"

using namespace naclog;

namespace {

FiniteAlgebra two_chain_interior(bool with_zero = true) {
    FiniteAlgebra A;
    A.n = 2;
    A.meet = {0, 0, 0, 1};
    A.join = {0, 1, 1, 1};
    A.prod = {0, 0, 0, 1};
    A.ldiv = {1, 1, 0, 1};
    A.rdiv = {1, 0, 1, 1};
    A.one = 1;
    if (with_zero) A.zero = 0;
    A.bang = std::vector<int>{0, 1};
    return A;
}

Frame trivial_frame() {
    Frame F;
    F.gn = 1;
    F.tn = 1;
    F.prod = {0};
    F.eps = 0;
    F.rel = {1};
    F.lres = {0};
    F.rres = {0};
    F.K = Bitset::full(1);
    return F;
}

Bitset random_subset(std::mt19937_64& rng, int n) {
    Bitset b(n);
    for (int i = 0; i < n; i++)
        if (rng() & 1) b.set(i);
    return b;
}

std::vector<FiniteAlgebra> interior_algebras_up_to(int max_n) {
    std::vector<FiniteAlgebra> out;
    for (int n = 1; n <= max_n; n++) {
        for (const auto& A : enumerate_algebras(n, parse_class("interior"))) out.push_back(A);
        for (const auto& A : enumerate_algebras(n, parse_class("interior0"))) out.push_back(A);
    }
    return out;
}

}  // namespace

TEST_CASE("gamma on the 2-chain DM frame") {
    BuiltFrame bf = dm_frame(two_chain_interior());
    const Frame& F = bf.frame;

    // gamma(empty) = {bottom}
    Bitset empty(2);
    Bitset g = gamma(F, empty);
    CHECK(g.count() == 1);
    CHECK(g.test(0));

    // gamma is idempotent on a closed set
    CHECK(gamma(F, g) == g);

    // gamma({eps}) = principal downset of 1 = everything in the 2-chain
    Bitset unit(2);
    unit.set(F.eps);
    Bitset gu = gamma(F, unit);
    CHECK(gu == Bitset::full(2));
}

TEST_CASE("galois laws hold exhaustively on small frames") {
    std::vector<Frame> frames = {trivial_frame(), dm_frame(two_chain_interior()).frame};
    for (const auto& A : interior_algebras_up_to(3)) {
        frames.push_back(dm_frame(A).frame);
        Bitset full = Bitset::full(A.n);
        frames.push_back(fep_frame(A, full, false).frame);
    }
    for (const auto& F : frames) {
        REQUIRE(!F.validate().has_value());
        long long space = 1LL << F.gn;
        for (long long m = 0; m < space; m++) {
            Bitset X(F.gn);
            for (int i = 0; i < F.gn; i++)
                if (m & (1LL << i)) X.set(i);
            // closure operator laws
            Bitset g = gamma(F, X);
            CHECK(X.subset_of(g));
            CHECK(gamma(F, g) == g);
            // triple polarity
            CHECK(polarity_right(F, gamma(F, X)) == polarity_right(F, X));
            for (long long m2 = 0; m2 < space; m2++) {
                Bitset Y(F.gn);
                for (int i = 0; i < F.gn; i++)
                    if (m2 & (1LL << i)) Y.set(i);
                // antitone polarities
                if (X.subset_of(Y)) CHECK(polarity_right(F, Y).subset_of(polarity_right(F, X)));
                // nucleus law gamma(X) o gamma(Y) subset of gamma(X o Y)
                Bitset gx = gamma(F, X), gy = gamma(F, Y);
                Bitset lhs(F.gn), rhs(F.gn);
                for (int a : gx.members())
                    for (int b : gy.members()) lhs.set(F.gprod(a, b));
                for (int a : X.members())
                    for (int b : Y.members()) rhs.set(F.gprod(a, b));
                CHECK(lhs.subset_of(gamma(F, rhs)));
            }
        }
    }
}

TEST_CASE("frame_plus of the 2-chain DM frame is the 2-chain again") {
    BuiltFrame bf = dm_frame(two_chain_interior());
    FPlusAlgebra fp = frame_plus(bf.frame);
    CHECK(fp.alg.n == 2);
    CHECK(check_class(fp.alg, parse_class("interior0")).ok);
    // and the trivial frame gives the one-element algebra
    FPlusAlgebra tp = frame_plus(trivial_frame());
    CHECK(tp.alg.n == 1);
}

TEST_CASE("frame_plus output is a complete interior rlu(z)-groupoid") {
    for (const auto& A : interior_algebras_up_to(3)) {
        BuiltFrame bf = dm_frame(A);
        FPlusAlgebra fp = frame_plus(bf.frame);
        AlgebraClass cls{A.zero ? AlgBase::Interior0 : AlgBase::Interior, {}};
        ClassReport rep = check_class(fp.alg, cls);
        CHECK_MESSAGE(rep.ok, rep.message);
        // conucleus sanity on every closed set
        for (int i = 0; i < fp.alg.n; i++) {
            CHECK(fp.alg.leq(fp.alg.bg(i), i));
            CHECK(fp.alg.bg(fp.alg.bg(i)) == fp.alg.bg(i));
        }
    }
}

TEST_CASE("dm_frame basics") {
    BuiltFrame bf = dm_frame(two_chain_interior());
    const Frame& F = bf.frame;
    // N = <=: pairs (0,0),(0,1),(1,1)
    CHECK(F.N(0, 0));
    CHECK(F.N(0, 1));
    CHECK(F.N(1, 1));
    CHECK(!F.N(1, 0));
    // eps of G is 1 of A
    CHECK(F.eps == 1);
    // K = image of bang contains 1 (since !1 = 1)
    CHECK(F.K.test(1));

    FiniteAlgebra bad = two_chain_interior();
    bad.bang = std::vector<int>{1, 1};  // not contracting
    CHECK_THROWS_AS(dm_frame(bad), error);
}

TEST_CASE("fep_frame basics") {
    FiniteAlgebra A = two_chain_interior();

    // B = full carrier: G_B = A and the embedding is injective+preserving
    BuiltFrame bf = fep_frame(A, Bitset::full(2), false);
    CHECK(bf.frame.gn == 2);
    FPlusAlgebra fp = frame_plus(bf.frame);
    CHECK(fp.alg.n == 2);
    CHECK(!verify_embedding(A, Bitset::full(2), bf, fp).has_value());

    // B = {1}: the subgroupoid is {1} and saturation stops at the identity
    Bitset b1(2);
    b1.set(1);
    BuiltFrame small = fep_frame(A, b1, false);
    CHECK(small.frame.gn == 1);
    FPlusAlgebra sp = frame_plus(small.frame);
    CHECK(sp.alg.n >= 1);

    // zero-bounded input: {eps}^< is the least closed set
    BuiltFrame zf = fep_frame(A, Bitset::full(2), true);
    REQUIRE(zf.frame.eps_t.has_value());
    FPlusAlgebra zp = frame_plus(zf.frame);
    REQUIRE(zp.alg.zero.has_value());
    Bitset zset = zp.elems[*zp.alg.zero];
    for (const auto& e : zp.elems) CHECK(zset.subset_of(e));
}

TEST_CASE("fep_frame saturation terminates on every size <= 3 interior algebra") {
    for (const auto& A : interior_algebras_up_to(3)) {
        long long subsets = 1LL << A.n;
        for (long long m = 0; m < subsets; m++) {
            Bitset B(A.n);
            for (int i = 0; i < A.n; i++)
                if (m & (1LL << i)) B.set(i);
            BuiltFrame bf = fep_frame(A, B, false);
            FPlusAlgebra fp = frame_plus(bf.frame);
            CHECK(fp.alg.n >= 1);
            CHECK(fp.alg.n <= (1 << bf.frame.gn));
        }
    }
}

TEST_CASE("embedding suite on enumerated algebras") {
    for (const auto& A : interior_algebras_up_to(3)) {
        // DM embedding of the full algebra
        BuiltFrame bf = dm_frame(A);
        FPlusAlgebra fp = frame_plus(bf.frame);
        auto bad = verify_embedding(A, Bitset::full(A.n), bf, fp);
        CHECK_MESSAGE(!bad.has_value(), bad.value_or(""));
        // unit image: 1 in gamma({eps}) subset of {1}^<
        Bitset ge = gamma(bf.frame, [&] {
            Bitset s(bf.frame.gn);
            s.set(bf.frame.eps);
            return s;
        }());
        CHECK(ge.test(bf.elem_to_g[A.one]));
        CHECK(ge.subset_of(embed_closed_set(bf, A.one)));

        // FEP embeddings for every partial subalgebra
        long long subsets = 1LL << A.n;
        for (long long m = 0; m < subsets; m++) {
            Bitset B(A.n);
            for (int i = 0; i < A.n; i++)
                if (m & (1LL << i)) B.set(i);
            BuiltFrame fbf = fep_frame(A, B, false);
            FPlusAlgebra ffp = frame_plus(fbf.frame);
            auto viol = verify_embedding(A, B, fbf, ffp);
            CHECK_MESSAGE(!viol.has_value(), viol.value_or(""));
        }
    }
}

TEST_CASE("frame rule biconditional (rule holds iff equation holds in F+)") {
    std::vector<FrameRule> rules = {FrameRule::E,  FrameRule::C,  FrameRule::I,  FrameRule::Ki,
                                    FrameRule::Kc, FrameRule::Ke, FrameRule::Ka1, FrameRule::Ka2};
    for (const auto& A : interior_algebras_up_to(3)) {
        std::vector<Frame> frames = {dm_frame(A).frame,
                                     fep_frame(A, Bitset::full(A.n), false).frame};
        for (const auto& F : frames) {
            FPlusAlgebra fp = frame_plus(F);
            for (FrameRule r : rules) {
                bool lhs = check_frame_rule(F, r);
                bool rhs = equation_holds(fp.alg, frame_rule_equation(r));
                CAPTURE(frame_rule_name(r));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("preservation: equations of A carry over to F+") {
    std::vector<Eq> eqs = {Eq::E,     Eq::C,      Eq::I,      Eq::BangC,
                           Eq::BangE, Eq::BangI,  Eq::BangA1, Eq::BangA2};
    for (const auto& A : interior_algebras_up_to(3)) {
        FPlusAlgebra dm = frame_plus(dm_frame(A).frame);
        FPlusAlgebra fep = frame_plus(fep_frame(A, Bitset::full(A.n), false).frame);
        for (Eq e : eqs) {
            if (!equation_holds(A, e)) continue;
            CAPTURE(eq_name(e));
            CHECK(equation_holds(dm.alg, e));
            CHECK(equation_holds(fep.alg, e));
        }
    }
}

TEST_CASE("zero_extension") {
    FiniteAlgebra A = two_chain_interior(false);  // no zero
    FPlusAlgebra fp = frame_plus(dm_frame(A).frame);
    CHECK(!fp.alg.zero.has_value());
    FPlusAlgebra zp = zero_extension(fp);
    REQUIRE(zp.alg.zero.has_value());
    // gamma(empty) is contained in every closed set
    Bitset z = zp.elems[*zp.alg.zero];
    for (const auto& e : zp.elems) CHECK(z.subset_of(e));
    // 0-free reduct unchanged
    CHECK(zp.alg.prod == fp.alg.prod);
    CHECK(zp.alg.meet == fp.alg.meet);
    // trivial algebra: zero = the unique element
    FPlusAlgebra tp = zero_extension(frame_plus(trivial_frame()));
    CHECK(*tp.alg.zero == 0);
}

TEST_CASE("frame serialization round trip") {
    std::vector<Frame> frames = {trivial_frame(), dm_frame(two_chain_interior()).frame,
                                 fep_frame(two_chain_interior(), Bitset::full(2), true).frame};
    for (const auto& F : frames) {
        std::string text = frame_to_string(F);
        Frame G = parse_frame(text);
        CHECK(frame_to_string(G) == text);
    }
}

TEST_CASE("nuclearity violations are reported") {
    Frame F = dm_frame(two_chain_interior()).frame;
    F.lres[0] = 0;
    F.lres[1] = 0;
    F.lres[2] = 0;
    F.lres[3] = 0;
    bool bad = F.validate().has_value();
    if (bad) {
        CHECK_THROWS_AS(frame_plus(F), error);
    } else {
        CHECK(frame_plus(F).alg.n >= 1);
    }
}

TEST_CASE("random subsets: polarity stability") {
    std::mt19937_64 rng(31337);
    for (const auto& A : interior_algebras_up_to(3)) {
        Frame F = dm_frame(A).frame;
        for (int trial = 0; trial < 50; trial++) {
            Bitset X = random_subset(rng, F.gn);
            CHECK(polarity_right(F, polarity_left(F, polarity_right(F, X))) ==
                  polarity_right(F, X));
            Bitset Y(F.tn);
            for (int i = 0; i < F.tn; i++)
                if (rng() & 1) Y.set(i);
            CHECK(polarity_left(F, polarity_right(F, polarity_left(F, Y))) ==
                  polarity_left(F, Y));
        }
    }
}
