#include "constructions.hpp"

namespace naclog {

StarAlgebra star_extension(const FiniteAlgebra& A) {
    ClassReport rep = check_class(A, AlgebraClass{AlgBase::RLUG, {}});
    if (!rep.ok) throw error("star_extension: input fails " + rep.message);

    int n = A.n;
    int m = 2 * n + 2;
    int top = 2 * n, bot = 2 * n + 1;
    auto ng = [&](int x) { return n + x; };  // x~ for x in A

    StarAlgebra out;
    out.top = top;
    out.bottom = bot;
    FiniteAlgebra& S = out.alg;
    S.n = m;
    S.one = A.one;
    S.zero = ng(A.one);  // 0 = 1~

    // order: bot < A (as before) < A~ (reversed) < top
    auto leq = [&](int x, int y) -> bool {
        if (x == y) return true;
        if (x == bot || y == top) return true;
        if (x == top || y == bot) return false;
        bool xa = x < n, ya = y < n;
        if (xa && ya) return A.leq(x, y);
        if (!xa && !ya) return A.leq(y - n, x - n);
        return xa;  // a < b~ always, b~ < a never
    };
    S.meet.assign(m * m, 0);
    S.join.assign(m * m, 0);
    for (int x = 0; x < m; x++)
        for (int y = 0; y < m; y++) {
            int mt, jn;
            if (leq(x, y)) {
                mt = x;
                jn = y;
            } else if (leq(y, x)) {
                mt = y;
                jn = x;
            } else if (x < n && y < n) {
                mt = A.mt(x, y);
                jn = A.jn(x, y);
            } else if (x >= n && x < 2 * n && y >= n && y < 2 * n) {
                // inf{a~,b~} = (a \/ b)~ and sup{a~,b~} = (a /\ b)~
                mt = ng(A.jn(x - n, y - n));
                jn = ng(A.mt(x - n, y - n));
            } else {
                throw error("star_extension: incomparable across layers");
            }
            S.meet[x * m + y] = mt;
            S.join[x * m + y] = jn;
        }

    // multiplication cases
    S.prod.assign(m * m, 0);
    auto star_prod = [&](int x, int y) -> int {
        if (x == bot || y == bot) return bot;
        if (x == top || y == top) return top;
        bool xa = x < n, ya = y < n;
        if (xa && ya) return A.pd(x, y);
        if (xa && !ya) return ng(A.rd(y - n, x));  // x . y~ = (y/x)~
        if (!xa && ya) return ng(A.ld(y, x - n));  // x~ . y = (y\x)~
        return top;                                // x~ . y~ = top
    };
    for (int x = 0; x < m; x++)
        for (int y = 0; y < m; y++) S.prod[x * m + y] = star_prod(x, y);

    // involution
    S.neg = std::vector<int>(m, 0);
    for (int x = 0; x < n; x++) {
        (*S.neg)[x] = ng(x);
        (*S.neg)[ng(x)] = x;
    }
    (*S.neg)[top] = bot;
    (*S.neg)[bot] = top;
    auto ng_of = [&](int x) { return (*S.neg)[x]; };

    // residuals by the defining equations
    S.ldiv.assign(m * m, 0);
    S.rdiv.assign(m * m, 0);
    for (int x = 0; x < m; x++)
        for (int z = 0; z < m; z++) {
            S.ldiv[x * m + z] = ng_of(star_prod(ng_of(z), x));  // x\z = ~(~z . x)
            S.rdiv[z * m + x] = ng_of(star_prod(x, ng_of(z)));  // z/x = ~(x . ~z)
        }

    // cross-check against brute-force residuals
    for (int x = 0; x < m; x++)
        for (int z = 0; z < m; z++) {
            int bl = -1, br = -1;
            for (int y = 0; y < m; y++) {
                if (leq(star_prod(x, y), z)) bl = bl == -1 ? y : S.jn(bl, y);
                if (leq(star_prod(y, x), z)) br = br == -1 ? y : S.jn(br, y);
            }
            if (bl != S.ld(x, z) || !leq(star_prod(x, bl), z))
                throw error("star_extension: left residual mismatch at x=" + std::to_string(x) +
                            " z=" + std::to_string(z));
            if (br != S.rd(z, x) || !leq(star_prod(br, x), z))
                throw error("star_extension: right residual mismatch at x=" + std::to_string(x) +
                            " z=" + std::to_string(z));
        }

    rep = check_class(S, AlgebraClass{AlgBase::CyInRLUG, {}});
    if (!rep.ok) throw error("star_extension: result fails " + rep.message);
    return out;
}

std::vector<int> central_core(const FiniteAlgebra& A) {
    std::vector<int> out;
    for (int x = 0; x < A.n; x++) {
        if (!A.leq(x, A.one)) continue;
        if (A.pd(x, x) != x) continue;
        bool ok = true;
        for (int a = 0; a < A.n && ok; a++) {
            if (A.pd(x, a) != A.pd(a, x)) ok = false;
            for (int b = 0; b < A.n && ok; b++) {
                if (A.pd(x, A.pd(a, b)) != A.pd(A.pd(x, a), b)) ok = false;
                if (A.pd(A.pd(a, b), x) != A.pd(a, A.pd(b, x))) ok = false;
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

ConucleusCompletion dm_with_conucleus(const FiniteAlgebra& A) {
    ClassReport rep = check_class(A, AlgebraClass{AlgBase::InRLUG, {}});
    if (!rep.ok) throw error("dm_with_conucleus: input fails " + rep.message);
    bool cyclic = check_class(A, AlgebraClass{AlgBase::CyInRLUG, {}}).ok;

    ConucleusCompletion out;
    out.core = central_core(A);
    Bitset K(A.n);
    for (int s : out.core) K.set(s);
    out.frame = dm_frame_with_k(A, K);
    out.fplus = frame_plus(out.frame.frame);

    AlgebraClass target{cyclic ? AlgBase::NACCLL : AlgBase::NACCLLminus, {}};
    rep = check_class(out.fplus.alg, target);
    if (!rep.ok) throw error("dm_with_conucleus: completion fails " + rep.message);
    auto bad = verify_embedding(A, Bitset::full(A.n), out.frame, out.fplus);
    if (bad) throw error("dm_with_conucleus: embedding fails: " + *bad);
    return out;
}

Formula tau(const Sequent& s) {
    return Formula::bang(Formula::ldiv(rho(s.antecedent()), theta(s.succedent_opt())));
}

Sequent internalize(const std::vector<Sequent>& assumptions, const Sequent& goal) {
    if (assumptions.empty()) return goal;
    StructTerm chain = StructTerm::leaf(tau(assumptions.back()));
    for (std::size_t i = assumptions.size() - 1; i-- > 0;)
        chain = StructTerm::node(StructTerm::leaf(tau(assumptions[i])), chain);
    StructTerm ant = StructTerm::node(goal.antecedent(), chain);
    if (goal.has_empty_stoup()) return Sequent::with_empty_stoup(ant);
    return Sequent(ant, goal.succedent());
}

}  // namespace naclog
