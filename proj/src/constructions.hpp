#ifndef NACLOG_CONSTRUCTIONS_HPP
#define NACLOG_CONSTRUCTIONS_HPP

#include <vector>

#include "calculus.hpp"
#include "frames.hpp"

namespace naclog {

// Cyclic bounded involutive extension of an rlu-groupoid on 2n+2 elements.
// Element layout: 0..n-1 the original carrier, n..2n-1 the negated copy
// (x~ = n + x), 2n the top, 2n+1 the bottom. zero = 1~, neg is the
// involution table.
struct StarAlgebra {
    FiniteAlgebra alg;  // carries neg
    int top = 0;
    int bottom = 0;
};

// Builds A*. The residual tables come from the defining equations
// x\*z = ~(~z.x), z/*x = ~(x.~z) and are cross-checked against the
// brute-force residuals; disagreement is a hard error.
StarAlgebra star_extension(const FiniteAlgebra& A);

// S = { x | x<=1, x=x.x, x central, x associates on both sides }.
std::vector<int> central_core(const FiniteAlgebra& A);

// DM completion of an involutive rluz-groupoid equipped with the conucleus
// !X = gamma(X /\ S); lands in naccll- (or naccll for cyclic inputs).
struct ConucleusCompletion {
    FPlusAlgebra fplus;
    BuiltFrame frame;
    std::vector<int> core;  // S inside the input algebra
};
ConucleusCompletion dm_with_conucleus(const FiniteAlgebra& A);

// tau(x => d) = !(rho(x) \ theta(d))
Formula tau(const Sequent& s);

// goal x => d with hypotheses s1..sn becomes
// (x o (tau(s1) o (... o tau(sn)))) => d; the empty list returns the goal.
Sequent internalize(const std::vector<Sequent>& assumptions, const Sequent& goal);

}  // namespace naclog

#endif
