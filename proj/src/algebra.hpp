#ifndef NACLOG_ALGEBRA_HPP
#define NACLOG_ALGEBRA_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syntax.hpp"

namespace naclog {

// Operation tables over carrier {0, ..., n-1}. meet/join/prod/ldiv/rdiv are
// n*n row-major; bang and neg are unary rows. neg is only carried by star
// extensions (it is definable as x\0 there; kept for serialization).
struct FiniteAlgebra {
    int n = 0;
    std::vector<int> meet, join, prod, ldiv, rdiv;
    int one = 0;
    std::optional<int> zero;
    std::optional<std::vector<int>> bang;
    std::optional<std::vector<int>> neg;

    int mt(int x, int y) const { return meet[x * n + y]; }
    int jn(int x, int y) const { return join[x * n + y]; }
    int pd(int x, int y) const { return prod[x * n + y]; }
    int ld(int x, int y) const { return ldiv[x * n + y]; }
    int rd(int x, int y) const { return rdiv[x * n + y]; }
    int bg(int x) const { return (*bang)[x]; }
    bool leq(int x, int y) const { return meet[x * n + y] == x; }

    int bottom() const;  // least element of the lattice order
    int top() const;

    std::vector<int> encode() const;  // canonical comparison key
    bool operator==(const FiniteAlgebra& o) const;
};

enum class AlgBase : std::uint8_t {
    RLUG,
    RLUG0,
    Interior,
    Interior0,
    InRLUG,
    CyInRLUG,
    NACILL,
    NACILL0,
    NACCLLminus,
    NACCLL,
};

enum class Eq : std::uint8_t { E, C, I, O, BangE, BangC, BangI, BangA1, BangA2 };

const char* eq_name(Eq e);

struct AlgebraClass {
    AlgBase base = AlgBase::RLUG;
    std::set<Eq> equations;  // extra equations on top of the base

    bool needs_zero() const;
    bool needs_bang() const;
    bool needs_involutive() const;
    bool needs_cyclic() const;
    std::set<Eq> all_equations() const;  // base-implied plus extra
    std::string to_string() const;
};

// Class strings: base name in {rlug, rlug0, interior, interior0, inrlug,
// cyinrlug, nacill, nacill0, naccll-, naccll}, then "+" separated tokens:
// either structural letter runs like "ec" or one of !e !c !i !a1 !a2.
AlgebraClass parse_class(const std::string& text);

struct ClassReport {
    bool ok = true;
    std::string law;              // first violated law
    std::vector<int> witness;     // witnessing elements
    std::string message;
};

// Exhaustively verifies every defining law of cls over the carrier and
// reports the first violation.
ClassReport check_class(const FiniteAlgebra& A, const AlgebraClass& cls);

// Single named equations, used by the frame rule correspondence.
bool equation_holds(const FiniteAlgebra& A, Eq eq);

using Valuation = std::map<std::string, int>;

int eval_formula(const FiniteAlgebra& A, const Valuation& f, const Formula& a);
bool sequent_holds(const FiniteAlgebra& A, const Valuation& f, const Sequent& s);

// One representative per isomorphism class of n-element members of cls, in
// deterministic order. The visitor returns false to stop early.
void enumerate_algebras(int n, const AlgebraClass& cls,
                        const std::function<bool(const FiniteAlgebra&)>& visit);
std::vector<FiniteAlgebra> enumerate_algebras(int n, const AlgebraClass& cls);
// Memoized variant used by the refuter (results are immutable).
const std::vector<FiniteAlgebra>& enumerate_algebras_cached(int n, const AlgebraClass& cls);

struct Countermodel {
    FiniteAlgebra algebra;
    Valuation valuation;
};

// Exhaustive search over sizes 1..max_n and all valuations of the variables
// occurring in the query: all assumptions true, goal false.
std::optional<Countermodel> find_countermodel(const Sequent& goal,
                                              const std::vector<Sequent>& assumptions,
                                              const AlgebraClass& cls, int max_n);

// Text format: n=<k>, then named tables row-per-line, then constants.
std::string algebra_to_string(const FiniteAlgebra& A);
FiniteAlgebra parse_algebra(const std::string& text);

}  // namespace naclog

#endif
