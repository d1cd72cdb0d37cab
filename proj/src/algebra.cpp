#include "algebra.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace naclog {

// ----------------------------------------------------------- FiniteAlgebra

int FiniteAlgebra::bottom() const {
    int b = 0;
    for (int x = 1; x < n; x++)
        if (leq(x, b)) b = x;
    return b;
}

int FiniteAlgebra::top() const {
    int t = 0;
    for (int x = 1; x < n; x++)
        if (leq(t, x)) t = x;
    return t;
}

std::vector<int> FiniteAlgebra::encode() const {
    std::vector<int> out;
    out.reserve(5 * n * n + 2 * n + 3);
    out.insert(out.end(), meet.begin(), meet.end());
    out.insert(out.end(), join.begin(), join.end());
    out.push_back(one);
    out.push_back(zero ? *zero : -1);
    out.insert(out.end(), prod.begin(), prod.end());
    out.insert(out.end(), ldiv.begin(), ldiv.end());
    out.insert(out.end(), rdiv.begin(), rdiv.end());
    if (bang) out.insert(out.end(), bang->begin(), bang->end());
    out.push_back(bang ? 1 : 0);
    return out;
}

bool FiniteAlgebra::operator==(const FiniteAlgebra& o) const {
    return n == o.n && encode() == o.encode() && neg == o.neg;
}

// ------------------------------------------------------------ AlgebraClass

const char* eq_name(Eq e) {
    switch (e) {
        case Eq::E: return "e";
        case Eq::C: return "c";
        case Eq::I: return "i";
        case Eq::O: return "o";
        case Eq::BangE: return "!e";
        case Eq::BangC: return "!c";
        case Eq::BangI: return "!i";
        case Eq::BangA1: return "!a1";
        case Eq::BangA2: return "!a2";
    }
    return "?";
}

bool AlgebraClass::needs_zero() const {
    switch (base) {
        case AlgBase::RLUG:
        case AlgBase::Interior:
        case AlgBase::NACILL: return equations.count(Eq::O) != 0;
        default: return true;
    }
}

bool AlgebraClass::needs_bang() const {
    switch (base) {
        case AlgBase::Interior:
        case AlgBase::Interior0:
        case AlgBase::NACILL:
        case AlgBase::NACILL0:
        case AlgBase::NACCLLminus:
        case AlgBase::NACCLL: return true;
        default:
            for (Eq e : equations)
                if (e == Eq::BangE || e == Eq::BangC || e == Eq::BangI || e == Eq::BangA1 ||
                    e == Eq::BangA2)
                    return true;
            return false;
    }
}

bool AlgebraClass::needs_involutive() const {
    switch (base) {
        case AlgBase::InRLUG:
        case AlgBase::CyInRLUG:
        case AlgBase::NACCLLminus:
        case AlgBase::NACCLL: return true;
        default: return false;
    }
}

bool AlgebraClass::needs_cyclic() const {
    return base == AlgBase::CyInRLUG || base == AlgBase::NACCLL;
}

std::set<Eq> AlgebraClass::all_equations() const {
    std::set<Eq> out = equations;
    switch (base) {
        case AlgBase::NACILL:
        case AlgBase::NACILL0:
        case AlgBase::NACCLLminus:
        case AlgBase::NACCLL:
            out.insert({Eq::BangE, Eq::BangC, Eq::BangI, Eq::BangA1, Eq::BangA2});
            break;
        default: break;
    }
    return out;
}

std::string AlgebraClass::to_string() const {
    std::string out;
    switch (base) {
        case AlgBase::RLUG: out = "rlug"; break;
        case AlgBase::RLUG0: out = "rlug0"; break;
        case AlgBase::Interior: out = "interior"; break;
        case AlgBase::Interior0: out = "interior0"; break;
        case AlgBase::InRLUG: out = "inrlug"; break;
        case AlgBase::CyInRLUG: out = "cyinrlug"; break;
        case AlgBase::NACILL: out = "nacill"; break;
        case AlgBase::NACILL0: out = "nacill0"; break;
        case AlgBase::NACCLLminus: out = "naccll-"; break;
        case AlgBase::NACCLL: out = "naccll"; break;
    }
    for (Eq e : equations) out += std::string("+") + eq_name(e);
    return out;
}

AlgebraClass parse_class(const std::string& text) {
    AlgebraClass cls;
    std::string base = text;
    std::string rest;
    auto plus = text.find('+');
    if (plus != std::string::npos) {
        base = text.substr(0, plus);
        rest = text.substr(plus + 1);
    }
    if (base == "rlug") cls.base = AlgBase::RLUG;
    else if (base == "rlug0") cls.base = AlgBase::RLUG0;
    else if (base == "interior") cls.base = AlgBase::Interior;
    else if (base == "interior0") cls.base = AlgBase::Interior0;
    else if (base == "inrlug") cls.base = AlgBase::InRLUG;
    else if (base == "cyinrlug") cls.base = AlgBase::CyInRLUG;
    else if (base == "nacill") cls.base = AlgBase::NACILL;
    else if (base == "nacill0") cls.base = AlgBase::NACILL0;
    else if (base == "naccll-") cls.base = AlgBase::NACCLLminus;
    else if (base == "naccll") cls.base = AlgBase::NACCLL;
    else
        throw error("unknown algebra class '" + base +
                    "'; valid: rlug rlug0 interior interior0 inrlug cyinrlug nacill nacill0 "
                    "naccll- naccll");
    std::string tok;
    std::istringstream in(rest);
    while (std::getline(in, tok, '+')) {
        if (tok.empty()) continue;
        if (tok == "!e") cls.equations.insert(Eq::BangE);
        else if (tok == "!c") cls.equations.insert(Eq::BangC);
        else if (tok == "!i") cls.equations.insert(Eq::BangI);
        else if (tok == "!a1") cls.equations.insert(Eq::BangA1);
        else if (tok == "!a2") cls.equations.insert(Eq::BangA2);
        else {
            for (char ch : tok) {
                switch (ch) {
                    case 'e': cls.equations.insert(Eq::E); break;
                    case 'c': cls.equations.insert(Eq::C); break;
                    case 'i': cls.equations.insert(Eq::I); break;
                    case 'o': cls.equations.insert(Eq::O); break;
                    case 'w':
                        cls.equations.insert(Eq::I);
                        cls.equations.insert(Eq::O);
                        break;
                    default:
                        throw error(std::string("unknown equation '") + ch + "' in class '" +
                                    text + "'");
                }
            }
        }
    }
    return cls;
}

// -------------------------------------------------------------- class check

namespace {

struct LawChecker {
    const FiniteAlgebra& A;
    ClassReport rep;

    bool fail(const std::string& law, std::vector<int> wit) {
        rep.ok = false;
        rep.law = law;
        rep.witness = std::move(wit);
        std::string ws;
        for (int w : rep.witness) ws += (ws.empty() ? "" : ",") + std::to_string(w);
        rep.message = "law '" + law + "' fails at (" + ws + ")";
        return false;
    }

    bool well_formed() {
        int n = A.n;
        if (n < 1) return fail("carrier nonempty", {});
        auto tbl_ok = [&](const std::vector<int>& t) {
            if (static_cast<int>(t.size()) != n * n) return false;
            for (int v : t)
                if (v < 0 || v >= n) return false;
            return true;
        };
        if (!tbl_ok(A.meet) || !tbl_ok(A.join) || !tbl_ok(A.prod) || !tbl_ok(A.ldiv) ||
            !tbl_ok(A.rdiv))
            return fail("tables well-formed", {});
        if (A.one < 0 || A.one >= n) return fail("one in carrier", {A.one});
        if (A.zero && (*A.zero < 0 || *A.zero >= n)) return fail("zero in carrier", {*A.zero});
        if (A.bang) {
            if (static_cast<int>(A.bang->size()) != n) return fail("bang table size", {});
            for (int v : *A.bang)
                if (v < 0 || v >= n) return fail("bang values in carrier", {v});
        }
        return true;
    }

    bool lattice() {
        int n = A.n;
        for (int x = 0; x < n; x++)
            for (int y = 0; y < n; y++) {
                if (A.mt(x, y) != A.mt(y, x)) return fail("meet commutative", {x, y});
                if (A.jn(x, y) != A.jn(y, x)) return fail("join commutative", {x, y});
                if (A.mt(x, A.jn(x, y)) != x) return fail("absorption x/\\(x\\/y)=x", {x, y});
                if (A.jn(x, A.mt(x, y)) != x) return fail("absorption x\\/(x/\\y)=x", {x, y});
                for (int z = 0; z < n; z++) {
                    if (A.mt(A.mt(x, y), z) != A.mt(x, A.mt(y, z)))
                        return fail("meet associative", {x, y, z});
                    if (A.jn(A.jn(x, y), z) != A.jn(x, A.jn(y, z)))
                        return fail("join associative", {x, y, z});
                }
            }
        return true;
    }

    bool unit() {
        for (int x = 0; x < A.n; x++) {
            if (A.pd(A.one, x) != x) return fail("1.x = x", {x});
            if (A.pd(x, A.one) != x) return fail("x.1 = x", {x});
        }
        return true;
    }

    bool residuation() {
        int n = A.n;
        for (int x = 0; x < n; x++)
            for (int y = 0; y < n; y++)
                for (int z = 0; z < n; z++) {
                    bool p = A.leq(A.pd(x, y), z);
                    bool l = A.leq(y, A.ld(x, z));
                    bool r = A.leq(x, A.rd(z, y));
                    if (p != l || p != r)
                        return fail("residuation x.y<=z iff y<=x\\z iff x<=z/y", {x, y, z});
                }
        return true;
    }

    bool conucleus() {
        int n = A.n;
        if (!A.leq(A.one, A.bg(A.one))) return fail("1 <= !1", {A.one});
        for (int x = 0; x < n; x++) {
            if (!A.leq(A.bg(x), x)) return fail("!x <= x", {x});
            if (!A.leq(A.bg(x), A.bg(A.bg(x)))) return fail("!x <= !!x", {x});
            for (int y = 0; y < n; y++) {
                if (!A.leq(A.pd(A.bg(x), A.bg(y)), A.bg(A.pd(x, y))))
                    return fail("!x.!y <= !(x.y)", {x, y});
                if (A.leq(x, y) && !A.leq(A.bg(x), A.bg(y)))
                    return fail("! monotone", {x, y});
            }
        }
        return true;
    }

    int neg_r(int x) { return A.ld(x, *A.zero); }  // x\0
    int neg_l(int x) { return A.rd(*A.zero, x); }  // 0/x

    bool involutive() {
        int n = A.n;
        for (int x = 0; x < n; x++) {
            if (neg_l(neg_r(x)) != x) return fail("0/(x\\0) = x", {x});
            if (neg_r(neg_l(x)) != x) return fail("(0/x)\\0 = x", {x});
        }
        for (int x = 0; x < n; x++)
            for (int y = 0; y < n; y++)
                for (int z = 0; z < n; z++) {
                    bool p = A.leq(A.pd(x, y), z);
                    bool l = A.leq(A.pd(neg_l(z), x), neg_l(y));
                    bool r = A.leq(A.pd(y, neg_r(z)), neg_r(x));
                    if (p != l || p != r)
                        return fail("shift x.y<=z iff -z.x<=-y iff y.~z<=~x", {x, y, z});
                }
        return true;
    }

    bool cyclic() {
        for (int x = 0; x < A.n; x++)
            if (neg_r(x) != neg_l(x)) return fail("~x = -x", {x});
        return true;
    }

    bool equation(Eq e) {
        int n = A.n;
        switch (e) {
            case Eq::E:
                for (int x = 0; x < n; x++)
                    for (int y = 0; y < n; y++)
                        if (!A.leq(A.pd(x, y), A.pd(y, x))) return fail("(e) x.y <= y.x", {x, y});
                return true;
            case Eq::C:
                for (int x = 0; x < n; x++)
                    if (!A.leq(x, A.pd(x, x))) return fail("(c) x <= x.x", {x});
                return true;
            case Eq::I:
                for (int x = 0; x < n; x++)
                    if (!A.leq(x, A.one)) return fail("(i) x <= 1", {x});
                return true;
            case Eq::O:
                for (int x = 0; x < n; x++)
                    if (!A.leq(*A.zero, x)) return fail("(o) 0 <= x", {x});
                return true;
            case Eq::BangI:
                for (int x = 0; x < n; x++)
                    if (!A.leq(A.bg(x), A.one)) return fail("(!i) !x <= 1", {x});
                return true;
            case Eq::BangC:
                for (int x = 0; x < n; x++)
                    if (!A.leq(A.bg(x), A.pd(A.bg(x), A.bg(x))))
                        return fail("(!c) !x <= !x.!x", {x});
                return true;
            case Eq::BangE:
                for (int x = 0; x < n; x++)
                    for (int y = 0; y < n; y++)
                        if (A.pd(A.bg(x), y) != A.pd(y, A.bg(x)))
                            return fail("(!e) !x.y = y.!x", {x, y});
                return true;
            case Eq::BangA1:
                for (int x = 0; x < n; x++)
                    for (int y = 0; y < n; y++)
                        for (int z = 0; z < n; z++)
                            if (A.pd(A.bg(x), A.pd(y, z)) != A.pd(A.pd(A.bg(x), y), z))
                                return fail("(!a1) !x.(y.z) = (!x.y).z", {x, y, z});
                return true;
            case Eq::BangA2:
                for (int x = 0; x < n; x++)
                    for (int y = 0; y < n; y++)
                        for (int z = 0; z < n; z++)
                            if (A.pd(x, A.pd(y, A.bg(z))) != A.pd(A.pd(x, y), A.bg(z)))
                                return fail("(!a2) x.(y.!z) = (x.y).!z", {x, y, z});
                return true;
        }
        return true;
    }
};

}  // namespace

ClassReport check_class(const FiniteAlgebra& A, const AlgebraClass& cls) {
    LawChecker chk{A, {}};
    if (!chk.well_formed()) return chk.rep;
    if (!chk.lattice()) return chk.rep;
    if (!chk.unit()) return chk.rep;
    if (!chk.residuation()) return chk.rep;
    if (cls.needs_zero() && !A.zero) {
        chk.fail("zero designated", {});
        return chk.rep;
    }
    if (cls.needs_bang() && !A.bang) {
        chk.fail("bang present", {});
        return chk.rep;
    }
    if (A.bang && !chk.conucleus()) return chk.rep;
    if (cls.needs_involutive() && !chk.involutive()) return chk.rep;
    if (cls.needs_cyclic() && !chk.cyclic()) return chk.rep;
    for (Eq e : cls.all_equations()) {
        if ((e == Eq::O) && !A.zero) {
            chk.fail("zero designated", {});
            return chk.rep;
        }
        if (!chk.equation(e)) return chk.rep;
    }
    return chk.rep;
}

bool equation_holds(const FiniteAlgebra& A, Eq eq) {
    LawChecker chk{A, {}};
    return chk.equation(eq);
}

// --------------------------------------------------------------- semantics

int eval_formula(const FiniteAlgebra& A, const Valuation& f, const Formula& a) {
    switch (a.conn()) {
        case Conn::Var: {
            auto it = f.find(a.var_name());
            if (it == f.end()) throw error("valuation missing variable " + a.var_name());
            if (it->second < 0 || it->second >= A.n)
                throw error("valuation out of carrier for " + a.var_name());
            return it->second;
        }
        case Conn::One: return A.one;
        case Conn::Zero:
            if (!A.zero) throw error("formula uses 0 but the algebra has no zero");
            return *A.zero;
        case Conn::Bang:
            if (!A.bang) throw error("formula uses ! but the algebra has no interior operation");
            return A.bg(eval_formula(A, f, a.left()));
        case Conn::Meet: return A.mt(eval_formula(A, f, a.left()), eval_formula(A, f, a.right()));
        case Conn::Join: return A.jn(eval_formula(A, f, a.left()), eval_formula(A, f, a.right()));
        case Conn::Prod: return A.pd(eval_formula(A, f, a.left()), eval_formula(A, f, a.right()));
        case Conn::Ldiv: return A.ld(eval_formula(A, f, a.left()), eval_formula(A, f, a.right()));
        case Conn::Rdiv: return A.rd(eval_formula(A, f, a.left()), eval_formula(A, f, a.right()));
    }
    throw error("eval_formula: bad formula");
}

bool sequent_holds(const FiniteAlgebra& A, const Valuation& f, const Sequent& s) {
    int lhs = eval_formula(A, f, rho(s.antecedent()));
    if (s.has_empty_stoup()) {
        if (!A.zero) throw error("empty stoup needs a zero element in the algebra");
        return A.leq(lhs, *A.zero);
    }
    return A.leq(lhs, eval_formula(A, f, s.succedent()));
}

// -------------------------------------------------------------- enumeration

namespace {

struct Lattice {
    int n;
    std::vector<int> meet, join;
};

// all lattices on {0..n-1} up to isomorphism, deterministic order
std::vector<Lattice> enumerate_lattices(int n) {
    if (n > 5) throw error("algebra enumeration is supported up to carrier size 5");
    std::vector<Lattice> out;
    int pairs = n * (n - 1);
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            if (i != j) idx.emplace_back(i, j);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    for (long long mask = 0; mask < (1LL << pairs); mask++) {
        std::vector<char> le(n * n, 0);
        for (int i = 0; i < n; i++) le[i * n + i] = 1;
        for (int b = 0; b < pairs; b++)
            if (mask & (1LL << b)) le[idx[b].first * n + idx[b].second] = 1;
        // antisymmetry by construction (i != j pairs both set would break it)
        bool ok = true;
        for (int i = 0; i < n && ok; i++)
            for (int j = 0; j < n && ok; j++) {
                if (i != j && le[i * n + j] && le[j * n + i]) ok = false;
                if (!le[i * n + j]) continue;
                for (int k = 0; k < n; k++)
                    if (le[j * n + k] && !le[i * n + k]) {
                        ok = false;
                        break;
                    }
            }
        if (!ok) continue;
        // lattice: every pair has a greatest lower bound and least upper bound
        Lattice L{n, std::vector<int>(n * n, -1), std::vector<int>(n * n, -1)};
        for (int x = 0; x < n && ok; x++)
            for (int y = 0; y < n && ok; y++) {
                int glb = -1, lub = -1;
                for (int z = 0; z < n; z++) {
                    if (le[z * n + x] && le[z * n + y]) {
                        if (glb == -1 || le[glb * n + z]) glb = z;
                    }
                    if (le[x * n + z] && le[y * n + z]) {
                        if (lub == -1 || le[z * n + lub]) lub = z;
                    }
                }
                if (glb == -1 || lub == -1) {
                    ok = false;
                    break;
                }
                for (int z = 0; z < n; z++) {
                    if (le[z * n + x] && le[z * n + y] && !le[z * n + glb]) ok = false;
                    if (le[x * n + z] && le[y * n + z] && !le[lub * n + z]) ok = false;
                }
                L.meet[x * n + y] = glb;
                L.join[x * n + y] = lub;
            }
        if (!ok) continue;
        // canonical form under carrier permutations
        std::vector<int> enc = L.meet;
        enc.insert(enc.end(), L.join.begin(), L.join.end());
        std::vector<int> best = enc;
        std::vector<int> p = perm;
        bool canonical = true;
        do {
            std::vector<int> e2(2 * n * n);
            for (int x = 0; x < n; x++)
                for (int y = 0; y < n; y++) {
                    e2[p[x] * n + p[y]] = p[L.meet[x * n + y]];
                    e2[n * n + p[x] * n + p[y]] = p[L.join[x * n + y]];
                }
            if (e2 < best) {
                canonical = false;
                break;
            }
        } while (std::next_permutation(p.begin(), p.end()));
        if (!canonical) continue;
        out.push_back(std::move(L));
    }
    std::sort(out.begin(), out.end(), [](const Lattice& a, const Lattice& b) {
        auto ea = a.meet;
        ea.insert(ea.end(), a.join.begin(), a.join.end());
        auto eb = b.meet;
        eb.insert(eb.end(), b.join.begin(), b.join.end());
        return ea < eb;
    });
    return out;
}

FiniteAlgebra apply_perm(const FiniteAlgebra& A, const std::vector<int>& p) {
    int n = A.n;
    FiniteAlgebra B;
    B.n = n;
    B.meet.assign(n * n, 0);
    B.join.assign(n * n, 0);
    B.prod.assign(n * n, 0);
    B.ldiv.assign(n * n, 0);
    B.rdiv.assign(n * n, 0);
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            B.meet[p[x] * n + p[y]] = p[A.mt(x, y)];
            B.join[p[x] * n + p[y]] = p[A.jn(x, y)];
            B.prod[p[x] * n + p[y]] = p[A.pd(x, y)];
            B.ldiv[p[x] * n + p[y]] = p[A.ld(x, y)];
            B.rdiv[p[x] * n + p[y]] = p[A.rd(x, y)];
        }
    B.one = p[A.one];
    if (A.zero) B.zero = p[*A.zero];
    if (A.bang) {
        B.bang = std::vector<int>(n, 0);
        for (int x = 0; x < n; x++) (*B.bang)[p[x]] = p[A.bg(x)];
    }
    return B;
}

bool is_canonical(const FiniteAlgebra& A) {
    std::vector<int> base = A.encode();
    std::vector<int> p(A.n);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) {
        if (apply_perm(A, p).encode() < base) return false;
    }
    return true;
}

// residuals from prod and the order; false if some max does not exist
bool derive_residuals(FiniteAlgebra& A) {
    int n = A.n;
    A.ldiv.assign(n * n, 0);
    A.rdiv.assign(n * n, 0);
    for (int x = 0; x < n; x++)
        for (int z = 0; z < n; z++) {
            int best = -1;
            for (int y = 0; y < n; y++)
                if (A.leq(A.pd(x, y), z)) best = best == -1 ? y : A.jn(best, y);
            if (best == -1 || !A.leq(A.pd(x, best), z)) return false;
            A.ldiv[x * n + z] = best;
            best = -1;
            for (int y = 0; y < n; y++)
                if (A.leq(A.pd(y, x), z)) best = best == -1 ? y : A.jn(best, y);
            if (best == -1 || !A.leq(A.pd(best, x), z)) return false;
            A.rdiv[z * n + x] = best;
        }
    return true;
}

struct ProdSearch {
    const Lattice& L;
    int n;
    int one;
    bool sym;         // (e) forces a symmetric table
    bool idem;        // (i)+(c) force x.x = x
    std::vector<int> cells;  // free cell list
    std::vector<int> prod;
    std::function<void(const std::vector<int>&)> yield;

    bool leq(int x, int y) const { return L.meet[x * n + y] == x; }

    bool consistent(int x, int y, int v) const {
        // monotone against already-assigned cells
        for (int x2 = 0; x2 < n; x2++)
            for (int y2 = 0; y2 < n; y2++) {
                int w = prod[x2 * n + y2];
                if (w < 0) continue;
                if (leq(x2, x) && leq(y2, y) && !leq(w, v)) return false;
                if (leq(x, x2) && leq(y, y2) && !leq(v, w)) return false;
            }
        if (sym) {
            int w = prod[y * n + x];
            if (w >= 0 && w != v) return false;
        }
        return true;
    }

    void rec(std::size_t i) {
        if (i == cells.size()) {
            yield(prod);
            return;
        }
        int cell = cells[i];
        int x = cell / n, y = cell % n;
        if (idem && x == y) {
            if (consistent(x, y, x)) {
                prod[cell] = x;
                rec(i + 1);
                prod[cell] = -1;
            }
            return;
        }
        for (int v = 0; v < n; v++) {
            if (!consistent(x, y, v)) continue;
            prod[cell] = v;
            rec(i + 1);
            prod[cell] = -1;
        }
    }
};

}  // namespace

void enumerate_algebras(int n, const AlgebraClass& cls,
                        const std::function<bool(const FiniteAlgebra&)>& visit) {
    if (n < 1) throw error("enumerate_algebras: n must be positive");
    auto eqs = cls.all_equations();
    bool want_i = eqs.count(Eq::I) != 0;
    bool want_e = eqs.count(Eq::E) != 0;
    bool want_c = eqs.count(Eq::C) != 0;
    bool want_o = eqs.count(Eq::O) != 0;
    bool stop = false;

    for (const Lattice& L : enumerate_lattices(n)) {
        if (stop) return;
        int bottom = 0, top = 0;
        for (int x = 0; x < n; x++) {
            if (L.meet[x * n + bottom] == x) bottom = x;
            if (L.meet[top * n + x] == top) top = x;
        }
        for (int one = 0; one < n && !stop; one++) {
            if (n > 1 && one == bottom) continue;  // 1 = bottom collapses the algebra
            if (want_i && one != top) continue;
            ProdSearch ps{L, n, one, want_e, want_i && want_c, {}, std::vector<int>(n * n, -1),
                          {}};
            // unit row and column, bottom absorbing
            for (int x = 0; x < n; x++) {
                ps.prod[one * n + x] = x;
                ps.prod[x * n + one] = x;
                ps.prod[bottom * n + x] = bottom;
                ps.prod[x * n + bottom] = bottom;
            }
            for (int c = 0; c < n * n; c++)
                if (ps.prod[c] < 0) ps.cells.push_back(c);
            ps.yield = [&](const std::vector<int>& prod) {
                if (stop) return;
                FiniteAlgebra A;
                A.n = n;
                A.meet = L.meet;
                A.join = L.join;
                A.prod = prod;
                A.one = one;
                if (!derive_residuals(A)) return;
                std::vector<int> zeros;
                if (cls.needs_zero()) {
                    if (want_o) zeros.push_back(bottom);
                    else
                        for (int z = 0; z < n; z++) zeros.push_back(z);
                } else {
                    zeros.push_back(-1);
                }
                for (int z : zeros) {
                    if (stop) return;
                    FiniteAlgebra B = A;
                    if (z >= 0) B.zero = z;
                    if (!cls.needs_bang()) {
                        if (!check_class(B, cls).ok) continue;
                        if (!is_canonical(B)) continue;
                        if (!visit(B)) stop = true;
                        continue;
                    }
                    // bang tables: !x <= x, !bottom = bottom, !1 = 1, monotone
                    std::vector<int> bang(n, -1);
                    bang[B.one] = B.one;
                    bang[bottom] = bottom;
                    std::function<void(int)> rec = [&](int x) {
                        if (stop) return;
                        if (x == n) {
                            FiniteAlgebra C = B;
                            C.bang = bang;
                            if (!check_class(C, cls).ok) return;
                            if (!is_canonical(C)) return;
                            if (!visit(C)) stop = true;
                            return;
                        }
                        if (bang[x] >= 0) {
                            rec(x + 1);
                            return;
                        }
                        for (int v = 0; v < n && !stop; v++) {
                            if (!B.leq(v, x)) continue;
                            bool mono = true;
                            for (int y = 0; y < n; y++) {
                                if (bang[y] < 0 || y == x) continue;
                                if (B.leq(y, x) && !B.leq(bang[y], v)) mono = false;
                                if (B.leq(x, y) && !B.leq(v, bang[y])) mono = false;
                            }
                            if (!mono) continue;
                            bang[x] = v;
                            rec(x + 1);
                            bang[x] = -1;
                        }
                    };
                    rec(0);
                }
            };
            ps.rec(0);
        }
    }
}

std::vector<FiniteAlgebra> enumerate_algebras(int n, const AlgebraClass& cls) {
    std::vector<FiniteAlgebra> out;
    enumerate_algebras(n, cls, [&](const FiniteAlgebra& A) {
        out.push_back(A);
        return true;
    });
    return out;
}

const std::vector<FiniteAlgebra>& enumerate_algebras_cached(int n, const AlgebraClass& cls) {
    static std::mutex mu;
    static std::map<std::string, std::vector<FiniteAlgebra>> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::string key = std::to_string(n) + ":" + cls.to_string();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto [pos, inserted] = cache.emplace(key, enumerate_algebras(n, cls));
    (void)inserted;
    return pos->second;
}

// -------------------------------------------------------------- refutation

std::optional<Countermodel> find_countermodel(const Sequent& goal,
                                              const std::vector<Sequent>& assumptions,
                                              const AlgebraClass& cls, int max_n) {
    std::set<std::string> varset;
    collect_variables(goal, varset);
    for (const auto& s : assumptions) collect_variables(s, varset);
    std::vector<std::string> vars(varset.begin(), varset.end());

    for (int n = 1; n <= max_n; n++) {
        for (const FiniteAlgebra& A : enumerate_algebras_cached(n, cls)) {
            std::vector<int> assign(vars.size(), 0);
            while (true) {
                Valuation f;
                for (std::size_t i = 0; i < vars.size(); i++) f[vars[i]] = assign[i];
                bool assumptions_ok = true;
                for (const auto& s : assumptions)
                    if (!sequent_holds(A, f, s)) {
                        assumptions_ok = false;
                        break;
                    }
                if (assumptions_ok && !sequent_holds(A, f, goal))
                    return Countermodel{A, f};
                // odometer
                std::size_t i = 0;
                for (; i < assign.size(); i++) {
                    if (++assign[i] < n) break;
                    assign[i] = 0;
                }
                if (i == assign.size()) break;
            }
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------ serialization

namespace {
void print_table(std::ostringstream& out, const char* name, const std::vector<int>& t, int rows,
                 int cols) {
    out << name << ":\n";
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) out << (c ? " " : "") << t[r * cols + c];
        out << "\n";
    }
}
}  // namespace

std::string algebra_to_string(const FiniteAlgebra& A) {
    std::ostringstream out;
    out << "n=" << A.n << "\n";
    print_table(out, "meet", A.meet, A.n, A.n);
    print_table(out, "join", A.join, A.n, A.n);
    print_table(out, "prod", A.prod, A.n, A.n);
    print_table(out, "ldiv", A.ldiv, A.n, A.n);
    print_table(out, "rdiv", A.rdiv, A.n, A.n);
    if (A.bang) print_table(out, "bang", *A.bang, 1, A.n);
    if (A.neg) print_table(out, "neg", *A.neg, 1, A.n);
    out << "one=" << A.one << "\n";
    if (A.zero) out << "zero=" << *A.zero << "\n";
    return out.str();
}

FiniteAlgebra parse_algebra(const std::string& text) {
    FiniteAlgebra A;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto bad = [&](const std::string& msg) {
        throw parse_error("algebra file line " + std::to_string(lineno) + ": " + msg, 0);
    };
    auto read_rows = [&](int rows) {
        std::vector<int> t;
        for (int r = 0; r < rows; r++) {
            if (!std::getline(in, line)) bad("unexpected end of table");
            lineno++;
            std::istringstream ls(line);
            int v;
            int count = 0;
            while (ls >> v) {
                t.push_back(v);
                count++;
            }
            if (count != A.n) bad("expected " + std::to_string(A.n) + " entries per row");
        }
        return t;
    };
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t z = line.find_last_not_of(" \t\r");
        line = line.substr(a, z - a + 1);
        if (line.rfind("n=", 0) == 0) {
            A.n = std::stoi(line.substr(2));
            if (A.n < 1 || A.n > 64) bad("carrier size out of range");
        } else if (line == "meet:") A.meet = read_rows(A.n);
        else if (line == "join:") A.join = read_rows(A.n);
        else if (line == "prod:") A.prod = read_rows(A.n);
        else if (line == "ldiv:") A.ldiv = read_rows(A.n);
        else if (line == "rdiv:") A.rdiv = read_rows(A.n);
        else if (line == "bang:") A.bang = read_rows(1);
        else if (line == "neg:") A.neg = read_rows(1);
        else if (line.rfind("one=", 0) == 0) A.one = std::stoi(line.substr(4));
        else if (line.rfind("zero=", 0) == 0) A.zero = std::stoi(line.substr(5));
        else bad("unrecognized line '" + line + "'");
    }
    if (A.n == 0) throw parse_error("algebra file missing n=", 0);
    int nn = A.n * A.n;
    if (static_cast<int>(A.meet.size()) != nn || static_cast<int>(A.join.size()) != nn ||
        static_cast<int>(A.prod.size()) != nn || static_cast<int>(A.ldiv.size()) != nn ||
        static_cast<int>(A.rdiv.size()) != nn)
        throw parse_error("algebra file missing a required table", 0);
    return A;
}

}  // namespace naclog
