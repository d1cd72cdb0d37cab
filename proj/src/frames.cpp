#include "frames.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace naclog {

// ------------------------------------------------------------------ Bitset

Bitset Bitset::full(int n) {
    Bitset b(n);
    for (int i = 0; i < n; i++) b.set(i);
    return b;
}

void Bitset::set(int i, bool v) {
    if (v)
        w_[i >> 6] |= (1ULL << (i & 63));
    else
        w_[i >> 6] &= ~(1ULL << (i & 63));
}

int Bitset::count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
}

bool Bitset::empty() const {
    for (auto w : w_)
        if (w) return false;
    return true;
}

bool Bitset::subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); i++)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

Bitset Bitset::intersect(const Bitset& o) const {
    Bitset r(n_);
    for (std::size_t i = 0; i < w_.size(); i++) r.w_[i] = w_[i] & o.w_[i];
    return r;
}

Bitset Bitset::unite(const Bitset& o) const {
    Bitset r(n_);
    for (std::size_t i = 0; i < w_.size(); i++) r.w_[i] = w_[i] | o.w_[i];
    return r;
}

std::vector<int> Bitset::members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; i++)
        if (test(i)) out.push_back(i);
    return out;
}

bool Bitset::operator<(const Bitset& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t i = w_.size(); i-- > 0;)
        if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
}

std::size_t Bitset::hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (auto w : w_) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

// ------------------------------------------------------------------- Frame

std::optional<std::string> Frame::validate() const {
    if (gn < 1 || tn < 0) return "frame carrier sizes out of range";
    if (static_cast<int>(prod.size()) != gn * gn) return "G product table size";
    if (eps < 0 || eps >= gn) return "eps outside G";
    if (static_cast<int>(rel.size()) != gn * tn) return "N table size";
    if (static_cast<int>(lres.size()) != gn * tn) return "lres table size";
    if (static_cast<int>(rres.size()) != tn * gn) return "rres table size";
    for (int v : prod)
        if (v < 0 || v >= gn) return "G product out of range";
    for (int v : lres)
        if (v < 0 || v >= tn) return "lres out of range";
    for (int v : rres)
        if (v < 0 || v >= tn) return "rres out of range";
    if (K.size() != gn) return "K must be a subset of G";
    if (eps_t && (*eps_t < 0 || *eps_t >= tn)) return "eps_t outside T";
    for (int x = 0; x < gn; x++) {
        if (gprod(eps, x) != x || gprod(x, eps) != x) return "eps is not a unit of G";
    }
    if (!K.test(eps)) return "K must contain eps";
    for (int x : K.members())
        for (int y : K.members())
            if (!K.test(gprod(x, y))) return "K must be closed under the product";
    for (int x = 0; x < gn; x++)
        for (int y = 0; y < gn; y++)
            for (int t = 0; t < tn; t++) {
                bool a = N(gprod(x, y), t);
                bool b = N(y, wl(x, t));
                bool c = N(x, wr(t, y));
                if (a != b || a != c) {
                    return "nuclearity fails at x=" + std::to_string(x) +
                           " y=" + std::to_string(y) + " t=" + std::to_string(t);
                }
            }
    return std::nullopt;
}

Bitset polarity_right(const Frame& F, const Bitset& X) {
    Bitset out(F.tn);
    for (int t = 0; t < F.tn; t++) {
        bool all = true;
        for (int x = 0; x < F.gn; x++)
            if (X.test(x) && !F.N(x, t)) {
                all = false;
                break;
            }
        out.set(t, all);
    }
    return out;
}

Bitset polarity_left(const Frame& F, const Bitset& Y) {
    Bitset out(F.gn);
    for (int x = 0; x < F.gn; x++) {
        bool all = true;
        for (int t = 0; t < F.tn; t++)
            if (Y.test(t) && !F.N(x, t)) {
                all = false;
                break;
            }
        out.set(x, all);
    }
    return out;
}

Bitset gamma(const Frame& F, const Bitset& X) { return polarity_left(F, polarity_right(F, X)); }

Bitset basis_set(const Frame& F, int t) {
    Bitset y(F.tn);
    y.set(t);
    return polarity_left(F, y);
}

// ----------------------------------------------------------------- F plus

int FPlusAlgebra::index_of(const Bitset& b) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), b);
    if (it == elems.end() || !(*it == b)) return -1;
    return static_cast<int>(it - elems.begin());
}

FPlusAlgebra frame_plus(const Frame& F) {
    if (auto bad = F.validate()) throw error("frame_plus: " + *bad);

    // closed sets are exactly the intersections of basis sets
    std::set<Bitset> family;
    family.insert(Bitset::full(F.gn));
    for (int t = 0; t < F.tn; t++) {
        Bitset b = basis_set(F, t);
        std::vector<Bitset> next;
        for (const auto& s : family) next.push_back(s.intersect(b));
        for (auto& s : next) family.insert(std::move(s));
    }

    FPlusAlgebra fp;
    fp.elems.assign(family.begin(), family.end());
    int m = static_cast<int>(fp.elems.size());
    auto idx = [&](const Bitset& b, const char* what) {
        int i = fp.index_of(b);
        if (i < 0) throw error(std::string("frame_plus: ") + what + " left the closed-set family");
        return i;
    };

    FiniteAlgebra& A = fp.alg;
    A.n = m;
    A.meet.assign(m * m, 0);
    A.join.assign(m * m, 0);
    A.prod.assign(m * m, 0);
    A.ldiv.assign(m * m, 0);
    A.rdiv.assign(m * m, 0);
    A.bang = std::vector<int>(m, 0);

    auto gamma_of = [&](const Bitset& X) { return gamma(F, X); };

    for (int i = 0; i < m; i++) {
        const Bitset& X = fp.elems[i];
        for (int j = 0; j < m; j++) {
            const Bitset& Y = fp.elems[j];
            A.meet[i * m + j] = idx(X.intersect(Y), "meet");
            A.join[i * m + j] = idx(gamma_of(X.unite(Y)), "join");
            // elementwise product then closure
            Bitset prodset(F.gn);
            for (int x : X.members())
                for (int y : Y.members()) prodset.set(F.gprod(x, y));
            A.prod[i * m + j] = idx(gamma_of(prodset), "product");
            // X \ Y = { z | X o {z} subset of Y } at (X, Y);
            // X / Y = { z | {z} o Y subset of X } at (X, Y)
            Bitset ld(F.gn), rd(F.gn);
            for (int z = 0; z < F.gn; z++) {
                bool okl = true;
                for (int x : X.members())
                    if (!Y.test(F.gprod(x, z))) {
                        okl = false;
                        break;
                    }
                bool okr = true;
                for (int y : Y.members())
                    if (!X.test(F.gprod(z, y))) {
                        okr = false;
                        break;
                    }
                ld.set(z, okl);
                rd.set(z, okr);
            }
            A.ldiv[i * m + j] = idx(ld, "left residual");
            A.rdiv[i * m + j] = idx(rd, "right residual");
        }
    }

    Bitset unit_seed(F.gn);
    unit_seed.set(F.eps);
    A.one = idx(gamma_of(unit_seed), "unit");
    for (int i = 0; i < m; i++)
        (*A.bang)[i] = idx(gamma_of(fp.elems[i].intersect(F.K)), "interior");
    if (F.eps_t) A.zero = idx(basis_set(F, *F.eps_t), "zero");
    return fp;
}

// ---------------------------------------------------------------- DM frame

BuiltFrame dm_frame_with_k(const FiniteAlgebra& A, const Bitset& K) {
    AlgebraClass base{A.zero ? AlgBase::RLUG0 : AlgBase::RLUG, {}};
    ClassReport rep = check_class(A, base);
    if (!rep.ok) throw error("dm_frame: input algebra fails " + rep.message);

    BuiltFrame bf;
    Frame& F = bf.frame;
    F.gn = A.n;
    F.tn = A.n;
    F.prod = A.prod;
    F.eps = A.one;
    F.rel.assign(A.n * A.n, 0);
    F.lres.assign(A.n * A.n, 0);
    F.rres.assign(A.n * A.n, 0);
    for (int x = 0; x < A.n; x++)
        for (int t = 0; t < A.n; t++) {
            F.rel[x * A.n + t] = A.leq(x, t) ? 1 : 0;
            F.lres[x * A.n + t] = A.ld(x, t);
            F.rres[t * A.n + x] = A.rd(t, x);
        }
    F.K = K;
    if (A.zero) F.eps_t = *A.zero;
    bf.elem_to_g.resize(A.n);
    bf.elem_to_t.resize(A.n);
    bf.g_elem.resize(A.n);
    for (int x = 0; x < A.n; x++) {
        bf.elem_to_g[x] = x;
        bf.elem_to_t[x] = x;
        bf.g_elem[x] = x;
    }
    if (auto bad = F.validate()) throw error("dm_frame: " + *bad);
    return bf;
}

BuiltFrame dm_frame(const FiniteAlgebra& A) {
    AlgebraClass cls{A.zero ? AlgBase::Interior0 : AlgBase::Interior, {}};
    ClassReport rep = check_class(A, cls);
    if (!rep.ok) throw error("dm_frame: input algebra fails " + rep.message);
    Bitset K(A.n);
    for (int x = 0; x < A.n; x++) K.set(A.bg(x));
    return dm_frame_with_k(A, K);
}

// --------------------------------------------------------------- FEP frame

BuiltFrame fep_frame(const FiniteAlgebra& A, const Bitset& B_in, bool with_zero) {
    AlgebraClass base{A.zero ? AlgBase::RLUG0 : AlgBase::RLUG, {}};
    ClassReport rep = check_class(A, base);
    if (!rep.ok) throw error("fep_frame: ambient algebra fails " + rep.message);
    if (B_in.size() != A.n) throw error("fep_frame: B must be a subset of the carrier");
    if (with_zero && !A.zero) throw error("fep_frame: zero variant needs a zero element");

    Bitset B = B_in;
    if (with_zero) B.set(*A.zero);

    // G_B: closure of B + {1} under the product
    Bitset G(A.n);
    G.set(A.one);
    for (int b : B.members()) G.set(b);
    bool grew = true;
    while (grew) {
        grew = false;
        auto mem = G.members();
        for (int x : mem)
            for (int y : mem) {
                int p = A.pd(x, y);
                if (!G.test(p)) {
                    G.set(p);
                    grew = true;
                }
            }
    }
    std::vector<int> g_elem = G.members();  // ascending carrier order
    int gn = static_cast<int>(g_elem.size());
    if (gn > 6)
        throw error("fep_frame: generated subgroupoid has " + std::to_string(gn) +
                    " elements; polynomial saturation is capped at 6");
    std::vector<int> g_index(A.n, -1);
    for (int i = 0; i < gn; i++) g_index[g_elem[i]] = i;
    auto gp = [&](int i, int j) { return g_index[A.pd(g_elem[i], g_elem[j])]; };

    // polynomial-induced functions on G_B: least set containing the identity
    // closed under y -> u(g.y) and y -> u(y.g)
    std::vector<std::vector<int>> funcs;
    std::map<std::vector<int>, int> func_index;
    std::vector<int> ident(gn);
    for (int i = 0; i < gn; i++) ident[i] = i;
    funcs.push_back(ident);
    func_index[ident] = 0;
    for (std::size_t qi = 0; qi < funcs.size(); qi++) {
        std::vector<int> u = funcs[qi];
        for (int g = 0; g < gn; g++) {
            std::vector<int> lcomp(gn), rcomp(gn);
            for (int y = 0; y < gn; y++) {
                lcomp[y] = u[gp(g, y)];  // u(g . y)
                rcomp[y] = u[gp(y, g)];  // u(y . g)
            }
            for (auto& v : {lcomp, rcomp}) {
                if (!func_index.count(v)) {
                    func_index[v] = static_cast<int>(funcs.size());
                    funcs.push_back(v);
                }
            }
        }
    }

    std::vector<int> b_elems = B.members();
    int bn = static_cast<int>(b_elems.size());
    std::vector<int> b_index(A.n, -1);
    for (int i = 0; i < bn; i++) b_index[b_elems[i]] = i;
    int fn = static_cast<int>(funcs.size());
    int tn = fn * bn;
    auto t_of = [&](int fi, int bi) { return fi * bn + bi; };

    BuiltFrame bf;
    Frame& F = bf.frame;
    F.gn = gn;
    F.tn = tn;
    F.eps = g_index[A.one];
    F.prod.assign(gn * gn, 0);
    for (int i = 0; i < gn; i++)
        for (int j = 0; j < gn; j++) F.prod[i * gn + j] = gp(i, j);
    F.rel.assign(gn * tn, 0);
    F.lres.assign(gn * tn, 0);
    F.rres.assign(tn * gn, 0);
    for (int x = 0; x < gn; x++)
        for (int fi = 0; fi < fn; fi++)
            for (int bi = 0; bi < bn; bi++) {
                int t = t_of(fi, bi);
                // N(x, (u, b)) iff u(x) <= b in A
                F.rel[x * tn + t] = A.leq(g_elem[funcs[fi][x]], b_elems[bi]) ? 1 : 0;
            }
    for (int x = 0; x < gn; x++)
        for (int fi = 0; fi < fn; fi++) {
            std::vector<int> lcomp(gn), rcomp(gn);
            for (int y = 0; y < gn; y++) {
                lcomp[y] = funcs[fi][gp(x, y)];  // u(x . _)
                rcomp[y] = funcs[fi][gp(y, x)];  // u(_ . x)
            }
            int li = func_index.at(lcomp);
            int ri = func_index.at(rcomp);
            for (int bi = 0; bi < bn; bi++) {
                F.lres[x * tn + t_of(fi, bi)] = t_of(li, bi);
                F.rres[t_of(fi, bi) * gn + x] = t_of(ri, bi);
            }
        }

    // K_B: subunital groupoid generated by {!b | b in B, !b in B}
    Bitset K(gn);
    K.set(F.eps);
    if (A.bang) {
        for (int b : b_elems) {
            int ib = A.bg(b);
            if (B.test(ib)) K.set(g_index[ib]);
        }
    }
    grew = true;
    while (grew) {
        grew = false;
        auto mem = K.members();
        for (int x : mem)
            for (int y : mem)
                if (!K.test(F.gprod(x, y))) {
                    K.set(F.gprod(x, y));
                    grew = true;
                }
    }
    F.K = K;
    if (with_zero) F.eps_t = t_of(0, b_index[*A.zero]);  // (id, 0)

    bf.elem_to_g.assign(A.n, -1);
    bf.elem_to_t.assign(A.n, -1);
    bf.g_elem = g_elem;
    for (int i = 0; i < gn; i++) bf.elem_to_g[g_elem[i]] = i;
    for (int i = 0; i < bn; i++) bf.elem_to_t[b_elems[i]] = t_of(0, i);
    if (auto bad = F.validate()) throw error("fep_frame: " + *bad);
    return bf;
}

// --------------------------------------------------------------- embedding

Bitset embed_closed_set(const BuiltFrame& bf, int elem) {
    if (elem < 0 || elem >= static_cast<int>(bf.elem_to_t.size()) || bf.elem_to_t[elem] < 0)
        throw error("embed_closed_set: element is not represented in T");
    return basis_set(bf.frame, bf.elem_to_t[elem]);
}

int embed_index(const BuiltFrame& bf, const FPlusAlgebra& fp, int elem) {
    int i = fp.index_of(embed_closed_set(bf, elem));
    if (i < 0) throw error("embed_index: {elem}^< is not a closed set");
    return i;
}

std::optional<std::string> verify_embedding(const FiniteAlgebra& A, const Bitset& B,
                                            const BuiltFrame& bf, const FPlusAlgebra& fp) {
    std::vector<int> b_elems = B.members();
    auto defined = [&](int v) { return B.test(v); };
    std::map<int, int> emb;
    for (int b : b_elems) emb[b] = embed_index(bf, fp, b);

    // injectivity (N is antisymmetric on B since <= is)
    for (int a : b_elems)
        for (int b : b_elems)
            if (a != b && emb[a] == emb[b])
                return "embedding not injective at " + std::to_string(a) + "," +
                       std::to_string(b);

    const FiniteAlgebra& P = fp.alg;
    for (int a : b_elems) {
        for (int b : b_elems) {
            int ia = emb[a], ib = emb[b];
            struct OpCase {
                const char* name;
                int value;
                int image;
            };
            OpCase cases[] = {
                {"meet", A.mt(a, b), P.mt(ia, ib)}, {"join", A.jn(a, b), P.jn(ia, ib)},
                {"prod", A.pd(a, b), P.pd(ia, ib)}, {"ldiv", A.ld(a, b), P.ld(ia, ib)},
                {"rdiv", A.rd(a, b), P.rd(ia, ib)},
            };
            for (const auto& oc : cases) {
                if (!defined(oc.value)) continue;
                if (emb[oc.value] != oc.image)
                    return std::string("operation ") + oc.name + " not preserved at (" +
                           std::to_string(a) + "," + std::to_string(b) + ")";
            }
        }
    }
    if (B.test(A.one) && emb[A.one] != P.one) return "unit not preserved";
    if (A.zero && P.zero && B.test(*A.zero) && emb[*A.zero] != *P.zero)
        return "zero not preserved";
    if (A.bang) {
        for (int b : b_elems) {
            int ib = A.bg(b);
            if (!defined(ib)) continue;
            // !b in !({b}^<) subset of {!b}^<
            Bitset X = embed_closed_set(bf, b);
            Bitset bangX = gamma(bf.frame, X.intersect(bf.frame.K));
            int g = bf.elem_to_g[ib];
            if (g < 0 || !bangX.test(g))
                return "interior clause: !" + std::to_string(b) + " not in !{b}^<";
            if (!bangX.subset_of(embed_closed_set(bf, ib)))
                return "interior clause: !{b}^< not within {!b}^< at b=" + std::to_string(b);
            if (emb[ib] != P.bg(emb[b]))
                return "interior operation not preserved at " + std::to_string(b);
        }
    }
    return std::nullopt;
}

// --------------------------------------------------------------- frame rules

const char* frame_rule_name(FrameRule r) {
    switch (r) {
        case FrameRule::E: return "[e]";
        case FrameRule::C: return "[c]";
        case FrameRule::I: return "[i]";
        case FrameRule::Ki: return "[ki]";
        case FrameRule::Kc: return "[kc]";
        case FrameRule::Ke: return "[ke]";
        case FrameRule::Ka1: return "[ka1]";
        case FrameRule::Ka2: return "[ka2]";
    }
    return "?";
}

Eq frame_rule_equation(FrameRule r) {
    switch (r) {
        case FrameRule::E: return Eq::E;
        case FrameRule::C: return Eq::C;
        case FrameRule::I: return Eq::I;
        case FrameRule::Ki: return Eq::BangI;
        case FrameRule::Kc: return Eq::BangC;
        case FrameRule::Ke: return Eq::BangE;
        case FrameRule::Ka1: return Eq::BangA1;
        case FrameRule::Ka2: return Eq::BangA2;
    }
    return Eq::E;
}

bool check_frame_rule(const Frame& F, FrameRule r) {
    auto ks = F.K.members();
    switch (r) {
        case FrameRule::E:
            for (int x = 0; x < F.gn; x++)
                for (int y = 0; y < F.gn; y++)
                    for (int t = 0; t < F.tn; t++)
                        if (F.N(F.gprod(x, y), t) && !F.N(F.gprod(y, x), t)) return false;
            return true;
        case FrameRule::C:
            for (int x = 0; x < F.gn; x++)
                for (int t = 0; t < F.tn; t++)
                    if (F.N(F.gprod(x, x), t) && !F.N(x, t)) return false;
            return true;
        case FrameRule::I:
            for (int t = 0; t < F.tn; t++) {
                if (!F.N(F.eps, t)) continue;
                for (int x = 0; x < F.gn; x++)
                    if (!F.N(x, t)) return false;
            }
            return true;
        case FrameRule::Ki:
            for (int t = 0; t < F.tn; t++) {
                if (!F.N(F.eps, t)) continue;
                for (int k : ks)
                    if (!F.N(k, t)) return false;
            }
            return true;
        case FrameRule::Kc:
            for (int k : ks)
                for (int t = 0; t < F.tn; t++)
                    if (F.N(F.gprod(k, k), t) && !F.N(k, t)) return false;
            return true;
        case FrameRule::Ke:
            for (int k : ks)
                for (int y = 0; y < F.gn; y++)
                    for (int t = 0; t < F.tn; t++)
                        if (F.N(F.gprod(k, y), t) != F.N(F.gprod(y, k), t)) return false;
            return true;
        case FrameRule::Ka1:
            for (int k : ks)
                for (int x = 0; x < F.gn; x++)
                    for (int y = 0; y < F.gn; y++)
                        for (int t = 0; t < F.tn; t++) {
                            bool nested = F.N(F.gprod(k, F.gprod(x, y)), t);
                            bool flat = F.N(F.gprod(F.gprod(k, x), y), t);
                            if (nested != flat) return false;
                        }
            return true;
        case FrameRule::Ka2:
            for (int k : ks)
                for (int x = 0; x < F.gn; x++)
                    for (int y = 0; y < F.gn; y++)
                        for (int t = 0; t < F.tn; t++) {
                            bool nested = F.N(F.gprod(x, F.gprod(y, k)), t);
                            bool flat = F.N(F.gprod(F.gprod(x, y), k), t);
                            if (nested != flat) return false;
                        }
            return true;
    }
    return false;
}

FPlusAlgebra zero_extension(const FPlusAlgebra& fp) {
    if (fp.elems.empty()) throw error("zero_extension: empty algebra");
    Bitset least = fp.elems[0];
    for (const auto& e : fp.elems) least = least.intersect(e);
    int z = fp.index_of(least);
    if (z < 0) throw error("zero_extension: least closed set missing");
    FPlusAlgebra out = fp;
    out.alg.zero = z;
    return out;
}

// ------------------------------------------------------------ serialization

std::string frame_to_string(const Frame& F) {
    std::ostringstream out;
    out << "G=" << F.gn << "\n";
    out << "prod:\n";
    for (int x = 0; x < F.gn; x++) {
        for (int y = 0; y < F.gn; y++) out << (y ? " " : "") << F.gprod(x, y);
        out << "\n";
    }
    out << "eps=" << F.eps << "\n";
    out << "T=" << F.tn << "\n";
    out << "K:";
    for (int k : F.K.members()) out << " " << k;
    out << "\n";
    out << "N:\n";
    for (int x = 0; x < F.gn; x++) {
        for (int t = 0; t < F.tn; t++) out << (t ? " " : "") << (F.N(x, t) ? 1 : 0);
        out << "\n";
    }
    out << "lres:\n";
    for (int x = 0; x < F.gn; x++) {
        for (int t = 0; t < F.tn; t++) out << (t ? " " : "") << F.wl(x, t);
        out << "\n";
    }
    out << "rres:\n";
    for (int t = 0; t < F.tn; t++) {
        for (int x = 0; x < F.gn; x++) out << (x ? " " : "") << F.wr(t, x);
        out << "\n";
    }
    if (F.eps_t) out << "eps_t=" << *F.eps_t << "\n";
    return out.str();
}

Frame parse_frame(const std::string& text) {
    Frame F;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto bad = [&](const std::string& msg) {
        throw parse_error("frame file line " + std::to_string(lineno) + ": " + msg, 0);
    };
    auto read_rows = [&](int rows, int cols) {
        std::vector<int> t;
        for (int r = 0; r < rows; r++) {
            if (!std::getline(in, line)) bad("unexpected end of table");
            lineno++;
            std::istringstream ls(line);
            int v, count = 0;
            while (ls >> v) {
                t.push_back(v);
                count++;
            }
            if (count != cols) bad("expected " + std::to_string(cols) + " entries per row");
        }
        return t;
    };
    while (std::getline(in, line)) {
        lineno++;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t z = line.find_last_not_of(" \t\r");
        line = line.substr(a, z - a + 1);
        if (line.rfind("G=", 0) == 0) {
            F.gn = std::stoi(line.substr(2));
            F.K = Bitset(F.gn);
        } else if (line.rfind("T=", 0) == 0) F.tn = std::stoi(line.substr(2));
        else if (line == "prod:") F.prod = read_rows(F.gn, F.gn);
        else if (line.rfind("eps=", 0) == 0) F.eps = std::stoi(line.substr(4));
        else if (line.rfind("eps_t=", 0) == 0) F.eps_t = std::stoi(line.substr(6));
        else if (line.rfind("K:", 0) == 0) {
            std::istringstream ls(line.substr(2));
            int v;
            while (ls >> v) F.K.set(v);
        } else if (line == "N:") {
            auto rows = read_rows(F.gn, F.tn);
            F.rel.assign(rows.begin(), rows.end());
        } else if (line == "lres:") F.lres = read_rows(F.gn, F.tn);
        else if (line == "rres:") F.rres = read_rows(F.tn, F.gn);
        else bad("unrecognized line '" + line + "'");
    }
    if (auto badf = F.validate()) throw parse_error("frame file: " + *badf, 0);
    return F;
}

}  // namespace naclog
