#ifndef NACLOG_FRAMES_HPP
#define NACLOG_FRAMES_HPP

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace naclog {

// Small dynamic bitset; frames and closed sets stay well under a few
// hundred bits at the scales this library runs at.
class Bitset {
public:
    Bitset() : n_(0) {}
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}
    static Bitset full(int n);

    int size() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v = true);
    int count() const;
    bool empty() const;
    bool subset_of(const Bitset& o) const;
    Bitset intersect(const Bitset& o) const;
    Bitset unite(const Bitset& o) const;
    std::vector<int> members() const;

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }
    bool operator<(const Bitset& o) const;
    std::size_t hash() const;

private:
    int n_;
    std::vector<std::uint64_t> w_;
};

// Enriched residuated frame with finite G and T. lres/rres store the
// nuclearity witnesses x ⫽ z and z ⫻ y as T indices.
struct Frame {
    int gn = 0;
    std::vector<int> prod;  // gn*gn
    int eps = 0;
    int tn = 0;
    std::vector<char> rel;   // gn*tn, N(x, t)
    std::vector<int> lres;   // gn*tn -> T
    std::vector<int> rres;   // tn*gn -> T
    Bitset K;                // subset of G
    std::optional<int> eps_t;

    int gprod(int x, int y) const { return prod[x * gn + y]; }
    bool N(int x, int t) const { return rel[x * tn + t] != 0; }
    int wl(int x, int t) const { return lres[x * tn + t]; }  // x ⫽ t
    int wr(int t, int y) const { return rres[t * gn + y]; }  // t ⫻ y

    // nuclearity, K a subunital groupoid, indices in range
    std::optional<std::string> validate() const;
};

Bitset polarity_right(const Frame& F, const Bitset& X);  // X^> over T
Bitset polarity_left(const Frame& F, const Bitset& Y);   // Y^< over G
Bitset gamma(const Frame& F, const Bitset& X);
Bitset basis_set(const Frame& F, int t);  // {t}^<

// The closed-set algebra F+. Carrier i corresponds to elems[i].
struct FPlusAlgebra {
    FiniteAlgebra alg;
    std::vector<Bitset> elems;
    int index_of(const Bitset& b) const;
};

// Materializes every closed set as an intersection of basis sets and
// assembles the interior rlu(z)-groupoid on them. Throws on nuclearity
// violations.
FPlusAlgebra frame_plus(const Frame& F);

// A frame together with the bookkeeping that relates it back to the
// algebra (or partial subalgebra) it was built from.
struct BuiltFrame {
    Frame frame;
    std::vector<int> elem_to_g;  // origin carrier -> G index, -1 if absent
    std::vector<int> elem_to_t;  // origin carrier -> T index, -1 if absent
    std::vector<int> g_elem;     // G index -> origin carrier element
};

// Dedekind-MacNeille frame of an interior rlu(z)-groupoid: G = T = A,
// N = <=, K = the image of !.
BuiltFrame dm_frame(const FiniteAlgebra& A);
// Same but with an explicitly chosen K (for algebras without !); K must
// contain 1 and be closed under the product.
BuiltFrame dm_frame_with_k(const FiniteAlgebra& A, const Bitset& K);

// The frame F_{A,B} over the subgroupoid generated by B; T is the set of
// polynomial-induced functions on G_B (represented extensionally) paired
// with elements of B. with_zero builds the B0 = B + {0} variant whose
// distinguished T element is (id, 0).
BuiltFrame fep_frame(const FiniteAlgebra& A, const Bitset& B, bool with_zero);

// {elem}^< for an origin element.
Bitset embed_closed_set(const BuiltFrame& bf, int elem);
int embed_index(const BuiltFrame& bf, const FPlusAlgebra& fp, int elem);

// Verifies that {_}^< is injective on B and preserves every operation of A
// that is defined in the partial subalgebra B (all of them when B is the
// full carrier), including the interior-operation clause
// !b in !({b}^<) subset of {!b}^<. Returns the first violated clause.
std::optional<std::string> verify_embedding(const FiniteAlgebra& A, const Bitset& B,
                                            const BuiltFrame& bf, const FPlusAlgebra& fp);

enum class FrameRule : std::uint8_t { E, C, I, Ki, Kc, Ke, Ka1, Ka2 };
const char* frame_rule_name(FrameRule r);
Eq frame_rule_equation(FrameRule r);
bool check_frame_rule(const Frame& F, FrameRule r);

// Adjoins gamma(empty) as the designated zero; the zero-free reduct is
// untouched.
FPlusAlgebra zero_extension(const FPlusAlgebra& fp);

std::string frame_to_string(const Frame& F);
Frame parse_frame(const std::string& text);

}  // namespace naclog

#endif
