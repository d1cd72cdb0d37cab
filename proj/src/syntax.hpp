#ifndef NACLOG_SYNTAX_HPP
#define NACLOG_SYNTAX_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace naclog {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t offset)
        : error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Connectives of the full language; One/Zero are the nullary ones.
enum class Conn : std::uint8_t {
    Var = 0,
    One,
    Zero,
    Bang,
    Meet,  // token "/\", lattice meet
    Join,  // token "\/", lattice join
    Prod,  // token ".", multiplication
    Ldiv,  // token "\", left residual a \ b
    Rdiv,  // token "/", right residual b / a
};

bool is_binary(Conn c);
const char* conn_token(Conn c);

// Fragment of the language: which connectives may occur.
class Fragment {
public:
    static Fragment all();           // {/\ \/ . \ / ! 1 0}
    static Fragment full_lambek();   // L  = {/\ \/ . \ / 1}
    static Fragment full_lambek0();  // L0 = L + 0
    static Fragment modal();         // L! = L + !
    Fragment() : mask_(0) {}

    bool has(Conn c) const;
    Fragment& add(Conn c);
    Fragment& remove(Conn c);
    bool subset_of(const Fragment& other) const;
    bool operator==(const Fragment& o) const { return mask_ == o.mask_; }
    std::string to_string() const;

private:
    std::uint16_t mask_;
};

// Immutable formula tree. Copies are cheap (shared nodes).
class Formula {
public:
    Formula() = default;  // empty handle; only comparisons/valid() allowed

    static Formula var(const std::string& name);
    static Formula one();
    static Formula zero();
    static Formula bang(Formula a);
    static Formula binary(Conn c, Formula a, Formula b);
    static Formula meet(Formula a, Formula b) { return binary(Conn::Meet, a, b); }
    static Formula join(Formula a, Formula b) { return binary(Conn::Join, a, b); }
    static Formula prod(Formula a, Formula b) { return binary(Conn::Prod, a, b); }
    static Formula ldiv(Formula a, Formula b) { return binary(Conn::Ldiv, a, b); }
    static Formula rdiv(Formula a, Formula b) { return binary(Conn::Rdiv, a, b); }

    bool valid() const { return p_ != nullptr; }
    Conn conn() const;
    const std::string& var_name() const;
    Formula left() const;
    Formula right() const;   // for Bang, the child is left()
    int size() const;        // node count
    std::size_t hash() const;

    bool operator==(const Formula& o) const;
    bool operator!=(const Formula& o) const { return !(*this == o); }
    bool operator<(const Formula& o) const;  // deterministic structural order

    bool in_fragment(const Fragment& f) const;
    std::string to_string() const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
    std::shared_ptr<const Node> p_;
};

// Element of the free unital groupoid over formulas, kept as a raw tree:
// Unit and Node(x, Unit) are distinct values. The calculus identifies them
// (see struct_normalize), the data type does not.
class StructTerm {
public:
    StructTerm() = default;

    static StructTerm unit();
    static StructTerm leaf(Formula f);
    static StructTerm node(StructTerm l, StructTerm r);

    enum class Kind : std::uint8_t { Unit, Leaf, Node };

    bool valid() const { return p_ != nullptr; }
    Kind kind() const;
    bool is_unit() const { return kind() == Kind::Unit; }
    bool is_leaf() const { return kind() == Kind::Leaf; }
    bool is_node() const { return kind() == Kind::Node; }
    Formula leaf_formula() const;
    StructTerm left() const;
    StructTerm right() const;
    int size() const;  // Unit = 1, Leaf = formula size, Node = 1 + children
    std::size_t hash() const;

    bool operator==(const StructTerm& o) const;
    bool operator!=(const StructTerm& o) const { return !(*this == o); }
    bool operator<(const StructTerm& o) const;

    std::string to_string() const;

private:
    struct Node_;
    explicit StructTerm(std::shared_ptr<const Node_> p) : p_(std::move(p)) {}
    std::shared_ptr<const Node_> p_;
};

// Unary linear polynomial: a struct term with exactly one hole, stored as
// the path from the root to the hole (each step keeps the other child).
class Context {
public:
    struct Step {
        bool hole_left;     // hole is in the left child; sibling is the right one
        StructTerm sibling;
        bool operator==(const Step& o) const {
            return hole_left == o.hole_left && sibling == o.sibling;
        }
    };

    Context() = default;  // the identity polynomial (just a hole)

    static Context hole() { return Context(); }
    // wrap the current context: hole descends into one child of a new node
    Context extend_left(StructTerm right_sibling) const;   // Node(<this>, sibling)
    Context extend_right(StructTerm left_sibling) const;   // Node(sibling, <this>)
    // composition: place `inner` into this context's hole
    Context compose(const Context& inner) const;

    bool is_hole() const { return steps_.empty(); }
    const std::vector<Step>& steps() const { return steps_; }

    bool operator==(const Context& o) const { return steps_ == o.steps_; }

    std::string to_string() const;  // prints with "_" for the hole

private:
    std::vector<Step> steps_;  // root-to-hole
};

// u(x): plain structural substitution, no unit simplification.
StructTerm substitute(const Context& u, const StructTerm& x);

// Succedent is a formula or the empty stoup.
class Sequent {
public:
    Sequent() = default;
    Sequent(StructTerm antecedent, Formula succedent)
        : ant_(std::move(antecedent)), succ_(std::move(succedent)) {}
    static Sequent with_empty_stoup(StructTerm antecedent) {
        Sequent s;
        s.ant_ = std::move(antecedent);
        return s;
    }

    bool valid() const { return ant_.valid(); }
    const StructTerm& antecedent() const { return ant_; }
    bool has_empty_stoup() const { return !succ_.has_value(); }
    const Formula& succedent() const { return *succ_; }
    const std::optional<Formula>& succedent_opt() const { return succ_; }

    int size() const;
    std::size_t hash() const;
    bool operator==(const Sequent& o) const;
    bool operator!=(const Sequent& o) const { return !(*this == o); }
    bool operator<(const Sequent& o) const;

    std::string to_string() const;

private:
    StructTerm ant_;
    std::optional<Formula> succ_;
};

// Parsing. The grammar is fully parenthesized:
//   sequent    := structterm "=>" [ formula ]
//   structterm := "e" | formula | "(" structterm "o" structterm ")"
//   formula    := "1" | "0" | var | "!" formula | "(" formula binop formula ")"
//   binop      := "." | "/\" | "\/" | "\" | "/"
// Variables match [a-z][a-z0-9_]*; "e" and "o" are reserved.
Formula parse_formula(const std::string& text);
Sequent parse_sequent(const std::string& text);
Sequent parse_sequent(const std::string& text, const Fragment& fragment);

// Batch file: one sequent per line, '#' starts a comment, lines beginning
// with "assume:" are collected as the hypothesis set.
struct Batch {
    std::vector<Sequent> assumptions;
    std::vector<Sequent> goals;
};
Batch parse_batch(const std::string& text);
Batch parse_batch(const std::string& text, const Fragment& fragment);

// rho: replace each o with . (rho(e) = 1, homomorphic elsewhere).
Formula rho(const StructTerm& x);
// theta: empty stoup reads as 0, formulas are untouched.
Formula theta(const std::optional<Formula>& d);

// True iff every leaf of x is a !-rooted formula (the set K).
bool is_k_term(const StructTerm& x);

// Unit-law normal form: drops Unit children of Nodes recursively. The result
// is either Unit or a tree with no Unit inside. This is how calculus rules
// read struct terms as elements of the free unital groupoid.
StructTerm struct_normalize(const StructTerm& x);
Sequent sequent_normalize(const Sequent& s);

std::set<Formula> subformulas(const Formula& a);
std::set<Formula> subformulas(const Sequent& s);
void collect_variables(const Formula& a, std::set<std::string>& out);
void collect_variables(const Sequent& s, std::set<std::string>& out);

bool term_in_fragment(const StructTerm& x, const Fragment& f);
bool sequent_in_fragment(const Sequent& s, const Fragment& f);

}  // namespace naclog

namespace std {
template <>
struct hash<naclog::Formula> {
    size_t operator()(const naclog::Formula& f) const { return f.hash(); }
};
template <>
struct hash<naclog::StructTerm> {
    size_t operator()(const naclog::StructTerm& t) const { return t.hash(); }
};
template <>
struct hash<naclog::Sequent> {
    size_t operator()(const naclog::Sequent& s) const { return s.hash(); }
};
}  // namespace std

#endif
