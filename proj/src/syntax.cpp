#include "syntax.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace naclog {

namespace {

std::size_t hash_mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_binary(Conn c) {
    switch (c) {
        case Conn::Meet:
        case Conn::Join:
        case Conn::Prod:
        case Conn::Ldiv:
        case Conn::Rdiv:
            return true;
        default:
            return false;
    }
}

const char* conn_token(Conn c) {
    switch (c) {
        case Conn::Var: return "<var>";
        case Conn::One: return "1";
        case Conn::Zero: return "0";
        case Conn::Bang: return "!";
        case Conn::Meet: return "/\\";
        case Conn::Join: return "\\/";
        case Conn::Prod: return ".";
        case Conn::Ldiv: return "\\";
        case Conn::Rdiv: return "/";
    }
    return "?";
}

// ---------------------------------------------------------------- Fragment

namespace {
std::uint16_t conn_bit(Conn c) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(c)); }
}

Fragment Fragment::all() {
    Fragment f = full_lambek0();
    f.add(Conn::Bang);
    return f;
}

Fragment Fragment::full_lambek() {
    Fragment f;
    f.add(Conn::Meet).add(Conn::Join).add(Conn::Prod).add(Conn::Ldiv).add(Conn::Rdiv).add(Conn::One);
    return f;
}

Fragment Fragment::full_lambek0() {
    Fragment f = full_lambek();
    f.add(Conn::Zero);
    return f;
}

Fragment Fragment::modal() {
    Fragment f = full_lambek();
    f.add(Conn::Bang);
    return f;
}

bool Fragment::has(Conn c) const {
    if (c == Conn::Var) return true;
    return (mask_ & conn_bit(c)) != 0;
}

Fragment& Fragment::add(Conn c) {
    mask_ |= conn_bit(c);
    return *this;
}

Fragment& Fragment::remove(Conn c) {
    mask_ &= static_cast<std::uint16_t>(~conn_bit(c));
    return *this;
}

bool Fragment::subset_of(const Fragment& other) const { return (mask_ & ~other.mask_) == 0; }

std::string Fragment::to_string() const {
    static const Conn order[] = {Conn::Meet, Conn::Join, Conn::Prod, Conn::Ldiv,
                                 Conn::Rdiv, Conn::Bang, Conn::One,  Conn::Zero};
    std::string out = "{";
    bool first = true;
    for (Conn c : order) {
        if (!has(c)) continue;
        if (!first) out += " ";
        out += conn_token(c);
        first = false;
    }
    out += "}";
    return out;
}

// ----------------------------------------------------------------- Formula

struct Formula::Node {
    Conn c;
    std::string var;
    Formula l, r;
    int size = 1;
    std::size_t h = 0;
};

Formula Formula::var(const std::string& name) {
    auto n = std::make_shared<Node>();
    n->c = Conn::Var;
    n->var = name;
    n->size = 1;
    n->h = hash_mix(0x11, std::hash<std::string>{}(name));
    return Formula(std::move(n));
}

Formula Formula::one() {
    auto n = std::make_shared<Node>();
    n->c = Conn::One;
    n->h = 0x9111;
    return Formula(std::move(n));
}

Formula Formula::zero() {
    auto n = std::make_shared<Node>();
    n->c = Conn::Zero;
    n->h = 0x9000;
    return Formula(std::move(n));
}

Formula Formula::bang(Formula a) {
    auto n = std::make_shared<Node>();
    n->c = Conn::Bang;
    n->size = 1 + a.size();
    n->h = hash_mix(0x21, a.hash());
    n->l = std::move(a);
    return Formula(std::move(n));
}

Formula Formula::binary(Conn c, Formula a, Formula b) {
    if (!is_binary(c)) throw error("Formula::binary: not a binary connective");
    auto n = std::make_shared<Node>();
    n->c = c;
    n->size = 1 + a.size() + b.size();
    n->h = hash_mix(hash_mix(static_cast<std::size_t>(c) * 0x51, a.hash()), b.hash());
    n->l = std::move(a);
    n->r = std::move(b);
    return Formula(std::move(n));
}

Conn Formula::conn() const { return p_->c; }
const std::string& Formula::var_name() const { return p_->var; }
Formula Formula::left() const { return p_->l; }
Formula Formula::right() const { return p_->r; }
int Formula::size() const { return p_->size; }
std::size_t Formula::hash() const { return p_->h; }

bool Formula::operator==(const Formula& o) const {
    if (p_ == o.p_) return true;
    if (!p_ || !o.p_) return false;
    if (p_->h != o.p_->h || p_->c != o.p_->c || p_->size != o.p_->size) return false;
    switch (p_->c) {
        case Conn::Var: return p_->var == o.p_->var;
        case Conn::One:
        case Conn::Zero: return true;
        case Conn::Bang: return p_->l == o.p_->l;
        default: return p_->l == o.p_->l && p_->r == o.p_->r;
    }
}

bool Formula::operator<(const Formula& o) const {
    if (p_ == o.p_) return false;
    if (p_->c != o.p_->c) return p_->c < o.p_->c;
    switch (p_->c) {
        case Conn::Var: return p_->var < o.p_->var;
        case Conn::One:
        case Conn::Zero: return false;
        case Conn::Bang: return p_->l < o.p_->l;
        default:
            if (p_->l < o.p_->l) return true;
            if (o.p_->l < p_->l) return false;
            return p_->r < o.p_->r;
    }
}

bool Formula::in_fragment(const Fragment& f) const {
    switch (p_->c) {
        case Conn::Var: return true;
        case Conn::One:
        case Conn::Zero: return f.has(p_->c);
        case Conn::Bang: return f.has(Conn::Bang) && p_->l.in_fragment(f);
        default: return f.has(p_->c) && p_->l.in_fragment(f) && p_->r.in_fragment(f);
    }
}

std::string Formula::to_string() const {
    switch (p_->c) {
        case Conn::Var: return p_->var;
        case Conn::One: return "1";
        case Conn::Zero: return "0";
        case Conn::Bang: return "!" + p_->l.to_string();
        default:
            return "(" + p_->l.to_string() + " " + conn_token(p_->c) + " " + p_->r.to_string() +
                   ")";
    }
}

// -------------------------------------------------------------- StructTerm

struct StructTerm::Node_ {
    Kind k;
    Formula f;
    StructTerm l, r;
    int size = 1;
    std::size_t h = 0;
};

StructTerm StructTerm::unit() {
    auto n = std::make_shared<Node_>();
    n->k = Kind::Unit;
    n->h = 0xE;
    return StructTerm(std::move(n));
}

StructTerm StructTerm::leaf(Formula f) {
    auto n = std::make_shared<Node_>();
    n->k = Kind::Leaf;
    n->size = f.size();
    n->h = hash_mix(0x31, f.hash());
    n->f = std::move(f);
    return StructTerm(std::move(n));
}

StructTerm StructTerm::node(StructTerm l, StructTerm r) {
    auto n = std::make_shared<Node_>();
    n->k = Kind::Node;
    n->size = 1 + l.size() + r.size();
    n->h = hash_mix(hash_mix(0x41, l.hash()), r.hash());
    n->l = std::move(l);
    n->r = std::move(r);
    return StructTerm(std::move(n));
}

StructTerm::Kind StructTerm::kind() const { return p_->k; }
Formula StructTerm::leaf_formula() const { return p_->f; }
StructTerm StructTerm::left() const { return p_->l; }
StructTerm StructTerm::right() const { return p_->r; }
int StructTerm::size() const { return p_->size; }
std::size_t StructTerm::hash() const { return p_->h; }

bool StructTerm::operator==(const StructTerm& o) const {
    if (p_ == o.p_) return true;
    if (!p_ || !o.p_) return false;
    if (p_->h != o.p_->h || p_->k != o.p_->k || p_->size != o.p_->size) return false;
    switch (p_->k) {
        case Kind::Unit: return true;
        case Kind::Leaf: return p_->f == o.p_->f;
        case Kind::Node: return p_->l == o.p_->l && p_->r == o.p_->r;
    }
    return false;
}

bool StructTerm::operator<(const StructTerm& o) const {
    if (p_ == o.p_) return false;
    if (p_->k != o.p_->k) return p_->k < o.p_->k;
    switch (p_->k) {
        case Kind::Unit: return false;
        case Kind::Leaf: return p_->f < o.p_->f;
        case Kind::Node:
            if (p_->l < o.p_->l) return true;
            if (o.p_->l < p_->l) return false;
            return p_->r < o.p_->r;
    }
    return false;
}

std::string StructTerm::to_string() const {
    switch (p_->k) {
        case Kind::Unit: return "e";
        case Kind::Leaf: return p_->f.to_string();
        case Kind::Node: return "(" + p_->l.to_string() + " o " + p_->r.to_string() + ")";
    }
    return "?";
}

// ----------------------------------------------------------------- Context

Context Context::extend_left(StructTerm right_sibling) const {
    Context c;
    c.steps_.reserve(steps_.size() + 1);
    c.steps_.push_back(Step{true, std::move(right_sibling)});
    c.steps_.insert(c.steps_.end(), steps_.begin(), steps_.end());
    return c;
}

Context Context::extend_right(StructTerm left_sibling) const {
    Context c;
    c.steps_.reserve(steps_.size() + 1);
    c.steps_.push_back(Step{false, std::move(left_sibling)});
    c.steps_.insert(c.steps_.end(), steps_.begin(), steps_.end());
    return c;
}

Context Context::compose(const Context& inner) const {
    Context c;
    c.steps_ = steps_;
    c.steps_.insert(c.steps_.end(), inner.steps_.begin(), inner.steps_.end());
    return c;
}

std::string Context::to_string() const {
    std::string out = "_";
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        if (it->hole_left)
            out = "(" + out + " o " + it->sibling.to_string() + ")";
        else
            out = "(" + it->sibling.to_string() + " o " + out + ")";
    }
    return out;
}

StructTerm substitute(const Context& u, const StructTerm& x) {
    StructTerm cur = x;
    const auto& steps = u.steps();
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (it->hole_left)
            cur = StructTerm::node(cur, it->sibling);
        else
            cur = StructTerm::node(it->sibling, cur);
    }
    return cur;
}

// ----------------------------------------------------------------- Sequent

int Sequent::size() const { return ant_.size() + (succ_ ? succ_->size() : 1); }

std::size_t Sequent::hash() const {
    return hash_mix(ant_.hash(), succ_ ? succ_->hash() : 0x715);
}

bool Sequent::operator==(const Sequent& o) const {
    if (succ_.has_value() != o.succ_.has_value()) return false;
    if (succ_ && !(*succ_ == *o.succ_)) return false;
    return ant_ == o.ant_;
}

bool Sequent::operator<(const Sequent& o) const {
    if (ant_ < o.ant_) return true;
    if (o.ant_ < ant_) return false;
    if (!succ_ && o.succ_) return true;
    if (!o.succ_) return false;
    return *succ_ < *o.succ_;
}

std::string Sequent::to_string() const {
    std::string out = ant_.to_string() + " =>";
    if (succ_) out += " " + succ_->to_string();
    return out;
}

// ------------------------------------------------------------------ Parser

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) pos++;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool try_eat(const char* tok) {
        skip_ws();
        std::size_t len = std::strlen(tok);
        if (s.compare(pos, len, tok) != 0) return false;
        // identifiers must not merge with a following identifier character
        if (std::isalpha(static_cast<unsigned char>(tok[0])) && pos + len < s.size()) {
            char next = s[pos + len];
            if (std::islower(static_cast<unsigned char>(next)) ||
                std::isdigit(static_cast<unsigned char>(next)) || next == '_')
                return false;
        }
        pos += len;
        return true;
    }
    void expect(const char* tok, const char* what) {
        if (!try_eat(tok)) throw parse_error(std::string("expected ") + what, pos);
    }
    std::optional<std::string> try_ident() {
        skip_ws();
        if (pos >= s.size()) return std::nullopt;
        char c = s[pos];
        if (!(c >= 'a' && c <= 'z')) return std::nullopt;
        std::size_t start = pos;
        std::size_t end = pos + 1;
        while (end < s.size()) {
            char d = s[end];
            if ((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_')
                end++;
            else
                break;
        }
        std::string name = s.substr(start, end - start);
        if (name == "e" || name == "o") return std::nullopt;  // reserved
        pos = end;
        return name;
    }
};

Formula parse_formula_inner(Lexer& lx);

// Parses the body after '(' up to ')': either a struct node or a binary
// formula, decided by the operator in the middle.
StructTerm parse_paren_struct(Lexer& lx) {
    // left operand may itself be a struct term
    StructTerm left;
    if (lx.peek() == '(') {
        lx.expect("(", "'('");
        left = parse_paren_struct(lx);
    } else if (lx.try_eat("e")) {
        left = StructTerm::unit();
    } else {
        left = StructTerm::leaf(parse_formula_inner(lx));
    }
    if (lx.try_eat("o")) {
        StructTerm right;
        if (lx.peek() == '(') {
            lx.expect("(", "'('");
            right = parse_paren_struct(lx);
        } else if (lx.try_eat("e")) {
            right = StructTerm::unit();
        } else {
            right = StructTerm::leaf(parse_formula_inner(lx));
        }
        lx.expect(")", "')'");
        return StructTerm::node(left, right);
    }
    // otherwise this must be a formula-level binary operator
    Conn c;
    if (lx.try_eat("/\\"))
        c = Conn::Meet;
    else if (lx.try_eat("\\/"))
        c = Conn::Join;
    else if (lx.try_eat("."))
        c = Conn::Prod;
    else if (lx.try_eat("\\"))
        c = Conn::Ldiv;
    else if (lx.try_eat("/"))
        c = Conn::Rdiv;
    else
        throw parse_error("expected a connective", lx.pos);
    if (!left.is_leaf())
        throw parse_error("formula connective applied to a structure", lx.pos);
    Formula rhs = parse_formula_inner(lx);
    lx.expect(")", "')'");
    return StructTerm::leaf(Formula::binary(c, left.leaf_formula(), rhs));
}

Formula parse_formula_inner(Lexer& lx) {
    if (lx.try_eat("!")) return Formula::bang(parse_formula_inner(lx));
    if (lx.try_eat("1")) return Formula::one();
    if (lx.try_eat("0")) return Formula::zero();
    if (auto name = lx.try_ident()) return Formula::var(*name);
    if (lx.peek() == '(') {
        lx.expect("(", "'('");
        StructTerm t = parse_paren_struct(lx);
        if (!t.is_leaf()) throw parse_error("structure where a formula is required", lx.pos);
        return t.leaf_formula();
    }
    throw parse_error("expected a formula", lx.pos);
}

StructTerm parse_struct_inner(Lexer& lx) {
    if (lx.try_eat("e")) return StructTerm::unit();
    if (lx.peek() == '(') {
        lx.expect("(", "'('");
        return parse_paren_struct(lx);
    }
    return StructTerm::leaf(parse_formula_inner(lx));
}

}  // namespace

Formula parse_formula(const std::string& text) {
    Lexer lx{text};
    Formula f = parse_formula_inner(lx);
    if (!lx.eof()) throw parse_error("trailing input after formula", lx.pos);
    return f;
}

Sequent parse_sequent(const std::string& text) {
    Lexer lx{text};
    StructTerm ant = parse_struct_inner(lx);
    lx.expect("=>", "'=>'");
    if (lx.eof()) return Sequent::with_empty_stoup(ant);
    Formula succ = parse_formula_inner(lx);
    if (!lx.eof()) throw parse_error("trailing input after sequent", lx.pos);
    return Sequent(ant, succ);
}

Sequent parse_sequent(const std::string& text, const Fragment& fragment) {
    Sequent s = parse_sequent(text);
    if (!sequent_in_fragment(s, fragment))
        throw parse_error("sequent uses a connective outside the fragment " + fragment.to_string(),
                          0);
    if (s.has_empty_stoup() && !fragment.has(Conn::Zero))
        throw parse_error("empty stoup requires 0 in the fragment", 0);
    return s;
}

Batch parse_batch(const std::string& text) {
    Batch b;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto cut = line.find('#');
        if (cut != std::string::npos) line.erase(cut);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t z = line.find_last_not_of(" \t\r");
        std::string body = line.substr(a, z - a + 1);
        try {
            if (body.rfind("assume:", 0) == 0) {
                b.assumptions.push_back(parse_sequent(body.substr(7)));
            } else {
                b.goals.push_back(parse_sequent(body));
            }
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what(), e.offset());
        }
    }
    return b;
}

Batch parse_batch(const std::string& text, const Fragment& fragment) {
    Batch b = parse_batch(text);
    for (const auto& s : b.assumptions)
        if (!sequent_in_fragment(s, fragment))
            throw parse_error("assumption outside fragment: " + s.to_string(), 0);
    for (const auto& s : b.goals)
        if (!sequent_in_fragment(s, fragment))
            throw parse_error("goal outside fragment: " + s.to_string(), 0);
    return b;
}

// -------------------------------------------------------------- operations

Formula rho(const StructTerm& x) {
    switch (x.kind()) {
        case StructTerm::Kind::Unit: return Formula::one();
        case StructTerm::Kind::Leaf: return x.leaf_formula();
        case StructTerm::Kind::Node: return Formula::prod(rho(x.left()), rho(x.right()));
    }
    throw error("rho: bad term");
}

Formula theta(const std::optional<Formula>& d) {
    if (!d) return Formula::zero();
    return *d;
}

bool is_k_term(const StructTerm& x) {
    switch (x.kind()) {
        case StructTerm::Kind::Unit: return true;
        case StructTerm::Kind::Leaf: return x.leaf_formula().conn() == Conn::Bang;
        case StructTerm::Kind::Node: return is_k_term(x.left()) && is_k_term(x.right());
    }
    return false;
}

StructTerm struct_normalize(const StructTerm& x) {
    if (!x.is_node()) return x;
    StructTerm l = struct_normalize(x.left());
    StructTerm r = struct_normalize(x.right());
    if (l.is_unit()) return r;
    if (r.is_unit()) return l;
    if (l == x.left() && r == x.right()) return x;
    return StructTerm::node(l, r);
}

Sequent sequent_normalize(const Sequent& s) {
    StructTerm n = struct_normalize(s.antecedent());
    if (n == s.antecedent()) return s;
    if (s.has_empty_stoup()) return Sequent::with_empty_stoup(n);
    return Sequent(n, s.succedent());
}

namespace {
void subformulas_into(const Formula& a, std::set<Formula>& out) {
    if (!out.insert(a).second) return;
    switch (a.conn()) {
        case Conn::Bang: subformulas_into(a.left(), out); break;
        case Conn::Meet:
        case Conn::Join:
        case Conn::Prod:
        case Conn::Ldiv:
        case Conn::Rdiv:
            subformulas_into(a.left(), out);
            subformulas_into(a.right(), out);
            break;
        default: break;
    }
}
void term_formulas(const StructTerm& t, std::set<Formula>& out) {
    switch (t.kind()) {
        case StructTerm::Kind::Unit: break;
        case StructTerm::Kind::Leaf: subformulas_into(t.leaf_formula(), out); break;
        case StructTerm::Kind::Node:
            term_formulas(t.left(), out);
            term_formulas(t.right(), out);
            break;
    }
}
}  // namespace

std::set<Formula> subformulas(const Formula& a) {
    std::set<Formula> out;
    subformulas_into(a, out);
    return out;
}

std::set<Formula> subformulas(const Sequent& s) {
    std::set<Formula> out;
    term_formulas(s.antecedent(), out);
    if (!s.has_empty_stoup()) subformulas_into(s.succedent(), out);
    return out;
}

void collect_variables(const Formula& a, std::set<std::string>& out) {
    switch (a.conn()) {
        case Conn::Var: out.insert(a.var_name()); break;
        case Conn::Bang: collect_variables(a.left(), out); break;
        case Conn::Meet:
        case Conn::Join:
        case Conn::Prod:
        case Conn::Ldiv:
        case Conn::Rdiv:
            collect_variables(a.left(), out);
            collect_variables(a.right(), out);
            break;
        default: break;
    }
}

void collect_variables(const Sequent& s, std::set<std::string>& out) {
    for (const auto& f : subformulas(s))
        if (f.conn() == Conn::Var) out.insert(f.var_name());
}

bool term_in_fragment(const StructTerm& x, const Fragment& f) {
    switch (x.kind()) {
        case StructTerm::Kind::Unit: return true;
        case StructTerm::Kind::Leaf: return x.leaf_formula().in_fragment(f);
        case StructTerm::Kind::Node:
            return term_in_fragment(x.left(), f) && term_in_fragment(x.right(), f);
    }
    return false;
}

bool sequent_in_fragment(const Sequent& s, const Fragment& f) {
    if (!term_in_fragment(s.antecedent(), f)) return false;
    if (s.has_empty_stoup()) return f.has(Conn::Zero);
    return s.succedent().in_fragment(f);
}

}  // namespace naclog
