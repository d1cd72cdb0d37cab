#include "calculus.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace naclog {

// ------------------------------------------------------------- LogicSpec

std::string LogicSpec::structural_letters() const {
    std::string out;
    if (rule_e) out += 'e';
    if (rule_c) out += 'c';
    if (rule_i) out += 'i';
    if (rule_o) out += 'o';
    if (rule_a) out += 'a';
    return out;
}

void LogicSpec::validate() const {
    if (rule_o && !fragment.has(Conn::Zero))
        throw error("logic spec '" + name + "': rule (o) requires 0 in the fragment");
    if (classical != Classical::None) {
        for (Conn c : {Conn::Prod, Conn::Ldiv, Conn::Rdiv, Conn::One, Conn::Zero})
            if (!fragment.has(c))
                throw error("logic spec '" + name +
                            "': classical initial sequents need {. \\ / 1 0}");
    }
}

std::vector<std::string> logic_base_names() {
    return {"fnl", "infnl", "cyinfnl", "nacill", "nacill0", "naccll-", "naccll"};
}

LogicSpec parse_logic_spec(const std::string& spec) {
    std::string base = spec;
    std::string letters;
    auto plus = spec.find('+');
    if (plus != std::string::npos) {
        base = spec.substr(0, plus);
        letters = spec.substr(plus + 1);
    }
    LogicSpec out;
    out.name = spec;
    if (base == "fnl") {
        out.fragment = Fragment::full_lambek();
    } else if (base == "infnl") {
        out.fragment = Fragment::full_lambek0();
        out.classical = Classical::Involutive;
    } else if (base == "cyinfnl") {
        out.fragment = Fragment::full_lambek0();
        out.classical = Classical::Cyclic;
    } else if (base == "nacill") {
        out.fragment = Fragment::modal();
    } else if (base == "nacill0") {
        out.fragment = Fragment::all();
    } else if (base == "naccll-") {
        out.fragment = Fragment::all();
        out.classical = Classical::Involutive;
    } else if (base == "naccll") {
        out.fragment = Fragment::all();
        out.classical = Classical::Cyclic;
    } else {
        std::string names;
        for (const auto& n : logic_base_names()) names += (names.empty() ? "" : ", ") + n;
        throw error("unknown logic '" + base + "'; valid base names: " + names);
    }
    for (char ch : letters) {
        switch (ch) {
            case 'e': out.rule_e = true; break;
            case 'c': out.rule_c = true; break;
            case 'i': out.rule_i = true; break;
            case 'o': out.rule_o = true; break;
            case 'w':
                out.rule_i = true;
                out.rule_o = true;
                break;
            case 'a': out.rule_a = true; break;
            case '+': break;
            default:
                throw error(std::string("unknown structural rule letter '") + ch +
                            "' in logic spec '" + spec + "' (valid: e c i o w a)");
        }
    }
    out.validate();
    return out;
}

// --------------------------------------------------------- rule metadata

bool rule_is_initial(RuleId id) {
    switch (id) {
        case RuleId::Id:
        case RuleId::OneR:
        case RuleId::ZeroL:
        case RuleId::Dne1:
        case RuleId::Dne2:
        case RuleId::Comp:
        case RuleId::Cyc:
        case RuleId::Assumption:
            return true;
        default:
            return false;
    }
}

int rule_premise_count(RuleId id) {
    if (rule_is_initial(id)) return 0;
    switch (id) {
        case RuleId::Cut:
        case RuleId::LdivL:
        case RuleId::RdivL:
        case RuleId::ProdR:
        case RuleId::MeetR:
        case RuleId::JoinL:
            return 2;
        default:
            return 1;
    }
}

bool rule_enabled(RuleId id, const LogicSpec& logic) {
    const Fragment& f = logic.fragment;
    switch (id) {
        case RuleId::Id:
        case RuleId::Cut:
        case RuleId::Assumption: return true;
        case RuleId::OneR:
        case RuleId::OneL: return f.has(Conn::One);
        case RuleId::ZeroL:
        case RuleId::ZeroR: return f.has(Conn::Zero);
        case RuleId::Dne1:
        case RuleId::Dne2:
        case RuleId::Comp: return logic.classical != Classical::None;
        case RuleId::Cyc: return logic.classical == Classical::Cyclic;
        case RuleId::LdivL:
        case RuleId::LdivR: return f.has(Conn::Ldiv);
        case RuleId::ProdL:
        case RuleId::ProdR: return f.has(Conn::Prod);
        case RuleId::RdivL:
        case RuleId::RdivR: return f.has(Conn::Rdiv);
        case RuleId::MeetL:
        case RuleId::MeetR: return f.has(Conn::Meet);
        case RuleId::JoinL:
        case RuleId::JoinR: return f.has(Conn::Join);
        case RuleId::BangL:
        case RuleId::BangR:
        case RuleId::Kw:
        case RuleId::Kc:
        case RuleId::Ke:
        case RuleId::Ka1:
        case RuleId::Ka2: return f.has(Conn::Bang);
        case RuleId::StructE: return logic.rule_e;
        case RuleId::StructI: return logic.rule_i;
        case RuleId::StructO: return logic.rule_o && f.has(Conn::Zero);
        case RuleId::StructC: return logic.rule_c;
        case RuleId::StructA: return logic.rule_a;
    }
    return false;
}

std::string rule_name(const RuleApp& app) {
    switch (app.id) {
        case RuleId::Id: return "id";
        case RuleId::OneR: return "oneR";
        case RuleId::ZeroL: return "zeroL";
        case RuleId::Dne1: return "dne1";
        case RuleId::Dne2: return "dne2";
        case RuleId::Comp: return app.reversed ? "compRev" : "comp";
        case RuleId::Cyc: return app.reversed ? "cycRev" : "cyc";
        case RuleId::Assumption: return "assume";
        case RuleId::Cut: return "cut";
        case RuleId::OneL: return "oneL";
        case RuleId::ZeroR: return "zeroR";
        case RuleId::LdivL: return "ldivL";
        case RuleId::LdivR: return "ldivR";
        case RuleId::ProdL: return "prodL";
        case RuleId::ProdR: return "prodR";
        case RuleId::RdivL: return "rdivL";
        case RuleId::RdivR: return "rdivR";
        case RuleId::MeetL: return app.which == 2 ? "meetL2" : "meetL1";
        case RuleId::MeetR: return "meetR";
        case RuleId::JoinL: return "joinL";
        case RuleId::JoinR: return app.which == 2 ? "joinR2" : "joinR1";
        case RuleId::BangL: return "bangL";
        case RuleId::BangR: return "bangR";
        case RuleId::Kw: return "kw";
        case RuleId::Kc: return "kc";
        case RuleId::Ke: return app.reversed ? "keRev" : "ke";
        case RuleId::Ka1: return app.reversed ? "ka1Rev" : "ka1";
        case RuleId::Ka2: return app.reversed ? "ka2Rev" : "ka2";
        case RuleId::StructE: return "e";
        case RuleId::StructI: return "i";
        case RuleId::StructO: return "o";
        case RuleId::StructC: return "c";
        case RuleId::StructA: return app.reversed ? "aRev" : "a";
    }
    return "?";
}

// -------------------------------------------------------- rule premises

namespace {

StructTerm plug(const Context& u, const StructTerm& x) {
    return struct_normalize(substitute(u, x));
}

StructTerm lf(const Formula& f) { return StructTerm::leaf(f); }

// subterm of t at the hole of u, provided every sibling along the path
// matches; nullopt otherwise
std::optional<StructTerm> residue_at(const Context& u, StructTerm t) {
    for (const auto& step : u.steps()) {
        if (!t.is_node()) return std::nullopt;
        if (step.hole_left) {
            if (!(t.right() == step.sibling)) return std::nullopt;
            t = t.left();
        } else {
            if (!(t.left() == step.sibling)) return std::nullopt;
            t = t.right();
        }
    }
    return t;
}
Formula f_neg_r(const Formula& a) { return Formula::ldiv(a, Formula::zero()); }  // a\0
Formula f_neg_l(const Formula& a) { return Formula::rdiv(Formula::zero(), a); }  // 0/a

}  // namespace

std::optional<std::vector<Sequent>> rule_premises(const RuleApp& app, const Sequent& conclusion,
                                                  const LogicSpec& logic, std::string* why) {
    const Sequent c = sequent_normalize(conclusion);
    const StructTerm& A = c.antecedent();
    auto mismatch = [&](const char* what) {
        if (why) *why = std::string(what) + " in " + rule_name(app) + " at " + c.to_string();
        return std::nullopt;
    };

    if (!rule_enabled(app.id, logic)) {
        if (why) *why = "rule " + rule_name(app) + " is not part of logic " + logic.name;
        return std::nullopt;
    }
    if (!sequent_in_fragment(c, logic.fragment)) {
        if (why) *why = "conclusion outside fragment: " + c.to_string();
        return std::nullopt;
    }

    std::vector<Sequent> prem;
    // premise with the conclusion's succedent
    auto push_ctx = [&](const StructTerm& ant) {
        prem.push_back(sequent_normalize(c.has_empty_stoup()
                                             ? Sequent::with_empty_stoup(ant)
                                             : Sequent(ant, c.succedent())));
    };
    auto push = [&](const Sequent& s) { prem.push_back(sequent_normalize(s)); };
    auto done = [&]() -> std::optional<std::vector<Sequent>> {
        for (const auto& p : prem)
            if (!sequent_in_fragment(p, logic.fragment)) {
                if (why) *why = "premise outside fragment: " + p.to_string();
                return std::nullopt;
            }
        return prem;
    };

    switch (app.id) {
        case RuleId::Id:
            if (c.has_empty_stoup() || !A.is_leaf() || !(A.leaf_formula() == c.succedent()))
                return mismatch("not an (Id) instance");
            return done();
        case RuleId::OneR:
            if (c.has_empty_stoup() || !A.is_unit() || !(c.succedent() == Formula::one()))
                return mismatch("not a (=>1) instance");
            return done();
        case RuleId::ZeroL:
            if (!c.has_empty_stoup() || !(A == lf(Formula::zero())))
                return mismatch("not a (0=>) instance");
            return done();
        case RuleId::Dne1: {
            if (c.has_empty_stoup()) return mismatch("(DNE1) needs a formula succedent");
            if (!(A == lf(f_neg_l(f_neg_r(c.succedent()))))) return mismatch("not a (DNE1) instance");
            return done();
        }
        case RuleId::Dne2: {
            if (c.has_empty_stoup()) return mismatch("(DNE2) needs a formula succedent");
            if (!(A == lf(f_neg_r(f_neg_l(c.succedent()))))) return mismatch("not a (DNE2) instance");
            return done();
        }
        case RuleId::Comp: {
            if (c.has_empty_stoup()) return mismatch("(COMP) needs a formula succedent");
            Formula d = c.succedent();
            if (!app.reversed) {
                // (a\0)/b => a\(0/b)
                if (d.conn() != Conn::Ldiv || d.right().conn() != Conn::Rdiv ||
                    !(d.right().left() == Formula::zero()))
                    return mismatch("not a (COMP) instance");
                Formula a = d.left(), b = d.right().right();
                if (!(A == lf(Formula::rdiv(f_neg_r(a), b)))) return mismatch("(COMP) antecedent");
            } else {
                // a\(0/b) => (a\0)/b
                if (d.conn() != Conn::Rdiv || d.left().conn() != Conn::Ldiv ||
                    !(d.left().right() == Formula::zero()))
                    return mismatch("not a (COMP) instance");
                Formula a = d.left().left(), b = d.right();
                if (!(A == lf(Formula::ldiv(a, f_neg_l(b))))) return mismatch("(COMP) antecedent");
            }
            return done();
        }
        case RuleId::Cyc: {
            if (c.has_empty_stoup()) return mismatch("(CYC) needs a formula succedent");
            Formula d = c.succedent();
            if (!app.reversed) {
                // a\0 => 0/a
                if (d.conn() != Conn::Rdiv || !(d.left() == Formula::zero()))
                    return mismatch("not a (CYC) instance");
                if (!(A == lf(f_neg_r(d.right())))) return mismatch("(CYC) antecedent");
            } else {
                // 0/a => a\0
                if (d.conn() != Conn::Ldiv || !(d.right() == Formula::zero()))
                    return mismatch("not a (CYC) instance");
                if (!(A == lf(f_neg_l(d.left())))) return mismatch("(CYC) antecedent");
            }
            return done();
        }
        case RuleId::Assumption:
            return mismatch("assumption nodes are validated against the hypothesis set");

        case RuleId::Cut: {
            if (app.terms.size() != 1 || app.formulas.size() != 1)
                return mismatch("(cut) instantiation");
            const StructTerm& x = app.terms[0];
            const Formula& a = app.formulas[0];
            if (!(plug(app.u, x) == A)) return mismatch("(cut) conclusion shape");
            push(Sequent(struct_normalize(x), a));
            push_ctx(plug(app.u, lf(a)));
            return done();
        }
        case RuleId::OneL:
            if (!(plug(app.u, lf(Formula::one())) == A)) return mismatch("(1=>) conclusion shape");
            push_ctx(plug(app.u, StructTerm::unit()));
            return done();
        case RuleId::ZeroR:
            if (c.has_empty_stoup() || !(c.succedent() == Formula::zero()))
                return mismatch("(=>0) succedent");
            push(Sequent::with_empty_stoup(A));
            return done();
        case RuleId::LdivL: {
            if (app.terms.size() != 1 || app.formulas.size() != 2)
                return mismatch("(\\=>) instantiation");
            const StructTerm& x = app.terms[0];
            const Formula &a = app.formulas[0], &b = app.formulas[1];
            if (!(plug(app.u, StructTerm::node(x, lf(Formula::ldiv(a, b)))) == A))
                return mismatch("(\\=>) conclusion shape");
            push(Sequent(struct_normalize(x), a));
            push_ctx(plug(app.u, lf(b)));
            return done();
        }
        case RuleId::LdivR: {
            if (c.has_empty_stoup() || c.succedent().conn() != Conn::Ldiv)
                return mismatch("(=>\\) succedent");
            push(Sequent(struct_normalize(StructTerm::node(lf(c.succedent().left()), A)),
                         c.succedent().right()));
            return done();
        }
        case RuleId::ProdL: {
            if (app.formulas.size() != 2) return mismatch("(.=>) instantiation");
            const Formula &a = app.formulas[0], &b = app.formulas[1];
            if (!(plug(app.u, lf(Formula::prod(a, b))) == A))
                return mismatch("(.=>) conclusion shape");
            push_ctx(plug(app.u, StructTerm::node(lf(a), lf(b))));
            return done();
        }
        case RuleId::ProdR: {
            if (app.terms.size() != 2) return mismatch("(=>.) instantiation");
            if (c.has_empty_stoup() || c.succedent().conn() != Conn::Prod)
                return mismatch("(=>.) succedent");
            const StructTerm &x = app.terms[0], &y = app.terms[1];
            if (!(struct_normalize(StructTerm::node(x, y)) == A))
                return mismatch("(=>.) antecedent split");
            push(Sequent(struct_normalize(x), c.succedent().left()));
            push(Sequent(struct_normalize(y), c.succedent().right()));
            return done();
        }
        case RuleId::RdivR: {
            if (c.has_empty_stoup() || c.succedent().conn() != Conn::Rdiv)
                return mismatch("(=>/) succedent");
            push(Sequent(struct_normalize(StructTerm::node(A, lf(c.succedent().right()))),
                         c.succedent().left()));
            return done();
        }
        case RuleId::RdivL: {
            if (app.terms.size() != 1 || app.formulas.size() != 2)
                return mismatch("(/=>) instantiation");
            const StructTerm& x = app.terms[0];
            const Formula &a = app.formulas[0], &b = app.formulas[1];
            if (!(plug(app.u, StructTerm::node(lf(Formula::rdiv(b, a)), x)) == A))
                return mismatch("(/=>) conclusion shape");
            push(Sequent(struct_normalize(x), a));
            push_ctx(plug(app.u, lf(b)));
            return done();
        }
        case RuleId::MeetL: {
            if (app.formulas.size() != 2 || (app.which != 1 && app.which != 2))
                return mismatch("(/\\=>) instantiation");
            const Formula &a1 = app.formulas[0], &a2 = app.formulas[1];
            if (!(plug(app.u, lf(Formula::meet(a1, a2))) == A))
                return mismatch("(/\\=>) conclusion shape");
            push_ctx(plug(app.u, lf(app.which == 1 ? a1 : a2)));
            return done();
        }
        case RuleId::MeetR: {
            if (c.has_empty_stoup() || c.succedent().conn() != Conn::Meet)
                return mismatch("(=>/\\) succedent");
            push(Sequent(A, c.succedent().left()));
            push(Sequent(A, c.succedent().right()));
            return done();
        }
        case RuleId::JoinL: {
            if (app.formulas.size() != 2) return mismatch("(\\/=>) instantiation");
            const Formula &a = app.formulas[0], &b = app.formulas[1];
            if (!(plug(app.u, lf(Formula::join(a, b))) == A))
                return mismatch("(\\/=>) conclusion shape");
            push_ctx(plug(app.u, lf(a)));
            push_ctx(plug(app.u, lf(b)));
            return done();
        }
        case RuleId::JoinR: {
            if (c.has_empty_stoup() || c.succedent().conn() != Conn::Join)
                return mismatch("(=>\\/) succedent");
            if (app.which != 1 && app.which != 2) return mismatch("(=>\\/) branch index");
            push(Sequent(A, app.which == 1 ? c.succedent().left() : c.succedent().right()));
            return done();
        }
        case RuleId::BangL: {
            if (app.formulas.size() != 1) return mismatch("(!=>) instantiation");
            const Formula& a = app.formulas[0];
            if (!(plug(app.u, lf(Formula::bang(a))) == A))
                return mismatch("(!=>) conclusion shape");
            push_ctx(plug(app.u, lf(a)));
            return done();
        }
        case RuleId::BangR: {
            if (c.has_empty_stoup() || c.succedent().conn() != Conn::Bang)
                return mismatch("(=>!) succedent");
            if (!is_k_term(A)) {
                if (why) *why = "(=>!): k must range over K, got " + A.to_string();
                return std::nullopt;
            }
            push(Sequent(A, c.succedent().left()));
            return done();
        }
        case RuleId::Kw:
        case RuleId::Kc: {
            if (app.terms.size() != 1) return mismatch("k-rule instantiation");
            const StructTerm& k = app.terms[0];
            if (!is_k_term(struct_normalize(k))) {
                if (why) *why = rule_name(app) + ": k must range over K, got " + k.to_string();
                return std::nullopt;
            }
            if (!(plug(app.u, k) == A)) return mismatch("k-rule conclusion shape");
            push_ctx(plug(app.u, app.id == RuleId::Kw ? StructTerm::unit()
                                                      : StructTerm::node(k, k)));
            return done();
        }
        case RuleId::Ke: {
            if (app.terms.size() != 2) return mismatch("(ke) instantiation");
            const StructTerm &k = app.terms[0], &y = app.terms[1];
            if (!is_k_term(struct_normalize(k))) {
                if (why) *why = "(ke): k must range over K, got " + k.to_string();
                return std::nullopt;
            }
            StructTerm lower = app.reversed ? StructTerm::node(k, y) : StructTerm::node(y, k);
            StructTerm upper = app.reversed ? StructTerm::node(y, k) : StructTerm::node(k, y);
            if (!(plug(app.u, lower) == A)) return mismatch("(ke) conclusion shape");
            push_ctx(plug(app.u, upper));
            return done();
        }
        case RuleId::Ka1:
        case RuleId::Ka2:
        case RuleId::StructA: {
            if (app.terms.size() != 3) return mismatch("reassociation instantiation");
            const StructTerm &x = app.terms[0], &y = app.terms[1], &z = app.terms[2];
            const StructTerm* k = nullptr;
            if (app.id == RuleId::Ka1) k = &x;
            if (app.id == RuleId::Ka2) k = &z;
            if (k && !is_k_term(struct_normalize(*k))) {
                if (why) *why = rule_name(app) + ": k must range over K, got " + k->to_string();
                return std::nullopt;
            }
            StructTerm nested = StructTerm::node(x, StructTerm::node(y, z));
            StructTerm flat = StructTerm::node(StructTerm::node(x, y), z);
            StructTerm lower = app.reversed ? flat : nested;
            StructTerm upper = app.reversed ? nested : flat;
            if (!(plug(app.u, lower) == A)) return mismatch("reassociation conclusion shape");
            push_ctx(plug(app.u, upper));
            return done();
        }
        case RuleId::StructE: {
            if (app.terms.size() != 2) return mismatch("(e) instantiation");
            const StructTerm &x = app.terms[0], &y = app.terms[1];
            if (!(plug(app.u, StructTerm::node(y, x)) == A)) return mismatch("(e) conclusion");
            push_ctx(plug(app.u, StructTerm::node(x, y)));
            return done();
        }
        case RuleId::StructI: {
            if (app.terms.size() != 1) return mismatch("(i) instantiation");
            if (!(plug(app.u, app.terms[0]) == A)) return mismatch("(i) conclusion");
            push_ctx(plug(app.u, StructTerm::unit()));
            return done();
        }
        case RuleId::StructO:
            if (c.has_empty_stoup()) return mismatch("(o) needs a formula succedent");
            push(Sequent::with_empty_stoup(A));
            return done();
        case RuleId::StructC: {
            if (app.terms.size() != 1) return mismatch("(c) instantiation");
            const StructTerm& x = app.terms[0];
            if (!(plug(app.u, x) == A)) return mismatch("(c) conclusion");
            push_ctx(plug(app.u, StructTerm::node(x, x)));
            return done();
        }
    }
    return mismatch("unknown rule");
}

// ------------------------------------------------------------------ Proof

Proof::Proof(RuleApp rule, Sequent conclusion, std::vector<Proof> premises) {
    auto d = std::make_shared<Data>();
    d->rule = std::move(rule);
    d->conclusion = std::move(conclusion);
    d->premises = std::move(premises);
    for (const auto& p : d->premises) {
        d->height = std::max(d->height, p.height() + 1);
        d->nodes += p.node_count();
    }
    p_ = std::move(d);
}

namespace {

void check_node(const Proof& p, const LogicSpec& logic, const std::vector<Sequent>& assumptions,
                const std::string& path, CheckResult& res) {
    if (!res.ok) return;
    auto reject = [&](const std::string& msg) {
        res.ok = false;
        res.message = "node [" + (path.empty() ? std::string("root") : path) + "] " +
                      rule_name(p.rule()) + ": " + msg;
    };
    if (p.rule().id == RuleId::Assumption) {
        if (!p.premises().empty()) return reject("assumption nodes have no premises");
        Sequent want = sequent_normalize(p.conclusion());
        bool found = false;
        for (const auto& s : assumptions)
            if (sequent_normalize(s) == want) {
                found = true;
                break;
            }
        if (!found) return reject("conclusion is not in the hypothesis set");
        if (!sequent_in_fragment(want, logic.fragment))
            return reject("assumption outside fragment");
        return;
    }
    std::string why;
    auto expected = rule_premises(p.rule(), p.conclusion(), logic, &why);
    if (!expected) return reject(why);
    if (expected->size() != p.premises().size())
        return reject("expected " + std::to_string(expected->size()) + " premises, got " +
                      std::to_string(p.premises().size()));
    for (std::size_t i = 0; i < expected->size(); i++) {
        if (!(sequent_normalize(p.premises()[i].conclusion()) == (*expected)[i]))
            return reject("premise " + std::to_string(i) + " is " +
                          p.premises()[i].conclusion().to_string() + ", expected " +
                          (*expected)[i].to_string());
    }
    for (std::size_t i = 0; i < p.premises().size(); i++) {
        check_node(p.premises()[i], logic, assumptions,
                   path.empty() ? std::to_string(i) : path + "." + std::to_string(i), res);
        if (!res.ok) return;
    }
}

}  // namespace

CheckResult check_proof(const Proof& p, const LogicSpec& logic,
                        const std::vector<Sequent>& assumptions) {
    CheckResult res;
    if (!p.valid()) {
        res.ok = false;
        res.message = "empty proof";
        return res;
    }
    check_node(p, logic, assumptions, "", res);
    return res;
}

namespace {
int proof_lines(const Proof& p, std::vector<std::string>& out) {
    std::vector<int> kids;
    kids.reserve(p.premises().size());
    for (const auto& q : p.premises()) kids.push_back(proof_lines(q, out));
    std::ostringstream line;
    line << out.size() << " " << rule_name(p.rule());
    for (int k : kids) line << " " << k;
    line << " | " << p.conclusion().to_string();
    out.push_back(line.str());
    return static_cast<int>(out.size()) - 1;
}
}  // namespace

std::vector<std::string> proof_to_lines(const Proof& p) {
    std::vector<std::string> out;
    if (p.valid()) proof_lines(p, out);
    return out;
}

std::string proof_to_string(const Proof& p) {
    std::string out;
    for (const auto& l : proof_to_lines(p)) {
        out += l;
        out += "\n";
    }
    return out;
}

// --------------------------------------------------- backward enumeration

namespace {

void decompose_rec(const StructTerm& t, const Context& ctx,
                   const std::function<void(const Context&, const StructTerm&)>& fn) {
    fn(ctx, t);
    if (t.is_node()) {
        decompose_rec(t.left(), ctx.compose(Context::hole().extend_left(t.right())), fn);
        decompose_rec(t.right(), ctx.compose(Context::hole().extend_right(t.left())), fn);
    }
}

// splits of t as a product x o y in the free unital groupoid
std::vector<std::pair<StructTerm, StructTerm>> unital_splits(const StructTerm& t) {
    std::vector<std::pair<StructTerm, StructTerm>> out;
    StructTerm e = StructTerm::unit();
    if (t.is_unit()) {
        out.emplace_back(e, e);
        return out;
    }
    out.emplace_back(e, t);
    out.emplace_back(t, e);
    if (t.is_node()) out.emplace_back(t.left(), t.right());
    return out;
}

}  // namespace

void for_each_decomposition(const StructTerm& t,
                            const std::function<void(const Context&, const StructTerm&)>& fn) {
    decompose_rec(t, Context::hole(), fn);
}

std::vector<RuleInstance> backward_instances(const Sequent& goal_in, const LogicSpec& logic) {
    std::vector<RuleInstance> out;
    const Sequent goal = sequent_normalize(goal_in);
    if (!sequent_in_fragment(goal, logic.fragment)) return out;
    const StructTerm& A = goal.antecedent();

    auto emit = [&](RuleApp app) {
        std::string why;
        auto prem = rule_premises(app, goal, logic, &why);
        if (!prem) throw error("backward_instances produced a bad instance: " + why);
        if (!prem->empty()) {
            bool all_self = true;
            for (const auto& p : *prem)
                if (!(p == goal)) {
                    all_self = false;
                    break;
                }
            if (all_self) return;  // degenerate self-loop
        }
        out.push_back(RuleInstance{std::move(app), std::move(*prem)});
    };
    auto try_emit = [&](RuleApp app) {
        auto prem = rule_premises(app, goal, logic, nullptr);
        if (!prem) return;
        emit(std::move(app));
    };

    // initial sequents
    if (!goal.has_empty_stoup()) {
        const Formula& d = goal.succedent();
        if (A.is_leaf() && A.leaf_formula() == d) emit(RuleApp{RuleId::Id});
        if (A.is_unit() && d == Formula::one() && rule_enabled(RuleId::OneR, logic))
            emit(RuleApp{RuleId::OneR});
        if (logic.classical != Classical::None) {
            try_emit(RuleApp{RuleId::Dne1});
            try_emit(RuleApp{RuleId::Dne2});
            try_emit(RuleApp{RuleId::Comp});
            try_emit(RuleApp{RuleId::Comp, true});
            if (logic.classical == Classical::Cyclic) {
                try_emit(RuleApp{RuleId::Cyc});
                try_emit(RuleApp{RuleId::Cyc, true});
            }
        }
    } else if (A == StructTerm::leaf(Formula::zero()) && rule_enabled(RuleId::ZeroL, logic)) {
        emit(RuleApp{RuleId::ZeroL});
    }

    // right rules
    if (!goal.has_empty_stoup()) {
        const Formula& d = goal.succedent();
        switch (d.conn()) {
            case Conn::Ldiv: emit(RuleApp{RuleId::LdivR}); break;
            case Conn::Rdiv: emit(RuleApp{RuleId::RdivR}); break;
            case Conn::Prod:
                for (auto& [x, y] : unital_splits(A)) {
                    RuleApp app{RuleId::ProdR};
                    app.terms = {x, y};
                    emit(std::move(app));
                }
                break;
            case Conn::Meet: emit(RuleApp{RuleId::MeetR}); break;
            case Conn::Join:
                for (int which : {1, 2}) {
                    RuleApp app{RuleId::JoinR};
                    app.which = which;
                    emit(std::move(app));
                }
                break;
            case Conn::Bang:
                if (is_k_term(A)) emit(RuleApp{RuleId::BangR});
                break;
            case Conn::Zero:
                if (rule_enabled(RuleId::ZeroR, logic)) emit(RuleApp{RuleId::ZeroR});
                break;
            default: break;
        }
        if (rule_enabled(RuleId::StructO, logic)) emit(RuleApp{RuleId::StructO});
    }

    // left rules, per decomposition of the antecedent
    for_each_decomposition(A, [&](const Context& u, const StructTerm& r) {
        if (r.is_leaf()) {
            const Formula f = r.leaf_formula();
            switch (f.conn()) {
                case Conn::One: {
                    RuleApp app{RuleId::OneL};
                    app.u = u;
                    emit(std::move(app));
                    break;
                }
                case Conn::Prod: {
                    RuleApp app{RuleId::ProdL};
                    app.u = u;
                    app.formulas = {f.left(), f.right()};
                    emit(std::move(app));
                    break;
                }
                case Conn::Meet:
                    for (int which : {1, 2}) {
                        RuleApp app{RuleId::MeetL};
                        app.u = u;
                        app.which = which;
                        app.formulas = {f.left(), f.right()};
                        emit(std::move(app));
                    }
                    break;
                case Conn::Join: {
                    RuleApp app{RuleId::JoinL};
                    app.u = u;
                    app.formulas = {f.left(), f.right()};
                    emit(std::move(app));
                    break;
                }
                case Conn::Bang: {
                    RuleApp app{RuleId::BangL};
                    app.u = u;
                    app.formulas = {f.left()};
                    emit(std::move(app));
                    break;
                }
                case Conn::Ldiv: {
                    // x = e split: the leaf alone is x o (a\b)
                    RuleApp app{RuleId::LdivL};
                    app.u = u;
                    app.terms = {StructTerm::unit()};
                    app.formulas = {f.left(), f.right()};
                    emit(std::move(app));
                    break;
                }
                case Conn::Rdiv: {
                    RuleApp app{RuleId::RdivL};
                    app.u = u;
                    app.terms = {StructTerm::unit()};
                    app.formulas = {f.right(), f.left()};
                    emit(std::move(app));
                    break;
                }
                default: break;
            }
        }
        if (r.is_node()) {
            const StructTerm l = r.left(), rr = r.right();
            if (rr.is_leaf() && rr.leaf_formula().conn() == Conn::Ldiv) {
                RuleApp app{RuleId::LdivL};
                app.u = u;
                app.terms = {l};
                app.formulas = {rr.leaf_formula().left(), rr.leaf_formula().right()};
                emit(std::move(app));
            }
            if (l.is_leaf() && l.leaf_formula().conn() == Conn::Rdiv) {
                RuleApp app{RuleId::RdivL};
                app.u = u;
                app.terms = {rr};
                app.formulas = {l.leaf_formula().right(), l.leaf_formula().left()};
                emit(std::move(app));
            }
            if (rule_enabled(RuleId::StructE, logic)) {
                RuleApp app{RuleId::StructE};
                app.u = u;
                app.terms = {rr, l};  // conclusion redex is y o x with y=l, x=rr
                emit(std::move(app));
            }
            if (rule_enabled(RuleId::Ke, logic)) {
                if (is_k_term(rr)) {
                    RuleApp app{RuleId::Ke};
                    app.u = u;
                    app.terms = {rr, l};  // conclusion u(y o k), k=rr
                    emit(std::move(app));
                }
                if (is_k_term(l)) {
                    RuleApp app{RuleId::Ke, true};
                    app.u = u;
                    app.terms = {l, rr};  // conclusion u(k o y), k=l
                    emit(std::move(app));
                }
            }
            if (rule_enabled(RuleId::Ka1, logic)) {
                if (rr.is_node() && is_k_term(l)) {
                    RuleApp app{RuleId::Ka1};  // conclusion u(k o (y o z))
                    app.u = u;
                    app.terms = {l, rr.left(), rr.right()};
                    emit(std::move(app));
                }
                if (l.is_node() && is_k_term(l.left())) {
                    RuleApp app{RuleId::Ka1, true};  // conclusion u((k o y) o z)
                    app.u = u;
                    app.terms = {l.left(), l.right(), rr};
                    emit(std::move(app));
                }
            }
            if (rule_enabled(RuleId::Ka2, logic)) {
                if (rr.is_node() && is_k_term(rr.right())) {
                    RuleApp app{RuleId::Ka2};  // conclusion u(x o (y o k))
                    app.u = u;
                    app.terms = {l, rr.left(), rr.right()};
                    emit(std::move(app));
                }
                if (l.is_node() && is_k_term(rr)) {
                    RuleApp app{RuleId::Ka2, true};  // conclusion u((x o y) o k)
                    app.u = u;
                    app.terms = {l.left(), l.right(), rr};
                    emit(std::move(app));
                }
            }
            if (rule_enabled(RuleId::StructA, logic)) {
                if (rr.is_node()) {
                    RuleApp app{RuleId::StructA};  // conclusion u(x o (y o z))
                    app.u = u;
                    app.terms = {l, rr.left(), rr.right()};
                    emit(std::move(app));
                }
                if (l.is_node()) {
                    RuleApp app{RuleId::StructA, true};  // conclusion u((x o y) o z)
                    app.u = u;
                    app.terms = {l.left(), l.right(), rr};
                    emit(std::move(app));
                }
            }
        }
        // rules whose redex is an arbitrary subterm
        if (rule_enabled(RuleId::Kw, logic) && is_k_term(r)) {
            RuleApp app{RuleId::Kw};
            app.u = u;
            app.terms = {r};
            emit(std::move(app));
        }
        if (rule_enabled(RuleId::Kc, logic) && is_k_term(r)) {
            RuleApp app{RuleId::Kc};
            app.u = u;
            app.terms = {r};
            emit(std::move(app));
        }
        if (rule_enabled(RuleId::StructI, logic)) {
            RuleApp app{RuleId::StructI};
            app.u = u;
            app.terms = {r};
            emit(std::move(app));
        }
        if (rule_enabled(RuleId::StructC, logic)) {
            RuleApp app{RuleId::StructC};
            app.u = u;
            app.terms = {r};
            emit(std::move(app));
        }
    });

    return out;
}

// --------------------------------------------------------- forward engine

std::vector<StructTerm> bounded_terms(const std::vector<Formula>& leaves, int max_size) {
    return bounded_terms(leaves, max_size, std::numeric_limits<long long>::max());
}

std::vector<StructTerm> bounded_terms(const std::vector<Formula>& leaves, int max_size,
                                      long long max_count) {
    std::vector<std::vector<StructTerm>> by_size(std::max(0, max_size) + 1);
    long long total = 0;
    auto room = [&]() { return total < max_count; };
    if (max_size >= 1 && room()) {
        by_size[1].push_back(StructTerm::unit());
        total++;
    }
    for (const auto& f : leaves)
        if (f.size() <= max_size && room()) {
            by_size[f.size()].push_back(StructTerm::leaf(f));
            total++;
        }
    for (int s = 3; s <= max_size && room(); s++) {
        for (int ls = 1; ls <= s - 2 && room(); ls++) {
            int rs = s - 1 - ls;
            for (const auto& l : by_size[ls]) {
                for (const auto& r : by_size[rs]) {
                    if (!room()) break;
                    by_size[s].push_back(StructTerm::node(l, r));
                    total++;
                }
                if (!room()) break;
            }
        }
    }
    std::vector<StructTerm> out;
    for (auto& v : by_size)
        for (auto& t : v) out.push_back(std::move(t));
    return out;
}

ForwardEngine::ForwardEngine(LogicSpec logic, std::vector<Sequent> assumptions, int size_bound,
                             std::vector<Formula> universe)
    : logic_(std::move(logic)), size_bound_(size_bound), universe_(std::move(universe)) {
    assumptions_.reserve(assumptions.size());
    for (auto& s : assumptions) assumptions_.push_back(sequent_normalize(s));
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
    universe_.erase(
        std::remove_if(universe_.begin(), universe_.end(),
                       [&](const Formula& f) { return !f.in_fragment(logic_.fragment); }),
        universe_.end());
    int term_budget = std::min(size_bound_, 6);
    small_terms_ = bounded_terms(universe_, term_budget, 4000);
    std::vector<Formula> bangs;
    for (const auto& f : universe_)
        if (f.conn() == Conn::Bang) bangs.push_back(f);
    small_k_terms_ = bounded_terms(bangs, term_budget, 4000);
    // saturating runs insert leaves only: a composite weakening is two leaf
    // weakenings, so the closure is unchanged and the frontier stays lean
    for (const auto& f : universe_)
        if (f.size() <= term_budget) leaf_terms_.push_back(StructTerm::leaf(f));
    for (const auto& f : bangs)
        if (f.size() <= term_budget) leaf_k_terms_.push_back(StructTerm::leaf(f));
}

bool ForwardEngine::knows(const Sequent& s) const {
    return known_.count(sequent_normalize(s)) != 0;
}

std::optional<Proof> ForwardEngine::proof_of(const Sequent& s) const {
    auto it = known_.find(sequent_normalize(s));
    if (it == known_.end()) return std::nullopt;
    return it->second;
}

void ForwardEngine::add(Proof p) {
    Sequent c = sequent_normalize(p.conclusion());
    if (c.size() > size_bound_) return;
    if (!sequent_in_fragment(c, logic_.fragment)) return;
    if (c.has_empty_stoup() && !logic_.fragment.has(Conn::Zero)) return;
    if (collect_) collect_->insert(c);
    if (frontier_frozen_) return;  // one-step mode: collect only
    if (known_.count(c)) return;
    known_.emplace(c, std::move(p));
    frontier_.push_back(std::move(c));
}

void ForwardEngine::seed() {
    seeded_ = true;
    for (const auto& s : assumptions_) add(Proof(RuleApp{RuleId::Assumption}, s, {}));
    if (rule_enabled(RuleId::OneR, logic_))
        add(Proof(RuleApp{RuleId::OneR}, Sequent(StructTerm::unit(), Formula::one()), {}));
    if (rule_enabled(RuleId::ZeroL, logic_))
        add(Proof(RuleApp{RuleId::ZeroL},
                  Sequent::with_empty_stoup(StructTerm::leaf(Formula::zero())), {}));
    for (const auto& a : universe_) {
        if (2 * a.size() <= size_bound_)
            add(Proof(RuleApp{RuleId::Id}, Sequent(StructTerm::leaf(a), a), {}));
        if (logic_.classical != Classical::None) {
            // size prechecks keep seeding linear-time in practice
            if (2 * a.size() + 4 <= size_bound_) {
                Formula nr = f_neg_r(a), nl = f_neg_l(a);
                add(Proof(RuleApp{RuleId::Dne1}, Sequent(lf(f_neg_l(nr)), a), {}));
                add(Proof(RuleApp{RuleId::Dne2}, Sequent(lf(f_neg_r(nl)), a), {}));
                if (logic_.classical == Classical::Cyclic && 2 * a.size() + 4 <= size_bound_) {
                    add(Proof(RuleApp{RuleId::Cyc}, Sequent(lf(nr), nl), {}));
                    add(Proof(RuleApp{RuleId::Cyc, true}, Sequent(lf(nl), nr), {}));
                }
            }
            for (const auto& b : universe_) {
                if (2 * (a.size() + b.size()) + 6 > size_bound_) continue;
                Formula nr = f_neg_r(a);
                Formula lhs = Formula::rdiv(nr, b);          // (a\0)/b
                Formula rhs = Formula::ldiv(a, f_neg_l(b));  // a\(0/b)
                add(Proof(RuleApp{RuleId::Comp}, Sequent(lf(lhs), rhs), {}));
                add(Proof(RuleApp{RuleId::Comp, true}, Sequent(lf(rhs), lhs), {}));
            }
        }
    }
}

// emit helpers always complete their work; the budget is a soft cap that
// run() consults between frontier items (it may overdraft by one item, so
// every processed item contributes all of its one-step conclusions)
void ForwardEngine::emit1(const Proof& p, RuleApp app, const Sequent& conclusion,
                          long long* budget) {
    (*budget)--;
    Sequent norm = sequent_normalize(conclusion);
    if (norm.size() > size_bound_) return;
    auto expect = rule_premises(app, norm, logic_, nullptr);
    if (!expect || expect->size() != 1 || !((*expect)[0] == p.conclusion())) return;
    add(Proof(std::move(app), norm, {p}));
}

void ForwardEngine::emit2(const Proof& p, const Proof& q, RuleApp app, const Sequent& conclusion,
                          long long* budget) {
    (*budget)--;
    Sequent norm = sequent_normalize(conclusion);
    if (norm.size() > size_bound_) return;
    auto expect = rule_premises(app, norm, logic_, nullptr);
    if (!expect || expect->size() != 2) return;
    if (!((*expect)[0] == p.conclusion() && (*expect)[1] == q.conclusion())) return;
    add(Proof(std::move(app), norm, {p, q}));
}

// conclusion = premise antecedent with `t` inserted at some position
void ForwardEngine::insertions(const Proof& p, const StructTerm& t, RuleId id,
                               long long* budget) {
    const Sequent& c = p.conclusion();
    const StructTerm& X = c.antecedent();
    auto with_succ = [&](const StructTerm& ant) {
        return c.has_empty_stoup() ? Sequent::with_empty_stoup(ant) : Sequent(ant, c.succedent());
    };
    StructTerm tn = struct_normalize(t);
    if (tn.is_unit()) return;
    auto make_app = [&](const Context& at) {
        RuleApp app{id};
        app.u = at;
        if (id != RuleId::OneL) app.terms = {t};
        return app;
    };
    if (X.is_unit()) {
        emit1(p, make_app(Context::hole()), with_succ(tn), budget);
        return;
    }
    for_each_decomposition(X, [&](const Context& u, const StructTerm& s) {
        emit1(p, make_app(u.compose(Context::hole().extend_left(s))),
              with_succ(plug(u, StructTerm::node(tn, s))), budget);
        emit1(p, make_app(u.compose(Context::hole().extend_right(s))),
              with_succ(plug(u, StructTerm::node(s, tn))), budget);
    });
}

void ForwardEngine::derive_from(const Proof& p, std::size_t index, long long* budget) {
    const Sequent c = p.conclusion();
    const StructTerm& X = c.antecedent();
    auto with_succ = [&](const StructTerm& ant) {
        return c.has_empty_stoup() ? Sequent::with_empty_stoup(ant) : Sequent(ant, c.succedent());
    };

    if (rule_enabled(RuleId::OneL, logic_))
        insertions(p, StructTerm::leaf(Formula::one()), RuleId::OneL, budget);
    const auto& iterms = frontier_frozen_ ? small_terms_ : leaf_terms_;
    const auto& kterms = frontier_frozen_ ? small_k_terms_ : leaf_k_terms_;
    if (rule_enabled(RuleId::StructI, logic_))
        for (const auto& t : iterms) insertions(p, t, RuleId::StructI, budget);
    if (rule_enabled(RuleId::Kw, logic_))
        for (const auto& t : kterms) insertions(p, t, RuleId::Kw, budget);

    for_each_decomposition(X, [&](const Context& u, const StructTerm& r) {
        if (r.is_leaf()) {
            Formula f = r.leaf_formula();
            if (rule_enabled(RuleId::BangL, logic_)) {
                RuleApp app{RuleId::BangL};
                app.u = u;
                app.formulas = {f};
                emit1(p, std::move(app), with_succ(plug(u, lf(Formula::bang(f)))), budget);
            }
            if (rule_enabled(RuleId::MeetL, logic_)) {
                for (const auto& g : universe_) {
                    RuleApp a1{RuleId::MeetL};
                    a1.u = u;
                    a1.which = 1;
                    a1.formulas = {f, g};
                    emit1(p, std::move(a1), with_succ(plug(u, lf(Formula::meet(f, g)))), budget);
                    RuleApp a2{RuleId::MeetL};
                    a2.u = u;
                    a2.which = 2;
                    a2.formulas = {g, f};
                    emit1(p, std::move(a2), with_succ(plug(u, lf(Formula::meet(g, f)))), budget);
                }
            }
        }
        if (r.is_node()) {
            StructTerm l = r.left(), rr = r.right();
            if (rule_enabled(RuleId::ProdL, logic_) && l.is_leaf() && rr.is_leaf()) {
                RuleApp app{RuleId::ProdL};
                app.u = u;
                app.formulas = {l.leaf_formula(), rr.leaf_formula()};
                emit1(p, std::move(app),
                      with_succ(plug(u, lf(Formula::prod(l.leaf_formula(), rr.leaf_formula())))),
                      budget);
            }
            if (rule_enabled(RuleId::StructE, logic_)) {
                RuleApp app{RuleId::StructE};
                app.u = u;
                app.terms = {l, rr};
                emit1(p, std::move(app), with_succ(plug(u, StructTerm::node(rr, l))), budget);
            }
            if (rule_enabled(RuleId::Ke, logic_)) {
                if (is_k_term(l)) {  // premise u(k o y), conclusion u(y o k)
                    RuleApp app{RuleId::Ke};
                    app.u = u;
                    app.terms = {l, rr};
                    emit1(p, std::move(app), with_succ(plug(u, StructTerm::node(rr, l))), budget);
                }
                if (is_k_term(rr)) {  // premise u(y o k), conclusion u(k o y)
                    RuleApp app{RuleId::Ke, true};
                    app.u = u;
                    app.terms = {rr, l};
                    emit1(p, std::move(app), with_succ(plug(u, StructTerm::node(rr, l))), budget);
                }
            }
            if (rule_enabled(RuleId::StructC, logic_) && l == rr) {
                RuleApp app{RuleId::StructC};
                app.u = u;
                app.terms = {l};
                emit1(p, std::move(app), with_succ(plug(u, l)), budget);
            }
            if (rule_enabled(RuleId::Kc, logic_) && l == rr && is_k_term(l)) {
                RuleApp app{RuleId::Kc};
                app.u = u;
                app.terms = {l};
                emit1(p, std::move(app), with_succ(plug(u, l)), budget);
            }
            auto reassoc = [&](RuleId id) {
                // premise u((p o q) o s) -> conclusion u(p o (q o s))
                if (l.is_node()) {
                    StructTerm p1 = l.left(), q1 = l.right();
                    bool k_ok = id == RuleId::StructA ||
                                (id == RuleId::Ka1 ? is_k_term(p1) : is_k_term(rr));
                    if (k_ok) {
                        RuleApp app{id};
                        app.u = u;
                        app.terms = {p1, q1, rr};
                        emit1(p, std::move(app),
                              with_succ(plug(u, StructTerm::node(p1, StructTerm::node(q1, rr)))),
                              budget);
                    }
                }
                // premise u(p o (q o s)) -> conclusion u((p o q) o s)
                if (rr.is_node()) {
                    StructTerm q1 = rr.left(), s1 = rr.right();
                    bool k_ok = id == RuleId::StructA ||
                                (id == RuleId::Ka1 ? is_k_term(l) : is_k_term(s1));
                    if (k_ok) {
                        RuleApp app{id, true};
                        app.u = u;
                        app.terms = {l, q1, s1};
                        emit1(p, std::move(app),
                              with_succ(plug(u, StructTerm::node(StructTerm::node(l, q1), s1))),
                              budget);
                    }
                }
            };
            if (rule_enabled(RuleId::Ka1, logic_)) reassoc(RuleId::Ka1);
            if (rule_enabled(RuleId::Ka2, logic_)) reassoc(RuleId::Ka2);
            if (rule_enabled(RuleId::StructA, logic_)) reassoc(RuleId::StructA);
        }
    });

    if (!c.has_empty_stoup()) {
        const Formula& d = c.succedent();
        if (rule_enabled(RuleId::LdivR, logic_)) {
            if (X.is_node() && X.left().is_leaf())
                emit1(p, RuleApp{RuleId::LdivR},
                      Sequent(X.right(), Formula::ldiv(X.left().leaf_formula(), d)), budget);
            if (X.is_leaf())
                emit1(p, RuleApp{RuleId::LdivR},
                      Sequent(StructTerm::unit(), Formula::ldiv(X.leaf_formula(), d)), budget);
        }
        if (rule_enabled(RuleId::RdivR, logic_)) {
            if (X.is_node() && X.right().is_leaf())
                emit1(p, RuleApp{RuleId::RdivR},
                      Sequent(X.left(), Formula::rdiv(d, X.right().leaf_formula())), budget);
            if (X.is_leaf())
                emit1(p, RuleApp{RuleId::RdivR},
                      Sequent(StructTerm::unit(), Formula::rdiv(d, X.leaf_formula())), budget);
        }
        if (rule_enabled(RuleId::JoinR, logic_)) {
            for (const auto& g : universe_) {
                RuleApp a1{RuleId::JoinR};
                a1.which = 1;
                emit1(p, std::move(a1), Sequent(X, Formula::join(d, g)), budget);
                RuleApp a2{RuleId::JoinR};
                a2.which = 2;
                emit1(p, std::move(a2), Sequent(X, Formula::join(g, d)), budget);
            }
        }
        if (rule_enabled(RuleId::BangR, logic_) && is_k_term(X))
            emit1(p, RuleApp{RuleId::BangR}, Sequent(X, Formula::bang(d)), budget);
    } else {
        if (rule_enabled(RuleId::ZeroR, logic_))
            emit1(p, RuleApp{RuleId::ZeroR}, Sequent(X, Formula::zero()), budget);
        if (rule_enabled(RuleId::StructO, logic_))
            for (const auto& g : universe_)
                emit1(p, RuleApp{RuleId::StructO}, Sequent(X, g), budget);
    }

    // binary rules pair p with itself and everything processed before it;
    // later items pick up the remaining pairs when their turn comes, so each
    // unordered pair is combined exactly once per premise role
    for (std::size_t j = 0; j <= index && j < frontier_.size(); j++) {
        Proof q = known_.at(frontier_[j]);
        combine(p, q, budget);
        if (j < index) combine(q, p, budget);
    }
}

void ForwardEngine::combine(const Proof& p, const Proof& q, long long* budget) {
    const Sequent& pc = p.conclusion();
    const Sequent& qc = q.conclusion();
    auto with_succ_q = [&](const StructTerm& ant) {
        return qc.has_empty_stoup() ? Sequent::with_empty_stoup(ant)
                                    : Sequent(ant, qc.succedent());
    };

    if (rule_enabled(RuleId::ProdR, logic_) && !pc.has_empty_stoup() && !qc.has_empty_stoup()) {
        RuleApp app{RuleId::ProdR};
        app.terms = {pc.antecedent(), qc.antecedent()};
        emit2(p, q, std::move(app),
              Sequent(struct_normalize(StructTerm::node(pc.antecedent(), qc.antecedent())),
                      Formula::prod(pc.succedent(), qc.succedent())),
              budget);
    }
    if (rule_enabled(RuleId::MeetR, logic_) && !pc.has_empty_stoup() && !qc.has_empty_stoup() &&
        pc.antecedent() == qc.antecedent()) {
        emit2(p, q, RuleApp{RuleId::MeetR},
              Sequent(pc.antecedent(), Formula::meet(pc.succedent(), qc.succedent())), budget);
    }
    if (rule_enabled(RuleId::JoinL, logic_)) {
        bool same_succ = pc.has_empty_stoup() ? qc.has_empty_stoup()
                                              : (!qc.has_empty_stoup() &&
                                                 pc.succedent() == qc.succedent());
        if (same_succ) {
            // q's antecedent must agree with p's along the context path and
            // hold a formula leaf at the hole
            for_each_decomposition(pc.antecedent(), [&](const Context& u, const StructTerm& r) {
                if (!r.is_leaf()) return;
                Formula fa = r.leaf_formula();
                auto res = residue_at(u, qc.antecedent());
                if (!res || !res->is_leaf()) return;
                RuleApp app{RuleId::JoinL};
                app.u = u;
                app.formulas = {fa, res->leaf_formula()};
                emit2(p, q, std::move(app),
                      with_succ_q(plug(u, lf(Formula::join(fa, res->leaf_formula())))), budget);
            });
        }
    }
    if (pc.has_empty_stoup()) return;
    const Formula a = pc.succedent();

    for_each_decomposition(qc.antecedent(), [&](const Context& u, const StructTerm& r) {
        if (!r.is_leaf()) return;
        Formula b = r.leaf_formula();
        if (b == a && rule_enabled(RuleId::Cut, logic_)) {
            RuleApp app{RuleId::Cut};
            app.u = u;
            app.terms = {pc.antecedent()};
            app.formulas = {a};
            emit2(p, q, std::move(app), with_succ_q(plug(u, pc.antecedent())), budget);
        }
        if (rule_enabled(RuleId::LdivL, logic_)) {
            RuleApp app{RuleId::LdivL};
            app.u = u;
            app.terms = {pc.antecedent()};
            app.formulas = {a, b};
            emit2(p, q, std::move(app),
                  with_succ_q(
                      plug(u, StructTerm::node(pc.antecedent(), lf(Formula::ldiv(a, b))))),
                  budget);
        }
        if (rule_enabled(RuleId::RdivL, logic_)) {
            RuleApp app{RuleId::RdivL};
            app.u = u;
            app.terms = {pc.antecedent()};
            app.formulas = {a, b};
            emit2(p, q, std::move(app),
                  with_succ_q(
                      plug(u, StructTerm::node(lf(Formula::rdiv(b, a)), pc.antecedent()))),
                  budget);
        }
    });
}

bool ForwardEngine::run(long long* budget) {
    if (!seeded_) seed();
    std::size_t before = known_.size();
    while (processed_ < frontier_.size() && *budget > 0) {
        Proof p = known_.at(frontier_[processed_]);
        derive_from(p, processed_, budget);  // runs to completion; may overdraft
        processed_++;
    }
    if (processed_ >= frontier_.size()) saturated_ = true;
    return known_.size() > before;
}

std::set<Sequent> ForwardEngine::one_step(const std::set<Sequent>& premises) {
    std::set<Sequent> out;
    collect_ = &out;
    if (!seeded_) seed();
    collect_ = nullptr;
    for (const auto& s : premises) {
        Sequent n = sequent_normalize(s);
        if (known_.count(n)) continue;
        known_.emplace(n, Proof(RuleApp{RuleId::Assumption}, n, {}));
        frontier_.push_back(n);
    }
    frontier_frozen_ = true;
    collect_ = &out;
    long long budget = 1LL << 50;
    while (processed_ < frontier_.size()) {
        derive_from(known_.at(frontier_[processed_]), processed_, &budget);
        processed_++;
    }
    collect_ = nullptr;
    return out;
}

std::set<Sequent> forward_step(const std::set<Sequent>& known, const LogicSpec& logic,
                               const std::vector<Sequent>& assumptions, int size_bound,
                               const std::vector<Formula>& universe) {
    ForwardEngine eng(logic, assumptions, size_bound, universe);
    return eng.one_step(known);
}

}  // namespace naclog
