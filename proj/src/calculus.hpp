#ifndef NACLOG_CALCULUS_HPP
#define NACLOG_CALCULUS_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "syntax.hpp"

namespace naclog {

enum class Classical : std::uint8_t { None, Involutive, Cyclic };

// Which calculus: fragment, structural rules, classical initial sequents.
// The k-rules (kw, kc, ke, ka1, ka2) are part of the base calculus whenever
// ! is in the fragment.
struct LogicSpec {
    Fragment fragment;
    bool rule_e = false;
    bool rule_c = false;
    bool rule_i = false;
    bool rule_o = false;
    bool rule_a = false;
    Classical classical = Classical::None;
    std::string name;  // the spec string this was parsed from

    bool k_rules_enabled() const { return fragment.has(Conn::Bang); }
    std::string structural_letters() const;
    void validate() const;  // throws naclog::error on an inconsistent spec
};

// Spec strings: base name in {fnl, infnl, cyinfnl, nacill, nacill0, naccll-,
// naccll}, optionally "+<letters>" with letters from {e,c,i,o,w,a}; "w"
// expands to i+o. Example: "nacill0+ec".
LogicSpec parse_logic_spec(const std::string& spec);
std::vector<std::string> logic_base_names();

enum class RuleId : std::uint8_t {
    // initial sequents
    Id,
    OneR,   // e => 1
    ZeroL,  // 0 => (empty stoup)
    Dne1,   // 0/(a\0) => a
    Dne2,   // (0/a)\0 => a
    Comp,   // (a\0)/b <=> a\(0/b), two orientations
    Cyc,    // a\0 <=> 0/a, two orientations
    Assumption,
    // cut
    Cut,
    // logical rules
    OneL,
    ZeroR,
    LdivL,
    LdivR,
    ProdL,
    ProdR,
    RdivL,
    RdivR,
    MeetL,  // which = 1 or 2
    MeetR,
    JoinL,
    JoinR,  // which = 1 or 2
    BangL,
    BangR,
    // k-rules
    Kw,
    Kc,
    Ke,   // bidirectional
    Ka1,  // bidirectional
    Ka2,  // bidirectional
    // structural rules
    StructE,
    StructI,
    StructO,
    StructC,
    StructA,  // bidirectional
};

bool rule_is_initial(RuleId id);
int rule_premise_count(RuleId id);
bool rule_enabled(RuleId id, const LogicSpec& logic);

// A rule application with its full instantiation, so that checking never
// has to search: the context u, the side terms, the principal formulas,
// the orientation of bidirectional rules, and the branch index of
// two-variant rules.
struct RuleApp {
    RuleId id = RuleId::Id;
    bool reversed = false;
    int which = 0;  // 1 or 2 for MeetL / JoinR
    Context u;
    std::vector<StructTerm> terms;
    std::vector<Formula> formulas;
};

std::string rule_name(const RuleApp& app);

// Recomputes the premises of `app` at `conclusion`. Returns the premise
// list (normalized) for a well-formed application, otherwise nullopt and a
// reason in *why. Assumption nodes are handled by check_proof, not here.
std::optional<std::vector<Sequent>> rule_premises(const RuleApp& app, const Sequent& conclusion,
                                                  const LogicSpec& logic, std::string* why);

class Proof {
public:
    Proof() = default;
    Proof(RuleApp rule, Sequent conclusion, std::vector<Proof> premises);

    bool valid() const { return p_ != nullptr; }
    const RuleApp& rule() const { return p_->rule; }
    const Sequent& conclusion() const { return p_->conclusion; }
    const std::vector<Proof>& premises() const { return p_->premises; }
    int height() const { return p_->height; }  // a leaf has height 0
    int node_count() const { return p_->nodes; }

private:
    struct Data {
        RuleApp rule;
        Sequent conclusion;
        std::vector<Proof> premises;
        int height = 0;
        int nodes = 1;
    };
    std::shared_ptr<const Data> p_;
};

struct CheckResult {
    bool ok = true;
    std::string message;  // names the offending node and rule side condition
};

CheckResult check_proof(const Proof& p, const LogicSpec& logic,
                        const std::vector<Sequent>& assumptions);

// Line format: "<idx> <rule> [<child idx> ...] | <sequent>", root last.
std::vector<std::string> proof_to_lines(const Proof& p);
std::string proof_to_string(const Proof& p);

struct RuleInstance {
    RuleApp app;
    std::vector<Sequent> premises;
};

// All cut-free rule instances whose conclusion is exactly `goal` (read in
// the free unital groupoid), in a fixed deterministic order. Degenerate
// instances whose premises all equal the conclusion are omitted; (cut) and
// Assumption are never produced.
std::vector<RuleInstance> backward_instances(const Sequent& goal, const LogicSpec& logic);

// Every (context, subterm) decomposition of t, preorder.
void for_each_decomposition(const StructTerm& t,
                            const std::function<void(const Context&, const StructTerm&)>& fn);

// Terms over the given leaf formulas with size <= max_size, unit included,
// deterministic size-major order; the second form stops after max_count.
std::vector<StructTerm> bounded_terms(const std::vector<Formula>& leaves, int max_size);
std::vector<StructTerm> bounded_terms(const std::vector<Formula>& leaves, int max_size,
                                      long long max_count);

// Forward closure engine over a bounded universe. Retains one derivation
// per sequent; deterministic given identical inputs and budgets.
class ForwardEngine {
public:
    ForwardEngine(LogicSpec logic, std::vector<Sequent> assumptions, int size_bound,
                  std::vector<Formula> universe);

    // Saturating mode: applies rules until the closure is complete or the
    // budget (counted in attempted rule applications) runs out. Returns
    // true if anything new was derived.
    bool run(long long* budget);
    bool saturated() const { return saturated_; }
    bool knows(const Sequent& s) const;
    std::optional<Proof> proof_of(const Sequent& s) const;
    const std::map<Sequent, Proof>& known() const { return known_; }

    // Single-step mode: conclusions of exactly one rule application whose
    // premises come from `premises` plus the seeded initial sequents, along
    // with the initial sequents and assumptions themselves.
    std::set<Sequent> one_step(const std::set<Sequent>& premises);

private:
    void seed();
    void add(Proof p);
    void derive_from(const Proof& p, std::size_t index, long long* budget);
    void combine(const Proof& p, const Proof& q, long long* budget);
    void insertions(const Proof& p, const StructTerm& t, RuleId id, long long* budget);
    void emit1(const Proof& p, RuleApp app, const Sequent& conclusion, long long* budget);
    void emit2(const Proof& p, const Proof& q, RuleApp app, const Sequent& conclusion,
               long long* budget);

    LogicSpec logic_;
    std::vector<Sequent> assumptions_;
    int size_bound_;
    std::vector<Formula> universe_;
    std::vector<StructTerm> small_terms_;    // for (i), one-step mode
    std::vector<StructTerm> small_k_terms_;  // for (kw), one-step mode
    std::vector<StructTerm> leaf_terms_;     // saturating-mode insertions
    std::vector<StructTerm> leaf_k_terms_;
    std::map<Sequent, Proof> known_;
    std::vector<Sequent> frontier_;  // processed in derivation (FIFO) order
    std::size_t processed_ = 0;
    bool saturated_ = false;
    bool seeded_ = false;
    bool frontier_frozen_ = false;
    std::set<Sequent>* collect_ = nullptr;
};

// One forward closure step over a bounded universe; see ForwardEngine.
std::set<Sequent> forward_step(const std::set<Sequent>& known, const LogicSpec& logic,
                               const std::vector<Sequent>& assumptions, int size_bound,
                               const std::vector<Formula>& universe);

}  // namespace naclog

#endif
