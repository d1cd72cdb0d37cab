#include "decide.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include "constructions.hpp"
#include "json.hpp"

namespace naclog {

void SearchLimits::validate() const {
    if (backward_depth < 1 || forward_start < 1 || forward_step < 1 || forward_stages < 1 ||
        work_budget < 1 || budget_ms < 1)
        throw error("search limits must be positive");
    if (algebra_max < 0) throw error("algebra_max must be nonnegative");
}

// ------------------------------------------------------------ spec_to_class

AlgebraClass spec_to_class(const LogicSpec& logic) {
    if (logic.rule_a)
        throw error("no completeness lemma covers the associativity rule (a); "
                    "refutation-complete class unknown for " + logic.name);
    auto structural = [&](bool allow_i, bool allow_o, bool pair_w) {
        std::set<Eq> eqs;
        if (logic.rule_e) eqs.insert(Eq::E);
        if (logic.rule_c) eqs.insert(Eq::C);
        if (logic.rule_i) {
            if (!allow_i) throw error("rule (i) is not covered for " + logic.name);
            eqs.insert(Eq::I);
        }
        if (logic.rule_o) {
            if (!allow_o) throw error("rule (o) is not covered for " + logic.name);
            eqs.insert(Eq::O);
        }
        if (pair_w && logic.rule_i != logic.rule_o)
            throw error("the completeness lemma for " + logic.name +
                        " covers (w) = (i)+(o) only as a pair");
        return eqs;
    };

    const Fragment& f = logic.fragment;
    if (f == Fragment::full_lambek() && logic.classical == Classical::None)
        return AlgebraClass{AlgBase::RLUG, structural(true, false, false)};
    if (f == Fragment::full_lambek0() && logic.classical == Classical::Involutive)
        return AlgebraClass{AlgBase::InRLUG, structural(true, true, true)};
    if (f == Fragment::full_lambek0() && logic.classical == Classical::Cyclic)
        return AlgebraClass{AlgBase::CyInRLUG, structural(true, true, true)};
    if (f == Fragment::modal() && logic.classical == Classical::None)
        return AlgebraClass{AlgBase::NACILL, structural(true, false, false)};
    if (f == Fragment::all() && logic.classical == Classical::None)
        return AlgebraClass{AlgBase::NACILL0, structural(true, true, false)};
    if (f == Fragment::all() && logic.classical == Classical::Involutive)
        return AlgebraClass{AlgBase::NACCLLminus, structural(true, true, true)};
    if (f == Fragment::all() && logic.classical == Classical::Cyclic)
        return AlgebraClass{AlgBase::NACCLL, structural(true, true, true)};
    throw error("no completeness lemma names the fragment of " + logic.name);
}

int default_algebra_max(const AlgebraClass& cls) { return cls.needs_bang() ? 3 : 4; }

// --------------------------------------------------------- backward search

namespace {

class BackwardProver {
public:
    BackwardProver(Sequent goal, LogicSpec logic, int max_depth)
        : goal_(sequent_normalize(goal)), logic_(std::move(logic)), max_depth_(max_depth) {}

    enum class State { Running, Found, Finished };

    State step(long long quantum, long long* used) {
        long long start = *used;
        while (state_ == State::Running && *used - start < quantum) micro(used);
        return state_;
    }

    const std::optional<Proof>& result() const { return result_; }
    int depth_reached() const { return cur_depth_; }
    bool definitive() const { return definitive_; }

private:
    struct Node {
        Sequent goal;
        int depth;
        bool expanded = false;
        std::vector<RuleInstance> insts;
        std::size_t inst = 0;
        std::size_t prem = 0;
        std::vector<Proof> done;
        bool ancestor_pruned = false;
        bool depth_limited = false;
    };

    void advance_instance(Node& nd) {
        nd.inst++;
        nd.prem = 0;
        nd.done.clear();
    }

    void micro(long long* used) {
        if (stack_.empty()) {
            if (!root_done_) {
                // begin (or restart) the search at the current depth
                stack_.push_back(Node{goal_, cur_depth_});
                on_branch_.insert(goal_);
                return;
            }
            // the root search at cur_depth_ completed without a proof
            if (root_definitive_ || cur_depth_ >= max_depth_) {
                definitive_ = root_definitive_;
                state_ = State::Finished;
                return;
            }
            cur_depth_++;
            root_done_ = false;
            return;
        }
        Node& nd = stack_.back();
        if (!nd.expanded) {
            (*used)++;
            nd.insts = backward_instances(nd.goal, logic_);
            *used += static_cast<long long>(nd.insts.size());
            nd.expanded = true;
            if (nd.depth == 0) {
                std::vector<RuleInstance> keep;
                for (auto& inst : nd.insts) {
                    if (inst.premises.empty())
                        keep.push_back(std::move(inst));
                    else
                        nd.depth_limited = true;
                }
                nd.insts = std::move(keep);
            }
            return;
        }
        if (nd.inst >= nd.insts.size()) {
            // this goal fails at this depth
            if (!nd.ancestor_pruned) {
                auto it = clean_fail_.find(nd.goal);
                if (it == clean_fail_.end() || it->second < nd.depth)
                    clean_fail_[nd.goal] = nd.depth;
                if (!nd.depth_limited) unlimited_fail_.insert(nd.goal);
            }
            bool pruned = nd.ancestor_pruned, limited = nd.depth_limited;
            Sequent g = nd.goal;
            stack_.pop_back();
            on_branch_.erase(g);
            if (stack_.empty()) {
                root_done_ = true;
                root_definitive_ = !limited;  // loop prunes never hide repeat-free proofs
                return;
            }
            Node& parent = stack_.back();
            parent.ancestor_pruned |= pruned;
            parent.depth_limited |= limited;
            advance_instance(parent);
            return;
        }
        const RuleInstance& inst = nd.insts[nd.inst];
        if (nd.prem >= inst.premises.size()) {
            // all premises proven
            Proof p(inst.app, nd.goal, nd.done);
            success_.emplace(nd.goal, p);
            Sequent g = nd.goal;
            stack_.pop_back();
            on_branch_.erase(g);
            if (stack_.empty()) {
                result_ = p;
                state_ = State::Found;
                return;
            }
            Node& parent = stack_.back();
            parent.done.push_back(std::move(p));
            parent.prem++;
            return;
        }
        const Sequent& child = inst.premises[nd.prem];
        (*used)++;
        auto hit = success_.find(child);
        if (hit != success_.end()) {
            nd.done.push_back(hit->second);
            nd.prem++;
            return;
        }
        if (on_branch_.count(child)) {
            nd.ancestor_pruned = true;
            advance_instance(nd);
            return;
        }
        if (unlimited_fail_.count(child)) {
            advance_instance(nd);
            return;
        }
        auto cf = clean_fail_.find(child);
        if (cf != clean_fail_.end() && cf->second >= nd.depth - 1) {
            // unconditional failure at this depth, but possibly height-capped
            nd.depth_limited = true;
            advance_instance(nd);
            return;
        }
        Sequent c = child;
        on_branch_.insert(c);
        stack_.push_back(Node{c, nd.depth - 1});
    }

    Sequent goal_;
    LogicSpec logic_;
    int max_depth_;
    int cur_depth_ = 0;
    bool root_done_ = false;
    bool root_definitive_ = false;
    bool definitive_ = false;
    std::vector<Node> stack_;
    std::unordered_set<Sequent> on_branch_;
    std::unordered_map<Sequent, Proof> success_;
    std::unordered_map<Sequent, int> clean_fail_;
    std::unordered_set<Sequent> unlimited_fail_;
    std::optional<Proof> result_;
    State state_ = State::Running;
};

class ForwardDeducer {
public:
    ForwardDeducer(LogicSpec logic, std::vector<Sequent> assumptions, Sequent goal,
                   const SearchLimits& lim)
        : logic_(std::move(logic)),
          assumptions_(std::move(assumptions)),
          goal_(sequent_normalize(goal)),
          lim_(lim) {
        std::set<std::string> vars;
        collect_variables(goal_, vars);
        for (const auto& s : assumptions_) collect_variables(s, vars);
        vars_.assign(vars.begin(), vars.end());
        base_universe_ = [&] {
            std::set<Formula> u = subformulas(goal_);
            for (const auto& s : assumptions_)
                for (const auto& f : subformulas(s)) u.insert(f);
            return std::vector<Formula>(u.begin(), u.end());
        }();
    }

    enum class State { Running, Found, Finished };

    State step(long long quantum, long long* used) {
        while (quantum > 0) {
            if (state_ != State::Running) return state_;
            if (!eng_) {
                std::vector<Formula> universe = base_universe_;
                for (const auto& f : formulas_up_to(vars_, logic_.fragment, 1 + stage_))
                    universe.push_back(f);
                int bound = lim_.forward_start + lim_.forward_step * stage_;
                eng_ = std::make_unique<ForwardEngine>(logic_, assumptions_, bound, universe);
                (*used)++;
                quantum--;
                continue;
            }
            long long slice = quantum;
            long long before = slice;
            eng_->run(&slice);
            long long spent = before - slice;
            *used += spent;
            quantum -= spent;
            if (auto p = eng_->proof_of(goal_)) {
                result_ = *p;
                state_ = State::Found;
                return state_;
            }
            if (eng_->saturated()) {
                stages_done_ = ++stage_;
                eng_.reset();
                if (stage_ >= lim_.forward_stages) {
                    state_ = State::Finished;
                    return state_;
                }
            } else if (spent == 0) {
                return state_;  // quantum too small to progress
            }
        }
        return state_;
    }

    const std::optional<Proof>& result() const { return result_; }
    int stages_done() const { return stages_done_; }

private:
    LogicSpec logic_;
    std::vector<Sequent> assumptions_;
    Sequent goal_;
    SearchLimits lim_;
    std::vector<std::string> vars_;
    std::vector<Formula> base_universe_;
    std::unique_ptr<ForwardEngine> eng_;
    int stage_ = 0;
    int stages_done_ = 0;
    std::optional<Proof> result_;
    State state_ = State::Running;
};

class Refuter {
public:
    Refuter(Sequent goal, std::vector<Sequent> assumptions, AlgebraClass cls, int max_n)
        : goal_(sequent_normalize(goal)),
          assumptions_(std::move(assumptions)),
          cls_(std::move(cls)),
          max_n_(max_n) {
        std::set<std::string> vars;
        collect_variables(goal_, vars);
        for (const auto& s : assumptions_) collect_variables(s, vars);
        vars_.assign(vars.begin(), vars.end());
    }

    enum class State { Running, Found, Finished };

    State step(long long quantum, long long* used) {
        while (quantum > 0 && state_ == State::Running) {
            if (!algs_) {
                if (n_ > max_n_) {
                    state_ = State::Finished;
                    break;
                }
                algs_ = &enumerate_algebras_cached(n_, cls_);
                long long cost = static_cast<long long>(algs_->size()) + 1;
                *used += cost;
                quantum -= cost;
                alg_idx_ = 0;
                assign_.assign(vars_.size(), 0);
                continue;
            }
            if (alg_idx_ >= algs_->size()) {
                size_done_ = n_;
                n_++;
                algs_ = nullptr;
                continue;
            }
            const FiniteAlgebra& A = (*algs_)[alg_idx_];
            (*used)++;
            quantum--;
            Valuation f;
            for (std::size_t i = 0; i < vars_.size(); i++) f[vars_[i]] = assign_[i];
            bool ok = true;
            for (const auto& s : assumptions_)
                if (!sequent_holds(A, f, s)) {
                    ok = false;
                    break;
                }
            if (ok && !sequent_holds(A, f, goal_)) {
                result_ = Countermodel{A, f};
                state_ = State::Found;
                break;
            }
            // odometer over valuations, then next algebra
            std::size_t i = 0;
            for (; i < assign_.size(); i++) {
                if (++assign_[i] < A.n) break;
                assign_[i] = 0;
            }
            if (i == assign_.size()) {
                alg_idx_++;
                assign_.assign(vars_.size(), 0);
            }
        }
        return state_;
    }

    const std::optional<Countermodel>& result() const { return result_; }
    int size_done() const { return size_done_; }

private:
    Sequent goal_;
    std::vector<Sequent> assumptions_;
    AlgebraClass cls_;
    int max_n_;
    std::vector<std::string> vars_;
    int n_ = 1;
    int size_done_ = 0;
    const std::vector<FiniteAlgebra>* algs_ = nullptr;
    std::size_t alg_idx_ = 0;
    std::vector<int> assign_;
    std::optional<Countermodel> result_;
    State state_ = State::Running;
};

// Rebuilds a proof of `goal` from S out of a proof of internalize(S, goal):
// derive e => tau(si) from each hypothesis, then cut the tau leaves away.
Proof lift_internalized(const Proof& internal_proof, const std::vector<Sequent>& assumptions,
                        const Sequent& goal) {
    // e => tau(s) from assumption s
    auto tau_proof = [&](const Sequent& s_in) {
        Sequent s = sequent_normalize(s_in);
        Proof p(RuleApp{RuleId::Assumption}, s, {});
        // fold the antecedent tree into rho(s) with (.=>) steps
        while (true) {
            Sequent c = p.conclusion();
            const StructTerm& ant = c.antecedent();
            if (ant.is_unit()) {
                // rho(e) = 1: introduce the 1 leaf by (1=>)
                RuleApp app{RuleId::OneL};
                app.u = Context::hole();
                Sequent concl = c.has_empty_stoup()
                                    ? Sequent::with_empty_stoup(StructTerm::leaf(Formula::one()))
                                    : Sequent(StructTerm::leaf(Formula::one()), c.succedent());
                p = Proof(app, concl, {p});
                break;
            }
            if (ant.is_leaf()) break;
            // find a node whose children are both leaves and merge it
            bool merged = false;
            for_each_decomposition(ant, [&](const Context& u, const StructTerm& r) {
                if (merged || !r.is_node() || !r.left().is_leaf() || !r.right().is_leaf()) return;
                Formula a = r.left().leaf_formula(), b = r.right().leaf_formula();
                RuleApp app{RuleId::ProdL};
                app.u = u;
                app.formulas = {a, b};
                StructTerm newant =
                    struct_normalize(substitute(u, StructTerm::leaf(Formula::prod(a, b))));
                Sequent concl = c.has_empty_stoup() ? Sequent::with_empty_stoup(newant)
                                                    : Sequent(newant, c.succedent());
                p = Proof(app, concl, {p});
                merged = true;
            });
            if (!merged) throw error("lift_internalized: antecedent folding stalled");
        }
        // empty stoup reads as 0
        if (p.conclusion().has_empty_stoup()) {
            p = Proof(RuleApp{RuleId::ZeroR},
                      Sequent(p.conclusion().antecedent(), Formula::zero()), {p});
        }
        // e => rho \ theta by (=>\) with x = e, then (=>!) with k = e
        Formula alpha = p.conclusion().antecedent().leaf_formula();
        Formula beta = p.conclusion().succedent();
        p = Proof(RuleApp{RuleId::LdivR},
                  Sequent(StructTerm::unit(), Formula::ldiv(alpha, beta)), {p});
        p = Proof(RuleApp{RuleId::BangR},
                  Sequent(StructTerm::unit(), Formula::bang(Formula::ldiv(alpha, beta))), {p});
        return p;
    };

    Proof cur = internal_proof;
    for (const auto& s : assumptions) {
        Formula t = tau(sequent_normalize(s));
        // cut the leftmost tau leaf away
        bool done = false;
        const Sequent c = cur.conclusion();
        Proof taup = tau_proof(s);
        for_each_decomposition(c.antecedent(), [&](const Context& u, const StructTerm& r) {
            if (done || !r.is_leaf() || !(r.leaf_formula() == t)) return;
            RuleApp app{RuleId::Cut};
            app.u = u;
            app.terms = {StructTerm::unit()};
            app.formulas = {t};
            StructTerm newant = struct_normalize(substitute(u, StructTerm::unit()));
            Sequent concl = c.has_empty_stoup() ? Sequent::with_empty_stoup(newant)
                                                : Sequent(newant, c.succedent());
            cur = Proof(app, concl, {taup, cur});
            done = true;
        });
        if (!done) throw error("lift_internalized: tau leaf not found for " + s.to_string());
    }
    if (!(cur.conclusion() == sequent_normalize(goal)))
        throw error("lift_internalized: ended at " + cur.conclusion().to_string() +
                    " instead of the goal");
    return cur;
}

}  // namespace

// ----------------------------------------------------------- entry points

std::vector<Formula> formulas_up_to(const std::vector<std::string>& vars, const Fragment& frag,
                                    int max_size) {
    std::vector<std::vector<Formula>> by_size(std::max(0, max_size) + 1);
    if (max_size >= 1) {
        for (const auto& v : vars) by_size[1].push_back(Formula::var(v));
        if (frag.has(Conn::One)) by_size[1].push_back(Formula::one());
        if (frag.has(Conn::Zero)) by_size[1].push_back(Formula::zero());
    }
    for (int s = 2; s <= max_size; s++) {
        if (frag.has(Conn::Bang))
            for (const auto& f : by_size[s - 1]) by_size[s].push_back(Formula::bang(f));
        for (Conn c : {Conn::Meet, Conn::Join, Conn::Prod, Conn::Ldiv, Conn::Rdiv}) {
            if (!frag.has(c)) continue;
            for (int ls = 1; ls <= s - 2; ls++)
                for (const auto& l : by_size[ls])
                    for (const auto& r : by_size[s - 1 - ls])
                        by_size[s].push_back(Formula::binary(c, l, r));
        }
    }
    std::vector<Formula> out;
    for (auto& v : by_size)
        for (auto& f : v) out.push_back(std::move(f));
    return out;
}

std::optional<Proof> prove_backward(const Sequent& goal, const LogicSpec& logic, int depth) {
    BackwardProver bp(goal, logic, depth);
    long long used = 0;
    while (bp.step(1'000'000'000LL, &used) == BackwardProver::State::Running) {
    }
    return bp.result();
}

std::optional<Proof> prove_backward(const Sequent& goal, const LogicSpec& logic, int depth,
                                    long long work_budget) {
    BackwardProver bp(goal, logic, depth);
    long long used = 0;
    while (used < work_budget &&
           bp.step(std::min(work_budget - used, 100'000LL), &used) ==
               BackwardProver::State::Running) {
    }
    return bp.result();
}

std::optional<Proof> enumerate_deducible(const LogicSpec& logic,
                                         const std::vector<Sequent>& assumptions,
                                         const Sequent& goal, const SearchLimits& limits) {
    limits.validate();
    ForwardDeducer fd(logic, assumptions, goal, limits);
    long long used = 0;
    while (used < limits.work_budget) {
        auto st = fd.step(std::min(limits.work_budget - used, 100'000LL), &used);
        if (st == ForwardDeducer::State::Found) return fd.result();
        if (st == ForwardDeducer::State::Finished) return std::nullopt;
    }
    return std::nullopt;
}

Verdict decide(const Sequent& goal_in, const LogicSpec& logic,
               const std::vector<Sequent>& assumptions_in, const SearchLimits& limits_in) {
    SearchLimits limits = limits_in;
    limits.validate();
    Sequent goal = sequent_normalize(goal_in);
    if (!sequent_in_fragment(goal, logic.fragment))
        throw error("goal outside the fragment of " + logic.name + ": " + goal.to_string());
    std::vector<Sequent> assumptions;
    for (const auto& s : assumptions_in) {
        if (!sequent_in_fragment(s, logic.fragment))
            throw error("assumption outside the fragment of " + logic.name + ": " +
                        s.to_string());
        assumptions.push_back(sequent_normalize(s));
    }
    AlgebraClass cls = spec_to_class(logic);
    if (limits.algebra_max == 0) limits.algebra_max = default_algebra_max(cls);

    std::unique_ptr<BackwardProver> prover;
    std::unique_ptr<ForwardDeducer> forward;
    std::unique_ptr<BackwardProver> internal;
    Sequent internal_goal;
    if (assumptions.empty()) {
        prover = std::make_unique<BackwardProver>(goal, logic, limits.backward_depth);
    } else {
        forward = std::make_unique<ForwardDeducer>(logic, assumptions, goal, limits);
        if (logic.classical != Classical::None && logic.fragment.has(Conn::Bang)) {
            internal_goal = internalize(assumptions, goal);
            internal =
                std::make_unique<BackwardProver>(internal_goal, logic, limits.backward_depth);
        }
    }
    Refuter refuter(goal, assumptions, cls, limits.algebra_max);

    auto t0 = std::chrono::steady_clock::now();
    auto wall_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    long long used = 0;
    const long long quantum = 2000;
    Verdict v;
    auto snapshot = [&](bool work, bool wall) {
        v.info.quanta_used = used;
        v.info.wall_ms = wall_ms();
        v.info.hit_work_budget = work;
        v.info.hit_wall_budget = wall;
        if (prover) {
            v.info.backward_depth_reached = prover->depth_reached();
            v.info.backward_definitive = prover->definitive();
        }
        if (internal) {
            v.info.backward_depth_reached =
                std::max(v.info.backward_depth_reached, internal->depth_reached());
        }
        if (forward) v.info.forward_stages_done = forward->stages_done();
        v.info.algebra_size_reached = refuter.size_done();
    };

    bool prover_live = prover != nullptr;
    bool forward_live = forward != nullptr;
    bool internal_live = internal != nullptr;
    bool refuter_live = true;

    while (true) {
        if (used >= limits.work_budget || wall_ms() >= limits.budget_ms) {
            v.status = Verdict::Status::Exhausted;
            snapshot(used >= limits.work_budget, wall_ms() >= limits.budget_ms);
            return v;
        }
        if (!prover_live && !forward_live && !internal_live && !refuter_live) {
            v.status = Verdict::Status::Exhausted;
            snapshot(false, false);
            return v;
        }
        if (prover_live) {
            auto st = prover->step(quantum, &used);
            if (st == BackwardProver::State::Found) {
                Proof p = *prover->result();
                CheckResult chk = check_proof(p, logic, assumptions);
                if (!chk.ok) throw error("internal: backward proof fails audit: " + chk.message);
                v.status = Verdict::Status::Provable;
                v.proof = p;
                snapshot(false, false);
                return v;
            }
            if (st == BackwardProver::State::Finished) prover_live = false;
        }
        if (forward_live) {
            auto st = forward->step(quantum, &used);
            if (st == ForwardDeducer::State::Found) {
                Proof p = *forward->result();
                CheckResult chk = check_proof(p, logic, assumptions);
                if (!chk.ok) throw error("internal: forward proof fails audit: " + chk.message);
                v.status = Verdict::Status::Provable;
                v.proof = p;
                snapshot(false, false);
                return v;
            }
            if (st == ForwardDeducer::State::Finished) forward_live = false;
        }
        if (internal_live) {
            auto st = internal->step(quantum, &used);
            if (st == BackwardProver::State::Found) {
                Proof lifted = lift_internalized(*internal->result(), assumptions, goal);
                CheckResult chk = check_proof(lifted, logic, assumptions);
                if (!chk.ok)
                    throw error("internal: lifted internalized proof fails audit: " + chk.message);
                v.status = Verdict::Status::Provable;
                v.proof = lifted;
                snapshot(false, false);
                return v;
            }
            if (st == BackwardProver::State::Finished) internal_live = false;
        }
        if (refuter_live) {
            auto st = refuter.step(quantum, &used);
            if (st == Refuter::State::Found) {
                Countermodel cm = *refuter.result();
                for (const auto& s : assumptions)
                    if (!sequent_holds(cm.algebra, cm.valuation, s))
                        throw error("internal: countermodel fails assumption audit");
                if (sequent_holds(cm.algebra, cm.valuation, goal))
                    throw error("internal: countermodel fails goal audit");
                v.status = Verdict::Status::Refuted;
                v.countermodel = cm;
                snapshot(false, false);
                return v;
            }
            if (st == Refuter::State::Finished) refuter_live = false;
        }
    }
}

// ------------------------------------------------------------------ records

namespace {
nlohmann::json limits_json(const SearchLimits& limits) {
    return nlohmann::json{{"backward_depth", limits.backward_depth},
                          {"forward_start", limits.forward_start},
                          {"forward_step", limits.forward_step},
                          {"forward_stages", limits.forward_stages},
                          {"algebra_max", limits.algebra_max},
                          {"work_budget", limits.work_budget},
                          {"budget_ms", limits.budget_ms}};
}
}  // namespace

std::string verdict_to_record(const std::string& query_text, const LogicSpec& logic,
                              const Verdict& v, const SearchLimits& limits) {
    nlohmann::json rec;
    rec["query"] = query_text;
    rec["logic"] = logic.name;
    rec["limits"] = limits_json(limits);
    switch (v.status) {
        case Verdict::Status::Provable: {
            rec["status"] = "provable";
            rec["proof"] = proof_to_lines(*v.proof);
            break;
        }
        case Verdict::Status::Refuted: {
            rec["status"] = "refuted";
            nlohmann::json cm;
            cm["algebra"] = algebra_to_string(v.countermodel->algebra);
            nlohmann::json val;
            for (const auto& [k, x] : v.countermodel->valuation) val[k] = x;
            cm["valuation"] = val;
            cm["size"] = v.countermodel->algebra.n;
            rec["countermodel"] = cm;
            break;
        }
        case Verdict::Status::Exhausted: {
            rec["status"] = "exhausted";
            rec["exhausted_at"] = nlohmann::json{
                {"backward_depth_reached", v.info.backward_depth_reached},
                {"backward_definitive", v.info.backward_definitive},
                {"forward_stages_done", v.info.forward_stages_done},
                {"algebra_size_reached", v.info.algebra_size_reached},
                {"quanta_used", v.info.quanta_used},
                {"hit_work_budget", v.info.hit_work_budget},
                {"hit_wall_budget", v.info.hit_wall_budget}};
            break;
        }
    }
    return rec.dump();
}

std::string verdict_to_human(const std::string& query_text, const LogicSpec& logic,
                             const Verdict& v) {
    switch (v.status) {
        case Verdict::Status::Provable:
            return query_text + "  [" + logic.name + "]  PROVABLE (proof of " +
                   std::to_string(v.proof->node_count()) + " nodes)";
        case Verdict::Status::Refuted:
            return query_text + "  [" + logic.name + "]  REFUTED (countermodel of size " +
                   std::to_string(v.countermodel->algebra.n) + ")";
        case Verdict::Status::Exhausted:
            return query_text + "  [" + logic.name + "]  EXHAUSTED (depth " +
                   std::to_string(v.info.backward_depth_reached) + ", algebras to " +
                   std::to_string(v.info.algebra_size_reached) + ")";
    }
    return query_text;
}

}  // namespace naclog
