#ifndef NACLOG_DECIDE_HPP
#define NACLOG_DECIDE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "calculus.hpp"

namespace naclog {

struct SearchLimits {
    int backward_depth = 12;
    int forward_start = 8;  // forward size schedule: start, start+step, ...
    int forward_step = 4;
    int forward_stages = 3;
    int algebra_max = 0;                 // 0 = class default (3 with !, 4 without)
    long long work_budget = 4'000'000;   // total quanta across workers
    long long budget_ms = 60'000;        // wall-clock backstop

    void validate() const;
};

struct ExhaustedInfo {
    int backward_depth_reached = 0;
    bool backward_definitive = false;  // cut-free space exhausted below the bound
    int forward_stages_done = 0;
    int algebra_size_reached = 0;
    long long quanta_used = 0;
    long long wall_ms = 0;
    bool hit_work_budget = false;
    bool hit_wall_budget = false;
};

struct Verdict {
    enum class Status { Provable, Refuted, Exhausted };
    Status status = Status::Exhausted;
    std::optional<Proof> proof;
    std::optional<Countermodel> countermodel;
    ExhaustedInfo info;
};

// The variety matching a named calculus, per the completeness lemmas.
// Throws for combinations without a matching lemma (reported, not guessed).
AlgebraClass spec_to_class(const LogicSpec& logic);
int default_algebra_max(const AlgebraClass& cls);

// Cut-free iterative-deepening backward search with a branch-local loop
// check. Sound always; complete up to the depth bound. The second form
// stops after `work_budget` quanta.
std::optional<Proof> prove_backward(const Sequent& goal, const LogicSpec& logic, int depth);
std::optional<Proof> prove_backward(const Sequent& goal, const LogicSpec& logic, int depth,
                                    long long work_budget);

// Fair forward proof enumeration over a growing universe, cut included.
std::optional<Proof> enumerate_deducible(const LogicSpec& logic,
                                         const std::vector<Sequent>& assumptions,
                                         const Sequent& goal, const SearchLimits& limits);

// Prover and refuter interleaved round-robin by work quantum; the first
// definite answer wins and is re-validated before being returned.
Verdict decide(const Sequent& goal, const LogicSpec& logic,
               const std::vector<Sequent>& assumptions, const SearchLimits& limits);

// One record per query, deterministic key order and content.
std::string verdict_to_record(const std::string& query_text, const LogicSpec& logic,
                              const Verdict& v, const SearchLimits& limits);
std::string verdict_to_human(const std::string& query_text, const LogicSpec& logic,
                             const Verdict& v);

// All fragment formulas over the given variables with size <= max_size.
std::vector<Formula> formulas_up_to(const std::vector<std::string>& vars, const Fragment& frag,
                                    int max_size);

}  // namespace naclog

#endif
