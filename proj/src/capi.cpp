#include "naclog.h"

#include <cstring>
#include <string>

#include "constructions.hpp"
#include "decide.hpp"
#include "selftest.hpp"

using namespace naclog;

struct naclog_ctx {
    std::string err;
};

struct naclog_logic {
    LogicSpec spec;
};

struct naclog_algebra {
    FiniteAlgebra alg;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
auto guarded(naclog_ctx* ctx, Fn&& fn) -> decltype(fn()) {
    try {
        if (ctx) ctx->err.clear();
        return fn();
    } catch (const std::exception& e) {
        if (ctx) ctx->err = e.what();
    } catch (...) {
        if (ctx) ctx->err = "unknown error";
    }
    return decltype(fn()){};
}

SearchLimits to_limits(const naclog_limits* lim) {
    SearchLimits out;
    if (!lim) return out;
    if (lim->backward_depth > 0) out.backward_depth = lim->backward_depth;
    if (lim->forward_start > 0) out.forward_start = lim->forward_start;
    if (lim->forward_step > 0) out.forward_step = lim->forward_step;
    if (lim->forward_stages > 0) out.forward_stages = lim->forward_stages;
    if (lim->algebra_max > 0) out.algebra_max = lim->algebra_max;
    if (lim->work_budget > 0) out.work_budget = lim->work_budget;
    if (lim->budget_ms > 0) out.budget_ms = lim->budget_ms;
    return out;
}

std::vector<Sequent> parse_assumptions(const naclog_logic* logic, const char* const* assumptions,
                                       size_t n) {
    std::vector<Sequent> out;
    for (size_t i = 0; i < n; i++) {
        if (!assumptions[i]) throw error("null assumption string");
        out.push_back(logic ? parse_sequent(assumptions[i], logic->spec.fragment)
                            : parse_sequent(assumptions[i]));
    }
    return out;
}

}  // namespace

extern "C" {

naclog_ctx* naclog_ctx_new(void) { return new naclog_ctx(); }

void naclog_ctx_free(naclog_ctx* ctx) { delete ctx; }

const char* naclog_last_error(const naclog_ctx* ctx) { return ctx ? ctx->err.c_str() : ""; }

void naclog_string_free(char* s) { std::free(s); }

const char* naclog_version(void) { return "1.0.0"; }

naclog_logic* naclog_logic_parse(naclog_ctx* ctx, const char* spec) {
    return guarded(ctx, [&]() -> naclog_logic* {
        if (!spec) throw error("null logic spec");
        return new naclog_logic{parse_logic_spec(spec)};
    });
}

void naclog_logic_free(naclog_logic* logic) { delete logic; }

char* naclog_sequent_roundtrip(naclog_ctx* ctx, const naclog_logic* logic, const char* text) {
    return guarded(ctx, [&]() -> char* {
        if (!text) throw error("null sequent text");
        Sequent s = logic ? parse_sequent(text, logic->spec.fragment) : parse_sequent(text);
        return dup_string(s.to_string());
    });
}

naclog_algebra* naclog_algebra_parse(naclog_ctx* ctx, const char* text) {
    return guarded(ctx, [&]() -> naclog_algebra* {
        if (!text) throw error("null algebra text");
        return new naclog_algebra{parse_algebra(text)};
    });
}

void naclog_algebra_free(naclog_algebra* a) { delete a; }

char* naclog_algebra_print(naclog_ctx* ctx, const naclog_algebra* a) {
    return guarded(ctx, [&]() -> char* {
        if (!a) throw error("null algebra");
        return dup_string(algebra_to_string(a->alg));
    });
}

int naclog_algebra_size(const naclog_algebra* a) { return a ? a->alg.n : 0; }

int naclog_check_algebra(naclog_ctx* ctx, const naclog_algebra* a, const char* cls,
                         char** report) {
    int rc = NACLOG_ERROR;
    guarded(ctx, [&]() -> int {
        if (!a || !cls || !report) throw error("null argument");
        ClassReport rep = check_class(a->alg, parse_class(cls));
        *report = dup_string(rep.ok ? "ok" : rep.message);
        rc = NACLOG_OK;
        return 0;
    });
    return rc;
}

int naclog_enumerate(naclog_ctx* ctx, int n, const char* cls, naclog_algebra*** out,
                     size_t* count) {
    int rc = NACLOG_ERROR;
    guarded(ctx, [&]() -> int {
        if (!cls || !out || !count) throw error("null argument");
        auto algs = enumerate_algebras(n, parse_class(cls));
        auto** arr = static_cast<naclog_algebra**>(
            std::malloc(sizeof(naclog_algebra*) * std::max<size_t>(1, algs.size())));
        if (!arr) throw error("out of memory");
        for (size_t i = 0; i < algs.size(); i++) arr[i] = new naclog_algebra{algs[i]};
        *out = arr;
        *count = algs.size();
        rc = NACLOG_OK;
        return 0;
    });
    return rc;
}

void naclog_algebra_array_free(naclog_algebra** arr, size_t count) {
    if (!arr) return;
    for (size_t i = 0; i < count; i++) delete arr[i];
    std::free(arr);
}

naclog_algebra* naclog_complete(naclog_ctx* ctx, const naclog_algebra* a) {
    return guarded(ctx, [&]() -> naclog_algebra* {
        if (!a) throw error("null algebra");
        FPlusAlgebra fp = frame_plus(dm_frame(a->alg).frame);
        return new naclog_algebra{fp.alg};
    });
}

naclog_algebra* naclog_star(naclog_ctx* ctx, const naclog_algebra* a) {
    return guarded(ctx, [&]() -> naclog_algebra* {
        if (!a) throw error("null algebra");
        return new naclog_algebra{star_extension(a->alg).alg};
    });
}

naclog_algebra* naclog_dcore(naclog_ctx* ctx, const naclog_algebra* a) {
    return guarded(ctx, [&]() -> naclog_algebra* {
        if (!a) throw error("null algebra");
        return new naclog_algebra{dm_with_conucleus(a->alg).fplus.alg};
    });
}

naclog_algebra* naclog_fep(naclog_ctx* ctx, const naclog_algebra* a, const int* b, size_t b_len,
                           int with_zero, char** report, char** frame_text) {
    return guarded(ctx, [&]() -> naclog_algebra* {
        if (!a) throw error("null algebra");
        Bitset B(a->alg.n);
        for (size_t i = 0; i < b_len; i++) {
            if (!b || b[i] < 0 || b[i] >= a->alg.n)
                throw error("B element out of the carrier range");
            B.set(b[i]);
        }
        BuiltFrame bf = fep_frame(a->alg, B, with_zero != 0);
        FPlusAlgebra fp = frame_plus(bf.frame);
        Bitset Bfull = B;
        if (with_zero) Bfull.set(*a->alg.zero);
        auto bad = verify_embedding(a->alg, Bfull, bf, fp);
        if (report) {
            std::string rep = "closed_sets=" + std::to_string(fp.alg.n) +
                              " G=" + std::to_string(bf.frame.gn) +
                              " T=" + std::to_string(bf.frame.tn) + " embedding=" +
                              (bad ? ("FAIL(" + *bad + ")") : std::string("ok"));
            *report = dup_string(rep);
        }
        if (frame_text) *frame_text = dup_string(frame_to_string(bf.frame));
        if (bad) throw error("embedding verification failed: " + *bad);
        return new naclog_algebra{fp.alg};
    });
}

char* naclog_translate(naclog_ctx* ctx, const naclog_logic* logic,
                       const char* const* assumptions, size_t n_assumptions, const char* goal) {
    return guarded(ctx, [&]() -> char* {
        if (!goal) throw error("null goal");
        std::vector<Sequent> assume = parse_assumptions(logic, assumptions, n_assumptions);
        Sequent g = logic ? parse_sequent(goal, logic->spec.fragment) : parse_sequent(goal);
        Sequent out = internalize(assume, g);
        if (logic && !sequent_in_fragment(out, logic->spec.fragment))
            throw error("internalized sequent leaves the fragment of " + logic->spec.name +
                        " (needs !, \\ and 0)");
        return dup_string(out.to_string());
    });
}

void naclog_limits_default(naclog_limits* lim) {
    if (!lim) return;
    SearchLimits d;
    lim->backward_depth = d.backward_depth;
    lim->forward_start = d.forward_start;
    lim->forward_step = d.forward_step;
    lim->forward_stages = d.forward_stages;
    lim->algebra_max = d.algebra_max;
    lim->work_budget = d.work_budget;
    lim->budget_ms = d.budget_ms;
}

int naclog_decide(naclog_ctx* ctx, const naclog_logic* logic, const char* const* assumptions,
                  size_t n_assumptions, const char* goal, const naclog_limits* lim, int mode,
                  char** record, char** human) {
    int rc = NACLOG_ERROR;
    guarded(ctx, [&]() -> int {
        if (!logic || !goal || !record) throw error("null argument");
        SearchLimits limits = to_limits(lim);
        std::vector<Sequent> assume = parse_assumptions(logic, assumptions, n_assumptions);
        Sequent g = parse_sequent(goal, logic->spec.fragment);

        Verdict v;
        if (mode == NACLOG_MODE_DECIDE) {
            v = decide(g, logic->spec, assume, limits);
        } else if (mode == NACLOG_MODE_PROVE) {
            if (!assume.empty())
                throw error("prove runs the cut-free backward fast path; deducibility from "
                            "hypotheses goes through decide");
            auto p = prove_backward(g, logic->spec, limits.backward_depth);
            if (p) {
                v.status = Verdict::Status::Provable;
                v.proof = *p;
            } else {
                v.status = Verdict::Status::Exhausted;
                v.info.backward_depth_reached = limits.backward_depth;
            }
        } else if (mode == NACLOG_MODE_REFUTE) {
            AlgebraClass cls = spec_to_class(logic->spec);
            int max_n = limits.algebra_max ? limits.algebra_max : default_algebra_max(cls);
            auto cm = find_countermodel(g, assume, cls, max_n);
            if (cm) {
                v.status = Verdict::Status::Refuted;
                v.countermodel = *cm;
            } else {
                v.status = Verdict::Status::Exhausted;
                v.info.algebra_size_reached = max_n;
            }
        } else {
            throw error("unknown mode");
        }

        *record = dup_string(verdict_to_record(goal, logic->spec, v, limits));
        if (human) *human = dup_string(verdict_to_human(goal, logic->spec, v));
        rc = v.status == Verdict::Status::Exhausted ? NACLOG_EXHAUSTED : NACLOG_OK;
        return 0;
    });
    return rc;
}

int naclog_selftest(naclog_ctx* ctx, int verbose, char** report) {
    int rc = NACLOG_ERROR;
    guarded(ctx, [&]() -> int {
        SelftestResult res = run_selftest(verbose > 1);
        if (report) {
            std::string all;
            for (const auto& l : res.lines) {
                all += l;
                all += "\n";
            }
            *report = dup_string(all);
        }
        rc = res.ok ? NACLOG_OK : NACLOG_ERROR;
        if (!res.ok && ctx) ctx->err = "selftest failed";
        return 0;
    });
    return rc;
}

}  // extern "C"
