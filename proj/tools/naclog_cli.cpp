// Command-line front end for the naclog shared library. Talks to the core
// exclusively through the C API in naclog.h.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "naclog.h"

namespace {

struct CtxGuard {
    naclog_ctx* ctx;
    CtxGuard() : ctx(naclog_ctx_new()) {}
    ~CtxGuard() { naclog_ctx_free(ctx); }
};

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { naclog_string_free(s); }
};

int fail(naclog_ctx* ctx, const std::string& what) {
    std::cerr << "naclog: " << what;
    const char* msg = naclog_last_error(ctx);
    if (msg && *msg) std::cerr << ": " << msg;
    std::cerr << "\n";
    return 1;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return true;
}

// Batch file: '#' comments, "assume:" prefix lines, one sequent per line.
struct BatchLines {
    std::vector<std::string> assumptions;
    std::vector<std::string> goals;
};

BatchLines split_batch(const std::string& text) {
    BatchLines b;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto cut = line.find('#');
        if (cut != std::string::npos) line.erase(cut);
        auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        auto z = line.find_last_not_of(" \t\r");
        line = line.substr(a, z - a + 1);
        if (line.rfind("assume:", 0) == 0) {
            std::string s = line.substr(7);
            auto p = s.find_first_not_of(" \t");
            b.assumptions.push_back(p == std::string::npos ? "" : s.substr(p));
        } else {
            b.goals.push_back(line);
        }
    }
    return b;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
    std::vector<const char*> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(s.c_str());
    return out;
}

struct LimitFlags {
    naclog_limits lim{};
    void attach(CLI::App* cmd) {
        naclog_limits_default(&lim);
        cmd->add_option("--depth", lim.backward_depth, "backward search depth");
        cmd->add_option("--forward-start", lim.forward_start, "forward size schedule start");
        cmd->add_option("--forward-step", lim.forward_step, "forward size schedule step");
        cmd->add_option("--forward-stages", lim.forward_stages, "forward schedule stages");
        cmd->add_option("--max-algebra", lim.algebra_max,
                        "countermodel search size cap (0 = class default)");
        cmd->add_option("--work-budget", lim.work_budget, "total work quanta");
        cmd->add_option("--budget-ms", lim.budget_ms, "wall clock budget in ms");
    }
};

int run_queries(naclog_ctx* ctx, const std::string& logic_spec,
                const std::vector<std::string>& assumptions,
                const std::vector<std::string>& goals, const naclog_limits& lim, int mode,
                const std::string& format) {
    naclog_logic* logic = naclog_logic_parse(ctx, logic_spec.c_str());
    if (!logic) return fail(ctx, "bad logic spec '" + logic_spec + "'");
    auto asm_c = c_strings(assumptions);
    bool any_exhausted = false;
    int rc_final = 0;
    for (const auto& goal : goals) {
        OwnedString record, human;
        int rc = naclog_decide(ctx, logic, asm_c.data(), asm_c.size(), goal.c_str(), &lim, mode,
                               &record.s, &human.s);
        if (rc == NACLOG_ERROR) {
            naclog_logic_free(logic);
            return fail(ctx, "query '" + goal + "'");
        }
        if (rc == NACLOG_EXHAUSTED) any_exhausted = true;
        std::cout << (format == "records" ? record.s : human.s) << "\n";
    }
    naclog_logic_free(logic);
    if (any_exhausted) rc_final = 2;
    return rc_final;
}

}  // namespace

int main(int argc, char** argv) {
    CtxGuard guard;
    naclog_ctx* ctx = guard.ctx;

    CLI::App app{"naclog - provers, refuters and algebraic constructions for "
                 "non-associative linear logics"};
    app.require_subcommand(1);

    // decide / prove / countermodel share their surface
    struct QueryCmd {
        CLI::App* cmd = nullptr;
        std::string logic;
        std::string file;
        std::vector<std::string> goals;
        std::vector<std::string> assumptions;
        std::string format = "human";
        LimitFlags limits;
    };
    auto make_query_cmd = [&](const char* name, const char* help) {
        QueryCmd q;
        q.cmd = app.add_subcommand(name, help);
        q.cmd->add_option("--logic", q.logic, "calculus spec, e.g. nacill0+ec")->required();
        q.cmd->add_option("file", q.file, "batch file (one sequent per line, assume: lines)");
        q.cmd->add_option("--goal", q.goals, "inline goal sequent (repeatable)");
        q.cmd->add_option("--assume", q.assumptions, "inline hypothesis (repeatable)");
        q.cmd->add_option("--format", q.format, "human | records")
            ->check(CLI::IsMember({"human", "records"}));
        q.limits.attach(q.cmd);
        return q;
    };
    QueryCmd decide_cmd = make_query_cmd("decide", "interleaved prover/refuter decision");
    QueryCmd prove_cmd = make_query_cmd("prove", "cut-free backward fast path only");
    QueryCmd refute_cmd = make_query_cmd("countermodel", "finite countermodel search only");

    // check-algebra
    auto* chk = app.add_subcommand("check-algebra", "verify class laws of an algebra file");
    std::string chk_in, chk_class;
    chk->add_option("--in", chk_in, "algebra file")->required();
    chk->add_option("--class", chk_class, "algebra class, e.g. rlug+ec")->required();

    // enumerate
    auto* en = app.add_subcommand("enumerate", "enumerate algebras up to isomorphism");
    int en_n = 2;
    std::string en_class, en_out;
    en->add_option("--n", en_n, "carrier size")->required();
    en->add_option("--class", en_class, "algebra class")->required();
    en->add_option("--out", en_out, "output directory (default: stdout)");

    // complete / star / dcore
    auto* co = app.add_subcommand("complete", "Dedekind-MacNeille completion (DM F+)");
    std::string co_in, co_out;
    co->add_option("--in", co_in, "algebra file")->required();
    co->add_option("--out", co_out, "output file (default: stdout)");

    auto* st = app.add_subcommand("star", "cyclic involutive extension A*");
    std::string st_in, st_out;
    st->add_option("--in", st_in, "algebra file")->required();
    st->add_option("--out", st_out, "output file (default: stdout)");

    auto* dc = app.add_subcommand("dcore", "central-core conucleus completion");
    std::string dc_in, dc_out;
    dc->add_option("--in", dc_in, "algebra file")->required();
    dc->add_option("--out", dc_out, "output file (default: stdout)");

    // fep
    auto* fe = app.add_subcommand("fep", "FEP frame F_{A,B} and its closed-set algebra");
    std::string fe_in, fe_out, fe_frame_out, fe_b;
    bool fe_zero = false;
    fe->add_option("--in", fe_in, "ambient algebra file")->required();
    fe->add_option("--b", fe_b, "comma-separated carrier elements of B")->required();
    fe->add_flag("--zero", fe_zero, "build the B0 = B + {0} variant");
    fe->add_option("--out", fe_out, "closed-set algebra output (default: stdout)");
    fe->add_option("--frame-out", fe_frame_out, "also write the frame file");

    // translate
    auto* tr = app.add_subcommand("translate", "internalize hypotheses via tau");
    std::vector<std::string> tr_assume;
    std::string tr_goal, tr_logic;
    tr->add_option("--assume", tr_assume, "hypothesis sequent (repeatable)");
    tr->add_option("--goal", tr_goal, "goal sequent")->required();
    tr->add_option("--logic", tr_logic, "validate against this calculus fragment");

    // selftest
    auto* se = app.add_subcommand("selftest", "run the library invariant suites");
    int se_verbose = 0;
    se->add_flag("-v", se_verbose, "thorough mode (larger sizes)");

    CLI11_PARSE(app, argc, argv);

    auto gather = [&](QueryCmd& q, int mode) -> int {
        std::vector<std::string> goals = q.goals;
        std::vector<std::string> assumptions = q.assumptions;
        if (!q.file.empty()) {
            std::string text;
            if (!read_file(q.file, text)) return fail(ctx, "cannot read " + q.file);
            BatchLines b = split_batch(text);
            for (auto& s : b.assumptions) assumptions.push_back(s);
            for (auto& s : b.goals) goals.push_back(s);
        }
        if (goals.empty()) return fail(ctx, "no goals given (file or --goal)");
        return run_queries(ctx, q.logic, assumptions, goals, q.limits.lim, mode, q.format);
    };

    if (decide_cmd.cmd->parsed()) return gather(decide_cmd, NACLOG_MODE_DECIDE);
    if (prove_cmd.cmd->parsed()) return gather(prove_cmd, NACLOG_MODE_PROVE);
    if (refute_cmd.cmd->parsed()) return gather(refute_cmd, NACLOG_MODE_REFUTE);

    if (chk->parsed()) {
        std::string text;
        if (!read_file(chk_in, text)) return fail(ctx, "cannot read " + chk_in);
        naclog_algebra* a = naclog_algebra_parse(ctx, text.c_str());
        if (!a) return fail(ctx, "bad algebra file");
        OwnedString report;
        int rc = naclog_check_algebra(ctx, a, chk_class.c_str(), &report.s);
        naclog_algebra_free(a);
        if (rc != NACLOG_OK) return fail(ctx, "check-algebra");
        std::cout << report.s << "\n";
        return std::strcmp(report.s, "ok") == 0 ? 0 : 2;
    }

    if (en->parsed()) {
        naclog_algebra** arr = nullptr;
        size_t count = 0;
        if (naclog_enumerate(ctx, en_n, en_class.c_str(), &arr, &count) != NACLOG_OK)
            return fail(ctx, "enumerate");
        for (size_t i = 0; i < count; i++) {
            OwnedString text;
            text.s = naclog_algebra_print(ctx, arr[i]);
            if (!text.s) {
                naclog_algebra_array_free(arr, count);
                return fail(ctx, "print");
            }
            if (en_out.empty()) {
                std::cout << "# algebra " << i << "\n" << text.s << "\n";
            } else {
                char name[64];
                std::snprintf(name, sizeof name, "/alg_%03zu.alg", i);
                if (!write_output(en_out + name, text.s)) {
                    naclog_algebra_array_free(arr, count);
                    return fail(ctx, "cannot write into " + en_out);
                }
            }
        }
        std::cerr << "enumerated " << count << " algebra(s)\n";
        naclog_algebra_array_free(arr, count);
        return 0;
    }

    auto unary_transform = [&](const std::string& in_path, const std::string& out_path,
                               naclog_algebra* (*fn)(naclog_ctx*, const naclog_algebra*),
                               const char* what) -> int {
        std::string text;
        if (!read_file(in_path, text)) return fail(ctx, "cannot read " + in_path);
        naclog_algebra* a = naclog_algebra_parse(ctx, text.c_str());
        if (!a) return fail(ctx, "bad algebra file");
        naclog_algebra* b = fn(ctx, a);
        naclog_algebra_free(a);
        if (!b) return fail(ctx, what);
        OwnedString out;
        out.s = naclog_algebra_print(ctx, b);
        naclog_algebra_free(b);
        if (!out.s) return fail(ctx, "print");
        if (!write_output(out_path, out.s)) return fail(ctx, "cannot write output");
        return 0;
    };

    if (co->parsed()) return unary_transform(co_in, co_out, naclog_complete, "complete");
    if (st->parsed()) return unary_transform(st_in, st_out, naclog_star, "star");
    if (dc->parsed()) return unary_transform(dc_in, dc_out, naclog_dcore, "dcore");

    if (fe->parsed()) {
        std::string text;
        if (!read_file(fe_in, text)) return fail(ctx, "cannot read " + fe_in);
        naclog_algebra* a = naclog_algebra_parse(ctx, text.c_str());
        if (!a) return fail(ctx, "bad algebra file");
        std::vector<int> b;
        std::istringstream bs(fe_b);
        std::string tok;
        while (std::getline(bs, tok, ','))
            if (!tok.empty()) b.push_back(std::atoi(tok.c_str()));
        OwnedString report, frame_text;
        naclog_algebra* fp = naclog_fep(ctx, a, b.data(), b.size(), fe_zero ? 1 : 0, &report.s,
                                        fe_frame_out.empty() ? nullptr : &frame_text.s);
        naclog_algebra_free(a);
        if (!fp) return fail(ctx, "fep");
        OwnedString out;
        out.s = naclog_algebra_print(ctx, fp);
        naclog_algebra_free(fp);
        if (!out.s) return fail(ctx, "print");
        if (!write_output(fe_out, out.s)) return fail(ctx, "cannot write output");
        if (!fe_frame_out.empty() && !write_output(fe_frame_out, frame_text.s))
            return fail(ctx, "cannot write frame output");
        std::cerr << report.s << "\n";
        return 0;
    }

    if (tr->parsed()) {
        naclog_logic* logic = nullptr;
        if (!tr_logic.empty()) {
            logic = naclog_logic_parse(ctx, tr_logic.c_str());
            if (!logic) return fail(ctx, "bad logic spec");
        }
        auto asm_c = c_strings(tr_assume);
        OwnedString out;
        out.s = naclog_translate(ctx, logic, asm_c.data(), asm_c.size(), tr_goal.c_str());
        naclog_logic_free(logic);
        if (!out.s) return fail(ctx, "translate");
        std::cout << out.s << "\n";
        return 0;
    }

    if (se->parsed()) {
        OwnedString report;
        int rc = naclog_selftest(ctx, se_verbose + 1, &report.s);
        if (report.s) std::cout << report.s;
        if (rc != NACLOG_OK) return fail(ctx, "selftest failed");
        return 0;
    }

    return 1;
}
