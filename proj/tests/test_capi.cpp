#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "naclog.h"

namespace {
struct Ctx {
    naclog_ctx* p;
    Ctx() : p(naclog_ctx_new()) {}
    ~Ctx() { naclog_ctx_free(p); }
};

const char* TWO_CHAIN =
    "n=2\n"
    "meet:\n0 0\n0 1\n"
    "join:\n0 1\n1 1\n"
    "prod:\n0 0\n0 1\n"
    "ldiv:\n1 1\n0 1\n"
    "rdiv:\n1 0\n1 1\n"
    "bang:\n0 1\n"
    "one=1\n"
    "zero=0\n";
}  // namespace

TEST_CASE("ctx and error reporting") {
    Ctx ctx;
    CHECK(std::strcmp(naclog_last_error(ctx.p), "") == 0);
    CHECK(naclog_logic_parse(ctx.p, "bogus") == nullptr);
    CHECK(std::strlen(naclog_last_error(ctx.p)) > 0);
    naclog_logic* ok = naclog_logic_parse(ctx.p, "nacill0+ec");
    REQUIRE(ok != nullptr);
    CHECK(std::strcmp(naclog_last_error(ctx.p), "") == 0);
    naclog_logic_free(ok);
}

TEST_CASE("sequent round trip and fragment validation") {
    Ctx ctx;
    char* s = naclog_sequent_roundtrip(ctx.p, nullptr, "(a o (b o c)) => (a . (b . c))");
    REQUIRE(s != nullptr);
    CHECK(std::string(s) == "(a o (b o c)) => (a . (b . c))");
    naclog_string_free(s);

    naclog_logic* fnl = naclog_logic_parse(ctx.p, "fnl");
    REQUIRE(fnl);
    CHECK(naclog_sequent_roundtrip(ctx.p, fnl, "!a => a") == nullptr);
    CHECK(std::string(naclog_last_error(ctx.p)).find("fragment") != std::string::npos);
    naclog_logic_free(fnl);
}

TEST_CASE("algebra parse/print/check") {
    Ctx ctx;
    naclog_algebra* a = naclog_algebra_parse(ctx.p, TWO_CHAIN);
    REQUIRE(a != nullptr);
    CHECK(naclog_algebra_size(a) == 2);
    char* text = naclog_algebra_print(ctx.p, a);
    REQUIRE(text != nullptr);
    CHECK(std::string(text) == TWO_CHAIN);
    naclog_string_free(text);

    char* report = nullptr;
    CHECK(naclog_check_algebra(ctx.p, a, "naccll", &report) == NACLOG_OK);
    CHECK(std::string(report) == "ok");
    naclog_string_free(report);
    CHECK(naclog_check_algebra(ctx.p, a, "not-a-class", &report) == NACLOG_ERROR);
    naclog_algebra_free(a);
}

TEST_CASE("enumerate via the C surface") {
    Ctx ctx;
    naclog_algebra** arr = nullptr;
    size_t count = 0;
    REQUIRE(naclog_enumerate(ctx.p, 3, "rlug", &arr, &count) == NACLOG_OK);
    CHECK(count == 3);
    for (size_t i = 0; i < count; i++) CHECK(naclog_algebra_size(arr[i]) == 3);
    naclog_algebra_array_free(arr, count);
}

TEST_CASE("constructions via the C surface") {
    Ctx ctx;
    naclog_algebra* a = naclog_algebra_parse(ctx.p, TWO_CHAIN);
    REQUIRE(a);

    naclog_algebra* dm = naclog_complete(ctx.p, a);
    REQUIRE(dm);
    CHECK(naclog_algebra_size(dm) == 2);
    naclog_algebra_free(dm);

    naclog_algebra* st = naclog_star(ctx.p, a);
    REQUIRE(st);
    CHECK(naclog_algebra_size(st) == 6);
    char* report = nullptr;
    CHECK(naclog_check_algebra(ctx.p, st, "cyinrlug", &report) == NACLOG_OK);
    CHECK(std::string(report) == "ok");
    naclog_string_free(report);
    naclog_algebra_free(st);

    naclog_algebra* d = naclog_dcore(ctx.p, a);
    REQUIRE(d);
    CHECK(naclog_check_algebra(ctx.p, d, "naccll", &report) == NACLOG_OK);
    CHECK(std::string(report) == "ok");
    naclog_string_free(report);
    naclog_algebra_free(d);

    int b[] = {0, 1};
    char* emb = nullptr;
    naclog_algebra* fp = naclog_fep(ctx.p, a, b, 2, 1, &emb, nullptr);
    REQUIRE(fp);
    CHECK(std::string(emb).find("embedding=ok") != std::string::npos);
    naclog_string_free(emb);
    naclog_algebra_free(fp);
    naclog_algebra_free(a);
}

TEST_CASE("translate") {
    Ctx ctx;
    const char* assume[] = {"a => b"};
    char* out = naclog_translate(ctx.p, nullptr, assume, 1, "c => c");
    REQUIRE(out != nullptr);
    CHECK(std::string(out) == "(c o !(a \\ b)) => c");
    naclog_string_free(out);

    // fragment validation rejects the translation in a !-free calculus
    naclog_logic* fnl = naclog_logic_parse(ctx.p, "fnl");
    REQUIRE(fnl);
    CHECK(naclog_translate(ctx.p, fnl, assume, 1, "c => c") == nullptr);
    naclog_logic_free(fnl);
}

TEST_CASE("decide across the C surface") {
    Ctx ctx;
    naclog_logic* logic = naclog_logic_parse(ctx.p, "fnl");
    REQUIRE(logic);
    naclog_limits lim;
    naclog_limits_default(&lim);
    lim.backward_depth = 6;
    lim.work_budget = 200000;

    char* record = nullptr;
    char* human = nullptr;
    int rc = naclog_decide(ctx.p, logic, nullptr, 0, "a => a", &lim, NACLOG_MODE_DECIDE, &record,
                           &human);
    CHECK(rc == NACLOG_OK);
    CHECK(std::string(record).find("\"status\":\"provable\"") != std::string::npos);
    CHECK(std::string(human).find("PROVABLE") != std::string::npos);
    naclog_string_free(record);
    naclog_string_free(human);

    rc = naclog_decide(ctx.p, logic, nullptr, 0, "a => b", &lim, NACLOG_MODE_REFUTE, &record,
                       nullptr);
    CHECK(rc == NACLOG_OK);
    CHECK(std::string(record).find("\"status\":\"refuted\"") != std::string::npos);
    naclog_string_free(record);

    rc = naclog_decide(ctx.p, logic, nullptr, 0, "a => b", &lim, NACLOG_MODE_PROVE, &record,
                       nullptr);
    CHECK(rc == NACLOG_EXHAUSTED);
    naclog_string_free(record);

    // prover mode refuses hypotheses
    const char* assume[] = {"a => b"};
    rc = naclog_decide(ctx.p, logic, assume, 1, "a => b", &lim, NACLOG_MODE_PROVE, &record,
                       nullptr);
    CHECK(rc == NACLOG_ERROR);

    naclog_logic_free(logic);
}

TEST_CASE("selftest runs clean") {
    Ctx ctx;
    char* report = nullptr;
    int rc = naclog_selftest(ctx.p, 0, &report);
    REQUIRE(report != nullptr);
    INFO(report);
    CHECK(rc == NACLOG_OK);
    CHECK(std::string(report).find("FAIL") == std::string::npos);
    naclog_string_free(report);
}
