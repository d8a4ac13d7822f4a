// End-to-end tests driving the installed binary as a subprocess.

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "helpers.hpp"

#ifndef DQA_CLI_PATH
#error "DQA_CLI_PATH must be defined"
#endif
#ifndef DQA_DATA_DIR
#error "DQA_DATA_DIR must be defined"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(DQA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("audit of a synthesized balanced manifest reports left_skew 5.0") {
    testutil::TempDir dir;
    auto synth = run("synth balanced --classes 100 --per-class 50 --seed 1 -o " +
                     dir.file("balanced.jsonl").string());
    REQUIRE(synth.exit_code == 0);
    auto audit = run("audit " + dir.file("balanced.jsonl").string() + " --format jsonl");
    CHECK(audit.exit_code == 0);
    CHECK(audit.out.find("\"left_skew\": 5.0") != std::string::npos);
    CHECK(audit.out.find("\"label_set_size\": 100") != std::string::npos);
}

TEST_CASE("audit of a missing file exits 2") {
    auto r = run("audit definitely_missing.jsonl");
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
}

TEST_CASE("unknown flags are a usage error") {
    CHECK(run("audit x.jsonl --no-such-flag").exit_code == 1);
    CHECK(run("frobnicate").exit_code == 1);
}

TEST_CASE("transform runs are byte-identical across repeats") {
    testutil::TempDir dir;
    REQUIRE(run("synth zipf --classes 20 --size 2000 --exponent 1 --seed 3 -o " +
                dir.file("in.jsonl").string())
                .exit_code == 0);
    testutil::write_file(dir.file("plan.json"),
                         "{\"kind\":\"v_scale\",\"params\":{\"per_class_target\":40},"
                         "\"seed\":9}");
    std::string base = "transform " + dir.file("in.jsonl").string() + " --plan " +
                       dir.file("plan.json").string() + " -o ";
    REQUIRE(run(base + dir.file("out1.jsonl").string()).exit_code == 0);
    REQUIRE(run(base + dir.file("out2.jsonl").string()).exit_code == 0);
    std::string a = testutil::read_file(dir.file("out1.jsonl"));
    CHECK(!a.empty());
    CHECK(a == testutil::read_file(dir.file("out2.jsonl")));
    CHECK(!testutil::read_file(dir.file("out1.jsonl.summary.json")).empty());
}

TEST_CASE("audit JSON output is byte-stable across runs") {
    testutil::TempDir dir;
    REQUIRE(run("synth zipf --classes 10 --size 500 --exponent 1 --seed 2 -o " +
                dir.file("m.jsonl").string())
                .exit_code == 0);
    auto a = run("audit " + dir.file("m.jsonl").string());
    auto b = run("audit " + dir.file("m.jsonl").string());
    CHECK(a.exit_code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
}

TEST_CASE("validate reproduces the fixture concordance") {
    auto r = run(std::string("validate --table ") + DQA_DATA_DIR + "/indicator_accuracy_table.json");
    REQUIRE(r.exit_code == 0);
    // long-tail columns perfectly agree; left-skew and size do not
    auto section = [&](const char* name) {
        auto pos = r.out.find(name);
        REQUIRE(pos != std::string::npos);
        return r.out.substr(pos, 200);
    };
    CHECK(section("long_tail_500").find("\"discordant_pairs\": 0") != std::string::npos);
    CHECK(section("long_tail_100").find("\"discordant_pairs\": 0") != std::string::npos);
    CHECK(section("left_skew").find("\"discordant_pairs\": 11") != std::string::npos);
    CHECK(section("dataset_size").find("\"discordant_pairs\": 14") != std::string::npos);
}

TEST_CASE("predict ranks audit reports") {
    testutil::TempDir dir;
    REQUIRE(run("synth balanced --classes 10 --per-class 600 --seed 1 -o " +
                dir.file("good.jsonl").string())
                .exit_code == 0);
    REQUIRE(run("synth zipf --classes 10 --size 2000 --exponent 2 --seed 1 -o " +
                dir.file("tailed.jsonl").string())
                .exit_code == 0);
    REQUIRE(run("audit " + dir.file("good.jsonl").string() + " -o " +
                dir.file("good.json").string())
                .exit_code == 0);
    REQUIRE(run("audit " + dir.file("tailed.jsonl").string() + " -o " +
                dir.file("tailed.json").string())
                .exit_code == 0);
    auto r = run("predict --reports " + dir.file("good.json").string() + " " +
                 dir.file("tailed.json").string());
    REQUIRE(r.exit_code == 0);
    // the balanced dataset must rank first
    CHECK(r.out.find("good") < r.out.find("tailed"));
}

TEST_CASE("eval computes masked top-1 accuracy and robustness") {
    testutil::TempDir dir;
    testutil::write_file(dir.file("s.csv"), "a,b,c\n0.9,0.5,0.1\n0.9,0.5,0.8\n");
    testutil::write_file(dir.file("t.txt"), "a\nc\n");
    auto r = run("eval --scores " + dir.file("s.csv").string() + " --truth " +
                 dir.file("t.txt").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"top1_accuracy\": 50.0") != std::string::npos);

    testutil::write_file(dir.file("allow.txt"), "b\nc\n");
    r = run("eval --scores " + dir.file("s.csv").string() + " --truth " +
            dir.file("t.txt").string() + " --allow " + dir.file("allow.txt").string());
    REQUIRE(r.exit_code == 0);
    // with a masked out, row 1 predicts b (wrong), row 2 predicts c (right)
    CHECK(r.out.find("\"top1_accuracy\": 50.0") != std::string::npos);

    testutil::write_file(dir.file("shifts.json"), "{\"shifts\":[40,40,40,40]}");
    r = run("eval robustness --accuracies " + dir.file("shifts.json").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"average_robustness\": 40.0") != std::string::npos);
}

TEST_CASE("config file sets defaults, flags override") {
    testutil::TempDir dir;
    REQUIRE(run("synth balanced --classes 10 --per-class 50 --seed 1 -o " +
                dir.file("m.jsonl").string())
                .exit_code == 0);
    testutil::write_file(dir.file("dqa.conf"), "skew_k=10\ntail_k=60,40\n");
    auto r = run("audit " + dir.file("m.jsonl").string() + " --config " +
                 dir.file("dqa.conf").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"skew_k_percent\": 10.0") != std::string::npos);
    CHECK(r.out.find("\"60\"") != std::string::npos);

    r = run("audit " + dir.file("m.jsonl").string() + " --config " +
            dir.file("dqa.conf").string() + " --skew-k 20");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"skew_k_percent\": 20.0") != std::string::npos);
}
