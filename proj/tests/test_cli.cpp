#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// CLI integration: spawns the hasse-forge binary (path via HF_CLI_PATH set by
// the test runner's argv, stashed in main below).

extern const char* g_cli_path;
const char* g_cli_path = nullptr;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(g_cli_path) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("verify-fm reference run exits 0 with all conditions passing") {
    auto r = run("verify-fm --p 17 --n 2 --septuple 4,648,2106,13,2187,54,3");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"overall\":\"pass\"") != std::string::npos);
    CHECK(r.out.find("\"a5_witness\":\"6\"") != std::string::npos);
}

TEST_CASE("verify-fm failure exits 1") {
    auto r = run("verify-fm --p 17 --n 1 --septuple 4,648,2106,13,2187,54,3");
    CHECK(r.code == 1);
}

TEST_CASE("local-solve: kappa = 3 curve is unsolvable at 17 (exit 1)") {
    auto r = run("local-solve --curve mordell:17,2,3 --place 17");
    CHECK(r.code == 1);
    CHECK(r.out.find("unsolvable") != std::string::npos);
    auto r2 = run("local-solve --curve mordell:17,2,3 --place inf");
    CHECK(r2.code == 0);
    auto r3 = run("local-solve --curve fermat-raw:3,4,5,3 --place 2");
    CHECK(r3.code == 0);
}

TEST_CASE("gen-mordell emits a certificate that check-cert re-verifies (exit 0)") {
    auto r = run("gen-mordell --p 17 --n 2 --m 1 --r 1 --out /tmp/hf_cert.json");
    REQUIRE(r.code == 0);
    auto c = run("check-cert --in /tmp/hf_cert.json");
    CHECK(c.code == 0);
    CHECK(c.out.find("\"valid\":true") != std::string::npos);

    // deterministic: identical flags give byte-identical output
    auto r2 = run("gen-mordell --p 17 --n 2 --m 1 --r 1 --out /tmp/hf_cert2.json");
    REQUIRE(r2.code == 0);
    std::ifstream f1("/tmp/hf_cert.json"), f2("/tmp/hf_cert2.json");
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);

    // a tampered certificate is rejected
    std::string tampered = s1;
    auto pos = tampered.find("\"invariant\":\"1/2\"");
    if (pos != std::string::npos) {
        tampered.replace(pos, 17, "\"invariant\":\"0\"");
        std::ofstream tf("/tmp/hf_tampered.json");
        tf << tampered;
        tf.close();
        auto t = run("check-cert --in /tmp/hf_tampered.json");
        CHECK(t.code == 1);
    }
}

TEST_CASE("gen-fermat at paper scale exits 2 (search budget)") {
    auto r = run("gen-fermat --p 17 --n 2 --m 1 --r 1");
    CHECK(r.code == 2);
    CHECK(r.out.find("search-budget") != std::string::npos);
}

TEST_CASE("gen-family-two runs both paths") {
    auto r = run("gen-family-two --p 17");
    CHECK(r.code == 0);
    auto r2 = run("gen-family-two --p 17 --schinzel");
    CHECK(r2.code == 0);
    CHECK(r2.out.find("\"schinzel_path\":true") != std::string::npos);
}

TEST_CASE("dcc non-dcc family") {
    auto r = run("dcc --family non-dcc --nd-n 2 --nd-m 2 --nd-F -1,0,1");
    CHECK(r.code == 0);
    CHECK(r.out.find("does not satisfy") != std::string::npos);
}

TEST_CASE("usage errors exit 3") {
    auto r = run("local-solve --curve nonsense:1 --place 2");
    CHECK(r.code == 3);
}

// custom main: the trailing argument is the hasse-forge binary path
int main(int argc, char** argv) {
    if (argc > 1 && argv[argc - 1][0] != '-') {
        g_cli_path = argv[argc - 1];
        --argc;
    }
    if (!g_cli_path) {
        std::fprintf(stderr, "test_cli: missing CLI binary path argument\n");
        return 1;
    }
    doctest::Context ctx(argc, argv);
    return ctx.run();
}
