#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(LEVYX_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string fixture(const std::string& name) {
    return std::string(LEVYX_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("verify all --quick exits 0") {
    RunResult r = run("verify all --quick");
    CHECK(r.code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("scale table emits csv rows") {
    RunResult r = run("scale table --spec " + fixture("bm.json") + " --x 0:2:0.5");
    CHECK(r.code == 0);
    // header + manifest + 5 rows
    int rows = 0;
    size_t pos = 0;
    while ((pos = r.out.find('\n', pos)) != std::string::npos) {
        ++rows;
        ++pos;
    }
    CHECK(rows == 7);
    CHECK(r.out.find("x,W(x),strategy,est_error") != std::string::npos);
    CHECK(r.out.find("# manifest") != std::string::npos);
}

TEST_CASE("transform apply returns the transformed value") {
    RunResult r = run("transform apply --spec " + fixture("stable.json") +
                      " --delta 1 --beta 1 --eval 1");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["values"][0]["u"] == 1.0);
    CHECK(std::fabs(j["values"][0]["value"].get<double>() -
                    std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("exponent validate and eval") {
    RunResult r = run("exponent validate --spec " + fixture("cpexp.json") +
                      " --grid 0:5:0.25");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    RunResult e = run("exponent eval --spec " + fixture("bm.json") + " --u 2");
    auto je = nlohmann::json::parse(e.out);
    CHECK(je["values"][0]["psi"] == 2.0);
    // triple spec parses through the same path
    RunResult t = run("exponent eval --spec " + fixture("triple.json") + " --u 1");
    CHECK(t.code == 0);
}

TEST_CASE("expfun subcommands") {
    RunResult r = run("expfun moments --spec " + fixture("cpexp.json") + " --n 3");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["moments"][1]["value"].get<double>() - 2.0 / 3.0) < 1e-12);
    RunResult d = run("expfun density --example poisson --q 0.5 --x-grid 0:2:1");
    CHECK(d.code == 0);
    auto jd = nlohmann::json::parse(d.out);
    CHECK(std::fabs(jd["normalization"].get<double>() - 1.0) < 1e-7);
    RunResult f = run("expfun factorize --spec " + fixture("lamperti.json") +
                      " --delta 0.5");
    CHECK(f.code == 0);
    auto jf = nlohmann::json::parse(f.out);
    CHECK(jf["factors"].size() == 3);
}

TEST_CASE("pssmp subcommands") {
    RunResult r = run("pssmp entrance --spec " + fixture("stable.json") + " --n 3");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["regime"] == "drift");
    RunResult s = run("pssmp series --spec " + fixture("stable.json") +
                      " --x 1.0 --ek 1.0,0.5");
    CHECK(s.code == 0);
    RunResult i = run("pssmp intertwine --spec " + fixture("stable.json") +
                      " --delta 0.5 --case 3 --n 4 --report json");
    CHECK(i.code == 0);
    auto ji = nlohmann::json::parse(i.out);
    for (const auto& m : ji["moments"])
        CHECK(std::fabs(m["residual"].get<double>()) < 1e-10);
}

TEST_CASE("mc subcommands run and self-check") {
    RunResult r = run("mc expfun --spec " + fixture("cpexp.json") +
                      " --paths 5000 --seed 7 --report json");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["method"] == "event");
    RunResult s = run("mc slice --spec " + fixture("cpexp0.json") +
                      " --beta 1 --t 1 --u 0.5,1,2 --paths 5000 --seed 3");
    CHECK(s.code == 0);
}

TEST_CASE("deterministic outputs for identical configs") {
    std::string cmd = "mc expfun --spec " + fixture("stablesub.json") +
                      " --paths 800 --seed 11 --report json";
    RunResult a = run(cmd), b = run(cmd);
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
    CHECK(run("--definitely-not-a-flag").code == 64);
    CHECK(run("scale").code == 64);  // missing subcommand path falls to usage
    // schema violation -> 2
    CHECK(run("exponent eval --spec " + fixture("bad_alpha.json") + " --u 1")
              .code == 2);
    // missing file -> 2
    CHECK(run("exponent eval --spec /nonexistent.json --u 1").code == 2);
}
