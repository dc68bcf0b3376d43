#include <catch2/catch.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include <nashjet/parse.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(NASHJET_CLI_BINARY) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& contents) {
    std::string path = std::string("/tmp/nashjet_test_") + name;
    std::ofstream f(path, std::ios::binary);
    f << contents;
    return path;
}

}  // namespace

TEST_CASE("cli help and version") {
    CHECK(run_cli("--help").exit_code == 0);
    auto r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("nashjet") != std::string::npos);
}

TEST_CASE("cli jacobian report has the documented shape") {
    auto r = run_cli("jacobian --poly \"x^3 + y^3\" --weights 1,1 -n 2 --no-timestamp");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["n"] == 2);
    CHECK(doc["s"] == 2);
    CHECK(doc["variant"] == "zero-diagonal");
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["cols"].size() == 5);
    CHECK(doc["config"]["poly"] == "x^3 + y^3");
    CHECK(doc.contains("version"));
    CHECK_FALSE(doc.contains("generated_at"));
    // every printed entry re-parses
    for (const auto& cell : doc["entries"]) {
        auto p = nashjet::parse_polynomial(cell["value"].get<std::string>(), 2);
        CHECK_FALSE(p.is_zero());
    }
}

TEST_CASE("cli ideal reports minors with degrees") {
    auto r = run_cli("ideal --poly \"x^3 + y^3\" --weights 1,1 -n 2 --no-timestamp");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    REQUIRE(doc["minors"].size() == 5);
    CHECK(doc["minors"][0]["degree"] == 5);
    CHECK(doc["minors"][0]["polynomial"] == "x^4*y + x*y^4");
    CHECK(doc["degree_table"].size() == 10);
}

TEST_CASE("cli basis matches the frozen quotient") {
    auto r = run_cli("basis --poly \"x^2 + y^3\" --weights 3,2 -n 2 --no-timestamp");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["total_dim"] == 7);
    CHECK(doc["zero_dimensional"] == true);
    CHECK(doc["dims_by_degree"]["0"] == 1);
    CHECK(doc["dims_by_degree"]["7"] == 1);
}

TEST_CASE("cli derivations window") {
    auto r = run_cli(
        "derivations --poly \"x^3 + y^3\" --weights 1,1 -n 2 --degrees -1..2 --no-timestamp");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    REQUIRE(doc["spaces"].size() == 4);
    CHECK(doc["spaces"][0]["degree"] == -1);
    CHECK(doc["spaces"][0]["dimension"] == 0);
    CHECK(doc["spaces"][1]["degree"] == 0);
    CHECK(doc["spaces"][1]["dimension"] == 1);
}

TEST_CASE("cli verify --all passes for the cusp") {
    auto r = run_cli("verify --all --poly \"x^2 + y^3\" --weights 3,2 -n 2 --no-timestamp");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["all_pass"] == true);
}

TEST_CASE("cli parse errors exit 2 with caret diagnostics") {
    auto r = run_cli("jacobian --poly \"x^^2\" --weights 1,1 -n 2");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("x^^2") != std::string::npos);
    CHECK(r.output.find("^") != std::string::npos);

    CHECK(run_cli("jacobian --poly \"x\" --weights 0,1 -n 1").exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
}

TEST_CASE("cli resource cap exits 3 with the subset count") {
    auto r = run_cli("ideal --poly \"x^3 + y^3\" --weights 1,1 -n 2 --max-minors 4");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("10") != std::string::npos);
    CHECK(r.output.find("4") != std::string::npos);
}

TEST_CASE("NASHJET_MAX_MINORS overrides the default cap") {
    std::string cmd = std::string("NASHJET_MAX_MINORS=4 ") + NASHJET_CLI_BINARY +
                      " ideal --poly \"x^3 + y^3\" --weights 1,1 -n 2 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::string output;
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 3);
}

TEST_CASE("cli catalog run is deterministic and honors exit codes") {
    std::string catalog = write_temp("catalog.json", R"([
      {"name": "a2", "poly": "x^2 + y^3", "weights": [3, 2], "n_range": [1, 2]},
      {"name": "d4", "poly": "x^3 + y^3", "weights": [1, 1], "n_range": [1, 2]}
    ])");
    std::string out1 = "/tmp/nashjet_test_run1.json";
    std::string out2 = "/tmp/nashjet_test_run2.json";
    auto r1 = run_cli("catalog run " + catalog + " --no-timestamp --out " + out1);
    auto r2 = run_cli("catalog run " + catalog + " --no-timestamp --out " + out2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    std::ifstream f1(out1), f2(out2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK_FALSE(s1.empty());

    auto table = run_cli("catalog run " + catalog + " --format table");
    CHECK(table.exit_code == 0);
    CHECK(table.output.find("summary:") != std::string::npos);

    std::string bad = write_temp("catalog_bad.json",
                                 R"([{"name": "broken", "poly": "x^^2", "weights": [1, 1],
                                     "n_range": [2]}])");
    auto rbad = run_cli("catalog run " + bad);
    CHECK(rbad.exit_code == 2);
    CHECK(rbad.output.find("broken") != std::string::npos);

    CHECK(run_cli("catalog run /nonexistent.json").exit_code == 2);
}
