#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// Path to the built binary, injected by the build.
#ifndef LOCDET_CLI_PATH
#error "LOCDET_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_file = "cli_out_tmp.txt";
    const std::string cmd =
        std::string(LOCDET_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(raw);
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    std::remove(out_file.c_str());
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("construct and fvector") {
    CHECK(run("construct cycle --n 4 --out cli_c4.json").exit_code == 0);
    const RunResult r = run("fvector cli_c4.json");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "f = (1, 4, 4)"));
    CHECK(contains(r.output, "euler = 0"));
    CHECK(contains(r.output, "lambda = 0"));
    CHECK(contains(r.output, "flag = true"));

    const RunResult j = run("--json fvector cli_c4.json");
    CHECK(j.exit_code == 0);
    const auto rep = nlohmann::json::parse(j.output);
    CHECK(rep["f"] == nlohmann::json({1, 4, 4}));
    CHECK(rep["lambda"] == "0");
    std::remove("cli_c4.json");
}

TEST_CASE("fvector examples") {
    run("construct simplex-boundary --k 3 --out cli_bd3.json");
    const RunResult r = run("fvector cli_bd3.json");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "euler = 2"));
    CHECK(contains(r.output, "flag = false"));
    std::remove("cli_bd3.json");

    run("construct tst --s 1 --t 1 --n 4 --m 5 --out cli_t11.json");
    const RunResult t = run("fvector cli_t11.json");
    CHECK(t.exit_code == 0);
    CHECK(contains(t.output, "f = (1, 9, 29, 40, 20)"));
    CHECK(contains(t.output, "lambda = 0"));
    std::remove("cli_t11.json");
}

TEST_CASE("solve-ld demo exit codes and values") {
    const RunResult bad = run("--json solve-ld --demo 2 4 5 --functional cd");
    CHECK(bad.exit_code == 3);
    const auto rep = nlohmann::json::parse(bad.output);
    CHECK(rep["consistent"] == false);
    CHECK(rep["pairing"] == "1/16");
    CHECK(rep["certificate"] ==
          nlohmann::json({"25/16", "-5/2", "1"}));
    CHECK(rep["system"]["rhs"] == nlohmann::json({"0", "0", "1/16"}));

    const RunResult ok = run("solve-ld --demo 2 4 5 --functional euler");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.output, "Consistent"));
}

TEST_CASE("solve-ld geometric variant") {
    const RunResult r =
        run("--json solve-ld --demo 2 4 5 --functional cd --geometric");
    CHECK(r.exit_code == 3);
    const auto rep = nlohmann::json::parse(r.output);
    CHECK(rep["star_classes_per_member"] == nlohmann::json({1, 2, 1}));
    CHECK(rep["pairing"] == "1/16");
}

TEST_CASE("verify-local") {
    run("construct cycle --n 5 --out cli_c5.json");
    run("construct tst --s 2 --t 0 --n 4 --out cli_t20.json");
    const RunResult ok = run(
        "verify-local --functional euler --family cli_c5.json cli_t20.json "
        "--part2");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.output, "status: pass"));

    // cd has a nonzero constant coefficient: part2 precondition fails.
    const RunResult pre = run(
        "verify-local --functional cd --family cli_c5.json --part2");
    CHECK(pre.exit_code == 2);
    std::remove("cli_c5.json");
    std::remove("cli_t20.json");
}

TEST_CASE("custom functional") {
    run("construct cycle --n 6 --out cli_c6.json");
    // chi written out by hand as a custom list.
    const RunResult r = run(
        "--json solve-ld --family cli_c6.json "
        "--functional 'custom:[\"0\", \"1\", \"-1\"]'");
    CHECK(r.exit_code == 0);
    const auto rep = nlohmann::json::parse(r.output);
    CHECK(rep["consistent"] == true);
    std::remove("cli_c6.json");
}

TEST_CASE("identities") {
    const RunResult r = run("identities --pmax 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "status: pass"));
    CHECK(run("identities --pmax 1").exit_code == 2);
}

TEST_CASE("geometry check") {
    run("construct tst --s 1 --t 1 --n 4 --m 5 --embed --out cli_t11e.json");
    const RunResult r = run("--json geometry check cli_t11e.json --functional cd");
    CHECK(r.exit_code == 0);
    const auto rep = nlohmann::json::parse(r.output);
    CHECK(rep["status"] == "pass");
    CHECK(rep["star_classes"].size() == 2);

    // Without coordinates the check is a usage error.
    run("construct cycle --n 4 --out cli_c4b.json");
    CHECK(run("geometry check cli_c4b.json").exit_code == 2);
    std::remove("cli_t11e.json");
    std::remove("cli_c4b.json");
}

TEST_CASE("usage errors") {
    CHECK(run("construct cycle --n 2").exit_code == 2);
    CHECK(run("fvector no_such_file_321.json").exit_code == 2);
    CHECK(run("bogus-subcommand").exit_code == 2);
    CHECK(run("solve-ld --functional cd").exit_code == 2);
}
