#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const char* binary() {
    const char* bin = std::getenv("CACTL_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const std::string out_path = "cli_capture_" + std::to_string(counter++) + ".txt";
    const std::string command =
        env_prefix + "\"" + binary() + "\" " + args + " > " + out_path + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = slurp(out_path);
    std::remove(out_path.c_str());
    return result;
}

} // namespace

TEST_CASE("steer reproduces the golden diagram") {
    const RunResult result =
        run("steer --rule wolfram:90 --n 6 --from 011100 --to 000000 --render text");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("T = 3") != std::string::npos);

    const char* fixtures = std::getenv("CACTL_FIXTURES");
    REQUIRE(fixtures != nullptr);
    const std::string golden = slurp(std::string(fixtures) + "/steer_rule90_golden.txt");
    REQUIRE(!golden.empty());
    CHECK(result.output.find(golden) != std::string::npos);
}

TEST_CASE("steer reports unreachable targets as a successful analysis") {
    const RunResult result = run("steer --rule wolfram:204 --n 2 --from 01 --to 10");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("UNREACHABLE") != std::string::npos);
}

TEST_CASE("steer honors an exact horizon") {
    const RunResult absent =
        run("steer --rule wolfram:170 --n 3 --from 000 --to 111 --exact-time 2");
    CHECK(absent.exit_code == 0);
    CHECK(absent.output.find("UNREACHABLE") != std::string::npos);

    const RunResult present =
        run("steer --rule wolfram:170 --n 3 --from 000 --to 111 --exact-time 3");
    CHECK(present.exit_code == 0);
    CHECK(present.output.find("T = 3") != std::string::npos);
}

TEST_CASE("steer writes a portable bitmap") {
    const std::string path = "cli_steer_test.pbm";
    const RunResult result = run("steer --rule wolfram:90 --n 6 --from 011100 --to 000000 "
                                 "--render image --out " +
                                 path);
    CHECK(result.exit_code == 0);
    const std::string pbm = slurp(path);
    std::remove(path.c_str());
    REQUIRE(pbm.size() == 11);
    CHECK(pbm.substr(0, 7) == "P4\n8 4\n");
    CHECK(static_cast<unsigned char>(pbm[7]) == 0x39);
    CHECK(static_cast<unsigned char>(pbm[10]) == 0x00);
}

TEST_CASE("exit codes follow the contract") {
    CHECK(run("analyze --rule wolfram:90 --n-min 1 --n-max 3").exit_code == 0);
    CHECK(run("analyze --rule wolfram:260 --n-min 1 --n-max 3").exit_code == 2);
    CHECK(run("analyze --rule nonsense --n-min 1 --n-max 3").exit_code == 2);
    CHECK(run("analyze --rule wolfram:90 --n-min 1 --n-max 30").exit_code == 3);
    CHECK(run("steer --rule wolfram:90 --n 6 --from 01 --to 000000").exit_code == 2);
    CHECK(run("steer --rule wolfram:90 --n 6 --from 011100 --to 000000 --render image")
              .exit_code == 2);
    CHECK(run("blocking --rule wolfram:204 --word 0 --p 1 --offset 0 --t-max 12").exit_code ==
          3);
    CHECK(run("blocking --rule wolfram:90").exit_code == 2);
    CHECK(run("trace --rule wolfram:90 --n 20 --k 5").exit_code == 3);
    CHECK(run("nonexistent-subcommand").exit_code == 2);
}

TEST_CASE("analyze emits deterministic json apart from timings") {
    const std::string path_a = "cli_analyze_a.json";
    const std::string path_b = "cli_analyze_b.json";
    CHECK(run("analyze --rule wolfram:90 --n-min 1 --n-max 4 --trace-k 2 --json " + path_a)
              .exit_code == 0);
    CHECK(run("analyze --rule wolfram:90 --n-min 1 --n-max 4 --trace-k 2 --json " + path_b)
              .exit_code == 0);
    nlohmann::json a = nlohmann::json::parse(slurp(path_a));
    nlohmann::json b = nlohmann::json::parse(slurp(path_b));
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());

    CHECK(a.at("schema_version") == 1);
    CHECK(a.at("results").size() == 4);
    CHECK(a.at("results")[0].at("trace").at("approx_equals_graph") == true);
    a.erase("timings_ms");
    b.erase("timings_ms");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("results do not depend on the thread-count hint") {
    const std::string path_a = "cli_threads_1.json";
    const std::string path_b = "cli_threads_4.json";
    CHECK(run("analyze --rule wolfram:110 --n-min 1 --n-max 5 --trace-k 2 --json " + path_a)
              .exit_code == 0);
    CHECK(run("analyze --rule wolfram:110 --n-min 1 --n-max 5 --trace-k 2 --json " + path_b,
              "CACTL_THREADS=4 ")
              .exit_code == 0);
    nlohmann::json a = nlohmann::json::parse(slurp(path_a));
    nlohmann::json b = nlohmann::json::parse(slurp(path_b));
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
    a.erase("timings_ms");
    b.erase("timings_ms");
    CHECK(a.dump() == b.dump());

    const std::string survey_a =
        run("survey --radius 1 --n 3 --rules all", "CACTL_THREADS=3 ").output;
    const std::string survey_b = run("survey --radius 1 --n 3 --rules all").output;
    CHECK(survey_a == survey_b);
}

TEST_CASE("survey covers the requested rules once each") {
    const std::string path = "cli_survey.json";
    CHECK(run("survey --radius 1 --n 3 --rules 204,90,0,90 --json " + path).exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(path));
    std::remove(path.c_str());
    REQUIRE(doc.at("rows").size() == 3); // duplicates collapse
    CHECK(doc.at("rows")[0].at("rule") == 0);
    CHECK(doc.at("rows")[0].at("regionally_controllable") == false);
    CHECK(doc.at("rows")[0].at("period").is_null());
    CHECK(doc.at("rows")[1].at("rule") == 90);
    CHECK(doc.at("rows")[1].at("regionally_controllable") == true);
    CHECK(doc.at("rows")[2].at("rule") == 204);
    CHECK(doc.at("rows")[2].at("regionally_controllable") == false);
}

TEST_CASE("survey reports the shift rule's steering time") {
    const std::string path = "cli_survey_shift.json";
    CHECK(run("survey --radius 1 --n 4 --rules 170 --json " + path).exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(path));
    std::remove(path.c_str());
    REQUIRE(doc.at("rows").size() == 1);
    CHECK(doc.at("rows")[0].at("regionally_controllable") == true);
    CHECK(doc.at("rows")[0].at("primitive") == true);
    CHECK(doc.at("rows")[0].at("primitivity_index") == 4);
}

TEST_CASE("trace subcommand reports verdicts") {
    const RunResult identity = run("trace --rule wolfram:204 --n 1 --k 2");
    CHECK(identity.exit_code == 0);
    CHECK(identity.output.find("2 blocks") != std::string::npos);
    CHECK(identity.output.find("strict transitive: no") != std::string::npos);

    const RunResult xor_rule = run("trace --rule wolfram:90 --n 1 --k 2 --check-approx");
    CHECK(xor_rule.exit_code == 0);
    CHECK(xor_rule.output.find("4 blocks") != std::string::npos);
    CHECK(xor_rule.output.find("mixing: yes") != std::string::npos);
    CHECK(xor_rule.output.find("equals transition graph: yes") != std::string::npos);

    const RunResult zero = run("trace --rule wolfram:0 --n 1 --k 2");
    CHECK(zero.output.find("strict transitive: no") != std::string::npos);
    CHECK(zero.output.find("essential transitive: yes") != std::string::npos);
}

TEST_CASE("blocking subcommand verdicts") {
    const RunResult certified = run("blocking --rule wolfram:204 --word 00 --p 1 --offset 0");
    CHECK(certified.exit_code == 0);
    CHECK(certified.output.find("CERTIFIED") != std::string::npos);

    const RunResult refuted =
        run("blocking --rule wolfram:90 --word 000 --p 1 --offset 1 --t-max 4");
    CHECK(refuted.exit_code == 0);
    CHECK(refuted.output.find("REFUTED at t = 2") != std::string::npos);

    const RunResult visibly =
        run("blocking --rule wolfram:204 --visibly --l 2 --set all --t-max 5");
    CHECK(visibly.exit_code == 0);
    CHECK(visibly.output.find("NOT CONTROLLABLE") != std::string::npos);
    CHECK(visibly.output.find("m = 0, p' = 1") != std::string::npos);

    const RunResult unverified =
        run("blocking --rule wolfram:90 --visibly --l 1 --set all --t-max 4");
    CHECK(unverified.exit_code == 0);
    CHECK(unverified.output.find("NOT verified") != std::string::npos);
}
