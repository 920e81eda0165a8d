#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gaborlab/scenario.hpp"

// End-to-end tests against the built binary: exit codes, JSON round trips,
// byte-determinism, and the text bounds table.

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/gaborlab_cli_stdout.txt";
    const std::string cmd = std::string(GABORLAB_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return RunResult{exit_code, slurp(out_path)};
}

const char* kGoodConfig =
    R"({"group":[8],"lambda":{"generators":[[2]]},"gamma":{"generators":[[2]]},
        "window":{"kind":"random","seed":7}})";

} // namespace

TEST_CASE("analyze: exit 0 and the five-column bounds table") {
    spit("/tmp/gl_good.json", kGoodConfig);
    const RunResult r = run_cli("analyze --config /tmp/gl_good.json");
    CHECK(r.exit_code == 0);
    for (const char* column : {"oracle=", "dual_gramian=", "zz=", "frequency=", "adjoint_riesz="})
        CHECK(r.stdout_text.find(column) != std::string::npos);
    CHECK(r.stdout_text.find("all_passed: true") != std::string::npos);
}

TEST_CASE("analyze: failing check exits 1") {
    spit("/tmp/gl_bad_dual.json",
         R"({"group":[4],"lambda":{"generators":[[1]]},"gamma":{"generators":[[1]]},
             "window":{"kind":"delta"},
             "dual_window":{"kind":"explicit","re":[2,0,0,0]}})");
    const RunResult r = run_cli("analyze --config /tmp/gl_bad_dual.json");
    CHECK(r.exit_code == 1);
    CHECK(r.stdout_text.find("[fail] dual_pair") != std::string::npos);
}

TEST_CASE("invalid configs exit 2") {
    spit("/tmp/gl_invalid.json", R"({"group":[0]})");
    CHECK(run_cli("analyze --config /tmp/gl_invalid.json").exit_code == 2);

    spit("/tmp/gl_notjson.json", "oops");
    CHECK(run_cli("analyze --config /tmp/gl_notjson.json").exit_code == 2);

    CHECK(run_cli("analyze --config /tmp/does_not_exist.json").exit_code == 2);
    CHECK(run_cli("analyze").exit_code == 2);
    CHECK(run_cli("verify --config /tmp/gl_good.json --check nope").exit_code == 2);

    // Order cap override through the environment.
    spit("/tmp/gl_capped.json", kGoodConfig);
    const std::string cmd = std::string("GABORLAB_MAX_ORDER=4 ") + GABORLAB_CLI_PATH +
                            " analyze --config /tmp/gl_capped.json > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);

    // Unwritable output path is an I/O error, same exit class.
    CHECK(run_cli("analyze --config /tmp/gl_good.json --json-out /no_such_dir/rep.json")
              .exit_code == 2);
}

TEST_CASE("json report: schema-valid and byte-identical across runs") {
    spit("/tmp/gl_det.json", kGoodConfig);
    const RunResult r1 =
        run_cli("analyze --config /tmp/gl_det.json --json-out /tmp/gl_rep1.json");
    const RunResult r2 =
        run_cli("analyze --config /tmp/gl_det.json --json-out /tmp/gl_rep2.json");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    const std::string rep1 = slurp("/tmp/gl_rep1.json");
    const std::string rep2 = slurp("/tmp/gl_rep2.json");
    CHECK(rep1 == rep2);
    CHECK(!rep1.empty());

    std::string err;
    const nlohmann::json parsed = nlohmann::json::parse(rep1);
    CHECK_MESSAGE(gaborlab::validate_report_json(parsed, &err), err);
    CHECK(parsed["schema_version"] == "1.0");
}

TEST_CASE("verify runs only the requested checks") {
    spit("/tmp/gl_verify.json", kGoodConfig);
    const RunResult r = run_cli(
        "verify --config /tmp/gl_verify.json --check walnut --check figa "
        "--json-out /tmp/gl_verify_rep.json");
    CHECK(r.exit_code == 0);
    const nlohmann::json rep = nlohmann::json::parse(slurp("/tmp/gl_verify_rep.json"));
    CHECK(rep["checks"].size() == 2);
    CHECK(rep["checks"][0]["name"] == "walnut");
    CHECK(rep["checks"][1]["name"] == "figa");
}

TEST_CASE("dual emits a window that passes the dual_pair check") {
    spit("/tmp/gl_dual_src.json", kGoodConfig);
    const RunResult r = run_cli("dual --config /tmp/gl_dual_src.json --json-out /tmp/gl_dual.json");
    CHECK(r.exit_code == 0);
    const nlohmann::json dual = nlohmann::json::parse(slurp("/tmp/gl_dual.json"));
    REQUIRE(dual.contains("window"));

    // Feed the emitted window back as dual_window.
    nlohmann::json cfg = nlohmann::json::parse(kGoodConfig);
    cfg["dual_window"] = dual["window"];
    cfg["checks"] = {"dual_pair"};
    spit("/tmp/gl_dual_check.json", cfg.dump());
    const RunResult check = run_cli("analyze --config /tmp/gl_dual_check.json");
    CHECK(check.exit_code == 0);
    CHECK(check.stdout_text.find("[pass] dual_pair") != std::string::npos);

    // Not a frame: dual fails with exit 1.
    spit("/tmp/gl_dual_bad.json",
         R"({"group":[8],"lambda":{"generators":[[4]]},"gamma":{"generators":[[4]]},
             "window":{"kind":"delta"}})");
    CHECK(run_cli("dual --config /tmp/gl_dual_bad.json").exit_code == 1);
}

TEST_CASE("scan emits the documented CSV") {
    const RunResult r = run_cli("scan --group 8 --csv-out /tmp/gl_scan.csv");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp("/tmp/gl_scan.csv");
    CHECK(csv.rfind("lambda_order,gamma_order,p,q,A,B,is_frame\n", 0) == 0);
}

TEST_CASE("every shipped scenario config analyzes cleanly") {
    for (const char* name :
         {"z8_oversampled_random", "z8_critical_delta", "z8_parseval_bspline",
          "z12_rational_oversampling", "z2x4_product_group", "z16_host_subgroup_chain"}) {
        const std::string path =
            std::string(GABORLAB_SOURCE_DIR) + "/scenarios/" + name + ".json";
        const RunResult r = run_cli("analyze --config " + path);
        CHECK_MESSAGE(r.exit_code == 0, name << ": " << r.stdout_text);
    }
}
