#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ffl/job.hpp"

using namespace ffl;

namespace {

JobConfig zeta_config() {
    JobConfig cfg;
    cfg.task = "zeta";
    cfg.p = 3;
    cfg.e = 1;
    cfg.N = 5;
    cfg.derivatives = 1;
    return cfg;
}

} // namespace

TEST_CASE("zeta job: coefficients and reconstruction") {
    RunResult r = run(zeta_config());
    CHECK(r.exit_code == 0);
    const auto& series = r.report.at("series");
    REQUIRE(series.size() == 6);
    std::vector<std::string> expect{"1", "3", "9", "27", "81", "243"};
    for (size_t i = 0; i < 6; ++i) CHECK(series[i].at("coeffs")[0].get<std::string>() == expect[i]);
    const auto& den = r.report.at("reconstruction").at("den");
    REQUIRE(den.size() == 2);
    CHECK(den[1].at("coeffs")[0].get<std::string>() == "-3");
    // pole at the center, order 1, no values
    CHECK(r.report.at("values").at("pole").get<bool>());
    CHECK(r.report.at("values").at("pole_order").get<unsigned>() == 1);
    CHECK(r.report.at("checks").at("trace_identity").at("pass").get<bool>());
}

TEST_CASE("reports are byte-identical across runs") {
    RunResult a = run(zeta_config());
    RunResult b = run(zeta_config());
    CHECK(render_report(a.report) == render_report(b.report));
}

TEST_CASE("config round-trips through the report") {
    JobConfig cfg;
    cfg.task = "dirichlet";
    cfg.p = 3;
    cfg.N = 6;
    cfg.derivatives = 2;
    cfg.sigmas = {1, 3};
    CharacterSpec spec;
    spec.modulus = {{0}, {1}}; // t
    spec.order = 2;
    spec.exponents = {1};
    cfg.characters.push_back(spec);
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    JobConfig back = parse_job_config(r.report.at("config"));
    CHECK(back == cfg);
}

TEST_CASE("task and validation failures exit with code 1") {
    JobConfig cfg = zeta_config();
    cfg.task = "nonsense";
    CHECK(run(cfg).exit_code == 1);

    JobConfig curve_cfg;
    curve_cfg.task = "curve";
    curve_cfg.p = 3; // p < 5 unsupported for curves
    curve_cfg.N = 4;
    curve_cfg.curve = CurveSpec{{{1}}, {{1}}};
    RunResult r = run(curve_cfg);
    CHECK(r.exit_code == 1);
    CHECK(r.report.at("status").get<std::string>() == "validation-error");
    CHECK(r.report.at("error").at("kind").get<std::string>() == std::string("UnsupportedCharacteristic"));
}

TEST_CASE("twist with a character ramified at a bad place is refused") {
    JobConfig cfg;
    cfg.task = "twist";
    cfg.p = 5;
    cfg.N = 4;
    // y^2 = x^3 - 3x + (t+2): multiplicative at t (and t+4)
    cfg.curve = CurveSpec{{{-3}}, {{2}, {1}}};
    CharacterSpec spec;
    spec.modulus = {{0}, {1}}; // chi mod t, ramified exactly at t
    spec.order = 4;
    spec.exponents = {1};
    cfg.characters.push_back(spec);
    RunResult r = run(cfg);
    CHECK(r.exit_code == 1);
    CHECK(r.report.at("error").at("kind").get<std::string>() == std::string("UnsupportedRamificationOverlap"));
}

TEST_CASE("twist job succeeds with coprime conductors") {
    JobConfig cfg;
    cfg.task = "twist";
    cfg.p = 5;
    cfg.N = 6;
    cfg.derivatives = 1;
    // y^2 = x^3 - 3x + (t+1): bad places t+4, t+3; chi mod t is coprime
    cfg.curve = CurveSpec{{{-3}}, {{1}, {1}}};
    CharacterSpec spec;
    spec.modulus = {{0}, {1}};
    spec.order = 4;
    spec.exponents = {1};
    cfg.characters.push_back(spec);
    cfg.degree_bound_num = 2;
    cfg.degree_bound_den = 0;
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("checks").at("trace_identity").at("pass").get<bool>());
}

TEST_CASE("trace-check and divisor-check tasks") {
    JobConfig cfg;
    cfg.task = "trace-check";
    cfg.p = 3;
    cfg.N = 5;
    CHECK(run(cfg).exit_code == 0);

    cfg.task = "divisor-check";
    cfg.N = 4;
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("checks").at("rearrangement").at("pass").get<bool>());

    // the same checks on a twisted curve configuration
    JobConfig twist;
    twist.p = 5;
    twist.N = 4;
    twist.curve = CurveSpec{{{-3}}, {{1}, {1}}};
    CharacterSpec spec;
    spec.modulus = {{0}, {1}};
    spec.order = 4;
    spec.exponents = {1};
    twist.characters.push_back(spec);
    twist.task = "trace-check";
    RunResult rt = run(twist);
    CHECK(rt.exit_code == 0);
    CHECK(rt.report.at("checks").at("trace_identity").at("pass").get<bool>());
    twist.task = "divisor-check";
    RunResult rd = run(twist);
    CHECK(rd.exit_code == 0);
    CHECK(rd.report.at("checks").at("rearrangement").at("pass").get<bool>());

    // dirichlet variant with the infinite place folded in
    JobConfig chind;
    chind.p = 3;
    chind.N = 4;
    chind.include_infinity = true;
    CharacterSpec cspec;
    cspec.modulus = {{0}, {1}};
    cspec.order = 2;
    cspec.exponents = {1};
    cspec.infinity_exponent = 1; // chi(inf) = -1
    chind.characters.push_back(cspec);
    chind.task = "divisor-check";
    RunResult rc = run(chind);
    CHECK(rc.exit_code == 0);
    CHECK(rc.report.at("checks").at("rearrangement").at("pass").get<bool>());
}

TEST_CASE("equivariance task verdict table") {
    JobConfig cfg;
    cfg.task = "equivariance";
    cfg.p = 5;
    cfg.N = 6;
    cfg.derivatives = 1;
    CharacterSpec spec;
    spec.modulus = {{0}, {1}};
    spec.order = 4;
    spec.exponents = {1};
    cfg.characters.push_back(spec);
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    const auto& verdicts = r.report.at("equivariance");
    REQUIRE(verdicts.size() == 2); // (Z/4)^x = {1, 3}
    for (const auto& v : verdicts) CHECK(v.at("pass").get<bool>());
}

TEST_CASE("reconstruction failure exits with code 3") {
    JobConfig cfg = zeta_config();
    cfg.N = 3;
    cfg.degree_bound_num = 4; // bounds exceed what N supports
    cfg.degree_bound_den = 4;
    RunResult r = run(cfg);
    CHECK(r.exit_code == 3);
    CHECK(r.report.at("status").get<std::string>() == "reconstruction-failed");
}

TEST_CASE("cli binary runs a job end to end") {
    std::string report_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                              "/ffl_cli_test_report.json";
    std::string cmd = std::string(FFL_CLI_PATH) + " --task zeta --q 3 --trunc 5 --out " + report_path +
                      " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    CHECK(status == 0);
    std::ifstream in(report_path);
    REQUIRE(in.good());
    ordered_json parsed = ordered_json::parse(in);
    CHECK(parsed.at("series").size() == 6);
    CHECK(parsed.at("status").get<std::string>() == "ok");
    std::remove(report_path.c_str());

    // exit code 1 for an invalid field
    std::string bad = std::string(FFL_CLI_PATH) + " --task zeta --q 6 --trunc 4 > /dev/null 2>&1";
    int bad_status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(bad_status) == 1);

    // config file + flag overrides + --sigma parsing
    std::string cfg_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/ffl_cli_test_config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"task": "equivariance", "q": {"p": 5, "e": 1}, "N": 3,
                   "characters": [{"modulus": [0, 1], "order": 4, "exponents": [1],
                                   "infinity": "ramified"}]})";
    }
    std::string out_path2 = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                            "/ffl_cli_test_equiv.json";
    std::string eq = std::string(FFL_CLI_PATH) + " --config " + cfg_path +
                     " --trunc 5 --sigma 1,3 --out " + out_path2 + " > /dev/null 2>&1";
    CHECK(std::system(eq.c_str()) == 0);
    std::ifstream in2(out_path2);
    REQUIRE(in2.good());
    ordered_json parsed2 = ordered_json::parse(in2);
    CHECK(parsed2.at("config").at("N").get<unsigned>() == 5); // flag overrode the file
    REQUIRE(parsed2.at("equivariance").size() == 2);
    for (const auto& v : parsed2.at("equivariance")) CHECK(v.at("pass").get<bool>());
    std::remove(cfg_path.c_str());
    std::remove(out_path2.c_str());
}
