#ifndef FFL_JOB_HPP
#define FFL_JOB_HPP

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ffl/lseries.hpp"

namespace ffl {

using ordered_json = nlohmann::ordered_json;

struct CurveSpec {
    std::vector<std::vector<long>> A; // one entry per coefficient; inner size e
    std::vector<std::vector<long>> B;

    bool operator==(const CurveSpec&) const = default;
};

struct CharacterSpec {
    std::vector<std::vector<long>> modulus;
    unsigned order = 1;
    std::vector<unsigned> exponents;
    std::optional<unsigned> infinity_exponent; // nullopt = ramified at infinity

    bool operator==(const CharacterSpec&) const = default;
};

// One batch computation: validated against the module constructors at run
// time; deterministic report for identical configs.
struct JobConfig {
    std::string task = "zeta"; // zeta | dirichlet | curve | twist | equivariance | trace-check | divisor-check
    uint64_t p = 3;
    unsigned e = 1;
    unsigned N = 8;
    unsigned derivatives = 0; // k
    std::vector<unsigned> sigmas;
    bool include_infinity = false;
    std::optional<CurveSpec> curve;
    std::vector<CharacterSpec> characters;
    std::optional<unsigned> degree_bound_num;
    std::optional<unsigned> degree_bound_den;
    unsigned margin = 2;
    unsigned threads = 0;

    bool operator==(const JobConfig&) const = default;
};

JobConfig parse_job_config(const ordered_json& j);
ordered_json job_config_to_json(const JobConfig& cfg);

// Exit codes: 0 all checks pass, 1 validation error, 2 exact-check failure,
// 3 reconstruction failure.
struct RunResult {
    int exit_code = 0;
    ordered_json report;
};

RunResult run(const JobConfig& cfg);

std::string render_report(const ordered_json& report);

// Streaming trace sums s_1..s_N (index n), matching the log-derivative of the
// corresponding pipeline series.
std::vector<Cyclotomic> trace_sums_zeta(const FqRef& field, unsigned N, bool include_infinity);
std::vector<Cyclotomic> trace_sums_dirichlet(const DirichletCharacter& chi, unsigned N, bool include_infinity);
std::vector<Cyclotomic> trace_sums_curve(const CurveLocalData& data);
std::vector<Cyclotomic> trace_sums_twisted(const CurveLocalData& data, const DirichletCharacter& chi);

ordered_json cyclotomic_to_json(const Cyclotomic& x);
Cyclotomic cyclotomic_from_json(const ordered_json& j);

} // namespace ffl

#endif
