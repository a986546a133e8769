// Command-line front end: exact L-series over F_q(t), their rational forms,
// central derivatives, and the equivariance / trace / rearrangement checks.
//
// Configuration comes from a JSON file (--config) with flag overrides; flags
// win over file values. Exit codes: 0 success, 1 validation error, 2 an exact
// check failed, 3 reconstruction failed.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "ffl/job.hpp"

namespace {

bool parse_q(const std::string& text, uint64_t& p, unsigned& e) {
    auto caret = text.find('^');
    try {
        if (caret == std::string::npos) {
            p = std::stoull(text);
            e = 1;
        } else {
            p = std::stoull(text.substr(0, caret));
            e = static_cast<unsigned>(std::stoul(text.substr(caret + 1)));
        }
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact L-series of elliptic curves and Dirichlet characters over F_q(t)"};

    std::string config_path, q_text, task, out_path, sigma_text;
    int trunc = -1, derivatives = -1, dnum = -1, dden = -1, margin = -1, threads = -1;
    bool include_infinity = false;

    app.add_option("--config", config_path, "JSON job configuration file");
    app.add_option("--q", q_text, "field size P or P^E");
    app.add_option("--task", task, "zeta | dirichlet | curve | twist | equivariance | trace-check | divisor-check");
    app.add_option("--trunc", trunc, "truncation order N");
    app.add_option("--derivatives", derivatives, "number of central derivatives K");
    app.add_option("--sigma", sigma_text, "comma-separated automorphism exponents A[,A...]");
    app.add_option("--degree-bound-num", dnum, "numerator degree bound");
    app.add_option("--degree-bound-den", dden, "denominator degree bound");
    app.add_option("--margin", margin, "reconstruction verification margin");
    app.add_option("--threads", threads, "worker threads for the reduction scan (0 = auto)");
    app.add_flag("--include-infinity", include_infinity, "multiply in the factor at the infinite place");
    app.add_option("--out", out_path, "write the report to this path as well as stdout");

    CLI11_PARSE(app, argc, argv);

    ffl::ordered_json file_json = ffl::ordered_json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config file: " << config_path << "\n";
            return 1;
        }
        try {
            in >> file_json;
        } catch (const std::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return 1;
        }
    }

    ffl::JobConfig cfg;
    try {
        cfg = ffl::parse_job_config(file_json);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    // flags override file values
    if (!q_text.empty() && !parse_q(q_text, cfg.p, cfg.e)) {
        std::cerr << "cannot parse --q value: " << q_text << "\n";
        return 1;
    }
    if (!task.empty()) cfg.task = task;
    if (trunc >= 0) cfg.N = static_cast<unsigned>(trunc);
    if (derivatives >= 0) cfg.derivatives = static_cast<unsigned>(derivatives);
    if (dnum >= 0) cfg.degree_bound_num = static_cast<unsigned>(dnum);
    if (dden >= 0) cfg.degree_bound_den = static_cast<unsigned>(dden);
    if (margin >= 0) cfg.margin = static_cast<unsigned>(margin);
    if (threads >= 0) cfg.threads = static_cast<unsigned>(threads);
    if (include_infinity) cfg.include_infinity = true;
    if (!sigma_text.empty()) {
        cfg.sigmas.clear();
        size_t pos = 0;
        while (pos < sigma_text.size()) {
            size_t comma = sigma_text.find(',', pos);
            if (comma == std::string::npos) comma = sigma_text.size();
            try {
                cfg.sigmas.push_back(static_cast<unsigned>(std::stoul(sigma_text.substr(pos, comma - pos))));
            } catch (const std::exception&) {
                std::cerr << "cannot parse --sigma value: " << sigma_text << "\n";
                return 1;
            }
            pos = comma + 1;
        }
    }

    ffl::RunResult result = ffl::run(cfg);
    std::string text = ffl::render_report(result.report);
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write report to " << out_path << "\n";
            return 1;
        }
        out << text;
    }
    return result.exit_code;
}
