// Command-line front end: census, model, compare, verify and sieve-dims modes.
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cubic/runner.hpp"

int main(int argc, char** argv)
{
    cubic::RunConfig cfg;
    std::string mode = "census";
    CLI::App app{"Degree-3 cover census over F_q: exhaustive enumeration against the sieve model"};
    app.add_option("--q", cfg.q, "field order, a prime power <= 9")->default_val(2);
    app.add_option("--n-max", cfg.n_max, "largest N (discriminant degree 2N)")->default_val(4);
    app.add_option("--mode", mode, "census | model | compare | verify | sieve-dims")
        ->check(CLI::IsMember({"census", "model", "compare", "verify", "sieve-dims"}))
        ->default_val("census");
    app.add_option("--cap", cfg.cap, "largest section space to enumerate")->default_val(std::uint64_t{1} << 26);
    app.add_option("--workers", cfg.workers, "worker threads per space")->default_val(1);
    app.add_option("--cache-dir", cfg.cache_dir, "census cache directory (env CUBIC_CENSUS_CACHE wins)");
    app.add_option("--out", cfg.out, "csv | json")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");
    app.add_option("--seed", cfg.seed, "seed for sampled markings")->default_val(1);
    app.add_flag("--strict", cfg.strict, "fail when the monitored deviation ratio is not bounded");
    app.add_option("--strict-ratio-cap", cfg.strict_ratio_cap, "bound used by --strict")->default_val(10.0);
    app.add_flag("--timings", cfg.timings, "include wall-clock timings in JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.mode = *cubic::parse_mode(mode);
    if (const char* env = std::getenv("CUBIC_CENSUS_CACHE"); env && *env) cfg.cache_dir = env;

    try {
        cubic::validate(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        cubic::RunReport r = cubic::run(cfg);
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << (cfg.out == "json" ? cubic::to_json(r) : cubic::to_csv(r));
        return r.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
