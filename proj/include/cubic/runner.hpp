#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubic/analytic.hpp"
#include "cubic/counts.hpp"

namespace cubic {

enum class Mode { census, model, compare, verify, sieve_dims };

std::optional<Mode> parse_mode(const std::string& s);
const char* mode_name(Mode m);

struct RunConfig {
    std::uint32_t q = 2;
    int n_max = 4;
    Mode mode = Mode::census;
    std::uint64_t cap = std::uint64_t{1} << 26;
    int workers = 1;
    std::string cache_dir;  // empty: no cache
    std::string out = "csv";
    std::uint64_t seed = 1;
    bool strict = false;
    bool timings = false;
    double strict_ratio_cap = 10.0;
};

// Throws std::invalid_argument with a usage message.
void validate(const RunConfig& c);

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct RunReport {
    RunConfig config;
    Table table;
    std::vector<Verdict> verdicts;
    std::vector<std::string> warnings;
    std::map<std::string, double> timings;
    int exit_code = 0;
};

RunReport run(const RunConfig& config);

std::string to_csv(const RunReport& r);
std::string to_json(const RunReport& r);

// Census of every space with N <= n_max, reading and writing the cache when a directory is given.
// Spaces above the cap are left out and reported in warnings.
CensusTable cached_census(const PointCatalog& cat, int n_max, const CensusOptions& opt, const std::string& cache_dir,
                          std::vector<std::string>& warnings);
// True when every space that Theta(N) (and, with psi, Psi(N)) needs is present.
bool census_covers(const CensusTable& t, int N, bool psi);

struct MonitorRow {
    int N = 0;
    Rational theta, theta_hat, deviation;
    double bound = 0;  // N^4 q^(3N/2) + 1
    double ratio = 0;  // |deviation| / bound
};

std::vector<MonitorRow> monitor_deviations(const CensusTable& t, int n_max);
// Bounded when every ratio stays below the cap.
bool ratios_bounded(const std::vector<MonitorRow>& rows, double cap);

// The exact identity suite behind --mode verify.
std::vector<Verdict> identity_suite(const RunConfig& config, std::vector<std::string>& warnings);

}  // namespace cubic
