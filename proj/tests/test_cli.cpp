#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <algorithm>

#include <json.hpp>

#include "cubic/cache.hpp"
#include "cubic/runner.hpp"

using namespace cubic;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
    {
        path = fs::temp_directory_path() / ("cubic_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpaceCensus sample_census()
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 8);
    CensusOptions opt;
    opt.profile_degree = 2;
    return census_space(cat, {2, 0}, opt);
}

}  // namespace

TEST_CASE("cache round trip")
{
    TempDir dir("roundtrip");
    CacheRecord rec{cache_schema_version, sample_census()};
    store_record(dir.path.string(), rec);
    auto back = load_record(dir.path.string(), 2, {2, 0});
    REQUIRE(back.has_value());
    CHECK(back->census == rec.census);
    CHECK(record_hash(*back) == record_hash(rec));
    CHECK(!load_record(dir.path.string(), 2, {3, 1}).has_value());
}

TEST_CASE("tampered cache file is reported as corrupted")
{
    TempDir dir("tamper");
    CacheRecord rec{cache_schema_version, sample_census()};
    store_record(dir.path.string(), rec);
    fs::path file = dir.path / cache_file_name(cache_schema_version, 2, {2, 0});
    auto j = nlohmann::json::parse(slurp(file));
    j["tallies"]["irreducible"] = j["tallies"]["irreducible"].get<std::uint64_t>() + 1;
    std::ofstream(file) << j.dump();
    CHECK_THROWS_AS(load_record(dir.path.string(), 2, {2, 0}), CacheCorrupted);
    std::ofstream(file) << "{ not json";
    CHECK_THROWS_AS(load_record(dir.path.string(), 2, {2, 0}), CacheCorrupted);
}

TEST_CASE("schema bump is a cache miss")
{
    TempDir dir("schema");
    CacheRecord rec{cache_schema_version, sample_census()};
    store_record(dir.path.string(), rec);
    CHECK(!load_record(dir.path.string(), 2, {2, 0}, cache_schema_version + 1).has_value());
    // a record written under another version is ignored by the parser as well
    CacheRecord old{cache_schema_version + 1, rec.census};
    CHECK(!parse_record(serialize_record(old)).has_value());
}

TEST_CASE("runner rebuilds a corrupted cache and warns")
{
    TempDir dir("rebuild");
    RunConfig cfg;
    cfg.q = 2;
    cfg.n_max = 2;
    cfg.mode = Mode::census;
    cfg.cache_dir = dir.path.string();
    RunReport first = run(cfg);
    CHECK(first.warnings.empty());
    fs::path file = dir.path / cache_file_name(cache_schema_version, 2, {1, 0});
    REQUIRE(fs::exists(file));
    std::ofstream(file) << "garbage";
    RunReport second = run(cfg);
    CHECK(!second.warnings.empty());
    CHECK(to_csv(second) == to_csv(first));
    RunReport third = run(cfg);
    CHECK(third.warnings.empty());
}

TEST_CASE("config validation")
{
    RunConfig cfg;
    cfg.q = 6;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.q = 16;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.q = 9;
    CHECK_NOTHROW(validate(cfg));
    cfg.n_max = -1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.n_max = 2;
    cfg.workers = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    CHECK(parse_mode("sieve-dims") == Mode::sieve_dims);
    CHECK(!parse_mode("bogus").has_value());
}

TEST_CASE("model output table")
{
    RunConfig cfg;
    cfg.q = 2;
    cfg.n_max = 10;
    cfg.mode = Mode::model;
    RunReport r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.table.rows.size() == 11);
    std::vector<std::string> head(r.table.columns.begin(), r.table.columns.begin() + 6);
    CHECK(head == std::vector<std::string>{"N", "psi_hat", "theta_hat", "main", "secondary", "remainder"});
    CHECK(r.table.rows[0][2] == "4/3");
    CHECK(r.table.rows[0][5] == "55/48");
    std::string csv = to_csv(r);
    CHECK(csv.rfind("N,psi_hat,theta_hat,main,secondary,remainder", 0) == 0);
    CHECK(csv.back() == '\n');
}

TEST_CASE("output is deterministic across worker counts")
{
    RunConfig a;
    a.q = 2;
    a.n_max = 4;
    a.mode = Mode::compare;
    RunConfig b = a;
    b.workers = 3;
    RunReport ra = run(a), rb = run(b);
    CHECK(to_csv(ra) == to_csv(rb));
    CHECK(to_json(ra) == to_json(rb));
    a.out = b.out = "json";
    auto j = nlohmann::json::parse(to_json(ra));
    CHECK(j.contains("config"));
    CHECK(j.contains("rows"));
    CHECK(j.contains("verdicts"));
    CHECK(!j.contains("timings"));
    // recurrence residuals are exact zeros
    for (const auto& row : ra.table.rows) {
        auto it = std::find(ra.table.columns.begin(), ra.table.columns.end(), "recurrence_residual");
        REQUIRE(it != ra.table.columns.end());
        const std::string& v = row[it - ra.table.columns.begin()];
        CHECK((v == "0" || v.empty()));
    }
}

TEST_CASE("census mode values")
{
    RunConfig cfg;
    cfg.q = 2;
    cfg.n_max = 2;
    RunReport r = run(cfg);
    REQUIRE(r.table.rows.size() == 3);
    CHECK(r.table.columns[2] == "theta");
    CHECK(r.table.rows[0][2] == "1/3");
    CHECK(r.table.rows[0][3] == "1/3");
    CHECK(r.table.rows[0][5] == "1");  // cov3
    CHECK(r.table.rows[0][6] == "1");  // c3 classes
}

TEST_CASE("spaces above the cap are skipped with a warning")
{
    RunConfig cfg;
    cfg.q = 2;
    cfg.n_max = 4;
    cfg.cap = 1 << 10;
    RunReport r = run(cfg);
    CHECK(!r.warnings.empty());
    CHECK(r.exit_code == 0);
}

TEST_CASE("strict monitoring")
{
    RunConfig cfg;
    cfg.q = 2;
    cfg.n_max = 4;
    cfg.mode = Mode::compare;
    cfg.strict = true;
    CHECK(run(cfg).exit_code == 0);
    cfg.strict_ratio_cap = 0.01;
    CHECK(run(cfg).exit_code == 3);
}
