#include "cubic/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/crc.hpp>
#include <json.hpp>

namespace cubic {

using nlohmann::json;

namespace {

json payload(const CacheRecord& r)
{
    const SpaceCensus& c = r.census;
    json j;
    j["schema"] = r.schema;
    j["q"] = c.q;
    j["ell"] = c.space.ell;
    j["k"] = c.space.k;
    j["tallies"] = {{"zero", c.tallies.zero},
                    {"x_reducible", c.tallies.x_reducible},
                    {"specially_reducible", c.tallies.specially_reducible},
                    {"irreducible", c.tallies.irreducible},
                    {"smooth_irreducible", c.tallies.smooth_irreducible},
                    {"inseparable", c.tallies.inseparable}};
    j["profile_sums"] = c.profile_sums;
    if (c.orbits) {
        const OrbitSummary& o = *c.orbits;
        json stab = json::array();
        for (auto [order, count] : o.stabilizers) stab.push_back({order, count});
        j["orbits"] = {{"orbits", o.orbits},
                       {"c3_orbits", o.c3_orbits},
                       {"inseparable_orbits", o.inseparable_orbits},
                       {"inseparable_weight_num", boost::multiprecision::numerator(o.inseparable_weight).str()},
                       {"inseparable_weight_den", boost::multiprecision::denominator(o.inseparable_weight).str()},
                       {"stabilizers", stab}};
    } else {
        j["orbits"] = nullptr;
    }
    return j;
}

std::string crc_hex(const std::string& s)
{
    boost::crc_32_type crc;
    crc.process_bytes(s.data(), s.size());
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
    return buf;
}

}  // namespace

std::string cache_file_name(int schema, std::uint32_t q, const SectionSpace& V)
{
    return "census_v" + std::to_string(schema) + "_q" + std::to_string(q) + "_l" + std::to_string(V.ell) + "_k" +
           std::to_string(V.k) + ".json";
}

std::string record_hash(const CacheRecord& r) { return crc_hex(payload(r).dump()); }

std::string serialize_record(const CacheRecord& r)
{
    json j = payload(r);
    j["hash"] = crc_hex(j.dump());
    return j.dump(1) + "\n";
}

std::optional<CacheRecord> parse_record(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CacheCorrupted(std::string("unreadable cache record: ") + e.what());
    }
    try {
        if (j.at("schema").get<int>() != cache_schema_version) return std::nullopt;
        std::string stored = j.at("hash").get<std::string>();
        j.erase("hash");
        if (crc_hex(j.dump()) != stored) throw CacheCorrupted("cache record hash mismatch");
        CacheRecord r;
        r.schema = j.at("schema").get<int>();
        SpaceCensus& c = r.census;
        c.q = j.at("q").get<std::uint32_t>();
        c.space = SectionSpace{j.at("ell").get<int>(), j.at("k").get<int>()};
        const json& t = j.at("tallies");
        c.tallies.zero = t.at("zero").get<std::uint64_t>();
        c.tallies.x_reducible = t.at("x_reducible").get<std::uint64_t>();
        c.tallies.specially_reducible = t.at("specially_reducible").get<std::uint64_t>();
        c.tallies.irreducible = t.at("irreducible").get<std::uint64_t>();
        c.tallies.smooth_irreducible = t.at("smooth_irreducible").get<std::uint64_t>();
        c.tallies.inseparable = t.at("inseparable").get<std::uint64_t>();
        c.profile_sums = j.at("profile_sums").get<std::vector<long long>>();
        const json& o = j.at("orbits");
        if (!o.is_null()) {
            OrbitSummary s;
            s.orbits = o.at("orbits").get<std::uint64_t>();
            s.c3_orbits = o.at("c3_orbits").get<std::uint64_t>();
            s.inseparable_orbits = o.at("inseparable_orbits").get<std::uint64_t>();
            s.inseparable_weight = Rational(BigInt(o.at("inseparable_weight_num").get<std::string>()),
                                            BigInt(o.at("inseparable_weight_den").get<std::string>()));
            for (const auto& e : o.at("stabilizers")) s.stabilizers[e.at(0).get<std::uint64_t>()] = e.at(1).get<std::uint64_t>();
            c.orbits = s;
        }
        return r;
    } catch (const json::exception& e) {
        throw CacheCorrupted(std::string("malformed cache record: ") + e.what());
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const CacheCorrupted*>(&e)) throw;
        throw CacheCorrupted(std::string("malformed cache record: ") + e.what());
    }
}

void store_record(const std::string& dir, const CacheRecord& r)
{
    std::filesystem::create_directories(dir);
    auto path = std::filesystem::path(dir) / cache_file_name(r.schema, r.census.q, r.census.space);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << serialize_record(r);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<CacheRecord> load_record(const std::string& dir, std::uint32_t q, const SectionSpace& V, int schema)
{
    auto path = std::filesystem::path(dir) / cache_file_name(schema, q, V);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    auto r = parse_record(ss.str());
    if (!r) return std::nullopt;
    if (r->census.q != q || !(r->census.space == V)) throw CacheCorrupted("cache record key mismatch");
    return r;
}

}  // namespace cubic
