#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "cubic/counts.hpp"

namespace cubic {

inline constexpr int cache_schema_version = 1;

class CacheCorrupted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per-space census persisted as JSON, keyed by (schema version, q, l, k).
struct CacheRecord {
    int schema = cache_schema_version;
    SpaceCensus census;
};

std::string cache_file_name(int schema, std::uint32_t q, const SectionSpace& V);
// CRC-32 of the canonical payload (everything except the hash field), as 8 hex digits.
std::string record_hash(const CacheRecord& r);
std::string serialize_record(const CacheRecord& r);
// Throws CacheCorrupted on parse errors or hash mismatch; nullopt on another schema version.
std::optional<CacheRecord> parse_record(const std::string& text);

void store_record(const std::string& dir, const CacheRecord& r);
// nullopt when absent or written under another schema; throws CacheCorrupted on damage.
std::optional<CacheRecord> load_record(const std::string& dir, std::uint32_t q, const SectionSpace& V,
                                       int schema = cache_schema_version);

}  // namespace cubic
