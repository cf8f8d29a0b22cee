#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace cauchycorr::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& file);

struct ManifestEntry {
    std::string file;  ///< relative to the run directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

/// Record of one CLI run: what was asked for and what was written.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string command;
    nlohmann::json config;
    std::uint64_t master_seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<ManifestEntry> outputs;

    /// Hashes `dir / relative` and appends it to outputs.
    void add_output(const std::filesystem::path& dir, const std::string& relative);

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
    static RunManifest load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;
};

/// Current UTC time as ISO-8601 with a trailing Z.
std::string utc_timestamp();

}  // namespace cauchycorr::io
