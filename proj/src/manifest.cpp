#include "cauchycorr/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace cauchycorr::io {

std::string sha256_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string() + " for hashing");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256: digest initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        const auto got = in.gcount();
        if (got > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(got));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex.push_back(kHex[digest[i] >> 4]);
        hex.push_back(kHex[digest[i] & 0xF]);
    }
    return hex;
}

void RunManifest::add_output(const std::filesystem::path& dir, const std::string& relative) {
    const auto path = dir / relative;
    outputs.push_back({relative, sha256_file(path), std::filesystem::file_size(path)});
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& e : outputs) {
        files.push_back({{"file", e.file}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    }
    return {{"tool_version", tool_version}, {"command", command},   {"config", config},
            {"master_seed", master_seed},   {"started_at", started_at},
            {"finished_at", finished_at},   {"outputs", files}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    for (const auto& e : j.at("outputs")) {
        m.outputs.push_back({e.at("file").get<std::string>(), e.at("sha256").get<std::string>(),
                             e.at("bytes").get<std::uintmax_t>()});
    }
    return m;
}

RunManifest RunManifest::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open manifest " + file.string());
    return from_json(nlohmann::json::parse(in));
}

void RunManifest::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write manifest " + file.string());
    out << to_json().dump(2) << '\n';
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace cauchycorr::io
