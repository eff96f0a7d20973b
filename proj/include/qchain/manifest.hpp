#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace qchain {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a 64-bit digest, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Reproducibility record embedded in every CLI report: identical manifests
/// produce bitwise-identical result payloads (timings live outside it).
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> input_digests;  // path -> fnv1a
    std::string version = kVersion;

    nlohmann::json to_json() const;
};

}  // namespace qchain
