#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

namespace gh {

inline constexpr const char* kToolVersion = "1.0.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
/// fnv1a64 as 16 lowercase hex digits.
std::string hex_digest(std::string_view bytes);

/// Provenance block embedded in every artifact: tool version, the full run
/// configuration and a digest of its canonical serialization plus any input
/// file contents. No timestamps, so reruns are byte-identical.
nlohmann::json provenance(const nlohmann::json& config, std::string_view inputs = {});

}  // namespace gh
