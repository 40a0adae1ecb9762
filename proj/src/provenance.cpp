#include "gh/provenance.hpp"

#include <cstdio>

namespace gh {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

nlohmann::json provenance(const nlohmann::json& config, std::string_view inputs) {
  const std::string canonical = config.dump();
  return {{"tool", "gh"},
          {"version", kToolVersion},
          {"config", config},
          {"input_digest", hex_digest(canonical + '\n' + std::string(inputs))}};
}

}  // namespace gh
