#include "symext/limits.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace symext {

namespace {

int env_cap(int fallback) {
  const char* raw = std::getenv("SYMEXT_MAX_K");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1 || v > 64) return fallback;
  return static_cast<int>(v);
}

}  // namespace

int max_full_space_k() { return env_cap(12); }

int max_block_k() { return env_cap(64); }

void require_k_in_range(int k, int limit, const char* what) {
  if (k < 1 || k > limit)
    throw std::out_of_range(std::string(what) + ": k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(limit) + "] (raise with SYMEXT_MAX_K)");
}

}  // namespace symext
